"""Locate small inclusions buried in a two-layered medium from multi-static data.

Forward data come from the leading-order small-inclusion scattering
amplitude; imaging uses a multi-frequency subspace filter with MUSIC and
Kirchhoff migration as single-frequency baselines.
"""
from .analysis import (ComparisonTable, ErrorReport, MethodSpec, PeakSet, compare_methods,
                       extract_peaks, localization_error, resolution_test)
from .errors import (CannotCalibrateSNR, DegenerateSteering, EmptyNoiseSubspace, InvalidArgument,
                     ScenarioError)
from .forward import (Factorization, MSRMatrix, add_noise, assemble_factorization, assemble_msr,
                      scattering_amplitude, synthesize)
from .grid import DEFAULT_GRID, ImagingGrid
from .imaging import ImagingMap, filter_map, filter_value, kirchhoff_map, music_map
from .medium import (FrequencySet, Inhomogeneity, LayeredMedium, contrasts, make_frequency_set,
                     wavenumber, wavenumber_ratio)
from .scenario import Scenario
from .scenario_io import load_preset, parse_scenario, preset_names
from .spectral import SpectralData, estimate_signal_rank, signal_subspace, svd
from .steering import (SensorArray, SteeringVector, make_direction_set, normalize, phi_vector,
                       steering_d, steering_h, transmission_coeff)

__version__ = "0.1.0"
