import math
import time

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from halfspace_msr import (EmptyNoiseSubspace, ImagingGrid, InvalidArgument, MSRMatrix, DEFAULT_GRID,
                           assemble_msr, extract_peaks, filter_map, filter_value, kirchhoff_map,
                           localization_error, music_map, svd, synthesize)
from halfspace_msr.imaging import (MUSIC_CAP, SpectralData, filter_values, kirchhoff_values,
                                   kirchhoff_values_svd, music_values)
from halfspace_msr.steering import steering_rows

TWO_PI = 2 * math.pi


@pytest.mark.parametrize("F", [1, 5, 10])
def test_filter_is_one_at_single_inclusion(single_scene, F):
    spectra = [svd(m) for m in synthesize(single_scene)[:F]]
    assert all(s.m_hat == 1 for s in spectra)
    assert filter_value((0.0, -2.0), spectra, single_scene) == pytest.approx(1.0, abs=1e-8)


def test_filter_zero_matrix(p41):
    zero = [MSRMatrix(np.zeros((6, 10), complex), w) for w in p41.frequencies]
    image = filter_map(p41, grid=ImagingGrid(-1, 1, -2, 0, 0.5), data=zero)
    assert image.provenance["ranks"] == [0] * 10
    assert not np.any(image.values)


def test_filter_rejects_empty_frequency_list(p41):
    with pytest.raises(InvalidArgument):
        filter_value((0, -1), [], p41)
    with pytest.raises(InvalidArgument):
        filter_map(p41, freq_count=11)


def test_filter_map_matches_pointwise(p41):
    grid = ImagingGrid(0.4, 0.8, -2.7, -2.3, 0.05)
    data = synthesize(p41)
    image = filter_map(p41, 10, grid=grid, data=data)
    spectra = [svd(m) for m in data]
    pointwise = [filter_value(x, spectra, p41) for x in grid.points()]
    assert image.values.max() == pytest.approx(max(pointwise), rel=1e-14)
    assert image.values.ravel() == pytest.approx(pointwise, rel=1e-13)


def test_filter_bounded_by_rank(p41):
    image = filter_map(p41, 10, grid=ImagingGrid(-3, 3, -6, 0, 0.25))
    assert image.values.min() >= 0
    assert image.values.max() <= max(image.provenance["ranks"]) + 1e-12


def test_noiseless_filter_argmax_near_each_inclusion(p41):
    clean = p41.with_(snr_db=None)
    data = synthesize(clean)
    spectra = [svd(m) for m in data]
    for z in clean.truths:
        hood = ImagingGrid(round(z[0] - 0.3, 2), round(z[0] + 0.3, 2), round(z[1] - 0.3, 2),
                           min(0.0, round(z[1] + 0.3, 2)), 0.05)
        values = filter_values(hood.points(), spectra, clean)
        best = hood.points()[int(np.argmax(values))]
        assert math.dist(best, z) <= 0.05 * math.sqrt(2) + 1e-9


def test_filter_map_runtime_budget(p41):
    start = time.perf_counter()
    image = filter_map(p41, 10, grid=DEFAULT_GRID, workers=1)
    assert image.values.shape == (121, 121)
    assert time.perf_counter() - start <= 10.0


def test_worker_count_is_bitwise_invisible(p41):
    data = synthesize(p41)
    for make in (lambda w: filter_map(p41, 10, data=data, workers=w),
                 lambda w: music_map(p41, 0, data=data, workers=w),
                 lambda w: kirchhoff_map(p41, 3, data=data, workers=w)):
        ref = make(1).values
        for w in (2, 5):
            assert np.array_equal(ref, make(w).values)


def test_music_hits_cap_at_inclusion(single_scene):
    s = svd(assemble_msr(single_scene, TWO_PI))
    wd = steering_rows([(0.0, -2.0)], TWO_PI, single_scene.obs, single_scene.c_d, single_scene.medium)[0]
    resid = wd - s.U[:, :1] @ (s.U[:, :1].conj().T @ wd)
    assert np.linalg.norm(resid) <= 1e-8
    assert music_values([(0.0, -2.0)], s, single_scene)[0] >= 1e8
    assert music_values([(0.0, -2.0)], s, single_scene, cap=50.0)[0] == 50.0


def test_music_unit_value_for_noise_only_steering(p41):
    x = (0.2, -1.3)
    wd = steering_rows([x], TWO_PI, p41.obs, p41.c_d, p41.medium)[0]
    # build a basis whose signal part is orthogonal to W_D(x)
    rng = np.random.default_rng(1)
    basis = np.column_stack([wd, rng.standard_normal((6, 5)) + 1j * rng.standard_normal((6, 5))])
    q, _ = np.linalg.qr(basis)
    U = np.column_stack([q[:, 1:], q[:, :1]])
    fake = SpectralData(U, np.array([5, 4, 3, 2, 1, 0.5]), np.eye(10, 6, dtype=complex), 5,
                        MSRMatrix(np.zeros((6, 10), complex), TWO_PI))
    assert music_values([x], fake, p41)[0] == pytest.approx(1.0, abs=1e-12)


def test_music_lower_bound_and_empty_noise_subspace(p41):
    image = music_map(p41, 0, grid=ImagingGrid(-3, 3, -6, 0, 0.25))
    assert image.values.min() >= 1.0 - 1e-12
    assert image.values.max() <= MUSIC_CAP
    s = svd(assemble_msr(p41, TWO_PI))
    full = SpectralData(s.U, s.sigma, s.V, 6, s.source)
    with pytest.raises(EmptyNoiseSubspace):
        music_values([(0, -1)], full, p41)


def test_music_noiseless_peaks(p41):
    clean = p41.with_(snr_db=None)
    report = localization_error(extract_peaks(music_map(clean, 0), 3), clean.truths)
    assert report.unmatched == 0
    assert report.max <= 0.15


def test_kirchhoff_zero_matrix(p41):
    zero = MSRMatrix(np.zeros((6, 10), complex), TWO_PI)
    assert not np.any(kirchhoff_values(DEFAULT_GRID.points()[:50], zero, p41))


def test_kirchhoff_identity_random(p41):
    rng = np.random.default_rng(2024)
    pts = ImagingGrid(-3, 3, -6, 0, 0.5).points()
    for _ in range(100):
        k = rng.standard_normal((6, 10)) + 1j * rng.standard_normal((6, 10))
        m = MSRMatrix(k, TWO_PI)
        direct = kirchhoff_values(pts, m, p41)
        other = kirchhoff_values_svd(pts, svd(m), p41)
        assert np.max(np.abs(direct - other)) <= 1e-10 * np.max(direct)


def test_kirchhoff_uses_selected_frequency(p41):
    data = synthesize(p41)
    grid = ImagingGrid(-1, 1, -3, -1, 0.25)
    image = kirchhoff_map(p41, 4, grid=grid, data=data)
    assert image.params["omega"] == p41.frequencies[4]
    assert np.array_equal(image.values.ravel(), kirchhoff_values(grid.points(), data[4], p41))


@settings(max_examples=10, deadline=None)
@given(st.floats(-0.9, 0.9), st.floats(-5.5, -0.5), st.floats(1.2, 8.0))
def test_mirror_symmetry(z1, z2, eps):
    from halfspace_msr import Inhomogeneity, load_preset

    base = load_preset("p41_permittivity")
    z1, z2 = round(z1, 1), round(z2, 1)
    scene = base.with_(scatterers=(Inhomogeneity((z1, z2), 0.1, eps=eps),), snr_db=None)
    # lattice symmetric about x1 = z1
    grid = ImagingGrid(round(z1 - 1.0, 2), round(z1 + 1.0, 2), -6, 0, 0.05)
    values = filter_map(scene, 10, grid=grid).values
    assert np.max(np.abs(values - values[:, ::-1])) <= 1e-8
