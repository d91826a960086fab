import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from halfspace_msr import (DegenerateSteering, InvalidArgument, LayeredMedium, SensorArray,
                           make_direction_set, normalize, phi_vector, steering_d, steering_h,
                           transmission_coeff)
from halfspace_msr.steering import INCIDENCE, OBSERVATION, phi_vectors, transmission_coeffs

XI = math.sqrt(5) / 2
MED = LayeredMedium(5, 4)


def single(role, direction):
    d = np.array([direction], dtype=float)
    return SensorArray(role, d, np.array([math.atan2(abs(d[0, 1]), abs(d[0, 0]))]), 0.1, 3.0)


def test_direction_set_observation():
    obs = make_direction_set(OBSERVATION, 6, math.pi / 4, 3 * math.pi / 4)
    expected = [math.pi / 4 + j * math.pi / 10 for j in range(6)]
    assert obs.angles == pytest.approx(expected, rel=1e-15)
    assert obs.directions[0] == pytest.approx([math.cos(math.pi / 4), math.sin(math.pi / 4)])
    assert obs.angles[-1] == pytest.approx(3 * math.pi / 4)


def test_direction_set_endpoints_only():
    obs = make_direction_set(OBSERVATION, 2, math.pi / 4, 3 * math.pi / 4)
    h = math.sqrt(2) / 2
    assert obs.directions == pytest.approx(np.array([[h, h], [-h, h]]))


def test_direction_set_incidence_is_negated():
    inc = make_direction_set(INCIDENCE, 10, math.pi / 4, 3 * math.pi / 4)
    h = math.sqrt(2) / 2
    assert inc.angles[0] == pytest.approx(math.pi / 4)
    assert inc.directions[0] == pytest.approx([-h, -h])
    assert np.all(inc.directions[:, 1] < 0)


@pytest.mark.parametrize("lo,hi", [(0.0, 1.0), (1.0, math.pi), (2.0, 1.0)])
def test_direction_set_rejects_degenerate_range(lo, hi):
    with pytest.raises(InvalidArgument):
        make_direction_set(OBSERVATION, 4, lo, hi)


@given(st.integers(2, 40), st.floats(0.05, 1.5))
def test_symmetric_range_is_mirror_closed(n, a):
    arr = make_direction_set(OBSERVATION, n, a, math.pi - a)
    mirrored = arr.directions[::-1] * np.array([-1.0, 1.0])
    assert np.allclose(arr.directions, mirrored, atol=1e-12)
    assert np.allclose(np.hypot(*arr.directions.T), 1.0, atol=1e-12)


def test_phi_examples():
    assert phi_vector((0.0, -1.0), 2.3) == pytest.approx([0, -1])
    c, s = math.cos(math.pi / 4), math.sin(math.pi / 4)
    assert phi_vector((c, s), XI) == pytest.approx([0.790569, 0.612372], abs=1e-6)
    assert phi_vector((c, s), XI)[1] == pytest.approx(math.sqrt(0.375), rel=1e-15)


def test_phi_evanescent_branch():
    c, s = math.cos(math.pi / 12), math.sin(math.pi / 12)
    t = XI * c
    phi = phi_vector((c, s), XI)
    assert phi[0] == pytest.approx(t, rel=1e-15)
    assert phi[1] == pytest.approx(1j * math.sqrt(t * t - 1), rel=1e-15)
    # printed example values
    assert phi == pytest.approx([1.07993, 0.40772j], abs=1e-4)
    # mirror into the lower half flips the sign of the root
    assert phi_vector((c, -s), XI)[1] == pytest.approx(-1j * math.sqrt(t * t - 1))


def test_transmission_examples():
    assert transmission_coeff((0.6, 0.8), 1.0, 2.0, 2.0) == pytest.approx(1.0)
    assert transmission_coeff((0.0, -1.0), XI, 1, 1) == pytest.approx(2 * XI / (XI + 1), rel=1e-15)
    assert transmission_coeff((0.0, -1.0), XI, 1, 1) == pytest.approx(1.055728, abs=1e-6)


def test_transmission_evanescent():
    c, s = math.cos(math.pi / 12), math.sin(math.pi / 12)
    rho = math.sqrt((XI * c) ** 2 - 1)
    denom = XI * s + 1j * rho
    assert abs(denom) > 0
    assert transmission_coeff((c, s), XI, 1, 1) == pytest.approx(2 * XI * s / denom, rel=1e-14)
    assert abs(transmission_coeff((c, s), XI, 1, 1).imag) > 0


def test_interface_direction_rejected():
    with pytest.raises(InvalidArgument):
        phi_vector((1.0, 0.0), 1.0)
    with pytest.raises(InvalidArgument):
        transmission_coeff((-1.0, 0.0), 1.0, 1, 1)


angles = st.floats(0.01, math.pi - 0.01)


@given(angles, st.floats(0.1, 3.0), st.booleans())
def test_propagating_phi_has_unit_norm(a, xi, up):
    d = (math.cos(a), math.sin(a) if up else -math.sin(a))
    if xi * abs(d[0]) <= 1:
        phi = phi_vector(d, xi)
        assert abs(phi[0] ** 2 + phi[1] ** 2 - 1) < 1e-12


@given(angles, st.floats(0.1, 3.0), st.floats(0.2, 5), st.floats(0.2, 5))
def test_mirror_direction(a, xi, mp, mm):
    d = np.array([math.cos(a), math.sin(a)])
    m = d * np.array([-1, 1])
    assert transmission_coeff(m, xi, mp, mm) == pytest.approx(transmission_coeff(d, xi, mp, mm), rel=1e-12)
    assert phi_vector(m, xi) == pytest.approx(phi_vector(d, xi) * np.array([-1, 1]), rel=1e-12)


@given(angles, st.floats(0.2, 5))
def test_matched_media_is_identity(a, mu):
    d = np.array([[math.cos(a), math.sin(a)], [math.cos(a), -math.sin(a)]])
    assert np.allclose(phi_vectors(d, 1.0), d, atol=1e-12)
    assert np.allclose(transmission_coeffs(d, 1.0, mu, mu), 1.0, atol=1e-12)


def test_steering_d_origin_is_transmission():
    obs = make_direction_set(OBSERVATION, 6, math.pi / 4, 3 * math.pi / 4)
    d = steering_d((0.0, 0.0), 2 * math.pi, obs, (1, 0, 0), MED)
    assert d.values == pytest.approx(transmission_coeffs(obs.directions, XI, 1, 1))


def test_steering_d_buried_point():
    d = steering_d((0.0, -2.0), 2 * math.pi, single(OBSERVATION, (0.0, 1.0)), (1, 0, 0), MED)
    assert d.values[0] == pytest.approx(1.055728, abs=1e-6)
    assert d.values[0] == pytest.approx(2 * XI / (XI + 1), rel=1e-12)


def test_steering_d_test_vector_dot():
    c, s = math.cos(math.pi / 4), math.sin(math.pi / 4)
    arr = single(OBSERVATION, (c, s))
    x = (0.3, -1.1)
    d = steering_d(x, 2 * math.pi, arr, (0, 1, 5), MED)
    base = steering_d(x, 2 * math.pi, arr, (1, 0, 0), MED)
    dot = XI * c + 5 * math.sqrt(0.375)
    # printed figure sums the 6-digit components, so it is off in the 6th place
    assert dot == pytest.approx(3.852429, abs=5e-6)
    assert d.values[0] == pytest.approx(dot * base.values[0], rel=1e-13)


def test_steering_h_examples():
    inc = make_direction_set(INCIDENCE, 10, math.pi / 4, 3 * math.pi / 4)
    h = steering_h((0.0, 0.0), 2 * math.pi, inc, (1, 0, 0), MED)
    assert h.values == pytest.approx(transmission_coeffs(inc.directions, XI, 1, 1))
    h = steering_h((0.0, -2.0), 2 * math.pi, single(INCIDENCE, (0.0, -1.0)), (1, 0, 0), MED)
    assert h.values[0] == pytest.approx(1.055728, abs=1e-6)


def test_steering_h_conjugates_d_in_propagating_regime():
    a = 1.1
    up, down = (math.cos(a), math.sin(a)), (math.cos(a), -math.sin(a))
    x = (0.4, -1.7)
    d = steering_d(x, 5.0, single(OBSERVATION, up), (1, 0, 0), LayeredMedium(1, 1))
    h = steering_h(x, 5.0, single(INCIDENCE, down), (1, 0, 0), LayeredMedium(1, 1))
    # phi(down) mirrors phi(up) vertically; the exponent sign flips with it
    k = 5.0
    expected_h = np.exp(1j * k * (up[0] * x[0] - up[1] * x[1]))
    assert h.values[0] == pytest.approx(expected_h)
    assert d.values[0] == pytest.approx(np.conj(np.exp(1j * k * (up[0] * x[0] + up[1] * x[1]))))


def test_wrong_role_rejected():
    inc = make_direction_set(INCIDENCE, 4, 1.0, 2.0)
    with pytest.raises(InvalidArgument):
        steering_d((0, -1), 1.0, inc, (1, 0, 0), MED)


def test_degenerate_steering():
    obs = single(OBSERVATION, (0.0, 1.0))
    # c . (1, phi) = c0 + c2 * 1 vanishes for c = (1, 0, -1)
    with pytest.raises(DegenerateSteering):
        steering_d((0.0, -1.0), 1.0, obs, (1, 0, -1), MED)


def test_normalize_examples():
    assert normalize(np.array([3, 4j])) == pytest.approx([0.6, 0.8j])
    unit = np.array([0.6, 0.8j])
    assert normalize(unit) == pytest.approx(unit, rel=1e-15)
    with pytest.raises(DegenerateSteering):
        normalize(np.zeros(3))


complex_vectors = st.lists(st.tuples(st.floats(-1e3, 1e3), st.floats(-1e3, 1e3)), min_size=1, max_size=12)


@given(complex_vectors, st.floats(-math.pi, math.pi), st.floats(0.01, 100))
def test_normalize_properties(pairs, phase, scale):
    v = np.array([complex(a, b) for a, b in pairs])
    if np.linalg.norm(v) < 1e-6:
        return
    n = normalize(v)
    assert abs(np.linalg.norm(n) - 1) < 1e-12
    assert normalize(n) == pytest.approx(n, abs=1e-12)
    a = scale * np.exp(1j * phase)
    assert normalize(a * v) == pytest.approx(np.exp(1j * phase) * n, abs=1e-12)


def test_normalize_steering_vector():
    obs = make_direction_set(OBSERVATION, 6, math.pi / 4, 3 * math.pi / 4)
    d = normalize(steering_d((0.5, -1.0), 2 * math.pi, obs, (1, 0, 0), MED))
    assert d.norm == pytest.approx(1.0, abs=1e-12)
