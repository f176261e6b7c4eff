"""Series storage, arithmetic, extraction, and the Mobius family."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bohrlab.series import (
    DimensionMismatch,
    TruncatedPowerSeries,
    compose_linear,
    compose_series,
    constant,
    extract_coefficients,
    from_text,
    mobius_map,
    mobius_series,
    monomial,
    multiply,
    rotate,
    to_text,
)

from oracles import torus_coefficient


def test_eval_constant_series():
    f = constant(3, 0.5)
    assert f.eval((1j, -2.0, 0.7)) == 0.5


def test_eval_monomial():
    f = monomial(1, (2,))
    assert f.eval((2 + 0j,)) == 4 + 0j


def test_eval_mobius_against_closed_form():
    f = mobius_series(0.5, 30)
    closed = (0.5 - 0.2) / (1 - 0.5 * 0.2)
    assert abs(f.eval((0.2,)) - closed) <= f.tail_bound_at(0.2) + 1e-15


def test_eval_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        monomial(2, (1, 0)).eval((0.5,))


def test_mobius_constant_term():
    assert mobius_series(0.5, 10).coefficient((0,)) == 0.5


# c_1 and c_3 below were computed with the torus-sum oracle on the closed
# form (see test_mobius_coefficients_match_torus_oracle); they equal the
# analytic values -(1-a^2) a^(k-1).
def test_mobius_c1_frozen():
    assert mobius_series(0.5, 10).coefficient((1,)) == pytest.approx(-0.75, abs=1e-12)


def test_mobius_c3_frozen():
    assert mobius_series(0.5, 10).coefficient((3,)) == pytest.approx(-0.1875, abs=1e-12)


def test_mobius_coefficients_match_torus_oracle():
    h = mobius_map(0.7)
    f = mobius_series(0.7, 6)
    for k in range(7):
        oracle = torus_coefficient(lambda z: h(z[0]), (k,), 0.8, 64)
        assert abs(f.coefficient((k,)) - oracle) < 1e-9


@pytest.mark.parametrize("alpha", np.linspace(0.05, 0.95, 10)[1:-1].tolist() + [0.05, 0.95])
def test_mobius_closed_form_invariant(alpha):
    f = mobius_series(alpha, 30)
    lead = 1.0 - alpha * alpha
    for k in range(1, 31):
        assert abs(f.coefficient((k,)) + lead * alpha ** (k - 1)) < 1e-10


def test_mobius_tail_bound_value():
    alpha, d = 0.5, 30
    f = mobius_series(alpha, d)
    expected = (1 - alpha**2) * alpha**d / (1 - alpha)
    assert f.truncation_tail_bound == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("alpha", [-0.1, 0.0, 1.0, 1.3])
def test_mobius_alpha_out_of_range(alpha):
    with pytest.raises(ValueError):
        mobius_series(alpha, 5)


def test_rotate_identity():
    f = mobius_series(0.5, 8)
    assert rotate(f, 0.0).coefficients == f.coefficients


def test_rotate_pi_flips_constant():
    f = rotate(mobius_series(0.5, 8), math.pi)
    assert f.coefficient((0,)) == pytest.approx(-0.5, abs=1e-15)


def test_rotate_preserves_moduli():
    f = mobius_series(0.3, 12)
    g = rotate(f, math.pi / 2)
    for alpha, c in f.ordered_items():
        assert abs(g.coefficient(alpha)) == pytest.approx(abs(c), abs=0.0)
    assert g.truncation_tail_bound == f.truncation_tail_bound


def test_compose_linear_identity_weights():
    g = monomial(1, (1,))
    f = compose_linear(g, (1, 1))
    assert f.coefficient((1, 0)) == 1 and f.coefficient((0, 1)) == 1


def test_compose_linear_binomial():
    g = monomial(1, (2,))
    f = compose_linear(g, (1, 1))
    assert f.coefficient((2, 0)) == 1
    assert f.coefficient((1, 1)) == 2
    assert f.coefficient((0, 2)) == 1


def test_compose_linear_mobius_matches_torus_oracle():
    # frozen from the 2-d torus oracle on the composed closed form:
    # the coefficient at (1,1) equals g_2 * 2!/(1!1!) = -0.75
    g = mobius_series(0.5, 10)
    f = compose_linear(g, (1, 1))
    h = mobius_map(0.5)
    oracle = torus_coefficient(lambda z: h(z[0] + z[1]), (1, 1), 0.3, 16)
    assert abs(oracle - (-0.75)) < 1e-9
    assert f.coefficient((1, 1)) == pytest.approx(-0.75, abs=1e-12)


def test_compose_linear_rejects_empty_weights():
    with pytest.raises(ValueError):
        compose_linear(monomial(1, (1,)), ())


def test_multiply_by_unit():
    f = mobius_series(0.4, 9)
    g = multiply(f, constant(1, 1.0))
    assert g.coefficients == f.coefficients


def test_multiply_monomials():
    z1 = monomial(1, (1,))
    assert multiply(z1, z1).coefficient((2,)) == 1


def test_multiply_matches_closed_form_square():
    f = mobius_series(0.5, 20)
    sq = multiply(f, f)
    closed = mobius_map(0.5)(0.1) ** 2
    assert abs(sq.eval((0.1,)) - closed) < 1e-10


def test_multiply_degree_cap_tracks_dropped_mass():
    f = mobius_series(0.5, 8)
    capped = multiply(f, f, degree_cap=4)
    assert capped.max_degree == 4
    assert capped.truncation_tail_bound > 0
    full = multiply(f, f)
    for alpha, c in capped.ordered_items():
        assert full.coefficient(alpha) == pytest.approx(c, abs=0.0)


def test_multiply_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        multiply(monomial(1, (1,)), monomial(2, (1, 0)))


@given(st.integers(0, 400), st.integers(0, 400), st.integers(0, 400))
@settings(max_examples=40, deadline=None)
def test_multiply_commutative_and_associative(seed_a, seed_b, seed_c):
    def rand_series(seed):
        rng = np.random.default_rng(seed)
        coeffs = {
            (i, j): complex(rng.standard_normal(), rng.standard_normal())
            for i in range(3)
            for j in range(3 - i)
        }
        return TruncatedPowerSeries(2, 2, coeffs)

    f, g, h = rand_series(seed_a), rand_series(seed_b), rand_series(seed_c)
    fg, gf = multiply(f, g), multiply(g, f)
    for alpha in fg.coefficients:
        assert abs(fg.coefficient(alpha) - gf.coefficient(alpha)) < 1e-12
    lhs = multiply(multiply(f, g), h)
    rhs = multiply(f, multiply(g, h))
    for alpha in lhs.coefficients:
        assert abs(lhs.coefficient(alpha) - rhs.coefficient(alpha)) < 1e-12


def test_compose_series_against_direct_expansion():
    outer = mobius_series(0.5, 12)
    inner = TruncatedPowerSeries(2, 2, {(1, 0): 0.3, (0, 1): 0.2j, (1, 1): -0.1})
    f = compose_series(outer, inner, 6)
    h = mobius_map(0.5)
    oracle = torus_coefficient(
        lambda z: h(0.3 * z[0] + 0.2j * z[1] - 0.1 * z[0] * z[1]), (1, 1), 0.5, 16
    )
    assert abs(f.coefficient((1, 1)) - oracle) < 1e-9


def test_compose_series_requires_constant_free_inner():
    with pytest.raises(ValueError):
        compose_series(mobius_series(0.5, 5), constant(1, 0.2), 5)


def test_extract_monomial_univariate():
    f = extract_coefficients(lambda z: z[0] ** 2, 1, 4, rho=0.9, samples_per_axis=16)
    assert abs(f.coefficient((2,)) - 1) < 1e-12
    for k in (0, 1, 3, 4):
        assert abs(f.coefficient((k,))) < 1e-12


def test_extract_mobius_closed_form():
    h = mobius_map(0.7)
    f = extract_coefficients(lambda z: h(z[0]), 1, 10, rho=0.8, samples_per_axis=64)
    ref = mobius_series(0.7, 10)
    for k in range(11):
        assert abs(f.coefficient((k,)) - ref.coefficient((k,))) < 1e-9


def test_extract_bivariate_monomial():
    f = extract_coefficients(
        lambda z: z[0] * z[1], 2, 3, rho=0.5, samples_per_axis=8
    )
    assert abs(f.coefficient((1, 1)) - 1) < 1e-12


def test_extract_rejects_small_sample_count():
    with pytest.raises(ValueError):
        extract_coefficients(lambda z: z[0], 1, 8, rho=0.5, samples_per_axis=8)


@pytest.mark.parametrize("rho", [-0.1, 0.0, 1.0, 1.5])
def test_extract_rejects_bad_radius(rho):
    with pytest.raises(ValueError):
        extract_coefficients(lambda z: z[0], 1, 2, rho=rho, samples_per_axis=8)


@pytest.mark.parametrize("rho", [0.3, 0.5, 0.8, 0.9])
def test_coefficient_round_trip(rho):
    rng = np.random.default_rng(42)
    coeffs = {
        (i, j): complex(rng.standard_normal(), rng.standard_normal())
        for i in range(5)
        for j in range(5 - i)
    }
    f = TruncatedPowerSeries(2, 4, coeffs)
    g = extract_coefficients(
        lambda z: f.eval(z), 2, 4, rho=rho, samples_per_axis=2 * 4 + 1
    )
    for alpha in coeffs:
        assert abs(g.coefficient(alpha) - f.coefficient(alpha)) < 1e-9


def test_compose_linear_majorant_triangle_bound():
    # majorant of g(w.z) on the polydisk at radius r is at most the
    # univariate majorant of g at s*r*n, s = sum of weight moduli
    g = mobius_series(0.6, 10)
    weights = (0.2, 0.1j, -0.15)
    s = sum(abs(w) for w in weights)
    f = compose_linear(g, weights)
    for r in (0.2, 0.5, 0.9):
        lhs = sum(
            abs(c) * r ** sum(a) for a, c in f.ordered_items() if sum(a) > 0
        )
        bound_arg = min(s * r * 3, 1.0)
        rhs = sum(
            abs(c) * bound_arg ** a[0]
            for (a, c) in g.ordered_items()
            if a[0] > 0
        )
        assert lhs <= rhs + 1e-12


def test_text_round_trip():
    f = TruncatedPowerSeries(
        2, 3, {(0, 0): 0.5 + 0.25j, (1, 2): -1 / 3, (3, 0): 2e-17j}
    )
    g = from_text(to_text(f))
    assert g.dimension == f.dimension and g.max_degree == f.max_degree
    assert g.coefficients == f.coefficients


def test_text_format_shape():
    f = TruncatedPowerSeries(2, 2, {(1, 1): 1.0})
    lines = to_text(f).splitlines()
    assert lines[0] == "2 2"
    assert lines[1].split() == ["1", "1", "1", "0"]


def test_series_validation_rejects_bad_indices():
    with pytest.raises(ValueError):
        TruncatedPowerSeries(2, 2, {(1, 2): 1.0})  # exceeds max_degree
    with pytest.raises(DimensionMismatch):
        TruncatedPowerSeries(2, 2, {(1,): 1.0})
    with pytest.raises(ValueError):
        TruncatedPowerSeries(1, 2, {(-1,): 1.0})
