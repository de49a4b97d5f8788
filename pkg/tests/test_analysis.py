"""Degree growth, entropy classification, linear-relation search."""

from fractions import Fraction

import pytest

from cluster_painleve import analysis
from cluster_painleve.laurent import laurent_try_div
from cluster_painleve.tsystem import TStencil, iterate_t, iterate_tz
from cluster_painleve.zsystem import solve_z, z_stencil_from_tuple

F = Fraction
SOMOS4 = (-1, 2, -1)
PRIM4 = (-1, 0, -1)

# signed denominator exponents of x1 along the symbolic somos4 orbit
D1 = [-1, 0, 0, 0, 1, 1, 2, 3, 3, 5, 6, 7, 9, 10, 12, 14, 15, 18, 20, 22,
      25, 27, 30, 33, 35, 39, 42, 45, 49, 52]


def test_symbolic_degree_sequence_prefix():
    orb = iterate_t(TStencil(SOMOS4), None, 12, mode="symbolic")
    ds = analysis.degree_sequence(orb, 1)
    assert list(ds.values) == D1[:16]
    assert ds.d[0] == 0  # the raw -1 self-entry is floored for growth work
    assert ds.definition == "denominator:x1"


def test_total_degree_is_larger_than_single_variable():
    orb = iterate_t(TStencil(SOMOS4), None, 10, mode="symbolic")
    one = analysis.degree_sequence(orb, 1)
    tot = analysis.degree_sequence(orb, "total")
    assert tot.definition == "denominator:total"
    assert all(t >= o for t, o in zip(tot.d, one.d))


@pytest.mark.parametrize("var", [1, 2, 3, 4])
def test_tropical_shadow_equals_symbolic_degrees(var):
    orb = iterate_t(TStencil(SOMOS4), None, 10, mode="symbolic")
    ds = analysis.degree_sequence(orb, var)
    init = [0] * 4
    init[var - 1] = -1
    tr = analysis.tropical_iterate(SOMOS4, init, 10)
    assert tr.values == ds.values


def test_tropical_long_run_matches_pinned_values():
    tr = analysis.tropical_iterate(SOMOS4, [-1, 0, 0, 0], 26)
    assert list(tr.values) == D1


def test_quadratic_growth_with_period8_wobble():
    tr = analysis.tropical_iterate(SOMOS4, [-1, 0, 0, 0], 60)
    wob = {0: F(-1), 1: F(-1, 16), 2: F(-1, 4), 3: F(-9, 16),
           4: F(0), 5: F(-9, 16), 6: F(-1, 4), 7: F(-1, 16)}
    for n in range(4, 64):
        assert tr.values[n] == F(n * n, 16) + wob[n % 8]
    for n in range(4, 48):
        assert tr.values[n + 16] - 2 * tr.values[n + 8] + tr.values[n] == 8


class TestEntropy:
    def test_too_short(self):
        with pytest.raises(analysis.TooShort):
            analysis.entropy_estimate(analysis.tropical_iterate(SOMOS4, [-1, 0, 0, 0], 4))

    def test_quadratic_is_zero_entropy(self):
        tr = analysis.tropical_iterate(SOMOS4, [-1, 0, 0, 0], 60)
        est = analysis.entropy_estimate(tr)
        assert est.entropy == 0.0 and est.fit == "polynomial" and est.degree == 2

    def test_bounded_sequence_is_zero_entropy(self):
        tr = analysis.tropical_iterate((0,), [-1, 0], 30)
        est = analysis.entropy_estimate(tr)
        assert est.entropy == 0.0 and est.degree == 0

    def test_exponential_growth_detected(self):
        tr = analysis.tropical_iterate((-2, 6, -4, 6, -2), [1] * 6, 40)
        est = analysis.entropy_estimate(tr)
        assert est.fit == "exponential"
        # log((3+sqrt 5)/2), the growth of the coefficient dynamics
        assert est.entropy == pytest.approx(0.9624236501, abs=1e-6)
        assert est.band < 1e-6


def test_prim4_autonomous_stride3_relation():
    orb = iterate_t(TStencil(PRIM4), [F(1)] * 4, 30)
    rel = analysis.find_linear_relation(orb, (0, 3, 6), 3, 15)
    assert rel is not None
    assert rel.coefficients == (1, -5, 1) and rel.palindromic


def test_prim4_autonomous_stride6_is_chebyshev_square():
    orb = iterate_t(TStencil(PRIM4), [F(1)] * 4, 40)
    rel = analysis.find_linear_relation(orb, (0, 6, 12), 3, 15)
    assert rel is not None and rel.coefficients == (1, -23, 1)  # 5^2 - 2


def test_prim4_with_coefficients_stride12_relation():
    z = solve_z(z_stencil_from_tuple(PRIM4), [F(2), F(3)])
    orb = iterate_tz(TStencil(PRIM4), z, [F(1)] * 4, 58)
    rs = analysis.relation_search(orb, (0, 12, 24), 4, 30)
    assert rs.status == "found" and rs.solution_dim == 0
    assert rs.relation.coefficients == (1, F(-76657, 36), 1)
    assert rs.relation.palindromic


def test_symbolic_relation_coefficient_specializes():
    """The 67-term coefficient Laurent polynomial evaluates to the numeric one."""
    a = PRIM4
    zs = solve_z(z_stencil_from_tuple(a))
    sorb = iterate_tz(TStencil(a), zs, None, 21, mode="symbolic")
    c = laurent_try_div(sorb.values[24] + sorb.values[0], sorb.values[12])
    assert c is not None and c.n_terms() == 67 and c.coefficients_positive()
    env = {"x0": F(1), "x1": F(1), "x2": F(1), "x3": F(1), "Z0": F(2), "Z1": F(3)}
    assert c.evaluate({k: env[k] for k in c.vars}) == F(76657, 36)


def test_no_short_relation_on_somos4():
    orb = iterate_t(TStencil(SOMOS4), [F(1)] * 4, 30)
    rs = analysis.relation_search(orb, (0, 1, 2), 4, 10)
    assert rs.status == "inconsistent" and rs.relation is None
    assert rs.solution_dim == -1


def test_flat_orbit_is_underdetermined():
    from cluster_painleve.tsystem import Orbit
    orb = Orbit(TStencil((0,)), "rational", [F(3)] * 30, None, None)
    rs = analysis.relation_search(orb, (0, 2, 4), 3, 10)
    assert rs.status == "underdetermined"
    assert rs.solution_dim >= 1 and rs.relation is None


def test_offsets_must_start_at_zero_and_increase():
    orb = iterate_t(TStencil(SOMOS4), [F(1)] * 4, 30)
    with pytest.raises(ValueError):
        analysis.relation_search(orb, (1, 2, 3), 2, 5)
    with pytest.raises(ValueError):
        analysis.relation_search(orb, (0, 2, 2), 2, 5)


def test_relation_search_needs_enough_data():
    orb = iterate_t(TStencil(SOMOS4), [F(1)] * 4, 10)
    with pytest.raises(analysis.InsufficientData):
        analysis.relation_search(orb, (0, 12, 24), 4, 30)


def test_first_integral_is_conserved():
    from cluster_painleve import reduction
    from cluster_painleve.presets import get_preset
    spec = reduction.derive_usystem(get_preset("somos4").matrix)
    us = reduction.iterate_usystem(spec, [F(3, 2), F(5, 7)], 30)
    h = analysis.somos4_first_integral(us[0], us[1])
    assert all(analysis.somos4_first_integral(us[n], us[n + 1]) == h
               for n in range(1, 30))
    with pytest.raises(analysis.ZeroProduct):
        analysis.somos4_first_integral(F(0), F(1))
