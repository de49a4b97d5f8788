"""Coefficient constraints: stencils, spectra, closed forms, solutions."""

from fractions import Fraction

import pytest

from cluster_painleve.zsystem import (
    AlgebraicZCase,
    ConstantZ,
    GeometricZ,
    PerturbedZ,
    ZeroInitial,
    char_poly,
    exponent_degree_sequence,
    solve_z,
    z_stencil_from_tuple,
)

F = Fraction


def test_stencil_negates_and_trims():
    st = z_stencil_from_tuple((-1, 2, -1))
    assert st.exponents == (1, -2, 1)
    assert (st.lo, st.hi, st.order) == (1, 3, 2)
    assert st.trimmed == (1, -2, 1)


def test_stencil_interior_zeros_keep_order():
    st = z_stencil_from_tuple((-1, 0, -1))
    assert st.trimmed == (1, 0, 1)
    assert st.order == 2


def test_constraint_text():
    st = z_stencil_from_tuple((-1, 2, -1))
    assert st.constraint_text() == "Z[n+1]*Z[n+3] / (Z[n+2]^2) = 1"


class TestCharPoly:
    def test_double_root_at_one(self):
        cp = char_poly(z_stencil_from_tuple((-1, 2, -1)))
        assert cp.factors == (((-1, 1), 2),)
        assert cp.format_text() == "(L - 1)^2"

    def test_quartic_splits_into_quadratics(self):
        cp = char_poly(z_stencil_from_tuple((-2, 6, -4, 6, -2)))
        assert {f for f, _ in cp.factors} == {(1, 0, 1), (1, -3, 1)}


class TestClosedForms:
    def test_geometric(self):
        sol = solve_z(z_stencil_from_tuple((-1, 2, -1)))
        assert sol.closed_form["family"] == "geometric"

    def test_periodic_geometric(self):
        sol = solve_z(z_stencil_from_tuple((-1, 1, 1, -1)))
        cf = sol.closed_form
        assert cf["family"] == "periodic_geometric" and cf["period"] == 2

    def test_antiperiodic_prim4(self):
        sol = solve_z(z_stencil_from_tuple((-1, 0, -1)))
        cf = sol.closed_form
        assert cf["family"] == "antiperiodic" and cf["period"] == 4

    def test_antiperiodic_prim5(self):
        sol = solve_z(z_stencil_from_tuple((-1, 0, 0, -1)))
        cf = sol.closed_form
        assert cf["family"] == "antiperiodic" and cf["period"] == 6


def test_solved_antiperiodic_cycle():
    sol = solve_z(z_stencil_from_tuple((-1, 0, -1)), [F(2), F(3)])
    got = [sol.value(n) for n in range(8)]
    assert got == [F(2), F(3), F(1, 2), F(1, 3), F(2), F(3), F(1, 2), F(1, 3)]
    assert all(sol.check_constraint(n) for n in range(6))


def test_solve_z_symbol_count_check():
    st = z_stencil_from_tuple((-1, 2, -1))
    sol = solve_z(st, 2)  # int init = assert on the symbol count
    assert sol.symbols == ("Z0", "Z1")
    with pytest.raises(ValueError):
        solve_z(st, 3)


def test_solve_z_rejects_zero_values():
    st = z_stencil_from_tuple((-1, 2, -1))
    with pytest.raises(ZeroInitial):
        solve_z(st, [F(0), F(1)])


def test_geometric_z_values_and_symbols():
    z = GeometricZ(F(2), F(3, 2))
    assert [z.value(n) for n in range(4)] == [F(2), F(3), F(9, 2), F(27, 4)]
    assert z.symbols == ("beta", "q")
    sign, exps = z.monomial(5)
    assert sign == 1 and exps == (1, 5)


def test_perturbed_z_wraps_base():
    z = PerturbedZ(GeometricZ(F(1), F(2)), {3: F(7)})
    assert z.value(3) == 7 * 2 ** 3
    assert z.value(4) == 2 ** 4
    z.monomial(2)  # untouched entries keep their monomial form
    with pytest.raises(AlgebraicZCase):
        z.monomial(3)


def test_constant_z_monomial_only_for_one():
    assert ConstantZ().monomial(9) == (1, ())
    with pytest.raises(AlgebraicZCase):
        ConstantZ(F(2)).monomial(0)
    with pytest.raises(ZeroInitial):
        ConstantZ(0)


def test_exponent_growth_tracks_spectral_radius():
    sol = solve_z(z_stencil_from_tuple((-2, 6, -4, 6, -2)))
    degs = exponent_degree_sequence(sol, 41)
    lam = (3 + 5 ** 0.5) / 2
    assert abs(degs[40] / degs[39] - lam) < 1e-2 * lam


def test_geometric_solution_grows_linearly():
    sol = solve_z(z_stencil_from_tuple((-1, 2, -1)))
    degs = exponent_degree_sequence(sol, 10)
    # Z_n = Z0^(1-n) Z1^n: total degree |1-n| + n
    assert degs == [1, 1, 3, 5, 7, 9, 11, 13, 15, 17]
