"""Bilinear recurrences: exact orbits, Laurentness, serialization.

The rational and symbolic iteration paths are independent implementations
of the same dynamics; several tests pin them against each other.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cluster_painleve.tsystem import (
    NonLaurentIterate,
    Orbit,
    TStencil,
    ZeroEncountered,
    check_orbit,
    iterate_t,
    iterate_tz,
    orbit_from_json,
)
from cluster_painleve.zsystem import GeometricZ, solve_z, z_stencil_from_tuple

F = Fraction

SOMOS4 = (-1, 2, -1)
SOMOS5 = (-1, 1, 1, -1)
SOMOS6 = (-1, 1, 0, 1, -1)
SOMOS7 = (-1, 0, 1, 1, 0, -1)
PRIM4 = (-1, 0, -1)

# regression pins for the unit-initialized orbits
ONES_TAILS = {
    SOMOS4: [2, 3, 7, 23, 59, 314, 1529, 8209, 83313],
    SOMOS5: [2, 3, 5, 11, 37, 83, 274, 1217, 6161, 22833],
    SOMOS6: [2, 3, 5, 8, 18, 60, 135, 385, 1102, 5367],
    SOMOS7: [2, 3, 4, 6, 12, 24, 72, 144, 288, 864],
    PRIM4: [2, 3, 4, 9, 14, 19, 43, 67, 91],
}


@pytest.mark.parametrize("a", ONES_TAILS)
def test_unit_orbits(a):
    n = len(a) + 1
    want = ONES_TAILS[a]
    orb = iterate_t(TStencil(a), [F(1)] * n, len(want))
    assert orb.values[n:] == want
    assert check_orbit(orb)


def test_somos4_recurrence_shape():
    # x_{n+4} x_n = x_{n+2}^2 + x_{n+1} x_{n+3}
    orb = iterate_t(TStencil(SOMOS4), [F(1), F(2), F(3), F(5)], 4)
    v = orb.values
    for n in range(4):
        assert v[n + 4] * v[n] == v[n + 2] ** 2 + v[n + 1] * v[n + 3]


def test_steps_must_be_nonnegative():
    with pytest.raises(ValueError):
        iterate_t(TStencil(SOMOS4), [F(1)] * 4, -1)


def test_zero_initial_rejected():
    with pytest.raises(ZeroEncountered):
        iterate_t(TStencil(SOMOS4), [F(0), F(1), F(1), F(1)], 2)


@pytest.mark.parametrize("a", [SOMOS4, SOMOS5, SOMOS6, SOMOS7, PRIM4, (-1, 0, 0, -1)])
def test_laurent_property_past_one_period(a):
    n = len(a) + 1
    orb = iterate_t(TStencil(a), None, n + 8, mode="symbolic")
    assert all(p.coefficients_positive() for p in orb.values)


def test_symbolic_specializes_to_rational():
    init = [F(2), F(1, 3), F(5), F(1)]
    sym = iterate_t(TStencil(SOMOS4), None, 10, mode="symbolic")
    rat = iterate_t(TStencil(SOMOS4), init, 10)
    env = {v: init[i] for i, v in enumerate(sym.variables)}
    assert [p.evaluate(env) for p in sym.values] == rat.values


def test_symbolic_tz_specializes_to_rational():
    beta, q = F(2), F(3, 2)
    init = [F(1), F(2), F(1, 2), F(3)]
    sym = iterate_tz(TStencil(SOMOS4), GeometricZ(F(1), F(1)), None, 8,
                     mode="symbolic")
    rat = iterate_tz(TStencil(SOMOS4), GeometricZ(beta, q), init, 8)
    env = dict(zip(sym.variables, init + [beta, q]))
    assert [p.evaluate(env) for p in sym.values] == rat.values


def test_constraint_violating_coefficients_break_laurentness():
    # a geometric Z never satisfies the antiperiodic constraint of this system
    with pytest.raises(NonLaurentIterate):
        iterate_tz(TStencil(PRIM4), GeometricZ(F(1), F(1)), None, 8,
                   mode="symbolic")


def test_tz_with_solved_coefficients_stays_consistent():
    z = solve_z(z_stencil_from_tuple(PRIM4), [F(2), F(3)])
    orb = iterate_tz(TStencil(PRIM4), z, [F(1)] * 4, 9)
    assert orb.values[4:8] == [F(4), F(15), F(8), F(11)]
    assert check_orbit(orb)


def test_check_orbit_detects_corruption():
    orb = iterate_t(TStencil(SOMOS4), [F(1)] * 4, 6)
    bad = Orbit(orb.stencil, orb.kind, orb.values[:-1] + [F(999)], None, None)
    assert not check_orbit(bad)


def test_rational_json_roundtrip():
    orb = iterate_t(TStencil(SOMOS5), [F(1), F(2), F(1, 2), F(3), F(1)], 7)
    back = orbit_from_json(orb.to_json())
    assert back.values == orb.values and back.stencil == orb.stencil


def test_symbolic_json_roundtrip():
    orb = iterate_t(TStencil(SOMOS4), None, 5, mode="symbolic")
    back = orbit_from_json(orb.to_json())
    assert back.values == list(orb.values)


rational9 = st.fractions(min_value=F(1, 9), max_value=F(9), max_denominator=9)


@given(st.lists(rational9, min_size=4, max_size=4))
@settings(max_examples=40, deadline=None)
def test_orbit_windows_satisfy_recurrence_everywhere(init):
    orb = iterate_t(TStencil(SOMOS4), init, 12)
    assert check_orbit(orb)
    v = orb.values
    for n in range(8):
        assert v[n + 4] * v[n] == v[n + 2] ** 2 + v[n + 1] * v[n + 3]
