"""Palindromic reduction: bases, reduced recurrences, symplectic structure.

The staircase that extracts a palindromic generator from the image lattice
is the heart of the package; every preset's generator is pinned here along
with the reduced recurrences they induce.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cluster_painleve import reduction
from cluster_painleve.laurent import LaurentPoly
from cluster_painleve.presets import get_preset
from cluster_painleve.quiver import ExchangeMatrix
from cluster_painleve.tsystem import TStencil, iterate_t

F = Fraction

# (generator, rank) per preset — the full basis is the generator's shifts
PINNED_BASES = {
    "somos4": ((1, -2, 1, 0), 2),
    "somos5": ((1, -1, -1, 1, 0), 2),
    "somos6": ((1, -2, 1, 0, 0, 0), 4),
    "somos7": ((1, 0, -1, -1, 0, 1, 0), 2),
    "prim4": ((1, 0, 0, 0), 4),
    "nonintegrable6": ((1, -3, 2, -3, 1, 0), 2),
}


@pytest.mark.parametrize("name", sorted(PINNED_BASES))
def test_palindromic_generator(name):
    gen, r = PINNED_BASES[name]
    bas = reduction.palindromic_basis(get_preset(name).matrix)
    assert (bas.generator, bas.rank) == (gen, r)
    assert bas.vectors[0][: len(bas.generator)]  # shifts start at offset 0


def test_zero_matrix_has_no_reduction():
    b = ExchangeMatrix.from_rows([[0, 0], [0, 0]])
    assert reduction.palindromic_basis(b).rank == 0
    with pytest.raises(reduction.ZeroRank):
        reduction.derive_usystem(b)


def _terms(spec):
    return spec.f_num.terms, spec.f_den.terms


def test_somos4_reduced_recurrence():
    spec = reduction.derive_usystem(get_preset("somos4").matrix)
    assert spec.order == 2 and not spec.z_flag
    assert _terms(spec) == ({(1,): 1, (0,): 1}, {(2,): 1})
    assert spec.format_text() == "U[n+2]*U[n] = (U1 + 1) / (U1^2)"


def test_somos5_reduced_recurrence():
    spec = reduction.derive_usystem(get_preset("somos5").matrix)
    assert spec.order == 2
    assert _terms(spec) == ({(1,): 1, (0,): 1}, {(1,): 1})


def test_somos6_reduced_recurrence():
    spec = reduction.derive_usystem(get_preset("somos6").matrix)
    assert spec.order == 4
    assert _terms(spec) == ({(1, 1, 1): 1, (0, 0, 0): 1}, {(2, 2, 2): 1})


def test_somos7_keeps_a_coefficient():
    spec = reduction.derive_uzsystem(get_preset("somos7").matrix)
    assert spec.order == 2 and spec.z_flag and spec.z_power == 1
    assert _terms(spec) == ({(1,): 1, (0,): 1}, {(0,): 1})
    assert spec.format_text() == "U[n+2]*U[n] = Z[n] * (U1 + 1)"


def test_prim4_reduction_is_the_identity():
    # rank equals matrix size: the reduced recurrence is the original one
    spec = reduction.derive_usystem(get_preset("prim4").matrix)
    assert spec.order == 4 and spec.generator == (1, 0, 0, 0)
    assert _terms(spec) == ({(1, 0, 1): 1, (0, 0, 0): 1}, {(0, 0, 0): 1})


def test_nonintegrable6_reduced_recurrence():
    spec = reduction.derive_usystem(get_preset("nonintegrable6").matrix)
    assert spec.order == 2
    assert _terms(spec) == ({(2,): 1, (0,): 1}, {(3,): 1})


def test_projection_is_the_generator_monomial():
    # somos4 generator (1,-2,1,0): U_n = x_n x_{n+2} / x_{n+1}^2
    bas = reduction.palindromic_basis(get_preset("somos4").matrix)
    orb = iterate_t(TStencil((-1, 2, -1)), [F(1), F(2), F(3), F(5)], 6)
    v = orb.values
    for n in range(4):
        u = reduction.project(bas, v[n : n + 4])
        assert u[0] == v[n] * v[n + 2] / v[n + 1] ** 2
        assert u[1] == v[n + 1] * v[n + 3] / v[n + 2] ** 2


def test_projection_rejects_zero_entries():
    bas = reduction.palindromic_basis(get_preset("somos4").matrix)
    with pytest.raises(reduction.ZeroComponent):
        reduction.project(bas, [F(1), F(0), F(1), F(1)])


rational9 = st.fractions(min_value=F(1, 9), max_value=F(9), max_denominator=9)


@pytest.mark.parametrize("name", ["somos4", "somos5", "somos6"])
def test_reduction_conjugates_the_dynamics(name):
    b = get_preset(name).matrix
    init = [F(2), F(1, 3), F(5), F(7, 2), F(1), F(4)][: b.n]
    assert reduction.verify_conjugacy(b, init, 12)


@given(st.lists(rational9, min_size=4, max_size=4))
@settings(max_examples=25, deadline=None)
def test_conjugacy_on_random_windows(init):
    assert reduction.verify_conjugacy(get_preset("somos4").matrix, init, 8)


def test_reduced_two_form_somos4():
    b = get_preset("somos4").matrix
    chat = reduction.reduced_structure_matrix(b, reduction.palindromic_basis(b))
    assert chat == [[0, -1], [1, 0]]


def test_reduced_two_form_somos6():
    b = get_preset("somos6").matrix
    chat = reduction.reduced_structure_matrix(b, reduction.palindromic_basis(b))
    assert chat == [
        [0, -1, -1, -1],
        [1, 0, -1, -1],
        [1, 1, 0, -1],
        [1, 1, 1, 0],
    ]


def test_log_canonical_bracket_pattern():
    b = get_preset("somos6").matrix
    chat = reduction.reduced_structure_matrix(b, reduction.palindromic_basis(b))
    pt = [F(2), F(3), F(5), F(7)]
    pb = reduction.poisson_bracket_matrix(chat, pt)
    for i in range(4):
        for j in range(i + 1, 4):
            sign = -1 if j - i == 2 else 1
            assert pb[i][j] == sign * pt[i] * pt[j]


@pytest.mark.parametrize("name,dim", [("somos4", 2), ("somos6", 4)])
def test_symplectic_form_preserved(name, dim):
    b = get_preset(name).matrix
    pts = [[F(k + 2, j + 1) for j in range(dim)] for k in range(3)]
    assert reduction.verify_form_invariance(b, pts)


def test_symplectic_form_entries():
    b = get_preset("somos4").matrix
    chat = reduction.reduced_structure_matrix(b, reduction.palindromic_basis(b))
    om = reduction.symplectic_form_at(chat, [F(2), F(3)])
    assert om == [[0, F(-1, 6)], [F(1, 6), 0]]


def test_dilog_flatness_is_second_order():
    res = reduction.generating_function_check(
        get_preset("somos4").matrix, [F(1), F(1), F(2), F(1, 2)], h=1e-3)
    assert res["ratio"] == pytest.approx(4.0, abs=0.2)
    assert abs(res["residual"]) < 1e-5
