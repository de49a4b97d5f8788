from fractions import Fraction

from hypothesis import given, strategies as st

from cluster_painleve.intlinalg import (
    hermite_form,
    image_lattice_basis,
    in_lattice,
    invert_fraction,
    kernel_basis,
    lattice_equal,
    mat_mul,
    rank,
    solve_int,
)

B4 = [  # rank-2 skew matrix; image lattice spanned by two palindromic shifts
    [0, -1, 2, -1],
    [1, 0, -3, 2],
    [-2, 3, 0, -1],
    [1, -2, 1, 0],
]


def test_rank_and_kernel_dimensions():
    assert rank(B4) == 2
    ker = kernel_basis(B4)
    assert len(ker) == 2
    for v in ker:
        assert all(sum(B4[i][j] * v[j] for j in range(4)) == 0 for i in range(4))


def test_image_lattice_matches_palindromic_shifts():
    img = image_lattice_basis(B4)
    shifts = [[1, -2, 1, 0], [0, 1, -2, 1]]
    assert lattice_equal(img, shifts)
    assert in_lattice(img, [1, -1, -1, 1])  # sum of the two generators
    assert not in_lattice(img, [1, 0, 0, 0])


def test_solve_int_finds_integer_combinations():
    cols = [[1, -2, 1, 0], [0, 1, -2, 1]]
    assert solve_int(cols, [2, -3, 0, 1]) == (2, 1)
    assert solve_int(cols, [1, 0, 0, 0]) is None


def test_hermite_form_is_canonical():
    h1 = hermite_form([[2, 4], [1, 3]])
    h2 = hermite_form([[1, 3], [2, 4]])
    assert h1 == h2  # row order must not matter


small = st.integers(-4, 4)


@given(st.lists(st.tuples(small, small, small), min_size=1, max_size=4),
       st.lists(small, min_size=4, max_size=4))
def test_lattice_membership_closed_under_combination(rows, coeffs):
    basis = [list(r) for r in rows]
    combo = [0, 0, 0]
    for c, row in zip(coeffs, basis):
        combo = [x + c * y for x, y in zip(combo, row)]
    # any integer combination of basis rows lies in the lattice they span
    assert in_lattice(basis, combo)


@given(st.lists(st.tuples(small, small), min_size=1, max_size=3))
def test_lattice_equal_reflexive(rows):
    basis = [list(r) for r in rows]
    assert lattice_equal(basis, basis)


@given(st.tuples(small, small, small, small).filter(lambda t: t[0] * t[3] != t[1] * t[2]))
def test_invert_fraction_roundtrip(t):
    a, b, c, d = (Fraction(v) for v in t)
    m = [[a, b], [c, d]]
    inv = invert_fraction(m)
    assert inv is not None
    prod = [[sum(m[i][k] * inv[k][j] for k in range(2)) for j in range(2)]
            for i in range(2)]
    assert prod == [[1, 0], [0, 1]]


def test_invert_fraction_rejects_singular():
    one = Fraction(1)
    assert invert_fraction([[one, one], [one, one]]) is None


def test_mat_mul_plain():
    assert mat_mul([[1, 2]], [[3], [4]]) == [[11]]
