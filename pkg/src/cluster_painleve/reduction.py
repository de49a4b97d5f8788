"""Reduction of a rank-r exchange matrix to an order-r recurrence.

The rows of a period-1 exchange matrix B span a rank-r sublattice im B of
Z^N that is invariant under the shift s and the reversal r of the index
window.  That lattice always has a Z-basis of shifted copies of a single
palindromic integer vector v with support of length N-r+1; the monomial map
U_n = prod_j x_{n+j}^{v_{j+1}} then intertwines the order-N bilinear
recurrence with an order-r recurrence U_{n+r} U_n = F(U_{n+1..n+r-1}) in the
reduced variables, carrying a log-canonical symplectic/presymplectic form.
This module constructs the basis, eliminates the recurrence, and verifies
the conjugacy, the 2-form invariance, and (numerically) the dilogarithm
generating function of the reduced map.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

import mpmath

from .intlinalg import (
    image_lattice_basis, in_lattice, invert_fraction, lattice_equal, rank,
    solve_int,
)
from .laurent import LaurentPoly
from .quiver import ExchangeMatrix
from .tsystem import TStencil, iterate_t, iterate_tz
from .zsystem import ConstantZ


class EliminationFailed(ArithmeticError):
    """Internal consistency failure while reducing (should never happen)."""


class ZeroComponent(ValueError):
    pass


class SingularPoint(ValueError):
    pass


class DomainError(ValueError):
    pass


class ZeroRank(ValueError):
    pass


# -- palindromic lattice bases --------------------------------------------------


def _support(v: Sequence[Fraction]) -> tuple[int, int] | None:
    idx = [i for i, x in enumerate(v) if x != 0]
    if not idx:
        return None
    return idx[0], idx[-1]


def _shift(v: list[Fraction], k: int, n: int) -> list[Fraction]:
    out = [Fraction(0)] * n
    for i, x in enumerate(v):
        j = i + k
        if x != 0:
            if j < 0 or j >= n:
                raise EliminationFailed("shift pushed support out of the window")
            out[j] = x
    return out


def _is_palindromic_on_support(v: Sequence[Fraction]) -> bool:
    sup = _support(v)
    if sup is None:
        return True
    lo, hi = sup
    seg = list(v[lo : hi + 1])
    return seg == seg[::-1]


def _symmetrize(v: Sequence[Fraction], n: int) -> list[Fraction] | None:
    """v + aligned reversal; None when the sum collapses to zero."""
    v = list(v)
    sup = _support(v)
    if sup is None:
        return None
    if _is_palindromic_on_support(v):
        return v
    lo, hi = sup
    rev = list(reversed(v))
    # reversal has support [n-1-hi, n-1-lo]; realign to [lo, hi]
    w = [a + b for a, b in zip(v, _shift(rev, lo + hi - (n - 1), n))]
    if all(x == 0 for x in w):
        return None
    if not _is_palindromic_on_support(w):
        raise EliminationFailed("symmetrized vector is not palindromic")
    return w


def _reduce_against(row: Sequence[Fraction], v: list[Fraction], n: int) -> list[Fraction] | None:
    """Eliminate the leading window of `row` against shifts of v; None if it
    lies in their span."""
    sup = _support(v)
    lo, hi = sup
    length = hi - lo + 1
    cur = [Fraction(x) for x in row]
    lead = v[lo]
    for pos in range(n - length + 1):
        c = cur[pos]
        if c != 0:
            sh = _shift(v, pos - lo, n)
            f = c / lead
            cur = [a - f * b for a, b in zip(cur, sh)]
    if all(x == 0 for x in cur):
        return None
    return cur


@dataclass(frozen=True)
class PalindromicBasis:
    """Z-basis s^0(v), ..., s^{r-1}(v) of the row lattice of B."""

    n: int
    rank: int
    generator: tuple[int, ...]

    @property
    def vectors(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for i in range(self.rank):
            out.append(tuple([0] * i + list(self.generator[: self.n - i])))
        return tuple(out)

    def support_length(self) -> int:
        return self.n - self.rank + 1


def palindromic_basis(b: ExchangeMatrix) -> PalindromicBasis:
    """Shift-palindromic Z-basis of im B (unique up to overall sign; the
    leading entry of the generator is normalized positive)."""
    n = b.n
    rows = [list(map(Fraction, row)) for row in b.rows]
    r = rank([list(row) for row in b.rows])
    if r == 0:
        return PalindromicBasis(n, 0, (0,) * n)

    v: list[Fraction] | None = None
    for row in rows:
        v = _symmetrize(row, n)
        if v is not None:
            break
    if v is None:
        raise EliminationFailed("no row admits a nonzero symmetrization")

    while True:
        lo, hi = _support(v)
        v = _shift(v, -lo, n)
        length = hi - lo + 1
        span = n - length + 1
        if span == r:
            break
        if span > r:
            raise EliminationFailed("candidate support shorter than the rank allows")
        adopted = False
        for row in rows:
            cur = _reduce_against(row, v, n)
            if cur is None:
                continue
            w = _symmetrize(cur, n)
            if w is None:
                continue
            v = w
            adopted = True
            break
        if not adopted:
            raise EliminationFailed("no row extends the span")

    mult = lcm(*[x.denominator for x in v]) if any(x.denominator != 1 for x in v) else 1
    ints = [int(x * mult) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    ints = [x // g for x in ints]
    if ints[0] < 0:
        ints = [-x for x in ints]
    gen = tuple(ints)

    basis = PalindromicBasis(n, r, gen)
    img = image_lattice_basis([list(row) for row in b.rows])
    for vec in basis.vectors:
        if not in_lattice(img, vec):
            raise EliminationFailed("basis vector escapes the row lattice")
    if not lattice_equal([list(w) for w in basis.vectors], img):
        raise EliminationFailed("shifted family does not span the row lattice")
    return basis


def project(basis: PalindromicBasis, window: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Monomial projection of one x-window to the reduced torus."""
    if len(window) != basis.n:
        raise ValueError(f"window must have {basis.n} entries")
    xs = [Fraction(x) for x in window]
    if any(x == 0 for x in xs):
        raise ZeroComponent("window contains a zero component")
    out = []
    for vec in basis.vectors:
        u = Fraction(1)
        for x, e in zip(xs, vec):
            if e:
                u *= x ** e
        out.append(u)
    return tuple(out)


# -- reduced recurrences ---------------------------------------------------------


@dataclass(frozen=True)
class USystemSpec:
    """Order-r recurrence U_{n+r} U_n = Z_n^{z_power} * F(U_{n+1},...,U_{n+r-1}).

    F is stored as an exact Laurent polynomial over variables U1..U{r-1}
    (variable Uj stands for U_{n+j}), plus a canonical numerator/denominator
    split with a coefficient-1 monomial denominator.  z_power is the leading
    generator entry; it is 1 for every shipped system, and the coefficient
    sequence enters only when z_flag is set.
    """

    a: tuple[int, ...]
    order: int
    generator: tuple[int, ...]
    variables: tuple[str, ...]
    f_laurent: LaurentPoly
    f_num: LaurentPoly
    f_den: LaurentPoly
    z_flag: bool
    z_power: int

    def basis(self) -> PalindromicBasis:
        return PalindromicBasis(len(self.a) + 1, self.order, self.generator)

    def format_text(self) -> str:
        lhs = f"U[n+{self.order}]*U[n]"
        num = f"{self.f_num}"
        if self.f_num.n_terms() > 1 and (self.z_flag or not self.f_den.is_one()):
            num = f"({num})"
        rhs = num if self.f_den.is_one() else f"{num} / ({self.f_den})"
        z = ""
        if self.z_flag:
            z = "Z[n] * " if self.z_power == 1 else f"Z[n]^{self.z_power} * "
        return f"{lhs} = {z}{rhs}"

    def canonical_pair(self) -> tuple[dict, dict]:
        return self.f_num.to_json(), self.f_den.to_json()


def _derive(b: ExchangeMatrix, z_flag: bool) -> USystemSpec:
    basis = palindromic_basis(b)
    n, r = basis.n, basis.rank
    if r == 0:
        raise ZeroRank("zero matrix has no reduced recurrence")
    v = basis.generator
    a = b.first_row_tuple()

    w = [0] * (n + 1)
    for j in range(n):
        w[j] += v[j]
    for j in range(r, n + 1):
        w[j] += v[j - r]
    e_top = w[n]
    if e_top <= 0:
        raise EliminationFailed("leading generator entry must be positive")

    xvars = tuple(f"x{i}" for i in range(n))
    mplus = LaurentPoly.monomial(
        xvars, tuple([0] + [max(aj, 0) for aj in a]), 1)
    mminus = LaurentPoly.monomial(
        xvars, tuple([0] + [max(-aj, 0) for aj in a]), 1)
    e = (mplus + mminus) ** e_top
    shift_exps = tuple([w[0] - e_top] + [w[j] for j in range(1, n)])
    e = e.shift(shift_exps)

    uvars = tuple(f"U{j}" for j in range(1, r))
    cols = [list(vec) for vec in basis.vectors]
    terms: dict[tuple[int, ...], int] = {}
    for exps, coef in e.terms.items():
        sol = solve_int(cols, list(exps))
        if sol is None:
            raise EliminationFailed(f"monomial {exps} is not a product of reduced variables")
        if sol[0] != 0:
            raise EliminationFailed("reduced recurrence would depend on U_n itself")
        key = tuple(sol[1:])
        terms[key] = terms.get(key, 0) + coef
    f = LaurentPoly(uvars, terms)
    den_exps = tuple(max(0, -f.min_exponent(i)) for i in range(len(uvars)))
    f_num = f.shift(den_exps)
    f_den = LaurentPoly.monomial(uvars, den_exps, 1)
    return USystemSpec(a, r, v, uvars, f, f_num, f_den, z_flag, e_top)


def derive_usystem(b: ExchangeMatrix) -> USystemSpec:
    """Coefficient-free reduced recurrence of the matrix's bilinear system."""
    return _derive(b, z_flag=False)


def derive_uzsystem(b: ExchangeMatrix) -> USystemSpec:
    """Reduced recurrence carrying the coefficient sequence Z_n."""
    return _derive(b, z_flag=True)


def iterate_usystem(spec: USystemSpec, init: Sequence[Fraction], steps: int,
                    z=None) -> list[Fraction]:
    r = spec.order
    us = [Fraction(u) for u in init]
    if len(us) != r:
        raise ValueError(f"initial window must have {r} entries")
    if any(u == 0 for u in us):
        raise ZeroComponent("initial window contains zero")
    if spec.z_flag and z is None:
        raise ValueError("recurrence carries a coefficient sequence; pass z")
    if not spec.z_flag:
        z = ConstantZ(1)
    for n in range(steps):
        env = {f"U{j}": us[n + j] for j in range(1, r)}
        fval = spec.f_laurent.evaluate(env)
        zval = z.value(n) ** spec.z_power
        us.append(zval * fval / us[n])
    return us


def verify_conjugacy(b: ExchangeMatrix, init: Sequence[Fraction], steps: int,
                     z=None) -> bool:
    """Does projection of the order-N orbit equal direct reduced iteration?"""
    spec = derive_uzsystem(b) if z is not None else derive_usystem(b)
    basis = spec.basis()
    n, r = basis.n, basis.rank
    st = TStencil(spec.a)
    if z is None:
        xorb = iterate_t(st, init, steps + r)
    else:
        xorb = iterate_tz(st, z, init, steps + r)
    vals = xorb.values
    v = spec.generator
    projected = []
    for m in range(steps + r):
        u = Fraction(1)
        for j, ej in enumerate(v):
            if ej:
                u *= Fraction(vals[m + j]) ** ej
        projected.append(u)
    direct = iterate_usystem(spec, projected[:r], steps, z=z)
    return direct == projected


# -- log-canonical 2-form -------------------------------------------------------


def reduced_structure_matrix(b: ExchangeMatrix, basis: PalindromicBasis) -> list[list[Fraction]]:
    """Unique skew matrix C with V^T C V = B, where V stacks the basis rows.

    C gives the reduced 2-form sum_{i<j} C_ij dlogU_i ^ dlogU_j whose pullback
    is the quiver's log-canonical form.
    """
    vmat = [list(vec) for vec in basis.vectors]
    r, n = len(vmat), basis.n
    m = [[Fraction(sum(vmat[i][k] * vmat[j][k] for k in range(n)))
          for j in range(r)] for i in range(r)]
    minv = invert_fraction(m)
    if minv is None:
        raise EliminationFailed("basis Gram matrix is singular")
    vb = [[Fraction(sum(vmat[i][k] * b.rows[k][l] for k in range(n)))
           for l in range(n)] for i in range(r)]
    vbvt = [[sum(vb[i][k] * vmat[j][k] for k in range(n)) for j in range(r)]
            for i in range(r)]
    tmp = [[sum(minv[i][k] * vbvt[k][j] for k in range(r)) for j in range(r)]
           for i in range(r)]
    c = [[sum(tmp[i][k] * minv[k][j] for k in range(r)) for j in range(r)]
         for i in range(r)]
    # exactness check: V^T C V must reproduce B entrywise
    vtc = [[sum(vmat[k][i] * c[k][j] for k in range(r)) for j in range(r)]
           for i in range(n)]
    back = [[sum(vtc[i][k] * vmat[k][j] for k in range(r)) for j in range(n)]
            for i in range(n)]
    for i in range(n):
        for j in range(n):
            if back[i][j] != b.rows[i][j]:
                raise EliminationFailed("2-form does not push down exactly")
    return c


def _phase_map(spec: USystemSpec, u: Sequence[Fraction]) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Coefficient-free shift map on the reduced torus and its Jacobian."""
    r = spec.order
    if any(x == 0 for x in u):
        raise SingularPoint("zero coordinate")
    env = {f"U{j}": u[j] for j in range(1, r)}
    fval = spec.f_laurent.evaluate(env)
    last = fval / u[0]
    if last == 0:
        raise SingularPoint("image leaves the torus (F vanishes)")
    image = list(u[1:]) + [last]
    jac = [[Fraction(0)] * r for _ in range(r)]
    for i in range(r - 1):
        jac[i][i + 1] = Fraction(1)
    jac[r - 1][0] = -fval / u[0] ** 2
    for j in range(1, r):
        jac[r - 1][j] = spec.f_laurent.partial(f"U{j}").evaluate(env) / u[0]
    return image, jac


def symplectic_form_at(c: list[list[Fraction]], u: Sequence[Fraction]) -> list[list[Fraction]]:
    r = len(c)
    return [[c[i][j] / (u[i] * u[j]) for j in range(r)] for i in range(r)]


def verify_form_invariance(b: ExchangeMatrix, points: Sequence[Sequence[Fraction]]) -> bool:
    """Exact check J^T Omega(phi(U)) J = Omega(U) at each supplied point."""
    spec = derive_usystem(b)
    basis = spec.basis()
    c = reduced_structure_matrix(b, basis)
    r = spec.order
    for point in points:
        u = [Fraction(x) for x in point]
        if len(u) != r:
            raise ValueError(f"points live on the {r}-torus")
        image, jac = _phase_map(spec, u)
        om_u = symplectic_form_at(c, u)
        om_im = symplectic_form_at(c, image)
        for i in range(r):
            for j in range(r):
                lhs = sum(jac[k][i] * om_im[k][l] * jac[l][j]
                          for k in range(r) for l in range(r))
                if lhs != om_u[i][j]:
                    return False
    return True


def poisson_bracket_matrix(c: list[list[Fraction]], u: Sequence[Fraction]) -> list[list[Fraction]]:
    """Inverse of the reduced 2-form at a point: {U_i, U_j} entries."""
    om = symplectic_form_at(c, u)
    inv = invert_fraction(om)
    if inv is None:
        raise SingularPoint("2-form is degenerate at this point")
    return inv


# -- dilogarithm generating function (numerical) ---------------------------------


def _theta_pullback_minus_theta(b: ExchangeMatrix, z: list) -> list:
    """Coefficients of dz_i in (shift pullback of theta) - theta at the point z,
    for theta = sum_{j<k} B_jk z_j dz_k (0-based z-window of length N)."""
    n = b.n
    a = b.first_row_tuple()
    mplus = mpmath.exp(mpmath.fsum(max(aj, 0) * z[j] for j, aj in enumerate(a, start=1)))
    mminus = mpmath.exp(mpmath.fsum(max(-aj, 0) * z[j] for j, aj in enumerate(a, start=1)))
    total = mplus + mminus
    s = mpmath.fsum(b.rows[j][n - 1] * z[j + 1] for j in range(n - 1))
    out = [mpmath.mpf(0)] * n
    out[0] -= s
    for i in range(1, n):
        # first block: sum_{j<k<=N-2} B_jk zhat_j dzhat_k with zhat_j = z[j+1]
        k = i - 1
        acc = mpmath.fsum(b.rows[j][k] * z[j + 1] for j in range(k)) if k >= 1 else mpmath.mpf(0)
        ai = a[i - 1]
        c = (max(ai, 0) * mplus + max(-ai, 0) * mminus) / total
        out[i] += acc + s * c
    for i in range(n):
        out[i] -= mpmath.fsum(b.rows[j][i] * z[j] for j in range(i))
    return out


def _generating_function(b: ExchangeMatrix, z: list):
    n = b.n
    a = b.first_row_tuple()
    g0 = mpmath.mpf(0)
    for j in range(1, n - 1):
        for k in range(j + 1, n):
            g0 += max(-a[j - 1], 0) * a[k - 1] * z[j] * z[k]
    for j in range(1, n):
        aj = a[j - 1]
        g0 += aj * z[j] * (-z[0] + mpmath.mpf(max(-aj, 0)) / 2 * z[j])
    arg = mpmath.fsum(a[k - 1] * z[k] for k in range(1, n))
    zeta = 1 / (1 + mpmath.exp(-arg))
    if not (0 < zeta < 1):
        raise DomainError("dilogarithm argument left (0, 1)")
    rogers = mpmath.polylog(2, zeta) + mpmath.log(zeta) * mpmath.log(1 - zeta) / 2
    gl = -rogers + mpmath.log(1 - zeta) * mpmath.log((1 - zeta) / zeta) / 2
    return g0 + gl


def _to_mpf(x):
    if isinstance(x, float):
        return mpmath.mpf(x)
    fr = Fraction(x)
    return mpmath.mpf(fr.numerator) / fr.denominator


def generating_function_check(b: ExchangeMatrix, point: Sequence, h: float = 1e-3) -> dict:
    """Residual of d(generating function) against the pullback difference.

    Central differences at step h and h/2; the max-norm residual must shrink
    by ~4x (second-order convergence) when the identity holds.
    """
    with mpmath.workdps(40):
        xs = [_to_mpf(p) for p in point]
        if any(x <= 0 for x in xs):
            raise DomainError("point must be strictly positive")
        z = [mpmath.log(x) for x in xs]
        target = _theta_pullback_minus_theta(b, z)

        def resid(step) -> float:
            hh = mpmath.mpf(step)
            worst = mpmath.mpf(0)
            for i in range(b.n):
                zp = list(z)
                zm = list(z)
                zp[i] += hh
                zm[i] -= hh
                d = (_generating_function(b, zp) - _generating_function(b, zm)) / (2 * hh)
                worst = max(worst, abs(d - target[i]))
            return float(worst)

        r1 = resid(h)
        r2 = resid(h / 2)
    return {"h": h, "residual": r1, "residual_half": r2,
            "ratio": r1 / r2 if r2 else float("inf")}
