"""Multiplicative coefficient constraints and their log-linear solutions.

A bilinear lattice recurrence with a coefficient sequence Z_n admits the
Laurent/Y-substitution structure only when Z satisfies a multiplicative
constraint prod_j Z_{n+j}^{e_j} = 1 with exponents e_j read off the defining
tuple (e_j = -a_j).  Taking logs turns this into a linear difference
equation; its solutions are signed monomials in the initial data whose
exponent vectors follow the same linear recurrence.  This module builds the
constraint, iterates exponent tables exactly, recognizes the closed forms
that occur for the shipped systems, and analyzes the characteristic
polynomial (factorization, spectral radius).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath

from .intlinalg import Vec


class ZeroTuple(ValueError):
    """All exponents vanish; no constraint to solve."""


class ZeroInitial(ValueError):
    pass


class AlgebraicZCase(ArithmeticError):
    """A requested value needs a fractional power of the initial data."""


# -- stencil ------------------------------------------------------------------


@dataclass(frozen=True)
class ZStencil:
    """Constraint prod_{j=1}^{N-1} Z_{n+j}^{exponents[j-1]} = 1.

    lo/hi bound the nonzero exponents (1-based offsets); the trimmed window
    determines a difference equation of order hi - lo for the Z-sequence.
    """

    exponents: tuple[int, ...]
    lo: int
    hi: int

    @property
    def order(self) -> int:
        return self.hi - self.lo

    @property
    def trimmed(self) -> tuple[int, ...]:
        return self.exponents[self.lo - 1 : self.hi]

    @property
    def leading(self) -> int:
        return self.exponents[self.hi - 1]

    def constraint_text(self) -> str:
        num, den = [], []
        for j, e in enumerate(self.exponents, start=1):
            if e > 0:
                num.append(f"Z[n+{j}]" + (f"^{e}" if e > 1 else ""))
            elif e < 0:
                den.append(f"Z[n+{j}]" + (f"^{-e}" if e < -1 else ""))
        lhs = "*".join(num) if num else "1"
        if den:
            lhs += " / (" + "*".join(den) + ")"
        return lhs + " = 1"


def z_stencil_from_tuple(a: Sequence[int]) -> ZStencil:
    """Exponents e_j = -a_j with the zero tail trimmed to find the order."""
    e = tuple(-int(x) for x in a)
    support = [j for j, v in enumerate(e, start=1) if v != 0]
    if not support:
        raise ZeroTuple("tuple with empty support gives no constraint")
    return ZStencil(e, support[0], support[-1])


# -- characteristic polynomial ------------------------------------------------
# Small exact helpers on integer polynomials, coefficients ascending.


def _poly_content(p: Sequence[int]) -> int:
    from math import gcd
    g = 0
    for c in p:
        g = gcd(g, abs(c))
    return g or 1


def _poly_normalize(p: Sequence[int]) -> tuple[int, ...]:
    q = list(p)
    while q and q[-1] == 0:
        q.pop()
    if not q:
        return (0,)
    g = _poly_content(q)
    if q[-1] < 0:
        g = -g
    return tuple(c // g for c in q)


def _poly_mul(p: Sequence[int], q: Sequence[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def _poly_divmod_frac(p: Sequence[Fraction], q: Sequence[Fraction]):
    p = list(p)
    out = [Fraction(0)] * (len(p) - len(q) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = p[i + len(q) - 1] / q[-1]
        out[i] = c
        if c:
            for j, b in enumerate(q):
                p[i + j] -= c * b
    return out, p[: len(q) - 1]


def _poly_try_div_int(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...] | None:
    if len(q) > len(p):
        return None
    quo, rem = _poly_divmod_frac([Fraction(c) for c in p], [Fraction(c) for c in q])
    if any(r != 0 for r in rem) or any(c.denominator != 1 for c in quo):
        return None
    return tuple(int(c) for c in quo)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def factor_over_integers(p: Sequence[int]) -> list[tuple[tuple[int, ...], int]]:
    """Peel degree-1 and degree-2 integer factors; leftover kept whole.

    Good enough for the low-degree reciprocal polynomials that arise from
    palindromic constraint stencils; not a general factorization routine.
    """
    p = _poly_normalize(p)
    factors: dict[tuple[int, ...], int] = {}
    work = p

    def push(f: tuple[int, ...]):
        factors[f] = factors.get(f, 0) + 1

    changed = True
    while len(work) > 1 and changed:
        changed = False
        # rational roots r/s: r | const term, s | leading
        const = next((c for c in work if c != 0), 0)
        for s in _divisors(work[-1]):
            for r in _divisors(const):
                for sign in (1, -1):
                    cand = _poly_normalize((-sign * r, s))
                    if len(cand) != 2:
                        continue
                    quo = _poly_try_div_int(work, cand)
                    if quo is not None:
                        push(cand)
                        work = _poly_normalize(quo)
                        changed = True
                        break
                if changed:
                    break
            if changed:
                break
        if changed or len(work) <= 3:
            continue
        bound = sum(abs(c) for c in work)
        for a2 in _divisors(work[-1]):
            for c0 in _divisors(next(c for c in work if c != 0)):
                for c0s in (c0, -c0):
                    for b in range(-bound, bound + 1):
                        cand = _poly_normalize((c0s, b, a2))
                        if len(cand) != 3:
                            continue
                        quo = _poly_try_div_int(work, cand)
                        if quo is not None:
                            push(cand)
                            work = _poly_normalize(quo)
                            changed = True
                            break
                    if changed:
                        break
                if changed:
                    break
            if changed:
                break
    if len(work) > 1:
        push(work)
    return sorted(factors.items(), key=lambda kv: (len(kv[0]), kv[0]))


@dataclass(frozen=True)
class CharPoly:
    coeffs: tuple[int, ...]  # ascending, primitive, leading > 0
    factors: tuple[tuple[tuple[int, ...], int], ...]

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def format_text(self) -> str:
        def fmt(p: tuple[int, ...]) -> str:
            parts = []
            for k in range(len(p) - 1, -1, -1):
                c = p[k]
                if c == 0:
                    continue
                term = "L" + (f"^{k}" if k > 1 else "") if k else ""
                mag = abs(c)
                lead = "" if (mag == 1 and k) else str(mag)
                parts.append(("- " if c < 0 else "+ " if parts else "") + (lead + term).strip())
            return " ".join(parts) or "0"

        pieces = []
        for f, m in self.factors:
            s = "(" + fmt(f) + ")"
            if m > 1:
                s += f"^{m}"
            pieces.append(s)
        return "".join(pieces)


def char_poly(st: ZStencil) -> CharPoly:
    """Characteristic polynomial of the log-linearized constraint recurrence."""
    coeffs = _poly_normalize(st.trimmed)
    return CharPoly(coeffs, tuple(factor_over_integers(coeffs)))


def _squarefree_part(p: tuple[int, ...]) -> tuple[int, ...]:
    # p / gcd(p, p') over Q, then primitive over Z
    dp = tuple(k * p[k] for k in range(1, len(p)))
    a = [Fraction(c) for c in p]
    b = [Fraction(c) for c in dp]
    while any(c != 0 for c in b):
        _, r = _poly_divmod_frac(a, b)
        while r and r[-1] == 0:
            r.pop()
        a, b = b, r or [Fraction(0)]
        if all(c == 0 for c in b):
            break
    # a = gcd; divide
    g = [c for c in a]
    quo, rem = _poly_divmod_frac([Fraction(c) for c in p], g)
    assert all(r == 0 for r in rem)
    from math import lcm
    m = 1
    for c in quo:
        m = lcm(m, c.denominator)
    return _poly_normalize([int(c * m) for c in quo])


def spectral_radius(coeffs: Sequence[int]) -> tuple[float, float]:
    """Largest root modulus of an integer polynomial, with an error bound.

    Roots are found on the squarefree part at two working precisions; the
    bound is their disagreement (plus rounding slack), required below 1e-10.
    """
    p = _poly_normalize(coeffs)
    if len(p) <= 1:
        raise ValueError("polynomial must be nonconstant")
    sf = _squarefree_part(p)
    if len(sf) == 2:
        root = Fraction(-sf[0], sf[1])
        return float(abs(root)), 0.0
    results = []
    for dps in (50, 90):
        with mpmath.workdps(dps):
            roots = mpmath.polyroots([mpmath.mpf(c) for c in reversed(sf)], maxsteps=200, extraprec=60)
            results.append(max(abs(r) for r in roots))
    err = abs(float(results[0] - results[1])) + 1e-14
    if err > 1e-11:
        raise ArithmeticError("root finding did not converge to the required accuracy")
    return float(results[1]), err


# -- Z-sequences ---------------------------------------------------------------


class ConstantZ:
    """Z_n = c for all n (default c = 1, the coefficient-free case)."""

    def __init__(self, c: Fraction | int = 1):
        self.c = Fraction(c)
        if self.c == 0:
            raise ZeroInitial("constant coefficient must be nonzero")
        self.symbols: tuple[str, ...] = ()

    def value(self, n: int) -> Fraction:
        return self.c

    def monomial(self, n: int) -> tuple[int, tuple[Fraction, ...]]:
        if self.c == 1:
            return 1, ()
        raise AlgebraicZCase("nontrivial constant has no monomial form over ()")


class GeometricZ:
    """Z_n = beta * q^n; symbolic over ("beta", "q") or numeric when bound."""

    symbols = ("beta", "q")

    def __init__(self, beta: Fraction | None = None, q: Fraction | None = None):
        if (beta is None) != (q is None):
            raise ValueError("bind both beta and q or neither")
        if beta is not None and (beta == 0 or q == 0):
            raise ZeroInitial("beta and q must be nonzero")
        self.beta = Fraction(beta) if beta is not None else None
        self.q = Fraction(q) if q is not None else None

    def value(self, n: int) -> Fraction:
        if self.beta is None:
            raise ValueError("unbound symbolic sequence has no rational values")
        return self.beta * self.q ** n

    def monomial(self, n: int) -> tuple[int, tuple[Fraction, ...]]:
        return 1, (Fraction(1), Fraction(n))


class PerturbedZ:
    """Wrap another sequence, multiplying finitely many entries by factors."""

    def __init__(self, base, factors: dict[int, Fraction]):
        self.base = base
        self.factors = {int(k): Fraction(v) for k, v in factors.items()}
        self.symbols = getattr(base, "symbols", ())

    def value(self, n: int) -> Fraction:
        f = self.factors.get(n, Fraction(1))
        return self.base.value(n) * f

    def monomial(self, n: int):
        if n in self.factors:
            raise AlgebraicZCase("perturbed entries have no monomial form")
        return self.base.monomial(n)


@dataclass
class ZSolution:
    """Signed-monomial solution of a constraint stencil.

    Entry n is sign[n] * prod_i S_i^{table[n][i]} over the initial symbols
    S_0..S_{r-1} (bound to rational values when init_values is given).
    Tables grow on demand; exponents are exact rationals (they stay integral
    whenever each division by the leading exponent comes out even).
    """

    stencil: ZStencil
    symbols: tuple[str, ...]
    init_values: tuple[Fraction, ...] | None
    algebraic_ambiguity: bool
    closed_form: dict | None
    _tables: list[tuple[Fraction, ...]] = field(default_factory=list)

    @property
    def order(self) -> int:
        return self.stencil.order

    def _extend_to(self, n: int) -> None:
        e = self.stencil.trimmed
        r = self.order
        lead = e[r]
        while len(self._tables) <= n:
            m = len(self._tables) - r
            acc = [Fraction(0)] * r
            for k in range(r):
                ek = e[k]
                if ek:
                    row = self._tables[m + k]
                    for i in range(r):
                        acc[i] -= ek * row[i]
            self._tables.append(tuple(x / lead for x in acc))

    def exponents(self, n: int) -> tuple[Fraction, ...]:
        if n < 0:
            raise IndexError("negative indices not tracked")
        self._extend_to(n)
        return self._tables[n]

    def monomial(self, n: int) -> tuple[int, tuple[Fraction, ...]]:
        return 1, self.exponents(n)

    def value(self, n: int) -> Fraction:
        if self.init_values is None:
            raise ValueError("no initial values bound")
        out = Fraction(1)
        for base, exp in zip(self.init_values, self.exponents(n)):
            if exp.denominator != 1:
                root = _exact_fraction_root(base, exp.denominator)
                if root is None:
                    raise AlgebraicZCase(
                        f"entry {n} needs a {exp.denominator}th root of {base}")
                base, exp = root, Fraction(exp.numerator)
            out *= base ** int(exp)
        return out

    def degree(self, n: int) -> Fraction:
        """Total monomial degree |numerator| + |denominator| at entry n."""
        return sum(abs(e) for e in self.exponents(n))

    def check_constraint(self, n: int) -> bool:
        """Exact check of the trimmed constraint anchored at table index n."""
        e = self.stencil.trimmed
        acc = [Fraction(0)] * self.order
        for k, ek in enumerate(e):
            if ek:
                row = self.exponents(n + k)
                for i in range(self.order):
                    acc[i] += ek * row[i]
        return all(x == 0 for x in acc)


def _exact_fraction_root(x: Fraction, k: int) -> Fraction | None:
    if x < 0:
        return None

    def iroot(m: int) -> int | None:
        if m < 2:
            return m
        r = round(m ** (1.0 / k))
        for c in (r - 1, r, r + 1):
            if c >= 0 and c ** k == m:
                return c
        return None

    pn, pd = iroot(x.numerator), iroot(x.denominator)
    if pn is None or pd is None:
        return None
    return Fraction(pn, pd)


def _recognize_closed_form(st: ZStencil) -> dict | None:
    t = st.trimmed
    r = st.order
    if t == (1, -2, 1):
        return {"family": "geometric", "note": "Z_n = beta * q^n"}
    if r >= 3 and t == (1, -1) + (0,) * (r - 3) + (-1, 1):
        return {
            "family": "periodic_geometric",
            "period": r - 1,
            "note": "Z_n = beta_n * q^n with beta periodic",
        }
    if r >= 2 and t == (1,) + (0,) * (r - 1) + (1,):
        return {
            "family": "antiperiodic",
            "period": 2 * r,
            "note": "Z_{n+%d} = 1/Z_n" % r,
        }
    return None


def solve_z(st: ZStencil, init: Sequence[Fraction] | int | None = None) -> ZSolution:
    """Solve the constraint as exact exponent tables over the initial window.

    `init` may be rational values to bind, or None/int for a purely symbolic
    solution (int fixes the symbol count check).  A leading exponent of
    magnitude > 1 makes the solution algebraic: signs are fixed to + and the
    ambiguity is flagged.
    """
    r = st.order
    if isinstance(init, int):
        if init != r:
            raise ValueError(f"stencil needs {r} initial entries, got {init}")
        init = None
    values: tuple[Fraction, ...] | None = None
    if init is not None:
        values = tuple(Fraction(v) for v in init)
        if len(values) != r:
            raise ValueError(f"stencil needs {r} initial entries, got {len(values)}")
        if any(v == 0 for v in values):
            raise ZeroInitial("initial coefficient data must be nonzero")
    symbols = tuple(f"Z{i}" for i in range(r))
    sol = ZSolution(
        stencil=st,
        symbols=symbols,
        init_values=values,
        algebraic_ambiguity=abs(st.leading) > 1,
        closed_form=_recognize_closed_form(st),
        _tables=[tuple(Fraction(1) if i == m else Fraction(0) for i in range(r))
                 for m in range(r)],
    )
    cf = sol.closed_form
    if cf is not None and cf["family"] == "periodic_geometric":
        p = cf["period"]
        delta = None
        ok = True
        for m in range(2 * r + p):
            d = tuple(x - y for x, y in zip(sol.exponents(m + p), sol.exponents(m)))
            if delta is None:
                delta = d
            elif d != delta:
                ok = False
                break
        if ok:
            cf["ratio_power_vector"] = delta  # exponents of q^period over the symbols
        else:
            sol.closed_form = None
    return sol


def exponent_degree_sequence(sol: ZSolution, count: int) -> list[int]:
    """Integer degree growth of the solution monomials (raises if fractional)."""
    out = []
    for n in range(count):
        d = sol.degree(n)
        if d.denominator != 1:
            raise AlgebraicZCase("fractional exponents have no integer degree")
        out.append(int(d))
    return out
