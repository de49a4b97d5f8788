"""Bilinear lattice recurrences: exact rational and Laurent-symbolic orbits.

The central object is the order-N recurrence

    x_{n+N} x_n = Z_n * ( prod_j x_{n+j}^{[a_j]+} + prod_j x_{n+j}^{[-a_j]+} )

for a palindromic integer tuple a = (a_1,...,a_{N-1}) and a coefficient
sequence Z_n (identically 1 in the coefficient-free case).  Symbolic
iteration certifies the Laurent property step by step: every division must
come out exact in the Laurent ring, otherwise the iterate is rejected.
Scaling x_n -> lambda*mu^n*x_n and monomial gauge transforms x_n = G_n x'_n
are provided as exact operations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .laurent import LaurentPoly, laurent_try_div, format_rational, parse_rational
from .quiver import NotPalindromic
from .zsystem import AlgebraicZCase, ConstantZ


class NonLaurentIterate(ArithmeticError):
    """A symbolic division left a remainder; the iterate is not Laurent."""


class ZeroEncountered(ArithmeticError):
    pass


class ZeroScale(ValueError):
    pass


class TermBudgetExceeded(MemoryError):
    pass


def _pos(v: int) -> int:
    return v if v > 0 else 0


@dataclass(frozen=True)
class TStencil:
    """Palindromic exponent tuple a; defines an order len(a)+1 recurrence."""

    a: tuple[int, ...]

    def __post_init__(self):
        a = tuple(int(v) for v in self.a)
        object.__setattr__(self, "a", a)
        if a != a[::-1]:
            raise NotPalindromic(f"tuple {a} is not palindromic")

    @property
    def n(self) -> int:
        return len(self.a) + 1

    @property
    def plus_exponents(self) -> tuple[int, ...]:
        return tuple(_pos(v) for v in self.a)

    @property
    def minus_exponents(self) -> tuple[int, ...]:
        return tuple(_pos(-v) for v in self.a)

    def format_text(self) -> str:
        def side(exps: tuple[int, ...]) -> str:
            parts = [f"x[n+{j}]" + (f"^{e}" if e > 1 else "")
                     for j, e in enumerate(exps, start=1) if e]
            return "*".join(parts) if parts else "1"

        return (f"x[n+{self.n}]*x[n] = "
                f"{side(self.minus_exponents)} + {side(self.plus_exponents)}")


@dataclass
class Orbit:
    """Values x_0, x_1, ... of a stencil run; rational or Laurent-valued."""

    stencil: TStencil
    kind: str  # "rational" | "symbolic"
    values: list
    z: object | None = None
    variables: tuple[str, ...] | None = None

    def __len__(self) -> int:
        return len(self.values)

    def value(self, n: int):
        return self.values[n]

    def to_json(self) -> dict:
        if self.kind == "rational":
            vals = [format_rational(v) for v in self.values]
        else:
            vals = [v.to_json() for v in self.values]
        return {"stencil": list(self.stencil.a), "kind": self.kind, "values": vals}


def orbit_from_json(data: dict) -> Orbit:
    """Rebuild an orbit written by Orbit.to_json (coefficient data not kept)."""
    st = TStencil(tuple(int(v) for v in data["stencil"]))
    kind = data.get("kind", "rational")
    if kind == "rational":
        vals = [parse_rational(v) for v in data["values"]]
    elif kind == "symbolic":
        vals = [LaurentPoly.from_json(v) for v in data["values"]]
    else:
        raise ValueError(f"unknown orbit kind {kind!r}")
    variables = tuple(vals[0].vars) if kind == "symbolic" and vals else None
    return Orbit(st, kind, vals, None, variables)


def _product_monomial(values: Sequence, exps: Sequence[int], one):
    acc = one
    for v, e in zip(values, exps):
        for _ in range(e):
            acc = acc * v
    return acc


def check_orbit(orb: Orbit, start: int = 0) -> bool:
    """Exact recurrence check at every index where the window is defined."""
    st = orb.stencil
    n_ = st.n
    z = orb.z if orb.z is not None else ConstantZ(1)
    vals = orb.values
    if orb.kind == "rational":
        one = Fraction(1)
        for n in range(start, len(vals) - n_):
            w = vals[n + 1 : n + n_]
            rhs = z.value(n) * (
                _product_monomial(w, st.plus_exponents, one)
                + _product_monomial(w, st.minus_exponents, one))
            if vals[n + n_] * vals[n] != rhs:
                return False
        return True
    one = LaurentPoly.const(orb.variables, 1)
    for n in range(start, len(vals) - n_):
        w = vals[n + 1 : n + n_]
        zmono = _z_monomial_poly(z, n, orb.variables)
        rhs = zmono * (_product_monomial(w, st.plus_exponents, one)
                       + _product_monomial(w, st.minus_exponents, one))
        if not (rhs - vals[n + n_] * vals[n]).is_zero():
            return False
    return True


def _z_monomial_poly(z, n: int, variables: tuple[str, ...]) -> LaurentPoly:
    sign, exps = z.monomial(n)
    zsyms = z.symbols
    offset = len(variables) - len(zsyms)
    full = [0] * len(variables)
    for i, e in enumerate(exps):
        ei = Fraction(e)
        if ei.denominator != 1:
            raise AlgebraicZCase("symbolic iteration needs integer coefficient exponents")
        full[offset + i] = int(ei)
    return LaurentPoly.monomial(variables, tuple(full), sign)


def iterate_tz(st: TStencil, z, init: Sequence[Fraction] | None, steps: int,
               mode: str = "rational", max_terms: int = 10 ** 6) -> Orbit:
    """Append `steps` further values to the initial window.

    rational: exact Fraction arithmetic from a nonzero initial window.
    symbolic: start from generators x0..x{N-1} (plus the coefficient symbols)
    and certify each division exactly; NonLaurentIterate on failure.
    """
    n_ = st.n
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    if mode == "rational":
        if init is None or len(init) != n_:
            raise ValueError(f"initial window must have {n_} entries")
        vals = [Fraction(v) for v in init]
        if any(v == 0 for v in vals):
            raise ZeroEncountered("initial window contains zero")
        one = Fraction(1)
        for n in range(steps):
            w = vals[n + 1 : n + n_]
            num = z.value(n) * (
                _product_monomial(w, st.plus_exponents, one)
                + _product_monomial(w, st.minus_exponents, one))
            nxt = num / vals[n]
            if nxt == 0:
                raise ZeroEncountered(f"orbit value x_{n + n_} vanished")
            vals.append(nxt)
        return Orbit(st, "rational", vals, z)
    if mode != "symbolic":
        raise ValueError("mode must be 'rational' or 'symbolic'")
    variables = tuple(f"x{i}" for i in range(n_)) + tuple(z.symbols)
    vals = [LaurentPoly.gen(variables, f"x{i}") for i in range(n_)]
    one = LaurentPoly.const(variables, 1)
    for n in range(steps):
        w = vals[n + 1 : n + n_]
        num = _z_monomial_poly(z, n, variables) * (
            _product_monomial(w, st.plus_exponents, one)
            + _product_monomial(w, st.minus_exponents, one))
        nxt = laurent_try_div(num, vals[n])
        if nxt is None:
            raise NonLaurentIterate(
                f"x_{n + n_} is not a Laurent polynomial in the initial window")
        if nxt.n_terms() > max_terms:
            raise TermBudgetExceeded(
                f"x_{n + n_} exceeds the {max_terms}-term budget")
        vals.append(nxt)
    return Orbit(st, "symbolic", vals, z, variables)


def iterate_t(st: TStencil, init: Sequence[Fraction] | None, steps: int,
              mode: str = "rational", max_terms: int = 10 ** 6) -> Orbit:
    """Coefficient-free iteration (Z_n = 1)."""
    orb = iterate_tz(st, ConstantZ(1), init, steps, mode, max_terms)
    orb.z = None
    return orb


def scale_orbit(orb: Orbit, lam: Fraction, mu: Fraction) -> Orbit:
    """x_n -> lam * mu^n * x_n, then re-verify the recurrence exactly."""
    if orb.kind != "rational":
        raise ValueError("scaling applies to rational orbits")
    lam, mu = Fraction(lam), Fraction(mu)
    if lam == 0 or mu == 0:
        raise ZeroScale("scale factors must be nonzero")
    vals = [lam * mu ** n * v for n, v in enumerate(orb.values)]
    out = Orbit(orb.stencil, "rational", vals, orb.z)
    if not check_orbit(out):
        raise ValueError(
            "scaling broke the recurrence (stencil is not scaling-homogeneous)")
    return out


# -- monomial gauge transforms -------------------------------------------------


@dataclass
class GaugeNormalization:
    """Gauge x_n = G_n x'_n with G a monomial in the coefficient symbols.

    The recurrence's two monomials are `kept` (transformed coefficient fixed
    to 1) and `moved` (receives the residual coefficient alpha_n).  G is
    pinned by G_0 = ... = G_{N-1} = 1; exponent vectors are over z.symbols.
    """

    order: int
    target: str
    symbols: tuple[str, ...]
    kept: tuple[int, ...]
    moved: tuple[int, ...]
    z: object
    _g: list[tuple[int, ...]] = field(default_factory=list)

    def g_exponents(self, n: int) -> tuple[int, ...]:
        k = len(self.symbols)
        while len(self._g) <= n:
            m = len(self._g)
            if m < self.order:
                self._g.append((0,) * k)
                continue
            base = m - self.order
            sign, zexp = self.z.monomial(base)
            if sign != 1:
                raise AlgebraicZCase("gauge needs a positive monomial coefficient")
            acc = list(_as_int_vector(zexp))
            if len(acc) != k:
                raise ValueError("coefficient symbol mismatch")
            for j, e in enumerate(self.kept, start=1):
                if e:
                    row = self._g[base + j]
                    for i in range(k):
                        acc[i] += e * row[i]
            row0 = self._g[base]
            for i in range(k):
                acc[i] -= row0[i]
            self._g.append(tuple(acc))
        return self._g[n]

    def alpha_exponents(self, n: int) -> tuple[int, ...]:
        k = len(self.symbols)
        acc = [0] * k
        for j in range(1, self.order):
            e = self.moved[j - 1] - self.kept[j - 1]
            if e:
                row = self.g_exponents(n + j)
                for i in range(k):
                    acc[i] += e * row[i]
        return tuple(acc)

    def _evaluate(self, exps: Sequence[int], symbol_values: Sequence[Fraction]) -> Fraction:
        out = Fraction(1)
        for v, e in zip(symbol_values, exps):
            out *= Fraction(v) ** e
        return out

    def g_value(self, n: int, symbol_values: Sequence[Fraction]) -> Fraction:
        return self._evaluate(self.g_exponents(n), symbol_values)

    def alpha_value(self, n: int, symbol_values: Sequence[Fraction]) -> Fraction:
        return self._evaluate(self.alpha_exponents(n), symbol_values)


def _as_int_vector(exps) -> tuple[int, ...]:
    out = []
    for e in exps:
        f = Fraction(e)
        if f.denominator != 1:
            raise AlgebraicZCase("gauge requires fractional exponents; not computed")
        out.append(int(f))
    return tuple(out)


def gauge_monomial_pair(order: int, first: Sequence[int], second: Sequence[int],
                        z, target: str) -> GaugeNormalization:
    """Gauge engine for x_{n+N}x_n = Z_n*(m_first + m_second).

    `first`/`second` give the window exponents (offsets 1..N-1, either sign)
    of the two monomials; `target` names the one that keeps the non-autonomous
    coefficient, the other is normalized to 1.
    """
    first, second = tuple(first), tuple(second)
    if len(first) != order - 1 or len(second) != order - 1:
        raise ValueError("monomial exponent windows must have length N-1")
    if target == "first":
        moved, kept = first, second
    elif target == "second":
        moved, kept = second, first
    else:
        raise ValueError("target must be 'first' or 'second'")
    return GaugeNormalization(order, target, tuple(z.symbols), kept, moved, z)


def gauge_normalize(st: TStencil, z, target: str) -> GaugeNormalization:
    """Move the whole coefficient sequence onto one monomial of the stencil.

    The displayed convention writes the [-a]+ product first, so target="first"
    leaves the [a]+ product with coefficient 1 and vice versa.
    """
    return gauge_monomial_pair(st.n, st.minus_exponents, st.plus_exponents, z, target)
