"""Exact multivariate Laurent polynomials over arbitrary-precision integers.

A :class:`LaurentPoly` is a finite sum ``sum(c * x^e)`` where ``c`` is a
nonzero Python int and ``e`` is a dense vector of (possibly negative) integer
exponents, one slot per variable.  All arithmetic is exact; no floating point
enters anywhere in this module.  The canonical term order used for leading
terms, printing and serialisation is lexicographic on the exponent vector,
largest first.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Mapping, Sequence


class ZeroDivisorError(ZeroDivisionError):
    """Division by the zero Laurent polynomial."""


def _add_vec(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def _sub_vec(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x - y for x, y in zip(a, b))


class LaurentPoly:
    """Immutable-in-spirit sparse Laurent polynomial.

    ``terms`` maps exponent tuples to nonzero integer coefficients.  The
    variable list is fixed per instance; binary operations require both
    operands to carry the same variable list.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple[int, ...], int] | None = None):
        self.vars = tuple(variables)
        clean: dict[tuple[int, ...], int] = {}
        if terms:
            width = len(self.vars)
            for exp, coef in terms.items():
                if coef == 0:
                    continue
                e = tuple(int(v) for v in exp)
                if len(e) != width:
                    raise ValueError(f"exponent vector {e} does not match {width} variables")
                clean[e] = clean.get(e, 0) + int(coef)
                if clean[e] == 0:
                    del clean[e]
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "LaurentPoly":
        return cls(variables)

    @classmethod
    def const(cls, variables: Sequence[str], c: int) -> "LaurentPoly":
        z = (0,) * len(variables)
        return cls(variables, {z: c} if c else {})

    @classmethod
    def gen(cls, variables: Sequence[str], name: str) -> "LaurentPoly":
        i = list(variables).index(name)
        e = tuple(1 if j == i else 0 for j in range(len(variables)))
        return cls(variables, {e: 1})

    @classmethod
    def monomial(cls, variables: Sequence[str], exps: Sequence[int], coef: int = 1) -> "LaurentPoly":
        return cls(variables, {tuple(exps): coef})

    # -- predicates / inspection -------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_one(self) -> bool:
        z = (0,) * len(self.vars)
        return self.terms == {z: 1}

    def n_terms(self) -> int:
        return len(self.terms)

    def min_exponent(self, var_index: int) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no exponents")
        return min(e[var_index] for e in self.terms)

    def max_exponent(self, var_index: int) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no exponents")
        return max(e[var_index] for e in self.terms)

    def leading(self) -> tuple[tuple[int, ...], int]:
        """Lex-largest term as ``(exponents, coefficient)``."""
        e = max(self.terms)
        return e, self.terms[e]

    def coefficients_positive(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    # -- ring operations -----------------------------------------------------

    def _check_compat(self, other: "LaurentPoly") -> None:
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check_compat(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        r = LaurentPoly.__new__(LaurentPoly)
        r.vars, r.terms = self.vars, out
        return r

    def __neg__(self) -> "LaurentPoly":
        r = LaurentPoly.__new__(LaurentPoly)
        r.vars = self.vars
        r.terms = {e: -c for e, c in self.terms.items()}
        return r

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check_compat(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return LaurentPoly.zero(self.vars)
        if len(a) > len(b):
            a, b = b, a
        out: dict[tuple[int, ...], int] = {}
        if len(a) == 1:
            # monomial fast path
            (ea, ca), = a.items()
            for eb, cb in b.items():
                out[_add_vec(ea, eb)] = ca * cb
        else:
            for ea, ca in a.items():
                for eb, cb in b.items():
                    k = _add_vec(ea, eb)
                    s = out.get(k, 0) + ca * cb
                    if s:
                        out[k] = s
                    else:
                        del out[k]
        r = LaurentPoly.__new__(LaurentPoly)
        r.vars, r.terms = self.vars, out
        return r

    def scale(self, c: int) -> "LaurentPoly":
        if c == 0:
            return LaurentPoly.zero(self.vars)
        r = LaurentPoly.__new__(LaurentPoly)
        r.vars = self.vars
        r.terms = {e: c * v for e, v in self.terms.items()}
        return r

    def shift(self, exps: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial ``x^exps``."""
        d = tuple(exps)
        r = LaurentPoly.__new__(LaurentPoly)
        r.vars = self.vars
        r.terms = {_add_vec(e, d): c for e, c in self.terms.items()}
        return r

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if not self.is_monomial():
                raise ValueError("negative powers only defined for monomials")
            (e, c), = self.terms.items()
            if c not in (1, -1):
                raise ValueError("negative powers require a unit coefficient")
            return LaurentPoly(self.vars, {tuple(n * x for x in e): 1 if c == 1 or n % 2 == 0 else -1})
        if n == 0:
            return LaurentPoly.const(self.vars, 1)
        result: LaurentPoly | None = None
        base = self
        k = n
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        assert result is not None
        return result

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, LaurentPoly)
            and self.vars == other.vars
            and self.terms == other.terms
        )

    def __hash__(self):  # canonical frozen view
        return hash((self.vars, tuple(sorted(self.terms.items()))))

    # -- evaluation ----------------------------------------------------------

    def evaluate(self, values: Mapping[str, Fraction]) -> Fraction:
        """Evaluate at nonzero rational values (exact)."""
        vals = []
        for name in self.vars:
            if name not in values:
                raise KeyError(f"no value supplied for variable {name}")
            v = Fraction(values[name])
            vals.append(v)
        total = Fraction(0)
        for e, c in self.terms.items():
            term = Fraction(c)
            for v, k in zip(vals, e):
                if k == 0:
                    continue
                if v == 0 and k < 0:
                    raise ZeroDivisionError("negative exponent at zero value")
                term *= v ** k
            total += term
        return total

    # -- monomial content and exact division ----------------------------------

    def monomial_content(self) -> tuple[int, ...]:
        """Componentwise minimum exponent over all terms (zero poly -> zeros)."""
        if not self.terms:
            return (0,) * len(self.vars)
        its = iter(self.terms)
        lo = list(next(its))
        for e in its:
            for i, v in enumerate(e):
                if v < lo[i]:
                    lo[i] = v
        return tuple(lo)

    def try_div(self, q: "LaurentPoly") -> "LaurentPoly | None":
        return laurent_try_div(self, q)

    def partial(self, name: str) -> "LaurentPoly":
        """Exact partial derivative with respect to the named variable."""
        i = self.vars.index(name)
        out: dict[tuple[int, ...], int] = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = e[:i] + (e[i] - 1,) + e[i + 1 :]
            nc = out.get(ne, 0) + c * e[i]
            if nc:
                out[ne] = nc
            else:
                out.pop(ne, None)
        return LaurentPoly(self.vars, out)

    # -- serialisation / display ----------------------------------------------

    def to_json(self) -> dict:
        terms = [
            {"exp": list(e), "coef": str(c)}
            for e, c in sorted(self.terms.items(), reverse=True)
        ]
        return {"vars": list(self.vars), "terms": terms}

    @classmethod
    def from_json(cls, data: dict | str) -> "LaurentPoly":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["vars"], {tuple(t["exp"]): int(t["coef"]) for t in data["terms"]})

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            factors = []
            for name, k in zip(self.vars, e):
                if k == 1:
                    factors.append(name)
                elif k != 0:
                    factors.append(f"{name}^{k}")
            body = "*".join(factors)
            if not body:
                parts.append(f"{c}")
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append(f"-{body}")
            else:
                parts.append(f"{c}*{body}")
        out = " + ".join(parts)
        return out.replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


def laurent_try_div(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly | None:
    """Exact division in the Laurent ring: return ``r`` with ``q * r == p``.

    Returns None when no such Laurent polynomial exists.  Monomial factors are
    units here, so both operands are first shifted to honest polynomials with
    componentwise-minimal exponent zero, then reduced by lex leading terms.
    Over the integers the reduction is both sound and complete: if ``q``
    divides ``p`` every intermediate leading term stays divisible.
    """
    if q.is_zero():
        raise ZeroDivisorError("division by the zero Laurent polynomial")
    if p.vars != q.vars:
        raise ValueError("variable mismatch in division")
    if p.is_zero():
        return LaurentPoly.zero(p.vars)

    mp, mq = p.monomial_content(), q.monomial_content()
    pw = p.shift(tuple(-v for v in mp))
    qw = q.shift(tuple(-v for v in mq))

    lead_q = max(qw.terms)
    cq = qw.terms[lead_q]
    rem = dict(pw.terms)
    quot: dict[tuple[int, ...], int] = {}
    qitems = list(qw.terms.items())

    while rem:
        lead_r = max(rem)
        cr = rem[lead_r]
        e = _sub_vec(lead_r, lead_q)
        if any(v < 0 for v in e) or cr % cq:
            return None
        c = cr // cq
        quot[e] = c
        for eq, cqq in qitems:
            k = _add_vec(e, eq)
            s = rem.get(k, 0) - c * cqq
            if s:
                rem[k] = s
            else:
                rem.pop(k, None)

    shift_back = _sub_vec(mp, mq)
    return LaurentPoly(p.vars, {_add_vec(e, shift_back): c for e, c in quot.items()})


def parse_rational(text: str) -> Fraction:
    """Parse ``p`` or ``p/q`` into an exact Fraction."""
    return Fraction(text.strip())


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
