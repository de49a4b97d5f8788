"""Integrability diagnostics for bilinear-recurrence orbits.

Degree growth of the iterates (per-variable denominator degree), its exact
max-plus shadow, entropy estimation from exact ratio data, detection of
constant-coefficient linear relations, and the order-2 reduced invariant of
the (-1, 2, -1) system.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .tsystem import Orbit


class TooShort(ValueError):
    pass


class InsufficientData(ValueError):
    pass


class ZeroProduct(ValueError):
    pass


# -- degree growth ---------------------------------------------------------------


@dataclass(frozen=True)
class DegreeSequence:
    """Signed degree data: values[n] = -(min exponent) of the tracked variable
    in iterate n (so the entry for the variable itself is -1, and positive
    values measure denominator growth).  `d` is the floored nonnegative view.
    """

    values: tuple[int, ...]
    definition: str

    @property
    def d(self) -> tuple[int, ...]:
        return tuple(max(0, v) for v in self.values)

    def __len__(self) -> int:
        return len(self.values)


def degree_sequence(xorb: Orbit, variable) -> DegreeSequence:
    """Denominator-degree growth along a symbolic orbit.

    variable: 1-based position in the initial window, or "total" to sum the
    nonnegative per-variable degrees.
    """
    if xorb.kind != "symbolic":
        raise ValueError("degree extraction needs a symbolic orbit")
    n = xorb.stencil.n
    xnames = [f"x{i}" for i in range(n)]
    vals: list[int] = []
    if variable == "total":
        for p in xorb.values:
            tot = 0
            for name in xnames:
                idx = p.vars.index(name)
                tot += max(0, -p.min_exponent(idx))
            vals.append(tot)
        return DegreeSequence(tuple(vals), "denominator:total")
    i = int(variable)
    if not 1 <= i <= n:
        raise ValueError(f"variable index must be in 1..{n}")
    name = xnames[i - 1]
    for p in xorb.values:
        idx = p.vars.index(name)
        vals.append(-p.min_exponent(idx))
    return DegreeSequence(tuple(vals), f"denominator:x{i}")


def tropical_iterate(a: Sequence[int], init: Sequence[int], steps: int) -> DegreeSequence:
    """Max-plus shadow X_{n+N} = max(sum [a]_+ X, sum [-a]_+ X) - X_n.

    With init -e_i (unit self-degree at slot i) this reproduces the signed
    per-variable degree data of the symbolic orbit exactly, term by term,
    because all iterates have positive coefficients (no cancellation).
    """
    n = len(a) + 1
    if len(init) != n:
        raise ValueError(f"initial data must have {n} entries")
    plus = [max(aj, 0) for aj in a]
    minus = [max(-aj, 0) for aj in a]
    xs = [int(v) for v in init]
    for m in range(steps):
        up = sum(c * xs[m + j + 1] for j, c in enumerate(plus))
        dn = sum(c * xs[m + j + 1] for j, c in enumerate(minus))
        xs.append(max(up, dn) - xs[m])
    return DegreeSequence(tuple(xs), "tropical")


# -- algebraic entropy -----------------------------------------------------------


@dataclass(frozen=True)
class EntropyEstimate:
    entropy: float
    fit: str  # "polynomial" | "exponential"
    degree: int | None
    band: float
    note: str


def _aitken(r: list[Fraction]) -> Fraction:
    """One exact Aitken acceleration step on the last three ratios."""
    r0, r1, r2 = r[-3], r[-2], r[-1]
    denom = (r2 - r1) - (r1 - r0)
    if denom == 0:
        return r2
    return r2 - (r2 - r1) ** 2 / denom


def _poly_by_differences(seq: list[int]) -> tuple[int, int, int] | None:
    """Exact polynomial detection: (degree, stride, start) such that the
    (degree+1)-th forward difference at the stride vanishes identically from
    `start` on.  Covers growth that is polynomial up to a periodic wobble
    (the wobble is killed by differencing at its period)."""
    for s in range(1, 9):
        cur = list(seq)
        for k in range(5):
            if len(cur) <= s:
                break
            nxt = [cur[i + s] - cur[i] for i in range(len(cur) - s)]
            if len(nxt) >= 5:
                limit = min(len(nxt) - 5, len(seq) // 3)
                for st in range(limit + 1):
                    if all(v == 0 for v in nxt[st:]):
                        return k, s, st
            cur = nxt
    return None


def entropy_estimate(d) -> EntropyEstimate:
    """Entropy of a degree sequence from exact successive ratios.

    Ratios are accelerated as exact rationals; logarithms are taken only for
    the final report.  Sequences whose tail ratio has collapsed relative to
    the mid-sequence ratio are classified polynomial (entropy 0) with a
    log-log degree estimate.
    """
    seq = list(d.d) if isinstance(d, DegreeSequence) else [max(0, int(v)) for v in d]
    if len(seq) < 12:
        raise TooShort(f"need at least 12 degrees, got {len(seq)}")
    hit = _poly_by_differences(seq)
    if hit is not None:
        deg, stride, start = hit
        note = (f"exact polynomial: order-{deg + 1} differences at stride {stride} "
                f"vanish from n={start}")
        return EntropyEstimate(0.0, "polynomial", deg, 0.0, note)
    last = len(seq) - 1
    # bounded / eventually-flat data never has positive entropy
    if seq[last] == 0 or seq[last - 1] == 0:
        return EntropyEstimate(0.0, "polynomial", 0, 0.0,
                               "bounded sequence (zero tail)")
    first_pos = next(i for i, v in enumerate(seq) if v > 0)
    mid = max(first_pos + 1, last // 2)
    if seq[mid] == 0 or seq[mid - 1] == 0 or mid + 1 >= last:
        return EntropyEstimate(0.0, "polynomial", 0, 0.0,
                               "bounded sequence (sparse positives)")
    s_tail = math.log(Fraction(seq[last], seq[last - 1]))
    s_mid = math.log(Fraction(seq[mid], seq[mid - 1]))
    if s_mid <= 0 or s_tail <= 0.6 * s_mid:
        if seq[last] == seq[mid]:
            deg = 0
        else:
            deg = round(math.log(seq[last] / seq[mid]) / math.log(last / mid))
        note = f"ratios decay (tail {s_tail:.4f} vs mid {s_mid:.4f}); log-log slope ~{deg}"
        return EntropyEstimate(0.0, "polynomial", int(deg), abs(s_tail), note)
    ratios = [Fraction(seq[m + 1], seq[m]) for m in range(mid - 1, last)]
    if len(ratios) < 4:
        raise TooShort("not enough positive tail ratios to extrapolate")
    acc_prev = _aitken(ratios[:-1])
    acc = _aitken(ratios)
    if acc <= 0 or acc_prev <= 0:
        acc, acc_prev = ratios[-1], ratios[-2]
    ent = math.log(acc)
    band = max(abs(ent - math.log(acc_prev)), 1e-12)
    note = (f"exponential fit; accelerated ratio {float(acc):.8f}, "
            f"raw tail ratio {float(ratios[-1]):.8f}")
    return EntropyEstimate(ent, "exponential", None, band, note)


# -- linear relations ------------------------------------------------------------


@dataclass(frozen=True)
class LinearRelation:
    offsets: tuple[int, ...]
    coefficients: tuple[Fraction, ...]  # c_0 = 1
    verified_window: int
    palindromic: bool

    def format_text(self) -> str:
        parts = []
        for o, c in zip(self.offsets, self.coefficients):
            term = "x[n]" if o == 0 else f"x[n+{o}]"
            parts.append(f"({c})*{term}")
        return " + ".join(parts) + " = 0"


@dataclass(frozen=True)
class RelationSearch:
    """Full diagnostics of one relation search (see find_linear_relation)."""

    offsets: tuple[int, ...]
    train_rank: int
    solution_dim: int  # affine solution-space dimension; -1 when inconsistent
    relation: LinearRelation | None
    status: str  # "found" | "inconsistent" | "underdetermined" | "failed-verify"


def _solve_reporting(rows: list[list[Fraction]], rhs: list[Fraction]) -> tuple[int, int, list[Fraction] | None]:
    """Gaussian elimination returning (rank, solution_dim, unique solution).

    solution_dim is -1 for inconsistent systems; a solution is returned only
    when it is unique (solution_dim == 0).
    """
    m = len(rows[0]) if rows else 0
    aug = [list(r) + [v] for r, v in zip(rows, rhs)]
    nrows = len(aug)
    rank = 0
    where = [-1] * m
    for col in range(m):
        piv = next((i for i in range(rank, nrows) if aug[i][col] != 0), None)
        if piv is None:
            continue
        aug[rank], aug[piv] = aug[piv], aug[rank]
        inv = 1 / aug[rank][col]
        aug[rank] = [x * inv for x in aug[rank]]
        for i in range(nrows):
            if i != rank and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[rank])]
        where[col] = rank
        rank += 1
        if rank == nrows:
            break
    for i in range(rank, nrows):
        if aug[i][m] != 0:
            return rank, -1, None
    if rank < m:
        return rank, m - rank, None
    sol = [Fraction(0)] * m
    for col in range(m):
        sol[col] = aug[where[col]][m]
    return rank, 0, sol


def relation_search(orb: Orbit, offsets: Sequence[int], train: int, verify: int) -> RelationSearch:
    if orb.kind != "rational":
        raise ValueError("relation search needs a rational orbit")
    offs = tuple(int(o) for o in offsets)
    if len(offs) < 2 or offs[0] != 0 or any(b <= a for a, b in zip(offs, offs[1:])):
        raise ValueError("offsets must be strictly increasing and start at 0")
    if train < 1 or verify < 1:
        raise ValueError("train and verify counts must be positive")
    need = offs[-1] + train + verify
    vals = [Fraction(v) for v in orb.values]
    if len(vals) < need:
        raise InsufficientData(f"orbit has {len(vals)} values; need {need}")
    m = len(offs) - 1
    rows = [[vals[n + o] for o in offs[1:]] for n in range(train)]
    rhs = [-vals[n + offs[0]] for n in range(train)]
    rank, dim, sol = _solve_reporting(rows, rhs)
    if dim == -1:
        return RelationSearch(offs, rank, -1, None, "inconsistent")
    if dim > 0:
        return RelationSearch(offs, rank, dim, None, "underdetermined")
    coeffs = (Fraction(1),) + tuple(sol)
    for n in range(train, train + verify):
        if sum(c * vals[n + o] for c, o in zip(coeffs, offs)) != 0:
            return RelationSearch(offs, rank, 0, None, "failed-verify")
    pal = list(coeffs) == list(reversed(coeffs))
    rel = LinearRelation(offs, coeffs, verify, pal)
    return RelationSearch(offs, rank, 0, rel, "found")


def find_linear_relation(orb: Orbit, offsets: Sequence[int], train: int, verify: int) -> LinearRelation | None:
    """Exact constant-coefficient relation sum_k c_k x_{n+o_k} = 0, c_0 = 1.

    Solved on `train` windows, accepted only if it holds exactly on `verify`
    further windows.  Degenerate training systems (underdetermined or
    inconsistent) yield None; relation_search exposes rank and solution-space
    dimension for those cases.
    """
    return relation_search(orb, offsets, train, verify).relation


# -- reduced invariant of the (-1, 2, -1) system ----------------------------------


def somos4_first_integral(u1: Fraction, u2: Fraction) -> Fraction:
    """H = ((U1 U2)^2 + U1 + U2 + 1) / (U1 U2), constant along reduced orbits."""
    u1, u2 = Fraction(u1), Fraction(u2)
    prod = u1 * u2
    if prod == 0:
        raise ZeroProduct("first integral undefined when U1*U2 = 0")
    return (prod ** 2 + u1 + u2 + 1) / prod
