"""Coefficient dynamics: Y-system orbits, seed extraction, q-Painleve I.

The Y-system companion of an order-N bilinear stencil a is

    y_{n+N} y_n = prod_j (1 + y_{n+j})^{[-a_j]+} / prod_j (1 + 1/y_{n+j})^{[a_j]+},

a subtraction-free recurrence on positive rationals.  Its solutions arise two
ways that this module cross-checks: from coefficient-free (and coefficient-
carrying) x-orbits via the monomial substitution ybar_n = prod_j
x_{n+j}^{-a_j}, and from tropical-sign seed mutation along the cyclic node
schedule.  The q-Painleve I recurrence is the reduced order-2 flow with a
geometric coefficient.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .quiver import ExchangeMatrix, Seed, mutate_seed
from .tsystem import Orbit, check_orbit


class NonPositiveInitial(ValueError):
    pass


class NonPositiveParameter(ValueError):
    pass


class InsufficientWindow(ValueError):
    pass


def _pos(v: int) -> int:
    return v if v > 0 else 0


def _check_positive(values: Sequence[Fraction], what: str) -> list[Fraction]:
    out = [Fraction(v) for v in values]
    if any(v <= 0 for v in out):
        raise NonPositiveInitial(f"{what} must be strictly positive")
    return out


def y_step(a: Sequence[int], window: Sequence[Fraction]) -> Fraction:
    """RHS of the Y-system for one window y_{n+1}..y_{n+N-1}."""
    num = Fraction(1)
    den = Fraction(1)
    for y, aj in zip(window, a):
        p = _pos(aj)
        m = _pos(-aj)
        if m:
            num *= (1 + y) ** m
        if p:
            den *= (1 + 1 / y) ** p
    return num / den


def iterate_y(a: Sequence[int], init: Sequence[Fraction], steps: int) -> list[Fraction]:
    """Append `steps` values to a positive initial window of length N."""
    a = tuple(int(v) for v in a)
    n_ = len(a) + 1
    ys = _check_positive(init, "initial y window")
    if len(ys) != n_:
        raise ValueError(f"initial window must have {n_} entries")
    for n in range(steps):
        ys.append(y_step(a, ys[n + 1 : n + n_]) / ys[n])
    return ys


def ybar_from_orbit(a: Sequence[int], xorb: Orbit) -> list[Fraction]:
    """Monomial substitution ybar_n = prod_{j=1}^{N-1} x_{n+j}^{-a_j}."""
    a = tuple(int(v) for v in a)
    n_ = len(a) + 1
    if xorb.kind != "rational":
        raise ValueError("substitution needs a rational orbit")
    vals = xorb.values
    if len(vals) < n_:
        raise InsufficientWindow(f"orbit shorter than one window of {n_}")
    out = []
    for n in range(len(vals) - n_ + 1):
        y = Fraction(1)
        for j, aj in enumerate(a, start=1):
            if aj:
                y *= Fraction(vals[n + j]) ** (-aj)
        out.append(y)
    return out


def y_residual_ok(a: Sequence[int], ys: Sequence[Fraction], n: int) -> bool:
    """Does the Y-system hold exactly at index n of the sequence ys?"""
    n_ = len(a) + 1
    return ys[n + n_] * ys[n] == y_step(a, ys[n + 1 : n + n_])


def verify_tz_correspondence(a: Sequence[int], xorb: Orbit, steps: int) -> list[dict]:
    """Index-by-index: Y-system residual of ybar vs coefficient constraint.

    The orbit must carry its coefficient sequence and satisfy the bilinear
    recurrence with it (checked).  The two boolean columns of the report
    coincide at every index for any valid coefficient dynamics.
    """
    a = tuple(int(v) for v in a)
    n_ = len(a) + 1
    if xorb.z is None:
        raise ValueError("orbit carries no coefficient sequence")
    if len(xorb.values) < 2 * n_ + steps - 1:
        raise InsufficientWindow(
            f"need at least {2 * n_ + steps - 1} orbit values for {steps} checks")
    if not check_orbit(xorb):
        raise ValueError("orbit does not satisfy its own recurrence")
    ybar = ybar_from_orbit(a, xorb)
    out = []
    for n in range(steps):
        y_ok = y_residual_ok(a, ybar, n)
        z_prod = Fraction(1)
        for j, aj in enumerate(a, start=1):
            if aj:
                z_prod *= xorb.z.value(n + j) ** (-aj)
        out.append({"n": n, "y_ok": y_ok, "z_ok": z_prod == 1})
    return out


def qp1_iterate(beta: Fraction, q: Fraction, init: Sequence[Fraction],
                steps: int) -> list[Fraction]:
    """y_{n+2} y_n = beta*q^n*(1 + y_{n+1}) / y_{n+1}^2 on positive data."""
    beta, q = Fraction(beta), Fraction(q)
    if beta <= 0 or q <= 0:
        raise NonPositiveParameter("beta and q must be strictly positive")
    ys = _check_positive(init, "initial window")
    if len(ys) != 2:
        raise ValueError("initial window must have 2 entries")
    for n in range(steps):
        ys.append(beta * q ** n * (1 + ys[n + 1]) / (ys[n + 1] ** 2 * ys[n]))
    return ys


def z_from_qp1(ys: Sequence[Fraction]) -> list[Fraction]:
    """Coefficient extraction Z_n = y_{n+2} y_{n+1}^2 y_n / (1 + y_{n+1})."""
    return [ys[n + 2] * ys[n + 1] ** 2 * ys[n] / (1 + ys[n + 1])
            for n in range(len(ys) - 2)]


def y_from_seed_dynamics(b: ExchangeMatrix, y_init: Sequence[Fraction],
                         steps: int) -> list[Fraction]:
    """Extract the Y-system solution from seed mutation.

    Nodes are mutated cyclically 0, 1, 2, ...; the chain value y_n is the
    coefficient at node n mod N after n mutations (so the first N values are
    read off while the window slides past the seed).  Returns N + steps
    values, which satisfy the Y-system of the matrix's defining tuple.
    """
    n_ = b.n
    ys = _check_positive(y_init, "seed coefficients")
    if len(ys) != n_:
        raise ValueError(f"seed needs {n_} coefficients")
    seed = Seed(b, tuple(Fraction(1) for _ in range(n_)), tuple(ys))
    out = []
    for n in range(n_ + steps):
        k = n % n_
        out.append(seed.y[k])
        seed = mutate_seed(seed, k)
    return out
