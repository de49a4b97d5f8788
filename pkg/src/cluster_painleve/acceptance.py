"""Numbered acceptance battery.

Each criterion is a self-contained, deterministic check with a wall-clock
budget.  The same registry backs the `verify` CLI subcommand and the
acceptance test module, so there is exactly one definition of "done".
Criteria marked non-blocking are reported but do not gate the suite.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from . import analysis, reduction, ysystem, zsystem
from .laurent import LaurentPoly, laurent_try_div
from .presets import get_preset
from .quiver import build_from_tuple, is_period1, mutate_matrix, rho_conjugate
from .tsystem import TStencil, iterate_t, iterate_tz
from .zsystem import GeometricZ, PerturbedZ, solve_z, z_stencil_from_tuple

F = Fraction


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    blocking: bool
    runtime: float
    limit: float
    detail: str

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        extra = "" if self.blocking else " [non-blocking]"
        return (f"{tag} {self.number:2d}. {self.title}{extra} "
                f"({self.runtime:.2f}s/{self.limit:.0f}s) {self.detail}")


_REGISTRY: list[tuple[int, str, bool, float, object]] = []


def _criterion(number: int, title: str, limit: float, blocking: bool = True):
    def wrap(fn):
        _REGISTRY.append((number, title, blocking, limit, fn))
        return fn
    return wrap


def _rand_fracs(rng: random.Random, count: int, lo: int = 1, hi: int = 9) -> list[Fraction]:
    return [F(rng.randint(lo, hi), rng.randint(lo, hi)) for _ in range(count)]


@_criterion(1, "Somos-4 integer sequence from unit start", 1.0)
def _c01():
    p = get_preset("somos4")
    orb = iterate_t(TStencil(p.a), [1, 1, 1, 1], 9)
    want = [2, 3, 7, 23, 59, 314, 1529, 8209, 83313]
    got = orb.values[4:]
    ok = got == want
    return ok, f"tail {got[-3:]}"


@_criterion(2, "One-step mutation equals cyclic relabelling", 1.0)
def _c02():
    names = ["somos4", "somos6", "prim4", "nonintegrable6"]
    for name in names:
        b = get_preset(name).matrix
        if mutate_matrix(b, 0) != rho_conjugate(b) or not is_period1(b):
            return False, f"{name} violates the shift identity"
    return True, f"{len(names)} pinned matrices"


@_criterion(3, "Tuple builder reproduces the pinned 4x4 and 6x6 matrices", 1.0)
def _c03():
    for name in ("somos4", "somos6"):
        p = get_preset(name)
        assert p.matrix_source == "fixture"
        if build_from_tuple(p.a) != p.matrix:
            return False, f"{name} builder mismatch"
    return True, "entrywise equal"


@_criterion(4, "Palindromic generators with exact lattice equality", 1.0)
def _c04():
    from .intlinalg import image_lattice_basis, lattice_equal

    want = {"somos4": ((1, -2, 1, 0), 2), "somos6": ((1, -2, 1, 0, 0, 0), 4)}
    for name, (gen, r) in want.items():
        b = get_preset(name).matrix
        bas = reduction.palindromic_basis(b)
        if (bas.generator, bas.rank) != (gen, r):
            return False, f"{name}: got {bas.generator} rank {bas.rank}"
        img = image_lattice_basis(b.as_lists())
        if not lattice_equal([list(v) for v in bas.vectors], img):
            return False, f"{name}: span differs from image lattice"
    return True, "generators and spans match"


@_criterion(5, "Reduced recurrences have the expected closed forms", 5.0)
def _c05():
    s4 = reduction.derive_usystem(get_preset("somos4").matrix)
    if not (s4.order == 2
            and s4.f_num == LaurentPoly(("U1",), {(1,): 1, (0,): 1})
            and s4.f_den == LaurentPoly.monomial(("U1",), (2,))):
        return False, f"somos4: {s4.format_text()}"
    s7 = reduction.derive_uzsystem(get_preset("somos7").matrix)
    if not (s7.order == 2 and s7.z_flag and s7.z_power == 1
            and s7.f_num == LaurentPoly(("U1",), {(1,): 1, (0,): 1})
            and s7.f_den.is_one()):
        return False, f"somos7: {s7.format_text()}"
    sp = reduction.derive_usystem(get_preset("prim4").matrix)
    uv = ("U1", "U2", "U3")
    if not (sp.order == 4 and sp.generator == (1, 0, 0, 0)
            and sp.f_num == LaurentPoly(uv, {(0, 0, 0): 1, (1, 0, 1): 1})
            and sp.f_den.is_one()):
        return False, f"prim4: {sp.format_text()}"
    return True, "somos4, somos7 (with coefficients), prim4"


@_criterion(6, "Reduction conjugates the full dynamics (20 steps, 5 starts)", 10.0)
def _c06():
    rng = random.Random(6006)
    for name in ("somos4", "somos5", "somos6"):
        b = get_preset(name).matrix
        for _ in range(5):
            init = _rand_fracs(rng, b.n)
            if not reduction.verify_conjugacy(b, init, 20):
                return False, f"{name} init {init}"
    return True, "3 systems x 5 random starts"


@_criterion(7, "Symbolic coefficient iterates stay Laurent through n = 12", 60.0)
def _c07():
    z = GeometricZ(F(1), F(1))  # symbolic path only uses the exponent grid
    orb = iterate_tz(TStencil(get_preset("somos4").a), z, None, 9, mode="symbolic")
    terms = orb.values[-1].n_terms()
    if not all(p.coefficients_positive() for p in orb.values):
        return False, "negative coefficient appeared"
    return True, f"x_12 has {terms} terms"


@_criterion(8, "Coefficient-residual equivalence on clean and broken data", 5.0)
def _c08():
    a = get_preset("somos4").a
    rng = random.Random(8008)
    base = GeometricZ(F(2), F(3, 2))
    init = _rand_fracs(rng, 4, 1, 5)
    for z, label in ((base, "clean"), (PerturbedZ(base, {5: F(2)}), "perturbed")):
        orb = iterate_tz(TStencil(a), z, init, 36)
        rows = ysystem.verify_tz_correspondence(a, orb, 30)
        if any(r["y_ok"] != r["z_ok"] for r in rows):
            return False, f"{label}: equivalence broken"
        if label == "perturbed" and all(r["z_ok"] for r in rows):
            return False, "perturbation went undetected"
    return True, "30 indices, both directions"


@_criterion(9, "Second-order coefficient orbits solve the 4-term Y-system", 5.0)
def _c09():
    beta, q = F(2), F(3, 2)
    ys = ysystem.qp1_iterate(beta, q, [F(1), F(1)], 32)
    a = get_preset("somos4").a
    for n in range(30):
        if not ysystem.y_residual_ok(a, ys, n):
            return False, f"Y-residual fails at n={n}"
    zs = ysystem.z_from_qp1(ys)
    for n in range(30):
        if zs[n] != beta * q ** n:
            return False, f"extracted coefficient wrong at n={n}"
    return True, "30 indices exact"


@_criterion(10, "Biquadratic invariant conserved (5 orbits x 50 steps)", 5.0)
def _c10():
    rng = random.Random(1010)
    spec = reduction.derive_usystem(get_preset("somos4").matrix)
    for _ in range(5):
        us = reduction.iterate_usystem(spec, _rand_fracs(rng, 2), 50)
        h0 = analysis.somos4_first_integral(us[0], us[1])
        for n in range(1, 50):
            if analysis.somos4_first_integral(us[n], us[n + 1]) != h0:
                return False, f"drift at n={n}"
    return True, "exact to all orders"


@_criterion(11, "Reduced two-form invariant under the phase map", 10.0)
def _c11():
    rng = random.Random(1111)
    for name, dim in (("somos4", 2), ("somos6", 4)):
        b = get_preset(name).matrix
        pts = [_rand_fracs(rng, dim) for _ in range(5)]
        if not reduction.verify_form_invariance(b, pts):
            return False, f"{name} failed"
    return True, "2D and 4D maps, 5 points each"


@_criterion(12, "Dilogarithm generating function converges at second order", 5.0)
def _c12():
    rng = random.Random(1212)
    b = get_preset("somos4").matrix
    ratios = []
    for _ in range(3):
        pt = [F(rng.randint(1, 4), rng.randint(1, 4)) for _ in range(4)]
        res = reduction.generating_function_check(b, pt, h=1e-3)
        ratios.append(res["ratio"])
        if not 3.5 <= res["ratio"] <= 4.5:
            return False, f"ratio {res['ratio']:.3f} at {pt}"
    return True, "ratios " + ", ".join(f"{r:.3f}" for r in ratios)


@_criterion(13, "Order-24 linear relation with constant coefficient", 30.0)
def _c13():
    rng = random.Random(1313)
    a = get_preset("prim4").a
    z = solve_z(z_stencil_from_tuple(a), _rand_fracs(rng, 2, 1, 5))
    orb = iterate_tz(TStencil(a), z, _rand_fracs(rng, 4, 1, 5), 58)
    rel = analysis.find_linear_relation(orb, (0, 12, 24), 4, 30)
    if rel is None:
        return False, "no relation found"
    if rel.coefficients[0] != 1 or rel.coefficients[2] != 1 or not rel.palindromic:
        return False, f"unexpected shape {rel.coefficients}"
    # stretch (non-gating): the coefficient as a symbolic Laurent polynomial
    stretch = "stretch skipped"
    try:
        zs = solve_z(z_stencil_from_tuple(a))
        sorb = iterate_tz(TStencil(a), zs, None, 21, mode="symbolic")
        csym = laurent_try_div(sorb.values[24] + sorb.values[0], sorb.values[12])
        if csym is not None and csym.n_terms() == 67 and csym.coefficients_positive():
            stretch = "stretch: symbolic coefficient has 67 positive terms"
        else:
            nt = "none" if csym is None else csym.n_terms()
            stretch = f"stretch MISSED: got {nt} terms"
    except Exception as exc:  # stretch must never gate the criterion
        stretch = f"stretch errored: {exc}"
    return True, f"C = {-rel.coefficients[1]}; {stretch}"


@_criterion(14, "Five-node family linearizes at stride 12 (conjectured)", 300.0,
            blocking=False)
def _c14():
    rng = random.Random(1414)
    p = get_preset("primN", 5)
    z = solve_z(z_stencil_from_tuple(p.a), _rand_fracs(rng, 3, 1, 4))
    orb = iterate_tz(TStencil(p.a), z, _rand_fracs(rng, 5, 1, 4), 74)
    rel = analysis.find_linear_relation(orb, (0, 12, 24, 36, 48), 6, 20)
    if rel is None:
        return False, "CONJECTURE: no relation found on this orbit"
    c = rel.coefficients
    if not (rel.palindromic and c[0] == 1 and c[4] == 1 and c[1] == c[3]):
        return False, f"CONJECTURE: shape {c}"
    return True, f"CONJECTURE holds here: A = {-c[1]}, B = {c[2]}"


@_criterion(15, "Positive entropy case: growth ratio and spectrum", 10.0)
def _c15():
    p = get_preset("nonintegrable6")
    st = z_stencil_from_tuple(p.a)
    cp = zsystem.char_poly(st)
    want_factors = {(1, 0, 1), (1, -3, 1)}  # ascending coefficients
    if {f for f, _ in cp.factors} != want_factors:
        return False, f"factors {cp.factors}"
    lam = (3 + math.sqrt(5)) / 2
    degs = zsystem.exponent_degree_sequence(solve_z(st), 41)
    r1 = degs[40] / degs[39]
    tr = analysis.tropical_iterate(p.a, [1] * 6, 40)
    r2 = tr.values[-1] / tr.values[-2]
    ok = abs(r1 - lam) <= 0.01 * lam and abs(r2 - lam) <= 0.01 * lam
    return ok, f"exponent ratio {r1:.6f}, tropical ratio {r2:.6f}, limit {lam:.6f}"


@_criterion(16, "Zero-entropy control: exact quadratic degree growth", 60.0)
def _c16():
    a = get_preset("somos4").a
    orb = iterate_t(TStencil(a), None, 17, mode="symbolic")
    ds = analysis.degree_sequence(orb, 1)
    tr = analysis.tropical_iterate(a, [-1, 0, 0, 0], 60)
    if list(tr.values[:21]) != list(ds.values):
        return False, "tropical shadow disagrees with symbolic degrees"
    # quadratic with an 8-periodic correction: d_n = n^2/16 + w(n mod 8);
    # a single unadorned quadratic does NOT fit (see decisions ledger)
    wob = {0: F(-1), 1: F(-1, 16), 2: F(-1, 4), 3: F(-9, 16),
           4: F(0), 5: F(-9, 16), 6: F(-1, 4), 7: F(-1, 16)}
    for n in range(8, 21):
        if ds.values[n] != F(n * n, 16) + wob[n % 8]:
            return False, f"closed form breaks at n={n}"
    for n in range(4, 45):
        if tr.values[n + 16] - 2 * tr.values[n + 8] + tr.values[n] != 8:
            return False, f"stride-8 second difference off at n={n}"
    est = analysis.entropy_estimate(tr)
    if not (est.entropy == 0.0 and est.fit == "polynomial" and est.degree == 2):
        return False, f"entropy {est.entropy}, fit {est.fit}"
    return True, "quadratic modulo period-8 wobble; entropy 0"


@_criterion(17, "Seed mutation dynamics equals the direct Y-recurrence", 5.0)
def _c17():
    rng = random.Random(1717)
    for name in ("somos4", "prim4"):
        p = get_preset(name)
        y0 = _rand_fracs(rng, p.n, 1, 5)
        chain = ysystem.y_from_seed_dynamics(p.matrix, y0, 8)
        # the chain's own leading window regenerates it under the recurrence
        direct = ysystem.iterate_y(p.a, chain[: p.n], 8)
        if chain != direct:
            return False, f"{name} diverges"
    return True, "somos4 and prim4, 8 steps"


def run_criteria(numbers=None, keyword: str | None = None) -> list[CriterionResult]:
    """Run (a filtered subset of) the battery; results in criterion order."""
    out = []
    for number, title, blocking, limit, fn in sorted(_REGISTRY):
        if numbers is not None and number not in numbers:
            continue
        if keyword is not None and keyword.lower() not in title.lower():
            continue
        t0 = time.time()
        try:
            ok, detail = fn()
        except Exception as exc:  # a crashed criterion is a failed criterion
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        dt = time.time() - t0
        if ok and dt > limit:
            ok, detail = False, f"over budget: {detail}"
        out.append(CriterionResult(number, title, ok, blocking, dt, limit, detail))
    return out


def summary(results: list[CriterionResult]) -> dict:
    blocking_fail = [r.number for r in results if r.blocking and not r.passed]
    return {
        "total": len(results),
        "passed": sum(r.passed for r in results),
        "blocking_failures": blocking_fail,
        "ok": not blocking_fail,
    }
