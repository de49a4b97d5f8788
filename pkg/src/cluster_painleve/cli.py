"""Command-line front end.

One executable, six subcommands, deterministic artifacts.  Exit codes:
0 success, 2 invalid configuration, 3 computation failed (a library error
raised while executing a valid configuration).  All rationals in output
files are "p/q" strings; floats appear only in entropy and root reports,
which carry explicit precision fields.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import mpmath

from . import analysis, reduction, ysystem
from .acceptance import run_criteria, summary
from .laurent import format_rational, parse_rational
from .presets import Preset, UnknownPreset, get_preset, list_presets
from .quiver import build_from_tuple
from .tsystem import TStencil, iterate_t, iterate_tz, orbit_from_json
from .zsystem import GeometricZ, char_poly, solve_z, z_stencil_from_tuple

EXIT_CONFIG = 2
EXIT_COMPUTE = 3


class ConfigInvalid(Exception):
    """Bad flags, bad preset, malformed values: nothing was computed."""


@dataclass(frozen=True)
class ExperimentConfig:
    system: str
    a: tuple[int, ...]
    mode: str
    init: tuple[Fraction, ...] | None
    steps: int
    z_init: tuple[Fraction, ...] | None
    out: str | None


# -- option plumbing ---------------------------------------------------------

_RANDOM_INIT = re.compile(r"random\(\s*(\d+)\s*,\s*(\d+)\s*\)")


def _resolve_system(args) -> Preset:
    preset = getattr(args, "preset", None)
    tup = getattr(args, "tuple", None)
    if preset and tup:
        raise ConfigInvalid("--preset and --tuple are mutually exclusive")
    if preset:
        try:
            return get_preset(preset, getattr(args, "n", None))
        except (UnknownPreset, ValueError) as exc:
            raise ConfigInvalid(exc.args[0] if exc.args else str(exc)) from exc
    if tup:
        try:
            a = tuple(int(v) for v in tup.split(","))
            return Preset("tuple(" + tup + ")", a, build_from_tuple(a),
                          "builder", "ad hoc system from the command line")
        except ValueError as exc:
            raise ConfigInvalid(f"bad --tuple {tup!r}: {exc}") from exc
    raise ConfigInvalid("one of --preset or --tuple is required "
                        f"(presets: {', '.join(list_presets())})")


def _parse_values(spec: str, what: str) -> list[Fraction]:
    try:
        return [parse_rational(s.strip()) for s in spec.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigInvalid(f"bad {what} {spec!r}: {exc}") from exc


def _parse_init(spec: str, count: int, default_seed: int, what: str = "--init") -> list[Fraction]:
    """ones | comma-separated rationals | random(seed, bound)."""
    if spec == "ones":
        return [Fraction(1)] * count
    m = _RANDOM_INIT.fullmatch(spec)
    if m or spec == "random":
        seed = int(m.group(1)) if m else default_seed
        bound = int(m.group(2)) if m else 9
        if bound < 1:
            raise ConfigInvalid(f"{what}: random bound must be >= 1")
        rng = random.Random(seed)
        return [Fraction(rng.randint(1, bound), rng.randint(1, bound))
                for _ in range(count)]
    vals = _parse_values(spec, what)
    if len(vals) != count:
        raise ConfigInvalid(f"{what} needs {count} values, got {len(vals)}")
    return vals


def _parse_offsets(spec: str) -> tuple[int, ...]:
    try:
        offs = tuple(int(v) for v in spec.split(","))
    except ValueError as exc:
        raise ConfigInvalid(f"bad --offsets {spec!r}") from exc
    return offs


def _resolve_z(args, a: tuple[int, ...], seed: int):
    """Coefficient dynamics for tz runs: explicit window or geometric."""
    z_init = getattr(args, "z_init", None)
    beta, q = getattr(args, "beta", None), getattr(args, "q", None)
    if z_init and (beta or q):
        raise ConfigInvalid("--z-init and --beta/--q are mutually exclusive")
    if beta or q:
        if not (beta and q):
            raise ConfigInvalid("--beta and --q must be given together")
        b, qq = _parse_values(beta, "--beta")[0], _parse_values(q, "--q")[0]
        try:
            return GeometricZ(b, qq)
        except ValueError as exc:
            raise ConfigInvalid(str(exc)) from exc
    st = z_stencil_from_tuple(a)
    if z_init:
        vals = _parse_init(z_init, st.order, seed, "--z-init")
        try:
            return solve_z(st, vals)
        except ValueError as exc:
            raise ConfigInvalid(str(exc)) from exc
    return solve_z(st)


def _emit(args, stem: str, payload: dict, csv_rows: list[tuple] | None = None,
          csv_header: tuple[str, ...] | None = None) -> None:
    """Serialize one artifact deterministically; --out picks file vs directory."""
    fmt = getattr(args, "format", "json") or "json"
    if fmt == "csv":
        if csv_rows is None:
            raise ConfigInvalid("this command has no CSV form; use --format json")
        lines = [",".join(csv_header)] if csv_header else []
        lines += [",".join(str(c) for c in row) for row in csv_rows]
        text, ext = "\n".join(lines) + "\n", ".csv"
    else:
        text, ext = json.dumps(payload, indent=2, sort_keys=True) + "\n", ".json"
    out = getattr(args, "out", None)
    if out:
        path = Path(out)
        if path.suffix in (".json", ".csv"):
            path.parent.mkdir(parents=True, exist_ok=True)
        else:
            path.mkdir(parents=True, exist_ok=True)
            path = path / (stem + ext)
        path.write_text(text)
        print(f"wrote {path}")
    else:
        sys.stdout.write(text)


# -- subcommands --------------------------------------------------------------

def _cmd_run(args) -> int:
    if args.what != "qp1":
        p = _resolve_system(args)
        st = TStencil(p.a)
        n = st.n
    if args.what in ("t", "tz"):
        if args.mode == "symbolic":
            init = None
        else:
            init = _parse_init(args.init, n, args.seed)
        if args.what == "t":
            orb = iterate_t(st, init, args.steps, mode=args.mode)
        else:
            z = _resolve_z(args, p.a, args.seed)
            orb = iterate_tz(st, z, init, args.steps, mode=args.mode)
        payload = orb.to_json()
        payload["system"] = p.name
        rows = None
        header = None
        if orb.kind == "rational":
            rows = [(i, format_rational(v)) for i, v in enumerate(orb.values)]
            header = ("n", "value")
        _emit(args, "orbit", payload, rows, header)
        return 0
    if args.what == "y":
        init = _parse_init(args.init, n, args.seed)
        ys = ysystem.iterate_y(p.a, init, args.steps)
        payload = {"system": p.name, "tuple": list(p.a),
                   "values": [format_rational(v) for v in ys]}
        _emit(args, "yorbit", payload,
              [(i, format_rational(v)) for i, v in enumerate(ys)], ("n", "value"))
        return 0
    # qp1: the second-order coefficient recurrence
    if not (args.beta and args.q):
        raise ConfigInvalid("run qp1 needs --beta and --q")
    beta = _parse_values(args.beta, "--beta")[0]
    q = _parse_values(args.q, "--q")[0]
    init = _parse_init(args.init if args.init != "ones" else "1,1", 2, args.seed)
    try:
        ys = ysystem.qp1_iterate(beta, q, init, args.steps)
    except ValueError as exc:
        raise ConfigInvalid(str(exc)) from exc
    payload = {"beta": format_rational(beta), "q": format_rational(q),
               "values": [format_rational(v) for v in ys]}
    _emit(args, "qp1", payload,
          [(i, format_rational(v)) for i, v in enumerate(ys)], ("n", "value"))
    return 0


def _cmd_reduce(args) -> int:
    p = _resolve_system(args)
    spec = (reduction.derive_uzsystem if args.with_z
            else reduction.derive_usystem)(p.matrix)
    bas = spec.basis()
    chat = reduction.reduced_structure_matrix(p.matrix, bas)
    payload = {
        "system": p.name,
        "generator": list(spec.generator),
        "r": bas.rank,
        "F_num": spec.f_num.to_json(),
        "F_den": spec.f_den.to_json(),
        "formula": spec.format_text(),
        "reduced_form": [[format_rational(v) for v in row] for row in chat],
    }
    if spec.z_flag:
        payload["z_power"] = spec.z_power
    print(spec.format_text())
    _emit(args, "usystem", payload)
    return 0


def _cmd_zsys(args) -> int:
    p = _resolve_system(args)
    st = z_stencil_from_tuple(p.a)
    cp = char_poly(st)
    roots = []
    with mpmath.workdps(30):
        for f, mult in cp.factors:
            rts = mpmath.polyroots([int(c) for c in reversed(f)]) if len(f) > 1 else []
            roots.append({
                "factor": _poly_text(f),
                "multiplicity": mult,
                "roots": [[float(mpmath.re(r)), float(mpmath.im(r))] for r in rts],
            })
    moduli = [abs(complex(re, im)) for blk in roots for re, im in blk["roots"]]
    payload = {
        "system": p.name,
        "constraint": st.constraint_text(),
        "order": st.order,
        "char_poly": cp.format_text(),
        "roots": roots,
        "spectral_radius": max(moduli) if moduli else 0.0,
        "precision": "roots to ~1e-12; exact factors listed in char_poly",
    }
    if args.init:
        vals = _parse_init(args.init, st.order, args.seed, "--init")
        try:
            sol = solve_z(st, vals)
            payload["values"] = [format_rational(sol.value(n))
                                 for n in range(args.steps + st.order)]
        except ValueError as exc:
            raise ConfigInvalid(str(exc)) from exc
    else:
        sol = solve_z(st)
    if sol.closed_form:
        payload["closed_form"] = {
            k: ([format_rational(x) for x in v] if isinstance(v, tuple)
                else format_rational(v) if isinstance(v, Fraction) else v)
            for k, v in sol.closed_form.items()
        }
    rows = None
    header = None
    if "values" in payload:
        rows = [(i, v) for i, v in enumerate(payload["values"])]
        header = ("n", "value")
    _emit(args, "zsys", payload, rows, header)
    return 0


def _poly_text(f: tuple[int, ...]) -> str:
    parts = []
    for k in range(len(f) - 1, -1, -1):
        c = f[k]
        if c == 0:
            continue
        term = "L" + (f"^{k}" if k > 1 else "") if k else ""
        mag = abs(c)
        lead = "" if (mag == 1 and k) else str(mag)
        parts.append(("- " if c < 0 else "+ " if parts else "") + (lead + term).strip())
    return " ".join(parts) or "0"


def _cmd_entropy(args) -> int:
    p = _resolve_system(args)
    n = len(p.a) + 1
    if args.variable < 1 or args.variable > n:
        raise ConfigInvalid(f"--variable must be in 1..{n}")
    if args.mode == "tropical":
        init = [0] * n
        init[args.variable - 1] = -1
        ds = analysis.tropical_iterate(p.a, init, args.steps)
    else:
        orb = iterate_t(TStencil(p.a), None, args.steps, mode="symbolic")
        ds = analysis.degree_sequence(orb, args.variable)
    est = analysis.entropy_estimate(ds)
    payload = {
        "system": p.name,
        "mode": args.mode,
        "definition": ds.definition,
        "degrees": list(ds.d),
        "entropy": est.entropy,
        "fit": est.fit,
        "degree": est.degree,
        "band": est.band,
        "note": est.note,
        "precision": "entropy from exact integer degrees; band is the last "
                      "Aitken increment (0.0 when the fit is exact)",
    }
    _emit(args, "entropy", payload,
          [(i, d) for i, d in enumerate(ds.d)], ("n", "d_n"))
    return 0


def _cmd_linrel(args) -> int:
    if args.orbit:
        if getattr(args, "preset", None) or getattr(args, "tuple", None):
            raise ConfigInvalid("--orbit and --preset/--tuple are mutually exclusive")
        try:
            data = json.loads(Path(args.orbit).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigInvalid(f"cannot read orbit file: {exc}") from exc
        orb = orbit_from_json(data)
        name = args.orbit
    else:
        p = _resolve_system(args)
        st = TStencil(p.a)
        init = _parse_init(args.init, st.n, args.seed)
        if args.beta or args.q or args.z_init:
            z = _resolve_z(args, p.a, args.seed)
            orb = iterate_tz(st, z, init, args.steps)
        else:
            orb = iterate_t(st, init, args.steps)
        name = p.name
    offs = _parse_offsets(args.offsets)
    try:
        rs = analysis.relation_search(orb, offs, args.train, args.verify)
    except (analysis.InsufficientData, ValueError) as exc:
        raise ConfigInvalid(str(exc)) from exc
    payload = {
        "system": name,
        "offsets": list(offs),
        "train": args.train,
        "verify": args.verify,
        "status": rs.status,
        "train_rank": rs.train_rank,
        "solution_dim": rs.solution_dim,
        "relation": None,
    }
    if rs.relation is not None:
        rel = rs.relation
        payload["relation"] = {
            "offsets": list(rel.offsets),
            "coefficients": [format_rational(c) for c in rel.coefficients],
            "verified_window": rel.verified_window,
            "palindromic": rel.palindromic,
            "formula": rel.format_text(),
        }
        print(rel.format_text())
    else:
        print(f"no relation: {rs.status}")
    _emit(args, "linrel", payload)
    return 0


def _cmd_verify(args) -> int:
    numbers = None
    keyword = None
    if args.filter:
        if re.fullmatch(r"[\d,\s]+", args.filter):
            numbers = {int(v) for v in args.filter.replace(",", " ").split()}
        else:
            keyword = args.filter
    results = run_criteria(numbers=numbers, keyword=keyword)
    for r in results:
        print(r.line())
    s = summary(results)
    print(f"passed {s['passed']}/{s['total']}"
          + ("" if s["ok"] else f"; blocking failures: {s['blocking_failures']}"))
    if args.out:
        payload = {
            "summary": s,
            "results": [{
                "number": r.number, "title": r.title, "passed": r.passed,
                "blocking": r.blocking, "limit": r.limit, "detail": r.detail,
            } for r in results],
        }
        _emit(args, "verify", payload)
    return 0 if s["ok"] else 1


# -- parser -------------------------------------------------------------------

def _add_common(sp, init_default: str | None = "ones") -> None:
    sp.add_argument("--preset", help="named system: " + ", ".join(list_presets()))
    sp.add_argument("--tuple", help="exchange tuple a_1,...,a_{N-1} (comma-separated)")
    sp.add_argument("--n", type=int, help="size for the primN family")
    if init_default is not None:
        sp.add_argument("--init", default=init_default,
                        help='initial window: "ones", comma-separated rationals, '
                             'or "random(seed, bound)"')


def _add_io(sp) -> None:
    sp.add_argument("--out", help="output file (*.json/*.csv) or directory")
    sp.add_argument("--seed", type=int, default=0,
                    help="seed for bare 'random' inits (default 0)")
    sp.add_argument("--jobs", type=int, default=1,
                    help="reserved; exact arithmetic runs single-process")
    sp.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="cluster-painleve",
        description="exact iteration and reduction of mutation-periodic "
                    "cluster recurrences")
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="iterate a recurrence")
    run.add_argument("what", choices=("t", "tz", "y", "qp1"))
    _add_common(run)
    run.add_argument("--steps", type=int, default=8,
                     help="number of further terms to append")
    run.add_argument("--mode", choices=("rational", "symbolic"), default="rational")
    run.add_argument("--z-init", dest="z_init",
                     help="initial coefficient window (tz runs)")
    run.add_argument("--beta", help='geometric coefficient scale, "p/q"')
    run.add_argument("--q", help='geometric coefficient ratio, "p/q"')
    _add_io(run)
    run.set_defaults(handler=_cmd_run)

    red = sub.add_parser("reduce", help="palindromic reduction to the U-system")
    _add_common(red, init_default=None)
    red.add_argument("--with-z", action="store_true",
                     help="keep the coefficient in the reduced recurrence")
    _add_io(red)
    red.set_defaults(handler=_cmd_reduce)

    zs = sub.add_parser("zsys", help="coefficient constraint and its spectrum")
    _add_common(zs, init_default=None)
    zs.add_argument("--init", help="initial Z window (optional; symbolic otherwise)")
    zs.add_argument("--steps", type=int, default=8)
    _add_io(zs)
    zs.set_defaults(handler=_cmd_zsys)

    en = sub.add_parser("entropy", help="degree growth and entropy estimate")
    _add_common(en, init_default=None)
    en.add_argument("--steps", type=int, default=40)
    en.add_argument("--mode", choices=("tropical", "symbolic"), default="tropical")
    en.add_argument("--variable", type=int, default=1,
                    help="tracked initial variable, 1-based")
    _add_io(en)
    en.set_defaults(handler=_cmd_entropy)

    lr = sub.add_parser("linrel", help="search for a linear relation with "
                                       "constant coefficients")
    lr.add_argument("--orbit", help="orbit JSON file from `run`")
    _add_common(lr)
    lr.add_argument("--steps", type=int, default=60)
    lr.add_argument("--z-init", dest="z_init")
    lr.add_argument("--beta")
    lr.add_argument("--q")
    lr.add_argument("--offsets", required=True, help="e.g. 0,12,24")
    lr.add_argument("--train", type=int, default=4)
    lr.add_argument("--verify", type=int, default=30)
    _add_io(lr)
    lr.set_defaults(handler=_cmd_linrel)

    ve = sub.add_parser("verify", help="run the acceptance battery")
    ve.add_argument("--filter", help="criterion numbers (comma) or title keyword")
    _add_io(ve)
    ve.set_defaults(handler=_cmd_verify)
    return ap


_VALUE_FLAGS = {"--tuple", "--init", "--z-init", "--beta", "--q", "--offsets"}


def _merge_negative_values(argv: list[str]) -> list[str]:
    # let `--tuple -1,2,-1` through argparse, which would read the value as a flag
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if tok in _VALUE_FLAGS and nxt and re.match(r"-\d", nxt):
            out.append(tok + "=" + nxt)
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    argv = _merge_negative_values(list(sys.argv[1:] if argv is None else argv))
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ConfigInvalid as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ValueError, ArithmeticError, KeyError, OverflowError) as exc:
        print(f"compute error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
