"""Bundled named systems.

Each preset ships its defining tuple; the four systems whose exchange
matrices are pinned as fixtures also carry the full matrix verbatim, so
builder correctness can be tested against checked-in data rather than
assumed.  The primN family is parameterized by window size.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from importlib import resources

from .quiver import ExchangeMatrix, build_from_tuple


class UnknownPreset(KeyError):
    pass


_FIXTURE_NAMES = ("somos4", "somos5", "somos6", "somos7", "prim4", "nonintegrable6")


@dataclass(frozen=True)
class Preset:
    name: str
    a: tuple[int, ...]
    matrix: ExchangeMatrix
    matrix_source: str  # "fixture" (pinned rows) | "builder"
    note: str

    @property
    def n(self) -> int:
        return len(self.a) + 1


def list_presets() -> list[str]:
    return list(_FIXTURE_NAMES) + ["primN"]


def _load_fixture(name: str) -> dict:
    path = resources.files(__package__) / "fixtures" / f"{name}.json"
    with path.open("r", encoding="utf-8") as fh:
        return json.load(fh)


def get_preset(name: str, n: int | None = None) -> Preset:
    """Look up a preset; primN needs n (prim4 stays a pinned fixture)."""
    m = re.fullmatch(r"prim(\d+)", name)
    if name == "primN" or (m and name != "prim4"):
        if m:
            n = int(m.group(1))
        if n is None:
            raise UnknownPreset("primN needs a window size n")
        if n < 3:
            raise UnknownPreset(f"primN needs n >= 3, got {n}")
        a = (-1,) + (0,) * (n - 3) + (-1,)
        return Preset(f"prim{n}", a, build_from_tuple(a), "builder",
                      f"{n}-node affine A-type primitive: "
                      f"x[n+{n}]x[n] = x[n+1]x[n+{n - 1}] + 1.")
    if name not in _FIXTURE_NAMES:
        raise UnknownPreset(f"unknown preset {name!r}; known: "
                            + ", ".join(list_presets()))
    data = _load_fixture(name)
    a = tuple(int(v) for v in data["tuple"])
    if data["rows"] is not None:
        matrix = ExchangeMatrix.from_rows(data["rows"])
        source = "fixture"
    else:
        matrix = build_from_tuple(a)
        source = "builder"
    return Preset(name, a, matrix, source, data.get("note", ""))
