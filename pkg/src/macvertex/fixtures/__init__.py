"""Regression fixtures: the published example tables, one file per table.

Each JSON file carries the table caption, the row/column labels (as N-tuples
of partitions) and the entries as canonical-grammar expression strings that
round-trip through the Scalar parser.  Loaders return typed records; the
entry strings are parsed by the consuming checks, not here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import List, Tuple

from ..partitions import NTuple, mk_ntuple

__all__ = ["AlphaTable", "MukadeElement", "ModeAction",
           "alpha_tables", "mukade_elements", "mode_actions"]


@dataclass(frozen=True)
class AlphaTable:
    name: str
    caption: str
    N: int
    level: int
    sign: str
    rows: Tuple[NTuple, ...]
    cols: Tuple[NTuple, ...]
    entries: Tuple[Tuple[str, ...], ...]


@dataclass(frozen=True)
class MukadeElement:
    name: str
    N: int
    lam: NTuple
    mu: NTuple
    expr: str


@dataclass(frozen=True)
class ModeAction:
    name: str
    N: int
    k: int
    mode: int
    side: str
    params: str
    state: NTuple
    expansion: Tuple[Tuple[NTuple, str], ...]
    disputed: bool = False


def _load(name: str) -> dict:
    with resources.files(__package__).joinpath(name).open("r") as fh:
        return json.load(fh)


def alpha_tables() -> List[AlphaTable]:
    out = []
    for name in sorted(n for n in _listing() if n.startswith("alpha_")):
        data = _load(name)
        rows = tuple(mk_ntuple(r) for r in data["rows"])
        cols = tuple(mk_ntuple(c) for c in data["cols"])
        out.append(AlphaTable(
            name=name.removesuffix(".json"), caption=data["caption"], N=data["N"],
            level=data["level"], sign=data["sign"], rows=rows, cols=cols,
            entries=tuple(tuple(row) for row in data["entries"])))
    return out


def mukade_elements() -> List[MukadeElement]:
    data = _load("mukade_elements.json")
    out = []
    for item in data["elements"]:
        out.append(MukadeElement(
            name=item["name"], N=item["N"],
            lam=mk_ntuple(item["lam"]), mu=mk_ntuple(item["mu"]), expr=item["expr"]))
    return out


def mode_actions() -> List[ModeAction]:
    data = _load("mode_actions.json")
    out = []
    for item in data["actions"]:
        out.append(ModeAction(
            name=item["name"], N=item["N"], k=item["k"], mode=item["mode"],
            side=item["side"], params=item["params"], state=mk_ntuple(item["state"]),
            expansion=tuple((mk_ntuple(l), e) for l, e in item["expansion"]),
            disputed=item.get("disputed", False)))
    return out


def _listing() -> List[str]:
    return [p.name for p in resources.files(__package__).iterdir()
            if p.name.endswith(".json")]
