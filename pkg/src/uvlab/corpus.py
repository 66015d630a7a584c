"""Bundled instance files and their colorability manifest.

Instances live under ``uvlab/instances`` as SGC v1 text plus a
``manifest.json`` recording, per instance, the vertex count, label width,
edge count, and oracle-verified colorability (with a witness coloring when
one exists).  ``scripts/build_corpus.py`` regenerates everything.
"""

from __future__ import annotations

import json
from importlib import resources

from .sgraph import Coloring, SuccinctCircuit, parse_sgc


def _root():
    return resources.files("uvlab") / "instances"


def available() -> list[str]:
    return sorted(p.name[: -len(".sgc")] for p in _root().iterdir()
                  if p.name.endswith(".sgc"))


def manifest() -> dict:
    return json.loads((_root() / "manifest.json").read_text())


def instance_text(name: str) -> str:
    return (_root() / f"{name}.sgc").read_text()


def load(name: str) -> SuccinctCircuit:
    return parse_sgc(instance_text(name))


def witness_coloring(name: str) -> Coloring | None:
    entry = manifest()[name]
    if entry["coloring"] is None:
        return None
    return Coloring(tuple(entry["coloring"]))
