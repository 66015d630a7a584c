"""Regenerate the bundled instance files and their manifest.

Each named graph is encoded at every label width n in 1..4 that fits its
vertex count; the oracle verifies colorability and records a witness.
Run from the repository root:

    python scripts/build_corpus.py
"""

import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from uvlab.sgraph import (ExplicitGraph, brute_force_3color, encode_explicit,
                          expand, format_sgc)

OUT = pathlib.Path(__file__).resolve().parents[1] / "src" / "uvlab" / "instances"


def cycle(m):
    return ExplicitGraph(m, frozenset((i, (i + 1) % m) if i < (i + 1) % m
                                      else ((i + 1) % m, i) for i in range(m)))


def complete(m):
    return ExplicitGraph(m, frozenset((u, v) for u in range(m)
                                      for v in range(u + 1, m)))


def petersen():
    edges = set()
    for i in range(5):
        edges.add(tuple(sorted((i, (i + 1) % 5))))          # outer cycle
        edges.add(tuple(sorted((5 + i, 5 + (i + 2) % 5))))  # inner pentagram
        edges.add((i, i + 5))                               # spokes
    return ExplicitGraph(10, frozenset(edges))


GRAPHS = {
    "k3": complete(3),
    "k4": complete(4),
    "c5": cycle(5),
    "c7": cycle(7),
    "petersen": petersen(),
}


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    manifest = {}
    for name, g in GRAPHS.items():
        for n in range(1, 5):
            if g.m > 2 ** n:
                continue
            circuit = encode_explicit(g, n)
            assert expand(circuit) == g, f"round-trip failed for {name} n={n}"
            key = f"{name}_n{n}"
            (OUT / f"{key}.sgc").write_text(
                format_sgc(circuit, comment=f"{name}: {len(g.edges)} edges on {g.m} vertices"))
            coloring = brute_force_3color(g)
            manifest[key] = {
                "file": f"{key}.sgc",
                "graph": name,
                "n": n,
                "m": g.m,
                "edges": len(g.edges),
                "colorable": coloring is not None,
                "coloring": list(coloring.colors) if coloring else None,
            }
            print(f"wrote {key}.sgc  colorable={coloring is not None}")
    (OUT / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    print(f"manifest: {len(manifest)} instances")


if __name__ == "__main__":
    main()
