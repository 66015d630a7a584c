"""Small-circuit graph representation: parser, evaluator, generator, oracle.

A graph on vertex set [m] with m <= 2^n is described by a Boolean circuit
taking two n-bit vertex labels u and v and emitting two bits:

    00  if u or v is out of range, or u >= v,
    10  if u < v and {u, v} is not an edge,
    11  if u < v and {u, v} is an edge.

The out-of-range / ordering discipline is enforced by a wrapper around the
raw circuit, so malformed instance files cannot produce outputs outside
{00, 10, 11}.

SGC v1 text format (UTF-8, line oriented, ``#`` starts a comment):

    SGC 1
    n 2
    m 3
    w0 = AND u0 v0
    w1 = NOT w0
    w2 = CONST0
    out pair w1
    out edge w2

Input wires are named u0..u(n-1) and v0..v(n-1); u0 is the least significant
bit of u.  Gate lines must appear in order w0, w1, ... and may only reference
inputs or earlier gates.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, ParseError

#: eval_pair outputs (two bits: pair-valid, edge-present).
INVALID, NON_EDGE, EDGE = 0b00, 0b10, 0b11

MAX_GATES = 10 ** 5
MAX_EXPAND_VERTICES = 1 << 16
MAX_BRUTE_FORCE_VERTICES = 20


@dataclass(frozen=True)
class CircuitGate:
    op: str          # AND | OR | NOT | CONST0 | CONST1
    a: int = -1      # wire indices; unused operands are -1
    b: int = -1


@dataclass(frozen=True)
class SuccinctCircuit:
    n: int
    m: int
    gates: tuple[CircuitGate, ...]
    out_pair: int
    out_edge: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not 1 <= self.m <= 2 ** self.n:
            raise ValueError(f"m={self.m} outside [1, 2^{self.n}]")
        if len(self.gates) > MAX_GATES:
            raise CapacityError(f"{len(self.gates)} gates exceeds cap {MAX_GATES}")
        nwires = 2 * self.n + len(self.gates)
        for k, g in enumerate(self.gates):
            limit = 2 * self.n + k
            operands = {"AND": 2, "OR": 2, "NOT": 1, "CONST0": 0, "CONST1": 0}.get(g.op)
            if operands is None:
                raise ValueError(f"unknown gate op {g.op!r}")
            for w in (g.a, g.b)[:operands]:
                if not 0 <= w < limit:
                    raise ValueError(f"gate w{k} references wire {w} out of range")
        for w in (self.out_pair, self.out_edge):
            if not 0 <= w < nwires:
                raise ValueError(f"output references wire {w} out of range")


@dataclass(frozen=True)
class ExplicitGraph:
    m: int
    edges: frozenset[tuple[int, int]]    # pairs (u, v) with u < v

    def __post_init__(self):
        for u, v in self.edges:
            if not (0 <= u < v < self.m):
                raise ValueError(f"edge ({u},{v}) out of range for m={self.m}")

    def adjacency(self) -> np.ndarray:
        adj = np.zeros((self.m, self.m), dtype=bool)
        for u, v in self.edges:
            adj[u, v] = adj[v, u] = True
        return adj


@dataclass(frozen=True)
class Coloring:
    """Colors for vertices [m]; vertices in [m, 2^n) get color 0."""

    colors: tuple[int, ...]

    def __post_init__(self):
        if any(c not in (0, 1, 2) for c in self.colors):
            raise ValueError("colors must be in {0, 1, 2}")

    def color(self, v: int) -> int:
        return self.colors[v] if v < len(self.colors) else 0

    def extended(self, n: int) -> np.ndarray:
        out = np.zeros(2 ** n, dtype=np.int64)
        out[: len(self.colors)] = self.colors
        return out

    def monochromatic_edges(self, g: ExplicitGraph) -> list[tuple[int, int]]:
        return sorted((u, v) for u, v in g.edges if self.color(u) == self.color(v))

    def is_valid_for(self, g: ExplicitGraph) -> bool:
        return not self.monochromatic_edges(g)

    def to_json(self) -> str:
        return json.dumps(list(self.colors))

    @staticmethod
    def from_json(text: str) -> "Coloring":
        return Coloring(tuple(int(c) for c in json.loads(text)))


_GATE_RE = re.compile(r"^w(\d+)\s*=\s*(AND|OR|NOT|CONST0|CONST1)\s*(.*)$")


def _resolve_wire(token: str, n: int, gates_so_far: int, lineno: int) -> int:
    mt = re.fullmatch(r"([uvw])(\d+)", token)
    if not mt:
        raise ParseError(f"bad wire name {token!r}", lineno)
    kind, num = mt.group(1), int(mt.group(2))
    if kind in "uv":
        if num >= n:
            raise ParseError(f"input wire {token} out of range for n={n}", lineno)
        return num if kind == "u" else n + num
    if num >= gates_so_far:
        raise ParseError(f"wire w{num} is not defined yet", lineno)
    return 2 * n + num


def parse_sgc(text: str) -> SuccinctCircuit:
    """Parse SGC v1 text; raises :class:`ParseError` with a line number."""
    header = {"n": None, "m": None}
    gates: list[CircuitGate] = []
    outs = {}
    saw_magic = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not saw_magic:
            if line != "SGC 1":
                raise ParseError(f"expected 'SGC 1' header, got {line!r}", lineno)
            saw_magic = True
            continue
        parts = line.split()
        if parts[0] in header:
            if len(parts) != 2:
                raise ParseError(f"malformed header line {line!r}", lineno)
            try:
                header[parts[0]] = int(parts[1])
            except ValueError:
                raise ParseError(f"{parts[0]} must be an integer", lineno) from None
            continue
        if parts[0] == "out":
            if len(parts) != 3 or parts[1] not in ("pair", "edge"):
                raise ParseError(f"malformed output line {line!r}", lineno)
            if header["n"] is None:
                raise ParseError("output line before n header", lineno)
            outs[parts[1]] = _resolve_wire(parts[2], header["n"], len(gates), lineno)
            continue
        mg = _GATE_RE.match(line)
        if not mg:
            raise ParseError(f"unrecognized line {line!r}", lineno)
        if header["n"] is None or header["m"] is None:
            raise ParseError("gate line before n/m headers", lineno)
        k, op, rest = int(mg.group(1)), mg.group(2), mg.group(3).split()
        if k != len(gates):
            raise ParseError(f"expected gate w{len(gates)}, got w{k}", lineno)
        arity = {"AND": 2, "OR": 2, "NOT": 1, "CONST0": 0, "CONST1": 0}[op]
        if len(rest) != arity:
            raise ParseError(f"{op} takes {arity} operand(s)", lineno)
        wires = [_resolve_wire(tok, header["n"], len(gates), lineno) for tok in rest]
        gates.append(CircuitGate(op, *wires))
        if len(gates) > MAX_GATES:
            raise ParseError(f"gate count exceeds cap {MAX_GATES}", lineno)
    if not saw_magic:
        raise ParseError("empty file; expected 'SGC 1' header", 1)
    if header["n"] is None or header["m"] is None:
        raise ParseError("missing n/m header", 1)
    if "pair" not in outs or "edge" not in outs:
        raise ParseError("missing 'out pair' or 'out edge' line", 1)
    try:
        return SuccinctCircuit(header["n"], header["m"], tuple(gates),
                               outs["pair"], outs["edge"])
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_sgc(c: SuccinctCircuit, comment: str | None = None) -> str:
    """Serialize a circuit back to SGC v1 text."""

    def wire_name(w: int) -> str:
        if w < c.n:
            return f"u{w}"
        if w < 2 * c.n:
            return f"v{w - c.n}"
        return f"w{w - 2 * c.n}"

    lines = ["SGC 1"]
    if comment:
        lines.append(f"# {comment}")
    lines += [f"n {c.n}", f"m {c.m}"]
    for k, g in enumerate(c.gates):
        if g.op in ("CONST0", "CONST1"):
            lines.append(f"w{k} = {g.op}")
        elif g.op == "NOT":
            lines.append(f"w{k} = NOT {wire_name(g.a)}")
        else:
            lines.append(f"w{k} = {g.op} {wire_name(g.a)} {wire_name(g.b)}")
    lines += [f"out pair {wire_name(c.out_pair)}", f"out edge {wire_name(c.out_edge)}"]
    return "\n".join(lines) + "\n"


def _wire_values(c: SuccinctCircuit, u_bits, v_bits, zero, one):
    vals = list(u_bits) + list(v_bits)
    for g in c.gates:
        if g.op == "AND":
            vals.append(vals[g.a] & vals[g.b])
        elif g.op == "OR":
            vals.append(vals[g.a] | vals[g.b])
        elif g.op == "NOT":
            vals.append(one - vals[g.a])
        elif g.op == "CONST0":
            vals.append(zero)
        else:
            vals.append(one)
    return vals[c.out_pair], vals[c.out_edge]


def eval_pair(c: SuccinctCircuit, u: int, v: int) -> int:
    """Wrapped circuit output for a vertex pair: INVALID, NON_EDGE or EDGE."""
    if not (0 <= u < 2 ** c.n and 0 <= v < 2 ** c.n):
        raise ValueError(f"labels ({u},{v}) outside [0, 2^{c.n})")
    if u >= v or u >= c.m or v >= c.m:
        return INVALID
    ub = [(u >> i) & 1 for i in range(c.n)]
    vb = [(v >> i) & 1 for i in range(c.n)]
    pair, edge = _wire_values(c, ub, vb, 0, 1)
    if not pair:
        return INVALID
    return EDGE if edge else NON_EDGE


def expand(c: SuccinctCircuit) -> ExplicitGraph:
    """Evaluate the circuit on every pair and return the explicit graph."""
    size = 2 ** c.n
    if size > MAX_EXPAND_VERTICES:
        raise CapacityError(f"2^{c.n} vertices exceeds expand cap {MAX_EXPAND_VERTICES}")
    v = np.arange(size, dtype=np.int64)
    v_bits = [((v >> i) & 1).astype(np.uint8) for i in range(c.n)]
    zero = np.zeros(size, dtype=np.uint8)
    one = np.ones(size, dtype=np.uint8)
    edges = []
    for u in range(c.m):
        ub = [np.uint8((u >> i) & 1) for i in range(c.n)]
        pair, edge = _wire_values(c, ub, v_bits, zero, one)
        hit = (np.asarray(pair, dtype=bool) & np.asarray(edge, dtype=bool)
               & (v > u) & (v < c.m))
        edges.extend((u, int(w)) for w in np.nonzero(hit)[0])
    return ExplicitGraph(c.m, frozenset(edges))


class _Builder:
    """Accumulates gates; returns wire indices."""

    def __init__(self, n: int):
        self.n = n
        self.gates: list[CircuitGate] = []

    def emit(self, op, a=-1, b=-1) -> int:
        self.gates.append(CircuitGate(op, a, b))
        if len(self.gates) > MAX_GATES:
            raise CapacityError(f"generated circuit exceeds {MAX_GATES} gates")
        return 2 * self.n + len(self.gates) - 1

    def chain(self, op, wires, empty) -> int:
        if not wires:
            return self.emit(empty)
        acc = wires[0]
        for w in wires[1:]:
            acc = self.emit(op, acc, w)
        return acc


def encode_explicit(g: ExplicitGraph, n: int) -> SuccinctCircuit:
    """Lookup-table circuit (OR of pair minterms) with expand o encode = id."""
    if g.m > 2 ** n:
        raise CapacityError(f"m={g.m} does not fit in n={n} bits")
    b = _Builder(n)
    not_u = [b.emit("NOT", i) for i in range(n)]
    not_v = [b.emit("NOT", n + i) for i in range(n)]
    minterm = {}
    for u in range(g.m):
        for v in range(u + 1, g.m):
            lits = [(i if (u >> i) & 1 else not_u[i]) for i in range(n)]
            lits += [(n + i if (v >> i) & 1 else not_v[i]) for i in range(n)]
            minterm[(u, v)] = b.chain("AND", lits, "CONST1")
    out_pair = b.chain("OR", list(minterm.values()), "CONST0")
    out_edge = b.chain("OR", [minterm[e] for e in sorted(g.edges)], "CONST0")
    return SuccinctCircuit(n, g.m, tuple(b.gates), out_pair, out_edge)


def _neighbor_lists(g: ExplicitGraph) -> list[list[int]]:
    nbr = [[] for _ in range(g.m)]
    for u, v in g.edges:
        nbr[u].append(v)
        nbr[v].append(u)
    return nbr


def brute_force_3color(g: ExplicitGraph) -> Coloring | None:
    """Backtracking search; returns a valid 3-coloring iff one exists.

    Independent oracle for the protocol tests: no quantum machinery involved.
    """
    if g.m > MAX_BRUTE_FORCE_VERTICES:
        raise CapacityError(f"m={g.m} exceeds brute-force cap {MAX_BRUTE_FORCE_VERTICES}")
    nbr = _neighbor_lists(g)
    colors = [-1] * g.m

    def place(v: int) -> bool:
        if v == g.m:
            return True
        for c in range(3):
            if all(colors[w] != c for w in nbr[v] if colors[w] >= 0):
                colors[v] = c
                if place(v + 1):
                    return True
                colors[v] = -1
        return False

    if place(0):
        return Coloring(tuple(colors))
    return None


def min_violation_coloring(g: ExplicitGraph) -> tuple[Coloring, int]:
    """Coloring minimizing the number of monochromatic edges (branch and
    bound).  Returns (coloring, violation count); count 0 iff 3-colorable."""
    if g.m > MAX_BRUTE_FORCE_VERTICES:
        raise CapacityError(f"m={g.m} exceeds brute-force cap {MAX_BRUTE_FORCE_VERTICES}")
    nbr = _neighbor_lists(g)
    colors = [-1] * g.m
    best = [len(g.edges) + 1, None]

    def place(v: int, bad: int):
        if bad >= best[0]:
            return
        if v == g.m:
            best[0], best[1] = bad, tuple(colors)
            return
        for c in range(3):
            extra = sum(1 for w in nbr[v] if colors[w] == c)
            colors[v] = c
            place(v + 1, bad + extra)
            colors[v] = -1

    place(0, 0)
    return Coloring(best[1]), best[0]
