"""Two-proof verifier: Equality, Consistency and Uniformity tests.

The verifier receives two proofs, each on a node (x) color register pair,
and runs one of three tests chosen uniformly at random:

* Equality: swap test between the two proofs; reject iff it fails.
* Consistency: measure both proofs in the computational basis, getting
  (v1, c1) and (v2, c2); reject if the same vertex shows two colors, or if
  the (ordered, v_lo < v_hi) pair is an edge showing one color.
* Uniformity: measure the first proof's color then node register against
  the uniform-superposition projector; reject iff color gives 0 and node
  gives 1.

``acceptance_exact`` computes all three branch probabilities exactly; the
consistency term enumerates the full (3 * 2^n)^2 outcome grid, which caps
the instance size at n <= 8.  ``run_sampled`` draws one verdict from the
exact branch distributions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import CapacityError, ShapeMismatchError
from .sgraph import SuccinctCircuit, expand
from .states import (PureState, computational_distribution, swap_test,
                     uniformity_measure)

MAX_CONSISTENCY_N = 8


@dataclass(frozen=True)
class VerdictReport:
    """Per-test acceptance probabilities and their uniform mixture."""

    p_equality: float
    p_consistency: float
    p_uniformity: float
    p_total: float
    branch_log: tuple = field(default=(), repr=False)

    def to_dict(self) -> dict:
        return {"p_eq": self.p_equality, "p_cons": self.p_consistency,
                "p_unif": self.p_uniformity, "p_total": self.p_total}


def soundness_bound(n: int) -> float:
    """Rejection floor 1 / (3 * 10^10 * 4^n) for non-3-colorable instances,
    valid for unentangled proof pairs."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return 1.0 / (3.0 * 1e10 * 4.0 ** n)


def _check_proof_shape(c: SuccinctCircuit, state: PureState, who: str):
    if state.shape.dims != (2 ** c.n, 3):
        raise ShapeMismatchError(
            f"{who} has dims {state.shape.dims}, expected {(2 ** c.n, 3)}")


@lru_cache(maxsize=64)
def consistency_accept_table(c: SuccinctCircuit) -> np.ndarray:
    """Boolean table accept[(v1, c1), (v2, c2)] over flattened vertex-color
    outcomes (index v * 3 + color), applying the ordered edge query.

    Cached per circuit (read-only array; do not mutate).
    """
    if c.n > MAX_CONSISTENCY_N:
        raise CapacityError(
            f"consistency grid needs n <= {MAX_CONSISTENCY_N}, got n={c.n}")
    size = 2 ** c.n
    adj = np.zeros((size, size), dtype=bool)
    for u, v in expand(c).edges:
        adj[u, v] = adj[v, u] = True
    vs = np.repeat(np.arange(size), 3)
    cs = np.tile(np.arange(3), size)
    v1, v2 = vs[:, None], vs[None, :]
    c1, c2 = cs[:, None], cs[None, :]
    same_vertex = (v1 == v2) & (c1 != c2)
    edge_hit = adj[np.minimum(v1, v2), np.maximum(v1, v2)] & (c1 == c2)
    table = ~(same_vertex | edge_hit)
    table.setflags(write=False)
    return table


def _uniformity_reject_probability(r1: PureState) -> float:
    color0, _ = uniformity_measure(r1, "color")
    if color0.post_state is None:
        return 0.0
    _, node1 = uniformity_measure(color0.post_state, "node")
    return color0.probability * node1.probability


def acceptance_exact(c: SuccinctCircuit, r1: PureState, r2: PureState) -> VerdictReport:
    """Exact acceptance probabilities of the three tests and their mixture."""
    _check_proof_shape(c, r1, "r1")
    _check_proof_shape(c, r2, "r2")
    p_eq = swap_test(r1, r2, mode="closed_form")
    p = computational_distribution(r1).reshape(-1)
    q = computational_distribution(r2).reshape(-1)
    accept = consistency_accept_table(c)
    p_cons = float(p @ accept @ q)
    p_unif = 1.0 - _uniformity_reject_probability(r1)
    total = (p_eq + p_cons + p_unif) / 3.0
    return VerdictReport(p_eq, p_cons, p_unif, total)


def run_sampled(c: SuccinctCircuit, r1: PureState, r2: PureState,
                rng: np.random.Generator) -> tuple[bool, dict]:
    """One verifier run: pick a test uniformly, sample its measurement
    outcomes from the exact branch distributions, return (accept, log)."""
    _check_proof_shape(c, r1, "r1")
    _check_proof_shape(c, r2, "r2")
    test = ("equality", "consistency", "uniformity")[rng.integers(3)]
    log: dict = {"test": test}
    if test == "equality":
        p_eq = swap_test(r1, r2, mode="closed_form")
        outcome = int(rng.random() >= p_eq)      # ancilla 0 accepts
        log["ancilla"] = outcome
        accept = outcome == 0
    elif test == "consistency":
        size = 2 ** c.n
        accept_table = consistency_accept_table(c)
        o1 = int(rng.choice(3 * size, p=computational_distribution(r1).reshape(-1)))
        o2 = int(rng.choice(3 * size, p=computational_distribution(r2).reshape(-1)))
        log.update(v1=o1 // 3, c1=o1 % 3, v2=o2 // 3, c2=o2 % 3)
        accept = bool(accept_table[o1, o2])
    else:
        color0, _ = uniformity_measure(r1, "color")
        x = int(rng.random() >= color0.probability)
        log["color_outcome"] = x
        if x == 0:
            _, node1 = uniformity_measure(color0.post_state, "node")
            y = int(rng.random() < node1.probability)
            log["node_outcome"] = y
            accept = y == 0
        else:
            accept = True
    log["accept"] = accept
    return accept, log


def report_dict(c: SuccinctCircuit, report: VerdictReport, *, instance: str,
                strategy: str, seed: int | None = None) -> dict:
    """Assemble the serializable run report, published floor included."""
    out = {"instance": instance, "n": c.n, "strategy": strategy, "seed": seed,
           "paper_soundness_floor": soundness_bound(c.n)}
    out.update(report.to_dict())
    return out


__all__ = ["VerdictReport", "acceptance_exact", "run_sampled", "soundness_bound",
           "consistency_accept_table", "report_dict"]
