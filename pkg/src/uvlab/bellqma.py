"""k-proof verifier restricted to separate, non-adaptive measurements.

Every proof register is measured up front and a classical computation on
the outcomes decides; the implementation enforces this shape by only ever
computing per-register outcome distributions, never a joint state.

With probability 1/2 each:

* Consistency: measure every proof in the computational basis and reject
  if any pair of outcomes shows the same vertex with two colors or an edge
  with one color.
* Uniformity: measure each color register (outcome x_i) then each node
  register (outcome y_i) against the uniform-superposition projector; let
  Z = {i : x_i = 0}.  Reject if |Z| < k/6 (a tie at exactly k/6 accepts),
  or if y_i = 1 for some i in Z.

Per register the uniformity branch splits three ways: x_i = 1 (weight a_i),
x_i = 0 and y_i = 0 (weight b_i), and the always-rejecting x_i = 0, y_i = 1
(weight c_i); the acceptance probability is an exact dynamic program over
these weights, polynomial in k.

Exact consistency enumerates the joint outcome grid only while the number
of tuples fits the budget (default 10^7, overridable via the UVLAB_BUDGET
environment variable); an all-accepting support short-circuits to exactly
1 without enumeration.  Past the budget, Monte-Carlo mode samples outcome
tuples and reports a 99% Hoeffding half-width.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from .errors import BudgetError, ShapeMismatchError
from .sgraph import SuccinctCircuit, expand
from .states import PureState, computational_distribution, uniformity_measure

DEFAULT_BUDGET = 10 ** 7
MC_CONFIDENCE = 0.99
Z_PRIME_THRESHOLD = 1.0 / 12.0


def default_k(n: int) -> int:
    """Proof count 120 n used by the soundness gap arithmetic."""
    return 120 * n


def enumeration_budget() -> int:
    return int(os.environ.get("UVLAB_BUDGET", DEFAULT_BUDGET))


@dataclass(frozen=True)
class BellReport:
    p_consistency: float
    p_uniformity: float
    p_total: float
    mode: str
    k: int
    samples: int | None = None
    seed: int | None = None
    ci_halfwidth: float | None = None    # on p_total; only the consistency
    z_tail: float | None = None          # term is estimated, so hw_cons / 2
    z_distribution: tuple[float, ...] | None = None

    def to_dict(self) -> dict:
        return {"p_cons": self.p_consistency, "p_unif": self.p_uniformity,
                "p_total": self.p_total, "mode": self.mode, "k": self.k,
                "samples": self.samples, "seed": self.seed,
                "ci_halfwidth": self.ci_halfwidth, "z_tail": self.z_tail}


def _check_proofs(c: SuccinctCircuit, proofs):
    want = (2 ** c.n, 3)
    for i, p in enumerate(proofs):
        if p.shape.dims != want:
            raise ShapeMismatchError(f"proof {i} has dims {p.shape.dims}, expected {want}")


def uniformity_stats(state: PureState) -> tuple[float, float, float]:
    """(a, b, c) = Pr[x=1], Pr[x=0, y=0], Pr[x=0, y=1] for one register."""
    color0, color1 = uniformity_measure(state, "color")
    a = color1.probability
    if color0.post_state is None:
        return a, 0.0, 0.0
    node0, node1 = uniformity_measure(color0.post_state, "node")
    return a, color0.probability * node0.probability, color0.probability * node1.probability


def z_threshold(k: int) -> int:
    """Smallest |Z| that passes the |Z| < k/6 rejection."""
    return math.ceil(k / 6)


def uniformity_accept_exact(proofs, k_threshold: int | None = None) -> float:
    """Exact uniformity acceptance via a Poisson-binomial-style DP.

    Register i contributes a_i when left out of Z, b_i when in Z with a
    passing node outcome; any c_i event rejects, so the DP simply drops
    that weight.  Acceptance sums the DP mass at |Z| >= ceil(k/6).
    """
    k = len(proofs)
    thr = z_threshold(k) if k_threshold is None else k_threshold
    f = np.zeros(k + 1)
    f[0] = 1.0
    for state in proofs:
        a, b, _ = uniformity_stats(state)
        f[1:] = f[1:] * a + f[:-1] * b
        f[0] *= a
    return float(f[thr:].sum())


def z_distribution(proofs) -> np.ndarray:
    """Exact PMF of |Z| (the count of color outcomes 0) over the k proofs."""
    k = len(proofs)
    f = np.zeros(k + 1)
    f[0] = 1.0
    for state in proofs:
        a, b, cc = uniformity_stats(state)
        p0 = b + cc
        f[1:] = f[1:] * (1 - p0) + f[:-1] * p0
        f[0] *= 1 - p0
    return f


def z_tail_below_threshold(proofs) -> float:
    """Exact Pr[|Z| < k/6]."""
    return float(z_distribution(proofs)[: z_threshold(len(proofs))].sum())


def z_prime_set(proofs) -> list[int]:
    """Registers whose color measurement yields 0 with probability >= 1/12."""
    out = []
    for i, state in enumerate(proofs):
        a, b, cc = uniformity_stats(state)
        if b + cc >= Z_PRIME_THRESHOLD:
            out.append(i)
    return out


def _pair_reject_table(c: SuccinctCircuit) -> np.ndarray:
    """reject[(v1,c1),(v2,c2)] for one ordered pair of register outcomes."""
    size = 2 ** c.n
    adj = np.zeros((size, size), dtype=bool)
    for u, v in expand(c).edges:
        adj[u, v] = adj[v, u] = True
    vs = np.repeat(np.arange(size), 3)
    cs = np.tile(np.arange(3), size)
    v1, v2 = vs[:, None], vs[None, :]
    c1, c2 = cs[:, None], cs[None, :]
    return ((v1 == v2) & (c1 != c2)) | (
        adj[np.minimum(v1, v2), np.maximum(v1, v2)] & (c1 == c2))


def _register_distributions(proofs) -> np.ndarray:
    return np.stack([computational_distribution(p).reshape(-1) for p in proofs])


def _support_all_accepting(dists: np.ndarray, reject: np.ndarray) -> bool:
    """True iff no pair of registers can produce a rejecting outcome pair,
    in which case the exact consistency acceptance is 1 regardless of k.

    Registers are grouped by identical support so the honest case (k equal
    states) costs one table lookup, not k^2.
    """
    counts: dict[tuple, int] = {}
    for row in dists:
        key = tuple(np.nonzero(row > 0.0)[0])
        counts[key] = counts.get(key, 0) + 1
    classes = list(counts)
    for i, si in enumerate(classes):
        for sj in classes[i:]:
            if si == sj and counts[si] < 2:
                continue
            if reject[np.ix_(si, sj)].any():
                return False
    return True


def _consistency_exact(dists: np.ndarray, reject: np.ndarray, budget: int) -> float:
    k, d = dists.shape
    if _support_all_accepting(dists, reject):
        return 1.0
    if d ** k > budget:
        raise BudgetError(
            f"{d}^{k} joint outcomes exceed the budget {budget}; "
            "use Monte-Carlo mode")
    joint = dists[0]
    for i in range(1, k):
        joint = np.multiply.outer(joint, dists[i])
    bad = np.zeros((d,) * k, dtype=bool)
    for i in range(k):
        for j in range(i + 1, k):
            view = reject.reshape((d, d) + (1,) * (k - 2))
            bad |= np.moveaxis(view, (0, 1), (i, j))
    return float(joint[~bad].sum())


def _consistency_monte_carlo(dists: np.ndarray, edges, size: int,
                             samples: int, seed: int,
                             batch: int = 50_000) -> tuple[float, float]:
    """Sample outcome tuples register-by-register and apply the pairwise
    predicate via a per-sample vertex/color presence table."""
    k = dists.shape[0]
    cdfs = np.cumsum(dists, axis=1)
    rng = np.random.default_rng(seed)
    rejected = 0
    done = 0
    while done < samples:
        b = min(batch, samples - done)
        pres = np.zeros((b, size, 3), dtype=bool)
        rows = np.arange(b)
        for i in range(k):
            out = np.searchsorted(cdfs[i], rng.random(b), side="right")
            np.clip(out, 0, dists.shape[1] - 1, out=out)
            pres[rows, out // 3, out % 3] = True
        ncolors = pres.sum(axis=2)
        bad = (ncolors >= 2).any(axis=1)
        for u, v in edges:
            bad |= (pres[:, u, :] & pres[:, v, :]).any(axis=1)
        rejected += int(bad.sum())
        done += b
    p_accept = 1.0 - rejected / samples
    halfwidth = math.sqrt(math.log(2.0 / (1.0 - MC_CONFIDENCE)) / (2.0 * samples))
    return p_accept, halfwidth


def consistency_accept(c: SuccinctCircuit, proofs, mode: str = "exact",
                       samples: int | None = None, seed: int | None = None,
                       budget: int | None = None):
    """Consistency-test acceptance probability over all register pairs.

    Exact mode returns a float; Monte-Carlo mode returns (estimate,
    halfwidth) and requires both a sample count and a seed.
    """
    _check_proofs(c, proofs)
    dists = _register_distributions(proofs)
    if mode == "exact":
        return _consistency_exact(dists, _pair_reject_table(c),
                                  enumeration_budget() if budget is None else budget)
    if mode != "mc":
        raise ValueError(f"unknown consistency mode {mode!r}")
    if not samples or seed is None:
        raise ValueError("Monte-Carlo mode requires samples and seed")
    return _consistency_monte_carlo(dists, sorted(expand(c).edges),
                                    2 ** c.n, samples, seed)


def acceptance(c: SuccinctCircuit, proofs, mode: str = "exact",
               samples: int | None = None, seed: int | None = None,
               budget: int | None = None) -> BellReport:
    """Half-half mixture of the consistency and uniformity tests."""
    _check_proofs(c, proofs)
    k = len(proofs)
    p_unif = uniformity_accept_exact(proofs)
    zdist = tuple(float(p) for p in z_distribution(proofs))
    ztail = float(sum(zdist[: z_threshold(k)]))
    if mode == "exact":
        p_cons = consistency_accept(c, proofs, "exact", budget=budget)
        return BellReport(p_cons, p_unif, (p_cons + p_unif) / 2.0, "exact", k,
                          z_tail=ztail, z_distribution=zdist)
    p_cons, hw = consistency_accept(c, proofs, "mc", samples=samples, seed=seed)
    return BellReport(p_cons, p_unif, (p_cons + p_unif) / 2.0, "montecarlo", k,
                      samples=samples, seed=seed, ci_halfwidth=hw / 2.0,
                      z_tail=ztail, z_distribution=zdist)
