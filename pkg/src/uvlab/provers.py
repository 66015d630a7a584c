"""Proof-state construction: honest provers, engineered cheats, and the
amplitude decomposition used throughout the soundness analysis.

A proof for an instance with n-bit vertex labels lives on two registers,
a node register of dimension 2^n and a color register of dimension 3.  The
honest proof for a coloring c is

    (1 / sqrt(2^n)) * sum_i |i>|c(i)>,

with vertices outside the graph padded by color 0.  Any node (x) color state
factors row-wise as amplitudes alpha_i on nodes and conditional unit rows
beta_{i,j} on colors; that view drives all the soundness lemmas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ShapeMismatchError
from .sgraph import Coloring, SuccinctCircuit, expand
from .states import PureState, RegisterShape, uniformity_measure

#: Convention for decomposition rows with alpha_i = 0: the conditional color
#: row is undefined, stored as (1, 0, ...) and never read on such rows.
ZERO_ROW = "unit-first"


def proof_shape(n: int) -> RegisterShape:
    """node (x) color register shape for n-bit vertex labels."""
    return RegisterShape.of((2 ** n, 3), ("node", "color"))


@dataclass(frozen=True)
class ProofDecomposition:
    """Row decomposition amps[i, j] = alpha[i] * beta[i, j].

    alpha carries the node marginal (real, nonnegative by convention; any
    phase lives in beta), each beta row is a unit vector, and gamma
    optionally stores post-measurement node amplitudes produced by
    :func:`color_branch_node_amplitudes`.
    """

    alpha: np.ndarray
    beta: np.ndarray
    gamma: np.ndarray | None = None

    def node_probabilities(self) -> np.ndarray:
        return np.abs(self.alpha) ** 2


def decompose(state: PureState) -> ProofDecomposition:
    """Split a two-register state into node amplitudes and color rows."""
    if len(state.shape.dims) != 2:
        raise ShapeMismatchError(
            f"decompose needs a node (x) color state, got dims {state.shape.dims}")
    t = state.tensor_view()
    alpha = np.linalg.norm(t, axis=1)
    beta = np.zeros_like(t)
    nz = alpha > 0
    beta[nz] = t[nz] / alpha[nz, None]
    beta[~nz, 0] = 1.0
    return ProofDecomposition(alpha.astype(np.complex128), beta)


def reconstruct(d: ProofDecomposition, labels=("node", "color")) -> PureState:
    """Inverse of :func:`decompose` up to the zero-row convention."""
    t = d.alpha[:, None] * d.beta
    shape = RegisterShape.of(t.shape, labels)
    return PureState(shape, t.reshape(-1))


def color_branch_node_amplitudes(state: PureState) -> tuple[float, np.ndarray]:
    """Probability of color-register outcome 0 under the uniformity
    measurement, and the node amplitudes of the renormalized post state."""
    b0, _ = uniformity_measure(state, "color")
    if b0.post_state is None:
        return 0.0, np.zeros(state.shape.dims[0], dtype=np.complex128)
    post = b0.post_state.tensor_view()
    # post factors as xi (x) u_3; contract the color axis to recover xi
    gamma = post.sum(axis=1) / math.sqrt(post.shape[1])
    return b0.probability, gamma


def honest_proof(c: SuccinctCircuit, col: Coloring) -> PureState:
    """Honest proof state for a coloring, color-0 padding included."""
    n = c.n
    ext = col.extended(n)
    t = np.zeros((2 ** n, 3), dtype=np.complex128)
    t[np.arange(2 ** n), ext] = 1.0 / math.sqrt(2 ** n)
    return PureState(proof_shape(n), t.reshape(-1))


def near_coloring_proof(c: SuccinctCircuit, col: Coloring, violations: int = 1) -> PureState:
    """Honest-form state built from a flawed coloring.

    The coloring must violate exactly ``violations`` edges of the expanded
    graph (checked); the canonical cheat uses a single inconsistent pair.
    """
    bad = col.monochromatic_edges(expand(c))
    if len(bad) != violations:
        raise ValueError(
            f"coloring violates {len(bad)} edges ({bad}), declared {violations}")
    return honest_proof(c, col)


def haar_state(shape: RegisterShape, rng: np.random.Generator) -> PureState:
    """Haar-random state on the full space of the shape, via a normalized
    complex-Gaussian vector."""
    z = rng.standard_normal(shape.total) + 1j * rng.standard_normal(shape.total)
    return PureState(shape, z / np.linalg.norm(z))


def random_product_proofs(shape: RegisterShape, k: int, seed: int) -> list[PureState]:
    """k independent Haar-random proofs, one per proof register; the joint
    input is their product.  Reproducible from the 64-bit seed."""
    rng = np.random.default_rng(seed)
    return [haar_state(shape, rng) for _ in range(k)]


@dataclass(frozen=True)
class ProverStrategy:
    """A named way of producing the k proof states for an instance.

    kind: ``honest`` (needs a valid coloring), ``near_coloring`` (needs a
    flawed coloring plus its violation count), ``arbitrary`` (explicit
    states), or ``random`` (needs a seed).
    """

    kind: str
    coloring: Coloring | None = None
    violations: int = 1
    seed: int | None = None
    states_override: tuple[PureState, ...] = ()

    def states(self, c: SuccinctCircuit, k: int) -> list[PureState]:
        if self.kind == "honest":
            if self.coloring is None or not self.coloring.is_valid_for(expand(c)):
                raise ValueError("honest strategy requires a valid coloring")
            return [honest_proof(c, self.coloring)] * k
        if self.kind == "near_coloring":
            if self.coloring is None:
                raise ValueError("near_coloring strategy requires a coloring")
            return [near_coloring_proof(c, self.coloring, self.violations)] * k
        if self.kind == "random":
            if self.seed is None:
                raise ValueError("random strategy requires a seed")
            return random_product_proofs(proof_shape(c.n), k, self.seed)
        if self.kind == "arbitrary":
            if not self.states_override:
                raise ValueError("arbitrary strategy requires explicit states")
            reps = (k + len(self.states_override) - 1) // len(self.states_override)
            return list((self.states_override * reps)[:k])
        raise ValueError(f"unknown strategy kind {self.kind!r}")
