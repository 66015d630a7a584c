"""Acceptance operator of the two-proof verifier and prover optimization.

The verifier's verdict on a joint (possibly entangled) input is the
expectation of a Hermitian operator A on the doubled proof space:

    A = (A_eq + A_cons + A_unif) / 3,
    A_eq   = (I + SWAP_{R1 R2}) / 2,
    A_cons = diagonal 0/1 table of accepting outcome pairs,
    A_unif = I - (node complement projector (x) color uniform projector) on R1.

Its largest eigenvalue is the best acceptance over all joint states, i.e.
the entangled optimum; a certified upper bound for everything a pair of
unentangled provers can reach.  The seesaw heuristic searches the product
states themselves: fixing one register, the optimal other register is the
top eigenvector of the partially contracted operator, so alternating
eigenvector steps never decrease the value.

Dimension cap: the operator is dense over (3 * 2^n)^2, so n <= 4.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError
from .provers import proof_shape
from .qma2 import consistency_accept_table
from .sgraph import SuccinctCircuit
from .states import PureState

MAX_OPERATOR_N = 4
HERMITIAN_TOL = 1e-10
CONVERGENCE_TOL = 1e-12
DEFAULT_RESTARTS = 50
DEFAULT_ITERS = 500


@dataclass(frozen=True)
class AcceptanceOperator:
    matrix: np.ndarray = field(repr=False)
    instance: str = ""
    verifier: str = "two-proof"

    @property
    def proof_dim(self) -> int:
        return int(round(self.matrix.shape[0] ** 0.5))


@dataclass(frozen=True)
class SeesawResult:
    states: tuple[PureState, PureState]
    value: float
    iterations: int
    restarts: int
    seed: int
    trace: tuple[float, ...] = field(repr=False)


def build_acceptance_operator(c: SuccinctCircuit, instance: str = "") -> AcceptanceOperator:
    """Dense Hermitian acceptance operator over (node, color) x 2."""
    if c.n > MAX_OPERATOR_N:
        raise CapacityError(f"operator construction needs n <= {MAX_OPERATOR_N}")
    size = 2 ** c.n
    d = 3 * size
    d2 = d * d

    accept_diag = consistency_accept_table(c).reshape(-1).astype(np.float64)
    a_cons = np.diag(accept_diag)

    swap = np.zeros((d2, d2))
    a = np.arange(d2) // d
    b = np.arange(d2) % d
    swap[b * d + a, a * d + b] = 1.0
    a_eq = 0.5 * (np.eye(d2) + swap)

    p0_color = np.full((3, 3), 1.0 / 3.0)
    p0_node = np.full((size, size), 1.0 / size)
    reject_r1 = np.kron(np.eye(size) - p0_node, p0_color)
    a_unif = np.eye(d2) - np.kron(reject_r1, np.eye(d))

    matrix = ((a_eq + a_cons + a_unif) / 3.0).astype(np.complex128)
    return AcceptanceOperator(matrix, instance=instance)


def _as_matrix(op) -> np.ndarray:
    return op.matrix if isinstance(op, AcceptanceOperator) else np.asarray(op)


def spectral_norm(op) -> float:
    """Largest eigenvalue of a Hermitian operator (full symmetric solve)."""
    m = _as_matrix(op)
    if np.linalg.norm(m - m.conj().T, np.inf) > HERMITIAN_TOL:
        raise ValueError("operator is not Hermitian within 1e-10")
    return float(np.linalg.eigvalsh(m)[-1])


def power_iteration_norm(op, iters: int = 10 ** 4, seed: int = 0) -> float:
    """Largest eigenvalue by power iteration on A + I (all eigenvalues of
    the shifted operator are positive, so no sign ambiguity).  Cross-check
    for the eigensolver, not the primary path."""
    m = _as_matrix(op)
    n = m.shape[0]
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    v /= np.linalg.norm(v)
    shifted = m + np.eye(n)
    last = 0.0
    for _ in range(iters):
        w = shifted @ v
        nrm = np.linalg.norm(w)
        v = w / nrm
        val = float(np.real(np.vdot(v, shifted @ v)))
        if abs(val - last) < 1e-15:
            break
        last = val
    return last - 1.0


def product_value(op, r1: PureState | np.ndarray, r2: PureState | np.ndarray) -> float:
    """<r1 (x) r2 | A | r1 (x) r2>."""
    m = _as_matrix(op)
    x = r1.amps if isinstance(r1, PureState) else np.asarray(r1).reshape(-1)
    y = r2.amps if isinstance(r2, PureState) else np.asarray(r2).reshape(-1)
    joint = np.kron(x, y)
    return float(np.real(np.vdot(joint, m @ joint)))


def _top_eigvec(m: np.ndarray) -> tuple[np.ndarray, float]:
    vals, vecs = np.linalg.eigh(m)
    return vecs[:, -1], float(vals[-1])


def seesaw(op, restarts: int = DEFAULT_RESTARTS, iters: int = DEFAULT_ITERS,
           seed: int = 0, init_states: tuple | None = None) -> SeesawResult:
    """Alternating eigenvector maximization over the two proof registers.

    Haar-random restarts plus an optional caller-supplied initialization
    (e.g. an honest proof pair).  The per-iteration value trace is
    monotone; the best pair over all restarts is returned.  Deterministic
    for a fixed seed.
    """
    m = _as_matrix(op)
    d2 = m.shape[0]
    d = int(round(d2 ** 0.5))
    a4 = m.reshape(d, d, d, d)
    rng = np.random.default_rng(seed)
    n = int(round(np.log2(d / 3)))
    shape = proof_shape(n)

    def run(x, y):
        trace = []
        val = product_value(m, x, y)
        for it in range(iters):
            m1 = np.einsum("acbd,c,d->ab", a4, np.conj(y), y)
            x, _ = _top_eigvec(m1)
            m2 = np.einsum("acbd,a,b->cd", a4, np.conj(x), x)
            y, new = _top_eigvec(m2)
            trace.append(new)
            if abs(new - val) < CONVERGENCE_TOL:
                return x, y, new, it + 1, trace
            val = new
        return x, y, val, iters, trace

    starts = []
    if init_states is not None:
        s1, s2 = init_states
        starts.append((np.array(s1.amps if isinstance(s1, PureState) else s1),
                       np.array(s2.amps if isinstance(s2, PureState) else s2)))
    for _ in range(restarts):
        x = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        y = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        starts.append((x / np.linalg.norm(x), y / np.linalg.norm(y)))

    best = None
    for x0, y0 in starts:
        x, y, val, its, trace = run(x0, y0)
        if best is None or val > best[2]:
            best = (x, y, val, its, trace)
    x, y, val, its, trace = best
    return SeesawResult((PureState(shape, x), PureState(shape, y)),
                        float(val), its, restarts, seed, tuple(trace))
