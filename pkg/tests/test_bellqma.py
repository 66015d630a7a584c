import itertools
import math

import numpy as np
import pytest

from uvlab import bellqma, corpus
from uvlab.errors import BudgetError
from uvlab.provers import (haar_state, honest_proof, near_coloring_proof,
                           proof_shape, random_product_proofs)
from uvlab.qma2 import acceptance_exact
from uvlab.sgraph import Coloring, expand
from uvlab.states import PureState, basis_state


def binom_tail_at_least(k, p, thr):
    return sum(math.comb(k, z) * p ** z * (1 - p) ** (k - z) for z in range(thr, k + 1))


def dark_state(n=2):
    """Color row exactly orthogonal to the uniform superposition."""
    w = np.exp(2j * math.pi / 3)
    t = np.zeros((2 ** n, 3), dtype=np.complex128)
    t[0] = np.array([1.0, w, w ** 2]) / math.sqrt(3)
    return PureState(proof_shape(n), t.reshape(-1))


class TestUniformityDP:
    def test_honest_stats(self, k3, k3_coloring):
        h = honest_proof(k3, k3_coloring)
        a, b, c = bellqma.uniformity_stats(h)
        assert abs(a - 2 / 3) < 1e-12
        assert abs(b - 1 / 3) < 1e-12
        assert abs(c) < 1e-12

    def test_honest_matches_binomial_tail(self, k3, k3_coloring):
        h = honest_proof(k3, k3_coloring)
        for k in (6, 12, 30, 60):
            got = bellqma.uniformity_accept_exact([h] * k)
            want = binom_tail_at_least(k, 1 / 3, bellqma.z_threshold(k))
            assert abs(got - want) < 1e-10

    def test_k12_rejection_formula(self, k3, k3_coloring):
        h = honest_proof(k3, k3_coloring)
        rejection = 1 - bellqma.uniformity_accept_exact([h] * 12)
        want = (2 / 3) ** 12 + 12 * (1 / 3) * (2 / 3) ** 11
        assert abs(rejection - want) < 1e-12

    def test_all_x1_never_accepts(self):
        proofs = [dark_state()] * 10
        assert bellqma.uniformity_accept_exact(proofs) == 0.0

    def test_threshold_tie_accepts(self, k3, k3_coloring):
        # k=12: reject iff |Z| < 2, so exactly 2 must count as accepted
        h = honest_proof(k3, k3_coloring)
        dist = bellqma.z_distribution([h] * 12)
        accept = bellqma.uniformity_accept_exact([h] * 12)
        assert abs(accept - dist[2:].sum()) < 1e-12

    def test_honest_mean_z_is_k_over_3(self, k3, k3_coloring):
        h = honest_proof(k3, k3_coloring)
        k = 30
        dist = bellqma.z_distribution([h] * k)
        mean = float(np.arange(k + 1) @ dist)
        assert abs(mean - k / 3) < 1e-9


class TestZPrime:
    def test_honest_all_registers(self, k3, k3_coloring):
        h = honest_proof(k3, k3_coloring)
        assert bellqma.z_prime_set([h] * 7) == list(range(7))

    def test_basis_proofs_included(self):
        # |<u_3|j>|^2 = 1/3 >= 1/12 for a deterministic color j
        b = basis_state(proof_shape(2), (1, 2))
        assert bellqma.z_prime_set([b, b]) == [0, 1]

    def test_engineered_orthogonal_color_excluded(self):
        assert bellqma.z_prime_set([dark_state(), dark_state()]) == []


class TestConsistency:
    def test_honest_exact_one_any_k(self, k3, k3_coloring):
        h = honest_proof(k3, k3_coloring)
        for k in (2, 5, 240):
            assert bellqma.consistency_accept(k3, [h] * k, "exact") == 1.0

    def test_k2_matches_two_proof_grid(self, k4, rng):
        for _ in range(20):
            r1, r2 = (haar_state(proof_shape(2), rng) for _ in range(2))
            via_pair = acceptance_exact(k4, r1, r2).p_consistency
            via_bell = bellqma.consistency_accept(k4, [r1, r2], "exact")
            assert abs(via_pair - via_bell) < 1e-12

    def test_k4_cheat_matches_enumeration(self, k4):
        cheat = near_coloring_proof(k4, Coloring((0, 1, 2, 0)))
        got = bellqma.consistency_accept(k4, [cheat] * 4, "exact")
        # independent oracle: loop over all outcome tuples of 4 registers
        col = (0, 1, 2, 0)
        edges = set(expand(k4).edges)
        accept = 0.0
        for vs in itertools.product(range(4), repeat=4):
            ok = True
            for i in range(4):
                for j in range(i + 1, 4):
                    vi, vj = vs[i], vs[j]
                    ci, cj = col[vi], col[vj]
                    if vi == vj and ci != cj:
                        ok = False
                    lo, hi = min(vi, vj), max(vi, vj)
                    if lo != hi and (lo, hi) in edges and ci == cj:
                        ok = False
            if ok:
                accept += (1 / 4) ** 4
        assert abs(got - accept) < 1e-12

    def test_budget_error_directs_to_mc(self, k4, rng):
        proofs = random_product_proofs(proof_shape(2), 12, seed=2)
        with pytest.raises(BudgetError, match="Monte-Carlo"):
            bellqma.consistency_accept(k4, proofs, "exact")

    def test_env_var_overrides_budget(self, k4, monkeypatch):
        proofs = random_product_proofs(proof_shape(2), 3, seed=2)
        monkeypatch.setenv("UVLAB_BUDGET", "10")
        with pytest.raises(BudgetError):
            bellqma.consistency_accept(k4, proofs, "exact")
        monkeypatch.delenv("UVLAB_BUDGET")
        assert 0 <= bellqma.consistency_accept(k4, proofs, "exact") <= 1

    def test_mc_needs_samples_and_seed(self, k4):
        proofs = random_product_proofs(proof_shape(2), 3, seed=2)
        with pytest.raises(ValueError, match="samples"):
            bellqma.consistency_accept(k4, proofs, "mc")

    def test_mc_agrees_with_exact(self, k4):
        proofs = random_product_proofs(proof_shape(2), 4, seed=6)
        exact = bellqma.consistency_accept(k4, proofs, "exact")
        est, hw = bellqma.consistency_accept(k4, proofs, "mc",
                                             samples=40000, seed=3)
        assert abs(est - exact) <= hw


class TestAcceptance:
    def test_honest_completeness_floor(self, k3, k3_coloring):
        h = honest_proof(k3, k3_coloring)
        for k in (60, 120, 240):
            rep = bellqma.acceptance(k3, [h] * k, mode="exact")
            assert rep.p_total >= 1 - 2.0 ** (-k / 40)
            assert abs(rep.p_total - (rep.p_consistency + rep.p_uniformity) / 2) < 1e-12

    def test_basis_on_non_edge_pair(self):
        c5 = corpus.load("c5_n3")
        edges = set(expand(c5).edges)
        assert (0, 2) not in edges
        p1 = basis_state(proof_shape(3), (0, 1))
        p2 = basis_state(proof_shape(3), (2, 1))
        rep = bellqma.acceptance(c5, [p1, p2], mode="exact")
        assert rep.p_consistency == 1.0
        # per-register stats a=2/3, b=(1/3)2^-n; threshold ceil(2/6)=1
        a, b = 2 / 3, (1 / 3) * 2.0 ** (-3)
        assert abs(rep.p_uniformity - (b * b + 2 * a * b)) < 1e-12

    def test_mc_report_fields(self, k4):
        cheat = near_coloring_proof(k4, Coloring((0, 1, 2, 0)))
        rep = bellqma.acceptance(k4, [cheat] * 20, mode="mc", samples=5000, seed=11)
        assert rep.mode == "montecarlo"
        assert rep.samples == 5000 and rep.seed == 11
        assert rep.ci_halfwidth is not None and rep.z_tail is not None
        d = rep.to_dict()
        assert {"p_cons", "p_unif", "p_total", "mode", "k", "samples",
                "seed", "ci_halfwidth", "z_tail"} <= set(d)


class TestChernoff:
    def test_exact_tail_below_published_bound(self, k3, k3_coloring):
        h = honest_proof(k3, k3_coloring)
        for k in range(12, 241, 12):
            tail = bellqma.z_tail_below_threshold([h] * k)
            assert tail <= math.exp(-k / 48)


class TestSoundnessAcrossWidths:
    def test_every_no_instance_rejects_at_floor(self):
        # rejection floor 4^-n / 12000 at k = 120 n, for each bundled
        # non-3-colorable instance; cheat analyzed exactly, random by MC
        for name, entry in corpus.manifest().items():
            if entry["colorable"]:
                continue
            c = corpus.load(name)
            n = c.n
            k = bellqma.default_k(n)
            floor = 4.0 ** (-n) / 12000.0
            cheat = near_coloring_proof(c, Coloring((0, 1, 2, 0)))
            rep = bellqma.acceptance(c, [cheat] * k, mode="mc",
                                     samples=200_000, seed=31)
            # the cheat's consistency rejection is exactly the chance that
            # both endpoints of the bad edge {0,3} show up among k draws
            q = 1 - 2.0 ** (-n)
            exact_cons = 2 * q ** k - (2 * q - 1) ** k
            assert abs(rep.p_consistency - exact_cons) <= 2 * rep.ci_halfwidth
            assert (1 - rep.p_total) - rep.ci_halfwidth >= floor, name
            rand = random_product_proofs(proof_shape(n), k, seed=77)
            rep = bellqma.acceptance(c, rand, mode="mc",
                                     samples=200_000, seed=32)
            assert (1 - rep.p_total) - rep.ci_halfwidth >= floor, name
