import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.linalg import expm

from ising_qpd import quantum_game as qg
from ising_qpd.errors import DomainError
from ising_qpd.quantum_game import General, PDPayoffs, Strategy

PD = PDPayoffs(3, 0, 5, 1)
CCX = np.array([1, 0, 0, 0], dtype=complex)
gammas = st.floats(min_value=0.0, max_value=math.pi / 2)
deltas = st.floats(min_value=0.0, max_value=math.pi)
phases = st.floats(min_value=0.0, max_value=math.pi / 2)
ALL_OPS = [Strategy.COOPERATE, Strategy.DEFECT, Strategy.QUANTUM]


def oracle_state(gamma, ua, ub):
    """Entangler built as exp(-i gamma/2 Y x Y), independent of entangling_gate."""
    y = np.array([[0, 1], [-1, 0]], dtype=complex)
    j = expm(-0.5j * gamma * np.kron(y, y))
    return j.conj().T @ np.kron(ua, ub) @ j @ CCX


def oracle_payoff_a(gamma, ua, ub, p=PD):
    pcc, pcd, pdc, pdd = np.abs(oracle_state(gamma, ua, ub)) ** 2
    return p.x * pcc + p.y * pcd + p.z * pdc + p.w * pdd


class TestGates:
    def test_identity_at_zero(self):
        np.testing.assert_array_equal(qg.entangling_gate(0.0), np.eye(4))

    def test_maximal_entanglement_of_cc(self):
        out = qg.entangling_gate(math.pi / 2) @ CCX
        np.testing.assert_allclose(out, np.array([1, 0, 0, -1j]) / math.sqrt(2), atol=1e-15)

    @given(gammas)
    def test_unitary_and_matches_exponential(self, g):
        j = qg.entangling_gate(g)
        np.testing.assert_allclose(j.conj().T @ j, np.eye(4), atol=1e-12)
        y = np.array([[0, 1], [-1, 0]])
        np.testing.assert_allclose(j, expm(-0.5j * g * np.kron(y, y)), atol=1e-12)

    @pytest.mark.parametrize("g", [-0.1, math.pi / 2 + 1e-3, float("nan")])
    def test_domain(self, g):
        with pytest.raises(DomainError):
            qg.entangling_gate(g)

    def test_rounded_half_pi_is_clamped(self):
        np.testing.assert_array_equal(qg.entangling_gate(1.5708), qg.entangling_gate(math.pi / 2))


class TestStrategies:
    def test_cooperate(self):
        np.testing.assert_array_equal(qg.strategy_unitary(Strategy.COOPERATE), np.eye(2))

    def test_quantum_is_general_0_half_pi(self):
        np.testing.assert_allclose(qg.strategy_unitary(General(0.0, math.pi / 2)),
                                   np.diag([1j, -1j]), atol=1e-15)
        np.testing.assert_array_equal(qg.strategy_unitary(Strategy.QUANTUM), np.diag([1j, -1j]))

    def test_defect_is_general_pi_0(self):
        np.testing.assert_array_equal(qg.strategy_unitary(Strategy.DEFECT), [[0, 1], [-1, 0]])
        np.testing.assert_allclose(qg.strategy_unitary(General(math.pi, 0.0)),
                                   [[0, 1], [-1, 0]], atol=1e-15)

    def test_sigma_x_defect_breaks_the_table(self):
        # sigma_x differs from U(pi, 0) by a relative phase that Q can see: with it,
        # (Q, D) stays at y and (D, Q) at z for every gamma
        g = 0.9
        sx = qg.SIGMA_X
        q = qg.strategy_unitary(Strategy.QUANTUM)
        table = qg.closed_form_table(g, PD)
        assert oracle_payoff_a(g, q, sx) == pytest.approx(PD.y, abs=1e-12)
        assert oracle_payoff_a(g, sx, q) == pytest.approx(PD.z, abs=1e-12)
        assert abs(table[2, 1] - PD.y) > 1.0

    @given(deltas, phases)
    def test_general_is_unitary(self, d, ph):
        u = qg.strategy_unitary(General(d, ph))
        np.testing.assert_allclose(u.conj().T @ u, np.eye(2), atol=1e-12)

    @pytest.mark.parametrize("op", [General(-0.1, 0), General(1, 2.0), np.ones((2, 2))])
    def test_domain(self, op):
        with pytest.raises(DomainError):
            qg.strategy_unitary(op)


class TestPlay:
    @given(gammas)
    def test_cooperate_cooperate(self, g):
        s = qg.play_ewl(g, Strategy.COOPERATE, Strategy.COOPERATE)
        np.testing.assert_allclose(s.amplitudes, CCX, atol=1e-12)

    @pytest.mark.parametrize("g", [0.0, 0.3, math.pi / 2])
    def test_defect_defect(self, g):
        s = qg.play_ewl(g, Strategy.DEFECT, Strategy.DEFECT)
        d = qg.strategy_unitary(Strategy.DEFECT)
        np.testing.assert_allclose(s.amplitudes, oracle_state(g, d, d), atol=1e-12)
        assert abs(s.amplitude("DD")) == pytest.approx(1.0, abs=1e-12)

    def test_quantum_vs_defect_unentangled(self):
        s = qg.play_ewl(0.0, Strategy.QUANTUM, Strategy.DEFECT)
        assert abs(s.amplitude("CD")) == pytest.approx(1.0, abs=1e-15)

    @given(gammas, deltas, phases, deltas, phases)
    def test_normalized(self, g, da, pa, db, pb):
        s = qg.play_ewl(g, General(da, pa), General(db, pb))
        assert s.probabilities.sum() == pytest.approx(1.0, abs=1e-12)


class TestPayoffs:
    def test_cc(self):
        assert qg.expected_payoffs(qg.TwoQubitState(CCX), PD) == (3, 3)

    def test_cd(self):
        assert qg.expected_payoffs(qg.TwoQubitState(np.array([0, 1, 0, 0], complex)), PD) == (0, 5)

    def test_uniform(self):
        pa, pb = qg.expected_payoffs(qg.TwoQubitState(np.full(4, 0.5, complex)), PD)
        assert pa == pytest.approx(2.25) and pb == pytest.approx(2.25)

    def test_rejects_unnormalized(self):
        with pytest.raises(DomainError):
            qg.expected_payoffs(qg.TwoQubitState(np.array([1, 1, 0, 0], complex)), PD)

    def test_symmetric_game(self):
        rng = np.random.default_rng(11)
        for g in rng.uniform(0, math.pi / 2, 20):
            for a in ALL_OPS:
                for b in ALL_OPS:
                    pa, _ = qg.expected_payoffs(qg.play_ewl(g, a, b), PD)
                    _, pb = qg.expected_payoffs(qg.play_ewl(g, b, a), PD)
                    assert pa == pytest.approx(pb, abs=1e-12)

    @given(gammas, st.floats(0, 2 * math.pi), st.floats(0, 2 * math.pi))
    def test_global_phase_invariance(self, g, phi_a, phi_b):
        ua = qg.strategy_unitary(Strategy.QUANTUM)
        ub = qg.strategy_unitary(Strategy.DEFECT)
        base = qg.expected_payoffs(qg.play_ewl(g, ua, ub), PD)
        moved = qg.expected_payoffs(
            qg.play_ewl(g, np.exp(1j * phi_a) * ua, np.exp(1j * phi_b) * ub), PD)
        assert moved == pytest.approx(base, abs=1e-12)

    def test_parse(self):
        assert PDPayoffs.parse("3, 0,5,1") == PD
        assert PD.is_dilemma and not PDPayoffs(3, 0, 3, 1).is_dilemma
        with pytest.raises(DomainError):
            PDPayoffs.parse("3,0,5")


class TestTable:
    def test_unentangled_embeds_classical_game(self):
        t = qg.ewl_payoff_table(0.0, PD)
        np.testing.assert_array_equal(t.payoff[:2, :2], [[3, 0], [5, 1]])
        assert (t["Q", "C"], t["Q", "D"], t["Q", "Q"]) == (3, 0, 3)
        np.testing.assert_array_equal(t.payoff[2], t.payoff[0])
        np.testing.assert_array_equal(t.payoff[:, 2], t.payoff[:, 0])

    def test_maximal_entanglement(self):
        t = qg.ewl_payoff_table(math.pi / 2, PD)
        assert t["C", "Q"] == pytest.approx(1.0, abs=1e-12)
        assert t["D", "Q"] == pytest.approx(0.0, abs=1e-12)
        assert t["Q", "D"] == pytest.approx(5.0, abs=1e-12)

    @given(gammas)
    def test_diagonal(self, g):
        t = qg.ewl_payoff_table(g, PD)
        assert t["C", "C"] == pytest.approx(3, abs=1e-12)
        assert t["D", "D"] == pytest.approx(1, abs=1e-12)
        assert t["Q", "Q"] == pytest.approx(3, abs=1e-12)

    def test_closed_forms_against_oracle_grid(self):
        ops = {s.value: qg.strategy_unitary(s) for s in ALL_OPS}
        for g in np.linspace(0, math.pi / 2, 50):
            ref = qg.closed_form_table(g, PD)
            got = qg.ewl_payoff_table(g, PD).payoff
            np.testing.assert_allclose(got, ref, atol=1e-12, rtol=0)
            for i, a in enumerate("CDQ"):
                for k, b in enumerate("CDQ"):
                    assert got[i, k] == pytest.approx(oracle_payoff_a(g, ops[a], ops[b]), abs=1e-12)

    def test_consistency_error_on_bad_operator(self, monkeypatch):
        from ising_qpd.errors import InternalConsistencyError
        real = qg.strategy_unitary

        def sigma_x_defect(op):
            return qg.SIGMA_X.copy() if op is Strategy.DEFECT else real(op)

        monkeypatch.setattr(qg, "strategy_unitary", sigma_x_defect)
        with pytest.raises(InternalConsistencyError):
            qg.ewl_payoff_table(0.7, PD)
