"""Two-qubit EWL quantization of the prisoner's dilemma.

Basis order is ``(|CC>, |CD>, |DC>, |DD>)`` with player A the left tensor
factor; ``|C> = |0>`` and ``|D> = |1>``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import DomainError, InternalConsistencyError

HALF_PI = math.pi / 2
# CLI users type pi/2 rounded to a few decimals; anything this close is clamped.
GAMMA_SLACK = 1e-5

IDENTITY = np.eye(2, dtype=complex)
# Y = i * sigma_y, a real matrix
Y_REAL = np.array([[0.0, 1.0], [-1.0, 0.0]], dtype=complex)
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
BASIS = ("CC", "CD", "DC", "DD")
STRATEGY_LABELS = ("C", "D", "Q")


@dataclass(frozen=True)
class PDPayoffs:
    """Reward ``x``, sucker's payoff ``y``, temptation ``z``, punishment ``w``."""

    x: float
    y: float
    z: float
    w: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.x, self.y, self.z, self.w)):
            raise DomainError("payoffs must be finite")

    @property
    def is_dilemma(self) -> bool:
        return self.z > self.x > self.w > self.y

    @classmethod
    def parse(cls, text: str) -> "PDPayoffs":
        """Parse ``"x,y,z,w"``."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 4:
            raise DomainError(f"expected four comma-separated payoffs x,y,z,w, got {text!r}")
        try:
            return cls(*(float(p) for p in parts))
        except ValueError:
            raise DomainError(f"payoffs must be numbers, got {text!r}") from None


class Strategy(enum.Enum):
    COOPERATE = "C"
    DEFECT = "D"
    QUANTUM = "Q"


@dataclass(frozen=True)
class General:
    """Member of the two-parameter family U(delta, Delta)."""

    delta: float
    Delta: float


StrategyOp = Union[Strategy, General, np.ndarray]


@dataclass(frozen=True)
class TwoQubitState:
    amplitudes: np.ndarray

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def amplitude(self, outcome: str) -> complex:
        return complex(self.amplitudes[BASIS.index(outcome)])


@dataclass(frozen=True)
class EwlTable:
    """Row player's payoffs over ``(C, D, Q)`` at entanglement ``gamma``."""

    gamma: float
    payoff: np.ndarray
    labels: tuple = field(default=STRATEGY_LABELS)

    def __getitem__(self, key):
        row, col = key
        return float(self.payoff[self.labels.index(row), self.labels.index(col)])


def check_gamma(gamma: float) -> float:
    if not math.isfinite(gamma) or gamma < -GAMMA_SLACK or gamma > HALF_PI + GAMMA_SLACK:
        raise DomainError(f"entanglement gamma must lie in [0, pi/2], got {gamma!r}")
    return min(max(gamma, 0.0), HALF_PI)


def entangling_gate(gamma: float) -> np.ndarray:
    """``J(gamma) = cos(gamma/2) I x I - i sin(gamma/2) Y x Y``."""
    gamma = check_gamma(gamma)
    return (math.cos(gamma / 2) * np.kron(IDENTITY, IDENTITY)
            - 1j * math.sin(gamma / 2) * np.kron(Y_REAL, Y_REAL))


def general_unitary(delta: float, Delta: float) -> np.ndarray:
    if not 0.0 <= delta <= math.pi:
        raise DomainError(f"delta must lie in [0, pi], got {delta!r}")
    if not 0.0 <= Delta <= HALF_PI:
        raise DomainError(f"Delta must lie in [0, pi/2], got {Delta!r}")
    c, s = math.cos(delta / 2), math.sin(delta / 2)
    phase = complex(math.cos(Delta), math.sin(Delta))
    return np.array([[phase * c, s], [-s, phase.conjugate() * c]])


def strategy_unitary(op: StrategyOp) -> np.ndarray:
    """2x2 unitary for a strategy.

    Defect is ``U(pi, 0) = [[0, 1], [-1, 0]]``: with the ``Y x Y`` entangler
    this is the only reading of "defect" that reproduces the quantized payoff
    table (``sigma_x`` differs by a relative phase that is visible against Q).
    A raw 2x2 unitary array is accepted as-is after a unitarity check.
    """
    if op is Strategy.COOPERATE:
        return IDENTITY.copy()
    if op is Strategy.DEFECT:
        return Y_REAL.copy()  # U(pi, 0) without the cos(pi/2) rounding residue
    if op is Strategy.QUANTUM:
        return np.diag([1j, -1j])
    if isinstance(op, General):
        return general_unitary(op.delta, op.Delta)
    u = np.asarray(op, dtype=complex)
    if u.shape != (2, 2) or not np.allclose(u.conj().T @ u, IDENTITY, atol=1e-12):
        raise DomainError("strategy matrix must be a 2x2 unitary")
    return u


def play_ewl(gamma: float, op_a: StrategyOp, op_b: StrategyOp) -> TwoQubitState:
    j = entangling_gate(gamma)
    local = np.kron(strategy_unitary(op_a), strategy_unitary(op_b))
    start = np.array([1, 0, 0, 0], dtype=complex)
    return TwoQubitState(j.conj().T @ (local @ (j @ start)))


def expected_payoffs(state: TwoQubitState, payoffs: PDPayoffs) -> tuple[float, float]:
    probs = state.probabilities
    if abs(probs.sum() - 1.0) > 1e-9:
        raise DomainError(f"state is not normalized (norm^2 = {probs.sum()!r})")
    p_cc, p_cd, p_dc, p_dd = probs
    x, y, z, w = payoffs.x, payoffs.y, payoffs.z, payoffs.w
    p_a = x * p_cc + w * p_dd + z * p_dc + y * p_cd
    p_b = x * p_cc + w * p_dd + y * p_dc + z * p_cd
    return float(p_a), float(p_b)


def closed_form_table(gamma: float, payoffs: PDPayoffs) -> np.ndarray:
    """The quantized 3x3 table from its closed forms, rows/cols ``(C, D, Q)``."""
    gamma = check_gamma(gamma)
    c2, s2 = math.cos(gamma) ** 2, math.sin(gamma) ** 2
    x, y, z, w = payoffs.x, payoffs.y, payoffs.z, payoffs.w
    y1 = x * c2 + w * s2
    y2 = z * c2 + y * s2
    y3 = y * c2 + z * s2
    return np.array([[x, y, y1], [z, w, y2], [y1, y3, x]])


_OPS = {"C": Strategy.COOPERATE, "D": Strategy.DEFECT, "Q": Strategy.QUANTUM}


def statevector_table(gamma: float, payoffs: PDPayoffs) -> np.ndarray:
    table = np.empty((3, 3))
    for i, a in enumerate(STRATEGY_LABELS):
        for k, b in enumerate(STRATEGY_LABELS):
            table[i, k] = expected_payoffs(play_ewl(gamma, _OPS[a], _OPS[b]), payoffs)[0]
    return table


def ewl_payoff_table(gamma: float, payoffs: PDPayoffs) -> EwlTable:
    """Statevector payoff table, cross-checked against the closed forms."""
    gamma = check_gamma(gamma)
    simulated = statevector_table(gamma, payoffs)
    expected = closed_form_table(gamma, payoffs)
    scale = max(1.0, float(np.abs(expected).max()))
    gap = float(np.abs(simulated - expected).max())
    if gap > 1e-9 * scale:
        raise InternalConsistencyError(
            f"statevector and closed-form payoff tables differ by {gap:.3e} at gamma={gamma}"
        )
    return EwlTable(gamma=gamma, payoff=simulated)
