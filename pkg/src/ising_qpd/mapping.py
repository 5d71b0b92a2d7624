"""Map symmetric 2x2 games onto Ising couplings and analyse the restricted quantum games.

Spin encoding: +1 is the first strategy of a game (Quantum in both restricted
games), -1 the second (Cooperate or Defect).
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import ising
from .errors import DomainError, InternalConsistencyError
from .quantum_game import PDPayoffs, check_gamma, ewl_payoff_table


class Restriction(enum.Enum):
    QVC = "qvc"
    QVD = "qvd"

    @property
    def labels(self) -> tuple[str, str]:
        return ("Q", "C") if self is Restriction.QVC else ("Q", "D")


class PhaseLabel(enum.Enum):
    CLASSICAL = "classical"
    RANDOM = "random"
    QUANTUM = "quantum"


@dataclass(frozen=True)
class SymmetricGame2:
    """Row player's payoffs; ``payoff[i, j]`` is for playing ``i`` against ``j``."""

    labels: tuple[str, str]
    payoff: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.payoff, dtype=float)
        if p.shape != (2, 2) or not np.all(np.isfinite(p)):
            raise DomainError("a symmetric game needs a finite 2x2 payoff matrix")
        object.__setattr__(self, "payoff", p)


@dataclass(frozen=True)
class IsingEquivalent:
    alpha: float
    beta_field: float

    def at(self, temperature: float) -> ising.IsingParams:
        return ising.IsingParams(self.alpha, self.beta_field, temperature)


@dataclass(frozen=True)
class CriticalPoints:
    gamma0: Optional[float]
    three_phase: bool
    gamma1: Optional[float] = None
    gamma2: Optional[float] = None


def to_ising(game: SymmetricGame2) -> IsingEquivalent:
    (x, y), (z, w) = game.payoff
    return IsingEquivalent(alpha=(x - y + w - z) / 4, beta_field=(x - z + y - w) / 4)


def ising_shift(game: SymmetricGame2) -> SymmetricGame2:
    """Add ``-(x+z)/2`` to the first column and ``-(y+w)/2`` to the second.

    The result has the shape of the two-spin Ising energy table and the same
    Nash equilibria as ``game``.
    """
    p = game.payoff
    shift = -(p[0] + p[1]) / 2
    return SymmetricGame2(game.labels, p + shift[None, :])


def pure_nash(game: SymmetricGame2) -> set[tuple[int, int]]:
    """Pure equilibria ``(row, col)`` of the symmetric bimatrix game (weak inequalities)."""
    p = game.payoff
    found = set()
    for i, j in itertools.product(range(2), repeat=2):
        row_best = p[i, j] >= p[:, j].max()
        # column player's payoff for (i, j) is p[j, i]
        col_best = p[j, i] >= p[:, i].max()
        if row_best and col_best:
            found.add((i, j))
    return found


_INDEX = {"C": 0, "D": 1, "Q": 2}


def restricted_game(r: Restriction, gamma: float, payoffs: PDPayoffs) -> SymmetricGame2:
    """2x2 sub-table of the quantized game on ``{Q, C}`` or ``{Q, D}``."""
    gamma = check_gamma(gamma)
    table = ewl_payoff_table(gamma, payoffs).payoff
    idx = [_INDEX[s] for s in r.labels]
    sub = table[np.ix_(idx, idx)]
    expected = _closed_form_restricted(r, gamma, payoffs)
    if np.abs(sub - expected).max() > 1e-9 * max(1.0, np.abs(expected).max()):
        raise InternalConsistencyError(f"restricted {r.value} table disagrees with closed form")
    return SymmetricGame2(r.labels, sub)


def _closed_form_restricted(r, gamma, payoffs):
    x, y, z, w = payoffs.x, payoffs.y, payoffs.z, payoffs.w
    c2, s2 = math.cos(gamma) ** 2, math.sin(gamma) ** 2
    if r is Restriction.QVC:
        y1 = x * c2 + w * s2
        return np.array([[x, y1], [y1, x]])
    return np.array([[x, y * c2 + z * s2], [z * c2 + y * s2, w]])


def game_params(r: Restriction, gamma: float, payoffs: PDPayoffs) -> IsingEquivalent:
    gamma = check_gamma(gamma)
    x, y, z, w = payoffs.x, payoffs.y, payoffs.z, payoffs.w
    if r is Restriction.QVC:
        return IsingEquivalent(alpha=(x - w) * math.sin(gamma) ** 2 / 2, beta_field=0.0)
    return IsingEquivalent(
        alpha=(x + w - z - y) / 4,
        beta_field=(x - w + (y - z) * math.cos(2 * gamma)) / 4,
    )


def game_magnetization(r: Restriction, gamma: float, temperature: float,
                       payoffs: PDPayoffs) -> float:
    return ising.magnetization(game_params(r, gamma, payoffs).at(temperature))


def game_correlation(r: Restriction, gamma: float, temperature: float, q: int,
                     payoffs: PDPayoffs) -> float:
    return ising.correlation(game_params(r, gamma, payoffs).at(temperature), q)


def _half_arccos(value: float) -> Optional[float]:
    if not math.isfinite(value) or abs(value) > 1.0 + 1e-12:
        return None
    return 0.5 * math.acos(min(1.0, max(-1.0, value)))


def gamma1_cosine(payoffs: PDPayoffs) -> float:
    """cos(2 gamma1): where the zero-T field first matches the antiferromagnetic coupling."""
    x, y, z, w = payoffs.x, payoffs.y, payoffs.z, payoffs.w
    return (3 * w + x - 2 * (y + z)) / (y - z)


def gamma2_cosine(payoffs: PDPayoffs) -> float:
    """cos(2 gamma2), the mirror image of ``gamma1_cosine``.

    Both follow from ``|x - w + (y - z) cos 2g| = 2 (y + z - w - x)``, the
    zero-temperature balance between field and coupling exponents. The
    superficially similar numerator ``3x - w + 2(y - z)`` is wrong: it gives
    0.5796 instead of pi/4 for payoffs (3, 0, 5, 1).
    """
    x, y, z, w = payoffs.x, payoffs.y, payoffs.z, payoffs.w
    return (2 * (y + z) - w - 3 * x) / (y - z)


def critical_points(payoffs: PDPayoffs) -> CriticalPoints:
    x, y, z, w = payoffs.x, payoffs.y, payoffs.z, payoffs.w
    gamma0 = _half_arccos((x - w) / (z - y)) if z != y else None
    three_phase = w + x < y + z
    if not three_phase or y == z:
        # with y == z the field does not depend on gamma: no boundary to cross
        return CriticalPoints(gamma0=gamma0, three_phase=three_phase)
    return CriticalPoints(
        gamma0=gamma0,
        three_phase=True,
        gamma1=_half_arccos(gamma1_cosine(payoffs)),
        gamma2=_half_arccos(gamma2_cosine(payoffs)),
    )


def zero_T_phase(gamma: float, payoffs: PDPayoffs) -> tuple[PhaseLabel, int]:
    """T -> 0 phase of the Q-vs-D game, decided by comparing exponents.

    ``s`` is four times the effective field and ``r`` twice the
    antiferromagnetic coupling strength; the coupling wins when ``|s| < r``.
    Ties go to the random phase.
    """
    gamma = check_gamma(gamma)
    x, y, z, w = payoffs.x, payoffs.y, payoffs.z, payoffs.w
    s = x - w + math.cos(2 * gamma) * (y - z)
    r = 2 * (y + z - w - x)
    if abs(s) <= r or s == 0.0:
        return PhaseLabel.RANDOM, 0
    if s < 0:
        return PhaseLabel.CLASSICAL, -1
    return PhaseLabel.QUANTUM, 1


def zero_T_correlation(gamma: float, q: int, payoffs: PDPayoffs) -> float:
    """T -> 0 limit of the Q-vs-D correlation at distance ``q``.

    Ordered phases give 1; the random phase is antiferromagnetically locked
    and gives ``(-1)**q``.
    """
    label, _ = zero_T_phase(gamma, payoffs)
    if q == 0 or label is not PhaseLabel.RANDOM:
        return 1.0
    alpha = game_params(Restriction.QVD, gamma, payoffs).alpha
    if alpha < 0:
        return float((-1) ** q)
    return 1.0 if alpha > 0 else 0.0
