"""Exact solution of the periodic 1D spin-1/2 Ising chain in a longitudinal field.

Energy convention: ``H = -alpha * sum(t_i t_{i+1}) - beta_field * sum(t_i)``
with ``k_B = 1``. Every finite-temperature quantity is evaluated in a scaled
form so nothing overflows as ``T -> 0`` (``exp(1/T)`` overflows below
``T ~ 0.0015``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._kernels import get_backend
from .errors import DomainError

SIGMA_Z = np.diag([1.0, -1.0])
MAX_ENUMERATION_SPINS = 20


@dataclass(frozen=True)
class IsingParams:
    alpha: float
    beta_field: float
    temperature: float

    @property
    def zeta(self) -> float:
        return 1.0 / self.temperature


@dataclass(frozen=True)
class SpectralData:
    """Transfer-matrix spectrum.

    ``chi_plus``/``chi_minus`` may overflow to ``inf`` at very small T; the
    scaled fields (``log_chi_plus`` and ``ratio = chi_minus / chi_plus``) are
    always finite.
    """

    chi_plus: float
    chi_minus: float
    theta: float
    log_chi_plus: float
    ratio: float


@dataclass(frozen=True)
class FiniteChainResult:
    log_partition: float
    magnetization: float
    correlation: float


def _check(params: IsingParams) -> tuple[float, float]:
    t = params.temperature
    if not t > 0 or not math.isfinite(t):
        raise DomainError(f"temperature must be positive and finite, got {t!r}")
    if not (math.isfinite(params.alpha) and math.isfinite(params.beta_field)):
        raise DomainError("alpha and beta_field must be finite")
    return params.alpha / t, params.beta_field / t


def _field_and_coupling(a: float, b: float) -> tuple[float, float]:
    """sinh(b) and exp(-2a), both divided by exp(max(|b|, -2a))."""
    k = max(abs(b), -2.0 * a)
    sh = math.copysign(-math.expm1(-2.0 * abs(b)) / 2.0, b) * math.exp(abs(b) - k)
    cp = math.exp(-2.0 * a - k)
    return sh, cp


def _log_chi_plus_and_ratio(a: float, b: float) -> tuple[float, float]:
    top = max(a + abs(b), -a)
    p = math.exp(a + b - top)
    r = math.exp(a - b - top)
    s = math.exp(-a - top)
    chi = 0.5 * (p + r + math.hypot(p - r, 2.0 * s))
    # det(nu) * exp(-2 top) = exp(2a - 2top) - exp(-2a - 2top), cancellation-free
    if a >= 0:
        det = -math.exp(2.0 * a - 2.0 * top) * math.expm1(-4.0 * a)
    else:
        det = math.exp(-2.0 * a - 2.0 * top) * math.expm1(4.0 * a)
    return top + math.log(chi), det / (chi * chi)


def build_transfer_matrix(params: IsingParams) -> np.ndarray:
    a, b = _check(params)
    return np.exp(np.array([[a + b, -a], [-a, a - b]]))


def spectral_decomposition(params: IsingParams) -> SpectralData:
    a, b = _check(params)
    log_chi, ratio = _log_chi_plus_and_ratio(a, b)
    sh, cp = _field_and_coupling(a, b)
    with np.errstate(over="ignore"):
        chi_plus = float(np.exp(log_chi))
    return SpectralData(
        chi_plus=chi_plus,
        chi_minus=ratio * chi_plus,
        theta=math.atan2(cp, sh),
        log_chi_plus=log_chi,
        ratio=ratio,
    )


def free_energy_per_spin(params: IsingParams) -> float:
    """Thermodynamic-limit free energy per spin, ``-T ln chi_plus``."""
    a, b = _check(params)
    return -params.temperature * _log_chi_plus_and_ratio(a, b)[0]


def magnetization(params: IsingParams) -> float:
    a, b = _check(params)
    sh, cp = _field_and_coupling(a, b)
    if sh == 0.0:
        return 0.0
    return sh / math.hypot(sh, cp)


def _beta_tolerance(params: IsingParams) -> float:
    return 1e-9 * max(1.0, abs(params.alpha))


def correlation(params: IsingParams, q: int) -> float:
    """Thermodynamic-limit two-point function ``<t_n t_{n+q}>``.

    For ``|beta_field|`` below ``1e-9 * max(1, |alpha|)`` the zero-field
    closed form ``tanh(alpha / T) ** q`` is used instead of the general
    expression, which is indeterminate at zero field.
    """
    a, b = _check(params)
    q = _distance(q)
    if q == 0:
        return 1.0
    if abs(params.beta_field) < _beta_tolerance(params):
        return math.tanh(a) ** q
    sh, cp = _field_and_coupling(a, b)
    cos2 = sh * sh / (sh * sh + cp * cp) if sh != 0.0 else 0.0
    ratio = _log_chi_plus_and_ratio(a, b)[1]
    return min(1.0, cos2 + ratio ** q * (1.0 - cos2))


def _distance(q) -> int:
    if isinstance(q, bool) or int(q) != q or q < 0:
        raise DomainError(f"distance q must be a non-negative integer, got {q!r}")
    return int(q)


def finite_chain_exact(params: IsingParams, n: int, q: int) -> FiniteChainResult:
    """Periodic N-spin chain via powers of the transfer matrix.

    The matrix is divided by its dominant eigenvalue first, so its powers stay
    bounded for any N and temperature.
    """
    a, b = _check(params)
    q = _distance(q)
    if int(n) != n or n < 2:
        raise DomainError(f"chain length must be an integer >= 2, got {n!r}")
    n = int(n)
    if q > n:
        raise DomainError(f"distance q={q} exceeds chain length {n}")
    log_chi, _ = _log_chi_plus_and_ratio(a, b)
    scaled = np.exp(np.array([[a + b, -a], [-a, a - b]]) - log_chi)
    full = np.linalg.matrix_power(scaled, n)
    trace = np.trace(full)
    mag = np.trace(SIGMA_Z @ full) / trace
    corr = np.trace(
        SIGMA_Z @ np.linalg.matrix_power(scaled, q)
        @ SIGMA_Z @ np.linalg.matrix_power(scaled, n - q)
    ) / trace
    return FiniteChainResult(
        log_partition=n * log_chi + math.log(trace),
        magnetization=float(mag),
        correlation=float(corr),
    )


def enumerate_chain(params: IsingParams, n: int, q: int, backend=None) -> FiniteChainResult:
    """Brute-force sum over all ``2**n`` configurations of the periodic chain.

    Ground truth for the transfer-matrix routines; refuses ``n > 20``.
    """
    a, b = _check(params)
    q = _distance(q)
    if int(n) != n or n < 2:
        raise DomainError(f"chain length must be an integer >= 2, got {n!r}")
    if n > MAX_ENUMERATION_SPINS:
        raise DomainError(
            f"enumeration of {n} spins refused (limit {MAX_ENUMERATION_SPINS}, cost 2**N)"
        )
    if q > n:
        raise DomainError(f"distance q={q} exceeds chain length {n}")
    log_z, mag, corr = get_backend(backend).enumerate_moments(int(n), a, b, q)
    return FiniteChainResult(log_partition=log_z, magnetization=mag, correlation=corr)
