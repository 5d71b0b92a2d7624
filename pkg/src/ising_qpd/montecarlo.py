"""Metropolis sampler for the finite periodic Ising chain.

Single-spin flips in typewriter order (site 0..N-1 each sweep), acceptance
``min(1, exp(-dE/T))``. Uniform variates come from numpy's PCG64 seeded with
the config seed, drawn in fixed-size blocks, so a run is fully determined by
``(params, config, q_list)`` and identical across kernel backends.

At ``alpha == beta_field == 0`` every proposal has ``dE == 0`` and is accepted,
so a sweep deterministically flips the whole chain. Estimates stay unbiased
but the chain is not ergodic there.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from ._kernels import get_backend
from .errors import DomainError
from .ising import IsingParams, _check

N_BATCHES = 32
RNG_NAME = f"numpy.random.PCG64 (numpy {np.__version__})"
# uniforms are drawn in blocks of roughly this many doubles
_BLOCK_DOUBLES = 1 << 18


@dataclass(frozen=True)
class McConfig:
    n_spins: int
    sweeps: int
    burn_in: int = 1000
    thin: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.n_spins < 4:
            raise DomainError(f"n_spins must be >= 4, got {self.n_spins}")
        if self.sweeps < 1 or self.thin < 1 or self.burn_in < 0:
            raise DomainError("need sweeps >= 1, thin >= 1, burn_in >= 0")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must be an unsigned 64-bit integer")
        if self.n_samples < 2:
            raise DomainError("sweeps // thin must leave at least two measurements")

    @property
    def n_samples(self) -> int:
        return self.sweeps // self.thin


@dataclass(frozen=True)
class McEstimate:
    mean: float
    std_error: float
    n_samples: int

    def deviation(self, exact: float) -> float:
        """|mean - exact| in units of the standard error (inf if the error is 0 and they differ)."""
        gap = abs(self.mean - exact)
        if self.std_error > 0:
            return gap / self.std_error
        return 0.0 if gap == 0 else math.inf


@dataclass(frozen=True)
class McResult:
    magnetization: McEstimate
    correlations: dict
    rng: str = RNG_NAME
    state_counts: Optional[np.ndarray] = field(default=None, repr=False)


def batch_estimate(samples: np.ndarray, n_batches: int = N_BATCHES) -> McEstimate:
    n = samples.size
    k = min(n_batches, n)
    means = np.array([b.mean() for b in np.array_split(samples, k)])
    err = float(means.std(ddof=1) / math.sqrt(k))
    return McEstimate(mean=float(samples.mean()), std_error=err, n_samples=n)


def acceptance_table(params: IsingParams) -> np.ndarray:
    """``table[(s + 1) // 2, (h + 2) // 2]`` for spin ``s`` and neighbour sum ``h``."""
    table = np.empty((2, 3))
    for i, s in enumerate((-1, 1)):
        for j, h in enumerate((-2, 0, 2)):
            d_e = 2.0 * s * (params.alpha * h + params.beta_field)
            table[i, j] = 1.0 if d_e <= 0 else math.exp(-d_e / params.temperature)
    return table


def metropolis_run(params: IsingParams, config: McConfig, q_list: Sequence[int] = (),
                   record_states: bool = False, backend: Optional[str] = None) -> McResult:
    """Sample the chain and estimate ``<t>`` and ``<t_n t_{n+q}>`` (averaged over n).

    With ``record_states`` (N <= 20) the visit count of every configuration,
    indexed by the bit pattern of down spins, is returned as ``state_counts``.
    """
    _check(params)
    n = config.n_spins
    qs = np.array([int(q) for q in q_list], dtype=np.int64)
    if np.any(qs < 0) or np.any(qs >= n):
        raise DomainError(f"every distance must satisfy 0 <= q < n_spins={n}")
    if record_states and n > 20:
        raise DomainError("state recording is limited to n_spins <= 20")
    kernel = get_backend(backend).metropolis_sweeps

    rng = np.random.Generator(np.random.PCG64(config.seed))
    spins = np.where(rng.random(n) < 0.5, 1, -1).astype(np.int8)
    accept = acceptance_table(params)
    n_samples = config.n_samples
    mag = np.zeros(n_samples, dtype=np.int64)
    corr = np.zeros((n_samples, qs.size), dtype=np.int64)
    states = np.zeros(n_samples if record_states else 0, dtype=np.int64)
    block = max(1, _BLOCK_DOUBLES // n)

    done = 0
    while done < config.burn_in:
        k = min(block, config.burn_in - done)
        kernel(spins, rng.random((k, n)), accept, qs, 0, 0, mag, corr, states, 0)
        done += k

    done = taken = 0
    while done < config.sweeps:
        k = min(block, config.sweeps - done)
        taken += kernel(spins, rng.random((k, n)), accept, qs, config.thin, done,
                        mag, corr, states, taken)
        done += k
    assert taken == n_samples

    m_est = batch_estimate(mag / n)
    corr_ests = {int(q): batch_estimate(corr[:, j] / n) for j, q in enumerate(qs)}
    counts = np.bincount(states, minlength=1 << n) if record_states else None
    return McResult(magnetization=m_est, correlations=corr_ests, state_counts=counts)
