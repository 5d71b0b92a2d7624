"""Pure-Python reference implementations of the hot loops.

Semantics must match ``_ckernels.pyx`` exactly: the Metropolis kernel is
bit-identical to the compiled one given the same uniforms and acceptance
table, since every decision is a comparison against precomputed doubles and
all accumulators are integers.
"""
import math

import numpy as np


def metropolis_sweeps(spins, uniforms, accept, qs, thin, sweep0,
                      mag_out, corr_out, state_out, sample0):
    """Run ``len(uniforms)`` typewriter sweeps over a periodic chain in place.

    ``accept[(s + 1) // 2, (h + 2) // 2]`` is the acceptance probability for
    flipping spin ``s`` with neighbour sum ``h``. When ``thin > 0`` a
    measurement is taken after every sweep whose 1-based global index
    ``sweep0 + k + 1`` is divisible by ``thin``; measurements are written
    starting at row ``sample0``. Returns the number of measurements taken.
    """
    n = spins.shape[0]
    n_sweeps = uniforms.shape[0]
    s = [int(v) for v in spins]
    acc = [[float(accept[i, j]) for j in range(3)] for i in range(2)]
    q_list = [int(q) for q in qs]
    record_states = state_out.shape[0] > 0
    taken = 0
    for k in range(n_sweeps):
        u = uniforms[k]
        for i in range(n):
            si = s[i]
            h = s[i - 1] + s[(i + 1) % n]
            if u[i] < acc[(si + 1) >> 1][(h + 2) >> 1]:
                s[i] = -si
        if thin > 0 and (sweep0 + k + 1) % thin == 0:
            row = sample0 + taken
            mag_out[row] = sum(s)
            for j, q in enumerate(q_list):
                corr_out[row, j] = sum(s[m] * s[(m + q) % n] for m in range(n))
            if record_states:
                code = 0
                for m in range(n):
                    if s[m] < 0:
                        code |= 1 << m
                state_out[row] = code
            taken += 1
    spins[:] = s
    return taken


def enumerate_moments(n, a, b, q):
    """Exact periodic-chain sums over all ``2**n`` configurations.

    ``a`` and ``b`` are the coupling and field already multiplied by 1/T.
    Returns ``(log Z, <t_0>, <t_0 t_q>)``.
    """
    codes = np.arange(1 << n, dtype=np.int64)
    spins = np.empty((codes.size, n), dtype=np.int8)
    for i in range(n):
        spins[:, i] = 1 - 2 * ((codes >> i) & 1)
    bonds = (spins * np.roll(spins, -1, axis=1)).sum(axis=1, dtype=np.int64)
    field = spins.sum(axis=1, dtype=np.int64)
    expo = a * bonds.astype(np.float64) + b * field.astype(np.float64)
    top = expo.max()
    weights = np.exp(expo - top)
    z = weights.sum()
    s0 = spins[:, 0].astype(np.float64)
    mag = (weights * s0).sum() / z
    corr = (weights * s0 * spins[:, q % n]).sum() / z
    return top + math.log(z), float(mag), float(corr)
