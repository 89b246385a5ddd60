"""Compiled inner loop of the Gillespie simulation.

The kernel never draws random numbers itself: the caller hands it a block
of uniforms from a numpy Generator, so the trajectory is a pure function of
the seed and of the (fixed) block size.
"""
import math

import numpy as np
from numba import njit

OK = 0
NEED_UNIFORMS = 1
RUNAWAY = 2


@njit(nogil=True, cache=False)
def gillespie_chunk(state, rates, uniforms, out_n, out_g, recorded, t_first, interval, cap):
    """Advance one trajectory until ``out_n`` is full or the uniforms run out.

    state    float64[4]: time, gene state, copy number, index of next sample
    rates    float64[5]: k1+, k1-, k2+, k2-, nu   (delta == 1)
    Returns (new recorded count, status).
    """
    k1p, k1m, k2p, k2m, nu = rates[0], rates[1], rates[2], rates[3], rates[4]
    t = state[0]
    g = int(state[1])
    n = int(state[2])
    sample_idx = int(state[3])
    total = out_n.size
    i = 0
    m = uniforms.size
    status = OK
    while recorded < total:
        if g == 0:
            a_up = k1p
            a_down = 0.0
            a_prod = 0.0
        elif g == 1:
            a_up = k2p
            a_down = k1m
            a_prod = 0.0
        else:
            a_up = 0.0
            a_down = k2m
            a_prod = nu
        a_deg = float(n)
        a0 = a_up + a_down + a_prod + a_deg
        if a0 == 0.0:
            # absorbing state: every remaining sample sees it
            while recorded < total:
                out_n[recorded] = n
                out_g[recorded] = g
                recorded += 1
                sample_idx += 1
            break
        if i + 2 > m:
            status = NEED_UNIFORMS
            break
        tau = -math.log(1.0 - uniforms[i]) / a0
        r = uniforms[i + 1] * a0
        i += 2
        t_next = t + tau
        while recorded < total and t_first + sample_idx * interval <= t_next:
            out_n[recorded] = n
            out_g[recorded] = g
            recorded += 1
            sample_idx += 1
        if r < a_up:
            g += 1
        elif r < a_up + a_down:
            g -= 1
        elif r < a_up + a_down + a_prod:
            n += 1
            if n > cap:
                status = RUNAWAY
                t = t_next
                break
        else:
            n -= 1
        t = t_next
    state[0] = t
    state[1] = g
    state[2] = n
    state[3] = sample_idx
    return recorded, status


def warm_up():
    """Trigger compilation on a tiny problem."""
    state = np.zeros(4)
    rates = np.ones(5)
    out_n = np.empty(2, np.int64)
    out_g = np.empty(2, np.int64)
    gillespie_chunk(state, rates, np.full(64, 0.5), out_n, out_g, 0, 0.0, 1.0, 10)
