"""Independent ground truth for the closed-form distribution.

* :func:`ssa_run` samples the gene/mRNA Markov chain with the exact
  Gillespie direct method.
* :func:`master_steady_state` solves the stationary master equation on a
  truncated state space with a sparse direct solver.
* :func:`tv_distance` compares any two distributions.

Both oracles are built from the transition table (gene switching
0 <-> 1 <-> 2, production at rate nu in state 2, degradation at rate n in
every state) and share no code with the hypergeometric formulas.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .distribution import Distribution, Model
from .errors import SimulationRunaway, SingularSystem, ValidationError
from .model import RateSet, occupancies

__all__ = [
    "SsaConfig",
    "EmpiricalDistribution",
    "ssa_run",
    "master_steady_state",
    "suggest_n_max",
    "tv_distance",
    "as_probabilities",
]

# Uniforms handed to the compiled kernel per call; part of the seed contract.
UNIFORM_BLOCK = 1 << 16
RUNAWAY_CAP = 1_000_000


@dataclass(frozen=True)
class SsaConfig:
    """Settings of a stationary SSA run (rates in lifetime units).

    ``n_samples`` are split over ``replicas`` independent trajectories, each
    with its own burn-in and its own random stream spawned from ``seed``.
    The split depends only on ``replicas``; ``workers`` only decides how
    many run at once, so results do not depend on it.
    """

    rates: RateSet
    n_samples: int = 200_000
    sample_interval: float = 5.0
    t_burn_in: float = 50.0
    seed: int = 0
    replicas: int = 8
    workers: int = 1
    initial_state: tuple = (0, 0)

    def __post_init__(self):
        self.rates.require_rescaled()
        if not self.sample_interval > 0:
            raise ValidationError("sample_interval must be > 0")
        if int(self.n_samples) < 1:
            raise ValidationError("n_samples must be >= 1")
        if not self.t_burn_in >= 0:
            raise ValidationError("t_burn_in must be >= 0")
        if int(self.replicas) < 1 or int(self.workers) < 1:
            raise ValidationError("replicas and workers must be >= 1")
        g0, n0 = self.initial_state
        if g0 not in (0, 1, 2) or n0 < 0:
            raise ValidationError(f"bad initial state {self.initial_state}")


@dataclass(frozen=True, eq=False)
class EmpiricalDistribution:
    counts: np.ndarray
    total: int
    seed: int
    gene_occupancy_counts: np.ndarray = field(default_factory=lambda: np.zeros(3, np.int64))

    @property
    def probs(self) -> np.ndarray:
        return self.counts / self.total

    def mean(self) -> float:
        return float(np.dot(np.arange(self.counts.size), self.counts) / self.total)

    def occupancy_fractions(self) -> np.ndarray:
        return self.gene_occupancy_counts / self.total

    def __eq__(self, other):
        if not isinstance(other, EmpiricalDistribution):
            return NotImplemented
        return (self.total == other.total and self.seed == other.seed
                and np.array_equal(self.counts, other.counts)
                and np.array_equal(self.gene_occupancy_counts, other.gene_occupancy_counts))


def _split(total: int, parts: int) -> list[int]:
    base, extra = divmod(total, parts)
    return [base + (i < extra) for i in range(parts)]


def _run_replica(rates: np.ndarray, n_samples: int, config: SsaConfig,
                 seed_seq: np.random.SeedSequence) -> tuple[np.ndarray, np.ndarray]:
    from ._ssa_kernel import NEED_UNIFORMS, RUNAWAY, gillespie_chunk

    rng = np.random.Generator(np.random.PCG64(seed_seq))
    g0, n0 = config.initial_state
    state = np.array([0.0, g0, n0, 0.0])
    out_n = np.empty(n_samples, np.int64)
    out_g = np.empty(n_samples, np.int64)
    recorded = 0
    while recorded < n_samples:
        uniforms = rng.random(UNIFORM_BLOCK)
        recorded, status = gillespie_chunk(state, rates, uniforms, out_n, out_g, recorded,
                                           config.t_burn_in, config.sample_interval,
                                           RUNAWAY_CAP)
        if status == RUNAWAY:
            raise SimulationRunaway(f"copy number exceeded {RUNAWAY_CAP} at t = {state[0]}")
        if status != NEED_UNIFORMS and recorded < n_samples:
            raise RuntimeError("SSA kernel stopped early")
    return out_n, out_g


def ssa_run(config: SsaConfig) -> EmpiricalDistribution:
    """Histogram of copy numbers sampled from stationary trajectories."""
    r = config.rates
    rates = np.array([r.k1_plus, r.k1_minus, r.k2_plus, r.k2_minus, r.nu])
    sizes = _split(int(config.n_samples), int(config.replicas))
    streams = np.random.SeedSequence(int(config.seed)).spawn(int(config.replicas))
    jobs = [(size, ss) for size, ss in zip(sizes, streams) if size > 0]

    def work(job):
        return _run_replica(rates, job[0], config, job[1])

    if config.workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=int(config.workers)) as pool:
            results = list(pool.map(work, jobs))
    else:
        results = [work(job) for job in jobs]

    n_all = np.concatenate([res[0] for res in results])
    g_all = np.concatenate([res[1] for res in results])
    return EmpiricalDistribution(
        counts=np.bincount(n_all).astype(np.int64),
        total=int(n_all.size),
        seed=int(config.seed),
        gene_occupancy_counts=np.bincount(g_all, minlength=3).astype(np.int64),
    )


def suggest_n_max(rates: RateSet) -> int:
    """Truncation level comfortably past the bulk of the distribution."""
    _, _, gamma2 = occupancies(rates)
    mean = rates.nu * gamma2
    # the copy number never exceeds Poisson(nu) in distribution
    return int(math.ceil(max(mean, rates.nu) + 12.0 * math.sqrt(max(mean, rates.nu) + 1.0) + 30.0))


def _generator(rates: RateSet, n_max: int) -> sp.csr_matrix:
    """Transition-rate matrix Q (row = from) on states (g, n), n <= n_max.

    Production at n == n_max is dropped (reflecting boundary), so Q stays a
    proper generator.
    """
    N = n_max + 1
    n = np.arange(N)
    idx = lambda g: g * N + n
    rows, cols, vals = [], [], []

    def add(src, dst, rate):
        rate = np.broadcast_to(np.asarray(rate, dtype=float), src.shape)
        keep = rate > 0
        rows.append(src[keep])
        cols.append(dst[keep])
        vals.append(rate[keep])

    add(idx(0), idx(1), rates.k1_plus)
    add(idx(1), idx(0), rates.k1_minus)
    add(idx(1), idx(2), rates.k2_plus)
    add(idx(2), idx(1), rates.k2_minus)
    add(idx(2)[:-1], idx(2)[1:], rates.nu)
    for g_state in range(3):
        # rescaled degradation: rate n, no stray delta factor
        add(idx(g_state)[1:], idx(g_state)[:-1], n[1:].astype(float))
    r = np.concatenate(rows)
    c = np.concatenate(cols)
    v = np.concatenate(vals)
    off = sp.coo_matrix((v, (r, c)), shape=(3 * N, 3 * N)).tocsr()
    out = np.asarray(off.sum(axis=1)).ravel()
    return (off - sp.diags(out)).tocsr()


def master_steady_state(rates: RateSet, n_max: int | None = None) -> Distribution:
    """Stationary distribution of the truncated master equation.

    Solves pi Q = 0 with sum(pi) = 1 by replacing one balance equation with
    the normalization row.  Returns the copy-number marginal; the gene-state
    marginals are in ``gene_marginals``.
    """
    rates.require_rescaled()
    if n_max is None:
        n_max = suggest_n_max(rates)
    n_max = int(n_max)
    if n_max < 0:
        raise ValidationError("n_max must be >= 0")
    N = n_max + 1
    Q = _generator(rates, n_max)
    A = Q.T.tolil()
    A[0, :] = np.ones(3 * N)
    rhs = np.zeros(3 * N)
    rhs[0] = 1.0
    A = A.tocsc()
    with np.errstate(all="ignore"):
        import warnings
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            pi = spla.spsolve(A, rhs)
    if not np.all(np.isfinite(pi)):
        raise SingularSystem("balance equations are singular (disconnected chain?)")
    residual = np.abs(Q.T @ pi).max()
    scale = max(1.0, np.abs(Q.diagonal()).max())
    if residual > 1e-10 * scale or abs(pi.sum() - 1.0) > 1e-10 or pi.min() < -1e-10:
        raise SingularSystem(f"stationary solve inaccurate: residual {residual:.2e}")
    pi = np.clip(pi, 0.0, None)
    per_state = pi.reshape(3, N)
    marginal = per_state.sum(axis=0)
    gene = tuple(float(math.fsum(row.tolist())) for row in per_state)
    return Distribution(marginal, n_max, float(marginal[-1]), Model.THREE_STATE, rates,
                        gene_marginals=gene)


def as_probabilities(d) -> np.ndarray:
    if isinstance(d, Distribution):
        return np.asarray(d.probs, dtype=float)
    if isinstance(d, EmpiricalDistribution):
        return d.probs
    return np.asarray(d, dtype=float)


def tv_distance(d1, d2) -> float:
    """Total-variation distance, missing tail entries counted as zero."""
    p = as_probabilities(d1)
    q = as_probabilities(d2)
    size = max(p.size, q.size)
    p = np.pad(p, (0, size - p.size))
    q = np.pad(q, (0, size - q.size))
    tv = 0.5 * math.fsum(np.abs(p - q).tolist())
    return min(1.0, max(0.0, tv))
