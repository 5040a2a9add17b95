"""Time-domain searches for perfect-transfer events and parameter sweeps.

A coarse probability grid locates candidate peaks; golden-section
refinement then pins each peak down to 1e-6 in time. A refined peak
counts as perfect state transfer (PST) when p >= 1 - epsilon. Sweeps
evaluate tau_min independently per parameter value and keep input
order, so output is deterministic for any worker count. The
HELIX_PST_THREADS environment variable caps the worker pool (0 or
unset means auto).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .core import BoundaryConditions, CouplingParams, NetworkSpec, Node
from .hamiltonian import build_hamiltonian
from .spectral import SpectralDecomposition, eigendecompose_numeric
from .transfer import projector_overlaps

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
REFINE_XTOL = 1e-6


@dataclass(frozen=True)
class ScanConfig:
    """Knobs of the peak search."""

    horizon: float = 200.0
    coarse_step: float = 0.005
    epsilon: float = 1e-3
    refine_iters: int = 64

    def __post_init__(self) -> None:
        if self.horizon <= 0:
            raise ValueError("horizon must be positive")
        if self.coarse_step <= 0:
            raise ValueError("coarse_step must be positive")
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError("epsilon must lie in (0, 1)")
        if self.refine_iters < 1:
            raise ValueError("refine_iters must be at least 1")


@dataclass(frozen=True)
class SweepRow:
    """One sweep entry; tau_min is None when no PST event was found."""

    parameter: float
    tau_min: float | None


def _pair_probability(decomp: SpectralDecomposition, input: Node, output: Node):
    """Scalar and grid evaluators of p(t) for one node pair."""
    o = projector_overlaps(decomp, input, output)
    lam = decomp.values

    def p_of(t: float) -> float:
        return float(np.abs(np.dot(o, np.exp(-1j * lam * t))) ** 2)

    def p_grid(ts: np.ndarray) -> np.ndarray:
        return np.abs(np.exp(-1j * np.outer(ts, lam)) @ o) ** 2

    return p_of, p_grid


def _golden_max(p_of, a: float, b: float, max_iters: int) -> tuple[float, float]:
    """Golden-section maximisation of p on [a, b] down to REFINE_XTOL."""
    x1 = b - INV_PHI * (b - a)
    x2 = a + INV_PHI * (b - a)
    f1, f2 = p_of(x1), p_of(x2)
    iters = 0
    while (b - a) > REFINE_XTOL and iters < max_iters:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + INV_PHI * (b - a)
            f2 = p_of(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - INV_PHI * (b - a)
            f1 = p_of(x1)
        iters += 1
    best = max(((a + b) / 2.0, a, b), key=p_of)
    return best, p_of(best)


def find_pst_times(
    decomp: SpectralDecomposition, input: Node, output: Node, cfg: ScanConfig
) -> list[float]:
    """All PST times in [0, horizon], ascending, refined to 1e-6.

    Candidates are coarse-grid local maxima above 1 - 2 epsilon
    (boundary points included); a refined candidate is kept when its
    probability reaches 1 - epsilon.
    """
    p_of, p_grid = _pair_probability(decomp, input, output)
    ts = np.arange(0.0, cfg.horizon + 0.5 * cfg.coarse_step, cfg.coarse_step)
    p = p_grid(ts)
    thr = 1.0 - 2.0 * cfg.epsilon
    last = len(ts) - 1

    times: list[float] = []
    probs: list[float] = []
    i = 0
    while i <= last:
        is_max = (
            p[i] > thr
            and (i == 0 or p[i] >= p[i - 1])
            and (i == last or p[i] >= p[i + 1])
        )
        if is_max:
            a = max(ts[i] - cfg.coarse_step, 0.0)
            b = min(ts[i] + cfg.coarse_step, cfg.horizon)
            t_star, p_star = _golden_max(p_of, a, b, cfg.refine_iters)
            if p_star >= 1.0 - cfg.epsilon:
                if times and abs(t_star - times[-1]) < cfg.coarse_step:
                    if p_star > probs[-1]:
                        times[-1], probs[-1] = t_star, p_star
                else:
                    times.append(t_star)
                    probs.append(p_star)
            # skip any flat plateau so one peak is refined once
            while i < last and p[i + 1] == p[i]:
                i += 1
        i += 1
    return times


def tau_min(
    decomp: SpectralDecomposition, input: Node, output: Node, cfg: ScanConfig
) -> float | None:
    """Earliest PST time within the horizon, or None when there is none."""
    times = find_pst_times(decomp, input, output, cfg)
    return times[0] if times else None


def _worker_count(n_jobs: int) -> int:
    raw = os.environ.get("HELIX_PST_THREADS", "0") or "0"
    try:
        workers = int(raw)
    except ValueError as exc:
        raise ValueError(f"HELIX_PST_THREADS must be an integer, got {raw!r}") from exc
    if workers <= 0:
        workers = os.cpu_count() or 1
    return max(1, min(workers, n_jobs))


def _map_ordered(fn, params) -> list:
    params = list(params)
    workers = _worker_count(len(params))
    if workers == 1 or len(params) <= 1:
        return [fn(x) for x in params]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, params))


def gamma_sweep(
    template: NetworkSpec,
    pair: tuple[Node, Node],
    gamma_grid,
    cfg: ScanConfig,
) -> list[SweepRow]:
    """tau_min as a function of gamma = J/L, in scaled units."""
    input, output = pair

    def eval_one(gamma: float) -> SweepRow:
        spec = replace(template, couplings=CouplingParams.from_gamma(gamma))
        decomp = eigendecompose_numeric(build_hamiltonian(spec))
        return SweepRow(float(gamma), tau_min(decomp, input, output, cfg))

    return _map_ordered(eval_one, gamma_grid)


def coupling_sweep_L0(
    N: int,
    bc: BoundaryConditions,
    pair: tuple[Node, Node],
    J_grid,
    cfg: ScanConfig,
) -> list[SweepRow]:
    """t_min versus J in the decoupled-channel limit L = 0 (raw units).

    The coarse step is rescaled to coarse_step / |J| so the search keeps
    a fixed resolution in the natural time J * t regardless of how fast
    the dynamics run.
    """
    input, output = pair

    def eval_one(J: float) -> SweepRow:
        spec = NetworkSpec(N, bc, CouplingParams(J=float(J), L=0.0))
        decomp = eigendecompose_numeric(build_hamiltonian(spec))
        local = cfg
        if J != 0.0:
            local = replace(cfg, coarse_step=cfg.coarse_step / abs(J))
        return SweepRow(float(J), tau_min(decomp, input, output, local))

    return _map_ordered(eval_one, J_grid)
