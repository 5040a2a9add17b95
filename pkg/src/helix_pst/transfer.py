"""Transition probabilities and transfer bounds between two lattice nodes.

Everything is driven by the per-group overlaps o_k = <in| P_k |out>
taken from a grouped spectral decomposition:

    p(t)  = | sum_k o_k exp(-i lambda_k t) |^2
    p_max = ( sum_k |o_k| )^2

p_max bounds p(t) for all t (triangle inequality) and is reached exactly
when all surviving phases align up to the overlap signs. Groups with
o_k = 0 are "dark": the excitation never passes through them and they
drop out of the phase-alignment analysis.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import CHANNELS, Node, flat_index
from .spectral import EigenPair, SpectralDecomposition

DARK_TOL = 1e-10
OVERLAP_IMAG_TOL = 1e-9


@dataclass(frozen=True)
class TransferReport:
    """Spectral footprint of one (input, output) node pair."""

    input: Node
    output: Node
    overlaps: np.ndarray  # real, one per distinct-eigenvalue group
    p_max: float
    signs: np.ndarray  # int in {-1, 0, +1}, 0 marks a dark group
    dark_groups: frozenset[int]


def projector_overlaps(
    decomp: SpectralDecomposition, input: Node, output: Node
) -> np.ndarray:
    """Real overlaps <in| P_k |out>, one per distinct-eigenvalue group."""
    N = decomp.dim // CHANNELS
    a = flat_index(input, N)
    b = flat_index(output, N)
    raw = decomp.projectors[:, a, b]
    if raw.size and float(np.max(np.abs(raw.imag))) > OVERLAP_IMAG_TOL:
        raise ValueError(
            "projector overlap has a residual imaginary part; "
            "a degenerate eigenvalue was left ungrouped (raise grouping_tol)"
        )
    return raw.real.copy()


def transition_probability(
    decomp: SpectralDecomposition, input: Node, output: Node, t: float
) -> float:
    """p(t) = |<out| exp(-iHt) |in>|^2 via the grouped decomposition."""
    o = projector_overlaps(decomp, input, output)
    amp = np.dot(o, np.exp(-1j * decomp.values * t))
    return float(np.abs(amp) ** 2)


def probability_profile(
    decomp: SpectralDecomposition,
    input: Node,
    output: Node,
    t_grid: Sequence[float],
) -> list[tuple[float, float]]:
    """p(t) over an ascending time grid, evaluated in one vectorised pass."""
    ts = np.asarray(t_grid, dtype=float)
    if ts.size == 0:
        raise ValueError("time grid is empty")
    if np.any(np.diff(ts) < 0):
        raise ValueError("time grid must be sorted ascending")
    o = projector_overlaps(decomp, input, output)
    amps = np.exp(-1j * np.outer(ts, decomp.values)) @ o
    probs = np.abs(amps) ** 2
    return list(zip(ts.tolist(), probs.tolist()))


def p_max(decomp: SpectralDecomposition, input: Node, output: Node) -> float:
    """Phase-alignment upper bound (sum_k |o_k|)^2 over grouped overlaps."""
    o = projector_overlaps(decomp, input, output)
    return float(np.sum(np.abs(o)) ** 2)


def p_max_rank1(pairs: Sequence[EigenPair], input: Node, output: Node) -> float:
    """Transfer bound summed over a full labelled rank-one eigenvector set.

    Uses |<in|v><v|out>| per labelled eigenvector instead of per grouped
    projector, so on degenerate spectra it is looser than p_max. For the
    doubly closed network every analytic eigenvector has uniform
    amplitude 1/sqrt(3N), which makes this bound exactly 1 for every
    node pair.
    """
    if not pairs:
        raise ValueError("no eigenpairs given")
    N = len(pairs[0].vector) // CHANNELS
    a = flat_index(input, N)
    b = flat_index(output, N)
    total = sum(abs(p.vector[a]) * abs(p.vector[b]) for p in pairs)
    return float(total**2)


def sign_factors(overlaps: np.ndarray, dark_tol: float = DARK_TOL) -> np.ndarray:
    """Signs of the overlaps; entries below dark_tol in magnitude get 0."""
    o = np.asarray(overlaps, dtype=float)
    signs = np.sign(o).astype(int)
    signs[np.abs(o) < dark_tol] = 0
    return signs


def transfer_report(
    decomp: SpectralDecomposition,
    input: Node,
    output: Node,
    dark_tol: float = DARK_TOL,
) -> TransferReport:
    overlaps = projector_overlaps(decomp, input, output)
    signs = sign_factors(overlaps, dark_tol)
    dark = frozenset(int(k) for k in np.flatnonzero(signs == 0))
    bound = float(np.sum(np.abs(overlaps)) ** 2)
    return TransferReport(input, output, overlaps, bound, signs, dark)


def dark_eigenspaces(report: TransferReport) -> frozenset[int]:
    """Indices of groups the pair never populates (overlap sign 0)."""
    return report.dark_groups


def dark_predicate_closed_closed(N: int, i: int, j: int, n: int) -> bool:
    """Closed-form darkness test for the doubly closed network.

    For the paired site modes (n, N-n) the grouped overlap between sites
    i and j is proportional to cos(2 pi n (j - i) / N); it vanishes
    exactly when 4 n (j - i) / N is an odd integer. Valid for the paired
    range 1 <= n <= ceil((N - 3) / 2); the unpaired modes are never dark.
    """
    if not 0 <= i < N or not 0 <= j < N:
        raise ValueError(f"sites must lie in [0, {N - 1}]")
    if not 1 <= n <= -((3 - N) // 2):  # ceil((N - 3) / 2)
        raise ValueError(f"mode {n} outside the paired range for N={N}")
    q, r = divmod(4 * n * (j - i), N)
    return r == 0 and q % 2 == 1
