"""Domain types and index conventions for the three-channel spin network.

The network is a stack of three chains ("channels") of N sites each. A
single excitation lives on 3N basis states labelled by (site n, channel
alpha) with n in [0, N-1] and alpha in {1, 2, 3}. Basis ordering is
site-major: flat index 3*n + (alpha - 1), so each site contributes one
contiguous 3x3 block.

Both lattice directions can be closed (periodic) or open, giving four
topologies. Couplings can be given raw as (J, L) or in scaled units
where every energy is measured in L (J becomes gamma = J/L) and times
are tau = L * t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

CHANNELS = 3

# a site ring of fewer than 3 sites would duplicate or self-loop edges
MIN_SITES_CLOSED = 3
MIN_SITES_OPEN = 2


class BoundaryCondition(Enum):
    CLOSED = "closed"
    OPEN = "open"


@dataclass(frozen=True)
class BoundaryConditions:
    """Boundary conditions along the site direction and across channels."""

    site_bc: BoundaryCondition
    channel_bc: BoundaryCondition

    @classmethod
    def from_names(cls, site: str, channel: str) -> BoundaryConditions:
        return cls(BoundaryCondition(site), BoundaryCondition(channel))


@dataclass(frozen=True)
class Node:
    """One spin of the lattice, addressed as (site n, channel alpha)."""

    n: int
    alpha: int

    def __post_init__(self) -> None:
        if self.alpha not in (1, 2, 3):
            raise ValueError(f"channel must be 1, 2 or 3, got {self.alpha}")
        if self.n < 0:
            raise ValueError(f"site index must be non-negative, got {self.n}")


@dataclass(frozen=True)
class CouplingParams:
    """Coupling energies of the network.

    J couples neighbouring sites within a channel; L couples channels at
    a fixed site. E0 is the uniform on-site excitation energy: it is
    recorded for completeness but never enters the dynamics, since it
    shifts every level equally and cancels from all probabilities.

    With scaled=True the Hamiltonian is built in units of L (entries
    J/L and 1) and all times are understood as tau = L * t. Raw mode
    keeps (J, L) as given and permits L = 0, the decoupled-channel
    limit.
    """

    J: float
    L: float
    E0: float = 0.0
    scaled: bool = False

    @classmethod
    def from_gamma(cls, gamma: float, E0: float = 0.0) -> CouplingParams:
        """Dimensionless parametrisation gamma = J/L used by the scans."""
        return cls(J=float(gamma), L=1.0, E0=E0, scaled=True)

    def effective(self) -> tuple[float, float]:
        """(site, channel) coupling strengths as they enter the matrix."""
        if self.scaled:
            return self.J / self.L, 1.0
        return self.J, self.L


@dataclass(frozen=True)
class NetworkSpec:
    """Complete description of one network: size, topology, couplings."""

    N: int
    bc: BoundaryConditions
    couplings: CouplingParams


def flat_index(node: Node, N: int) -> int:
    """Position of |n, alpha> in the site-major basis."""
    if not 0 <= node.n < N:
        raise ValueError(f"site index {node.n} out of range for N={N}")
    return CHANNELS * node.n + (node.alpha - 1)


def node_from_index(idx: int, N: int) -> Node:
    """Inverse of flat_index."""
    if not 0 <= idx < CHANNELS * N:
        raise ValueError(f"basis index {idx} out of range for N={N}")
    n, rem = divmod(idx, CHANNELS)
    return Node(n=n, alpha=rem + 1)


def validate_spec(spec: NetworkSpec) -> NetworkSpec:
    """Check every invariant; returns the argument unchanged when valid."""
    c = spec.couplings
    if not (math.isfinite(c.J) and math.isfinite(c.L) and math.isfinite(c.E0)):
        raise ValueError("couplings must be finite")
    if c.scaled and c.L == 0.0:
        raise ValueError("scaled couplings require L != 0")
    closed_sites = spec.bc.site_bc is BoundaryCondition.CLOSED
    min_n = MIN_SITES_CLOSED if closed_sites else MIN_SITES_OPEN
    if spec.N < min_n:
        raise ValueError(
            f"N={spec.N} too small for {spec.bc.site_bc.value} site "
            f"boundary (need N >= {min_n})"
        )
    return spec
