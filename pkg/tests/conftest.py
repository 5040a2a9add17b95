from __future__ import annotations

import numpy as np
import pytest

from helix_pst import (
    BoundaryConditions,
    CouplingParams,
    NetworkSpec,
    build_hamiltonian,
    eigendecompose_numeric,
    validate_spec,
)


def make_spec(N, site_bc, channel_bc, *, gamma=None, J=None, L=None) -> NetworkSpec:
    if gamma is not None:
        couplings = CouplingParams.from_gamma(gamma)
    else:
        couplings = CouplingParams(J=J, L=L)
    bc = BoundaryConditions.from_names(site_bc, channel_bc)
    return validate_spec(NetworkSpec(N, bc, couplings))


def make_decomp(N, site_bc, channel_bc, **kw):
    spec = make_spec(N, site_bc, channel_bc, **kw)
    return spec, eigendecompose_numeric(build_hamiltonian(spec))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260815)
