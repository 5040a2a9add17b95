import math

import pytest

from helix_pst import (
    BoundaryCondition,
    BoundaryConditions,
    CouplingParams,
    NetworkSpec,
    Node,
    flat_index,
    node_from_index,
    validate_spec,
)


def test_flat_index_known_values():
    assert flat_index(Node(0, 1), 8) == 0
    assert flat_index(Node(0, 3), 8) == 2
    assert flat_index(Node(4, 1), 8) == 12
    assert flat_index(Node(7, 3), 8) == 23


def test_index_round_trip_exhaustive():
    for N in range(2, 33):
        for idx in range(3 * N):
            node = node_from_index(idx, N)
            assert flat_index(node, N) == idx
            assert 0 <= node.n < N
            assert node.alpha in (1, 2, 3)


def test_flat_index_rejects_out_of_range_site():
    with pytest.raises(ValueError):
        flat_index(Node(8, 1), 8)


def test_node_validation():
    with pytest.raises(ValueError):
        Node(0, 0)
    with pytest.raises(ValueError):
        Node(0, 4)
    with pytest.raises(ValueError):
        Node(-1, 1)


def test_node_from_index_range():
    with pytest.raises(ValueError):
        node_from_index(-1, 4)
    with pytest.raises(ValueError):
        node_from_index(12, 4)


def test_boundary_conditions_from_names():
    bc = BoundaryConditions.from_names("closed", "open")
    assert bc.site_bc is BoundaryCondition.CLOSED
    assert bc.channel_bc is BoundaryCondition.OPEN
    with pytest.raises(ValueError):
        BoundaryConditions.from_names("periodic", "open")


def test_from_gamma_sets_scaled_units():
    cp = CouplingParams.from_gamma(3.0)
    assert cp.scaled
    assert cp.effective() == (3.0, 1.0)


def test_effective_divides_by_L_only_when_scaled():
    raw = CouplingParams(J=4.0, L=2.0)
    assert raw.effective() == (4.0, 2.0)
    scaled = CouplingParams(J=4.0, L=2.0, scaled=True)
    assert scaled.effective() == (2.0, 1.0)


def test_validate_spec_site_count_depends_on_boundary():
    bc_closed = BoundaryConditions.from_names("closed", "closed")
    bc_open = BoundaryConditions.from_names("open", "closed")
    cp = CouplingParams(J=1.0, L=1.0)
    with pytest.raises(ValueError):
        validate_spec(NetworkSpec(2, bc_closed, cp))
    assert validate_spec(NetworkSpec(2, bc_open, cp)).N == 2
    assert validate_spec(NetworkSpec(3, bc_closed, cp)).N == 3


def test_validate_spec_rejects_scaled_zero_L():
    bc = BoundaryConditions.from_names("closed", "closed")
    with pytest.raises(ValueError):
        validate_spec(NetworkSpec(4, bc, CouplingParams(J=1.0, L=0.0, scaled=True)))
    # raw L = 0 is allowed: channels decouple
    validate_spec(NetworkSpec(4, bc, CouplingParams(J=1.0, L=0.0)))


def test_validate_spec_rejects_non_finite_couplings():
    bc = BoundaryConditions.from_names("closed", "closed")
    with pytest.raises(ValueError):
        validate_spec(NetworkSpec(4, bc, CouplingParams(J=math.nan, L=1.0)))
    with pytest.raises(ValueError):
        validate_spec(NetworkSpec(4, bc, CouplingParams(J=1.0, L=math.inf)))
