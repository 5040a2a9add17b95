import io

import numpy as np
import pytest

from conftest import make_spec
from helix_pst import Node, build_hamiltonian, dump_matrix, neighbors
from helix_pst.hamiltonian import CouplingKind
from oracles import adjacency_hamiltonian

TOPOLOGIES = [
    ("closed", "closed"),
    ("closed", "open"),
    ("open", "closed"),
    ("open", "open"),
]


def test_neighbors_closed_closed_corner():
    spec = make_spec(8, "closed", "closed", J=1.0, L=1.0)
    got = neighbors(Node(0, 1), spec)
    assert got == [
        (Node(1, 1), CouplingKind.SITE_J),
        (Node(7, 1), CouplingKind.SITE_J),
        (Node(0, 2), CouplingKind.CHANNEL_L),
        (Node(0, 3), CouplingKind.CHANNEL_L),
    ]


def test_neighbors_open_open_edge_cases():
    spec = make_spec(4, "open", "open", J=1.0, L=1.0)
    # chain endpoint, middle channel: two channel neighbours
    assert neighbors(Node(0, 2), spec) == [
        (Node(1, 2), CouplingKind.SITE_J),
        (Node(0, 1), CouplingKind.CHANNEL_L),
        (Node(0, 3), CouplingKind.CHANNEL_L),
    ]
    # far endpoint, outer channel: one of each
    assert neighbors(Node(3, 3), spec) == [
        (Node(2, 3), CouplingKind.SITE_J),
        (Node(3, 2), CouplingKind.CHANNEL_L),
    ]


def test_neighbors_open_channels_1_and_3_not_coupled():
    spec = make_spec(5, "closed", "open", J=1.0, L=1.0)
    others = [m.alpha for m, kind in neighbors(Node(2, 1), spec)
              if kind is CouplingKind.CHANNEL_L]
    assert others == [2]


@pytest.mark.parametrize("site_bc,channel_bc", TOPOLOGIES)
@pytest.mark.parametrize("N", [3, 4, 5, 8])
def test_kron_route_matches_adjacency_route(site_bc, channel_bc, N):
    for kw in ({"J": 2.0, "L": 0.5}, {"J": 1.0, "L": 0.0}, {"gamma": 3.0}):
        spec = make_spec(N, site_bc, channel_bc, **kw)
        H = build_hamiltonian(spec)
        assert np.array_equal(H, adjacency_hamiltonian(spec))


@pytest.mark.parametrize("site_bc,channel_bc", TOPOLOGIES)
def test_hamiltonian_symmetric_zero_diagonal(site_bc, channel_bc):
    spec = make_spec(6, site_bc, channel_bc, J=1.3, L=0.7)
    H = build_hamiltonian(spec)
    assert np.array_equal(H, H.T)
    assert np.all(np.diag(H) == 0.0)


def test_closed_closed_row_sums():
    # every node has 2 site edges and 2 channel edges
    spec = make_spec(7, "closed", "closed", J=1.5, L=0.25)
    H = build_hamiltonian(spec)
    assert np.allclose(H.sum(axis=1), 2 * 1.5 + 2 * 0.25)


def test_zero_couplings_give_zero_matrix():
    spec = make_spec(4, "open", "open", J=0.0, L=0.0)
    assert not build_hamiltonian(spec).any()


def test_scaled_mode_divides_by_L():
    scaled = make_spec(5, "closed", "closed", gamma=4.0)
    raw = make_spec(5, "closed", "closed", J=8.0, L=2.0)
    assert np.allclose(build_hamiltonian(raw) / 2.0, build_hamiltonian(scaled))


def test_dump_matrix_round_trip():
    spec = make_spec(3, "closed", "closed", J=1.0 / 3.0, L=0.1)
    H = build_hamiltonian(spec)
    buf = io.StringIO()
    dump_matrix(H, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "dim= 9"
    assert len(lines) == 10
    back = np.array([[float(x) for x in line.split()] for line in lines[1:]])
    assert np.array_equal(back, H)
