import itertools

import pytest

from qprune.topology import (
    CANONICAL_GRIDS, Topology, grid_for_width, make_grid, swap_distance, topology_from_config,
)


def test_grid_sizes():
    g = make_grid(2, 2)
    assert g.num_physical == 4 and len(g.edges) == 4
    g = make_grid(3, 4)
    assert g.num_physical == 12 and len(g.edges) == 17


def test_equal_diameters_2x5_3x4():
    assert make_grid(2, 5).diameter == make_grid(3, 4).diameter == 5


def test_swap_distance_examples():
    g = make_grid(2, 2)
    assert swap_distance(g, 0, 1) == 0
    assert swap_distance(g, 0, 3) == 1
    g = make_grid(3, 4)
    assert swap_distance(g, 0, 11) == 4
    with pytest.raises(ValueError):
        swap_distance(g, 5, 5)


@pytest.mark.parametrize("rows, cols", [(r, c) for r in range(1, 5) for c in range(1, 5) if r * c > 1])
def test_grid_distance_is_manhattan(rows, cols):
    g = make_grid(rows, cols)
    for p, q in itertools.combinations(range(g.num_physical), 2):
        (pr, pc), (qr, qc) = g.coords(p), g.coords(q)
        assert g.dist[p, q] == abs(pr - qr) + abs(pc - qc)
        assert swap_distance(g, p, q) == swap_distance(g, q, p)


def test_dist_is_read_only():
    g = make_grid(2, 3)
    with pytest.raises(ValueError):
        g.dist[0, 1] = 7


def test_shortest_path_is_lexicographically_smallest():
    g = make_grid(2, 2)
    assert g.shortest_path(0, 3) == [0, 1, 3]
    g = make_grid(3, 4)
    path = g.shortest_path(0, 11)
    assert len(path) == 6 and path[0] == 0 and path[-1] == 11
    assert all(g.adjacent(a, b) for a, b in zip(path, path[1:]))


def test_canonical_widths():
    assert grid_for_width(12).shape == (3, 4)
    assert grid_for_width(10).shape == (2, 5)
    assert grid_for_width(4).shape == (2, 2)
    for n, shape in CANONICAL_GRIDS.items():
        assert grid_for_width(n).shape == shape


@pytest.mark.parametrize("n", [2, 3, 5, 7, 9, 13, 16, 20])
def test_other_widths_fit(n):
    g = grid_for_width(n)
    assert g.num_physical >= n
    assert g.num_physical - n < max(g.shape)


def test_disconnected_rejected():
    with pytest.raises(ValueError, match="connected"):
        Topology.from_edges(4, [(0, 1), (2, 3)])


def test_config_forms():
    assert topology_from_config("grid:2x4").shape == (2, 4)
    assert topology_from_config({"grid": [3, 4]}).num_physical == 12
    line = topology_from_config({"edges": [[0, 1], [1, 2]]})
    assert line.num_physical == 3 and swap_distance(line, 0, 2) == 1
    assert topology_from_config(line.to_config()).edges == line.edges
    with pytest.raises(ValueError):
        topology_from_config("ring:5")
