import itertools
from collections import Counter

import numpy as np
import pytest

from qrcs.mesh import (
    CELL_EDGES,
    MeshTopology,
    adjacency_dump,
    build_grid,
    build_mesh,
    cells_per_edge,
    edge_count,
    edge_neighbors,
    row_nonzero_counts,
    sparsity_parameter,
)

KINDS = ["square2d", "triangular2d", "cubic3d", "tet6", "tet5"]


def brute_counts(mesh):
    """Per-edge neighbour counts from plain Python sets, independent of the sparse-matrix path."""
    nbrs = [set() for _ in range(len(mesh.edges))]
    for cell in mesh.cells.tolist():
        for e in cell:
            nbrs[e].update(cell)
    return [len(s) for s in nbrs], nbrs


def lattice_unit_edges(shape):
    """Axis-aligned nearest-neighbour pairs of a lattice, by direct enumeration."""
    pts = list(itertools.product(*(range(s) for s in shape)))
    pts_set = set(pts)
    out = set()
    for p in pts:
        for axis in range(len(shape)):
            q = list(p)
            q[axis] += 1
            if tuple(q) in pts_set:
                out.add((p, tuple(q)))
    return out


def cell_vertices(mesh, cell):
    return sorted({int(v) for e in cell for v in mesh.edges[e]})


@pytest.mark.parametrize("kind,expected", [("square2d", 7), ("triangular2d", 5), ("cubic3d", 33)])
@pytest.mark.parametrize("m", [3, 4, 5, 8])
def test_sparsity_published(kind, expected, m):
    mesh = build_mesh(MeshTopology(kind, m))
    rep = sparsity_parameter(mesh)
    assert rep.d == expected
    counts, _ = brute_counts(mesh)
    assert max(counts) == expected
    assert rep.counts.tolist() == counts


@pytest.mark.parametrize("kind", ["tet6", "tet5"])
def test_tet_sparsity_stable(kind):
    # value frozen from the set-based enumeration; no published figure exists
    ds = set()
    for m in (4, 5, 6):
        mesh = build_mesh(MeshTopology(kind, m))
        counts, _ = brute_counts(mesh)
        assert sparsity_parameter(mesh).d == max(counts)
        ds.add(max(counts))
    assert ds == {19}


def test_single_square():
    mesh = build_mesh(MeshTopology("square2d", 2))
    assert len(mesh.edges) == 4 and len(mesh.cells) == 1
    assert sparsity_parameter(mesh).d == 4


def test_cubic_m3_counts():
    mesh = build_mesh(MeshTopology("cubic3d", 3))
    assert len(mesh.edges) == 54 and len(mesh.cells) == 8
    assert len(lattice_unit_edges((3, 3, 3))) == 54


def test_square_rows():
    mesh = build_mesh(MeshTopology("square2d", 6))
    counts = row_nonzero_counts(mesh).counts
    shared = cells_per_edge(mesh)
    assert set(counts[shared == 1].tolist()) == {4}
    assert set(counts[shared == 2].tolist()) == {7}
    assert np.array_equal(counts == 7, shared == 2)


def test_two_adjacent_squares():
    mesh = build_grid("square2d", (3, 2))
    pattern = row_nonzero_counts(mesh)
    assert len(mesh.edges) == 7
    assert pattern.total_nonzeros == 31
    _, nbrs = brute_counts(mesh)
    assert sum(len(s) for s in nbrs) == 31
    assert pattern.histogram == {4: 6, 7: 1}


def test_triangular_hand_count():
    t = MeshTopology("triangular2d", 3)
    assert edge_count(t) == 16
    assert len(build_mesh(t).edges) == 16


def test_closed_form_anchor():
    assert edge_count(MeshTopology("square2d", 12885)) == 332_020_680
    assert edge_count(MeshTopology("square2d", 2)) == 4


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("m", range(2, 9))
def test_closed_form_matches_enumeration(kind, m):
    t = MeshTopology(kind, m)
    mesh = build_mesh(t)
    mesh.validate()
    assert edge_count(t) == len(mesh.edges)


@pytest.mark.parametrize("kind", ["square2d", "triangular2d"])
def test_closed_form_up_to_64(kind):
    for m in (16, 33, 64):
        t = MeshTopology(kind, m)
        assert edge_count(t) == len(build_mesh(t).edges)


@pytest.mark.parametrize("kind", ["square2d", "cubic3d"])
def test_edges_match_lattice(kind):
    shape = (5,) * (2 if kind == "square2d" else 3)
    mesh = build_mesh(MeshTopology(kind, 5))
    coords = mesh.vertices
    got = {(tuple(coords[a]), tuple(coords[b])) for a, b in mesh.edges.tolist()}
    got = {tuple(sorted(e)) for e in got}
    assert got == {tuple(sorted(e)) for e in lattice_unit_edges(shape)}


@pytest.mark.parametrize("kind", KINDS)
def test_adjacency_symmetric(kind):
    pattern = edge_neighbors(build_mesh(MeshTopology(kind, 4)))
    assert (pattern != pattern.T).nnz == 0
    assert np.all(pattern.diagonal() > 0)


@pytest.mark.parametrize("kind", KINDS)
def test_count_bounds(kind):
    mesh = build_mesh(MeshTopology(kind, 5))
    rep = sparsity_parameter(mesh)
    assert CELL_EDGES[mesh.element] <= rep.boundary_min <= rep.d
    assert rep.d == max(rep.per_edge_counts)
    assert sum(rep.per_edge_counts.values()) == len(mesh.edges)


@pytest.mark.parametrize("kind", ["tet6", "tet5"])
def test_tet_mesh_is_conforming(kind):
    m = 4
    mesh = build_mesh(MeshTopology(kind, m))
    coords = mesh.vertices.astype(float)
    volume = 0.0
    faces = Counter()
    for cell in mesh.cells:
        verts = cell_vertices(mesh, cell)
        assert len(verts) == 4
        a, b, c, d = coords[verts]
        vol = abs(np.linalg.det(np.stack([b - a, c - a, d - a]))) / 6
        assert vol > 0
        volume += vol
        for face in itertools.combinations(verts, 3):
            faces[face] += 1
    assert volume == pytest.approx((m - 1) ** 3)
    # every face shared by at most two tets, and interior faces exactly two
    assert max(faces.values()) == 2
    boundary = sum(1 for v in faces.values() if v == 1)
    assert boundary == 2 * 6 * (m - 1) ** 2  # two triangles per boundary square


def test_five_tet_sizes():
    mesh = build_mesh(MeshTopology("tet5", 3))
    assert len(mesh.cells) == 5 * 8
    assert len(build_mesh(MeshTopology("tet6", 3)).cells) == 6 * 8


def test_triangles_parallel_diagonals():
    mesh = build_mesh(MeshTopology("triangular2d", 5))
    coords = mesh.vertices
    diag = [coords[b] - coords[a] for a, b in mesh.edges.tolist() if np.all(coords[b] != coords[a])]
    assert {tuple(v) for v in diag} == {(1, 1)}


def test_bad_inputs():
    with pytest.raises(ValueError, match="m must"):
        MeshTopology("square2d", 1)
    with pytest.raises(ValueError, match="unknown mesh topology"):
        MeshTopology("hexagonal", 4)
    with pytest.raises(ValueError):
        build_grid("cubic3d", (3, 3))


def test_zero_cells_rejected():
    mesh = build_mesh(MeshTopology("square2d", 3))
    mesh.cells = mesh.cells[:0]
    with pytest.raises(ValueError, match="no cells"):
        sparsity_parameter(mesh)


def test_validate_catches_duplicates():
    mesh = build_mesh(MeshTopology("square2d", 3))
    mesh.edges = np.vstack([mesh.edges, mesh.edges[:1]])
    with pytest.raises(ValueError, match="duplicate"):
        mesh.validate()


def test_adjacency_dump():
    mesh = build_mesh(MeshTopology("square2d", 3))
    lines = adjacency_dump(mesh).splitlines()
    assert len(lines) == 4
    assert [list(map(int, l.split())) for l in lines] == mesh.cells.tolist()


def test_aliases():
    assert MeshTopology("TetSixPerCube3D", 3).kind == "tet6"
    assert MeshTopology("TetFivePerCube3D", 3).kind == "tet5"
    assert MeshTopology("Square2D", 3).kind == "square2d"
