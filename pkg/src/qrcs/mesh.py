"""Regular lattice meshes and the sparsity of their edge-element matrices.

With one degree of freedom per edge, row i of the system matrix has a
nonzero in column j exactly when edges i and j belong to a common cell.
The sparsity parameter d is the largest such row count over all edges.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

TOPOLOGIES = {
    "square2d": 2,
    "triangular2d": 2,
    "cubic3d": 3,
    "tet6": 3,
    "tet5": 3,
}
_ALIASES = {
    "square": "square2d",
    "triangular": "triangular2d",
    "cubic": "cubic3d",
    "tetsixpercube3d": "tet6",
    "tetfivepercube3d": "tet5",
}
# element type -> edges per cell
CELL_EDGES = {"square": 4, "triangle": 3, "cube": 12, "tetrahedron": 6}


def _parse_kind(kind: str) -> str:
    k = str(kind).lower().replace("_", "").replace("-", "")
    k = _ALIASES.get(k, k)
    if k not in TOPOLOGIES:
        raise ValueError(f"unknown mesh topology {kind!r}; expected one of {sorted(TOPOLOGIES)}")
    return k


@dataclass(frozen=True)
class MeshTopology:
    kind: str
    m: int

    def __post_init__(self):
        object.__setattr__(self, "kind", _parse_kind(self.kind))
        if int(self.m) != self.m or self.m < 2:
            raise ValueError(f"mesh size m must be an integer >= 2, got {self.m}")
        object.__setattr__(self, "m", int(self.m))

    @property
    def dims(self) -> int:
        return TOPOLOGIES[self.kind]


@dataclass
class Mesh:
    """Lattice mesh.

    ``vertices`` is (V, dim) integer coordinates, ``edges`` is (E, 2) vertex
    ids with the smaller id first, ``cells`` is (C, k) edge ids per element.
    """

    vertices: np.ndarray
    edges: np.ndarray
    cells: np.ndarray
    element: str

    def validate(self) -> None:
        e = self.edges
        if e.size and np.any(e[:, 0] >= e[:, 1]):
            raise ValueError("every edge must join two distinct vertices, smaller id first")
        if len(np.unique(e, axis=0)) != len(e):
            raise ValueError("duplicate edges")
        if self.cells.size and (self.cells.min() < 0 or self.cells.max() >= len(e)):
            raise ValueError("cell references an invalid edge id")
        if self.cells.shape[1:] != (CELL_EDGES[self.element],):
            raise ValueError(f"{self.element} cells need {CELL_EDGES[self.element]} edges, got shape {self.cells.shape}")
        for row in self.cells:
            if len(set(row.tolist())) != len(row):
                raise ValueError("cell lists an edge twice")


# --- element templates: vertex offsets within the unit cell, plus which pairs are edges


def _axis_pairs(corners):
    return [(a, b) for a, b in itertools.combinations(range(len(corners)), 2)
            if sum(x != y for x, y in zip(corners[a], corners[b])) == 1]


def _all_pairs(n):
    return list(itertools.combinations(range(n), 2))


_SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]
_CUBE = list(itertools.product((0, 1), repeat=3))


def _kuhn_tets():
    """Six tetrahedra sharing the cube diagonal (0,0,0)-(1,1,1)."""
    tets = []
    for perm in itertools.permutations(range(3)):
        v = [0, 0, 0]
        chain = [tuple(v)]
        for axis in perm:
            v[axis] = 1
            chain.append(tuple(v))
        tets.append(chain)
    return tets


def _five_tets(parity: int):
    """Corner-cut split: the central tet uses local vertices of the given coordinate-sum parity."""
    central = [c for c in _CUBE if sum(c) % 2 == parity]
    tets = [central]
    for corner in _CUBE:
        if sum(corner) % 2 != parity:
            nbrs = [c for c in central if sum(a != b for a, b in zip(c, corner)) == 1]
            tets.append([corner] + nbrs)
    return tets


def _templates(kind: str, origins: np.ndarray):
    """Yield (origins, [cell vertex offsets], edge pairs, element) groups."""
    if kind == "square2d":
        yield origins, [_SQUARE], _axis_pairs(_SQUARE), "square"
    elif kind == "triangular2d":
        # every square split along the same (0,0)-(1,1) diagonal
        tris = [[(0, 0), (1, 0), (1, 1)], [(0, 0), (1, 1), (0, 1)]]
        yield origins, tris, _all_pairs(3), "triangle"
    elif kind == "cubic3d":
        yield origins, [_CUBE], _axis_pairs(_CUBE), "cube"
    elif kind == "tet6":
        yield origins, _kuhn_tets(), _all_pairs(4), "tetrahedron"
    elif kind == "tet5":
        # alternate the split by cube parity so shared face diagonals coincide
        par = origins.sum(axis=1) % 2
        for p in (0, 1):
            sel = origins[par == p]
            if len(sel):
                yield sel, _five_tets(p), _all_pairs(4), "tetrahedron"


def build_grid(kind: str, shape) -> Mesh:
    """Mesh with ``shape[i]`` vertices along axis i (each at least 2)."""
    kind = _parse_kind(kind)
    shape = tuple(int(s) for s in shape)
    if len(shape) != TOPOLOGIES[kind]:
        raise ValueError(f"{kind} needs a {TOPOLOGIES[kind]}-dimensional shape, got {shape}")
    if min(shape) < 2:
        raise ValueError(f"every axis needs at least 2 vertices, got {shape}")
    shape_arr = np.array(shape, dtype=np.int64)
    strides = np.array([int(np.prod(shape_arr[i + 1:])) for i in range(len(shape))], dtype=np.int64)
    nv = int(np.prod(shape_arr))

    vertices = np.array(list(np.ndindex(*shape)), dtype=np.int64).reshape(nv, len(shape))
    origins = np.array(list(np.ndindex(*(s - 1 for s in shape))), dtype=np.int64).reshape(-1, len(shape))

    keys_per_group = []
    element = None
    for group_origins, cell_offsets, pairs, element in _templates(kind, origins):
        base = group_origins @ strides
        for offsets in cell_offsets:
            off = np.asarray(offsets, dtype=np.int64) @ strides
            a = base[:, None] + off[[i for i, _ in pairs]][None, :]
            b = base[:, None] + off[[j for _, j in pairs]][None, :]
            lo, hi = np.minimum(a, b), np.maximum(a, b)
            keys_per_group.append(lo * nv + hi)
    cell_keys = np.concatenate(keys_per_group, axis=0)
    uniq, inverse = np.unique(cell_keys, return_inverse=True)
    edges = np.stack([uniq // nv, uniq % nv], axis=1)
    cells = inverse.reshape(cell_keys.shape)
    return Mesh(vertices=vertices, edges=edges, cells=cells, element=element)


def build_mesh(t: MeshTopology) -> Mesh:
    return build_grid(t.kind, (t.m,) * t.dims)


def edge_count(t: MeshTopology) -> int:
    """Closed-form number of edges, exact for any m."""
    m = t.m
    if t.kind == "square2d":
        return 2 * m * (m - 1)
    if t.kind == "triangular2d":
        return 2 * m * (m - 1) + (m - 1) ** 2
    cubic = 3 * m * m * (m - 1)
    if t.kind == "cubic3d":
        return cubic
    face_diagonals = 3 * m * (m - 1) ** 2
    if t.kind == "tet5":
        return cubic + face_diagonals
    return cubic + face_diagonals + (m - 1) ** 3


def incidence(mesh: Mesh) -> sp.csr_matrix:
    """Cell-by-edge 0/1 incidence matrix."""
    c, k = mesh.cells.shape
    rows = np.repeat(np.arange(c), k)
    data = np.ones(c * k, dtype=np.int64)
    return sp.csr_matrix((data, (rows, mesh.cells.ravel())), shape=(c, len(mesh.edges)))


def edge_neighbors(mesh: Mesh) -> sp.csr_matrix:
    """Symbolic matrix pattern: entry (i, j) is stored iff edges i and j share a cell."""
    if mesh.cells.size == 0:
        raise ValueError("mesh has no cells; sparsity is undefined")
    inc = incidence(mesh)
    pattern = (inc.T @ inc).tocsr()
    pattern.sort_indices()
    return pattern


@dataclass(frozen=True)
class SparsityReport:
    d: int
    per_edge_counts: dict[int, int]
    boundary_min: int
    counts: np.ndarray = field(repr=False, compare=False)

    def histogram_rows(self):
        return sorted(self.per_edge_counts.items())


@dataclass(frozen=True)
class RowPattern:
    histogram: dict[int, int]
    total_nonzeros: int
    counts: np.ndarray = field(repr=False, compare=False)


def _row_counts(mesh: Mesh) -> np.ndarray:
    return np.diff(edge_neighbors(mesh).indptr)


def sparsity_parameter(mesh: Mesh) -> SparsityReport:
    counts = _row_counts(mesh)
    hist = {int(k): int(v) for k, v in sorted(Counter(counts.tolist()).items())}
    return SparsityReport(d=int(counts.max()), per_edge_counts=hist, boundary_min=int(counts.min()), counts=counts)


def row_nonzero_counts(mesh: Mesh) -> RowPattern:
    counts = _row_counts(mesh)
    hist = {int(k): int(v) for k, v in sorted(Counter(counts.tolist()).items())}
    return RowPattern(histogram=hist, total_nonzeros=int(counts.sum()), counts=counts)


def cells_per_edge(mesh: Mesh) -> np.ndarray:
    return np.bincount(mesh.cells.ravel(), minlength=len(mesh.edges))


def adjacency_dump(mesh: Mesh) -> str:
    """One line per cell listing its edge ids, space separated."""
    return "".join(" ".join(str(int(e)) for e in row) + "\n" for row in mesh.cells)
