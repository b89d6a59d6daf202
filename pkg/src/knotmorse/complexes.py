"""Matching and Morse complexes with exact integer homology.

The matching complex of the overlay has the Tait edges as vertices and the
matchings as simplices, so its facets are the maximal matchings; the Morse
complex keeps the loop-free facets among them, and both have pure parts
generated by the top-dimensional facets.  The pure Morse facets are exactly
the images of the tree-pair construction, one top simplex per (spanning
tree, black root, white root) triple.

Homology is computed over the integers from sparse boundary matrices: a
unit-pivot elimination with a Markowitz fill heuristic clears almost
everything, and whatever core survives without unit entries goes through a
dense Smith normal form, so torsion is exact.  Face enumeration respects the
KNOTMORSE_MAX_FACES cap and raises ResourceLimit before allocating past it.
"""

from __future__ import annotations

import heapq
import os
from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import Iterable, Mapping

from .counting import spanning_trees
from .diagram import Diagram, TaitGraph, build_tait, colour_graphs
from .errors import ResourceLimit
from .states import enumerate_matchings, find_nonextendable, is_dmf, kpw

__all__ = [
    "SimplicialComplex",
    "HomologyResult",
    "matching_complex",
    "morse_complex",
    "pure_part",
    "pure_morse_from_trees",
    "homology",
    "connectivity_bound",
    "connectivity_report",
    "DEFAULT_MAX_FACES",
]

DEFAULT_MAX_FACES = 2_000_000


def _max_faces() -> int:
    raw = os.environ.get("KNOTMORSE_MAX_FACES", "")
    try:
        value = int(raw)
    except ValueError:
        return DEFAULT_MAX_FACES
    return value if value > 0 else DEFAULT_MAX_FACES


class SimplicialComplex:
    """Finite abstract simplicial complex given by its facets.

    Facets are canonical sorted vertex-id tuples, pairwise non-contained;
    the full face lists per dimension are materialized lazily and cached.
    """

    __slots__ = ("facets", "_faces")

    def __init__(self, facets: Iterable[Iterable[int]]):
        canonical = {tuple(sorted(f)) for f in facets}
        kept = [
            f
            for f in canonical
            if not any(set(f) < set(g) for g in canonical)
        ]
        self.facets: tuple[tuple[int, ...], ...] = tuple(sorted(kept, key=lambda f: (len(f), f)))
        self._faces: tuple[tuple[tuple[int, ...], ...], ...] | None = None

    @property
    def dimension(self) -> int:
        if not self.facets:
            return -1
        return len(self.facets[-1]) - 1

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SimplicialComplex) and self.facets == other.facets

    def __hash__(self) -> int:
        return hash(self.facets)

    def __repr__(self) -> str:
        return "SimplicialComplex(%d facets, dim %d)" % (len(self.facets), self.dimension)

    def faces(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        """All faces grouped by dimension, 0 through dimension, sorted."""
        if self._faces is None:
            cap = _max_faces()
            per_dim: list[set[tuple[int, ...]]] = [set() for _ in range(self.dimension + 1)]
            total = 0
            for facet in self.facets:
                for size in range(1, len(facet) + 1):
                    bucket = per_dim[size - 1]
                    for face in combinations(facet, size):
                        if face not in bucket:
                            total += 1
                            if total > cap:
                                raise ResourceLimit(
                                    "complex exceeds the face cap of %d (set KNOTMORSE_MAX_FACES)"
                                    % cap
                                )
                            bucket.add(face)
            self._faces = tuple(tuple(sorted(bucket)) for bucket in per_dim)
        return self._faces

    def face_counts(self) -> tuple[int, ...]:
        return tuple(len(bucket) for bucket in self.faces())

    def n_faces(self) -> int:
        return sum(self.face_counts())

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.face_counts()))

    def has_face(self, face: Iterable[int]) -> bool:
        wanted = set(face)
        return any(wanted <= set(f) for f in self.facets)

    def to_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "n_facets": len(self.facets),
            "facets": [list(f) for f in self.facets],
        }


def matching_complex(t: TaitGraph) -> SimplicialComplex:
    """Faces are the matchings; facets the maximal ones, perfect or not."""
    facets = [x.edges for x in enumerate_matchings(t, "maximal_pks")]
    facets.extend(x.edges for x in find_nonextendable(t))
    return SimplicialComplex(facets)


def morse_complex(t: TaitGraph) -> SimplicialComplex:
    """Subcomplex of the matching complex spanned by its loop-free facets.

    Facets are the maximal matchings that support no monochromatic loop:
    every perfect matching inducing a Morse pairing plus every loop-free
    non-extendable matching.  Faces are therefore the loop-free matchings
    that extend to a loop-free maximal one; a loop-free matching whose
    every completion acquires a loop is deliberately not a face.
    """
    facets = [x.edges for x in enumerate_matchings(t, "perfect_dmf")]
    facets.extend(
        x.edges for x in find_nonextendable(t) if is_dmf(t, x)
    )
    return SimplicialComplex(facets)


def pure_part(c: SimplicialComplex) -> SimplicialComplex:
    """The subcomplex generated by the top-dimensional facets."""
    top = c.dimension + 1
    return SimplicialComplex(f for f in c.facets if len(f) == top)


def pure_morse_from_trees(d: Diagram) -> SimplicialComplex:
    """One top simplex per (black spanning tree, black root, white root).

    Every simplex has dimension n - 1 for n crossings; the facet set equals
    the pure part of the Morse complex.
    """
    t = build_tait(d)
    black = colour_graphs(d)[0]
    facets = []
    for tree in spanning_trees(black):
        for v_b in t.black_faces:
            for v_w in t.white_faces:
                x = kpw(t, tree, v_b, v_w)
                assert len(x.edges) == d.n_crossings
                facets.append(x.edges)
    assert len(facets) == len({f for f in facets}), "tree triples must give distinct simplices"
    return SimplicialComplex(facets)


# ---------------------------------------------------------------------------
# Integer homology
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HomologyResult:
    """Reduced or unreduced integer homology, one entry per degree."""

    reduced: bool
    betti: tuple[int, ...]
    torsion: tuple[tuple[int, ...], ...]
    face_counts: tuple[int, ...]

    def ranks(self) -> dict[int, int]:
        """Nonzero betti numbers as a degree -> rank map."""
        return {k: b for k, b in enumerate(self.betti) if b}

    def torsion_by_degree(self) -> dict[int, tuple[int, ...]]:
        return {k: tor for k, tor in enumerate(self.torsion) if tor}

    def is_torsion_free(self) -> bool:
        return not any(self.torsion)

    def to_dict(self) -> dict:
        return {
            "reduced": self.reduced,
            "betti": {str(k): b for k, b in self.ranks().items()},
            "torsion": {str(k): list(v) for k, v in self.torsion_by_degree().items()},
            "face_counts": list(self.face_counts),
        }


def _dense_smith(rows: list[list[int]]) -> list[int]:
    """Invariant factors (positive, divisibility-chained) of a dense matrix."""
    m = [row[:] for row in rows]
    n_r = len(m)
    n_c = len(m[0]) if m else 0
    invs: list[int] = []
    t = 0
    while t < n_r and t < n_c:
        pi = pj = -1
        best = 0
        for i in range(t, n_r):
            for j in range(t, n_c):
                v = abs(m[i][j])
                if v and (best == 0 or v < best):
                    best, pi, pj = v, i, j
        if best == 0:
            break
        m[t], m[pi] = m[pi], m[t]
        for row in m:
            row[t], row[pj] = row[pj], row[t]
        while True:
            dirty = False
            for i in range(t + 1, n_r):
                if m[i][t]:
                    q = m[i][t] // m[t][t]
                    for j in range(t, n_c):
                        m[i][j] -= q * m[t][j]
                    if m[i][t]:
                        m[t], m[i] = m[i], m[t]
                        dirty = True
            for j in range(t + 1, n_c):
                if m[t][j]:
                    q = m[t][j] // m[t][t]
                    for i in range(t, n_r):
                        m[i][j] -= q * m[i][t]
                    if m[t][j]:
                        for i in range(t, n_r):
                            m[i][t] += m[i][j]
                        dirty = True
            if not dirty:
                break
        pivot = abs(m[t][t])
        stray = None
        for i in range(t + 1, n_r):
            for j in range(t + 1, n_c):
                if m[i][j] % pivot:
                    stray = i
                    break
            if stray is not None:
                break
        if stray is not None:
            for j in range(t, n_c):
                m[t][j] += m[stray][j]
            continue
        invs.append(pivot)
        t += 1
    for i in range(len(invs)):
        for j in range(i + 1, len(invs)):
            a, b = invs[i], invs[j]
            if b % a:
                g = gcd(a, b)
                invs[i], invs[j] = g, a * b // g
    return invs


def _sparse_rank_and_invariants(columns: list[dict[int, int]]) -> tuple[int, tuple[int, ...]]:
    """Rank and nontrivial invariant factors of a sparse integer matrix.

    Unit pivots keep every update integral and contribute trivial factors;
    the Markowitz product (row degree - 1)(column degree - 1) orders them to
    limit fill.  Whatever remains holds no unit entry and is handed to the
    dense routine.
    """
    cols: dict[int, dict[int, int]] = {
        j: dict(col) for j, col in enumerate(columns) if col
    }
    rows: dict[int, set[int]] = {}
    for j, col in cols.items():
        for r in col:
            rows.setdefault(r, set()).add(j)

    def cost(r: int, j: int) -> int:
        return (len(rows[r]) - 1) * (len(cols[j]) - 1)

    heap: list[tuple[int, int, int]] = []
    for j, col in cols.items():
        for r, v in col.items():
            if v in (1, -1):
                heap.append((cost(r, j), r, j))
    heapq.heapify(heap)
    rank = 0
    while heap:
        c0, r, j = heapq.heappop(heap)
        col = cols.get(j)
        if col is None or col.get(r) not in (1, -1):
            continue
        now = cost(r, j)
        if now > c0:
            heapq.heappush(heap, (now, r, j))
            continue
        pivot = col[r]
        pivot_col = cols.pop(j)
        for rr in pivot_col:
            rows[rr].discard(j)
        rank += 1
        for jj in tuple(rows.get(r, ())):
            target = cols[jj]
            f = target[r] * pivot
            for rr, vv in pivot_col.items():
                new = target.get(rr, 0) - f * vv
                if new:
                    if rr not in target:
                        rows.setdefault(rr, set()).add(jj)
                    target[rr] = new
                    if new in (1, -1):
                        heapq.heappush(heap, (cost(rr, jj), rr, jj))
                else:
                    if rr in target:
                        del target[rr]
                        rows[rr].discard(jj)
            if not target:
                del cols[jj]
        rows.pop(r, None)
    if not cols:
        return rank, ()
    live_rows = sorted({r for col in cols.values() for r in col})
    row_index = {r: i for i, r in enumerate(live_rows)}
    dense = [[0] * len(cols) for _ in live_rows]
    for jj, col in enumerate(sorted(cols)):
        for r, v in cols[col].items():
            dense[row_index[r]][jj] = v
    invs = _dense_smith(dense)
    assert all(v not in (0, 1) for v in invs), "unit factors must fall in the sparse phase"
    return rank + len(invs), tuple(v for v in invs if v > 1)


def _boundary_columns(
    lower_index: Mapping[tuple[int, ...], int], upper: Iterable[tuple[int, ...]]
) -> list[dict[int, int]]:
    out = []
    for face in upper:
        col: dict[int, int] = {}
        for i in range(len(face)):
            sub = face[:i] + face[i + 1 :]
            col[lower_index[sub]] = (-1) ** i
        out.append(col)
    return out


def homology(c: SimplicialComplex, reduced: bool = True) -> HomologyResult:
    """Exact integer homology from Smith normal forms of the boundaries."""
    faces = c.faces()
    if not faces:
        return HomologyResult(reduced=reduced, betti=(), torsion=(), face_counts=())
    counts = [len(bucket) for bucket in faces]
    dim = len(faces) - 1
    ranks = [0] * (dim + 2)
    torsion: list[tuple[int, ...]] = [() for _ in range(dim + 1)]
    if reduced and counts[0]:
        ranks[0] = 1
    lower_index = {face: i for i, face in enumerate(faces[0])}
    for k in range(1, dim + 1):
        columns = _boundary_columns(lower_index, faces[k])
        rank, invs = _sparse_rank_and_invariants(columns)
        ranks[k] = rank
        torsion[k - 1] = invs
        lower_index = {face: i for i, face in enumerate(faces[k])}
    betti = []
    for k in range(dim + 1):
        b = counts[k] - ranks[k] - ranks[k + 1]
        assert b >= 0, "negative rank in degree %d" % k
        betti.append(b)
    return HomologyResult(
        reduced=reduced,
        betti=tuple(betti),
        torsion=tuple(torsion),
        face_counts=tuple(counts),
    )


# ---------------------------------------------------------------------------
# Connectivity bounds
# ---------------------------------------------------------------------------

def connectivity_bound(d: Diagram) -> int:
    """Guaranteed connectivity degree of the matching complex.

    With n crossings and f the largest number of arcs on a face boundary,
    the complex is at least (floor((4n - 1) / (2f)) - 1)-connected.
    """
    f = max(face.degree for face in d.faces)
    return (4 * d.n_crossings - 1) // (2 * f) - 1


def connectivity_report(d: Diagram) -> dict:
    f = max(face.degree for face in d.faces)
    n = d.n_crossings
    return {
        "crossings": n,
        "max_face_degree": f,
        "bound": connectivity_bound(d),
        "connected_guaranteed": 4 * n >= 2 * f + 1,
        "simply_connected_guaranteed": 4 * n >= 4 * f + 1,
    }
