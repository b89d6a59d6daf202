"""Matching and Morse complexes, pure parts, and integer homology."""

from fractions import Fraction
from itertools import combinations

import pytest

from knotmorse import (
    REFERENCE_HOMOLOGY,
    HomologyResult,
    SimplicialComplex,
    build_tait,
    colour_graphs,
    computed_row,
    connectivity_bound,
    connectivity_report,
    corpus_names,
    count_spanning_trees,
    get_entry,
    homology,
    kauffman_states,
    marked_arc_roots,
    matching_complex,
    morse_complex,
    pure_morse_from_trees,
    pure_part,
    reference_complexes,
    spanning_trees,
)
from knotmorse.errors import ResourceLimit
from knotmorse.moves import click_path_moves, clock_moves
from knotmorse.states import (
    Matching,
    critical_cells,
    enumerate_matchings,
    induced_forests,
    is_dmf,
    monochromatic_loops,
)

SMALL = ("3_1", "4_1", "kink", "5_1", "5_2")
SIX_OR_LESS = ("3_1", "4_1", "kink", "5_1", "5_2", "6_1", "6_2", "6_3")

# the 6-vertex triangulation of the projective plane; every edge lies in
# exactly two of the ten triangles
RP2 = (
    (0, 1, 2), (0, 2, 3), (0, 1, 5), (0, 4, 5), (0, 3, 4),
    (1, 2, 4), (1, 3, 4), (1, 3, 5), (2, 3, 5), (2, 4, 5),
)


def grid_surface(klein, n=4):
    """Triangulated n*n grid glued into a torus, or a Klein bottle."""

    def vid(x, y):
        if klein and x >= n:
            x, y = x - n, (n - y) % n
        return (x % n) * n + (y % n)

    facets = []
    for x in range(n):
        for y in range(n):
            a, b = vid(x, y), vid(x + 1, y)
            c, d = vid(x, y + 1), vid(x + 1, y + 1)
            facets.append((a, b, d))
            facets.append((a, d, c))
    return facets


# ---------------------------------------------------------------------------
# SimplicialComplex basics
# ---------------------------------------------------------------------------

def test_facets_are_canonical_deduped_and_containment_free():
    c = SimplicialComplex([(2, 1), (1, 2), (1,), (3, 4, 5), (4, 3)])
    assert c.facets == ((1, 2), (3, 4, 5))
    assert c.dimension == 2


def test_empty_complex():
    c = SimplicialComplex([])
    assert c.dimension == -1
    assert c.facets == ()
    assert c.face_counts() == ()
    assert c.euler_characteristic() == 0
    h = homology(c)
    assert h.betti == ()
    assert h.is_torsion_free()


def test_faces_group_by_dimension_and_count():
    c = SimplicialComplex([(0, 1, 2)])
    assert c.face_counts() == (3, 3, 1)
    assert c.n_faces() == 7
    assert c.euler_characteristic() == 1
    assert c.faces()[1] == ((0, 1), (0, 2), (1, 2))


def test_has_face_checks_containment():
    c = SimplicialComplex([(0, 1, 2), (2, 3)])
    assert c.has_face((0, 2))
    assert c.has_face((3,))
    assert not c.has_face((0, 3))


def test_equality_and_hash_follow_facets():
    a = SimplicialComplex([(0, 1), (1, 2)])
    b = SimplicialComplex([(1, 2), (0, 1)])
    assert a == b
    assert hash(a) == hash(b)
    assert a != SimplicialComplex([(0, 1)])


def test_to_dict_shape():
    d = SimplicialComplex([(0, 1)]).to_dict()
    assert d == {"dimension": 1, "n_facets": 1, "facets": [[0, 1]]}


def test_pure_part_keeps_top_dimension_only_and_is_idempotent():
    c = SimplicialComplex([(0, 1, 2), (3, 4), (5, 6)])
    p = pure_part(c)
    assert p.facets == ((0, 1, 2),)
    assert pure_part(p) == p


# ---------------------------------------------------------------------------
# Homology engine sanity on known spaces
# ---------------------------------------------------------------------------

def test_circle_has_one_loop():
    c = SimplicialComplex([(0, 1), (1, 2), (0, 2)])
    h = homology(c)
    assert h.ranks() == {1: 1}
    assert h.is_torsion_free()


def test_unreduced_circle_counts_the_component():
    h = homology(SimplicialComplex([(0, 1), (1, 2), (0, 2)]), reduced=False)
    assert h.ranks() == {0: 1, 1: 1}


def test_solid_simplex_is_acyclic():
    h = homology(SimplicialComplex([(0, 1, 2, 3)]))
    assert h.ranks() == {}
    assert h.is_torsion_free()


def test_two_points_have_reduced_rank_one_in_degree_zero():
    h = homology(SimplicialComplex([(0,), (1,)]))
    assert h.ranks() == {0: 1}


def test_two_sphere_as_tetrahedron_boundary():
    h = homology(SimplicialComplex(list(combinations(range(4), 3))))
    assert h.ranks() == {2: 1}


def test_projective_plane_torsion():
    h = homology(SimplicialComplex(RP2))
    assert h.ranks() == {}
    assert h.torsion_by_degree() == {1: (2,)}
    assert not h.is_torsion_free()


def test_torus_homology():
    h = homology(SimplicialComplex(grid_surface(klein=False)))
    assert h.ranks() == {1: 2, 2: 1}
    assert h.is_torsion_free()


def test_klein_bottle_mixes_free_and_torsion_parts():
    h = homology(SimplicialComplex(grid_surface(klein=True)))
    assert h.ranks() == {1: 1}
    assert h.torsion_by_degree() == {1: (2,)}


def test_homology_result_to_dict():
    h = homology(SimplicialComplex(RP2))
    d = h.to_dict()
    assert d["reduced"] is True
    assert d["betti"] == {}
    assert d["torsion"] == {"1": [2]}
    assert d["face_counts"] == [6, 15, 10]


@pytest.mark.parametrize("name", ("3_1", "4_1"))
def test_sparse_engine_agrees_with_dense_rational_ranks(name):
    t = build_tait(get_entry(name).diagram)
    for c in (morse_complex(t), matching_complex(t)):
        faces = c.faces()
        counts = [len(fs) for fs in faces]
        ranks = [0] * (len(faces) + 1)
        for k in range(1, len(faces)):
            idx = {f: i for i, f in enumerate(faces[k - 1])}
            cols = []
            for up in faces[k]:
                col = {}
                for i in range(len(up)):
                    col[idx[up[:i] + up[i + 1:]]] = (-1) ** i
                cols.append(col)
            mat = [[Fraction(col.get(r, 0)) for col in cols] for r in range(counts[k - 1])]
            rank = 0
            for j in range(len(cols)):
                piv = next((r for r in range(rank, counts[k - 1]) if mat[r][j]), None)
                if piv is None:
                    continue
                mat[rank], mat[piv] = mat[piv], mat[rank]
                for r in range(counts[k - 1]):
                    if r != rank and mat[r][j]:
                        f = mat[r][j] / mat[rank][j]
                        for jj in range(j, len(cols)):
                            mat[r][jj] -= f * mat[rank][jj]
                rank += 1
            ranks[k] = rank
        expect = []
        for k in range(len(faces)):
            b = counts[k] - ranks[k] - ranks[k + 1] - (1 if k == 0 else 0)
            expect.append(b)
        got = homology(c)
        assert list(got.betti) == expect
        assert got.is_torsion_free()


# ---------------------------------------------------------------------------
# Complexes of a diagram: structure
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("name", SMALL)
def test_matching_complex_faces_are_exactly_the_nonempty_matchings(name):
    t = build_tait(get_entry(name).diagram)
    c = matching_complex(t)
    everything = {x.edges for x in enumerate_matchings(t, "all")} - {()}
    got = {f for bucket in c.faces() for f in bucket}
    assert got == everything


def test_trefoil_matching_complex_dimension_is_two():
    t = build_tait(get_entry("3_1").diagram)
    assert matching_complex(t).dimension == 2


@pytest.mark.parametrize("name", SMALL)
def test_morse_facets_are_loop_free_maximal_matchings(name):
    t = build_tait(get_entry(name).diagram)
    matching_facets = set(matching_complex(t).facets)
    for f in morse_complex(t).facets:
        assert f in matching_facets
        assert not monochromatic_loops(t, Matching(f))


@pytest.mark.parametrize("name", SMALL)
def test_morse_faces_are_loop_free_matchings(name):
    t = build_tait(get_entry(name).diagram)
    acyclic = {x.edges for x in enumerate_matchings(t, "dmf")} - {()}
    got = {f for bucket in morse_complex(t).faces() for f in bucket}
    assert got <= acyclic


@pytest.mark.parametrize("name", ("3_1", "4_1", "kink"))
def test_small_morse_complexes_carry_every_loop_free_matching(name):
    # with no non-extendable matchings around, the closure of the perfect
    # facets reaches every loop-free matching
    t = build_tait(get_entry(name).diagram)
    acyclic = {x.edges for x in enumerate_matchings(t, "dmf")} - {()}
    got = {f for bucket in morse_complex(t).faces() for f in bucket}
    assert got == acyclic


def test_five_one_excludes_loop_free_matchings_with_no_loop_free_completion():
    # 5_1 has loop-free matchings whose every maximal completion supports a
    # loop; they are deliberately not faces
    t = build_tait(get_entry("5_1").diagram)
    acyclic = {x.edges for x in enumerate_matchings(t, "dmf")} - {()}
    got = {f for bucket in morse_complex(t).faces() for f in bucket}
    assert got < acyclic


@pytest.mark.parametrize("name", SMALL)
def test_pure_parts_are_generated_by_perfect_matchings(name):
    t = build_tait(get_entry(name).diagram)
    n = t.n_crossings
    for c in (matching_complex(t), morse_complex(t)):
        p = pure_part(c)
        assert all(len(f) == n for f in p.facets)
    assert set(pure_part(morse_complex(t)).facets) == {
        x.edges for x in enumerate_matchings(t, "perfect_dmf")
    }


def test_trefoil_pure_morse_has_eighteen_triangles():
    t = build_tait(get_entry("3_1").diagram)
    p = pure_part(morse_complex(t))
    assert len(p.facets) == 18
    assert p.dimension == 2


def test_figure_eight_pure_morse_has_fortyfive_tetrahedra():
    p = pure_morse_from_trees(get_entry("4_1").diagram)
    assert len(p.facets) == 45
    assert p.dimension == 3


@pytest.mark.parametrize("name", SIX_OR_LESS + ("7_1", "7_2"))
def test_tree_triples_generate_the_pure_morse_complex(name):
    d = get_entry(name).diagram
    t = build_tait(d)
    from_trees = pure_morse_from_trees(d)
    assert set(from_trees.facets) == set(pure_part(morse_complex(t)).facets)
    black, white = colour_graphs(d)
    expected = (
        count_spanning_trees(black) * len(t.black_faces) * len(t.white_faces)
    )
    assert len(from_trees.facets) == expected


@pytest.mark.parametrize("name", ("3_1", "4_1", "5_2"))
def test_rooted_tree_pairs_name_each_top_simplex_once_per_colour(name):
    # the white forest, its root, and the black root identify the same
    # simplex that the black data generated, and exactly once
    t = build_tait(get_entry(name).diagram)
    seen = {}
    for x in enumerate_matchings(t, "perfect_dmf"):
        blacks, _, whites = critical_cells(t, x)
        pair = induced_forests(t, x)
        key = (pair.white_edges, whites[0], blacks[0])
        assert key not in seen
        seen[key] = x.edges
    assert len(seen) == len({v for v in seen.values()})


@pytest.mark.parametrize("name", ("4_1", "5_2"))
def test_clock_adjacent_top_facets_share_all_but_two_vertices(name):
    t = build_tait(get_entry(name).diagram)
    n = t.n_crossings
    for x in enumerate_matchings(t, "perfect_dmf"):
        for move, y in clock_moves(t, x):
            if is_dmf(t, y):
                assert len(set(x.edges) & set(y.edges)) == n - 2


@pytest.mark.parametrize("name", ("4_1", "5_2"))
def test_one_step_click_paths_share_all_but_one_vertex(name):
    t = build_tait(get_entry(name).diagram)
    n = t.n_crossings
    hits = 0
    for x in enumerate_matchings(t, "perfect_dmf"):
        for move, y in click_path_moves(t, x):
            if len(move.site[1]) == 2 and is_dmf(t, y):
                hits += 1
                assert len(set(x.edges) & set(y.edges)) == n - 1
    assert hits > 0


def test_marked_kauffman_states_span_a_circle_on_the_figure_eight():
    t = build_tait(get_entry("4_1").diagram)
    for arc in range(2 * t.n_crossings):
        v_b, v_w = marked_arc_roots(t, arc)
        states = kauffman_states(t, v_b, v_w)
        assert len(states) == 5
        h = homology(SimplicialComplex([s.edges for s in states]))
        assert h.ranks() == {1: 1}


# ---------------------------------------------------------------------------
# Homology of the diagram complexes
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("name", ("3_1", "4_1", "5_1", "5_2"))
def test_reference_homology_small_diagrams(name):
    row = computed_row(get_entry(name).diagram)
    for column, result in row.items():
        assert result.ranks() == REFERENCE_HOMOLOGY[name][column], column
        assert result.is_torsion_free(), column


@pytest.mark.parametrize("name", ("6_1", "6_2", "6_3"))
def test_reference_homology_six_crossings(name):
    row = computed_row(get_entry(name).diagram)
    for column, result in row.items():
        assert result.ranks() == REFERENCE_HOMOLOGY[name][column], column
        assert result.is_torsion_free(), column


@pytest.mark.parametrize("name", ("7_1", "7_2", "7_3", "7_4", "7_5", "7_6", "7_7"))
def test_reference_homology_seven_crossings(name):
    row = computed_row(get_entry(name).diagram)
    for column, result in row.items():
        assert result.ranks() == REFERENCE_HOMOLOGY[name][column], column
        assert result.is_torsion_free(), column


def test_five_two_pure_morse_euler_count_forces_the_degree_two_class():
    # the 84 top facets close up to reduced Euler characteristic -5, which
    # rules out a table of ranks supported in degree 3 alone
    t = build_tait(get_entry("5_2").diagram)
    p = pure_part(morse_complex(t))
    assert len(p.facets) == 84
    assert p.euler_characteristic() == -4
    assert homology(p).ranks() == {2: 1, 3: 6}


@pytest.mark.parametrize("name", SMALL)
def test_euler_characteristic_matches_alternating_betti_sum(name):
    for column, c in reference_complexes(get_entry(name).diagram).items():
        h = homology(c)
        chi = sum((-1) ** k * b for k, b in enumerate(h.betti))
        assert chi == c.euler_characteristic() - 1, column


# ---------------------------------------------------------------------------
# Connectivity bounds
# ---------------------------------------------------------------------------

def test_trefoil_connectivity_bound_is_zero():
    assert connectivity_bound(get_entry("3_1").diagram) == 0


def test_figure_eight_is_simply_connected_by_the_bound():
    d = get_entry("4_1").diagram
    assert connectivity_bound(d) == 1
    report = connectivity_report(d)
    assert report["connected_guaranteed"]
    assert report["simply_connected_guaranteed"]
    assert report["max_face_degree"] == 3
    assert report["crossings"] == 4


@pytest.mark.parametrize("name", corpus_names())
def test_betti_numbers_vanish_through_the_guaranteed_range(name):
    d = get_entry(name).diagram
    bound = connectivity_bound(d)
    t = build_tait(d)
    for c in (matching_complex(t), morse_complex(t)):
        h = homology(c)
        for k in range(bound + 1):
            assert (k >= len(h.betti)) or h.betti[k] == 0
            assert (k >= len(h.torsion)) or h.torsion[k] == ()


# ---------------------------------------------------------------------------
# Resource cap
# ---------------------------------------------------------------------------

def test_face_cap_raises_resource_limit(monkeypatch):
    monkeypatch.setenv("KNOTMORSE_MAX_FACES", "10")
    c = SimplicialComplex([(0, 1, 2, 3, 4)])
    with pytest.raises(ResourceLimit):
        c.faces()


def test_face_cap_ignores_malformed_values(monkeypatch):
    monkeypatch.setenv("KNOTMORSE_MAX_FACES", "lots")
    c = SimplicialComplex([(0, 1, 2)])
    assert c.n_faces() == 7
    monkeypatch.setenv("KNOTMORSE_MAX_FACES", "-3")
    assert SimplicialComplex([(0, 1, 2)]).n_faces() == 7


def test_homology_reports_the_cap_through_resource_limit(monkeypatch):
    monkeypatch.setenv("KNOTMORSE_MAX_FACES", "5")
    t = build_tait(get_entry("3_1").diagram)
    with pytest.raises(ResourceLimit):
        homology(matching_complex(t))


# ---------------------------------------------------------------------------
# Spanning tree enumeration
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("name", SIX_OR_LESS)
def test_spanning_tree_enumeration_matches_the_determinant_count(name):
    for g in colour_graphs(get_entry(name).diagram):
        trees = spanning_trees(g)
        assert len(trees) == len(set(trees))
        assert len(trees) == count_spanning_trees(g)
