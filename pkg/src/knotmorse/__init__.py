"""Exact combinatorics of chequerboard knot projections.

Parse PD codes, build colour graphs and the Tait overlay, enumerate partial
Kauffman states and discrete Morse matchings, apply clock and click moves,
count states by Kirchhoff-style determinants and forest polynomials, and take
exact integer homology of the matching and Morse complexes.
"""

from __future__ import annotations

from .errors import (
    ArcMultiplicityError,
    ColouringConflict,
    EmptyDiagram,
    InvalidForest,
    KnotmorseError,
    LeafOfAmbient,
    MalformedSyntax,
    NonPlanarCode,
    NotAcyclic,
    NotAdmissible,
    NotALeaf,
    NotPerfectAdmissible,
    NotSpanning,
    ResourceLimit,
)
from .diagram import (
    BLACK,
    WHITE,
    Diagram,
    Face,
    PDCode,
    PlaneGraph,
    Square,
    TaitGraph,
    build_diagram,
    build_tait,
    colour_graphs,
    is_reduced,
    parse_pd,
)
from .corpus import (
    CorpusEntry,
    corpus_names,
    get_entry,
    load_corpus,
    rational_pd,
    torus_pd,
)
from .counting import (
    ForestPolynomial,
    IntegerMatrix,
    count_all_dmfs,
    count_perfect_dmfs,
    count_spanning_trees,
    count_via_enumeration,
    fibonacci_family_count,
    forest_polynomial,
    laplacian,
    spanning_trees,
)
from .complexes import (
    DEFAULT_MAX_FACES,
    HomologyResult,
    SimplicialComplex,
    connectivity_bound,
    connectivity_report,
    homology,
    matching_complex,
    morse_complex,
    pure_morse_from_trees,
    pure_part,
)
from .reference import (
    COLUMNS,
    REFERENCE_HOMOLOGY,
    computed_row,
    reference_complexes,
)
from .moves import (
    Move,
    MoveGraph,
    build_move_graph,
    click_loop_moves,
    click_path_avoidance,
    click_path_moves,
    clock_moves,
    leaf_spin,
    marked_arc_roots,
    move_graph_to_dict,
    move_graph_to_dot,
    shortest_move_sequence,
    two_click_connect,
    verify_connectivity,
)
from .states import (
    ForestPair,
    JordanResolution,
    Matching,
    critical_cells,
    enumerate_matchings,
    find_nonextendable,
    forests_to_matching,
    induced_forests,
    is_admissible,
    is_dmf,
    is_maximal,
    is_perfect,
    jordan_resolution,
    kauffman_states,
    kpw,
    loop_sides,
    monochromatic_loops,
)

__version__ = "0.1.0"
