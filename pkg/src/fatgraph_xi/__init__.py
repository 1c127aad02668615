"""Trivalent fatgraph spines, homology markings and the invariant xi."""
from .fatgraph import (BoundaryOrder, Fatgraph, FlipMove, ValidationReport, VertexFrame,
                       attach_tail, boundary_order, canonical_form, canonical_graph,
                       classify_vertices, corners, find_odd_edge_cycle, flip, glue,
                       greedy_tree, is_balanced, is_chord_diagram, remove_tail,
                       tail_slide, validate)
from .homology import (Marking, initial_marking, intersection_sign, is_primitive,
                       pair, pair_with_cycle, transport_marking, walk_marking)
from .cocycles import Trivector, contraction, cocycle_values, evaluate_sequence, wedge3
from .xi import XiResult, check_delta, xi, xi_mod2_direct, xi_punctured
from .spin import EdgeForm, QuadForm, extend_form, q_G, q_bar, q_wind, transport_form
from .enumeration import enumerate_graphs, random_walk, WalkSpec

__version__ = "0.1.0"
