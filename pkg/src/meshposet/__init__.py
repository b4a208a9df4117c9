"""Mesh pattern containment, the mesh pattern poset and its Möbius function."""

from .containment import (
    Region,
    boxes_used,
    classical_occurrences,
    contains,
    is_mesh_occurrence,
    max_induced_shading,
    merges_shadings,
    mesh_in_perm_occurrences,
    mesh_occurrences,
    occurs,
    region,
)
from .errors import *  # noqa: F401,F403
from .pattern import *  # noqa: F401,F403
from .pattern import MeshPattern, parse_pattern
from .poset import (
    ChainStats,
    Interval,
    OrderComplex,
    chain_stats,
    classify_impure_edge,
    components,
    find_shelling,
    interval,
    interval_mobius,
    is_chain,
    is_nonpure_from_singleton,
    is_strongly_disconnected,
    mobius,
    mobius_via_chains,
    order_complex,
    patterns_below,
)
from .stats import Estimate, contains_forbidden_singleton, estimate_pattern_containment, estimate_proportion, exact_proportion
from .words import gamma_to_word, mobius_word, mu_gamma_closed_form, normal_embeddings, subword_contains, word_to_gamma

__version__ = "0.1.0"
