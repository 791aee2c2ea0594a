"""Exact Laplacian permanents of trees and bipartite unicyclic graphs."""

from .closed_forms import FormulaId, evaluate, lemma34_gap, parse_formula, theorem11_bounds
from .enumeration import ClassKind, ClassQuery, RankedResult, enumerate_class, rank_by_permanent, recognize
from .errors import (
    DisconnectedInput,
    InvalidParameters,
    LapermError,
    NotATree,
    NotBipartite,
    NotUnicyclic,
    OrderMismatch,
    ParseError,
    PreconditionViolated,
    SizeBound,
)
from .families import FamilySpec, build, format_spec, parse_spec, vertex_roles
from .graph import (
    Bipartition,
    Graph,
    GraphKind,
    bipartition,
    canonical_form,
    classify,
    diameter,
    format_edge_list,
    format_graph6,
    matching_number,
    parse_edge_list,
    parse_graph6,
)
from .permanent import (
    CharPoly,
    Dominance,
    char_poly,
    dominance_compare,
    laplacian,
    laplacian_permanent,
    permanent_naive,
    permanent_ryser,
    spanning_tree_count,
    tree_permanent,
    unicyclic_permanent,
)
from .transforms import Lemma35, OpI, OpII, OpIII, apply_move
from .verify import Status, VerificationReport, verify_theorem

from types import ModuleType as _Module

__all__ = [k for k, v in dict(globals()).items() if not k.startswith("_") and not isinstance(v, _Module)]
