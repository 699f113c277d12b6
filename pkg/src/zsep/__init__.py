"""Separating tuples of indeterminates for polynomial ideals.

Detection of (coherently) Z-separating tuples, extraction of the witnessing
polynomials, and elimination by substitution, over Q and over the boolean
polynomial ring F2[x]/<x^2 - x>.  No Groebner basis computation is involved
in the main algorithms; a small Buchberger engine ships for cross-checking
in tests.
"""

from .poly import (
    FIELD_F2,
    FIELD_Q,
    Polynomial,
    PolySystem,
    QQ,
    Ring,
    make_ring,
)
from .orderings import (
    DegRevLex,
    Lex,
    MatrixOrdering,
    WeightThenTiebreak,
    is_term_ordering_matrix,
)
from .sepcheck import (
    EXT_DELETED,
    EXT_UNDELETED,
    CheckOutcome,
    check_separating,
    check_separating_optimized,
    scan_subsets,
)
from .sepextract import (
    CoherentTuple,
    SeparatingTuple,
    compatible_ordering,
    coherent_tuple,
    eliminate,
    find_separating_tuple,
    find_separating_tuple_tracked,
)
from .boolring import (
    bool_check_separating,
    bool_coherent_tuple,
    bool_find_separating_tuple,
    vanishing_ideal_degree_bounded,
)

__version__ = "0.1.0"

__all__ = [
    "FIELD_F2",
    "FIELD_Q",
    "Polynomial",
    "PolySystem",
    "QQ",
    "Ring",
    "make_ring",
    "Lex",
    "DegRevLex",
    "WeightThenTiebreak",
    "MatrixOrdering",
    "is_term_ordering_matrix",
    "CheckOutcome",
    "EXT_DELETED",
    "EXT_UNDELETED",
    "check_separating",
    "check_separating_optimized",
    "scan_subsets",
    "SeparatingTuple",
    "CoherentTuple",
    "compatible_ordering",
    "coherent_tuple",
    "eliminate",
    "find_separating_tuple",
    "find_separating_tuple_tracked",
    "bool_check_separating",
    "bool_coherent_tuple",
    "bool_find_separating_tuple",
    "vanishing_ideal_degree_bounded",
    "__version__",
]
