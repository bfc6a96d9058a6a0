"""Box-free r-partite hypergraphs from polynomial zero sets over finite fields."""

from .bounds import comparison_table, construction_exponent, cpz_exponent, erdos_exponent, paper_exponent
from .construction import (
    box_polynomial,
    build_instance,
    enumerate_edges_fast,
    rote_instance_report,
    trace_form_eval,
)
from .errors import BudgetExceeded, ContextMismatch
from .finite_field import FieldCtx, FieldElement, frobenius, make_field, trace, trace_fiber, units
from .hypergraph import BoxWitness, Hypergraph, find_complete_rpartite
from .multipoly import Polynomial, degree, divides, evaluate, maximal_monomials
from .nullstellensatz import (
    Grid,
    check_alon_instance,
    check_lason_instance,
    corollary_report,
    hypergraph_of,
    zero_set,
)

__version__ = "0.1.0"
