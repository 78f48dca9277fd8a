"""Igusa-Todorov phi and psi invariants of radical square zero algebras kQ/J^2."""

from itq.classify import (
    AlgebraProfile,
    analyze,
    classify_low_phidim,
    classify_maximality,
    phidim_opposite_check,
)
from itq.equitable import (
    Partition,
    coarsest_equitable,
    enumerate_equitable,
    is_equitable,
    quotient,
    verify_transfer,
)
from itq.generators import generate
from itq.quiver import (
    ParseError,
    Quiver,
    classify_simples,
    format_quiver,
    heart_member,
    member_order_stats,
    opposite,
    parse_quiver,
    subhearts,
)
from itq.syzygy import (
    FormalModule,
    findim,
    gldim,
    phi,
    phi_A0,
    phidim,
    psi,
    psidim,
    syzygy_matrix,
)
from itq.witness import build_M_S, build_witness, gamma_graph, minimal_witness

__version__ = "0.1.0"
