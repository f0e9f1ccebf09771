"""Exact lattice arithmetic for hyperbolic Picard-type lattices.

Everything is integer and Fraction arithmetic; the only deliberate
exceptions are the Decimal log10 fields of logarithmic bound values
and the float negative infinity used by the log-discrepancy module.
"""

from .bounds import (
    BoundQuery,
    BoundValue,
    DEFAULT_EXACT_THRESHOLD,
    birationality_bound,
    factorial_of_power,
    factorial_or_log,
    moduli_bound,
    moduli_dimension,
)
from .cones import (
    ConeContext,
    DEFAULT_ORBIT_BUDGET,
    WallVerdict,
    WallWitness,
    chamber_signature,
    enumerate_negative_classes,
    in_fe_chamber,
    in_positive_cone,
    is_integral_reflection,
    is_wall_divisor,
    make_cone_context,
    monodromy_orbit,
    reflect,
)
from .errors import DomainError
from .lattice import (
    DiscriminantGroup,
    Frame,
    FramedVector,
    Lattice,
    SmithDecomposition,
    discriminant_group,
    divisibility,
    dual,
    dual_class,
    dual_pairing,
    is_primitive,
    make_lattice,
    primal,
    primal_of_dual,
    q_eval,
    smith_normal_form,
)
from .mld import (
    AccReport,
    LogPairTable,
    NEG_INFINITY,
    TableRow,
    check_sequence_acc,
    log_discrepancy,
    make_table,
    mld_along,
    mld_at,
)
from .zariski import (
    DenominatorAudit,
    VerificationReport,
    ZariskiDecomposition,
    denominator_audit,
    ruling_curve_class,
    verify_decomposition,
    zariski_decompose,
)

__version__ = "0.1.0"

__all__ = [
    "AccReport",
    "BoundQuery",
    "BoundValue",
    "ConeContext",
    "DEFAULT_EXACT_THRESHOLD",
    "DEFAULT_ORBIT_BUDGET",
    "DenominatorAudit",
    "DiscriminantGroup",
    "DomainError",
    "Frame",
    "FramedVector",
    "Lattice",
    "LogPairTable",
    "NEG_INFINITY",
    "SmithDecomposition",
    "TableRow",
    "VerificationReport",
    "WallVerdict",
    "WallWitness",
    "ZariskiDecomposition",
    "birationality_bound",
    "chamber_signature",
    "check_sequence_acc",
    "denominator_audit",
    "discriminant_group",
    "divisibility",
    "dual",
    "dual_class",
    "dual_pairing",
    "enumerate_negative_classes",
    "factorial_of_power",
    "factorial_or_log",
    "in_fe_chamber",
    "in_positive_cone",
    "is_integral_reflection",
    "is_primitive",
    "is_wall_divisor",
    "log_discrepancy",
    "make_cone_context",
    "make_lattice",
    "make_table",
    "mld_along",
    "mld_at",
    "moduli_bound",
    "moduli_dimension",
    "monodromy_orbit",
    "primal",
    "primal_of_dual",
    "q_eval",
    "reflect",
    "ruling_curve_class",
    "smith_normal_form",
    "verify_decomposition",
    "zariski_decompose",
]
