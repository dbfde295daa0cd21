"""Exact arithmetic for weighted q-Bernstein polynomials, modified weighted
q-Genocchi numbers and polynomials, and truncated fermionic p-adic
q-integrals, with a mechanical identity-verification battery."""

from .bernstein import (
    BernsteinSpec,
    bernstein_eval,
    moment_expansion_sum,
    moment_integral_exact,
    moment_theorem_rhs,
)
from .genocchi import (
    GenocchiTable,
    SeriesApprox,
    TablePool,
    VARIANT_CORRECTED,
    VARIANT_PRINTED,
    genocchi_num,
    genocchi_poly,
    genocchi_poly_umbral,
    genocchi_series,
)
from .padic import (
    ConvergenceProfile,
    IntegrandSpec,
    PadicContext,
    convergence_profile,
    fermionic_partial_sum,
    valuation,
)
from .qnum import (
    DEFAULT_Q_SAMPLES,
    PoleError,
    QPoint,
    Rat,
    Weights,
    format_rat,
    parse_rat,
    q_bracket,
)
from .verify import (
    GridSpec,
    Identity,
    IdentityReport,
    emit,
    exit_status,
    parse_config,
    run_all,
    run_identity,
    summarize,
)

__version__ = "0.1.0"

__all__ = [
    "BernsteinSpec",
    "ConvergenceProfile",
    "DEFAULT_Q_SAMPLES",
    "GenocchiTable",
    "GridSpec",
    "Identity",
    "IdentityReport",
    "IntegrandSpec",
    "PadicContext",
    "PoleError",
    "QPoint",
    "Rat",
    "SeriesApprox",
    "TablePool",
    "VARIANT_CORRECTED",
    "VARIANT_PRINTED",
    "Weights",
    "bernstein_eval",
    "convergence_profile",
    "emit",
    "exit_status",
    "fermionic_partial_sum",
    "format_rat",
    "genocchi_num",
    "genocchi_poly",
    "genocchi_poly_umbral",
    "genocchi_series",
    "moment_expansion_sum",
    "moment_integral_exact",
    "moment_theorem_rhs",
    "parse_config",
    "parse_rat",
    "q_bracket",
    "run_all",
    "run_identity",
    "summarize",
    "valuation",
    "__version__",
]
