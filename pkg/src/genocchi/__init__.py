"""Divided differences, Hermite-Genocchi integrals and certified Simpson quadrature."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    ConfluentNodes,
    EmptyInterval,
    EvaluationDomainError,
    ExprSyntaxError,
    GenocchiError,
    InsufficientDerivativeOrder,
    MaxDepthExceeded,
    NonDifferentiable,
)
from .expression import differentiate, parse, to_oracle, to_text  # noqa: E402
from .hermite import derivative_from_dd, hg_divided_difference  # noqa: E402
from .interpolation import (  # noqa: E402
    ErrorCertificate,
    NewtonPolynomial,
    lagrange_bound,
    lagrange_certificate,
    newton_eval,
    newton_fit,
    remainder,
)
from .quadrature import QuadResult, RombergTable, composite_simpson, romberg, simpson  # noqa: E402
from .replay import ReplayReport, build_F, eval_G, eval_H, replay  # noqa: E402
from .simplex import QuadratureConfig, SimplexIntegrand, integrate_1d, integrate_simplex  # noqa: E402
from .tables import (  # noqa: E402
    DividedDifferenceTable,
    FunctionOracle,
    NodeList,
    Rigor,
    ampere_explicit,
    build_table,
    top_difference,
)
