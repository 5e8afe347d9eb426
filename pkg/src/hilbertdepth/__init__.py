"""Exact Hilbert depth of graded modules from their Hilbert series."""

from .catalog import PowerIdealParams, SyzygyParams, power_ideal_coefficient, power_ideal_series
from .depth import (
    DepthReport,
    HilbertDecomposition,
    InternalInconsistency,
    NotAHilbertSeries,
    decompose,
    hdepth_via_multiplication,
    hdepth_via_numerator,
    hilbert_depth,
    verify_decomposition,
)
from .power import power_hdepth_formula
from .series import (
    LaurentPolynomial,
    PositivityCertificate,
    RationalSeries,
    SeriesPrefix,
    binomial,
    check_positivity,
    expand,
)

__version__ = "0.1.0"
