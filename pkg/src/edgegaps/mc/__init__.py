"""Monte Carlo checks on tridiagonal Gaussian and Laguerre beta-ensembles."""

from .compare import Comparison, ComparisonRow, SlopeFit, compare_mc_asym, least_squares_slope
from .ensembles import (
    EdgeWindow,
    EnsembleSpec,
    TridiagonalMatrix,
    count_in_window,
    sample,
    sample_gaussian,
    sample_laguerre,
    sturm_count_below,
)
from .runner import MCPlan, MCReport, run_mc, sample_stream
