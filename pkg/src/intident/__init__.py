"""intident: numerical verification of angular integral-reduction identities."""

__version__ = "0.1.0"

from .quadrature import (AccuracyError, AxisSpec, QuadPolicy, QuadResult,
                         integrate_1d, integrate_nd, monte_carlo_nd)
from .specfun import (DomainError, Modulus, SeriesError, SeriesPolicy,
                      bessel_i0, bessel_struve_gap, catalan_const, ellip_k,
                      ellip_k_comp, gamma_fn, hyp3f2_half, struve_l0)
from .testfuncs import TestFunction, get_test_function
from .verdicts import CheckSpec, SideResult, VerificationRecord
from .moments import (MomentTable, MomentMismatchError, kn_oracle,
                      kn_recursive, moment_table)
from .reduction import (ReducedForm, ReductionBenchmark, SinProductIntegral,
                        benchmark_reduction, naive_cubature,
                        reduce_sin_product, verify_s_transform)
from .identities import (Identity, RunSettings, build_registry,
                         evaluate_identity, kernel_eq15, verify_suite)
from .report import Report, render_report

__all__ = [
    "__version__",
    "AccuracyError", "AxisSpec", "QuadPolicy", "QuadResult",
    "integrate_1d", "integrate_nd", "monte_carlo_nd",
    "DomainError", "Modulus", "SeriesError", "SeriesPolicy",
    "bessel_i0", "bessel_struve_gap", "catalan_const", "ellip_k",
    "ellip_k_comp", "gamma_fn", "hyp3f2_half", "struve_l0",
    "TestFunction", "get_test_function",
    "CheckSpec", "SideResult", "VerificationRecord",
    "MomentTable", "MomentMismatchError", "kn_oracle", "kn_recursive",
    "moment_table",
    "ReducedForm", "ReductionBenchmark", "SinProductIntegral",
    "benchmark_reduction", "naive_cubature", "reduce_sin_product",
    "verify_s_transform",
    "Identity", "RunSettings", "build_registry", "evaluate_identity",
    "kernel_eq15", "verify_suite",
    "Report", "render_report",
]
