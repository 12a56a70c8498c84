"""zetaconv: zeta-bearing convolution kernels on the critical strip.

Three classical kernels whose Fourier symbols carry the Riemann zeta
function, the analytic symbols themselves, a regularized spectral
deconvolution solver, a fully explicit Mertens-function worked example, and
numerical non-vanishing scans of the strip.
"""

__version__ = "0.1.0"

from .backend import backend_name
from .errors import (BudgetError, ConvergenceError, DomainError, GridError, LimitError,
                     PoleError, PrecisionError, RankError, SingularSymbolError,
                     TruncationWarning, ZetaconvError)
from .fourier import SampledFunction, Spectrum, convolve, forward_ft, inverse_ft, sample_symbol
from .kernels import (CalibrationReport, KernelInstance, KernelKind, QuadratureConfig,
                      calibrate_conventions, kernel_eval, kernel_eval_array, l1_norm,
                      symbol_eval, symbol_factors, symbol_numeric)
from .numtheory import (MertensEvaluator, MoebiusTable, ei_mellin_check, example_h,
                        example_phi, mertens, mertens_evaluator, moebius_sieve,
                        verify_example)
from .solver import (NoRegularization, SolveConfig, SolveReport, SpectralCutoff, Tikhonov,
                     fit_translates, forward_apply, residual, solve)
from .specfun import StripPoint, T_MAX_DEFAULT, digamma, ei, eta, frac, gamma, log_gamma, zeta
from .stripscan import ScanGrid, ScanResult, WienerReport, scan_symbol, wiener_report

__all__ = [name for name in dir() if not name.startswith("_")]
