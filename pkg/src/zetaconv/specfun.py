"""Special functions on and around the critical strip.

Public, validated entry points for log-gamma, Riemann zeta, Dirichlet eta,
digamma, the exponential integral on the negative axis, and the fractional
part.  The numeric work lives in the backend (compiled core or pure-Python
twin); this layer owns domain checks, pole detection and the validated-height
ceiling.

All functions are pure and thread-safe; the only state is immutable constant
tables initialized at import.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from . import backend
from .errors import DomainError, PoleError, PrecisionError

#: Validated height ceiling for zeta evaluation.  The Euler-Maclaurin engine
#: keeps relative error below 1e-10 for |Im s| <= 100 and has been spot
#: validated against a high-precision oracle up to this ceiling.
T_MAX_DEFAULT = 1000.0

EULER_GAMMA = backend.EULER_GAMMA

_LN2 = math.log(2.0)
#: eta'(1) = gamma*log 2 - (log 2)^2 / 2, for the Taylor patch at s = 1.
_ETA_PRIME_1 = EULER_GAMMA * _LN2 - 0.5 * _LN2 * _LN2

#: |Im s| beyond which exp/log intermediates in the Lanczos sum are not
#: guaranteed overflow-safe.
_LGAMMA_IM_MAX = 1.0e7


@dataclass(frozen=True)
class StripPoint:
    """A point s = sigma + i t inside the open critical strip 0 < sigma < 1.

    t is capped by ``t_max`` (default 1000), the height up to which the zeta
    engine is validated; beyond it evaluation would be silently inaccurate,
    so construction fails loudly instead.
    """

    sigma: float
    t: float
    t_max: float = field(default=T_MAX_DEFAULT, compare=False)

    def __post_init__(self) -> None:
        if not (0.0 < self.sigma < 1.0):
            raise DomainError(f"sigma must lie in (0,1), got {self.sigma!r}")
        if not abs(self.t) <= self.t_max:
            raise PrecisionError(
                f"|t|={abs(self.t):g} exceeds the validated ceiling {self.t_max:g}")

    @property
    def s(self) -> complex:
        return complex(self.sigma, self.t)


def _is_nonpositive_integer(s: complex) -> bool:
    return s.imag == 0.0 and s.real <= 0.0 and s.real == math.floor(s.real)


def log_gamma(s: complex) -> complex:
    """Principal branch of log Gamma(s).

    Lanczos (g=7, 9 coefficients) for Re s >= 1/2, reflection below.
    exp(log_gamma(s)) reproduces Gamma(s); PoleError at non-positive integers.
    """
    s = complex(s)
    if _is_nonpositive_integer(s):
        raise PoleError(f"log_gamma pole at s={s.real:g}")
    if abs(s.imag) > _LGAMMA_IM_MAX:
        raise OverflowError(f"|Im s|={abs(s.imag):g} beyond overflow-safe range")
    v = backend.log_gamma(s)
    if not (math.isfinite(v.real) and math.isfinite(v.imag)):
        raise OverflowError(f"log_gamma overflow at s={s!r}")
    return v


def gamma(s: complex) -> complex:
    """Gamma(s) = exp(log_gamma(s)); underflows to 0 high in the strip."""
    return cmath.exp(log_gamma(s))


def zeta(s: complex, *, t_max: float = T_MAX_DEFAULT) -> complex:
    """Riemann zeta by Euler-Maclaurin (N = max(20, |Im s|), 12 corrections).

    Relative error <= 1e-10 for |Im s| <= 100; validated up to ``t_max``.
    """
    s = complex(s)
    if s == 1.0:
        raise PoleError("zeta pole at s=1")
    if abs(s.imag) > t_max:
        raise PrecisionError(
            f"|Im s|={abs(s.imag):g} exceeds the validated ceiling {t_max:g}")
    return backend.zeta(s)


def eta(s: complex, *, t_max: float = T_MAX_DEFAULT) -> complex:
    """Dirichlet eta(s) = (1 - 2^{1-s}) zeta(s), finite at s = 1.

    Inside |s-1| < 1e-8 a first-order Taylor patch around eta(1) = log 2 is
    used; elsewhere the product form.  Near the factor zeros s = 1 - 2*pi*i*k/
    log 2 (k != 0, off the strip) relative precision degrades gracefully while
    absolute precision holds.
    """
    s = complex(s)
    if abs(s - 1.0) < 1e-8:
        return _LN2 + (s - 1.0) * _ETA_PRIME_1
    factor = 1.0 - cmath.exp((1.0 - s) * _LN2)
    return factor * zeta(s, t_max=t_max)


def digamma(x: float) -> float:
    """psi(x) for real x > 0, absolute error <= 1e-12."""
    if not (x > 0.0):
        raise DomainError(f"digamma requires x > 0, got {x!r}")
    return backend.digamma(x)


def ei(x: float) -> float:
    """Exponential integral Ei(x) for x < 0 (the only range the package needs).

    Relative error <= 1e-10; |Ei(x)| <= e^x/|x| on the domain.
    """
    if not (x < 0.0):
        raise DomainError(f"ei requires x < 0, got {x!r}")
    return backend.ei(x)


def e1_continued_fraction(z: float) -> float:
    """E1(z) by continued fraction; second internal path, Ei(-z) = -E1(z)."""
    if not (z > 0.0):
        raise DomainError(f"e1 requires z > 0, got {z!r}")
    return backend.e1_cf(z)


def frac(x: float) -> float:
    """Fractional part x - floor(x) in [0, 1) (floor convention at negatives)."""
    if not math.isfinite(x):
        raise DomainError(f"frac requires finite x, got {x!r}")
    return backend.frac(x)
