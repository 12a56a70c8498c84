"""Pure-Python implementations of the hot numeric kernels.

This module is the fallback twin of the compiled extension ``zetaconv._core``:
identical algorithms, identical constants, so the two backends agree to
rounding.  Scalar entry points use ``math``/``cmath``; the ``*_band``/``*_arr``
entry points vectorize with numpy for grid workloads.

Algorithms
----------
* ``zeta``      Euler-Maclaurin with N = max(20, ceil|Im s|) leading terms and
                12 Bernoulli corrections; validated on the critical strip for
                |Im s| <= 1000.
* ``log_gamma`` Lanczos approximation (g=7, 9 coefficients), reflection for
                Re s < 1/2 with a branch-stable log-sin.
* ``digamma``   recurrence lift to x >= 10 plus the Bernoulli asymptotic series.
* ``ei``        power series on [-6, 0), continued fraction (modified Lentz)
                for the E1 form below that.
* ``kernel``    the three convolution kernels k_sigma(u) in overflow-safe form.
* ``moebius``   segmented numpy sieve of the Moebius function.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

HAVE_C = False

SALEM = 0
FRACPART = 1
DIGAMMA = 2

EULER_GAMMA = 0.5772156649015328606
_LOG_PI = 1.1447298858494002
_LOG_2 = 0.6931471805599453
_HALF_LOG_2PI = 0.9189385332046727

# Lanczos g=7, n=9 coefficient set (standard double-precision fit).
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

# B_{2k}/(2k)! for k = 1..12 (Euler-Maclaurin correction weights).
_EM_COEF = (
    0.08333333333333333,
    -0.001388888888888889,
    3.306878306878307e-05,
    -8.267195767195768e-07,
    2.08767569878681e-08,
    -5.284190138687493e-10,
    1.3382536530684679e-11,
    -3.3896802963225827e-13,
    8.586062056277845e-15,
    -2.174868698558062e-16,
    5.5090028283602295e-18,
    -1.3954464685812522e-19,
)

# B_{2k}/(2k) for k = 1..7 (digamma asymptotic series weights).
_PSI_COEF = (
    0.08333333333333333,      # 1/12
    -0.008333333333333333,    # -1/120
    0.003968253968253968,     # 1/252
    -0.004166666666666667,    # -1/240
    0.007575757575757576,     # 1/132
    -0.021092796092796094,    # -691/32760
    0.08333333333333333,      # 1/12
)

# psi(e^u + 1) - u = w * P(w) with w = e^{-u}; P coefficients, low order first.
_DPSI_P = (
    0.5,
    -0.08333333333333333,     # -1/12 * w
    0.0,
    0.008333333333333333,     # 1/120 * w^3
    0.0,
    -0.003968253968253968,    # -1/252 * w^5
    0.0,
    0.004166666666666667,     # 1/240 * w^7
    0.0,
    -0.007575757575757576,    # -1/132 * w^9
    0.0,
    0.021092796092796094,     # 691/32760 * w^11
    0.0,
    -0.08333333333333333,     # -1/12 * w^13
)

_DPSI_SWITCH = 2.2  # above this u, use the w-series for psi(e^u+1)-u


# ---------------------------------------------------------------------------
# Riemann zeta, Euler-Maclaurin
# ---------------------------------------------------------------------------

def _em_n(t: float) -> int:
    return 20 if t < 20.0 else int(math.ceil(t))


def zeta(s: complex) -> complex:
    """zeta(s) for s != 1; accuracy validated for |Im s| <= 1000."""
    s = complex(s)
    n_lead = _em_n(abs(s.imag))
    total = 1.0 + 0.0j
    for n in range(2, n_lead):
        total += cmath.exp(-s * math.log(n))
    ln_n = math.log(n_lead)
    n_pow = cmath.exp(-s * ln_n)          # N^{-s}
    total += 0.5 * n_pow
    total += n_pow * n_lead / (s - 1.0)   # N^{1-s}/(s-1)
    poch = s
    term_pow = n_pow / n_lead             # N^{-s-1}
    inv_n2 = 1.0 / (n_lead * n_lead)
    for k in range(12):
        total += _EM_COEF[k] * poch * term_pow
        two_k = 2 * (k + 1)
        poch = poch * (s + (two_k - 1)) * (s + two_k)
        term_pow *= inv_n2
    return total


def zeta_band(sigma: float, ts: np.ndarray) -> np.ndarray:
    """Vectorized zeta(sigma + i t) over an array of heights t.

    Uses one shared leading-sum length N = max(20, ceil(max|t|)) for the whole
    band, so values can differ from the scalar path at the rounding level.
    """
    ts = np.asarray(ts, dtype=np.float64)
    s = sigma + 1j * ts
    n_lead = _em_n(float(np.max(np.abs(ts))) if ts.size else 0.0)
    out = np.zeros(s.shape, dtype=np.complex128)
    ln = np.log(np.arange(1, n_lead, dtype=np.float64))
    flat_s = s.reshape(-1)
    flat_out = out.reshape(-1)
    chunk = max(1, (1 << 22) // max(1, n_lead))
    for i in range(0, flat_s.size, chunk):
        block = flat_s[i:i + chunk]
        flat_out[i:i + chunk] = np.exp(-np.outer(block, ln)).sum(axis=1)
    ln_n = math.log(n_lead)
    n_pow = np.exp(-s * ln_n)
    out += 0.5 * n_pow
    out += n_pow * n_lead / (s - 1.0)
    poch = s.copy()
    term_pow = n_pow / n_lead
    inv_n2 = 1.0 / (n_lead * n_lead)
    for k in range(12):
        out += _EM_COEF[k] * poch * term_pow
        two_k = 2 * (k + 1)
        poch = poch * (s + (two_k - 1)) * (s + two_k)
        term_pow = term_pow * inv_n2
    return out


# ---------------------------------------------------------------------------
# log Gamma, Lanczos
# ---------------------------------------------------------------------------

def _lanczos_right(z: complex) -> complex:
    # valid for Re z >= 0.5
    zm = z - 1.0
    x = _LANCZOS[0]
    for i in range(1, 9):
        x += _LANCZOS[i] / (zm + i)
    t = zm + 7.5
    return _HALF_LOG_2PI + (zm + 0.5) * cmath.log(t) - t + cmath.log(x)


def _log_sin_pi(z: complex) -> complex:
    # branch-stable log(sin(pi z)); exp of the result is exactly sin(pi z)
    if z.imag >= 0.0:
        q = cmath.exp(2j * math.pi * z)
        return complex(-_LOG_2, 0.5 * math.pi) - 1j * math.pi * z + cmath.log(1.0 - q)
    return _log_sin_pi(z.conjugate()).conjugate()


def log_gamma(z: complex) -> complex:
    """Principal branch of log Gamma; reflection below Re z = 1/2."""
    z = complex(z)
    if z.real >= 0.5:
        return _lanczos_right(z)
    return _LOG_PI - _log_sin_pi(z) - _lanczos_right(1.0 - z)


def _lanczos_right_vec(z: np.ndarray) -> np.ndarray:
    zm = z - 1.0
    x = np.full(z.shape, _LANCZOS[0], dtype=np.complex128)
    for i in range(1, 9):
        x += _LANCZOS[i] / (zm + i)
    t = zm + 7.5
    return _HALF_LOG_2PI + (zm + 0.5) * np.log(t) - t + np.log(x)


def log_gamma_band(sigma: float, ts: np.ndarray) -> np.ndarray:
    """Vectorized log_gamma(sigma + i t)."""
    ts = np.asarray(ts, dtype=np.float64)
    s = sigma + 1j * ts
    if sigma >= 0.5:
        return _lanczos_right_vec(s)
    pos = ts >= 0.0
    sp = np.where(pos, s, np.conj(s))
    q = np.exp(2j * math.pi * sp)
    lsin = complex(-_LOG_2, 0.5 * math.pi) - 1j * math.pi * sp + np.log(1.0 - q)
    lsin = np.where(pos, lsin, np.conj(lsin))
    return _LOG_PI - lsin - _lanczos_right_vec(1.0 - s)


# ---------------------------------------------------------------------------
# digamma and the kernel helper psi(e^u+1)-u
# ---------------------------------------------------------------------------

def digamma(x: float) -> float:
    """psi(x) for x > 0, absolute error well under 1e-12."""
    acc = 0.0
    while x < 10.0:
        acc -= 1.0 / x
        x += 1.0
    inv = 1.0 / x
    v = inv * inv
    series = 0.0
    for c in reversed(_PSI_COEF):
        series = v * (c + series)
    return acc + math.log(x) - 0.5 * inv - series


def _digamma_vec(z: np.ndarray) -> np.ndarray:
    acc = np.zeros(z.shape, dtype=np.float64)
    zz = z.astype(np.float64, copy=True)
    for _ in range(10):
        m = zz < 10.0
        if not m.any():
            break
        acc[m] -= 1.0 / zz[m]
        zz[m] += 1.0
    inv = 1.0 / zz
    v = inv * inv
    series = np.zeros_like(v)
    for c in reversed(_PSI_COEF):
        series = v * (c + series)
    return acc + np.log(zz) - 0.5 * inv - series


def dpsi(u: float) -> float:
    """psi(e^u + 1) - u, computed without cancellation for large u."""
    if u > _DPSI_SWITCH:
        w = math.exp(-u)
        return w * _dpsi_p_poly(w)
    return digamma(math.exp(u) + 1.0) - u


def _dpsi_p_poly(w: float) -> float:
    p = 0.0
    for c in reversed(_DPSI_P):
        p = p * w + c
    return p


def _dpsi_p_poly_vec(w: np.ndarray) -> np.ndarray:
    p = np.zeros_like(w)
    for c in reversed(_DPSI_P):
        p = p * w + c
    return p


# ---------------------------------------------------------------------------
# exponential integral Ei(x), x < 0
# ---------------------------------------------------------------------------

def _ei_series(x: float) -> float:
    # Ei(x) = gamma + ln|x| + sum_k x^k/(k k!), adequate for -6 <= x < 0
    total = 0.0
    term = 1.0
    for k in range(1, 200):
        term *= x / k
        contrib = term / k
        total += contrib
        if abs(contrib) <= 1e-18 * (abs(total) + 1e-300):
            break
    return EULER_GAMMA + math.log(-x) + total


def e1_cf(z: float) -> float:
    """E1(z) by the even continued fraction (modified Lentz), z >~ 4."""
    b = z + 1.0
    c = 1e308
    d = 1.0 / b
    h = d
    for n in range(1, 200):
        a = -float(n * n)
        b += 2.0
        d = 1.0 / (b + a * d)
        c = b + a / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    if z > 700.0:
        return 0.0
    return math.exp(-z) * h


def ei(x: float) -> float:
    """Ei(x) for x < 0."""
    if x >= -6.0:
        return _ei_series(x)
    return -e1_cf(-x)


def ei_arr(x: np.ndarray) -> np.ndarray:
    """Vectorized Ei over strictly negative arguments."""
    x = np.asarray(x, dtype=np.float64)
    out = np.empty(x.shape, dtype=np.float64)
    near = x >= -6.0
    if near.any():
        xs = x[near]
        total = np.zeros_like(xs)
        term = np.ones_like(xs)
        for k in range(1, 120):
            term *= xs / k
            total += term / k
        out[near] = EULER_GAMMA + np.log(-xs) + total
    far = ~near
    if far.any():
        z = -x[far]
        b = z + 1.0
        c = np.full_like(z, 1e308)
        d = 1.0 / b
        h = d.copy()
        for n in range(1, 80):
            a = -float(n * n)
            b = b + 2.0
            d = 1.0 / (b + a * d)
            c = b + a / c
            h *= c * d
        with np.errstate(under="ignore"):
            out[far] = -np.exp(-z) * h
    return out


# ---------------------------------------------------------------------------
# fractional part
# ---------------------------------------------------------------------------

def frac(x: float) -> float:
    """x - floor(x), with the wrap artifact at 1.0 mapped back to 0."""
    r = x - math.floor(x)
    return r if r < 1.0 else 0.0


# ---------------------------------------------------------------------------
# convolution kernels k_sigma(u)
# ---------------------------------------------------------------------------

def kernel(kind: int, sigma: float, u: float) -> float:
    """Pointwise k_sigma(u) for the three kernel families, overflow safe."""
    if kind == SALEM:
        if u > 709.0:
            return 0.0
        t = math.exp(u)
        if t <= 36.0:
            return math.exp(sigma * u) / (math.exp(t) + 1.0)
        w = sigma * u - t
        if w < -745.0:
            return 0.0
        return math.exp(w) / (1.0 + math.exp(-t))
    if kind == FRACPART:
        if u > 0.0:
            # {e^{-u}} = e^{-u} exactly on u > 0
            return math.exp((sigma - 1.0) * u)
        if u == 0.0:
            return 0.0
        if u < -36.7368005696771:  # -log(2^53): doubles carry no fractional info
            return 0.0
        return math.exp(sigma * u) * frac(math.exp(-u))
    # DIGAMMA
    if u > _DPSI_SWITCH:
        w = math.exp(-u)
        return math.exp((sigma - 1.0) * u) * _dpsi_p_poly(w)
    return math.exp(sigma * u) * (digamma(math.exp(u) + 1.0) - u)


def kernel_arr(kind: int, sigma: float, u: np.ndarray) -> np.ndarray:
    """Vectorized k_sigma over an array of offsets u."""
    u = np.asarray(u, dtype=np.float64)
    out = np.zeros(u.shape, dtype=np.float64)
    with np.errstate(over="ignore", under="ignore"):
        if kind == SALEM:
            safe = u <= 709.0
            t = np.exp(np.where(safe, u, 0.0))
            small = safe & (t <= 36.0)
            if small.any():
                out[small] = np.exp(sigma * u[small]) / (np.exp(t[small]) + 1.0)
            big = safe & ~small
            if big.any():
                w = sigma * u[big] - t[big]
                out[big] = np.where(w < -745.0, 0.0,
                                    np.exp(np.maximum(w, -746.0)) / (1.0 + np.exp(-t[big])))
        elif kind == FRACPART:
            pos = u > 0.0
            out[pos] = np.exp((sigma - 1.0) * u[pos])
            neg = (u < 0.0) & (u >= -36.7368005696771)
            if neg.any():
                t = np.exp(-u[neg])
                r = t - np.floor(t)
                r[r >= 1.0] = 0.0
                out[neg] = np.exp(sigma * u[neg]) * r
        else:
            far = u > _DPSI_SWITCH
            if far.any():
                w = np.exp(-u[far])
                out[far] = np.exp((sigma - 1.0) * u[far]) * _dpsi_p_poly_vec(w)
            near = ~far
            if near.any():
                z = np.exp(u[near]) + 1.0
                out[near] = np.exp(sigma * u[near]) * (_digamma_vec(z) - u[near])
    return out


# ---------------------------------------------------------------------------
# Moebius sieve
# ---------------------------------------------------------------------------

def _small_primes(n: int) -> np.ndarray:
    if n < 2:
        return np.empty(0, dtype=np.int64)
    is_p = np.ones(n + 1, dtype=bool)
    is_p[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if is_p[p]:
            is_p[p * p::p] = False
    return np.nonzero(is_p)[0].astype(np.int64)


def moebius(limit: int) -> np.ndarray:
    """mu(n) for n = 0..limit as int8 (index 0 unused, set to 0)."""
    out = np.zeros(limit + 1, dtype=np.int8)
    if limit < 1:
        return out
    primes = _small_primes(math.isqrt(limit))
    seg = 1 << 22
    for lo in range(1, limit + 1, seg):
        hi = min(lo + seg, limit + 1)
        n = hi - lo
        sign = np.ones(n, dtype=np.int8)
        rem = np.arange(lo, hi, dtype=np.int64)
        zero = np.zeros(n, dtype=bool)
        for p in primes:
            p = int(p)
            start = ((lo + p - 1) // p) * p
            if start < hi:
                sl = slice(start - lo, n, p)
                sign[sl] = -sign[sl]
                rem[sl] //= p
            p2 = p * p
            start2 = ((lo + p2 - 1) // p2) * p2
            if start2 < hi:
                zero[start2 - lo::p2] = True
        sign[rem > 1] = -sign[rem > 1]
        sign[zero] = 0
        out[lo:hi] = sign
    return out
