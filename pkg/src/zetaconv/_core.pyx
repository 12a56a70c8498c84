# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled twin of ``zetaconv._purepy``: same algorithms, same constants.

Scalar special functions and the kernel evaluations run as tight C loops;
the segmented Moebius sieve marks with C strides.  See _purepy.py for the
algorithm notes; the two modules are kept in lockstep so the backends agree
to rounding.
"""

import math

import numpy as np

cimport numpy as cnp
from libc.math cimport atan2, ceil, cos, exp, fabs, floor, hypot, log, sin

cnp.import_array()

HAVE_C = True

SALEM = 0
FRACPART = 1
DIGAMMA = 2

cdef int _K_SALEM = 0
cdef int _K_FRACPART = 1

EULER_GAMMA = 0.5772156649015328606

cdef double _EULER_GAMMA = 0.5772156649015328606
cdef double _LOG_PI = 1.1447298858494002
cdef double _LOG_2 = 0.6931471805599453
cdef double _HALF_LOG_2PI = 0.9189385332046727
cdef double _PI = 3.141592653589793

cdef double[9] _LANCZOS
_LANCZOS[0] = 0.99999999999980993
_LANCZOS[1] = 676.5203681218851
_LANCZOS[2] = -1259.1392167224028
_LANCZOS[3] = 771.32342877765313
_LANCZOS[4] = -176.61502916214059
_LANCZOS[5] = 12.507343278686905
_LANCZOS[6] = -0.13857109526572012
_LANCZOS[7] = 9.9843695780195716e-6
_LANCZOS[8] = 1.5056327351493116e-7

cdef double[12] _EM_COEF
_EM_COEF[0] = 0.08333333333333333
_EM_COEF[1] = -0.001388888888888889
_EM_COEF[2] = 3.306878306878307e-05
_EM_COEF[3] = -8.267195767195768e-07
_EM_COEF[4] = 2.08767569878681e-08
_EM_COEF[5] = -5.284190138687493e-10
_EM_COEF[6] = 1.3382536530684679e-11
_EM_COEF[7] = -3.3896802963225827e-13
_EM_COEF[8] = 8.586062056277845e-15
_EM_COEF[9] = -2.174868698558062e-16
_EM_COEF[10] = 5.5090028283602295e-18
_EM_COEF[11] = -1.3954464685812522e-19

cdef double[7] _PSI_COEF
_PSI_COEF[0] = 0.08333333333333333
_PSI_COEF[1] = -0.008333333333333333
_PSI_COEF[2] = 0.003968253968253968
_PSI_COEF[3] = -0.004166666666666667
_PSI_COEF[4] = 0.007575757575757576
_PSI_COEF[5] = -0.021092796092796094
_PSI_COEF[6] = 0.08333333333333333

cdef double[14] _DPSI_P
_DPSI_P[0] = 0.5
_DPSI_P[1] = -0.08333333333333333
_DPSI_P[2] = 0.0
_DPSI_P[3] = 0.008333333333333333
_DPSI_P[4] = 0.0
_DPSI_P[5] = -0.003968253968253968
_DPSI_P[6] = 0.0
_DPSI_P[7] = 0.004166666666666667
_DPSI_P[8] = 0.0
_DPSI_P[9] = -0.007575757575757576
_DPSI_P[10] = 0.0
_DPSI_P[11] = 0.021092796092796094
_DPSI_P[12] = 0.0
_DPSI_P[13] = -0.08333333333333333

cdef double _DPSI_SWITCH = 2.2


cdef inline double complex _cexp(double complex z) noexcept nogil:
    cdef double m = exp(z.real)
    return m * cos(z.imag) + 1j * m * sin(z.imag)


cdef inline double complex _clog(double complex z) noexcept nogil:
    return log(hypot(z.real, z.imag)) + 1j * atan2(z.imag, z.real)


# ---------------------------------------------------------------------------
# Riemann zeta, Euler-Maclaurin
# ---------------------------------------------------------------------------

cdef inline int _em_n(double t) noexcept nogil:
    if t < 20.0:
        return 20
    return <int>ceil(t)


cdef double complex _zeta_c(double complex s, int n_lead) noexcept nogil:
    cdef double complex total = 1.0 + 0.0j
    cdef double complex n_pow, poch, term_pow
    cdef double ln_n, inv_n2
    cdef int n, k, two_k
    for n in range(2, n_lead):
        total = total + _cexp(-s * log(<double>n))
    ln_n = log(<double>n_lead)
    n_pow = _cexp(-s * ln_n)
    total = total + 0.5 * n_pow
    total = total + n_pow * <double>n_lead / (s - 1.0)
    poch = s
    term_pow = n_pow / <double>n_lead
    inv_n2 = 1.0 / (<double>n_lead * <double>n_lead)
    for k in range(12):
        total = total + _EM_COEF[k] * poch * term_pow
        two_k = 2 * (k + 1)
        poch = poch * (s + <double>(two_k - 1)) * (s + <double>two_k)
        term_pow = term_pow * inv_n2
    return total


def zeta(s):
    """zeta(s) for s != 1; accuracy validated for |Im s| <= 1000."""
    cdef double complex cs = s
    return complex(_zeta_c(cs, _em_n(fabs(cs.imag))))


def zeta_band(double sigma, ts):
    """Vectorized zeta(sigma + i t); one shared leading-sum length per band."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] tarr = \
        np.ascontiguousarray(np.asarray(ts, dtype=np.float64).reshape(-1))
    cdef Py_ssize_t m = tarr.shape[0]
    out = np.empty(m, dtype=np.complex128)
    cdef double complex[:] ov = out
    cdef double[:] tv = tarr
    cdef double tmax = 0.0
    cdef Py_ssize_t i
    for i in range(m):
        if fabs(tv[i]) > tmax:
            tmax = fabs(tv[i])
    cdef int n_lead = _em_n(tmax)
    with nogil:
        for i in range(m):
            ov[i] = _zeta_c(sigma + 1j * tv[i], n_lead)
    shape = np.asarray(ts, dtype=np.float64).shape
    return out.reshape(shape)


# ---------------------------------------------------------------------------
# log Gamma, Lanczos
# ---------------------------------------------------------------------------

cdef double complex _lanczos_right(double complex z) noexcept nogil:
    cdef double complex zm = z - 1.0
    cdef double complex x = _LANCZOS[0]
    cdef double complex t
    cdef int i
    for i in range(1, 9):
        x = x + _LANCZOS[i] / (zm + <double>i)
    t = zm + 7.5
    return _HALF_LOG_2PI + (zm + 0.5) * _clog(t) - t + _clog(x)


cdef double complex _log_sin_pi(double complex z) noexcept nogil:
    cdef double complex q, base
    if z.imag >= 0.0:
        q = _cexp(2j * _PI * z)
        base = -_LOG_2 + 0.5j * _PI
        return base - 1j * _PI * z + _clog(1.0 - q)
    q = _log_sin_pi(z.real - 1j * z.imag)
    return q.real - 1j * q.imag


cdef double complex _log_gamma_c(double complex z) noexcept nogil:
    if z.real >= 0.5:
        return _lanczos_right(z)
    return _LOG_PI - _log_sin_pi(z) - _lanczos_right(1.0 - z)


def log_gamma(z):
    """Principal branch of log Gamma; reflection below Re z = 1/2."""
    cdef double complex cz = z
    return complex(_log_gamma_c(cz))


def log_gamma_band(double sigma, ts):
    """Vectorized log_gamma(sigma + i t)."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] tarr = \
        np.ascontiguousarray(np.asarray(ts, dtype=np.float64).reshape(-1))
    cdef Py_ssize_t m = tarr.shape[0]
    out = np.empty(m, dtype=np.complex128)
    cdef double complex[:] ov = out
    cdef double[:] tv = tarr
    cdef Py_ssize_t i
    with nogil:
        for i in range(m):
            ov[i] = _log_gamma_c(sigma + 1j * tv[i])
    shape = np.asarray(ts, dtype=np.float64).shape
    return out.reshape(shape)


# ---------------------------------------------------------------------------
# digamma and psi(e^u+1)-u
# ---------------------------------------------------------------------------

cdef double _digamma_c(double x) noexcept nogil:
    cdef double acc = 0.0
    cdef double inv, v, series
    cdef int k
    while x < 10.0:
        acc -= 1.0 / x
        x += 1.0
    inv = 1.0 / x
    v = inv * inv
    series = 0.0
    for k in range(6, -1, -1):
        series = v * (_PSI_COEF[k] + series)
    return acc + log(x) - 0.5 * inv - series


def digamma(double x):
    """psi(x) for x > 0, absolute error well under 1e-12."""
    return _digamma_c(x)


cdef double _dpsi_p_poly(double w) noexcept nogil:
    cdef double p = 0.0
    cdef int k
    for k in range(13, -1, -1):
        p = p * w + _DPSI_P[k]
    return p


cdef double _dpsi_c(double u) noexcept nogil:
    cdef double w
    if u > _DPSI_SWITCH:
        w = exp(-u)
        return w * _dpsi_p_poly(w)
    return _digamma_c(exp(u) + 1.0) - u


def dpsi(double u):
    """psi(e^u + 1) - u, computed without cancellation for large u."""
    return _dpsi_c(u)


# ---------------------------------------------------------------------------
# exponential integral
# ---------------------------------------------------------------------------

cdef double _ei_series_c(double x) noexcept nogil:
    cdef double total = 0.0
    cdef double term = 1.0
    cdef double contrib
    cdef int k
    for k in range(1, 200):
        term *= x / <double>k
        contrib = term / <double>k
        total += contrib
        if fabs(contrib) <= 1e-18 * (fabs(total) + 1e-300):
            break
    return _EULER_GAMMA + log(-x) + total


cdef double _e1_cf_c(double z) noexcept nogil:
    cdef double b = z + 1.0
    cdef double c = 1e308
    cdef double d = 1.0 / b
    cdef double h = d
    cdef double a, delta
    cdef int n
    for n in range(1, 200):
        a = -<double>(n * n)
        b += 2.0
        d = 1.0 / (b + a * d)
        c = b + a / c
        delta = c * d
        h *= delta
        if fabs(delta - 1.0) < 1e-16:
            break
    if z > 700.0:
        return 0.0
    return exp(-z) * h


def e1_cf(double z):
    """E1(z) by the even continued fraction (modified Lentz), z >~ 4."""
    return _e1_cf_c(z)


cdef double _ei_c(double x) noexcept nogil:
    if x >= -6.0:
        return _ei_series_c(x)
    return -_e1_cf_c(-x)


def ei(double x):
    """Ei(x) for x < 0."""
    return _ei_c(x)


def ei_arr(x):
    """Vectorized Ei over strictly negative arguments."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xarr = \
        np.ascontiguousarray(np.asarray(x, dtype=np.float64).reshape(-1))
    cdef Py_ssize_t m = xarr.shape[0]
    out = np.empty(m, dtype=np.float64)
    cdef double[:] ov = out
    cdef double[:] xv = xarr
    cdef Py_ssize_t i
    with nogil:
        for i in range(m):
            ov[i] = _ei_c(xv[i])
    shape = np.asarray(x, dtype=np.float64).shape
    return out.reshape(shape)


# ---------------------------------------------------------------------------
# fractional part and kernels
# ---------------------------------------------------------------------------

cdef double _frac_c(double x) noexcept nogil:
    cdef double r = x - floor(x)
    if r < 1.0:
        return r
    return 0.0


def frac(double x):
    """x - floor(x), with the wrap artifact at 1.0 mapped back to 0."""
    return _frac_c(x)


cdef double _kernel_c(int kind, double sigma, double u) noexcept nogil:
    cdef double t, w
    if kind == _K_SALEM:
        if u > 709.0:
            return 0.0
        t = exp(u)
        if t <= 36.0:
            return exp(sigma * u) / (exp(t) + 1.0)
        w = sigma * u - t
        if w < -745.0:
            return 0.0
        return exp(w) / (1.0 + exp(-t))
    if kind == _K_FRACPART:
        if u > 0.0:
            return exp((sigma - 1.0) * u)
        if u == 0.0:
            return 0.0
        if u < -36.7368005696771:
            return 0.0
        return exp(sigma * u) * _frac_c(exp(-u))
    if u > _DPSI_SWITCH:
        w = exp(-u)
        return exp((sigma - 1.0) * u) * _dpsi_p_poly(w)
    return exp(sigma * u) * (_digamma_c(exp(u) + 1.0) - u)


def kernel(int kind, double sigma, double u):
    """Pointwise k_sigma(u) for the three kernel families, overflow safe."""
    return _kernel_c(kind, sigma, u)


def kernel_arr(int kind, double sigma, u):
    """Vectorized k_sigma over an array of offsets u."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] uarr = \
        np.ascontiguousarray(np.asarray(u, dtype=np.float64).reshape(-1))
    cdef Py_ssize_t m = uarr.shape[0]
    out = np.empty(m, dtype=np.float64)
    cdef double[:] ov = out
    cdef double[:] uv = uarr
    cdef Py_ssize_t i
    with nogil:
        for i in range(m):
            ov[i] = _kernel_c(kind, sigma, uv[i])
    shape = np.asarray(u, dtype=np.float64).shape
    return out.reshape(shape)


# ---------------------------------------------------------------------------
# Moebius sieve
# ---------------------------------------------------------------------------

def moebius(long long limit):
    """mu(n) for n = 0..limit as int8 (index 0 unused, set to 0)."""
    out = np.zeros(limit + 1, dtype=np.int8)
    if limit < 1:
        return out
    cdef signed char[:] mu = out
    cdef long long sq = math.isqrt(limit)
    primes_np = _small_primes(sq)
    cdef long long[:] primes = primes_np
    cdef Py_ssize_t n_primes = primes_np.shape[0]

    cdef long long seg = 1 << 22
    rem_np = np.empty(min(seg, limit), dtype=np.int64)
    sign_np = np.empty(min(seg, limit), dtype=np.int8)
    zero_np = np.empty(min(seg, limit), dtype=np.uint8)
    cdef long long[:] rem = rem_np
    cdef signed char[:] sign = sign_np
    cdef unsigned char[:] zero = zero_np

    cdef long long lo, hi, n, p, p2, start, start2
    cdef Py_ssize_t i, j
    lo = 1
    while lo <= limit:
        hi = lo + seg
        if hi > limit + 1:
            hi = limit + 1
        n = hi - lo
        with nogil:
            for i in range(n):
                rem[i] = lo + i
                sign[i] = 1
                zero[i] = 0
            for j in range(n_primes):
                p = primes[j]
                start = ((lo + p - 1) // p) * p
                i = start - lo
                while i < n:
                    sign[i] = -sign[i]
                    rem[i] = rem[i] // p
                    i += p
                p2 = p * p
                start2 = ((lo + p2 - 1) // p2) * p2
                if start2 < hi:
                    i = start2 - lo
                    while i < n:
                        zero[i] = 1
                        i += p2
            for i in range(n):
                if rem[i] > 1:
                    sign[i] = -sign[i]
                if zero[i]:
                    mu[lo + i] = 0
                else:
                    mu[lo + i] = sign[i]
        lo = hi
    return out


def _small_primes(long long n):
    if n < 2:
        return np.empty(0, dtype=np.int64)
    is_p = np.ones(n + 1, dtype=bool)
    is_p[:2] = False
    cdef long long p
    for p in range(2, math.isqrt(n) + 1):
        if is_p[p]:
            is_p[p * p::p] = False
    return np.nonzero(is_p)[0].astype(np.int64)
