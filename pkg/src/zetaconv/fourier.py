"""Uniformly sampled functions and the transform pair used by the solver.

Convention (fixed; every solution formula depends on it):

    analysis    G(y) = (1/sqrt(2 pi)) integral g(v) e^{+i v y} dv
    synthesis   f(x) = (1/sqrt(2 pi)) integral G(y) e^{-i x y} dy

Both directions are computed by FFT with the x0/y0 phase corrections applied,
so a Spectrum holds the continuum transform sampled on the dual grid
(dy = 2 pi / (N dx)), not a raw DFT.  Under this convention the transform of
k * f is sqrt(2 pi) K F.

Inputs are tapered with a raised cosine over the outer 5% of the grid before
transforming unless ``window=False``; functions that have decayed at the grid
edges are unaffected, and non-periodic inputs stop ringing.  ``convolve``
controls aliasing by zero-padding instead and applies no taper.

Serialization: CSV (columns x, re, im; 17 significant digits) and a JSON
envelope {x0, dx, n, data: [[re, im], ...]} that round-trips bit exactly.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import GridError
from .kernels import KernelInstance, symbol_band

_SQRT_2PI = math.sqrt(2.0 * math.pi)
_TAPER_FRACTION = 0.05


def _check_length(n: int) -> None:
    if n < 8 or (n & (n - 1)) != 0:
        raise GridError(f"sample count must be a power of two >= 8, got {n}")


@dataclass(frozen=True)
class SampledFunction:
    """Complex samples g(x0 + k dx), k = 0..N-1, N a power of two."""

    x0: float
    dx: float
    samples: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "samples",
                           np.asarray(self.samples, dtype=np.complex128))
        _check_length(self.samples.size)
        if not (self.dx > 0.0):
            raise GridError(f"dx must be positive, got {self.dx!r}")

    @classmethod
    def from_function(cls, fn, half_width: float = 24.0, n: int = 4096) -> "SampledFunction":
        """Sample fn on the symmetric grid [-L, L) with N points."""
        _check_length(n)
        dx = 2.0 * half_width / n
        x0 = -half_width
        x = x0 + dx * np.arange(n)
        return cls(x0, dx, np.asarray(fn(x), dtype=np.complex128))

    @classmethod
    def zeros_like(cls, other: "SampledFunction") -> "SampledFunction":
        return cls(other.x0, other.dx, np.zeros(other.samples.size, dtype=np.complex128))

    @property
    def n(self) -> int:
        return self.samples.size

    def grid(self) -> np.ndarray:
        return self.x0 + self.dx * np.arange(self.n)

    def l2_norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.samples) ** 2) * self.dx))

    def same_grid(self, other: "SampledFunction") -> bool:
        return (self.n == other.n and self.x0 == other.x0 and self.dx == other.dx)

    def to_csv(self) -> str:
        return _grid_csv(self.grid(), self.samples, "x")

    def to_json_obj(self) -> dict:
        return {"x0": self.x0, "dx": self.dx, "n": self.n,
                "data": [[float(v.real), float(v.imag)] for v in self.samples]}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "SampledFunction":
        data = np.array([complex(re, im) for re, im in obj["data"]], dtype=np.complex128)
        if len(data) != obj["n"]:
            raise GridError("JSON envelope length mismatch")
        return cls(obj["x0"], obj["dx"], data)


@dataclass(frozen=True)
class Spectrum:
    """Transform samples G(y0 + j dy); dy = 2 pi/(N dx) when built from a grid."""

    y0: float
    dy: float
    samples: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "samples",
                           np.asarray(self.samples, dtype=np.complex128))
        _check_length(self.samples.size)
        if not (self.dy > 0.0):
            raise GridError(f"dy must be positive, got {self.dy!r}")

    @property
    def n(self) -> int:
        return self.samples.size

    def grid(self) -> np.ndarray:
        return self.y0 + self.dy * np.arange(self.n)

    def l2_norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.samples) ** 2) * self.dy))

    def to_csv(self) -> str:
        return _grid_csv(self.grid(), self.samples, "y")

    def to_json_obj(self) -> dict:
        return {"y0": self.y0, "dy": self.dy, "n": self.n,
                "data": [[float(v.real), float(v.imag)] for v in self.samples]}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "Spectrum":
        data = np.array([complex(re, im) for re, im in obj["data"]], dtype=np.complex128)
        if len(data) != obj["n"]:
            raise GridError("JSON envelope length mismatch")
        return cls(obj["y0"], obj["dy"], data)


def _grid_csv(grid: np.ndarray, samples: np.ndarray, label: str) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([label, "re", "im"])
    for g, v in zip(grid, samples):
        writer.writerow([f"{g:.17g}", f"{v.real:.17g}", f"{v.imag:.17g}"])
    return buf.getvalue()


def read_function_json(text: str) -> SampledFunction:
    return SampledFunction.from_json_obj(json.loads(text))


def taper_window(n: int) -> np.ndarray:
    """Raised-cosine taper over the outer 5% of each side, 1 elsewhere."""
    w = np.ones(n)
    m = int(round(_TAPER_FRACTION * n))
    if m > 0:
        ramp = 0.5 * (1.0 - np.cos(math.pi * (np.arange(m) + 0.5) / m))
        w[:m] = ramp
        w[n - m:] = ramp[::-1]
    return w


def dual_dy(g: SampledFunction) -> float:
    return 2.0 * math.pi / (g.n * g.dx)


def forward_ft(g: SampledFunction, *, window: bool = True) -> Spectrum:
    """Analysis transform, phase-corrected onto the symmetric dual grid.

    G(y_j) = (dx/sqrt(2 pi)) e^{i x0 y_j} sum_k g_k e^{i k dx y_j}; splitting
    y_j = y0 + j dy turns the sum into an inverse DFT with an input phase ramp.
    """
    n = g.n
    dy = dual_dy(g)
    y0 = -0.5 * n * dy
    data = g.samples * taper_window(n) if window else g.samples
    ramp = np.exp(1j * g.dx * y0 * np.arange(n))
    spec = n * np.fft.ifft(data * ramp)
    y = y0 + dy * np.arange(n)
    spec = (g.dx / _SQRT_2PI) * np.exp(1j * g.x0 * y) * spec
    return Spectrum(y0, dy, spec)


def inverse_ft(spec: Spectrum, *, window: bool = True) -> SampledFunction:
    """Synthesis transform onto the symmetric spatial grid dual to spec.

    f(x_k) = (dy/sqrt(2 pi)) e^{-i x_k y0} sum_j [G_j e^{-i x0 y_j}] e^{-2 pi ijk/N}.
    """
    n = spec.n
    dx = 2.0 * math.pi / (n * spec.dy)
    x0 = -0.5 * n * dx
    data = spec.samples * taper_window(n) if window else spec.samples
    y = spec.grid()
    inner = data * np.exp(-1j * x0 * y)
    ramp = np.exp(-1j * dx * spec.y0 * np.arange(n))
    vals = (spec.dy / _SQRT_2PI) * ramp * np.fft.fft(inner)
    return SampledFunction(x0, dx, vals)


def convolve(k: SampledFunction, f: SampledFunction) -> SampledFunction:
    """Linear convolution (k * f)(x) = integral k(x-y) f(y) dy on f's grid.

    Zero-pads to 2N, so no circular wrap-around; no taper is applied.
    """
    if not k.same_grid(f):
        raise GridError("convolve requires identical grids")
    n = k.n
    kp = np.concatenate([k.samples, np.zeros(n, dtype=np.complex128)])
    fp = np.concatenate([f.samples, np.zeros(n, dtype=np.complex128)])
    full = np.fft.ifft(np.fft.fft(kp) * np.fft.fft(fp)) * k.dx
    # index m of the padded result sits at x = x0k + x0f + m dx; keep f's grid
    out = full[n // 2: n // 2 + n]
    return SampledFunction(f.x0, f.dx, out)


def sample_symbol(kernel: KernelInstance, like: SampledFunction) -> Spectrum:
    """Analytic symbol K(sigma + i y_j) on the dual grid of ``like``."""
    n = like.n
    dy = dual_dy(like)
    y0 = -0.5 * n * dy
    y = y0 + dy * np.arange(n)
    return Spectrum(y0, dy, symbol_band(kernel, y))
