"""Map symbol magnitudes over rectangles of the critical strip.

The translate-density question (Wiener: translates of k span L1 iff its
transform never vanishes) reduces on the strip to non-vanishing of the
symbol.  The symbol factors as K = zeta_part * w with w analytic and zero
free there, so the raw |K| carries an e^{-pi|t|/2} (SALEM) or e^{-pi|t|}
(DIGAMMA) gamma/sine trend that has nothing to do with zeros.  Scans
therefore record both the raw magnitude and the w-normalized magnitude
|K|/|w| = |zeta_part|; dip detection and the NONVANISHING / CANDIDATE_ZERO
classification run on the normalized one.

Every report is desk-scale numerical evidence about a finite band, never a
proof: the criteria quantify over all real t.

Scans admit sigma anywhere in (0, 1) -- the sigma = 1/2 line is the one
place ground-truth zeros exist to validate dip detection against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import backend, specfun
from .errors import BudgetError, DomainError
from .kernels import FRACPART_CONSTANT_DEFAULT, KernelKind, _inv_sin_vec

_CELL_CAP = 10 ** 7
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ScanGrid:
    """Rectangle [sigma_lo, sigma_hi] x [t_lo, t_hi] with steps d_sigma, dt."""

    sigma_lo: float
    sigma_hi: float
    t_lo: float
    t_hi: float
    d_sigma: float
    dt: float

    def __post_init__(self) -> None:
        if not (0.0 < self.sigma_lo <= self.sigma_hi < 1.0):
            raise DomainError("sigma range must satisfy 0 < lo <= hi < 1")
        if not (self.t_lo < self.t_hi):
            raise DomainError("t range must satisfy t_lo < t_hi")
        if not (self.d_sigma > 0.0 and self.dt > 0.0):
            raise DomainError("grid steps must be positive")
        if max(abs(self.t_lo), abs(self.t_hi)) > specfun.T_MAX_DEFAULT:
            raise specfun.PrecisionError("scan exceeds the validated zeta ceiling")
        if self.cells > _CELL_CAP:
            raise BudgetError(f"{self.cells} cells exceed the {_CELL_CAP} cap")
        if self.n_t < 2:
            raise DomainError("need at least 2 samples along t")

    @property
    def n_sigma(self) -> int:
        return int(math.floor((self.sigma_hi - self.sigma_lo) / self.d_sigma + 1e-9)) + 1

    @property
    def n_t(self) -> int:
        return int(math.floor((self.t_hi - self.t_lo) / self.dt + 1e-9)) + 1

    @property
    def cells(self) -> int:
        return self.n_sigma * self.n_t

    def sigmas(self) -> np.ndarray:
        return self.sigma_lo + self.d_sigma * np.arange(self.n_sigma)

    def ts(self) -> np.ndarray:
        return self.t_lo + self.dt * np.arange(self.n_t)


@dataclass(frozen=True)
class ScanResult:
    """Raw and normalized magnitude matrices plus detected dips.

    minima entries are (sigma, t, normalized_magnitude), ascending; detection
    requires a strict local minimum against all existing neighbors, interior
    along t (single-sigma rows are scanned along t only).
    """

    kind: KernelKind
    grid: ScanGrid
    magnitudes: np.ndarray
    zeta_magnitudes: np.ndarray
    w_magnitudes: np.ndarray
    minima: tuple

    def to_csv(self) -> str:
        lines = ["sigma,t,magnitude"]
        ts = self.grid.ts()
        for i, sg in enumerate(self.grid.sigmas()):
            for j, t in enumerate(ts):
                lines.append(f"{sg:.17g},{t:.17g},{self.magnitudes[i, j]:.17g}")
        return "\n".join(lines) + "\n"


def _zeta_row_mag(kind: KernelKind, sigma: float, ts: np.ndarray) -> np.ndarray:
    if kind is KernelKind.DIGAMMA:
        return np.abs(backend.zeta_band(1.0 - sigma, -ts))
    return np.abs(backend.zeta_band(sigma, ts))


def _w_row_mag(kind: KernelKind, sigma: float, ts: np.ndarray) -> np.ndarray:
    s = sigma + 1j * ts
    if kind is KernelKind.SALEM:
        with np.errstate(under="ignore"):
            gam = np.exp(backend.log_gamma_band(sigma, ts).real)
        return gam * np.abs(1.0 - np.exp((1.0 - s) * math.log(2.0)))
    if kind is KernelKind.FRACPART:
        return FRACPART_CONSTANT_DEFAULT / np.abs(s)
    return math.pi * np.abs(_inv_sin_vec(math.pi * s))


def _zeta_mag_scalar(kind: KernelKind, sigma: float, t: float) -> float:
    if kind is KernelKind.DIGAMMA:
        return abs(backend.zeta(complex(1.0 - sigma, -t)))
    return abs(backend.zeta(complex(sigma, t)))


def _golden_refine(kind: KernelKind, sigma: float, lo: float, hi: float,
                   tol: float = 1e-10) -> tuple[float, float]:
    """Golden-section descent of |zeta_part| along t on [lo, hi]."""
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc = _zeta_mag_scalar(kind, sigma, c)
    fd = _zeta_mag_scalar(kind, sigma, d)
    while (b - a) > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = _zeta_mag_scalar(kind, sigma, c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = _zeta_mag_scalar(kind, sigma, d)
    t_star = 0.5 * (a + b)
    return t_star, _zeta_mag_scalar(kind, sigma, t_star)


def scan_symbol(kind: KernelKind, grid: ScanGrid, *, min_threshold: float = math.inf,
                refine: bool = True) -> ScanResult:
    """Evaluate |K| over the grid row by row (deterministic row order).

    Strict local minima of the normalized magnitude below min_threshold are
    collected and, when refine=True, sharpened by golden-section descent
    along t within one grid cell.
    """
    ts = grid.ts()
    sigmas = grid.sigmas()
    zmag = np.empty((sigmas.size, ts.size))
    wmag = np.empty_like(zmag)
    for i, sg in enumerate(sigmas):
        zmag[i] = _zeta_row_mag(kind, float(sg), ts)
        wmag[i] = _w_row_mag(kind, float(sg), ts)
    mag = zmag * wmag

    padded = np.full((zmag.shape[0] + 2, zmag.shape[1] + 2), np.inf)
    padded[1:-1, 1:-1] = zmag
    neighbor_min = np.full_like(zmag, np.inf)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di == 0 and dj == 0:
                continue
            shifted = padded[1 + di:padded.shape[0] - 1 + di,
                             1 + dj:padded.shape[1] - 1 + dj]
            neighbor_min = np.minimum(neighbor_min, shifted)
    is_min = (zmag < neighbor_min) & (zmag < min_threshold)
    is_min[:, 0] = False
    is_min[:, -1] = False

    minima = []
    for i, j in zip(*np.nonzero(is_min)):
        sg = float(sigmas[i])
        t = float(ts[j])
        val = float(zmag[i, j])
        if refine:
            t, val = _golden_refine(kind, sg, t - grid.dt, t + grid.dt)
        minima.append((sg, t, val))
    minima.sort(key=lambda entry: entry[2])
    return ScanResult(kind, grid, mag, zmag, wmag, tuple(minima))


@dataclass(frozen=True)
class WienerReport:
    """Finite-band classification of the non-vanishing condition."""

    classification: str
    delta: float
    min_normalized: float
    argmin: tuple
    dips: tuple
    band: dict
    note: str

    def to_json_obj(self) -> dict:
        return {
            "classification": self.classification,
            "delta": self.delta,
            "min": self.min_normalized,
            "argmin": {"sigma": self.argmin[0], "t": self.argmin[1]},
            "minima": [{"sigma": s, "t": t, "magnitude": m} for s, t, m in self.dips],
            "band": self.band,
            "note": self.note,
        }


NONVANISHING = "NONVANISHING"
CANDIDATE_ZERO = "CANDIDATE_ZERO"


def wiener_report(result: ScanResult, delta: float) -> WienerReport:
    """Classify the scanned band against the threshold delta.

    NONVANISHING when the w-normalized magnitude stays >= delta everywhere on
    the band (ties included); otherwise CANDIDATE_ZERO with the dips listed.
    """
    if not (delta > 0.0):
        raise DomainError("delta must be positive")
    zmag = result.zeta_magnitudes
    i, j = np.unravel_index(int(np.argmin(zmag)), zmag.shape)
    min_norm = float(zmag[i, j])
    argmin = (float(result.grid.sigmas()[i]), float(result.grid.ts()[j]))
    # refined dips can undercut every grid node; the classification uses the
    # sharpest evidence available
    if result.minima and result.minima[0][2] < min_norm:
        min_norm = result.minima[0][2]
        argmin = (result.minima[0][0], result.minima[0][1])
    dips = tuple(entry for entry in result.minima if entry[2] < delta)
    if min_norm >= delta:
        classification = NONVANISHING
    else:
        classification = CANDIDATE_ZERO
        if not dips:
            dips = ((argmin[0], argmin[1], min_norm),)
    band = {
        "sigma_lo": result.grid.sigma_lo, "sigma_hi": result.grid.sigma_hi,
        "t_lo": result.grid.t_lo, "t_hi": result.grid.t_hi,
        "kind": result.kind.value,
    }
    return WienerReport(
        classification=classification,
        delta=delta,
        min_normalized=min_norm,
        argmin=argmin,
        dips=dips,
        band=band,
        note="finite-band numerical evidence on the w-normalized symbol "
             "magnitude; not a proof about all t",
    )
