"""Backend selection: compiled extension if available, pure Python otherwise.

The compiled core (``zetaconv._core``, Cython) and the pure-Python module
(``zetaconv._purepy``) implement the same algorithms with the same constants.
Selection happens once at import:

* ``ZETACONV_BACKEND=c``       require the extension (ImportError if missing)
* ``ZETACONV_BACKEND=python``  force the fallback
* unset / ``auto``             use the extension when importable

``active`` is the chosen module; the names re-exported below are the kernel
API the rest of the package calls.
"""

from __future__ import annotations

import os

from . import _purepy

_choice = os.environ.get("ZETACONV_BACKEND", "auto").lower()

if _choice == "python":
    active = _purepy
elif _choice == "c":
    from . import _core as active  # type: ignore[no-redef]
else:
    try:
        from . import _core as active  # type: ignore[no-redef]
    except ImportError:
        active = _purepy


def backend_name() -> str:
    return "c" if getattr(active, "HAVE_C", False) else "python"


SALEM = _purepy.SALEM
FRACPART = _purepy.FRACPART
DIGAMMA = _purepy.DIGAMMA
EULER_GAMMA = _purepy.EULER_GAMMA

zeta = active.zeta
zeta_band = active.zeta_band
log_gamma = active.log_gamma
log_gamma_band = active.log_gamma_band
digamma = active.digamma
dpsi = active.dpsi
ei = active.ei
ei_arr = active.ei_arr
e1_cf = active.e1_cf
frac = active.frac
kernel = active.kernel
kernel_arr = active.kernel_arr
moebius = active.moebius
