"""Counter-based random streams for reproducible simulation.

Generator: Philox4x64-10 (Salmon et al., 2011) as implemented by
``numpy.random.Philox``, keyed with the 128-bit key ``(seed, stream)`` and a
zero starting counter. Stream splitting: replicate ``i`` of a batch uses
``stream = i``; distinct (seed, stream) pairs give independent streams.

Each raw 64-bit output ``x`` becomes a uniform ``u = ((x >> 11) + 0.5) · 2⁻⁵³``
in the open interval (0, 1) and then a standard normal ``Φ⁻¹(u)``. Any Philox
implementation reproduces the integer stream exactly; normals then agree to
the rounding of the inverse-CDF routine.
"""

import numpy as np
from scipy.special import ndtri

_MASK64 = (1 << 64) - 1


def _bitgen(seed: int, stream: int) -> np.random.Philox:
    if not 0 <= seed <= _MASK64 or not 0 <= stream <= _MASK64:
        raise ValueError("seed and stream must be unsigned 64-bit integers")
    key = np.array([seed, stream], dtype=np.uint64)
    return np.random.Philox(key=key)


def raw_uint64(seed: int, stream: int, n: int) -> np.ndarray:
    """First ``n`` 64-bit outputs of stream ``(seed, stream)``."""
    return _bitgen(seed, stream).random_raw(n).astype(np.uint64)


def uniforms(seed: int, stream: int, n: int) -> np.ndarray:
    bits = raw_uint64(seed, stream, n) >> np.uint64(11)
    return (bits.astype(np.float64) + 0.5) * 2.0 ** -53


def standard_normals(seed: int, stream: int, n: int) -> np.ndarray:
    return ndtri(uniforms(seed, stream, n))
