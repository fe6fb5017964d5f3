"""Random-shock (ψ) and inverted-form (π) weights.

With the sign conventions used throughout the package,

    Z_t = A_t + Σ ψ_ℓ A_{t−ℓ},   ψ(B) = θ(B) (1−B)^{−d} / φ(B),
    Z_t = A_t + Σ π_ℓ Z_{t−ℓ},   1 − Σ π_ℓ B^ℓ = φ(B) (1−B)^{d} / θ(B).
"""

from __future__ import annotations

import enum
from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter

from .acvf import AsymptoticFit, loglog_fit
from .errors import ParameterOutOfRange, Unsupported
from .models import ModelSpec, alpha_of, validate

STREAM_CHUNK = 1 << 20


class WeightKind(enum.Enum):
    PSI = "psi"
    PI = "pi"


@dataclass(frozen=True, eq=False)
class WeightSeq:
    kind: WeightKind
    values: np.ndarray  # w_1..w_L
    model: ModelSpec

    @property
    def ell(self) -> np.ndarray:
        return np.arange(1, self.values.size + 1)

    def to_csv(self, lo: int = 1, hi: int | None = None) -> str:
        hi = self.values.size if hi is None else min(hi, self.values.size)
        rows = ["ell,weight"]
        rows += [f"{ell},{float(self.values[ell - 1])!r}" for ell in range(max(lo, 1), hi + 1)]
        return "\n".join(rows) + "\n"


def binomial_series(d: float, n_terms: int, start: float = 1.0, offset: int = 0) -> np.ndarray:
    """Coefficients of ``(1−B)^{−d}`` from index ``offset`` on.

    Uses the ratio recursion ``b_ℓ = b_{ℓ−1} (ℓ−1+d)/ℓ`` seeded with
    ``b_offset = start``; no gamma functions are involved.
    """
    ell = np.arange(offset + 1, offset + n_terms, dtype=float)
    out = np.empty(n_terms)
    out[0] = start
    out[1:] = start * np.cumprod((ell - 1.0 + d) / ell)
    return out


def _check(spec: ModelSpec, L: int) -> None:
    validate(spec)
    if spec.is_fgn:
        raise Unsupported("FGN has no finite-parameter transfer function")
    if L < 1:
        raise ParameterOutOfRange("L must be ≥ 1")


def psi_weights(spec: ModelSpec, L: int) -> WeightSeq:
    _check(spec, L)
    series = lfilter(spec.ma_poly, spec.ar_poly, binomial_series(spec.d, L + 1))
    return WeightSeq(WeightKind.PSI, series[1:], spec)


def pi_weights(spec: ModelSpec, L: int) -> WeightSeq:
    _check(spec, L)
    series = lfilter(spec.ar_poly, spec.ma_poly, binomial_series(-spec.d, L + 1))
    return WeightSeq(WeightKind.PI, -series[1:], spec)


def weights(spec: ModelSpec, kind: WeightKind | str, L: int) -> WeightSeq:
    kind = WeightKind(kind)
    return psi_weights(spec, L) if kind is WeightKind.PSI else pi_weights(spec, L)


def iter_weights(spec: ModelSpec, kind: WeightKind | str,
                 chunk_size: int = STREAM_CHUNK) -> Iterator[np.ndarray]:
    """Yield successive chunks of w_1, w_2, … without materializing the prefix.

    Intended for prefixes beyond ~10⁷ terms; memory stays O(chunk_size).
    """
    _check(spec, 1)
    kind = WeightKind(kind)
    if kind is WeightKind.PSI:
        d, num, den, sign = spec.d, spec.ma_poly, spec.ar_poly, 1.0
    else:
        d, num, den, sign = -spec.d, spec.ar_poly, spec.ma_poly, -1.0
    order = max(num.size, den.size) - 1
    state = np.zeros(order)
    b = binomial_series(d, chunk_size + 1)
    offset = 0
    first = True
    while True:
        seg = b[:-1]
        if order:
            y, state = lfilter(num, den, seg, zi=state)
        else:
            y = (num[0] / den[0]) * seg
        yield sign * (y[1:] if first else y)
        first = False
        offset += chunk_size
        b = binomial_series(d, chunk_size + 1, start=b[-1], offset=offset)


def check_rate(w: WeightSeq, window: tuple[int, int]) -> AsymptoticFit:
    """Log-log fit of |w_ℓ| ≈ |c| ℓ^{−e} with the theoretical exponent attached.

    Theory gives ``e = (1+α)/2`` for ψ and ``(3−α)/2`` for π.
    """
    alpha = alpha_of(w.model)
    expected = (1.0 + alpha) / 2.0 if w.kind is WeightKind.PSI else (3.0 - alpha) / 2.0
    e_hat, c_hat = loglog_fit(w.ell, w.values, window)
    return AsymptoticFit(e_hat, c_hat, (int(window[0]), int(window[1])), expected)


def duality_weight_identity(spec: ModelSpec, L: int) -> float:
    """``max_ℓ≤L |ψ_ℓ(spec) + π_ℓ(dual(spec))|``; zero in exact arithmetic."""
    from .duality import dual

    psi = psi_weights(spec, L).values
    pi_dual = pi_weights(dual(spec), L).values
    return float(np.max(np.abs(psi + pi_dual)))


def convolution_residual(spec: ModelSpec, L: int) -> float:
    """Max coefficient of ``(1 + Σψ_ℓB^ℓ)(1 − Σπ_ℓB^ℓ) − 1`` through order L."""
    psi = np.concatenate(([1.0], psi_weights(spec, L).values))
    pi = np.concatenate(([1.0], -pi_weights(spec, L).values))
    prod = np.convolve(psi, pi)[: L + 1]
    prod[0] -= 1.0
    return float(np.max(np.abs(prod)))
