"""Spectral densities, origin behaviour and the cosine-transform inversion.

The density is normalized as ``f(λ) = (2π)^{-1} Σ_k γ(k) e^{−ikλ}`` so that
``γ(k) = 2 ∫_0^π f(λ) cos(kλ) dλ``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P
from scipy import integrate

from ._special import gamma_product
from .errors import DomainError, ParameterOutOfRange, ToleranceUnachievable
from .models import ModelKind, ModelSpec, alpha_of, decay_class, validate

FGN_TERMS = 200


def _transfer_sq(poly: np.ndarray, lam: np.ndarray) -> np.ndarray:
    """``|p(e^{−iλ})|²`` for a polynomial in B with increasing-power coefficients."""
    if poly.size == 1:
        return np.full(lam.shape, poly[0] ** 2)
    z = np.exp(-1j * lam)
    return np.abs(P.polyval(z, poly)) ** 2


def _fgn_const(hurst: float) -> float:
    return math.sin(math.pi * hurst) * math.gamma(2.0 * hurst + 1.0) / (2.0 * math.pi)


def _fgn_tail(lam: np.ndarray, s: float, J: int) -> np.ndarray:
    """Euler–Maclaurin estimate of ``Σ_{j>J} [(2πj+λ)^{−s} + (2πj−λ)^{−s}]``."""
    two_pi = 2.0 * math.pi
    out = np.zeros_like(lam)
    for c in (lam, -lam):
        u = two_pi * J + c
        out += (
            u ** (1.0 - s) / (two_pi * (s - 1.0))
            - 0.5 * u ** (-s)
            + s * two_pi * u ** (-s - 1.0) / 12.0
            - s * (s + 1.0) * (s + 2.0) * two_pi ** 3 * u ** (-s - 3.0) / 720.0
        )
    return out


def _fgn_sdf(hurst: float, sigma2: float, lam: np.ndarray, J: int = FGN_TERMS) -> np.ndarray:
    s = 2.0 * hurst + 1.0
    j = np.arange(-J, J + 1, dtype=float)[:, None]
    core = np.sum(np.abs(lam[None, :] + 2.0 * math.pi * j) ** (-s), axis=0)
    total = core + _fgn_tail(lam, s, J)
    return _fgn_const(hurst) * sigma2 * 4.0 * np.sin(lam / 2.0) ** 2 * total


def _sdf_values(spec: ModelSpec, lam: np.ndarray) -> np.ndarray:
    if spec.kind is ModelKind.FGN:
        return _fgn_sdf(spec.hurst, spec.sigma2, lam)
    ratio = _transfer_sq(spec.ma_poly, lam) / _transfer_sq(spec.ar_poly, lam)
    frac = (2.0 * np.sin(lam / 2.0)) ** (-2.0 * spec.d)
    return spec.sigma2 / (2.0 * math.pi) * ratio * frac


def sdf(spec: ModelSpec, lam):
    """Spectral density at ``lam`` (scalar or array, each in (0, π])."""
    validate(spec)
    arr = np.asarray(lam, dtype=float)
    if np.any(~(arr > 0.0)) or np.any(arr > math.pi):
        raise DomainError("frequencies must lie in (0, π]")
    out = _sdf_values(spec, np.atleast_1d(arr))
    return out.reshape(arr.shape) if arr.ndim else float(out[0])


def frequency_grid(kind: str, num: int, lmin: float | None = None,
                   lmax: float = math.pi) -> np.ndarray:
    if num < 1:
        raise ParameterOutOfRange("grid needs at least one point")
    if kind == "log":
        lmin = 1e-6 if lmin is None else lmin
        return np.geomspace(lmin, lmax, num)
    if kind == "linear":
        if lmin is None:
            return np.linspace(lmax / num, lmax, num)
        return np.linspace(lmin, lmax, num)
    raise ParameterOutOfRange(f"unknown grid kind {kind!r}")


def origin_constant(spec: ModelSpec) -> tuple[float, float]:
    """``(c_f, α−1)`` with ``f(λ) ∼ c_f λ^{α−1}`` as λ → 0."""
    cls = decay_class(spec)
    if spec.is_fgn:
        c_f = _fgn_const(spec.hurst) * spec.sigma2
    else:
        ratio = spec.ma_poly.sum() / spec.ar_poly.sum()
        c_f = spec.sigma2 / (2.0 * math.pi) * ratio * ratio
    return c_f, cls.alpha - 1.0


@dataclass(frozen=True)
class SpectrumEval:
    model: ModelSpec
    c_f: float
    origin_exponent: float

    @classmethod
    def of(cls, spec: ModelSpec) -> SpectrumEval:
        c_f, expo = origin_constant(spec)
        return cls(spec, c_f, expo)

    def __call__(self, lam):
        return sdf(self.model, lam)


def _quad(func, a, b, tol, **kw):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err = integrate.quad(func, a, b, epsabs=tol, epsrel=0.0, limit=500, **kw)
    return val, err


def acvf_from_sdf(spec: ModelSpec, k: int, tol: float = 1e-8) -> float:
    """``2 ∫_0^π f(λ) cos(kλ) dλ`` by adaptive Gauss–Kronrod quadrature.

    The interval is split at ``min(1/k, 1)``. On the origin piece the change of
    variables ``λ = u^{1/α}`` makes the ``λ^{α−1}`` endpoint behaviour
    regular; the outer piece uses the cosine-weighted (QAWO) rule.
    """
    validate(spec)
    if not tol > 0:
        raise ParameterOutOfRange("tol must be positive")
    if k < 0:
        raise ParameterOutOfRange("lag must be non-negative")
    alpha = alpha_of(spec)
    split = min(1.0 / k, 1.0) if k else 1.0
    inv = 1.0 / alpha

    def inner(u):
        lam = u ** inv
        f = _sdf_values(spec, np.array([lam]))[0]
        return f * math.cos(k * lam) * inv * u ** (inv - 1.0)

    def outer(lam):
        return _sdf_values(spec, np.array([lam]))[0]

    v1, e1 = _quad(inner, 0.0, split ** alpha, tol / 4)
    if k:
        v2, e2 = _quad(outer, split, math.pi, tol / 4, weight="cos", wvar=float(k))
    else:
        v2, e2 = _quad(outer, split, math.pi, tol / 4)
    if 2.0 * (e1 + e2) > tol:
        raise ToleranceUnachievable(
            f"quadrature error estimate {2 * (e1 + e2):.3g} exceeds tolerance {tol:.3g}"
        )
    return 2.0 * (v1 + v2)


def kolmogorov_variance(spec: ModelSpec, tol: float = 1e-13) -> float:
    """Innovation variance ``2π exp{(1/π) ∫_0^π log f(λ) dλ}``."""
    validate(spec)

    def logf(lam):
        return math.log(_sdf_values(spec, np.array([lam]))[0])

    a, _ = _quad(logf, 0.0, 1.0, tol)
    b, _ = _quad(logf, 1.0, math.pi, tol)
    return 2.0 * math.pi * math.exp((a + b) / math.pi)


def acvf_constant_from_sdf(alpha: float, c_f: float) -> float:
    """ACVF constant implied by ``f(λ) ∼ c_f λ^{α−1}`` for antipersistent α ∈ (1,2).

    ``c_γ = 2 c_f √π Γ(α/2) / {(1/4)^{(α−1)/2} Γ((1−α)/2)}``, negative on (1,2)
    because Γ((1−α)/2) has a negative argument there.
    """
    if not 1.0 < alpha < 2.0:
        raise DomainError(f"alpha must lie in (1,2), got {alpha}")
    ratio = gamma_product([alpha / 2.0], [(1.0 - alpha) / 2.0])
    return 2.0 * c_f * math.sqrt(math.pi) * ratio / 0.25 ** ((alpha - 1.0) / 2.0)

