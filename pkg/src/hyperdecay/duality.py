"""Dual models: FARMA(p,q,d) ↔ FARMA(q,p,−d) and the α ↔ 2−α reflection."""

from __future__ import annotations

import numpy as np

from .errors import DomainError, Unsupported
from .models import ModelSpec, validate
from .spectrum import _sdf_values, frequency_grid


def dual(spec: ModelSpec) -> ModelSpec:
    """Swap the AR and MA polynomials and negate d.

    The innovation variance is kept as is; the model kind is preserved, so
    fractional noise maps to fractional noise.
    """
    validate(spec)
    if spec.is_fgn:
        raise Unsupported("FGN has no constructive dual model")
    return ModelSpec(spec.kind, d=-spec.d if spec.d else 0.0, ar=spec.ma, ma=spec.ar,
                     sigma2=spec.sigma2)


def dual_alpha(alpha: float) -> float:
    if not 0.0 < alpha < 2.0 or alpha == 1.0:
        raise DomainError(f"decay parameter {alpha} not in (0,1)∪(1,2)")
    return 2.0 - alpha


def spectral_reciprocity_check(spec: ModelSpec, grid_size: int = 10_000) -> float:
    """Max over a linear grid on (0, π] of ``|f·f_dual·(2π/σ²)² − 1|``."""
    if grid_size < 2:
        raise DomainError("grid_size must be ≥ 2")
    other = dual(spec)
    lam = frequency_grid("linear", grid_size)
    prod = _sdf_values(spec, lam) * _sdf_values(other, lam)
    scale = (2.0 * np.pi / spec.sigma2) ** 2
    return float(np.max(np.abs(prod * scale - 1.0)))
