"""Model specifications and the decay-parameter algebra.

Three families are supported: fractionally differenced white noise, FARMA(p,q,d)
and fractional Gaussian noise (FGN). Polynomials follow the convention

    φ(B) = 1 − φ_1 B − … − φ_p B^p,    θ(B) = 1 − θ_1 B − … − θ_q B^q,

so ``ar=(0.5,)`` means ``(1 − 0.5B)``.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field, replace
from typing import Any

import numpy as np

from .errors import (
    DegenerateMemory,
    NonInvertible,
    NonStationary,
    ParameterOutOfRange,
)

ROOT_TOLERANCE = 1e-8


class ModelKind(enum.Enum):
    FRACNOISE = "fracnoise"
    FARMA = "farma"
    FGN = "fgn"


class Persistence(enum.Enum):
    STRONGLY_PERSISTENT = "strongly_persistent"
    ANTIPERSISTENT = "antipersistent"


@dataclass(frozen=True)
class ModelSpec:
    kind: ModelKind
    d: float = 0.0
    ar: tuple[float, ...] = ()
    ma: tuple[float, ...] = ()
    hurst: float | None = None
    sigma2: float = 1.0

    def __post_init__(self):
        # Normalize sequences so equality and hashing are field-exact.
        object.__setattr__(self, "ar", tuple(float(v) for v in self.ar))
        object.__setattr__(self, "ma", tuple(float(v) for v in self.ma))
        object.__setattr__(self, "d", float(self.d))
        object.__setattr__(self, "sigma2", float(self.sigma2))
        if self.hurst is not None:
            object.__setattr__(self, "hurst", float(self.hurst))

    @classmethod
    def fracnoise(cls, d: float, sigma2: float = 1.0) -> ModelSpec:
        return cls(ModelKind.FRACNOISE, d=d, sigma2=sigma2)

    @classmethod
    def farma(cls, d: float, ar=(), ma=(), sigma2: float = 1.0) -> ModelSpec:
        return cls(ModelKind.FARMA, d=d, ar=tuple(ar), ma=tuple(ma), sigma2=sigma2)

    @classmethod
    def fgn(cls, hurst: float, sigma2: float = 1.0) -> ModelSpec:
        return cls(ModelKind.FGN, hurst=hurst, sigma2=sigma2)

    @property
    def is_fgn(self) -> bool:
        return self.kind is ModelKind.FGN

    @property
    def ar_poly(self) -> np.ndarray:
        """Coefficients of φ(B) in increasing powers of B."""
        return np.concatenate(([1.0], -np.asarray(self.ar, dtype=float)))

    @property
    def ma_poly(self) -> np.ndarray:
        """Coefficients of θ(B) in increasing powers of B."""
        return np.concatenate(([1.0], -np.asarray(self.ma, dtype=float)))

    @property
    def n_params(self) -> int:
        """Free-parameter count used by AIC (the mean is not estimated)."""
        if self.is_fgn:
            return 2
        return 2 + len(self.ar) + len(self.ma)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"kind": self.kind.value}
        if self.is_fgn:
            out["H"] = self.hurst
        else:
            out["d"] = self.d
            if self.kind is ModelKind.FARMA:
                out["ar"] = list(self.ar)
                out["ma"] = list(self.ma)
        out["sigma2"] = self.sigma2
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, obj: dict[str, Any]) -> ModelSpec:
        if not isinstance(obj, dict) or "kind" not in obj:
            raise ValueError("model JSON must be an object with a 'kind' field")
        try:
            kind = ModelKind(obj["kind"])
        except ValueError:
            raise ValueError(f"unknown model kind {obj['kind']!r}") from None
        sigma2 = float(obj.get("sigma2", 1.0))
        if kind is ModelKind.FGN:
            if "H" not in obj:
                raise ValueError("fgn model requires 'H'")
            return cls.fgn(float(obj["H"]), sigma2)
        if "d" not in obj:
            raise ValueError(f"{kind.value} model requires 'd'")
        if kind is ModelKind.FRACNOISE:
            if obj.get("ar") or obj.get("ma"):
                raise ValueError("fracnoise model takes no ar/ma coefficients")
            return cls.fracnoise(float(obj["d"]), sigma2)
        return cls.farma(
            float(obj["d"]),
            [float(v) for v in obj.get("ar", [])],
            [float(v) for v in obj.get("ma", [])],
            sigma2,
        )

    @classmethod
    def from_json(cls, text: str) -> ModelSpec:
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class DecayClass:
    alpha: float
    persistence: Persistence = field(init=False)
    c_gamma_sign: int = field(init=False)

    def __post_init__(self):
        if not 0.0 < self.alpha < 2.0 or self.alpha == 1.0:
            raise DegenerateMemory(f"decay parameter {self.alpha} not in (0,1)∪(1,2)")
        persistent = self.alpha < 1.0
        object.__setattr__(
            self,
            "persistence",
            Persistence.STRONGLY_PERSISTENT if persistent else Persistence.ANTIPERSISTENT,
        )
        object.__setattr__(self, "c_gamma_sign", 1 if persistent else -1)


def min_root_modulus(poly: np.ndarray) -> float:
    """Smallest modulus among the roots of a polynomial in B (increasing powers).

    Computed from the reciprocal roots, whose monic companion matrix stays
    well scaled even when the top coefficient is tiny.
    """
    coeffs = np.asarray(poly, dtype=float)
    if coeffs[0] == 0.0:
        return 0.0
    reciprocal = np.roots(coeffs / coeffs[0])
    if reciprocal.size == 0:
        return math.inf
    largest = float(np.max(np.abs(reciprocal)))
    return math.inf if largest == 0.0 else 1.0 / largest


def validate(spec: ModelSpec) -> ModelSpec:
    """Return ``spec`` unchanged if it satisfies every model invariant."""
    if not (spec.sigma2 > 0.0 and math.isfinite(spec.sigma2)):
        raise ParameterOutOfRange(f"innovation variance must be positive, got {spec.sigma2}")
    if spec.is_fgn:
        h = spec.hurst
        if h is None or not 0.0 < h < 1.0:
            raise ParameterOutOfRange(f"Hurst parameter must lie in (0,1), got {h}")
        return spec
    if not abs(spec.d) < 0.5:
        raise ParameterOutOfRange(f"memory parameter must satisfy |d| < 0.5, got {spec.d}")
    if spec.kind is ModelKind.FRACNOISE and (spec.ar or spec.ma):
        raise ParameterOutOfRange("fractional noise takes no ARMA coefficients")
    if not all(math.isfinite(v) for v in spec.ar + spec.ma):
        raise ParameterOutOfRange("ARMA coefficients must be finite")
    if min_root_modulus(spec.ar_poly) <= 1.0 + ROOT_TOLERANCE:
        raise NonStationary("autoregressive polynomial has a root on or inside the unit circle")
    if min_root_modulus(spec.ma_poly) <= 1.0 + ROOT_TOLERANCE:
        raise NonInvertible("moving-average polynomial has a root on or inside the unit circle")
    return spec


def alpha_of(spec: ModelSpec) -> float:
    """Decay parameter α without the α ≠ 1 restriction (white noise gives 1)."""
    if spec.is_fgn:
        return 2.0 - 2.0 * spec.hurst
    return 1.0 - 2.0 * spec.d


def decay_class(spec: ModelSpec) -> DecayClass:
    validate(spec)
    if (spec.is_fgn and spec.hurst == 0.5) or (not spec.is_fgn and spec.d == 0.0):
        raise DegenerateMemory("short-memory model (α = 1) has no hyperbolic decay class")
    return DecayClass(alpha_of(spec))


def with_sigma2(spec: ModelSpec, sigma2: float) -> ModelSpec:
    return replace(spec, sigma2=sigma2)
