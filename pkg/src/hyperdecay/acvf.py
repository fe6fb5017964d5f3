"""Autocovariance sequences, aggregation and log-log decay fits."""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter

from ._special import gamma_product
from .errors import (
    HyperdecayError,
    InsufficientLags,
    MixedSigns,
    NotPositiveDefinite,
    ParameterOutOfRange,
    ToleranceUnachievable,
    Unsupported,
    WindowTooShort,
)
from .models import ModelKind, ModelSpec, decay_class, min_root_modulus, validate

DEFAULT_TOL = 1e-12
MAX_ARMA_TERMS = 200_000
ROOT_MARGIN = 1e-6
FGN_SERIES_LAG = 4
FGN_SERIES_TERMS = 20


class Exactness(enum.Enum):
    EXACT = "exact"
    TRUNCATED = "truncated"


@dataclass(frozen=True, eq=False)
class AcvfSeq:
    """Prefix ``γ(0..K)`` of an autocovariance function.

    ``source`` is the generating model, or ``None`` for raw user input. The
    innovation variance is carried along because the generalized variance is
    standardized by it; raw sequences may leave it unset.
    """

    values: np.ndarray
    exactness: Exactness = Exactness.EXACT
    tail_bound: float = 0.0
    source: ModelSpec | None = None
    innovation_variance: float | None = None

    def __post_init__(self):
        values = np.array(self.values, dtype=float).ravel()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        if values.size == 0 or not values[0] > 0.0:
            raise NotPositiveDefinite("autocovariance sequence needs γ(0) > 0")
        if np.any(np.abs(values[1:]) > values[0] * (1.0 + 1e-12)):
            raise NotPositiveDefinite("|γ(k)| exceeds γ(0)")

    @classmethod
    def raw(cls, values, innovation_variance: float | None = None) -> AcvfSeq:
        return cls(values, innovation_variance=innovation_variance)

    @property
    def max_lag(self) -> int:
        return self.values.size - 1

    def __len__(self) -> int:
        return self.values.size

    def __getitem__(self, k):
        return self.values[k]

    def require(self, n_lags: int) -> None:
        if self.values.size < n_lags:
            raise InsufficientLags(f"need {n_lags} lags, sequence has {self.values.size}")

    def metadata(self) -> dict:
        return {
            "exactness": self.exactness.value,
            "tail_bound": self.tail_bound,
            "source": self.source.to_dict() if self.source else "raw",
            "innovation_variance": self.innovation_variance,
        }

    def to_csv(self) -> str:
        rows = ["lag,gamma"]
        rows += [f"{k},{v!r}" for k, v in enumerate(self.values.tolist())]
        return "\n".join(rows) + "\n"

    def to_json(self) -> str:
        return json.dumps({"gamma": self.values.tolist(), **self.metadata()})


@dataclass(frozen=True)
class AsymptoticFit:
    """Least-squares fit of ``|x_k| ≈ |c| k^{−alpha}`` over an inclusive window."""

    alpha_hat: float
    c_gamma_hat: float
    lag_window: tuple[int, int]
    expected_alpha: float | None = None


def _check_d(d: float) -> None:
    if not abs(d) < 0.5:
        raise ParameterOutOfRange(f"|d| must be < 0.5, got {d}")


def fracnoise_gamma0(d: float, sigma2: float = 1.0) -> float:
    """``σ² Γ(1−2d) / Γ(1−d)²``."""
    return sigma2 * gamma_product([1.0 - 2.0 * d], [1.0 - d, 1.0 - d])


def acvf_fracnoise(d: float, sigma2: float, max_lag: int) -> AcvfSeq:
    _check_d(d)
    if max_lag < 0:
        raise ParameterOutOfRange("max_lag must be non-negative")
    if not sigma2 > 0:
        raise ParameterOutOfRange("sigma2 must be positive")
    k = np.arange(1, max_lag + 1, dtype=float)
    gamma = np.empty(max_lag + 1)
    gamma[0] = fracnoise_gamma0(d, sigma2)
    gamma[1:] = gamma[0] * np.cumprod((k - 1.0 + d) / (k - d))
    return AcvfSeq(gamma, Exactness.EXACT, 0.0, ModelSpec.fracnoise(d, sigma2), sigma2)


def fgn_second_difference(k: np.ndarray, two_h: float) -> np.ndarray:
    """``(|k+1|^{2H} − 2|k|^{2H} + |k−1|^{2H}) / 2`` for integer lags k ≥ 0."""
    k = np.asarray(k, dtype=float)
    out = np.empty_like(k)
    near = k < FGN_SERIES_LAG
    kn = k[near]
    out[near] = 0.5 * (np.abs(kn + 1) ** two_h - 2 * np.abs(kn) ** two_h + np.abs(kn - 1) ** two_h)
    kf = k[~near]
    # k^{2H} [(1+x)^{2H} + (1−x)^{2H} − 2] / 2 with x = 1/k is k^{2H} Σ_{j even} C(2H, j) x^j;
    # summing the even binomial terms avoids the O(k²) relative cancellation of the direct form.
    x2 = 1.0 / (kf * kf)
    coef = 1.0
    total = np.zeros_like(kf)
    power = np.ones_like(kf)
    for j in range(2, 2 * FGN_SERIES_TERMS + 2, 2):
        coef *= (two_h - j + 2) * (two_h - j + 1) / ((j - 1) * j)
        power *= x2
        total += coef * power
    out[~near] = kf ** two_h * total
    return out


def acvf_fgn(hurst: float, sigma2: float, max_lag: int) -> AcvfSeq:
    spec = validate(ModelSpec.fgn(hurst, sigma2))
    if max_lag < 0:
        raise ParameterOutOfRange("max_lag must be non-negative")
    gamma = sigma2 * fgn_second_difference(np.arange(max_lag + 1), 2.0 * hurst)
    gamma[0] = sigma2
    return AcvfSeq(gamma, Exactness.EXACT, 0.0, spec, innovation_variance(spec))


def arma_psi(spec: ModelSpec, n_terms: int) -> np.ndarray:
    """First ``n_terms`` coefficients (including ψ_0 = 1) of θ(B)/φ(B)."""
    impulse = np.zeros(n_terms)
    impulse[0] = 1.0
    return lfilter(spec.ma_poly, spec.ar_poly, impulse)


def _arma_truncation(spec: ModelSpec, gamma_w0: float, tol: float, max_terms: int):
    """Smallest J whose truncated ARMA filter keeps every γ error below ``tol``.

    Dropping ψ_j for j ≥ J perturbs each autocovariance by at most
    ``γ_W(0) (2 S T + T²)`` with ``S = Σ|ψ_j|`` and ``T = Σ_{j≥J}|ψ_j|``.
    T is summed exactly over the computed prefix and beyond it bounded by
    ``C r^N / (1 − r)`` with r slightly above the largest reciprocal root.
    """
    rho = 1.0 / min_root_modulus(spec.ar_poly)
    r = rho + ROOT_MARGIN
    if r >= 1.0:
        raise ToleranceUnachievable("autoregressive root too close to the unit circle")
    n_terms = min(max_terms, 1024)
    while True:
        psi = arma_psi(spec, n_terms)
        absw = np.abs(psi)
        j = np.arange(n_terms)
        with np.errstate(divide="ignore"):
            log_ratio = np.log(absw) - j * math.log(r)
        log_c = float(np.max(log_ratio[np.isfinite(log_ratio)]))
        far_tail = math.exp(log_c + n_terms * math.log(r)) / (1.0 - r)
        tails = np.cumsum(absw[::-1])[::-1] + far_tail  # tails[J] = Σ_{j≥J}|ψ_j|
        total = tails[0]
        err = gamma_w0 * (2.0 * total * tails + tails * tails)
        ok = np.nonzero(err < tol)[0]
        if ok.size:
            cut = max(int(ok[0]), 1)
            return psi[:cut], float(err[cut])
        if n_terms >= max_terms:
            raise ToleranceUnachievable(
                f"ARMA truncation bound not below {tol} within {max_terms} terms"
            )
        n_terms = min(max_terms, 4 * n_terms)


def acvf_farma(spec: ModelSpec, max_lag: int, tol: float = DEFAULT_TOL,
               max_terms: int = MAX_ARMA_TERMS) -> AcvfSeq:
    """FARMA autocovariances as an ARMA filter applied to fractional noise.

    With ARMA weights ψ_j and their autocorrelation ``c(h) = Σ_j ψ_j ψ_{j+h}``,
    ``γ_Z(k) = Σ_h c(h) γ_W(k − h)`` where γ_W is the fractional-noise ACVF.
    """
    validate(spec)
    if spec.is_fgn:
        raise Unsupported("acvf_farma needs a FARMA / fractional-noise spec")
    if not tol > 0:
        raise ParameterOutOfRange("tol must be positive")
    if not spec.ar and not spec.ma:
        return acvf_fracnoise(spec.d, spec.sigma2, max_lag)
    gamma_w0 = fracnoise_gamma0(spec.d, spec.sigma2)
    if spec.ar:
        psi, bound = _arma_truncation(spec, gamma_w0, tol, max_terms)
        exactness = Exactness.TRUNCATED
    else:
        psi, bound = spec.ma_poly, 0.0
        exactness = Exactness.EXACT
    width = psi.size
    c = np.correlate(psi, psi, mode="full")  # lags −(J−1)..(J−1)
    w = acvf_fracnoise(spec.d, spec.sigma2, max_lag + width - 1).values
    lags = np.abs(np.arange(-(width - 1), max_lag + width))
    gamma_w = w[lags]
    gamma = np.convolve(gamma_w, c, mode="valid")[: max_lag + 1]
    return AcvfSeq(gamma, exactness, bound, spec, spec.sigma2)


def acvf(spec: ModelSpec, max_lag: int, tol: float = DEFAULT_TOL) -> AcvfSeq:
    """Dispatch to the family-specific autocovariance routine."""
    validate(spec)
    if spec.kind is ModelKind.FGN:
        return acvf_fgn(spec.hurst, spec.sigma2, max_lag)
    if spec.kind is ModelKind.FRACNOISE:
        return acvf_fracnoise(spec.d, spec.sigma2, max_lag)
    return acvf_farma(spec, max_lag, tol)


def innovation_variance(spec: ModelSpec) -> float:
    """One-step prediction variance given the infinite past.

    Equal to ``sigma2`` for FARMA models; for FGN it comes from Kolmogorov's
    formula ``2π exp{(1/π) ∫_0^π log f(λ) dλ}``.
    """
    if spec.kind is not ModelKind.FGN:
        return spec.sigma2
    if spec.hurst == 0.5:
        return spec.sigma2
    from .spectrum import kolmogorov_variance

    return kolmogorov_variance(spec)


def aggregate_acvf(seq: AcvfSeq, m: int, max_lag: int) -> AcvfSeq:
    """ACVF of non-overlapping block means of length ``m``.

    ``γ_Y(ℓ) = m^{−2} Σ_{|j|<m} (m − |j|) γ_Z(mℓ + j)``.
    """
    if m < 1:
        raise ParameterOutOfRange("aggregation level m must be ≥ 1")
    if max_lag < 0:
        raise ParameterOutOfRange("max_lag must be non-negative")
    seq.require((max_lag + 1) * m)
    if m == 1:
        return AcvfSeq(seq.values[: max_lag + 1], seq.exactness, seq.tail_bound)
    g = seq.values
    base = m * np.arange(max_lag + 1)
    out = np.zeros(max_lag + 1)
    for j in range(-(m - 1), m):
        out += (m - abs(j)) * g[np.abs(base + j)]
    out /= m * m
    return AcvfSeq(out, seq.exactness, seq.tail_bound)


def asymptotic_constant(spec: ModelSpec) -> float:
    """Constant c_γ in ``γ(k) ∼ c_γ k^{−α}``."""
    decay_class(spec)
    if spec.is_fgn:
        h = spec.hurst
        return spec.sigma2 * h * (2.0 * h - 1.0)
    d = spec.d
    base = spec.sigma2 * gamma_product([1.0 - 2.0 * d], [d, 1.0 - d])
    ratio = spec.ma_poly.sum() / spec.ar_poly.sum()
    return base * ratio * ratio


def loglog_fit(index: np.ndarray, values: np.ndarray, window: tuple[int, int]):
    """Return ``(decay exponent, signed constant)`` for ``values ≈ c·index^{−e}``."""
    lo, hi = int(window[0]), int(window[1])
    if lo < 1:
        raise ParameterOutOfRange("fit window must start at index ≥ 1")
    if hi - lo + 1 < 2:
        raise WindowTooShort(f"window {window} holds fewer than two points")
    sel = (index >= lo) & (index <= hi)
    if index[-1] < hi:
        raise InsufficientLags(f"window ends at {hi}, data end at {int(index[-1])}")
    y = values[sel]
    signs = np.sign(y)
    if np.any(signs == 0) or np.any(signs != signs[0]):
        raise MixedSigns("values in the fit window do not share one sign")
    lx = np.log(index[sel].astype(float))
    ly = np.log(np.abs(y))
    mx, my = lx.mean(), ly.mean()
    dx = lx - mx
    slope = float(dx @ (ly - my) / (dx @ dx))
    intercept = my - slope * mx
    return -slope, float(signs[0]) * math.exp(intercept)


def fit_decay(seq, lag_window: tuple[int, int]) -> AsymptoticFit:
    """Fit ``γ(k) ∼ c k^{−α}`` by unweighted least squares in log-log space.

    ``seq`` may be an :class:`AcvfSeq` or any array indexed by lag.
    """
    values = seq.values if isinstance(seq, AcvfSeq) else np.asarray(seq, dtype=float)
    expected = None
    if isinstance(seq, AcvfSeq) and seq.source is not None:
        try:
            expected = decay_class(seq.source).alpha
        except HyperdecayError:
            expected = None
    alpha_hat, c_hat = loglog_fit(np.arange(values.size), values, lag_window)
    return AsymptoticFit(alpha_hat, c_hat, (int(lag_window[0]), int(lag_window[1])), expected)
