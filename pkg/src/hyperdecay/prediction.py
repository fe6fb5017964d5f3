"""Durbin–Levinson prediction, generalized variance and exact likelihood."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _kernels
from ._special import lgamma_second_difference
from .acvf import AcvfSeq
from .errors import (
    EmptyData,
    MethodCapExceeded,
    MissingInnovationVariance,
    NotPositiveDefinite,
    ParameterOutOfRange,
)

DEFAULT_MAX_DL = 100_000
PD_MARGIN = 1e-12
SCAN_BLOCK = 1 << 20


def max_dl() -> int:
    """Largest order accepted by the O(n²) recursion (env ``HYPERDECAY_MAX_DL``)."""
    raw = os.environ.get("HYPERDECAY_MAX_DL")
    return int(raw) if raw else DEFAULT_MAX_DL


@dataclass(frozen=True, eq=False)
class DlResult:
    pacf: np.ndarray          # φ_{k,k}, k = 1..n−1
    sigma2: np.ndarray        # σ_k², k = 0..n−1
    last_coeffs: np.ndarray   # φ_{n−1,j}, j = 1..n−1
    log_gvar: float | None    # Σ log(σ_k²/σ_A²); None when σ_A² is unknown


@dataclass(frozen=True, eq=False)
class GvarCurve:
    n_values: np.ndarray
    g_values: np.ndarray
    log_g_values: np.ndarray

    def to_csv(self, decimals: int | None = 4) -> str:
        rows = ["n,g"]
        for n, g in zip(self.n_values.tolist(), self.g_values.tolist()):
            rows.append(f"{n},{g:.{decimals}f}" if decimals is not None else f"{n},{g!r}")
        return "\n".join(rows) + "\n"


class LogLik(NamedTuple):
    loglik: float
    aic: float


def _check_d(d: float) -> None:
    if not abs(d) < 0.5:
        raise ParameterOutOfRange(f"|d| must be < 0.5, got {d}")


def _check_cap(n: int) -> None:
    cap = max_dl()
    if n > cap:
        raise MethodCapExceeded(
            f"Durbin–Levinson order {n} exceeds the cap {cap} (set HYPERDECAY_MAX_DL)"
        )


def _sigma_a(seq: AcvfSeq, override: float | None) -> float | None:
    return override if override is not None else seq.innovation_variance


def durbin_levinson(seq: AcvfSeq, n: int, innovation_variance: float | None = None) -> DlResult:
    """Run the recursion to order ``n − 1`` using ``γ(0..n−1)``."""
    if n < 1:
        raise ParameterOutOfRange("n must be ≥ 1")
    _check_cap(n)
    seq.require(n)
    pacf, sigma2, last, fail = _kernels.levinson(seq.values[:n], n, PD_MARGIN)
    if fail >= 0:
        raise NotPositiveDefinite(f"|φ_kk| reached 1 at order {fail}")
    sa = _sigma_a(seq, innovation_variance)
    log_gvar = float(np.sum(np.log(sigma2 / sa))) if sa else None
    return DlResult(pacf, sigma2, last, log_gvar)


def pacf_fracnoise(d: float, k):
    """Closed-form partial autocorrelation ``d / (k − d)``."""
    _check_d(d)
    k = np.asarray(k)
    if np.any(k < 1):
        raise ParameterOutOfRange("PACF lag must be ≥ 1")
    out = d / (k - d)
    return out if out.ndim else float(out)


def log_sigma2_fracnoise(d: float, k):
    """``log σ_k² = log k! + log (k−2d)! − 2 log (k−d)!`` for σ_A² = 1."""
    _check_d(d)
    k = np.asarray(k, dtype=float)
    if np.any(k < 0):
        raise ParameterOutOfRange("k must be ≥ 0")
    return lgamma_second_difference(k + 1.0 - d, d)


def sigma2_fracnoise(d: float, k):
    return np.exp(log_sigma2_fracnoise(d, k))


def _log_sigma2_blocks(d: float, n_max: int, block: int):
    """Yield ``(start, log σ_k² for k in [start, stop))`` from the top down.

    Anchored at ``k = n_max − 1`` by the closed form, then stepped backwards
    with ``log σ_{k−1}² = log σ_k² − log(1 − (d/(k−d))²)``. Every increment is
    positive, so the running sums carry no cancellation.
    """
    anchor = float(log_sigma2_fracnoise(d, n_max - 1))
    carry = 0.0  # Σ_{j ≥ stop} of the backward increments
    stop = n_max
    while stop > 0:
        start = max(0, stop - block)
        j = np.arange(start + 1, stop, dtype=float)
        inc = -np.log1p(-(d / (j - d)) ** 2)
        suffix = np.empty(stop - start)
        suffix[-1] = 0.0
        suffix[:-1] = np.cumsum(inc[::-1])[::-1]
        yield start, anchor + carry + suffix
        if start > 0:
            carry += suffix[0] + float(-np.log1p(-(d / (start - d)) ** 2))
        stop = start


def gvar_fracnoise(d: float, n_values, block: int = SCAN_BLOCK) -> GvarCurve:
    """Standardized generalized variance ``g(n) = Π_{k<n} σ_k²`` of fractional noise.

    O(max n) time and O(block) memory; the result does not depend on ``block``.
    """
    _check_d(d)
    ns = np.asarray(list(n_values) if not np.isscalar(n_values) else [n_values], dtype=np.int64)
    if ns.size == 0 or np.any(ns < 1):
        raise ParameterOutOfRange("n values must be ≥ 1")
    if np.any(np.diff(ns) <= 0):
        raise ParameterOutOfRange("n values must be strictly increasing")
    n_max = int(ns[-1])
    edges = np.concatenate(([0], ns))
    buckets = [[] for _ in range(ns.size)]  # bucket i covers k in [edges[i], edges[i+1])
    for start, logs in _log_sigma2_blocks(d, n_max, block):
        stop = start + logs.size
        first = int(np.searchsorted(edges, start, side="right")) - 1
        i = first
        while i < ns.size and edges[i] < stop:
            lo = max(edges[i], start) - start
            hi = min(edges[i + 1], stop) - start
            if hi > lo:
                buckets[i].append(float(np.sum(logs[lo:hi])))
            i += 1
    partial = [math.fsum(b) for b in buckets]
    log_g = np.array([math.fsum(partial[: i + 1]) for i in range(ns.size)])
    return GvarCurve(ns, np.exp(log_g), log_g)


def gvar_general(seq: AcvfSeq, n_values, innovation_variance: float | None = None) -> GvarCurve:
    """Generalized variance from a Durbin–Levinson run on an arbitrary ACVF.

    ``n_values`` is an increasing sequence, or an integer meaning 1..n.
    """
    sa = _sigma_a(seq, innovation_variance)
    if not sa:
        raise MissingInnovationVariance("raw ACVF input needs an innovation variance")
    ns = np.arange(1, int(n_values) + 1) if np.isscalar(n_values) else np.asarray(n_values)
    ns = ns.astype(np.int64)
    if ns.size == 0 or np.any(ns < 1) or np.any(np.diff(ns) <= 0):
        raise ParameterOutOfRange("n values must be positive and strictly increasing")
    res = durbin_levinson(seq, int(ns[-1]), sa)
    log_g = np.cumsum(np.log(res.sigma2 / sa))[ns - 1]
    return GvarCurve(ns, np.exp(log_g), log_g)


def a_k_diagnostic(d: float, k):
    """Stirling approximation ``a(k)`` of ``log σ_k²`` and the product ``k·a(k)``.

    ``a(k) = (k+½) log{k(k−2d)/(k−d)²} + 2d log{(k−d)/(k−2d)}``, with both
    logarithms evaluated through log1p.
    """
    _check_d(d)
    if d == 0.0:
        raise ParameterOutOfRange("a(k) diagnostic requires d ≠ 0")
    k = np.asarray(k, dtype=float)
    if np.any(k < 1):
        raise ParameterOutOfRange("k must be ≥ 1")
    a = (k + 0.5) * np.log1p(-(d / (k - d)) ** 2) + 2.0 * d * np.log1p(d / (k - 2.0 * d))
    ka = k * a
    if a.ndim:
        return a, ka
    return float(a), float(ka)


def predict_one_step(seq: AcvfSeq, history) -> tuple[float, float]:
    """Best linear predictor of the next value from ``history`` (oldest first)."""
    x = np.asarray(history, dtype=float)
    k = x.size
    if k < 1:
        raise EmptyData("history must hold at least one observation")
    res = durbin_levinson(seq, k + 1)
    prediction = float(res.last_coeffs @ x[::-1])
    return prediction, float(res.sigma2[k])


def innovations(seq: AcvfSeq, data) -> tuple[np.ndarray, np.ndarray]:
    """One-step prediction errors and their variances for ``data``."""
    x = np.asarray(data, dtype=float)
    if x.size == 0:
        raise EmptyData("data is empty")
    _check_cap(x.size)
    seq.require(x.size)
    e, v, fail = _kernels.innovations(seq.values[: x.size], x, PD_MARGIN)
    if fail >= 0:
        raise NotPositiveDefinite(f"|φ_kk| reached 1 at order {fail}")
    return e, v


def exact_loglik(seq: AcvfSeq, data, n_params: int | None = None) -> LogLik:
    """Exact Gaussian log-likelihood in innovations form, and its AIC.

    ``n_params`` defaults to the source model's count (d, φ's, θ's, σ²).
    """
    e, v = innovations(seq, data)
    n = e.size
    loglik = -0.5 * (n * math.log(2.0 * math.pi) + np.sum(np.log(v)) + np.sum(e * e / v))
    if n_params is None:
        if seq.source is None:
            raise ParameterOutOfRange("raw ACVF input needs an explicit parameter count")
        n_params = seq.source.n_params
    return LogLik(float(loglik), float(-2.0 * loglik + 2.0 * n_params))
