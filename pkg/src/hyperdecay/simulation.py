"""Exact Gaussian sample paths and the sample-ACVF testing utility."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from . import _kernels
from .acvf import AcvfSeq, acvf
from .errors import LagTooLarge, MethodCapExceeded, NotPositiveDefinite, ParameterOutOfRange
from .models import ModelSpec
from .prediction import PD_MARGIN, _check_cap
from .rng import standard_normals

DENSE_CAP = 5000


class SimMethod(enum.Enum):
    DL_INNOVATIONS = "dl"
    DENSE = "dense"


@dataclass(frozen=True)
class SimConfig:
    n: int
    seed: int = 0
    method: SimMethod = SimMethod.DL_INNOVATIONS
    stream: int = 0

    def __post_init__(self):
        object.__setattr__(self, "method", SimMethod(self.method))
        if self.n < 1:
            raise ParameterOutOfRange("path length must be ≥ 1")
        if self.method is SimMethod.DENSE and self.n > DENSE_CAP:
            raise MethodCapExceeded(f"dense factorization is capped at n = {DENSE_CAP}")


def _gamma_for(source, n: int) -> np.ndarray:
    seq = acvf(source, n - 1) if isinstance(source, ModelSpec) else source
    if not isinstance(seq, AcvfSeq):
        seq = AcvfSeq.raw(seq)
    seq.require(n)
    return seq.values[:n]


def _dense_factor(gamma: np.ndarray) -> np.ndarray:
    try:
        return linalg.cholesky(linalg.toeplitz(gamma), lower=True)
    except linalg.LinAlgError:
        raise NotPositiveDefinite("covariance matrix is not positive definite") from None


def simulate(source, config: SimConfig) -> np.ndarray:
    """Zero-mean Gaussian path of length ``config.n`` with covariance Γ(n).

    ``source`` is a :class:`ModelSpec` or an :class:`AcvfSeq`. The DL method
    draws innovations ``e_k ~ N(0, σ_k²)`` and sets
    ``Z_{k+1} = Σ_j φ_{k,j} Z_{k+1−j} + e_k``; the dense method multiplies the
    Cholesky factor of Γ(n) by a standard-normal vector. Output is
    deterministic in ``(seed, stream)``.
    """
    gamma = _gamma_for(source, config.n)
    w = standard_normals(config.seed, config.stream, config.n)
    if config.method is SimMethod.DENSE:
        return _dense_factor(gamma) @ w
    _check_cap(config.n)
    z, fail = _kernels.simulate(gamma, w, PD_MARGIN)
    if fail >= 0:
        raise NotPositiveDefinite(f"|φ_kk| reached 1 at order {fail}")
    return z


def simulate_replicates(source, config: SimConfig, count: int) -> np.ndarray:
    """``count`` independent paths (rows) using streams ``config.stream + i``."""
    gamma = _gamma_for(source, config.n)
    if config.method is SimMethod.DENSE:
        factor = _dense_factor(gamma)
        w = np.stack([standard_normals(config.seed, config.stream + i, config.n)
                      for i in range(count)])
        return w @ factor.T
    seq = AcvfSeq.raw(gamma)
    return np.stack([
        simulate(seq, SimConfig(config.n, config.seed, config.method, config.stream + i))
        for i in range(count)
    ])


def sample_acvf(data, max_lag: int) -> np.ndarray:
    """Biased (divisor-n) sample autocovariance with known zero mean.

    Returns a plain array: constant-zero data gives γ̂(0) = 0, which is not a
    valid :class:`AcvfSeq`.
    """
    x = np.asarray(data, dtype=float)
    n = x.size
    if max_lag < 0:
        raise ParameterOutOfRange("max_lag must be non-negative")
    if max_lag >= n:
        raise LagTooLarge(f"max_lag {max_lag} must be below the data length {n}")
    if n * (max_lag + 1) <= 5_000_000:
        return np.array([x[: n - k] @ x[k:] for k in range(max_lag + 1)]) / n
    size = 1 << int(np.ceil(np.log2(2 * n)))
    spec = np.fft.rfft(x, size)
    return np.fft.irfft(spec * np.conj(spec), size)[: max_lag + 1] / n


def block_means(data, m: int) -> np.ndarray:
    """Non-overlapping means of ``m`` consecutive values; a ragged tail is dropped."""
    x = np.asarray(data, dtype=float)
    if m < 1:
        raise ParameterOutOfRange("block length must be ≥ 1")
    usable = (x.size // m) * m
    return x[:usable].reshape(-1, m).mean(axis=1)
