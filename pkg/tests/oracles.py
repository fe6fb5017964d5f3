"""Independent reference implementations used to check the library.

Nothing here imports the package's numerical code: values come from mpmath at
raised precision or from dense linear algebra.
"""

import math

import mpmath as mp
import numpy as np
from scipy import linalg

mp.mp.dps = 40


def fracnoise_acvf(d, k, sigma2=1.0):
    """γ(k) = σ² Γ(1−2d) Γ(k+d) / {Γ(d) Γ(1−d) Γ(k+1−d)} (d ≠ 0)."""
    d = mp.mpf(d)
    if k == 0:
        return float(sigma2 * mp.gamma(1 - 2 * d) / mp.gamma(1 - d) ** 2)
    val = mp.gamma(1 - 2 * d) * mp.gamma(k + d) / (mp.gamma(d) * mp.gamma(1 - d) * mp.gamma(k + 1 - d))
    return float(sigma2 * val)


def fracnoise_psi(d, ell):
    """ψ_ℓ = Γ(ℓ+d) / {Γ(d) Γ(ℓ+1)} of (1−B)^{−d}."""
    d = mp.mpf(d)
    return float(mp.gamma(ell + d) / (mp.gamma(d) * mp.gamma(ell + 1)))


def fracnoise_log_sigma2(d, k):
    d = mp.mpf(d)
    return mp.loggamma(k + 1) + mp.loggamma(k + 1 - 2 * d) - 2 * mp.loggamma(k + 1 - d)


def fracnoise_log_gvar(d, n):
    """Σ_{k<n} log σ_k², telescoped through the Barnes G-function."""
    d = mp.mpf(d)

    def log_g_sum(a):  # Σ_{k=0}^{n-1} log Γ(k+1+a)
        return mp.log(mp.barnesg(n + 1 + a)) - mp.log(mp.barnesg(1 + a))

    return log_g_sum(0) + log_g_sum(-2 * d) - 2 * log_g_sum(-d)


def fracnoise_gvar(d, n):
    return float(mp.exp(fracnoise_log_gvar(d, n)))


def fgn_acvf(hurst, k, sigma2=1.0):
    h2 = 2 * mp.mpf(hurst)
    k = mp.mpf(k)
    return float(sigma2 * (abs(k + 1) ** h2 - 2 * abs(k) ** h2 + abs(k - 1) ** h2) / 2)


def arma11_acvf(phi, theta, k, sigma2=1.0):
    """ARMA(1,1) with (1−φB)Z = (1−θB)A."""
    g0 = sigma2 * (1 + theta ** 2 - 2 * phi * theta) / (1 - phi ** 2)
    if k == 0:
        return g0
    g1 = sigma2 * (1 - phi * theta) * (phi - theta) / (1 - phi ** 2)
    return g1 * phi ** (k - 1)


def dense_loglik(gamma, x):
    """Gaussian log-likelihood through a dense Cholesky factor of Γ(n)."""
    x = np.asarray(x, dtype=float)
    n = x.size
    c = linalg.cholesky(linalg.toeplitz(np.asarray(gamma[:n], dtype=float)), lower=True)
    z = linalg.solve_triangular(c, x, lower=True)
    logdet = 2.0 * np.sum(np.log(np.diag(c)))
    return -0.5 * (n * math.log(2 * math.pi) + logdet + z @ z)


def dense_log_gvar(gamma, n, sigma_a2=1.0):
    sign, logdet = np.linalg.slogdet(linalg.toeplitz(np.asarray(gamma[:n], dtype=float)))
    assert sign > 0
    return logdet - n * math.log(sigma_a2)


def quad_acvf(sdf, k):
    """γ(k) = 2 ∫_0^π f(λ) cos kλ dλ with mpmath tanh-sinh quadrature."""
    return float(2 * mp.quad(lambda lam: sdf(lam) * mp.cos(k * lam), [0, mp.pi]))
