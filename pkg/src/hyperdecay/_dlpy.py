"""Pure-NumPy Durbin–Levinson kernels (fallback for the compiled core).

Each order-k step is vectorized, so the cost is O(n) NumPy calls of O(n) work.
Return conventions match ``hyperdecay._dlcore``: the failing order (or -1) is
returned rather than raised.
"""

import numpy as np


def _steps(gamma, n, margin):
    """Yield ``(t, phi_t, sigma2_t)`` with ``phi_t`` the order-t coefficients."""
    gamma = np.asarray(gamma, dtype=float)
    phi = np.zeros(max(n - 1, 0))
    v = float(gamma[0])
    if not v > 0.0:
        yield 0, None, None
        return
    for t in range(n):
        if t > 0:
            h = t - 1
            kappa = (gamma[t] - phi[:h] @ gamma[t - 1:0:-1]) / v
            if not abs(kappa) < 1.0 - margin:
                yield t, None, None
                return
            if h:
                phi[:h] = phi[:h] - kappa * phi[h - 1::-1]
            phi[h] = kappa
            v *= 1.0 - kappa * kappa
        yield t, phi[:t], v


def levinson(gamma, n, margin):
    pacf = np.zeros(max(n - 1, 0))
    sigma2 = np.zeros(n)
    last = np.zeros(max(n - 1, 0))
    for t, phi, v in _steps(gamma, n, margin):
        if phi is None:
            return pacf, sigma2, last, t
        sigma2[t] = v
        if t > 0:
            pacf[t - 1] = phi[t - 1]
    if n > 1:
        last[:] = phi
    return pacf, sigma2, last, -1


def innovations(gamma, x, margin):
    x = np.asarray(x, dtype=float)
    n = x.size
    e = np.zeros(n)
    sigma2 = np.zeros(n)
    for t, phi, v in _steps(gamma, n, margin):
        if phi is None:
            return e, sigma2, t
        sigma2[t] = v
        e[t] = x[t] - (phi @ x[t - 1::-1] if t else 0.0)
    return e, sigma2, -1


def simulate(gamma, w, margin):
    w = np.asarray(w, dtype=float)
    n = w.size
    z = np.zeros(n)
    for t, phi, v in _steps(gamma, n, margin):
        if phi is None:
            return z, t
        pred = phi @ z[t - 1::-1] if t else 0.0
        z[t] = pred + np.sqrt(v) * w[t]
    return z, -1
