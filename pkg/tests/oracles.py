"""Reference computations kept independent of the package code paths."""

import numpy as np
from scipy.integrate import dblquad, quad
from scipy.special import digamma


def brute_knn_entropy(points, k):
    """k-NN entropy from the full pairwise max-norm distance matrix."""
    p = np.asarray(points, dtype=float)
    if p.ndim == 1:
        p = p[:, None]
    n, d = p.shape
    dist = np.max(np.abs(p[:, None, :] - p[None, :, :]), axis=2)
    np.fill_diagonal(dist, np.inf)
    kth = np.sort(dist, axis=1)[:, k - 1]
    return -digamma(k) + digamma(n) + d * np.mean(np.log(2 * kth))


def brute_ranks(col):
    """rank/N by counting, for tie-free columns."""
    col = np.asarray(col)
    return np.array([(col <= v).sum() for v in col]) / len(col)


def gaussian_copula_entropy_quadrature(rho, lim=9.0):
    """Copula entropy of a bivariate Gaussian by integrating -E[log c]."""
    s = 1 - rho**2

    def phi2(a, b):
        return np.exp(-(a * a - 2 * rho * a * b + b * b) / (2 * s)) / (2 * np.pi * np.sqrt(s))

    def log_c(a, b):
        return -0.5 * np.log(s) - (rho**2 * (a * a + b * b) - 2 * rho * a * b) / (2 * s)

    return -dblquad(lambda a, b: phi2(a, b) * log_c(a, b), -lim, lim, -lim, lim)[0]


def gaussian_cmi(cov):
    """I(x; y | z) for a jointly Gaussian (x, y, z) with covariance ``cov``."""
    prec = np.linalg.inv(np.asarray(cov, dtype=float))
    partial = -prec[0, 1] / np.sqrt(prec[0, 0] * prec[1, 1])
    return -0.5 * np.log(1 - partial**2), partial


def frank_tau(theta):
    """Kendall's tau of the Frank copula via the first Debye function."""
    debye1 = quad(lambda t: t / np.expm1(t), 0, theta)[0] / theta
    return 1 - 4 / theta * (1 - debye1)


def ks_uniform(x):
    x = np.sort(np.asarray(x))
    n = len(x)
    i = np.arange(1, n + 1)
    return max(np.max(i / n - x), np.max(x - (i - 1) / n))
