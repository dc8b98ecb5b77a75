"""Bivariate dependence structures: Gaussian, Clayton and Frank.

Samplers return :class:`~copula_cda.estimator.SampleMatrix` objects with
columns ``x1`` and ``x2``. Clayton and Frank draws use conditional
inversion: ``u1`` is uniform and ``u2`` solves ``dC/du1 (u2 | u1) = w`` for
a second uniform ``w``; both inversions are closed form.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .estimator import SampleMatrix

__all__ = [
    "CopulaSpec",
    "clayton_cdf",
    "frank_cdf",
    "gaussian_pdf2",
    "sample_bivariate_gaussian",
    "sample_clayton",
    "sample_frank",
]

_FRANK_ZERO = 1e-8
_OPEN_LO = np.finfo(np.float64).tiny
_OPEN_HI = 1.0 - np.finfo(np.float64).epsneg


def _open_unit(u):
    return np.clip(u, _OPEN_LO, _OPEN_HI)


def _check_rho(rho):
    if not np.isfinite(rho) or abs(rho) >= 1:
        raise ParameterError(f"correlation must satisfy |rho| < 1, got {rho}")


def sample_bivariate_gaussian(n: int, mean=(0.0, 0.0), rho: float = 0.0, seed=None) -> SampleMatrix:
    """Draw ``n`` points from a unit-variance bivariate normal with correlation ``rho``."""
    _check_rho(rho)
    if n < 1:
        raise ParameterError(f"n must be positive, got {n}")
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((n, 2))
    x1 = z[:, 0]
    x2 = rho * z[:, 0] + np.sqrt(1.0 - rho * rho) * z[:, 1]
    mean = np.asarray(mean, dtype=np.float64)
    return SampleMatrix(np.column_stack([x1, x2]) + mean, ("x1", "x2"))


def gaussian_pdf2(x1, x2, rho: float):
    """Standard bivariate normal density with correlation ``rho``."""
    _check_rho(rho)
    x1 = np.asarray(x1, dtype=np.float64)
    x2 = np.asarray(x2, dtype=np.float64)
    s = 1.0 - rho * rho
    q = ((x1 * x1 + x2 * x2) - 2.0 * rho * (x1 * x2)) / s
    out = np.exp(-0.5 * q) / (2.0 * np.pi * np.sqrt(s))
    return out if out.ndim else float(out)


def _check_unit(u1, u2):
    if np.any((u1 < 0) | (u1 > 1) | (u2 < 0) | (u2 > 1)) or np.any(np.isnan(u1) | np.isnan(u2)):
        raise ParameterError("copula arguments must lie in [0, 1]")


def clayton_cdf(u1, u2, theta: float):
    """Clayton copula ``(u1^-theta + u2^-theta - 1)^(-1/theta)``.

    Powers are taken in log space; zero arguments give the limit value 0.
    """
    if not np.isfinite(theta) or theta <= 0:
        raise ParameterError(f"Clayton theta must be positive, got {theta}")
    u1 = np.asarray(u1, dtype=np.float64)
    u2 = np.asarray(u2, dtype=np.float64)
    _check_unit(u1, u2)
    with np.errstate(divide="ignore", over="ignore"):
        a = np.exp(-theta * np.log(u1))
        b = np.exp(-theta * np.log(u2))
        s = a + b - 1.0
        out = np.exp(-np.log(s) / theta)
    out = np.where((u1 == 0) | (u2 == 0), 0.0, out)
    return out if out.ndim else float(out)


def _frank_cdf_pos(u1, u2, theta):
    # 1 + ab/c rewritten as a sum of non-negative terms over (1 - e^-theta),
    # evaluated in log space to avoid the cancellation at large theta.
    with np.errstate(divide="ignore"):
        t1 = -theta * u1 + np.log(-np.expm1(-theta * (1.0 - u1)))
        t2 = -theta * u2 + np.log(-np.expm1(-theta * u1))
        num = np.logaddexp(t1, t2)
    return -(num - np.log(-np.expm1(-theta))) / theta


def frank_cdf(u1, u2, theta: float):
    """Frank copula ``-1/theta * log(1 + (e^{-theta u1}-1)(e^{-theta u2}-1)/(e^{-theta}-1))``.

    Returns ``u1 * u2`` for ``|theta| < 1e-8``. Negative parameters use
    ``C_theta(u1, u2) = u1 - C_{-theta}(u1, 1 - u2)``.
    """
    if not np.isfinite(theta):
        raise ParameterError(f"Frank theta must be finite, got {theta}")
    u1 = np.asarray(u1, dtype=np.float64)
    u2 = np.asarray(u2, dtype=np.float64)
    _check_unit(u1, u2)
    if abs(theta) < _FRANK_ZERO:
        out = u1 * u2
    elif theta > 0:
        out = _frank_cdf_pos(u1, u2, theta)
    else:
        out = u1 - _frank_cdf_pos(u1, 1.0 - u2, -theta)
    out = np.clip(out, 0.0, np.minimum(u1, u2))
    return out if np.ndim(out) else float(out)


def sample_clayton(n: int, theta: float, seed=None) -> SampleMatrix:
    """Draw ``n`` pairs from the Clayton copula by conditional inversion.

    Parameters
    ----------
    n : int
    theta : float
        Must be positive; sample independent uniforms for ``theta = 0``.
    seed : int or Generator, optional

    Returns
    -------
    SampleMatrix
        Shape (n, 2), entries strictly inside (0, 1).
    """
    if not np.isfinite(theta) or theta <= 0:
        raise ParameterError(f"Clayton theta must be positive, got {theta}")
    if n < 1:
        raise ParameterError(f"n must be positive, got {n}")
    rng = np.random.default_rng(seed)
    u = _open_unit(rng.random(n))
    w = _open_unit(rng.random(n))
    # u2 = (u1^-theta * (w^(-theta/(1+theta)) - 1) + 1)^(-1/theta)
    t = np.expm1(-theta / (1.0 + theta) * np.log(w))
    v = np.exp(-np.log1p(np.exp(-theta * np.log(u)) * t) / theta)
    return SampleMatrix(np.column_stack([u, _open_unit(v)]), ("x1", "x2"))


def sample_frank(n: int, theta: float, seed=None) -> SampleMatrix:
    """Draw ``n`` pairs from the Frank copula by conditional inversion."""
    if not np.isfinite(theta) or theta == 0:
        raise ParameterError(f"Frank theta must be finite and non-zero, got {theta}")
    if n < 1:
        raise ParameterError(f"n must be positive, got {n}")
    rng = np.random.default_rng(seed)
    u = _open_unit(rng.random(n))
    w = _open_unit(rng.random(n))
    v = -np.log1p(w * np.expm1(-theta) / (w + (1.0 - w) * np.exp(-theta * u))) / theta
    return SampleMatrix(np.column_stack([u, _open_unit(v)]), ("x1", "x2"))


@dataclass(frozen=True)
class CopulaSpec:
    family: str
    param: float

    def __post_init__(self):
        if self.family == "gaussian":
            _check_rho(self.param)
        elif self.family == "clayton":
            if not np.isfinite(self.param) or self.param < 0:
                raise ParameterError(f"Clayton theta must be >= 0, got {self.param}")
        elif self.family == "frank":
            if not np.isfinite(self.param):
                raise ParameterError(f"Frank theta must be finite, got {self.param}")
        else:
            raise ParameterError(f"unknown copula family {self.family!r}")

    def sample(self, n: int, seed=None) -> SampleMatrix:
        """Draw ``n`` pairs; zero-parameter Archimedean specs give independent uniforms."""
        if self.family == "gaussian":
            return sample_bivariate_gaussian(n, rho=self.param, seed=seed)
        if self.param == 0:
            rng = np.random.default_rng(seed)
            return SampleMatrix(_open_unit(rng.random((n, 2))), ("x1", "x2"))
        if self.family == "clayton":
            return sample_clayton(n, self.param, seed)
        return sample_frank(n, self.param, seed)

    def cdf(self, u1, u2):
        if self.family == "clayton":
            if self.param == 0:
                return np.asarray(u1) * np.asarray(u2)
            return clayton_cdf(u1, u2, self.param)
        if self.family == "frank":
            return frank_cdf(u1, u2, self.param)
        raise ParameterError("cdf is only provided for the Clayton and Frank families")
