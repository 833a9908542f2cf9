"""One-sample Kolmogorov-Smirnov test against the standard normal law.

The p-value comes from the asymptotic Kolmogorov distribution,
``Q(x) = 2 sum_{j>=1} (-1)^(j-1) exp(-2 j^2 x^2)`` evaluated at
``x = sqrt(N) D``. For small ``x`` that series converges slowly, so there the
equivalent theta-function form is summed instead.
"""

import math
import typing
from collections import namedtuple

import numpy as np
from scipy.special import ndtr

from .exceptions import DomainError

TERM_TOLERANCE = 1e-12
SMALL_ARGUMENT = 1.0
MAX_TERMS = 1000

KsResult = namedtuple('KsResult', ('d_statistic', 'p_value', 'n_samples', 'mean_used', 'sigma_used'))


def standard_normal_cdf(x):
    """Phi(x); accepts scalars and arrays."""
    value = ndtr(x)
    if np.ndim(value) == 0:
        return float(value)
    return value


def ks_statistic(samples: typing.Sequence[float], cdf: typing.Callable = standard_normal_cdf) -> float:
    """sup |F_N(x) - cdf(x)|, taken over both one-sided gaps at every order statistic.

    Ties are allowed: within a run of equal values the upper gap is attained at
    the last copy and the lower gap at the first.
    """
    x = np.sort(np.asarray(samples, dtype=np.float64))
    size = x.size
    if size == 0:
        raise DomainError("KS statistic needs at least one sample")
    values = np.asarray(cdf(x), dtype=np.float64)
    ranks = np.arange(1, size + 1, dtype=np.float64)
    d_plus = np.max(ranks / size - values)
    d_minus = np.max(values - (ranks - 1.0) / size)
    return float(min(max(d_plus, d_minus, 0.0), 1.0))


def _q_alternating(x: float) -> float:
    total = 0.0
    sign = 1.0
    for j in range(1, MAX_TERMS + 1):
        term = math.exp(-2.0 * j * j * x * x)
        total += sign * term
        if term < TERM_TOLERANCE:
            break
        sign = -sign
    return 2.0 * total


def _q_theta(x: float) -> float:
    """1 - sqrt(2 pi)/x sum_{j>=1} exp(-(2j-1)^2 pi^2 / (8 x^2))."""
    total = 0.0
    factor = math.pi * math.pi / (8.0 * x * x)
    for j in range(1, MAX_TERMS + 1):
        term = math.exp(-(2 * j - 1) ** 2 * factor)
        total += term
        if term < TERM_TOLERANCE:
            break
    return 1.0 - math.sqrt(2.0 * math.pi) / x * total


def kolmogorov_survival(x: float) -> float:
    """Q(x) = Pr(K > x) for the Kolmogorov distribution, clamped to [0, 1]."""
    if x <= 0.0:
        return 1.0
    value = _q_theta(x) if x < SMALL_ARGUMENT else _q_alternating(x)
    return min(max(value, 0.0), 1.0)


def kolmogorov_pvalue(d: float, n_samples: int) -> float:
    if not 0.0 <= d <= 1.0:
        raise DomainError("KS statistic must lie in [0, 1], got %r" % d)
    if n_samples < 1:
        raise DomainError("need at least one sample, got %r" % n_samples)
    return kolmogorov_survival(math.sqrt(n_samples) * d)


def ks_test(samples: typing.Sequence[float], mean_used: float = 0.0, sigma_used: float = 1.0) -> KsResult:
    """KS test of already standardized samples against N(0, 1)."""
    d = ks_statistic(samples, standard_normal_cdf)
    size = len(samples)
    return KsResult(d_statistic=d, p_value=kolmogorov_pvalue(d, size), n_samples=size,
                    mean_used=mean_used, sigma_used=sigma_used)
