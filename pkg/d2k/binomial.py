"""Perturbed binomial distribution of the Hamming distance to a fixed query.

For a strand-symmetric Bernoulli text ``T`` of length ``m`` with parameter
``eta`` and a query ``q`` with ``c`` GC letters, ``g(k, m, eta, c)`` is
``Pr(delta(T, q) = k)`` and ``G`` its distribution function.

``g = h * u`` where ``u`` sums over ``i``, the number of GC positions of the
query the text matches. Each summand is evaluated as a product of per-letter
match and mismatch probabilities so that no intermediate ratio overflows.
Up to ``DIRECT_MAX_M`` the terms are added with compensated summation;
above it everything is done in log space.
"""

import functools
import logging
import math
import typing

import numpy as np
from scipy.special import gammaln, logsumexp, xlog1py, xlogy

from .exceptions import DomainError

logger = logging.getLogger('d2k.binomial')

DIRECT_MAX_M = 30
EXACT_COMB_MAX = 60

METHOD_AUTO = 'auto'
METHOD_DIRECT = 'direct'
METHOD_LOG = 'log'


def comb(n: int, a: int) -> float:
    """Binomial coefficient, zero outside 0 <= a <= n."""
    if a < 0 or a > n or n < 0:
        return 0.0
    if n <= EXACT_COMB_MAX:
        return float(math.comb(n, a))
    return math.exp(log_comb(n, a))


def log_comb(n: int, a: int) -> float:
    if a < 0 or a > n or n < 0:
        return -math.inf
    if n <= EXACT_COMB_MAX:
        return math.log(math.comb(n, a))
    return float(gammaln(n + 1) - gammaln(a + 1) - gammaln(n - a + 1))


def _check(m: int, eta: float, c: int, k: typing.Optional[int] = None):
    if m < 0:
        raise DomainError("word length must be nonnegative, got %r" % m)
    if not abs(eta) < 1.0:
        raise DomainError("eta must satisfy |eta| < 1, got %r" % eta)
    if not 0 <= c <= m:
        raise DomainError("GC-count must satisfy 0 <= c <= m, got c=%r, m=%r" % (c, m))
    if k is not None and not 0 <= k <= m:
        raise DomainError("distance must satisfy 0 <= k <= m, got k=%r, m=%r" % (k, m))


def h(m: int, eta: float, c: int) -> float:
    """Probability of one particular m-word with GC-count c."""
    _check(m, eta, c)
    if m > DIRECT_MAX_M:
        return math.exp(log_h(m, eta, c))
    return 0.25 ** m * (1.0 - eta) ** c * (1.0 + eta) ** (m - c)


def log_h(m: int, eta: float, c: int) -> float:
    _check(m, eta, c)
    return -m * math.log(4.0) + c * math.log1p(-eta) + (m - c) * math.log1p(eta)


def _terms(k: int, m: int, eta: float, c: int):
    """Yield (i, gc_mismatches, at_matches, at_mismatches) for the nonzero u_k terms."""
    for i in range(0, m - k + 1):
        gc_mismatches = c - i
        at_matches = m - k - i
        at_mismatches = k - c + i
        if gc_mismatches < 0 or at_mismatches < 0 or at_matches < 0:
            continue
        yield i, gc_mismatches, at_matches, at_mismatches


def _g_direct(k: int, m: int, eta: float, c: int) -> float:
    gc_match = (1.0 - eta) / 4.0
    gc_miss = (3.0 + eta) / 4.0
    at_match = (1.0 + eta) / 4.0
    at_miss = (3.0 - eta) / 4.0
    return math.fsum(
        comb(c, i) * comb(m - c, at_matches)
        * gc_match ** i * gc_miss ** gc_mismatches
        * at_match ** at_matches * at_miss ** at_mismatches
        for i, gc_mismatches, at_matches, at_mismatches in _terms(k, m, eta, c)
    )


def log_g(k: int, m: int, eta: float, c: int) -> float:
    """Natural logarithm of g; -inf where g vanishes."""
    _check(m, eta, c, k)
    log_gc_match = math.log1p(-eta) - math.log(4.0)
    log_gc_miss = math.log(3.0 + eta) - math.log(4.0)
    log_at_match = math.log1p(eta) - math.log(4.0)
    log_at_miss = math.log(3.0 - eta) - math.log(4.0)
    logs = [
        log_comb(c, i) + log_comb(m - c, at_matches)
        + i * log_gc_match + gc_mismatches * log_gc_miss
        + at_matches * log_at_match + at_mismatches * log_at_miss
        for i, gc_mismatches, at_matches, at_mismatches in _terms(k, m, eta, c)
    ]
    if not logs:
        return -math.inf
    return float(logsumexp(logs))


def g(k: int, m: int, eta: float, c: int, method: str = METHOD_AUTO) -> float:
    """Probability that a random m-text lies at distance exactly k from a query with GC-count c."""
    _check(m, eta, c, k)
    if method == METHOD_AUTO:
        method = METHOD_DIRECT if m <= DIRECT_MAX_M else METHOD_LOG
    if method == METHOD_DIRECT:
        value = _g_direct(k, m, eta, c)
    elif method == METHOD_LOG:
        value = math.exp(log_g(k, m, eta, c))
    else:
        raise DomainError("unknown evaluation method %r" % method)
    return min(max(value, 0.0), 1.0)


def G(k: int, m: int, eta: float, c: int) -> float:
    """Probability that a random m-text lies within distance k of a query with GC-count c."""
    _check(m, eta, c, k)
    if k == m:
        return 1.0
    return min(math.fsum(g(j, m, eta, c) for j in range(k + 1)), 1.0)


def binomial_pmf(k: int, m: int, rho: float) -> float:
    """Binomial probability of k mismatches in m letters with per-letter match probability rho."""
    if not 0 <= k <= m:
        raise DomainError("binomial_pmf needs 0 <= k <= m, got k=%r, m=%r" % (k, m))
    if not 0.0 <= rho <= 1.0:
        raise DomainError("match probability must lie in [0, 1], got %r" % rho)
    if m <= EXACT_COMB_MAX:
        return comb(m, k) * rho ** (m - k) * (1.0 - rho) ** k
    return math.exp(log_comb(m, k) + xlogy(m - k, rho) + xlog1py(k, -rho))


class DistanceDistribution:
    """Materialized pmf and cdf of the perturbed binomial distribution for (m, eta, c)."""

    def __init__(self, m: int, eta: float, c: int):
        _check(m, eta, c)
        pmf = np.array([g(k, m, eta, c) for k in range(m + 1)], dtype=np.float64)
        cdf = np.array([math.fsum(pmf[:k + 1]) for k in range(m + 1)], dtype=np.float64)
        # total probability
        cdf[-1] = 1.0
        np.clip(cdf, 0.0, 1.0, out=cdf)
        np.maximum.accumulate(cdf, out=cdf)
        pmf.flags.writeable = False
        cdf.flags.writeable = False
        self.__m = m
        self.__eta = eta
        self.__c = c
        self.__pmf = pmf
        self.__cdf = cdf

    @property
    def m(self):
        return self.__m

    @property
    def eta(self):
        return self.__eta

    @property
    def c(self):
        return self.__c

    @property
    def pmf(self) -> np.ndarray:
        return self.__pmf

    @property
    def cdf(self) -> np.ndarray:
        return self.__cdf

    def rows(self):
        """(k, g_k, G_k) triples."""
        return [(k, float(self.__pmf[k]), float(self.__cdf[k])) for k in range(self.__m + 1)]

    def __repr__(self):
        return "DistanceDistribution(m=%d, eta=%r, c=%d)" % (self.m, self.eta, self.c)


@functools.lru_cache(maxsize=4096)
def distance_distribution(m: int, eta: float, c: int) -> DistanceDistribution:
    return DistanceDistribution(int(m), float(eta), int(c))
