"""Mean, covariances, variance bounds and regime diagnostics for D2(k).

Every word sum runs over GC-counts instead of all 4^m words: under strand
symmetry a word enters only through its GC-count, and there are
C(m, c) * 2^m words with GC-count c.

The bounds use |eta|; they are derived for eta > 0 and carry over through
the AT/GC relabeling symmetry. Exact quantities use the signed eta.
"""

import logging
import math
import typing
from collections import namedtuple

from . import binomial
from .counting import count_crabgrass_pairs, dependency_degree
from .exceptions import DomainError, ModelError
from .model import LetterDistribution, MatchParams, p_moment

logger = logging.getLogger('d2k.moments')

ALPHA_THEOREM = 0.5
ALPHA_EMPIRICAL = 2.0

RegimeVerdict = namedtuple('RegimeVerdict', (
    'alpha', 'theorem_normal', 'empirically_normal', 'poisson_regime_k0', 'log_base',
    'm_alpha_half', 'm_alpha_two',
))


def _require_eta(dist: LetterDistribution, what: str) -> float:
    if dist.eta is None:
        raise ModelError("%s needs a strand-symmetric distribution (eta); for a general "
                         "distribution only the k=0 path (p2^m) is available" % what)
    return dist.eta


def _check_mk(m: int, k: int):
    if m < 1 or not 0 <= k <= m:
        raise DomainError("need m >= 1 and 0 <= k <= m, got m=%r, k=%r" % (m, k))


def _ratios(dist: LetterDistribution, k: int) -> typing.Tuple[float, float]:
    """(rho_minus, rho_plus) = ((3-|eta|)/(1+|eta|), (3+|eta|)/(1-|eta|))."""
    if dist.eta is None:
        if k > 0:
            raise ModelError("k > 0 needs a strand-symmetric distribution (eta)")
        return 1.0, 1.0
    eta = abs(dist.eta)
    return (3.0 - eta) / (1.0 + eta), (3.0 + eta) / (1.0 - eta)


def _neighbourhood_sum(m: int, k: int, rho: float) -> float:
    return math.fsum(binomial.comb(m, r) * rho ** r for r in range(k + 1))


def _gc_weights(length: int, eta: float):
    """Probability that a random word of the given length has GC-count c, for c = 0..length.

    Each letter is G or C with probability (1-eta)/2, so the GC-count is binomial.
    """
    gc = (1.0 - eta) / 2.0
    return [binomial.binomial_pmf(length - c, length, gc) for c in range(length + 1)]


def ey_exact(dist: LetterDistribution, m: int, k: int) -> float:
    """E[Y_ij], the probability that two random m-words are within k mismatches."""
    _check_mk(m, k)
    eta = _require_eta(dist, "ey_exact")
    weights = _gc_weights(m, eta)
    return math.fsum(w * binomial.G(k, m, eta, c) for c, w in enumerate(weights))


def ey_k0_general(dist: LetterDistribution, m: int) -> float:
    """E[Y_ij] for exact matches under any letter distribution."""
    return p_moment(dist, 2) ** m


def mean_exact(dist: LetterDistribution, params: MatchParams) -> float:
    return params.nbar ** 2 * ey_exact(dist, params.m, params.k)


def mean_k0_general(dist: LetterDistribution, params: MatchParams) -> float:
    if params.k != 0:
        raise ModelError("the general-alphabet mean is only available for k=0")
    return params.nbar ** 2 * ey_k0_general(dist, params.m)


def ey_bounds(dist: LetterDistribution, m: int, k: int) -> typing.Tuple[float, float]:
    _check_mk(m, k)
    rho_minus, rho_plus = _ratios(dist, k)
    base = p_moment(dist, 2) ** m
    return base * _neighbourhood_sum(m, k, rho_minus), base * _neighbourhood_sum(m, k, rho_plus)


def mean_bounds(dist: LetterDistribution, params: MatchParams) -> typing.Tuple[float, float]:
    lower, upper = ey_bounds(dist, params.m, params.k)
    scale = params.nbar ** 2
    return scale * lower, scale * upper


def mismatch_distribution(dist: LetterDistribution, t: int) -> typing.List[float]:
    """Distribution of the distance between two independent random t-words, l = 0..t."""
    if t < 0:
        raise DomainError("word length must be nonnegative, got %r" % t)
    if t == 0:
        return [1.0]
    if dist.eta is None:
        p2 = p_moment(dist, 2)
        return [binomial.binomial_pmf(l, t, p2) for l in range(t + 1)]
    eta = dist.eta
    weights = _gc_weights(t, eta)
    return [math.fsum(w * binomial.g(l, t, eta, c) for c, w in enumerate(weights))
            for l in range(t + 1)]


def _clamped_cdf(j: int, length: int, eta: float, c: int) -> float:
    if j < 0:
        return 0.0
    if j >= length:
        return 1.0
    return binomial.G(j, length, eta, c)


def _check_overlap(m: int, k: int, t: int):
    _check_mk(m, k)
    if not 0 <= t <= m - 1:
        raise DomainError("overlap must satisfy 0 <= t <= m-1, got t=%r, m=%r" % (t, m))


def f_t_value(dist: LetterDistribution, m: int, k: int, t: int, c: int) -> float:
    """Conditional match probability shared by two crabgrass indicators, at a shared word of GC-count c."""
    _check_overlap(m, k, t)
    if not 0 <= c <= m - t:
        raise DomainError("GC-count must satisfy 0 <= c <= m-t, got c=%r" % c)
    eta = _require_eta(dist, "f_t_value")
    delta = mismatch_distribution(dist, t)
    return math.fsum(p * _clamped_cdf(k - l, m - t, eta, c) for l, p in enumerate(delta))


def crabgrass_cov(dist: LetterDistribution, m: int, k: int, t: int) -> float:
    """Cov(Y_u, Y_v) for a crabgrass pair with overlap t, i.e. Var(f_t(W))."""
    _check_overlap(m, k, t)
    eta = _require_eta(dist, "crabgrass_cov")
    length = m - t
    weights = _gc_weights(length, eta)
    values = [f_t_value(dist, m, k, t, c) for c in range(length + 1)]
    mean = math.fsum(w * f for w, f in zip(weights, values))
    # two-pass form keeps the result nonnegative
    return math.fsum(w * (f - mean) ** 2 for w, f in zip(weights, values))


def crabgrass_variance(dist: LetterDistribution, params: MatchParams) -> float:
    """Exact crabgrass contribution to Var(D2(k))."""
    n, m, k = params.n, params.m, params.k
    return math.fsum(count_crabgrass_pairs(n, m, t) * crabgrass_cov(dist, m, k, t) for t in range(m))


def crabgrass_edge_sum(dist: LetterDistribution, params: MatchParams) -> float:
    """Crabgrass contribution of the pairs overlapping in a single letter (t = m-1)."""
    n, m, k = params.n, params.m, params.k
    return count_crabgrass_pairs(n, m, m - 1) * crabgrass_cov(dist, m, k, m - 1)


def accordion_cov_bound(dist: LetterDistribution, m: int, k: int) -> float:
    """Uniform bound on |Cov(Y_u, Y_v)|, the upper estimate of E[Y]."""
    return ey_bounds(dist, m, k)[1]


def var_lower_valid(params: MatchParams) -> bool:
    """True where crabgrass terms dominate the lower bound, n' >= 2(2m-1)."""
    return params.nbar >= 2 * (2 * params.m - 1)


def var_upper_valid(params: MatchParams) -> bool:
    """True where the crabgrass count factor 2n' - 4m + 2 is nonnegative."""
    return 2 * params.nbar - 4 * params.m + 2 >= 0


def var_lower_dominant(dist: LetterDistribution, params: MatchParams) -> float:
    """Leading crabgrass term of the variance lower bound.

    2 n'^2 (2n' - 4m + 2) [C(m-1, k) rho_minus^k]^2 p2^(2m) (p3/p2^2 - 1); the
    remainder of order n^2 m^(k+2) p2^m is dropped. Reported as 0 where the
    count factor is not positive.
    """
    nbar, m, k = params.nbar, params.m, params.k
    factor = 2 * nbar - 4 * m + 2
    if factor <= 0:
        logger.info("variance lower bound vacuous for %r", params)
        return 0.0
    rho_minus, _ = _ratios(dist, k)
    p2 = p_moment(dist, 2)
    p3 = p_moment(dist, 3)
    excess = max(p3 / (p2 * p2) - 1.0, 0.0)
    edge = (binomial.comb(m - 1, k) * rho_minus ** k) ** 2
    return 2.0 * nbar * nbar * factor * edge * p2 ** (2 * m) * excess


def _geometric_bracket(q: float, m: int) -> float:
    """2q(1 - q^m)/(1 - q) - q^m."""
    return 2.0 * math.fsum(q ** s for s in range(1, m + 1)) - q ** m


def var_upper(dist: LetterDistribution, params: MatchParams) -> float:
    """Three-term variance upper bound: crabgrass upper, minus crabgrass lower, plus accordions.

    The crabgrass count factor is floored at 0 for short sequences; see
    :py:func:`var_upper_valid`.
    """
    nbar, m, k = params.nbar, params.m, params.k
    _, rho_plus = _ratios(dist, k)
    p2 = p_moment(dist, 2)
    p3 = p_moment(dist, 3)
    factor = max(2 * nbar - 4 * m + 2, 0)
    crabgrass_upper = nbar * nbar * factor * float(m) ** (2 * k) * rho_plus ** (2 * k) \
        * _geometric_bracket(p3, m)
    crabgrass_lower = nbar * nbar * factor * _geometric_bracket(p2 * p2, m)
    accordion = nbar * nbar * (2 * m - 1) ** 2 * accordion_cov_bound(dist, m, k)
    return crabgrass_upper - crabgrass_lower + accordion


def var_lower_k0_general(dist: LetterDistribution, params: MatchParams) -> float:
    """Exact-match variance lower bound valid for any letter distribution."""
    if params.k != 0:
        raise DomainError("the general-alphabet variance bound needs k=0, got k=%d" % params.k)
    nbar, m = params.nbar, params.m
    p2 = p_moment(dist, 2)
    p3 = p_moment(dist, 3)
    if p2 >= 1.0:
        raise DomainError("distribution is degenerate (p2 = 1)")
    crabgrass = (2 * m - 1) * (2 * nbar - 4 * m + 2) * p2 ** (2 * m) * max(p3 / (p2 * p2) - 1.0, 0.0)
    # shifted self-overlaps on the diagonal; a single letter has none
    diagonal = p2 ** m * ((1.0 + p2 - 2.0 * p2 ** min(m, 2)) / (1.0 - p2) - (2 * m - 1) * p2 ** m)
    return nbar * nbar * (crabgrass + diagonal)


def regime_classify(dist: LetterDistribution, n: int, m: int) -> RegimeVerdict:
    """Locate (n, m) relative to the normal and compound-Poisson regimes, m = alpha log_{1/p2}(n)."""
    if not n > m >= 1:
        raise DomainError("need n > m >= 1, got n=%r, m=%r" % (n, m))
    p2 = p_moment(dist, 2)
    if p2 >= 1.0:
        raise DomainError("distribution is degenerate (p2 = 1)")
    log_base = 1.0 / p2
    levels = math.log(n) / math.log(log_base)
    alpha = m / levels
    return RegimeVerdict(
        alpha=alpha,
        theorem_normal=alpha < ALPHA_THEOREM and not dist.is_uniform,
        empirically_normal=alpha < ALPHA_EMPIRICAL,
        poisson_regime_k0=alpha >= ALPHA_EMPIRICAL,
        log_base=log_base,
        m_alpha_half=ALPHA_THEOREM * levels,
        m_alpha_two=ALPHA_EMPIRICAL * levels,
    )


def janson_diagnostic(dist: LetterDistribution, params: MatchParams, sigma: float, t: int) -> float:
    """(N/M)^(1/t) M / sigma with N = n'^2 indicators and maximal dependency degree M."""
    if not sigma > 0:
        raise DomainError("sigma must be positive, got %r" % sigma)
    if t < 1:
        raise DomainError("t must be a positive integer, got %r" % t)
    big_n = float(params.nbar) ** 2
    big_m = float(dependency_degree(params.n, params.m))
    return (big_n / big_m) ** (1.0 / t) * big_m / sigma


class MomentReport:
    """Mean and variance bounds of D2(k) for one (distribution, params) pair."""

    def __init__(self, dist: LetterDistribution, params: MatchParams):
        self.__dist = dist
        self.__params = params
        m, k = params.m, params.k
        scale = params.nbar ** 2

        if dist.is_strand_symmetric:
            self.ey_exact = ey_exact(dist, m, k)
            self.var_crabgrass = crabgrass_variance(dist, params)
        elif k == 0:
            self.ey_exact = ey_k0_general(dist, m)
            self.var_crabgrass = None
        else:
            raise ModelError("k > 0 needs a strand-symmetric distribution (eta)")
        self.mean_exact = scale * self.ey_exact
        self.ey_lower, self.ey_upper = ey_bounds(dist, m, k)
        self.mean_lower, self.mean_upper = scale * self.ey_lower, scale * self.ey_upper
        self.var_lower_dominant = var_lower_dominant(dist, params)
        self.var_lower_valid = var_lower_valid(params)
        self.var_upper = var_upper(dist, params)
        self.var_upper_valid = var_upper_valid(params)
        self.var_lower_k0 = var_lower_k0_general(dist, params) if k == 0 else None

    @property
    def dist(self):
        return self.__dist

    @property
    def params(self):
        return self.__params

    def to_data(self) -> dict:
        return {
            'params': self.params.to_data(),
            'eta': self.dist.eta,
            'p2': p_moment(self.dist, 2),
            'p3': p_moment(self.dist, 3),
            'ey_exact': self.ey_exact,
            'ey_lower': self.ey_lower,
            'ey_upper': self.ey_upper,
            'mean_exact': self.mean_exact,
            'mean_lower': self.mean_lower,
            'mean_upper': self.mean_upper,
            'var_lower_dominant': self.var_lower_dominant,
            'var_lower_valid': self.var_lower_valid,
            'var_lower_k0': self.var_lower_k0,
            'var_crabgrass': self.var_crabgrass,
            'var_upper': self.var_upper,
            'var_upper_valid': self.var_upper_valid,
        }
