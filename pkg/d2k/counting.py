"""Match indicators and the D2(k) statistic.

Positions are 1-based in the public API, as in the index set
``I = {(i, j): 1 <= i, j <= n - m + 1}``; arrays are 0-based internally.

Two counters are provided. ``d2k_naive`` compares every pair of windows.
``d2k_fast`` walks each diagonal ``j - i = d`` once and keeps a running
mismatch count: moving one step drops the mismatch of the position that
leaves the window and adds the one that enters it.
"""

import concurrent.futures
import logging
import os
import time
import typing
from collections import namedtuple

import numba
import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .exceptions import DomainError, LengthMismatchError
from .model import MatchParams, Sequence

logger = logging.getLogger('d2k.counting')

ALGO_NAIVE = 'naive'
ALGO_FAST = 'fast'
ALGORITHMS = (ALGO_NAIVE, ALGO_FAST)

INDEPENDENT = 'independent'
CRABGRASS = 'crabgrass'
ACCORDION = 'accordion'

PairClass = namedtuple('PairClass', ('tag', 'overlap_t'))


@numba.njit(nogil=True)
def _count_diagonals(a, b, m, k, d_lo, d_hi):
    nbar = a.shape[0] - m + 1
    total = 0
    for d in range(d_lo, d_hi):
        if d >= 0:
            i0 = 0
            j0 = d
        else:
            i0 = -d
            j0 = 0
        length = nbar - max(i0, j0)
        if length <= 0:
            continue
        mismatches = 0
        for p in range(m):
            if a[i0 + p] != b[j0 + p]:
                mismatches += 1
        if mismatches <= k:
            total += 1
        for s in range(1, length):
            if a[i0 + s - 1] != b[j0 + s - 1]:
                mismatches -= 1
            if a[i0 + s + m - 1] != b[j0 + s + m - 1]:
                mismatches += 1
            if mismatches <= k:
                total += 1
    return total


def _check_pair(a: Sequence, b: Sequence, params: MatchParams):
    if len(a) != len(b):
        raise LengthMismatchError("sequences differ in length: %d != %d" % (len(a), len(b)))
    if len(a) != params.n:
        raise LengthMismatchError("sequences have length %d but n=%d" % (len(a), params.n))


def y_indicator(a: Sequence, b: Sequence, i: int, j: int, params: MatchParams) -> int:
    """1 if the m-words starting at 1-based positions i in a and j in b are within k mismatches."""
    _check_pair(a, b, params)
    if not (1 <= i <= params.nbar and 1 <= j <= params.nbar):
        raise DomainError("positions must lie in 1..%d, got (%d, %d)" % (params.nbar, i, j))
    m = params.m
    mismatches = np.count_nonzero(a.codes[i - 1:i - 1 + m] != b.codes[j - 1:j - 1 + m])
    return int(mismatches <= params.k)


def d2k_naive(a: Sequence, b: Sequence, params: MatchParams) -> int:
    """Reference counter comparing every pair of windows."""
    _check_pair(a, b, params)
    windows_a = sliding_window_view(a.codes, params.m)
    windows_b = sliding_window_view(b.codes, params.m)
    total = 0
    for word in windows_a:
        mismatches = np.count_nonzero(windows_b != word, axis=1)
        total += int(np.count_nonzero(mismatches <= params.k))
    return total


def _chunks(lo: int, hi: int, parts: int):
    step = -(-(hi - lo) // parts)
    return [(start, min(start + step, hi)) for start in range(lo, hi, step)]


def count_codes(a_codes: np.ndarray, b_codes: np.ndarray, m: int, k: int,
                threads: typing.Optional[int] = 1) -> int:
    """D2(k) of two equal-length code arrays, without input validation."""
    nbar = a_codes.shape[0] - m + 1
    if k >= m:
        return nbar * nbar
    threads = threads or os.cpu_count() or 1
    lo, hi = -(nbar - 1), nbar
    if threads == 1 or nbar < 2 * threads:
        return int(_count_diagonals(a_codes, b_codes, m, k, lo, hi))

    with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as executor:
        futures = [executor.submit(_count_diagonals, a_codes, b_codes, m, k, start, stop)
                   for start, stop in _chunks(lo, hi, threads)]
        return sum(int(f.result()) for f in futures)


def d2k_fast(a: Sequence, b: Sequence, params: MatchParams,
             threads: typing.Optional[int] = 1) -> int:
    """Incremental-diagonal counter; identical results to :py:func:`d2k_naive`.

    :param threads: number of worker threads the diagonals are split across.
                    ``None`` uses every available CPU.
    """
    _check_pair(a, b, params)
    return count_codes(a.codes, b.codes, params.m, params.k, threads)


def d2k(a: Sequence, b: Sequence, params: MatchParams, algo: str = ALGO_FAST,
        threads: typing.Optional[int] = 1) -> int:
    if algo not in ALGORITHMS:
        raise DomainError("unknown counting algorithm %r, expected one of %s" % (algo, ', '.join(ALGORITHMS)))
    started = time.perf_counter()
    if algo == ALGO_NAIVE:
        result = d2k_naive(a, b, params)
    else:
        result = d2k_fast(a, b, params, threads=threads)
    logger.debug("%s counter: D2(k)=%d for %r in %.3f s", algo, result, params, time.perf_counter() - started)
    return result


def classify_pair(u: typing.Tuple[int, int], v: typing.Tuple[int, int], m: int) -> PairClass:
    """Place v relative to the dependency neighborhood of u."""
    di = abs(v[0] - u[0])
    dj = abs(v[1] - u[1])
    if di < m and dj < m:
        return PairClass(ACCORDION, min(di, dj))
    if di < m:
        return PairClass(CRABGRASS, di)
    if dj < m:
        return PairClass(CRABGRASS, dj)
    return PairClass(INDEPENDENT, None)


def count_pair_distance(n: int, m: int, s: int) -> int:
    """Number of ordered position pairs (i, i') in 1..n-m+1 with |i' - i| = s."""
    nbar = n - m + 1
    if s < 0 or s >= nbar:
        return 0
    if s == 0:
        return nbar
    return 2 * (nbar - s)


def _count_far(n: int, m: int) -> int:
    """Ordered position pairs at offset >= m."""
    gap = n - 2 * m + 1
    return gap * (gap + 1) if gap > 0 else 0


def count_crabgrass_pairs(n: int, m: int, t: int) -> int:
    """Ordered pairs (u, v), v in the crabgrass of u, whose overlapping coordinate is offset by t."""
    if not 0 <= t <= m - 1:
        raise DomainError("crabgrass overlap must satisfy 0 <= t <= m-1, got t=%d, m=%d" % (t, m))
    if n <= m:
        raise DomainError("need n > m, got n=%d, m=%d" % (n, m))
    # either coordinate may be the overlapping one
    return 2 * count_pair_distance(n, m, t) * _count_far(n, m)


def dependency_degree(n: int, m: int) -> int:
    """Size of a dependency neighborhood away from the sequence ends, (2m-1)(2n'-2m+1)."""
    nbar = n - m + 1
    return (2 * m - 1) * (2 * nbar - 2 * m + 1)


def crabgrass_weight_sum(n: int, m: int, q: float) -> float:
    """Exact sum of q^(m-t) over all ordered crabgrass pairs."""
    return float(sum(count_crabgrass_pairs(n, m, t) * q ** (m - t) for t in range(m)))


def crabgrass_weight_closed_form(n: int, m: int, q: float) -> float:
    """The closed form n'^2 (2n' - 4m + 2)[2q(1-q^m)/(1-q) - q^m], which ignores the sequence ends."""
    nbar = n - m + 1
    return nbar * nbar * (2 * nbar - 4 * m + 2) * (2 * q * (1 - q ** m) / (1 - q) - q ** m)
