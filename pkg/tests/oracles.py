"""Exhaustive-enumeration oracles shared by the tests.

Everything here is brute force over all words or all sequence pairs, with no
grouping by GC-count, so it is independent of the library formulas.
"""

import itertools

import numpy as np

from d2k.model import C, G, LetterDistribution

GC_CODES = (C, G)


def all_words(length: int, alphabet=(0, 1, 2, 3)) -> np.ndarray:
    """Every word over ``alphabet`` as rows of codes, in lexicographic order."""
    if length == 0:
        return np.zeros((1, 0), dtype=np.uint8)
    return np.array(list(itertools.product(alphabet, repeat=length)), dtype=np.uint8)


def word_probabilities(dist: LetterDistribution, words: np.ndarray) -> np.ndarray:
    return np.prod(dist.probabilities[words], axis=1)


def hamming_table(words_a: np.ndarray, words_b: np.ndarray) -> np.ndarray:
    """Pairwise Hamming distances, shape (len(words_a), len(words_b))."""
    table = np.zeros((words_a.shape[0], words_b.shape[0]), dtype=np.int16)
    for p in range(words_a.shape[1]):
        table += words_a[:, p, None] != words_b[None, :, p]
    return table


def query_word(m: int, c: int) -> np.ndarray:
    """A representative word with c GC letters: C^c A^(m-c)."""
    return np.array([C] * c + [0] * (m - c), dtype=np.uint8)


def brute_g(k: int, m: int, eta: float, c: int) -> float:
    dist = LetterDistribution.strand_symmetric(eta)
    texts = all_words(m)
    distance = np.count_nonzero(texts != query_word(m, c)[None, :], axis=1)
    return float(np.sum(word_probabilities(dist, texts)[distance == k]))


def brute_ey(dist: LetterDistribution, m: int, k: int) -> float:
    """Pr(two random m-words are within k mismatches), summed over all word pairs."""
    words = all_words(m)
    p = word_probabilities(dist, words)
    within = (hamming_table(words, words) <= k).astype(np.float64)
    return float(p @ within @ p)


def brute_mismatch(dist: LetterDistribution, t: int) -> np.ndarray:
    words = all_words(t)
    p = word_probabilities(dist, words)
    table = hamming_table(words, words)
    weights = np.outer(p, p)
    return np.array([weights[table == l].sum() for l in range(t + 1)])


def window_counts(sequences: np.ndarray, m: int) -> np.ndarray:
    """N[s, w] = number of windows of sequence s spelling word w (base-4 index)."""
    count, n = sequences.shape
    powers = 4 ** np.arange(m - 1, -1, -1)
    counts = np.zeros((count, 4 ** m), dtype=np.float64)
    rows = np.arange(count)
    for i in range(n - m + 1):
        index = sequences[:, i:i + m].astype(np.int64) @ powers
        np.add.at(counts, (rows, index), 1.0)
    return counts


def d2k_table(n: int, m: int, k: int, alphabet=(0, 1, 2, 3)) -> np.ndarray:
    """D2(k) for every ordered pair of length-n sequences over ``alphabet``."""
    sequences = all_words(n, alphabet)
    counts = window_counts(sequences, m)
    words = all_words(m)
    within = (hamming_table(words, words) <= k).astype(np.float64)
    return np.rint(counts @ within @ counts.T).astype(np.int64)


def brute_d2k_moments(dist: LetterDistribution, n: int, m: int, k: int):
    """(E[D2(k)], Var(D2(k))) over all 4^n x 4^n sequence pairs."""
    p = word_probabilities(dist, all_words(n))
    table = d2k_table(n, m, k).astype(np.float64)
    mean = p @ table @ p
    second = p @ (table * table) @ p
    return float(mean), float(second - mean * mean)


def brute_crabgrass_cov(dist: LetterDistribution, m: int, k: int, t: int) -> float:
    """Cov(Y_u, Y_v) where the two words of one sequence start t apart and the
    two words of the other sequence are disjoint."""
    words = all_words(m)
    p = word_probabilities(dist, words)
    within = (hamming_table(words, words) <= k).astype(np.float64)
    # r[w] = Pr(a random word is within k of w)
    r = within @ p
    powers = 4 ** np.arange(m - 1, -1, -1)
    segments = all_words(m + t)
    weights = word_probabilities(dist, segments)
    first = segments[:, :m].astype(np.int64) @ powers
    second = segments[:, t:t + m].astype(np.int64) @ powers
    joint = float(np.sum(weights * r[first] * r[second]))
    single = float(p @ r)
    return joint - single * single
