"""Alphabet, letter distributions, sequences and word utilities.

Letters are stored as 2-bit codes A=0, C=1, G=2, T=3 in read-only numpy
``uint8`` arrays. All external input and output is ASCII ``ACGT``.
"""

import logging
import math
import typing

import numpy as np

from .exceptions import DomainError, LengthMismatchError, SequenceParseError

logger = logging.getLogger('d2k.model')

ALPHABET = 'ACGT'
A, C, G, T = range(4)

SUM_TOLERANCE = 1e-12
MAX_SEQUENCE_LENGTH = 2 ** 31 - 1

_INVALID = 255
_ENCODE = np.full(256, _INVALID, dtype=np.uint8)
for _code, _letter in enumerate(ALPHABET):
    _ENCODE[ord(_letter)] = _code
    _ENCODE[ord(_letter.lower())] = _code
_DECODE = np.frombuffer(ALPHABET.encode('ascii'), dtype=np.uint8)
_IS_GC = np.array([False, True, True, False])


def _frozen(array: np.ndarray) -> np.ndarray:
    array.flags.writeable = False
    return array


class LetterDistribution:
    """Probabilities of the four letters.

    A strand-symmetric distribution also carries its perturbation parameter
    ``eta``; a general distribution has ``eta is None`` and may put zero mass
    on some letters, which models a smaller alphabet for the k = 0 path.
    """

    def __init__(self, xi_a: float, xi_c: float, xi_g: float, xi_t: float,
                 eta: typing.Optional[float] = None):
        probabilities = (float(xi_a), float(xi_c), float(xi_g), float(xi_t))
        for letter, xi in zip(ALPHABET, probabilities):
            if not 0.0 <= xi <= 1.0 or math.isnan(xi):
                raise DomainError("xi_%s=%r is not a probability" % (letter, xi))
        total = math.fsum(probabilities)
        if abs(total - 1.0) > SUM_TOLERANCE:
            raise DomainError("letter probabilities sum to %r, not 1" % total)

        if eta is not None:
            eta = float(eta)
            if not abs(eta) < 1.0:
                raise DomainError("eta must satisfy |eta| < 1, got %r" % eta)
            at, gc = (1.0 + eta) / 4.0, (1.0 - eta) / 4.0
            expected = (at, gc, gc, at)
            if any(abs(x - y) > SUM_TOLERANCE for x, y in zip(probabilities, expected)):
                raise DomainError("probabilities %r are not strand symmetric with eta=%r"
                                  % (probabilities, eta))

        self.__probabilities = _frozen(np.array(probabilities, dtype=np.float64))
        self.__eta = eta

    @classmethod
    def strand_symmetric(cls, eta: float) -> 'LetterDistribution':
        eta = float(eta)
        if not abs(eta) < 1.0:
            raise DomainError("eta must satisfy |eta| < 1, got %r "
                              "(eta = +-1 leaves a two-letter alphabet)" % eta)
        at, gc = (1.0 + eta) / 4.0, (1.0 - eta) / 4.0
        return cls(at, gc, gc, at, eta=eta)

    @classmethod
    def uniform(cls) -> 'LetterDistribution':
        return cls.strand_symmetric(0.0)

    @classmethod
    def from_frequencies(cls, frequencies: typing.Sequence[float]) -> 'LetterDistribution':
        """General distribution from four probabilities in A, C, G, T order."""
        if len(frequencies) != 4:
            raise DomainError("expected 4 letter frequencies, got %d" % len(frequencies))
        return cls(*frequencies)

    @property
    def xi_a(self):
        return float(self.__probabilities[A])

    @property
    def xi_c(self):
        return float(self.__probabilities[C])

    @property
    def xi_g(self):
        return float(self.__probabilities[G])

    @property
    def xi_t(self):
        return float(self.__probabilities[T])

    @property
    def eta(self):
        return self.__eta

    @property
    def probabilities(self) -> np.ndarray:
        """Letter probabilities in code order A, C, G, T."""
        return self.__probabilities

    @property
    def is_strand_symmetric(self):
        return self.__eta is not None

    @property
    def is_uniform(self):
        return bool(np.all(np.abs(self.__probabilities - 0.25) <= SUM_TOLERANCE))

    def p_moment(self, t: int) -> float:
        return p_moment(self, t)

    def to_data(self) -> dict:
        return {
            'eta': self.eta,
            'freqs': [float(x) for x in self.__probabilities],
        }

    def __eq__(self, other):
        if not isinstance(other, LetterDistribution):
            return NotImplemented
        return self.eta == other.eta and bool(np.all(self.probabilities == other.probabilities))

    def __hash__(self):
        return hash((self.eta, tuple(self.__probabilities)))

    def __repr__(self):
        if self.eta is not None:
            return "LetterDistribution.strand_symmetric(%r)" % self.eta
        return "LetterDistribution(%r, %r, %r, %r)" % tuple(self.__probabilities)


class Sequence:
    """A finite word over A, C, G, T.

    Lowercase letters are upcased on input; anything else is rejected.
    """

    def __init__(self, letters: typing.Union[str, bytes]):
        if isinstance(letters, str):
            try:
                letters = letters.encode('ascii')
            except UnicodeEncodeError as e:
                raise SequenceParseError("non-ASCII character at position %d" % (e.start + 1))
        raw = np.frombuffer(bytes(letters), dtype=np.uint8)
        codes = _ENCODE[raw]
        bad = np.flatnonzero(codes == _INVALID)
        if bad.size:
            position = int(bad[0])
            raise SequenceParseError("invalid letter %r at position %d; only A, C, G, T are allowed"
                                     % (chr(raw[position]), position + 1))
        self.__codes = _frozen(codes)
        self.__check_length()

    @classmethod
    def from_codes(cls, codes: typing.Iterable[int]) -> 'Sequence':
        codes = np.array(codes, dtype=np.uint8)
        if codes.ndim != 1 or np.any(codes > T):
            raise SequenceParseError("letter codes must be a flat array of values in 0..3")
        seq = cls.__new__(cls)
        seq.__codes = _frozen(codes)
        seq.__check_length()
        return seq

    @classmethod
    def parse(cls, text: str) -> 'Sequence':
        """Parse sequence file contents: whitespace is ignored, FASTA headers are not allowed."""
        for line in text.splitlines():
            if line.lstrip().startswith('>'):
                raise SequenceParseError("FASTA header found (%r); remove the header line, "
                                         "sequence files hold bare ACGT text" % line.strip()[:40])
        return cls(''.join(text.split()))

    @classmethod
    def read(cls, path: str) -> 'Sequence':
        try:
            with open(path, 'r', encoding='ascii') as f:
                text = f.read()
        except (OSError, UnicodeDecodeError) as e:
            raise SequenceParseError("cannot read sequence file %s: %s" % (path, e))
        try:
            return cls.parse(text)
        except SequenceParseError as e:
            raise SequenceParseError("%s: %s" % (path, e.message))

    def __check_length(self):
        if not 1 <= self.__codes.size <= MAX_SEQUENCE_LENGTH:
            raise SequenceParseError("sequence length must be between 1 and %d, got %d"
                                     % (MAX_SEQUENCE_LENGTH, self.__codes.size))

    @property
    def codes(self) -> np.ndarray:
        return self.__codes

    def gc_count(self) -> int:
        return gc_count(self)

    def __len__(self):
        return int(self.__codes.size)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Sequence.from_codes(self.__codes[item])
        return ALPHABET[self.__codes[item]]

    def __str__(self):
        return _DECODE[self.__codes].tobytes().decode('ascii')

    def __repr__(self):
        text = str(self)
        if len(text) > 40:
            text = text[:37] + '...'
        return "Sequence(%r)" % text

    def __eq__(self, other):
        if not isinstance(other, Sequence):
            return NotImplemented
        return np.array_equal(self.__codes, other.codes)

    def __hash__(self):
        return hash(self.__codes.tobytes())


class MatchParams:
    """Word-match problem (n, m, k): sequence length, word length, mismatch budget."""

    def __init__(self, n: int, m: int, k: int):
        n, m, k = int(n), int(m), int(k)
        if m < 1:
            raise DomainError("word length m must be at least 1, got %d" % m)
        if not 0 <= k <= m:
            raise DomainError("mismatch budget must satisfy 0 <= k <= m, got k=%d, m=%d" % (k, m))
        if not m < n:
            raise DomainError("word length must be shorter than the sequences, got m=%d, n=%d" % (m, n))
        if n > MAX_SEQUENCE_LENGTH:
            raise DomainError("sequence length %d exceeds %d" % (n, MAX_SEQUENCE_LENGTH))
        self.__n = n
        self.__m = m
        self.__k = k

    @property
    def n(self):
        return self.__n

    @property
    def m(self):
        return self.__m

    @property
    def k(self):
        return self.__k

    @property
    def nbar(self):
        """Number of word positions in one sequence, n - m + 1."""
        return self.__n - self.__m + 1

    def to_data(self) -> dict:
        return {'n': self.n, 'm': self.m, 'k': self.k}

    def __eq__(self, other):
        if not isinstance(other, MatchParams):
            return NotImplemented
        return (self.n, self.m, self.k) == (other.n, other.m, other.k)

    def __hash__(self):
        return hash((self.n, self.m, self.k))

    def __repr__(self):
        return "MatchParams(n=%d, m=%d, k=%d)" % (self.n, self.m, self.k)


def strand_symmetric(eta: float) -> LetterDistribution:
    return LetterDistribution.strand_symmetric(eta)


def p_moment(dist: LetterDistribution, t: int) -> float:
    """Letter collision moment p_t, the sum of xi_a ** t."""
    if t < 2:
        raise DomainError("p_t is defined for t >= 2, got %r" % t)
    return math.fsum(float(xi) ** t for xi in dist.probabilities)


def gc_count(word: Sequence) -> int:
    return int(np.count_nonzero(_IS_GC[word.codes]))


def hamming(x: Sequence, y: Sequence) -> int:
    if len(x) != len(y):
        raise LengthMismatchError("words differ in length: %d != %d" % (len(x), len(y)))
    return int(np.count_nonzero(x.codes != y.codes))
