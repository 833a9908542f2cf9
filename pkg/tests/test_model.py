import itertools

import numpy as np
import pytest

from d2k.exceptions import DomainError, LengthMismatchError, SequenceParseError
from d2k.model import LetterDistribution, MatchParams, Sequence, gc_count, hamming, p_moment, strand_symmetric


@pytest.mark.parametrize('eta, expected', [
    (0.0, (0.25, 0.25, 0.25, 0.25)),
    (1 / 3, (1 / 3, 1 / 6, 1 / 6, 1 / 3)),
    (-1 / 3, (1 / 6, 1 / 3, 1 / 3, 1 / 6)),
])
def test_strand_symmetric(eta, expected):
    dist = strand_symmetric(eta)
    np.testing.assert_allclose(dist.probabilities, expected, rtol=0, atol=1e-15)
    assert dist.eta == eta
    assert dist.is_strand_symmetric


@pytest.mark.parametrize('eta', [1.0, -1.0, 1.5, float('nan')])
def test_strand_symmetric_rejects_degenerate_eta(eta):
    with pytest.raises(DomainError):
        strand_symmetric(eta)


def test_probabilities_are_read_only():
    dist = strand_symmetric(0.2)
    with pytest.raises(ValueError):
        dist.probabilities[0] = 1.0


def test_uniform():
    assert LetterDistribution.uniform().is_uniform
    assert not strand_symmetric(0.1).is_uniform
    assert LetterDistribution.uniform() == strand_symmetric(0.0)


def test_from_frequencies():
    dist = LetterDistribution.from_frequencies([0.4, 0.1, 0.2, 0.3])
    assert dist.eta is None
    assert not dist.is_strand_symmetric
    assert dist.xi_g == 0.2
    assert dist.to_data() == {'eta': None, 'freqs': [0.4, 0.1, 0.2, 0.3]}


@pytest.mark.parametrize('freqs', [
    [0.5, 0.5, 0.5, 0.5],
    [0.25, 0.25, 0.25],
    [-0.1, 0.4, 0.4, 0.3],
])
def test_from_frequencies_invalid(freqs):
    with pytest.raises(DomainError):
        LetterDistribution.from_frequencies(freqs)


def test_explicit_eta_must_match_probabilities():
    with pytest.raises(DomainError):
        LetterDistribution(0.25, 0.25, 0.25, 0.25, eta=0.5)


@pytest.mark.parametrize('dist, t, expected', [
    (LetterDistribution.uniform(), 2, 0.25),
    (strand_symmetric(1 / 3), 2, 5 / 18),
    (strand_symmetric(1 / 3), 3, 2 / 27 + 2 / 216),
])
def test_p_moment(dist, t, expected):
    assert p_moment(dist, t) == pytest.approx(expected, rel=1e-14)
    assert dist.p_moment(t) == p_moment(dist, t)


@pytest.mark.parametrize('eta', [0.1, 1 / 3, 0.9])
@pytest.mark.parametrize('t', [2, 3, 4])
def test_p_moment_sign_symmetry(eta, t):
    assert abs(p_moment(strand_symmetric(eta), t) - p_moment(strand_symmetric(-eta), t)) <= 1e-14


@pytest.mark.parametrize('dist', [strand_symmetric(eta) for eta in (0.0, 1 / 3, -1 / 3, 0.9, -0.9)]
                         + [LetterDistribution.from_frequencies([0.4, 0.1, 0.2, 0.3])])
def test_p3_dominates_p2_squared(dist):
    p2, p3 = p_moment(dist, 2), p_moment(dist, 3)
    if dist.is_uniform:
        assert p3 == pytest.approx(p2 * p2, rel=1e-14)
    else:
        assert p3 > p2 * p2


def test_p_moment_domain():
    with pytest.raises(DomainError):
        p_moment(LetterDistribution.uniform(), 1)


@pytest.mark.parametrize('word, expected', [('AAAA', 0), ('ACGT', 2), ('GCGC', 4)])
def test_gc_count(word, expected):
    assert gc_count(Sequence(word)) == expected
    assert Sequence(word).gc_count() == expected


@pytest.mark.parametrize('x, y, expected', [('ACGT', 'ACGT', 0), ('AAAA', 'TTTT', 4), ('ACGT', 'ACGA', 1)])
def test_hamming(x, y, expected):
    assert hamming(Sequence(x), Sequence(y)) == expected


@pytest.mark.parametrize('length', [1, 2, 3, 4])
def test_hamming_is_a_metric(length):
    words = [Sequence.from_codes(codes) for codes in itertools.product(range(4), repeat=length)]
    dist = np.array([[hamming(x, y) for y in words] for x in words])
    assert np.all(np.diag(dist) == 0)
    assert np.all(dist[~np.eye(len(words), dtype=bool)] > 0)
    assert np.array_equal(dist, dist.T)
    for row in dist:
        assert np.all(row[:, None] <= row[None, :] + dist)


def test_hamming_length_mismatch():
    with pytest.raises(LengthMismatchError):
        hamming(Sequence('ACG'), Sequence('AC'))


def test_sequence_upcases_and_round_trips():
    seq = Sequence('acgTa')
    assert str(seq) == 'ACGTA'
    assert len(seq) == 5
    assert seq[1] == 'C'
    assert seq[1:3] == Sequence('CG')
    np.testing.assert_array_equal(seq.codes, [0, 1, 2, 3, 0])


@pytest.mark.parametrize('text', ['ACGN', 'AC-GT', ''])
def test_sequence_rejects_invalid_text(text):
    with pytest.raises(SequenceParseError):
        Sequence(text)


def test_sequence_error_names_position():
    with pytest.raises(SequenceParseError, match='position 3'):
        Sequence('ACXT')


def test_parse_ignores_whitespace():
    assert Sequence.parse('AC GT\nac\n') == Sequence('ACGTAC')


def test_parse_rejects_fasta_header():
    with pytest.raises(SequenceParseError, match='header'):
        Sequence.parse('>chr1\nACGT\n')


def test_read(tmp_path):
    path = tmp_path / 'a.txt'
    path.write_text('ACGT\nTTGA\n')
    assert Sequence.read(str(path)) == Sequence('ACGTTTGA')


def test_read_missing_file(tmp_path):
    with pytest.raises(SequenceParseError):
        Sequence.read(str(tmp_path / 'missing.txt'))


def test_from_codes():
    assert str(Sequence.from_codes([3, 2, 1, 0])) == 'TGCA'
    with pytest.raises(SequenceParseError):
        Sequence.from_codes([0, 4])


def test_match_params():
    params = MatchParams(10, 3, 1)
    assert params.nbar == 8
    assert params.to_data() == {'n': 10, 'm': 3, 'k': 1}
    assert params == MatchParams(10, 3, 1)


@pytest.mark.parametrize('n, m, k', [(10, 0, 0), (10, 3, 4), (10, 3, -1), (3, 3, 0), (2 ** 31, 3, 0)])
def test_match_params_invalid(n, m, k):
    with pytest.raises(DomainError):
        MatchParams(n, m, k)
