"""Monte Carlo sampling of D2(k) and the grid of KS p-values.

Random streams are ``numpy.random.Generator(Philox)`` keyed by
``SeedSequence(seed, spawn_key=(stream, replicate))``. Each replicate owns its
stream, so results do not depend on the order replicates are run in or on the
number of threads. ``stream`` is 0 for the main sample and 1 for the pilot
sample used by the pilot sigma mode.

A grid cell is simulated with its own cell seed, derived from the grid seed
and the cell's row-major index; running :py:func:`run_cell` with that seed
reproduces the cell.
"""

import concurrent.futures
import logging
import os
import time
import typing

import numpy as np

from .counting import count_codes
from .exceptions import D2kError, DomainError, GridCellError, ResourceError
from .kolmogorov import KsResult, ks_test
from .model import LetterDistribution, MatchParams, Sequence
from .moments import mean_exact, mean_k0_general, regime_classify

logger = logging.getLogger('d2k.simulation')

DEFAULT_REPLICATES = 2500
DEFAULT_PILOT_REPLICATES = 500
DEFAULT_SEED = 12345
SEED_ENV = 'D2K_SEED'
DEFAULT_N_VALUES = (100, 200, 400, 800, 1600)
DEFAULT_M_VALUES = tuple(range(2, 15))

SIGMA_EMPIRICAL = 'empirical'
SIGMA_PILOT = 'pilot'
SIGMA_MODES = (SIGMA_EMPIRICAL, SIGMA_PILOT)

MAIN_STREAM = 0
PILOT_STREAM = 1

MAX_SEED = 2 ** 64 - 1


def default_seed() -> int:
    value = os.environ.get(SEED_ENV)
    if value is None:
        return DEFAULT_SEED
    try:
        return check_seed(int(value))
    except ValueError:
        raise DomainError("%s must be an integer in 0..2^64-1, got %r" % (SEED_ENV, value))


def check_seed(seed: int) -> int:
    if not 0 <= seed <= MAX_SEED:
        raise DomainError("seed must lie in 0..2^64-1, got %r" % seed)
    return seed


def replicate_rng(seed: int, replicate: int, stream: int = MAIN_STREAM) -> np.random.Generator:
    sequence = np.random.SeedSequence(check_seed(seed), spawn_key=(stream, replicate))
    return np.random.Generator(np.random.Philox(sequence))


def cell_seed(seed: int, index: int) -> int:
    """64-bit seed of grid cell ``index``."""
    state = np.random.SeedSequence(check_seed(seed), spawn_key=(index,)).generate_state(1, dtype=np.uint64)
    return int(state[0])


def generate_sequence(dist: LetterDistribution, n: int, rng: np.random.Generator) -> Sequence:
    """n i.i.d. letters drawn from dist."""
    if n < 1:
        raise DomainError("sequence length must be at least 1, got %r" % n)
    codes = rng.choice(4, size=n, p=dist.probabilities)
    return Sequence.from_codes(codes.astype(np.uint8))


class SimConfig:
    """Simulation settings for one (distribution, params) cell."""

    def __init__(self, dist: LetterDistribution, params: MatchParams,
                 replicates: int = DEFAULT_REPLICATES, seed: typing.Optional[int] = None,
                 sigma_mode: str = SIGMA_EMPIRICAL, pilot_replicates: int = DEFAULT_PILOT_REPLICATES):
        if replicates < 2:
            raise DomainError("need at least 2 replicates, got %r" % replicates)
        if sigma_mode not in SIGMA_MODES:
            raise DomainError("sigma mode must be one of %s, got %r" % (', '.join(SIGMA_MODES), sigma_mode))
        if sigma_mode == SIGMA_PILOT and pilot_replicates < 2:
            raise DomainError("need at least 2 pilot replicates, got %r" % pilot_replicates)
        self.__dist = dist
        self.__params = params
        self.__replicates = int(replicates)
        self.__seed = check_seed(default_seed() if seed is None else int(seed))
        self.__sigma_mode = sigma_mode
        self.__pilot_replicates = int(pilot_replicates)

    @property
    def dist(self):
        return self.__dist

    @property
    def params(self):
        return self.__params

    @property
    def replicates(self):
        return self.__replicates

    @property
    def seed(self):
        return self.__seed

    @property
    def sigma_mode(self):
        return self.__sigma_mode

    @property
    def pilot_replicates(self):
        return self.__pilot_replicates

    def replace(self, **changes) -> 'SimConfig':
        values = dict(dist=self.dist, params=self.params, replicates=self.replicates, seed=self.seed,
                      sigma_mode=self.sigma_mode, pilot_replicates=self.pilot_replicates)
        values.update(changes)
        return SimConfig(**values)

    def to_data(self) -> dict:
        return {
            'dist': self.dist.to_data(),
            'params': self.params.to_data(),
            'replicates': self.replicates,
            'seed': self.seed,
            'sigma_mode': self.sigma_mode,
            'pilot_replicates': self.pilot_replicates,
        }


def _one_replicate(dist: LetterDistribution, params: MatchParams, seed: int, stream: int, replicate: int) -> int:
    rng = replicate_rng(seed, replicate, stream)
    a = generate_sequence(dist, params.n, rng)
    b = generate_sequence(dist, params.n, rng)
    return count_codes(a.codes, b.codes, params.m, params.k)


def _sample(dist: LetterDistribution, params: MatchParams, seed: int, replicates: int,
            stream: int, threads: typing.Optional[int]) -> np.ndarray:
    threads = threads or os.cpu_count() or 1
    try:
        out = np.empty(replicates, dtype=np.int64)
        if threads == 1:
            for r in range(replicates):
                out[r] = _one_replicate(dist, params, seed, stream, r)
            return out
        with concurrent.futures.ThreadPoolExecutor(max_workers=threads) as executor:
            results = executor.map(lambda r: _one_replicate(dist, params, seed, stream, r), range(replicates))
            for r, value in enumerate(results):
                out[r] = value
        return out
    except MemoryError as e:
        raise ResourceError("out of memory after starting %d replicates of %r: %s" % (replicates, params, e))


def sample_d2k(config: SimConfig, threads: typing.Optional[int] = 1) -> np.ndarray:
    """``config.replicates`` independent values of D2(k), one per fresh sequence pair."""
    started = time.perf_counter()
    samples = _sample(config.dist, config.params, config.seed, config.replicates, MAIN_STREAM, threads)
    logger.debug("sampled %d replicates of %r in %.3f s", config.replicates, config.params,
                 time.perf_counter() - started)
    return samples


def pilot_sample(config: SimConfig, threads: typing.Optional[int] = 1) -> np.ndarray:
    return _sample(config.dist, config.params, config.seed, config.pilot_replicates, PILOT_STREAM, threads)


def expected_mean(dist: LetterDistribution, params: MatchParams) -> float:
    if dist.is_strand_symmetric:
        return mean_exact(dist, params)
    return mean_k0_general(dist, params)


def standardize(samples: np.ndarray, mean: float, sigma: float) -> np.ndarray:
    """(x - mean) / sigma; a degenerate sample (sigma = 0) maps to all zeros."""
    samples = np.asarray(samples, dtype=np.float64)
    if sigma > 0:
        return (samples - mean) / sigma
    return np.zeros_like(samples)


def sample_sigma(samples: np.ndarray) -> float:
    return float(np.std(np.asarray(samples, dtype=np.float64), ddof=1))


class CellResult:
    """Samples and KS outcome(s) of one simulated cell."""

    def __init__(self, config: SimConfig, samples: np.ndarray, ks: KsResult,
                 ks_empirical: KsResult, pilot_sigma: typing.Optional[float] = None):
        self.config = config
        self.samples = samples
        self.ks = ks
        self.ks_empirical = ks_empirical
        self.pilot_sigma = pilot_sigma

    @property
    def sample_mean(self):
        return float(np.mean(self.samples))

    @property
    def sample_var(self):
        return float(np.var(self.samples.astype(np.float64), ddof=1))


def run_cell(config: SimConfig, threads: typing.Optional[int] = 1) -> CellResult:
    """Simulate, standardize by the exact mean and the configured sigma, KS-test against N(0, 1)."""
    samples = sample_d2k(config, threads)
    mean = expected_mean(config.dist, config.params)

    sigma_empirical = sample_sigma(samples)
    if sigma_empirical == 0:
        logger.warning("degenerate sample for %r: all %d replicates equal %d",
                       config.params, samples.size, int(samples[0]))
    ks_empirical = ks_test(standardize(samples, mean, sigma_empirical), mean, sigma_empirical)

    if config.sigma_mode == SIGMA_EMPIRICAL:
        return CellResult(config, samples, ks_empirical, ks_empirical)

    sigma_pilot = sample_sigma(pilot_sample(config, threads))
    ks = ks_test(standardize(samples, mean, sigma_pilot), mean, sigma_pilot)
    return CellResult(config, samples, ks, ks_empirical, pilot_sigma=sigma_pilot)


class KsGrid:
    """KS p-values over (n, m) cells for a fixed k, with per-cell seeds."""

    def __init__(self, n_values, m_values, k: int, dist: LetterDistribution, replicates: int,
                 seed: int, sigma_mode: str, cells, seeds, alphas):
        self.n_values = list(n_values)
        self.m_values = list(m_values)
        self.k = k
        self.dist = dist
        self.replicates = replicates
        self.seed = seed
        self.sigma_mode = sigma_mode
        self.cells = cells
        self.seeds = seeds
        self.alphas = alphas

    def iso_lines(self) -> typing.List[dict]:
        """m on the alpha = 1/2 and alpha = 2 lines at each n."""
        lines = []
        for n in self.n_values:
            verdict = regime_classify(self.dist, n, 1)
            lines.append({'n': n, 'm_alpha_half': verdict.m_alpha_half, 'm_alpha_two': verdict.m_alpha_two})
        return lines

    def rows(self):
        for a, n in enumerate(self.n_values):
            for b, m in enumerate(self.m_values):
                cell = self.cells[a][b]
                yield n, m, self.alphas[a][b], cell, self.seeds[a][b]

    def provenance(self) -> dict:
        return {
            'n_values': self.n_values,
            'm_values': self.m_values,
            'k': self.k,
            'dist': self.dist.to_data(),
            'replicates': self.replicates,
            'seed': self.seed,
            'sigma_mode': self.sigma_mode,
            'rng': 'numpy Philox, SeedSequence(cell_seed, spawn_key=(stream, replicate))',
            'iso_lines': self.iso_lines(),
            'cells': [
                {'n': n, 'm': m, 'seed': seed, 'alpha': alpha, 'mean_used': cell.mean_used,
                 'sigma_used': cell.sigma_used, 'd_stat': cell.d_statistic, 'p_value': cell.p_value}
                for n, m, alpha, cell, seed in self.rows()
            ],
        }


def ks_grid(n_values: typing.Sequence[int], m_values: typing.Sequence[int], k: int,
            dist: LetterDistribution, replicates: int = DEFAULT_REPLICATES,
            seed: typing.Optional[int] = None, sigma_mode: str = SIGMA_EMPIRICAL,
            pilot_replicates: int = DEFAULT_PILOT_REPLICATES,
            threads: typing.Optional[int] = 1) -> KsGrid:
    seed = check_seed(default_seed() if seed is None else int(seed))
    cells, seeds, alphas = [], [], []
    index = 0
    for n in n_values:
        cell_row, seed_row, alpha_row = [], [], []
        for m in m_values:
            this_seed = cell_seed(seed, index)
            index += 1
            try:
                params = MatchParams(n, m, k)
                config = SimConfig(dist, params, replicates=replicates, seed=this_seed,
                                   sigma_mode=sigma_mode, pilot_replicates=pilot_replicates)
                result = run_cell(config, threads)
                alpha = regime_classify(dist, n, m).alpha
            except D2kError as e:
                raise GridCellError(n, m, e)
            logger.info("cell n=%d m=%d k=%d: alpha=%.3f D=%.4f p=%.3g",
                        n, m, k, alpha, result.ks.d_statistic, result.ks.p_value)
            cell_row.append(result.ks)
            seed_row.append(this_seed)
            alpha_row.append(alpha)
        cells.append(cell_row)
        seeds.append(seed_row)
        alphas.append(alpha_row)
    return KsGrid(n_values, m_values, k, dist, replicates, seed, sigma_mode, cells, seeds, alphas)

