"""Subcommands of the ``d2k`` command line, registered on :py:data:`commands`.

Every handler takes the resolved options as keyword arguments and returns a
:py:class:`~d2k.protocol.Response`; presentation is left to the serializers.
"""

import logging
import time
import typing

from .binomial import distance_distribution
from .counting import ALGO_FAST, d2k
from .dispatcher import Dispatcher
from .exceptions import LengthMismatchError, ModelError, UsageError
from .kolmogorov import KsResult
from .model import LetterDistribution, MatchParams, Sequence, p_moment
from .moments import MomentReport, RegimeVerdict, janson_diagnostic, regime_classify
from .protocol import RecordResponse, Response, TableResponse
from .simulation import (DEFAULT_PILOT_REPLICATES, DEFAULT_REPLICATES, SIGMA_EMPIRICAL, CellResult,
                         KsGrid, SimConfig, expected_mean, ks_grid, run_cell)

logger = logging.getLogger('d2k.commands')

GRID_HEADER = ['n', 'm', 'k', 'alpha', 'reps', 'd_stat', 'p_value', 'seed']
VARIANCE_ONLY = ('var_lower_k0', 'var_crabgrass')

commands = Dispatcher()


class CountResponse(Response):
    default_format = 'text'

    def __init__(self, params: MatchParams, value: int, algo: str, wall_ms: float):
        self.params = params
        self.value = value
        self.algo = algo
        self.wall_ms = wall_ms

    def to_data(self):
        return {'n': self.params.n, 'm': self.params.m, 'k': self.params.k,
                'd2k': self.value, 'algo': self.algo, 'wall_ms': self.wall_ms}

    def to_table(self):
        data = self.to_data()
        return list(data.keys()), [list(data.values())]

    def to_text(self):
        return str(self.value)


class SimulateResponse(RecordResponse):
    def __init__(self, result: CellResult, emit_samples: bool = False):
        self.result = result
        self.emit_samples = emit_samples
        config = result.config
        record = {
            'params': config.params.to_data(),
            'dist': config.dist.to_data(),
            'replicates': config.replicates,
            'sigma_mode': config.sigma_mode,
            'pilot_replicates': config.pilot_replicates if config.sigma_mode != SIGMA_EMPIRICAL else None,
            'mean_expected': expected_mean(config.dist, config.params),
            'mean': result.sample_mean,
            'var': result.sample_var,
            'ks': ks_data(result.ks),
            'ks_empirical': ks_data(result.ks_empirical),
            'pilot_sigma': result.pilot_sigma,
        }
        if emit_samples:
            record['samples'] = [int(x) for x in result.samples]
        super().__init__(record)

    def to_table(self):
        if self.emit_samples:
            return ['replicate', 'd2k'], [[r, int(x)] for r, x in enumerate(self.result.samples)]
        return super().to_table()


class GridResponse(Response):
    default_format = 'csv'

    def __init__(self, grid: KsGrid):
        self.grid = grid

    def to_data(self):
        return self.grid.provenance()

    def to_table(self):
        rows = [[n, m, self.grid.k, alpha, self.grid.replicates, cell.d_statistic, cell.p_value, seed]
                for n, m, alpha, cell, seed in self.grid.rows()]
        return list(GRID_HEADER), rows

    def sidecar(self):
        return self.grid.provenance()


def ks_data(ks: KsResult) -> dict:
    return {
        'd_stat': ks.d_statistic,
        'p_value': ks.p_value,
        'n_samples': ks.n_samples,
        'mean_used': ks.mean_used,
        'sigma_used': ks.sigma_used,
    }


def model_from_options(eta: typing.Optional[float], freqs: typing.Optional[typing.Sequence[float]]) \
        -> LetterDistribution:
    if eta is not None and freqs is not None:
        raise UsageError("conflicting letter models: give either --eta or --freqs, not both")
    if eta is not None:
        return LetterDistribution.strand_symmetric(eta)
    if freqs is not None:
        return LetterDistribution.from_frequencies(freqs)
    raise UsageError("a letter model is required: --eta or --freqs")


def _general_k0_only(dist: LetterDistribution, k: int, command: str):
    if not dist.is_strand_symmetric and k > 0:
        raise ModelError("%s with --freqs supports only k=0: mismatch theory for k > 0 needs a "
                         "strand-symmetric model, give --eta instead" % command)


def _flags(verdict: RegimeVerdict) -> dict:
    return {
        'theorem_normal': verdict.theorem_normal,
        'empirically_normal': verdict.empirically_normal,
        'poisson_regime_k0': verdict.poisson_regime_k0,
    }


def moment_record(dist: LetterDistribution, params: MatchParams, variance: bool = True) -> dict:
    record = MomentReport(dist, params).to_data()
    if not variance:
        for key in VARIANCE_ONLY:
            del record[key]
    verdict = regime_classify(dist, params.n, params.m)
    record['freqs'] = dist.to_data()['freqs']
    record['alpha'] = verdict.alpha
    record['flags'] = _flags(verdict)
    return record


@commands.public('count')
def count(seq_a: str, seq_b: str, m: int, k: int, algo: str = ALGO_FAST, threads: typing.Optional[int] = None):
    a = Sequence.read(seq_a)
    b = Sequence.read(seq_b)
    if len(a) != len(b):
        raise LengthMismatchError("%s has %d letters but %s has %d; sequences must have equal length"
                                  % (seq_a, len(a), seq_b, len(b)))
    params = MatchParams(len(a), m, k)
    started = time.perf_counter()
    value = d2k(a, b, params, algo=algo, threads=threads)
    return CountResponse(params, value, algo, (time.perf_counter() - started) * 1000.0)


@commands.public('dist')
def dist(eta: float, m: int, c: int):
    table = distance_distribution(m, eta, c)
    return TableResponse(['k', 'g', 'G'], table.rows(), extra={'m': m, 'eta': eta, 'c': c})


@commands.public('mean')
def mean(n: int, m: int, k: int = 0, eta: typing.Optional[float] = None,
         freqs: typing.Optional[typing.Sequence[float]] = None):
    model = model_from_options(eta, freqs)
    _general_k0_only(model, k, 'mean')
    return RecordResponse(moment_record(model, MatchParams(n, m, k), variance=False))


@commands.public('var-bounds')
def var_bounds(n: int, m: int, k: int = 0, eta: typing.Optional[float] = None,
               freqs: typing.Optional[typing.Sequence[float]] = None):
    model = model_from_options(eta, freqs)
    _general_k0_only(model, k, 'var-bounds')
    return RecordResponse(moment_record(model, MatchParams(n, m, k)))


@commands.public('regime')
def regime(n: int, m: int, eta: typing.Optional[float] = None,
           freqs: typing.Optional[typing.Sequence[float]] = None,
           sigma: typing.Optional[float] = None, janson_t: int = 2):
    model = model_from_options(eta, freqs)
    verdict = regime_classify(model, n, m)
    record = {
        'params': {'n': n, 'm': m},
        'eta': model.eta,
        'freqs': model.to_data()['freqs'],
        'p2': p_moment(model, 2),
        'p3': p_moment(model, 3),
        'alpha': verdict.alpha,
        'log_base': verdict.log_base,
        'flags': _flags(verdict),
        'iso_lines': {'m_alpha_half': verdict.m_alpha_half, 'm_alpha_two': verdict.m_alpha_two},
    }
    if sigma is not None:
        record['janson'] = {'sigma': sigma, 't': janson_t,
                            'value': janson_diagnostic(model, MatchParams(n, m, 0), sigma, janson_t)}
    return RecordResponse(record)


@commands.public('simulate')
def simulate(n: int, m: int, seed: int, k: int = 0, eta: typing.Optional[float] = None,
             freqs: typing.Optional[typing.Sequence[float]] = None, reps: int = DEFAULT_REPLICATES,
             sigma_mode: str = SIGMA_EMPIRICAL, pilot_reps: int = DEFAULT_PILOT_REPLICATES,
             emit_samples: bool = False, threads: typing.Optional[int] = None):
    model = model_from_options(eta, freqs)
    _general_k0_only(model, k, 'simulate')
    config = SimConfig(model, MatchParams(n, m, k), replicates=reps, seed=seed,
                       sigma_mode=sigma_mode, pilot_replicates=pilot_reps)
    return SimulateResponse(run_cell(config, threads), emit_samples)


@commands.public('ks-grid')
def grid(n_list: typing.Sequence[int], m_list: typing.Sequence[int], seed: int, k: int = 0,
         eta: typing.Optional[float] = None, freqs: typing.Optional[typing.Sequence[float]] = None,
         reps: int = DEFAULT_REPLICATES, sigma_mode: str = SIGMA_EMPIRICAL,
         pilot_reps: int = DEFAULT_PILOT_REPLICATES, threads: typing.Optional[int] = None):
    model = model_from_options(eta, freqs)
    if not model.is_strand_symmetric:
        raise ModelError("ks-grid needs a strand-symmetric model, give --eta instead of --freqs")
    started = time.perf_counter()
    result = ks_grid(n_list, m_list, k, model, replicates=reps, seed=seed, sigma_mode=sigma_mode,
                     pilot_replicates=pilot_reps, threads=threads)
    logger.info("ks-grid of %d cells done in %.1f s", len(n_list) * len(m_list), time.perf_counter() - started)
    return GridResponse(result)
