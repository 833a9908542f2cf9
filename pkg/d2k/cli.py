"""``d2k`` command line.

Exit codes: 0 on success, 2 on usage errors (bad flags, conflicting models,
unreadable files, parameters outside their domain), 1 on runtime failures.
"""

import argparse
import logging
import sys
import typing

from . import __version__
from .commands import commands
from .counting import ALGO_FAST, ALGORITHMS
from .exceptions import D2kError, RUNTIME_EXIT_CODE, UsageError
from .protocol import Request
from .serializers import get_serializer
from .serializers.json import dumps, envelope
from .simulation import (DEFAULT_M_VALUES, DEFAULT_N_VALUES, DEFAULT_PILOT_REPLICATES, DEFAULT_REPLICATES,
                         SIGMA_EMPIRICAL, SIGMA_MODES, check_seed, default_seed)
from .sink import FileSink, open_sink, sidecar_path

logger = logging.getLogger('d2k.cli')

OUTPUT_OPTIONS = ('command', 'format', 'out', 'verbose', 'sidecar')
TABLE_FORMATS = ('csv', 'json')
LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'

_log_handler = None


class ArgumentParser(argparse.ArgumentParser):
    """Raises :py:exc:`~d2k.exceptions.UsageError` instead of exiting."""

    def error(self, message):
        raise UsageError("%s: %s" % (self.prog, message))


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected an integer, got %r" % text)
    if value < 1:
        raise argparse.ArgumentTypeError("expected a positive integer, got %r" % text)
    return value


def int_list(text: str) -> typing.List[int]:
    """``"100,200,400"``, ``"2..12"`` or a mix of both."""
    values = []
    try:
        for part in text.split(','):
            part = part.strip()
            if '..' in part:
                lo, hi = part.split('..', 1)
                lo, hi = int(lo), int(hi)
                if hi < lo:
                    raise argparse.ArgumentTypeError("empty range %r" % part)
                values.extend(range(lo, hi + 1))
            else:
                values.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError("expected integers or ranges like 2..12, got %r" % text)
    return values


def frequencies(text: str) -> typing.List[float]:
    try:
        values = [float(x) for x in text.split(',')]
    except ValueError:
        raise argparse.ArgumentTypeError("expected four numbers A,C,G,T, got %r" % text)
    if len(values) != 4:
        raise argparse.ArgumentTypeError("expected four numbers A,C,G,T, got %d" % len(values))
    return values


def _output_parent(formats, default) -> ArgumentParser:
    parent = ArgumentParser(add_help=False)
    group = parent.add_argument_group('output')
    group.add_argument('--format', choices=formats, default=default,
                       help="output format (default: %s)" % default)
    group.add_argument('--out', metavar='PATH', default=None, help="write output to PATH instead of stdout")
    group.add_argument('-v', '--verbose', action='count', default=0,
                       help="log progress to stderr; repeat for debug output")
    return parent


def _threads_parent() -> ArgumentParser:
    parent = ArgumentParser(add_help=False)
    parent.add_argument('--threads', type=_positive_int, default=None, metavar='N',
                        help="worker threads (default: all CPUs); output does not depend on it")
    return parent


def _model_parent() -> ArgumentParser:
    parent = ArgumentParser(add_help=False)
    group = parent.add_mutually_exclusive_group(required=True)
    group.add_argument('--eta', type=float, help="strand-symmetric model with perturbation eta, |eta| < 1")
    group.add_argument('--freqs', type=frequencies, metavar='A,C,G,T',
                       help="general letter frequencies; only k = 0 is supported")
    return parent


def _params_parent(with_k: bool = True) -> ArgumentParser:
    parent = ArgumentParser(add_help=False)
    group = parent.add_argument_group('word match parameters')
    group.add_argument('-n', type=int, required=True, help="sequence length")
    group.add_argument('-m', type=int, required=True, help="word length")
    if with_k:
        group.add_argument('-k', type=int, default=0, help="mismatches allowed (default: 0)")
    return parent


def _simulation_options(parser: ArgumentParser):
    group = parser.add_argument_group('simulation')
    group.add_argument('--reps', type=_positive_int, default=DEFAULT_REPLICATES,
                       help="replicates per cell (default: %d)" % DEFAULT_REPLICATES)
    group.add_argument('--seed', type=int, default=None,
                       help="random seed (default: $D2K_SEED, else a fixed seed)")
    group.add_argument('--sigma-mode', choices=SIGMA_MODES, default=SIGMA_EMPIRICAL,
                       help="standard deviation used to standardize (default: %s)" % SIGMA_EMPIRICAL)
    group.add_argument('--pilot-reps', type=_positive_int, default=DEFAULT_PILOT_REPLICATES,
                       help="pilot replicates for --sigma-mode pilot (default: %d)" % DEFAULT_PILOT_REPLICATES)


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog='d2k', description="Approximate word-match statistics D2(k) "
                                                    "between random DNA sequences.")
    parser.add_argument('--version', action='version', version='%(prog)s ' + __version__)
    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND', parser_class=ArgumentParser)
    subparsers.required = True

    threads = _threads_parent()
    model = _model_parent()
    tables = _output_parent(TABLE_FORMATS, 'json')

    p = subparsers.add_parser('count', help="count k-neighbor word pairs between two sequence files",
                              parents=[_output_parent(('text',) + TABLE_FORMATS, 'text'), threads])
    p.add_argument('--seq-a', required=True, metavar='FILE', help="first sequence file (bare ACGT text)")
    p.add_argument('--seq-b', required=True, metavar='FILE', help="second sequence file, same length")
    p.add_argument('-m', type=int, required=True, help="word length")
    p.add_argument('-k', type=int, default=0, help="mismatches allowed (default: 0)")
    p.add_argument('--algo', choices=ALGORITHMS, default=ALGO_FAST, help="counter (default: %s)" % ALGO_FAST)

    p = subparsers.add_parser('dist', help="perturbed binomial distribution g_k and its cdf G_k",
                              parents=[_output_parent(TABLE_FORMATS, 'csv')])
    p.add_argument('--eta', type=float, required=True, help="perturbation parameter, |eta| < 1")
    p.add_argument('-m', type=int, required=True, help="word length")
    p.add_argument('-c', type=int, required=True, help="GC-count of the query word, 0 <= c <= m")

    subparsers.add_parser('mean', help="exact mean of D2(k) and its bounds",
                          parents=[tables, model, _params_parent()])
    subparsers.add_parser('var-bounds', help="variance bounds of D2(k)",
                          parents=[tables, model, _params_parent()])

    p = subparsers.add_parser('regime', help="regime parameter alpha and normality flags",
                              parents=[tables, model, _params_parent(with_k=False)])
    p.add_argument('--sigma', type=float, default=None,
                   help="standard deviation for the dependency-graph diagnostic")
    p.add_argument('--janson-t', type=_positive_int, default=2, help="moment order of the diagnostic")

    p = subparsers.add_parser('simulate', help="Monte Carlo sample of D2(k) with a KS normality test",
                              parents=[tables, model, _params_parent(), threads])
    _simulation_options(p)
    p.add_argument('--emit-samples', action='store_true', help="include every replicate count")

    p = subparsers.add_parser('ks-grid', help="KS p-values over a grid of (n, m)",
                              parents=[_output_parent(TABLE_FORMATS, 'csv'), model, threads])
    p.add_argument('--n-list', type=int_list, default=list(DEFAULT_N_VALUES), metavar='LIST',
                   help="sequence lengths, e.g. 100,200,400")
    p.add_argument('--m-list', type=int_list, default=list(DEFAULT_M_VALUES), metavar='LIST',
                   help="word lengths, e.g. 2..12")
    p.add_argument('-k', type=int, default=0, help="mismatches allowed (default: 0)")
    _simulation_options(p)
    p.add_argument('--sidecar', metavar='PATH', default=None,
                   help="provenance JSON path (default: <out>.json when --out is given)")
    return parser


def configure_logging(verbosity: int, stream: typing.TextIO):
    global _log_handler
    root = logging.getLogger('d2k')
    if _log_handler is not None:
        root.removeHandler(_log_handler)
    _log_handler = logging.StreamHandler(stream)
    _log_handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(_log_handler)
    root.setLevel(logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG)


def make_request(namespace: argparse.Namespace, argv: typing.List[str]) -> Request:
    """Resolves defaults into a replayable request."""
    options = {k: v for k, v in vars(namespace).items() if k not in OUTPUT_OPTIONS}
    argv = list(argv)
    seed = None
    if 'seed' in options:
        seed = check_seed(default_seed() if options['seed'] is None else options['seed'])
        options['seed'] = seed
        if not any(a == '--seed' or a.startswith('--seed=') for a in argv):
            argv += ['--seed', str(seed)]
    return Request(namespace.command, options, argv, seed)


def run(argv: typing.Optional[typing.List[str]] = None, stdout: typing.Optional[typing.BinaryIO] = None,
        stderr: typing.Optional[typing.TextIO] = None) -> int:
    """Runs one command line and returns its exit code.

    :param stdout: binary stream for results, ``sys.stdout.buffer`` by default.
    :param stderr: text stream for errors and logs, ``sys.stderr`` by default.
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    stderr = stderr if stderr is not None else sys.stderr
    try:
        try:
            namespace = build_parser().parse_args(argv)
        except SystemExit as e:
            # --help and --version
            return e.code or 0
        configure_logging(namespace.verbose, stderr)

        request = make_request(namespace, argv)
        logger.debug("request %r", request.to_data())
        response = commands.dispatch(request)

        fmt = namespace.format or response.default_format
        try:
            payload = get_serializer(fmt).serialize(response, request)
        except NotImplementedError:
            raise UsageError("--format %s is not available for %s" % (fmt, request.command))
        open_sink(namespace.out, stdout).write(payload)

        provenance = response.sidecar()
        path = sidecar_path(namespace.out, getattr(namespace, 'sidecar', None))
        if provenance is not None and fmt != 'json' and path:
            FileSink(path).write(dumps(envelope(provenance, request)))
        return 0
    except D2kError as e:
        print("d2k: error: %s" % e.message, file=stderr)
        return e.exit_code
    except Exception as e:
        logger.exception("unexpected failure")
        print("d2k: internal error: %s" % e, file=stderr)
        return RUNTIME_EXIT_CODE


def main():
    sys.exit(run())
