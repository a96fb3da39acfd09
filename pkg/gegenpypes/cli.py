#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Command Line
============

This executable module builds wavelet packet bases for Gegenbauer processes,
simulates them and scores how well the bases diagonalize the process
covariance.  Frequencies are in cycles per sample, in [0, 1/2], and may be
given as decimals or as rationals like 1/12.
"""

import os
import sys
import csv
import json
import time
import argparse
from fractions import Fraction
from contextlib import contextmanager

import numpy as np

from bacpypes.debugging import DebugContents, ModuleLogger
from bacpypes.consolelogging import ArgumentParser

from . import __version__
from .errors import GegenpypesException, InvalidModel, DimensionMismatch, \
    EXIT_VALIDATION
from .filters import make_filter, parse_filter_name, filter_table, \
    DAUBECHIES, SYMMLET, COIFLET, BATTLE_LEMARIE, FAMILIES
from .wpt import WpTree
from .gegenbauer import GegenbauerModel, autocovariance, \
    DEFAULT_TOL, DEFAULT_ACV_TOL, DEFAULT_SIGMA2
from .bestbasis import CostSpec, as_frequency, best_basis_kfactor, \
    cw_best_basis, whitcher_basis, render_partition, DEFAULT_THRESHOLD
from .simulate import SimConfig, simulate_wp, simulate_hosking, \
    DEFAULT_SEED, DEFAULT_REPLICATES
from .analysis import ExactScorer, exact_correlation, score_B, \
    score_B_hosking, decay_check

# some debugging
_debug = 0
_log = ModuleLogger(globals())

# settings
MAX_EXACT_DEPTH = int(os.getenv('GEGENPYPES_MAX_EXACT_DEPTH', 10))
DEFAULT_D = 0.2

# the four reference processes
PROCESSES = {
    1: ((0.4, Fraction(1, 12)),),
    2: ((0.2, Fraction(1, 12)),),
    3: ((0.3, Fraction(16, 1000)),),
    4: ((0.3, Fraction(1, 40)), (0.3, Fraction(1, 5))),
    }

# wavelet grid of the reference tables
TABLE_GRID = (
    (DAUBECHIES, (2, 4, 6, 8, 10)),
    (SYMMLET, (4, 6, 8, 10)),
    (COIFLET, (2, 4, 6, 8, 10)),
    (BATTLE_LEMARIE, (2, 4, 6)),
    )
TABLE_DEPTH = 8

BASIS_METHODS = ('ours', 'cw-indicator', 'cw-threshold', 'cw-variance', 'whitcher')

#
#   Argument types
#


def frequency_type(text):
    """A frequency as an exact Fraction, '0.375' and '3/8' are the same."""
    try:
        return as_frequency(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError, GegenpypesException):
        raise argparse.ArgumentTypeError("not a frequency in [0, 1/2]: %r" % (text,))


def factor_type(text):
    """A factor 'd,nu'."""
    try:
        d, nu = text.split(',')
        return (float(d), frequency_type(nu))
    except ValueError:
        raise argparse.ArgumentTypeError("a factor is 'd,nu': %r" % (text,))


def filter_type(text):
    try:
        parse_filter_name(text)
    except GegenpypesException:
        raise argparse.ArgumentTypeError("unsupported filter: %r" % (text,))
    return text.lower()


def pair_type(text):
    try:
        j1, p1, j2, p2 = (int(part) for part in text.split(','))
    except ValueError:
        raise argparse.ArgumentTypeError("a pair is 'j1,p1,j2,p2': %r" % (text,))
    return ((j1, p1), (j2, p2))


def _bounded(convert, low, strict, label):
    def check(text):
        try:
            value = convert(text)
        except ValueError:
            raise argparse.ArgumentTypeError("not a number: %r" % (text,))
        if (value <= low) if strict else (value < low):
            raise argparse.ArgumentTypeError("must be %s: %r" % (label, text))
        return value
    check.__name__ = label.replace(" ", "_")
    return check


positive_int = _bounded(int, 0, True, "a positive integer")
nonnegative_int = _bounded(int, 0, False, "a nonnegative integer")
positive_float = _bounded(float, 0.0, True, "positive")

#
#   Parsers
#


class _ValidationExit:

    """Usage errors exit with the validation status."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, "%s: error: %s\n" % (self.prog, message))


class CommandParser(_ValidationExit, ArgumentParser):
    pass


class SubcommandParser(_ValidationExit, argparse.ArgumentParser):
    pass

#
#   RunManifest
#


class RunManifest(DebugContents):

    """The record written next to an output file to reproduce it."""

    _debug_contents = ('subcommand', 'flags', 'seed', 'version', 'outputs')

    def __init__(self, subcommand, flags, seed, outputs):
        self.subcommand = subcommand
        self.flags = flags
        self.seed = seed
        self.version = __version__
        self.outputs = list(outputs)

    @classmethod
    def from_args(cls, args):
        flags = {}
        for key, value in sorted(vars(args).items()):
            if key in ('func', 'debug', 'color', 'buggers', 'loggers'):
                continue
            flags[key] = _jsonable(value)
        return cls(args.command, flags, args.seed, [args.out] if args.out else [])

    def to_json(self):
        return json.dumps({
            'subcommand': self.subcommand,
            'flags': self.flags,
            'seed': self.seed,
            'version': self.version,
            'outputs': self.outputs,
            }, indent=2, sort_keys=True)

    def write(self, path):
        with open(path, 'w') as stream:
            stream.write(self.to_json() + "\n")


def _jsonable(value):
    if isinstance(value, (list, tuple)):
        return [_jsonable(item) for item in value]
    if isinstance(value, Fraction):
        return str(value)
    if value is None or isinstance(value, (bool, int, float, str)):
        return value
    return str(value)

#
#   Output
#


@contextmanager
def _output(args):
    if args.out is None or args.out == '-':
        yield sys.stdout
    else:
        with open(args.out, 'w', newline='') as stream:
            yield stream
        RunManifest.from_args(args).write(args.out + ".manifest.json")


def _format(value):
    if value is None:
        return ''
    if isinstance(value, float):
        return "%.10g" % (value,)
    return str(value)


def write_csv(args, header, rows):
    with _output(args) as stream:
        writer = csv.writer(stream, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow([_format(value) for value in row])

#
#   Shared argument handling
#


def build_model(args):
    """The model from --process or the --factor flags, white noise when
    neither is given."""
    if getattr(args, 'process', None):
        factors = PROCESSES[args.process]
    else:
        factors = args.factor or ()
    return GegenbauerModel(factors, args.sigma2)


def model_frequencies(args):
    """Exact frequencies, from --nu when given, else from the model flags."""
    if getattr(args, 'nu', None):
        return list(args.nu)
    if getattr(args, 'process', None):
        return [nu for d, nu in PROCESSES[args.process]]
    return [nu for d, nu in (getattr(args, 'factor', None) or ())]


def build_filter(name):
    return make_filter(*parse_filter_name(name))


def _check_exact_depth(J):
    if J > MAX_EXACT_DEPTH:
        raise DimensionMismatch("exact covariance paths are limited to J <= %d" % (MAX_EXACT_DEPTH,))


def build_tree(args, method, qmf=None):
    """Build a basis with one of the construction methods."""
    if _debug: _log.debug("build_tree %r %r", method, qmf)

    nus = model_frequencies(args)
    if method == 'ours':
        return best_basis_kfactor(nus, args.J)
    if method == 'whitcher':
        return whitcher_basis(nus, qmf or build_filter(args.filter), args.J, args.threshold)

    if getattr(args, 'process', None) or getattr(args, 'factor', None):
        model = build_model(args)
    else:
        model = GegenbauerModel([(DEFAULT_D, nu) for nu in nus], args.sigma2)

    if method == 'cw-indicator':
        cost = CostSpec.indicator()
    elif method == 'cw-threshold':
        cost = CostSpec.threshold(args.delta)
    elif method == 'cw-variance':
        cost = CostSpec.variance_comparison(args.ratio)
    else:
        raise ValueError("unknown method: %r" % (method,))
    return cw_best_basis(model, args.J, cost, args.tol)


def _read_tree(path):
    with open(path) as stream:
        return WpTree.from_json(stream.read())

#
#   Subcommands
#


def cmd_basis(args):
    """Build a basis, write its JSON form and draw the band partition."""
    tree = build_tree(args, args.method)

    with _output(args) as stream:
        stream.write(tree.to_json() + "\n")
        if stream is sys.stdout:
            stream.write(render_partition(tree) + "\n")
    if args.out:
        sys.stdout.write(render_partition(tree) + "\n")


def cmd_simulate(args):
    """Simulate replicates, one long format row per sample."""
    model = build_model(args)

    if args.method == 'hosking':
        series = simulate_hosking(model, 2 ** args.J, seed=args.seed, replicates=args.replicates, tol=args.acv_tol)
    else:
        qmf = build_filter(args.filter)
        tree = _read_tree(args.tree) if args.tree else build_tree(args, args.basis, qmf)
        config = SimConfig(model, tree, qmf, seed=args.seed, replicates=args.replicates, tol=args.tol)
        series = simulate_wp(config)

    def rows():
        for r, replicate in enumerate(series):
            for t, value in enumerate(replicate):
                yield (r, t, float(value))

    write_csv(args, ('replicate', 't', 'value'), rows())


def cmd_acv(args):
    """Exact autocovariances and autocorrelations."""
    acv = autocovariance(build_model(args), args.max_lag, args.acv_tol)
    rho = acv.rho
    write_csv(args, ('h', 'gamma', 'rho'), (
        (h, float(acv.gamma[h]), float(rho[h])) for h in range(acv.h_max + 1)
        ))


def _score_rows(args, model, scorer, family, q, methods):
    qmf = make_filter(family, q)
    for method in methods:
        try:
            tree = build_tree(args, method, qmf)
        except GegenpypesException as err:
            if _debug: _log.debug("    - %s %s: %s", qmf.name, method, err)
            yield (family, q, method, None, scorer.weight, None, None, None, None, None)
            continue

        report = scorer.score(tree, qmf)
        B = B_pen = seed = None
        if args.replicates:
            B, B_pen = score_B(model, tree, qmf, replicates=args.replicates, seed=args.seed,
                tol=args.tol, acv_tol=args.acv_tol)
            seed = args.seed
        yield (family, q, method, report.leaf_count, report.weight, report.hs_error, report.S, B, B_pen, seed)


def cmd_score(args):
    """Scores of the selected bases and filters."""
    _check_exact_depth(args.J)
    model = build_model(args)
    scorer = ExactScorer(model, 2 ** args.J, args.acv_tol)

    rows = []
    for name in args.filters or [args.filter]:
        family, q = parse_filter_name(name)
        rows.extend(_score_rows(args, model, scorer, family, q, args.method or ['ours', 'whitcher']))

    write_csv(args, ('family', 'q', 'method', 'leaf_count', 'lambda', 'hs_error', 'S', 'B', 'B_pen', 'seed'), rows)


def _table_cells(args):
    """The (process, family, q) cells selected by the flags."""
    for process in args.process or sorted(PROCESSES):
        for family, orders in TABLE_GRID:
            if args.family and family not in args.family:
                continue
            for q in orders:
                yield process, family, q


def _table_args(args, process):
    """A namespace for one reference process."""
    namespace = argparse.Namespace(**vars(args))
    namespace.process = process
    namespace.factor = None
    namespace.nu = None
    return namespace


def cmd_table1(args):
    """Exact S scores of the baseline and our bases."""
    _check_exact_depth(args.J)

    scorers = {}
    rows = []
    for process, family, q in _table_cells(args):
        if _debug: _log.debug("table1 process %r %s q=%r", process, family, q)
        cell_args = _table_args(args, process)
        if process not in scorers:
            scorers[process] = ExactScorer(build_model(cell_args), 2 ** args.J, args.acv_tol)
        scorer = scorers[process]

        qmf = make_filter(family, q)
        scores = {}
        for method in ('whitcher', 'ours'):
            try:
                scores[method] = scorer.score(build_tree(cell_args, method, qmf), qmf).S
            except GegenpypesException as err:
                if _debug: _log.debug("    - %s %s: %s", qmf.name, method, err)
                scores[method] = None

        rows.append((process, scorer.weight, family, q, scores['whitcher'], scores['ours']))

    write_csv(args, ('process', 'lambda', 'family', 'q', 'S_whitcher', 'S_ours'), rows)


def cmd_table2(args):
    """Simulation scores of the baseline and our bases, with the exact
    simulator as the reference row of each process."""
    _check_exact_depth(args.J)
    N = 2 ** args.J

    scorers = {}
    rows = []
    for process, family, q in _table_cells(args):
        if _debug: _log.debug("table2 process %r %s q=%r", process, family, q)
        cell_args = _table_args(args, process)
        model = build_model(cell_args)
        if process not in scorers:
            scorers[process] = ExactScorer(model, N, args.acv_tol)
            B = score_B_hosking(model, N, replicates=args.replicates, seed=args.seed, tol=args.acv_tol)
            rows.append((process, scorers[process].weight, '', '', 'hosking', B, None))
        weight = scorers[process].weight

        qmf = make_filter(family, q)
        for method in ('whitcher', 'ours'):
            try:
                tree = build_tree(cell_args, method, qmf)
            except GegenpypesException as err:
                if _debug: _log.debug("    - %s %s: %s", qmf.name, method, err)
                rows.append((process, weight, family, q, method, None, None))
                continue
            B, B_pen = score_B(model, tree, qmf, replicates=args.replicates, seed=args.seed,
                tol=args.tol, acv_tol=args.acv_tol)
            rows.append((process, weight, family, q, method, B, B_pen))

    write_csv(args, ('process', 'lambda', 'family', 'q', 'method', 'B', 'B_pen'), rows)


def cmd_decay(args):
    """Predicted and fitted covariance decay exponents of packet pairs."""
    _check_exact_depth(args.J)
    model = build_model(args)
    if model.k != 1:
        raise InvalidModel("the decay check needs exactly one factor")

    qmf = build_filter(args.filter)
    tree = _read_tree(args.tree) if args.tree else build_tree(args, 'ours', qmf)
    results = decay_check(model, qmf, tree, pairs=args.pair, tol=args.acv_tol)

    write_csv(args, ('j1', 'p1', 'j2', 'p2', 'R1', 'R2', 'predicted', 'fitted'), (
        (prediction.first.j, prediction.first.p, prediction.second.j, prediction.second.p,
            prediction.R[0], prediction.R[1], prediction.exponent, fitted)
        for prediction, fitted in results
        ))


def _best_time(function, repeat):
    best = None
    for _ in range(repeat):
        start = time.perf_counter()
        function()
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best


def cmd_bench(args):
    """Time the basis constructions over a range of depths."""
    qmf = build_filter(args.filter)
    nus = model_frequencies(args) or [Fraction(1, 12)]

    rows = []
    for J in range(args.J_min, args.J_max + 1):
        ours = _best_time(lambda: best_basis_kfactor(nus, J), args.repeat)
        rows.append((J, 'ours', ours))
        whitcher = _best_time(lambda: whitcher_basis(nus, qmf, J, args.threshold), args.repeat)
        rows.append((J, 'whitcher', whitcher))
        if _debug: _log.debug("    - J=%d ours %r whitcher %r", J, ours, whitcher)

    write_csv(args, ('J', 'method', 'seconds'), rows)


def cmd_filters(args):
    """List the filters, or the coefficients of one of them."""
    if not args.filter:
        rows = []
        for name, family, q in filter_table():
            qmf = make_filter(family, q)
            rows.append((name, family, q, qmf.length, qmf.support_lo, qmf.support_hi, qmf.compact))
        write_csv(args, ('name', 'family', 'q', 'length', 'support_lo', 'support_hi', 'compact'), rows)
        return

    qmf = build_filter(args.filter)
    lo = min(qmf.support_lo, qmf.highpass_lo)
    hi = max(qmf.support_hi, qmf.highpass_hi)

    def rows():
        for n in range(lo, hi + 1):
            h = float(qmf.lowpass[n - qmf.support_lo]) if qmf.support_lo <= n <= qmf.support_hi else None
            g = float(qmf.highpass[n - qmf.highpass_lo]) if qmf.highpass_lo <= n <= qmf.highpass_hi else None
            yield (n, h, g)

    write_csv(args, ('n', 'h', 'g'), rows())


def cmd_corr(args):
    """The exact correlation matrix of the coefficients of a basis."""
    _check_exact_depth(args.J)
    model = build_model(args)
    qmf = build_filter(args.filter)

    if args.method == 'none':
        tree = WpTree(args.J, [(0, 0)])
    else:
        tree = build_tree(args, args.method, qmf)
    omega = exact_correlation(model, tree, qmf, tol=args.acv_tol)

    write_csv(args, ["c%d" % (i,) for i in range(omega.shape[1])], (
        [float(value) for value in row] for row in np.asarray(omega)
        ))

#
#   Parser construction
#


def _common_arguments():
    common = SubcommandParser(add_help=False)
    common.add_argument(
        "--seed", type=nonnegative_int, default=DEFAULT_SEED,
        help="random seed (default %(default)s)",
        )
    common.add_argument(
        "--out",
        help="output file, a manifest is written next to it (default stdout)",
        )
    common.add_argument(
        "--tol", type=positive_float, default=DEFAULT_TOL,
        help="relative tolerance of the band-pass variances (default %(default)s)",
        )
    common.add_argument(
        "--acv-tol", type=positive_float, default=DEFAULT_ACV_TOL,
        help="relative tolerance of the autocovariances (default %(default)s)",
        )
    return common


def _model_arguments():
    model = SubcommandParser(add_help=False)
    model.add_argument(
        "--factor", type=factor_type, action='append',
        help="a factor 'd,nu', memory parameter d and frequency nu in cycles "
            "per sample in [0, 1/2], repeat for k factors",
        )
    model.add_argument(
        "--process", type=int, choices=sorted(PROCESSES),
        help="one of the reference processes instead of --factor",
        )
    model.add_argument(
        "--sigma2", type=positive_float, default=DEFAULT_SIGMA2,
        help="innovation variance (default 2 pi, a flat unit spectrum)",
        )
    return model


def _basis_arguments(J=TABLE_DEPTH):
    basis = SubcommandParser(add_help=False)
    basis.add_argument(
        "--nu", type=frequency_type, action='append',
        help="Gegenbauer frequency in cycles per sample, in [0, 1/2], "
            "decimal or rational like 1/12, repeat for k factors",
        )
    basis.add_argument(
        "--J", type=positive_int, default=J,
        help="depth, the series length is 2^J (default %(default)s)",
        )
    basis.add_argument(
        "--filter", type=filter_type, default='db10',
        help="filter short name like db10, sym8, coif5 or bl6 (default %(default)s)",
        )
    basis.add_argument(
        "--threshold", type=positive_float, default=DEFAULT_THRESHOLD,
        help="normalized filter gain threshold of the whitcher method (default %(default)s)",
        )
    basis.add_argument(
        "--delta", type=positive_float, default=1e-3,
        help="band-pass variance threshold of the cw-threshold method (default %(default)s)",
        )
    basis.add_argument(
        "--ratio", type=positive_float, default=0.5,
        help="variance ratio of the cw-variance method (default %(default)s)",
        )
    return basis


def build_parser():
    parser = CommandParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument('--version', action='version', version=__version__)

    subparsers = parser.add_subparsers(dest='command', parser_class=SubcommandParser)
    subparsers.required = True

    common = _common_arguments()
    model = _model_arguments()

    subparser = subparsers.add_parser('basis', parents=[common, model, _basis_arguments(6)],
        help="build a basis and draw its band partition")
    subparser.add_argument("--method", choices=BASIS_METHODS, default='ours')
    subparser.set_defaults(func=cmd_basis)

    subparser = subparsers.add_parser('simulate', parents=[common, model, _basis_arguments()],
        help="simulate a process, long format CSV")
    subparser.add_argument("--method", choices=('wp', 'hosking'), default='wp')
    subparser.add_argument("--basis", choices=BASIS_METHODS, default='ours',
        help="basis of the wp method (default %(default)s)")
    subparser.add_argument("--tree", help="JSON tree file to use instead of --basis")
    subparser.add_argument("--replicates", type=positive_int, default=1)
    subparser.set_defaults(func=cmd_simulate)

    subparser = subparsers.add_parser('acv', parents=[common, model],
        help="exact autocovariances")
    subparser.add_argument("--max-lag", type=nonnegative_int, default=255)
    subparser.set_defaults(func=cmd_acv)

    subparser = subparsers.add_parser('score', parents=[common, model, _basis_arguments()],
        help="S, B and B_pen scores of bases")
    subparser.add_argument("--method", choices=BASIS_METHODS, action='append')
    subparser.add_argument("--filter-list", dest='filters', type=filter_type, action='append',
        help="filters to score, repeatable (default db10)")
    subparser.add_argument("--replicates", type=nonnegative_int, default=0,
        help="replicates of the B score, 0 skips it (default %(default)s)")
    subparser.set_defaults(func=cmd_score)

    for name, func, help_text in (
            ('table1', cmd_table1, "S scores of the reference processes"),
            ('table2', cmd_table2, "B scores of the reference processes"),
            ):
        subparser = subparsers.add_parser(name, parents=[common], help=help_text)
        subparser.add_argument("--process", type=int, choices=sorted(PROCESSES), action='append')
        subparser.add_argument("--family", choices=FAMILIES, action='append')
        subparser.add_argument("--J", type=positive_int, default=TABLE_DEPTH)
        subparser.add_argument("--threshold", type=positive_float, default=DEFAULT_THRESHOLD)
        subparser.add_argument("--sigma2", type=positive_float, default=DEFAULT_SIGMA2)
        if name == 'table2':
            subparser.add_argument("--replicates", type=positive_int, default=DEFAULT_REPLICATES)
        subparser.set_defaults(func=func)

    subparser = subparsers.add_parser('decay', parents=[common, model, _basis_arguments(10)],
        help="covariance decay of packet pairs")
    subparser.add_argument("--tree", help="JSON tree file to use instead of our basis")
    subparser.add_argument("--pair", type=pair_type, action='append',
        help="packet pair 'j1,p1,j2,p2', repeatable (default every leaf with itself)")
    subparser.set_defaults(func=cmd_decay)

    subparser = subparsers.add_parser('bench', parents=[common],
        help="time the basis constructions")
    subparser.add_argument("--nu", type=frequency_type, action='append')
    subparser.add_argument("--filter", type=filter_type, default='db10')
    subparser.add_argument("--threshold", type=positive_float, default=DEFAULT_THRESHOLD)
    subparser.add_argument("--J-min", type=positive_int, default=6)
    subparser.add_argument("--J-max", type=positive_int, default=13)
    subparser.add_argument("--repeat", type=positive_int, default=3)
    subparser.set_defaults(func=cmd_bench)

    subparser = subparsers.add_parser('filters', parents=[common],
        help="list the filters or dump the coefficients of one")
    subparser.add_argument("--filter", type=filter_type)
    subparser.set_defaults(func=cmd_filters)

    subparser = subparsers.add_parser('corr', parents=[common, model, _basis_arguments(6)],
        help="exact correlation matrix of the coefficients")
    subparser.add_argument("--method", choices=BASIS_METHODS + ('none',), default='ours')
    subparser.set_defaults(func=cmd_corr)

    return parser


def main(argv=None):
    # parse the command line arguments
    parser = build_parser()
    args = parser.parse_args(argv)

    if _debug: _log.debug("initialization")
    if _debug: _log.debug("    - args: %r", args)

    try:
        args.func(args)
    except GegenpypesException as err:
        if _debug: _log.debug("    - err: %r", err)
        sys.stderr.write("error: %s\n" % (err,))
        return err.exit_status
    except ValueError as err:
        if _debug: _log.debug("    - value error: %r", err)
        sys.stderr.write("error: %s\n" % (err,))
        return EXIT_VALIDATION

    return 0

if __name__ == "__main__":
    sys.exit(main())
