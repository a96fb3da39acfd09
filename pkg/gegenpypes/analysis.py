#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Analysis
========

How well a wavelet packet basis diagonalizes a Gegenbauer process.  The
exact covariance of the coefficients is the congruence W' Gamma W of the
process covariance, its correlation is compared with the identity in the
squared Hilbert-Schmidt norm and penalized by the number of packets.  The
simulated version compares averaged sample autocorrelations with the exact
ones.  The decay check fits the tail of the exact coefficient covariances
against the rate predicted from the vanishing moments of the packets.
"""

import math

import numpy as np
from scipy import linalg

from bacpypes.debugging import bacpypes_debugging, DebugContents, ModuleLogger

from .errors import DimensionMismatch, ZeroVariance, InsufficientPairs, InvalidModel
from .wpt import WpNode, transform_matrix
from .gegenbauer import covariance_matrix, DEFAULT_ACV_TOL, DEFAULT_TOL
from .simulate import SimConfig, simulate_wp, simulate_hosking, sample_acv, \
    DEFAULT_SEED, DEFAULT_REPLICATES

# some debugging
_debug = 0
_log = ModuleLogger(globals())

# number of logarithmic bins of the decay envelope
DECAY_BINS = 12

#
#   ScoreReport
#


class ScoreReport(DebugContents):

    """Diagonalization scores of one basis."""

    _debug_contents = ('tree', 'leaf_count', 'weight', 'hs_error', 'S', 'B', 'B_pen', 'replicates', 'seed')

    def __init__(self, tree, weight, hs_error, B=None, B_pen=None, replicates=None, seed=None):
        self.tree = tree
        self.leaf_count = tree.leaf_count()
        self.weight = weight
        self.hs_error = hs_error
        self.S = hs_error + weight * self.leaf_count
        self.B = B
        self.B_pen = B_pen
        self.replicates = replicates
        self.seed = seed

    def __repr__(self):
        return "<%s leaves=%d lambda=%.4f S=%.1f>" % (
            self.__class__.__name__, self.leaf_count, self.weight, self.S,
            )

#
#   DecayPrediction
#


class DecayPrediction(DebugContents):

    """The covariance decay rate predicted for a pair of packets."""

    _debug_contents = ('first', 'second', 'R', 'exponent', 'radius')

    def __init__(self, first, second, d, q, n_star):
        self.first = first
        self.second = second

        R1 = vanishing_R(first.p, first.j, q)
        R2 = vanishing_R(second.p, second.j, q)
        self.R = (R1, R2)

        if first.p and second.p:
            self.exponent = 2.0 * d - 1.0 - R1 - R2
        elif first.p or second.p:
            self.exponent = 2.0 * d - 1.0 - max(R1, R2)
        else:
            self.exponent = 2.0 * d - 1.0

        # covariances closer than this overlap the filter supports
        self.radius = (n_star + 1) * (2 ** first.j + 2 ** second.j)

    def __repr__(self):
        return "<%s (%d,%d) (%d,%d) %.2f>" % (
            self.__class__.__name__,
            self.first.j, self.first.p, self.second.j, self.second.p,
            self.exponent,
            )

#
#   Matrix helpers
#


def wp_covariance(gamma, tree, qmf):
    """
    Covariance of the coefficients of a basis, W' Gamma W with the basis
    vectors as the columns of W.

    :param gamma: N x N covariance matrix of the series
    :param tree: a :class:`WpTree` with 2^J = N
    :param qmf: a :class:`QmfPair`
    """
    gamma = np.asarray(gamma, dtype=float)
    if gamma.ndim != 2 or gamma.shape[0] != gamma.shape[1] or gamma.shape[0] != tree.N:
        raise DimensionMismatch("shape %r for a depth %d tree" % (gamma.shape, tree.J))

    W = transform_matrix(tree, qmf, tree.N)
    result = W.T @ gamma @ W
    return 0.5 * (result + result.T)


def correlation_from_covariance(gamma):
    """Scale a covariance matrix to unit diagonal."""
    gamma = np.asarray(gamma, dtype=float)
    diagonal = np.diag(gamma)
    if np.any(diagonal <= 0.0):
        raise ZeroVariance("at index %d" % (int(np.flatnonzero(diagonal <= 0.0)[0]),))

    scale = 1.0 / np.sqrt(diagonal)
    omega = gamma * np.outer(scale, scale)
    np.fill_diagonal(omega, 1.0)
    return omega


def hs_error(omega, reference=None):
    """Squared Hilbert-Schmidt distance, the identity by default."""
    omega = np.asarray(omega, dtype=float)
    if reference is None:
        reference = np.eye(omega.shape[0])
    return float(np.sum((omega - reference) ** 2))


def lambda_weight(omega, N=None):
    """
    The penalty weight that gives the identity basis and the finest basis
    with perfect diagonalization the same score.

    :param omega: correlation matrix of the series
    :param N: series length, defaults to the matrix size
    """
    omega = np.asarray(omega, dtype=float)
    if N is None:
        N = omega.shape[0]
    elif N != omega.shape[0]:
        raise DimensionMismatch("N=%r for a %r matrix" % (N, omega.shape))

    return hs_error(omega) / (N - 1)

#
#   Exact scores
#


def exact_correlation(model, tree, qmf, N=None, tol=DEFAULT_ACV_TOL):
    """Correlation matrix of the coefficients of a basis."""
    N = tree.N if N is None else N
    if N != tree.N:
        raise DimensionMismatch("N=%r for a depth %d tree" % (N, tree.J))

    gamma = covariance_matrix(model, N, tol)
    return correlation_from_covariance(wp_covariance(gamma, tree, qmf))


@bacpypes_debugging
class ExactScorer:

    """The exact process correlation is shared by every basis scored."""

    def __init__(self, model, N, tol=DEFAULT_ACV_TOL):
        if _debug: ExactScorer._debug("__init__ %r %r %r", model, N, tol)

        self.model = model
        self.N = N
        self.gamma = covariance_matrix(model, N, tol)
        self.omega = correlation_from_covariance(self.gamma)
        self.weight = lambda_weight(self.omega)

    def score(self, tree, qmf):
        if tree.N != self.N:
            raise DimensionMismatch("N=%r for a depth %d tree" % (self.N, tree.J))

        omega_b = correlation_from_covariance(wp_covariance(self.gamma, tree, qmf))
        report = ScoreReport(tree, self.weight, hs_error(omega_b))
        if _debug: ExactScorer._debug("    - report: %r", report)
        return report


def score_S(model, tree, qmf, N=None, tol=DEFAULT_ACV_TOL):
    """
    The penalized diagonalization score of a basis,
    S = ||Omega[B] - I||^2 + lambda #B, lambda from the process correlation.

    :param model: a :class:`GegenbauerModel`
    :param tree: a :class:`WpTree`
    :param qmf: a :class:`QmfPair`
    :param N: series length, defaults to 2^J
    :returns: a :class:`ScoreReport`
    """
    if _debug: _log.debug("score_S %r %r %r", model, tree, qmf)

    N = tree.N if N is None else N
    return ExactScorer(model, N, tol).score(tree, qmf)

#
#   Simulated scores
#


def _correlation_block(rho, size):
    return linalg.toeplitz(rho[:size])


def averaged_correlation(series):
    """Sample autocorrelations to lag N/2, the unbiased autocovariances are
    averaged over the replicates first."""
    series = np.atleast_2d(series)
    N = series.shape[-1]
    acv = sample_acv(series, N // 2).mean(axis=0)
    if acv[0] <= 0.0:
        raise ZeroVariance("averaged sample variance")
    return acv / acv[0]


def b_score(rho, series):
    """Squared Hilbert-Schmidt distance between the exact correlation block
    of lags 0 .. N/2 and the one built from simulated series."""
    rho_bar = averaged_correlation(series)
    size = len(rho_bar)
    return hs_error(_correlation_block(rho_bar, size), _correlation_block(rho, size))


def score_B(model, tree, qmf, N=None, replicates=DEFAULT_REPLICATES, seed=DEFAULT_SEED,
        tol=DEFAULT_TOL, acv_tol=DEFAULT_ACV_TOL):
    """
    The simulation score of a basis and its penalized version
    B_pen = B + lambda #B.

    :returns: a tuple (B, B_pen)
    """
    if _debug: _log.debug("score_B %r %r %r %r %r", model, tree, qmf, replicates, seed)

    N = tree.N if N is None else N
    if N != tree.N:
        raise DimensionMismatch("N=%r for a depth %d tree" % (N, tree.J))

    gamma = covariance_matrix(model, N, acv_tol)
    omega = correlation_from_covariance(gamma)
    weight = lambda_weight(omega)

    series = simulate_wp(SimConfig(model, tree, qmf, seed=seed, replicates=replicates, tol=tol))
    B = b_score(omega[0], series)
    return B, B + weight * tree.leaf_count()


def score_B_hosking(model, N, replicates=DEFAULT_REPLICATES, seed=DEFAULT_SEED, tol=DEFAULT_ACV_TOL):
    """The simulation score of the exact simulator, the reference level of
    :func:`score_B`."""
    if _debug: _log.debug("score_B_hosking %r %r %r %r", model, N, replicates, seed)

    gamma = covariance_matrix(model, N, tol)
    rho = gamma[0] / gamma[0, 0]
    return b_score(rho, simulate_hosking(model, N, seed=seed, replicates=replicates, tol=tol))

#
#   Decay of the coefficient covariances
#


def vanishing_R(p, j, q):
    """
    Vanishing moments of packet (j, p) built from a filter with q vanishing
    moments, q times the number of ones in p, one for the scaling packet.
    """
    if not (0 <= p < 2 ** j):
        raise ValueError("frequency index %r out of range at depth %r" % (p, j))
    if p == 0:
        return 1
    return q * bin(p).count('1')


def _fit_envelope(distance, value):
    """Least squares slope of the log of the per bin maximum against the
    log distance.  Returns None when fewer than three bins are filled."""
    keep = value > 0.0
    distance, value = distance[keep], value[keep]
    if len(distance) < 3:
        return None

    log_distance = np.log(distance)
    edges = np.linspace(log_distance.min(), log_distance.max(), DECAY_BINS + 1)
    which = np.clip(np.digitize(log_distance, edges) - 1, 0, DECAY_BINS - 1)

    xs, ys = [], []
    for b in range(DECAY_BINS):
        members = which == b
        if not np.any(members):
            continue
        top = np.argmax(np.where(members, value, -np.inf))
        xs.append(log_distance[top])
        ys.append(math.log(value[top]))

    if len(xs) < 3:
        return None
    slope, _ = np.polyfit(xs, ys, 1)
    return float(slope)


def decay_check(model, qmf, tree, N=None, pairs=None, tol=DEFAULT_ACV_TOL):
    """
    Compare the decay of the exact coefficient covariances with the rate
    predicted for each packet pair.  Only coefficient pairs whose time
    distance |2^j1 k1 - 2^j2 k2| exceeds the filter overlap radius are used,
    the distance is circular since the transform is periodic.  The fitted
    exponent is a consistency check of an upper bound, not an exact rate.

    :param model: a one factor :class:`GegenbauerModel`
    :param qmf: a :class:`QmfPair`
    :param tree: a :class:`WpTree`
    :param N: series length, defaults to 2^J
    :param pairs: list of (leaf, leaf) tuples, by default every leaf with itself
    :returns: a list of (DecayPrediction, fitted exponent) tuples
    """
    if _debug: _log.debug("decay_check %r %r %r", model, qmf, tree)

    if model.k != 1:
        raise InvalidModel("the decay check needs a one factor model")
    N = tree.N if N is None else N
    if N != tree.N:
        raise DimensionMismatch("N=%r for a depth %d tree" % (N, tree.J))

    d = model.ds[0]
    gamma_b = wp_covariance(covariance_matrix(model, N, tol), tree, qmf)
    offsets = tree.offsets()

    explicit = pairs is not None
    if pairs is None:
        pairs = [(leaf, leaf) for leaf in tree.leaves]

    results = []
    for first, second in pairs:
        first, second = WpNode(*first), WpNode(*second)
        if not (tree.is_leaf(first) and tree.is_leaf(second)):
            raise ValueError("not a pair of leaves: %r %r" % (first, second))

        prediction = DecayPrediction(first, second, d, qmf.q, qmf.n_star)

        k1 = np.arange(2 ** (tree.J - first.j))
        k2 = np.arange(2 ** (tree.J - second.j))
        alpha = np.subtract.outer(2 ** first.j * k1, 2 ** second.j * k2)
        alpha = np.abs((alpha + N // 2) % N - N // 2)

        block = gamma_b[offsets[first]:offsets[first] + len(k1), offsets[second]:offsets[second] + len(k2)]
        admissible = alpha > prediction.radius
        fitted = _fit_envelope(alpha[admissible].astype(float), np.abs(block[admissible]))

        if fitted is None:
            if explicit:
                raise InsufficientPairs("(%d,%d) (%d,%d)" % (first + second))
            continue
        if _debug: _log.debug("    - %r fitted %r", prediction, fitted)
        results.append((prediction, fitted))

    if not results:
        raise InsufficientPairs("no packet pair has enough distant coefficients")
    return results
