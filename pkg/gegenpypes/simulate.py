#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Simulation
==========

Gaussian realizations of Gegenbauer processes.  The wavelet packet simulator
draws independent coefficients with the band-pass variances of the leaves
and synthesizes them, the Hosking simulator is exact and serves as the
reference.

Replicate r of a run with a given seed draws from its own Philox stream
keyed by the seed sequence (seed, r), so a replicate does not depend on how
many others are generated.  Gaussian variates come from the ziggurat
sampler of :class:`numpy.random.Generator`.
"""

import os

import numpy as np

from bacpypes.debugging import DebugContents, ModuleLogger

from .errors import LengthMismatch, NonPositiveDefinite
from .wpt import WpCoefficients, synthesize
from .gegenbauer import leaf_variances, autocovariance, DEFAULT_TOL, DEFAULT_ACV_TOL

# some debugging
_debug = 0
_log = ModuleLogger(globals())

# settings
DEFAULT_SEED = int(os.getenv('GEGENPYPES_SEED', 0))
DEFAULT_REPLICATES = int(os.getenv('GEGENPYPES_REPLICATES', 500))

# sample autocovariance estimators
UNBIASED = 'unbiased'
BIASED = 'biased'


def replicate_generator(seed, replicate):
    """The random generator of one replicate."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, replicate])))

#
#   SimConfig
#


class SimConfig(DebugContents):

    """Everything the wavelet packet simulator needs."""

    _debug_contents = ('model', 'tree', 'qmf', 'seed', 'replicates', 'tol')

    def __init__(self, model, tree, qmf, seed=DEFAULT_SEED, replicates=DEFAULT_REPLICATES, tol=DEFAULT_TOL):
        if replicates < 1:
            raise ValueError("at least one replicate")
        if seed < 0:
            raise ValueError("the seed must not be negative")

        self.model = model
        self.tree = tree
        self.qmf = qmf
        self.seed = seed
        self.replicates = replicates
        self.tol = tol

    @property
    def N(self):
        return self.tree.N

#
#   Simulators
#


def simulate_wp(config):
    """
    Simulate by the wavelet packet transform.  Leaf (j, p) gets 2^(J-j)
    independent Gaussian coefficients of variance 2^j beta^2_{j,p}, the
    series is their synthesis.

    :param config: a :class:`SimConfig`
    :returns: an array of shape (replicates, N)
    """
    if _debug: _log.debug("simulate_wp %r", config)

    tree = config.tree
    variances = leaf_variances(config.model, tree, config.tol)
    scales = {leaf: np.sqrt(variances[leaf][1]) for leaf in tree.leaves}

    # one column per replicate, leaves drawn in band order
    vectors = {leaf: np.empty((2 ** (tree.J - leaf.j), config.replicates)) for leaf in tree.leaves}
    for r in range(config.replicates):
        rng = replicate_generator(config.seed, r)
        for leaf in tree.leaves:
            vectors[leaf][:, r] = scales[leaf] * rng.standard_normal(vectors[leaf].shape[0])

    series = synthesize(WpCoefficients(tree, vectors), config.qmf)
    return series.T


def durbin_levinson(gamma):
    """
    Prediction coefficients and innovation variances of a stationary series
    with autocovariances gamma(0..N-1).

    :returns: a list whose element t holds the coefficients of X(t-1), ...,
        X(0) in the best linear predictor of X(t), and the array of the
        innovation variances v(0..N-1)
    """
    gamma = np.asarray(gamma, dtype=float)
    N = len(gamma)

    phis = [np.zeros(0)]
    v = np.empty(N)
    v[0] = gamma[0]
    if v[0] <= 0.0:
        raise NonPositiveDefinite("innovation variance %r at t=0" % (v[0],))

    phi = np.zeros(0)
    for t in range(1, N):
        reflection = (gamma[t] - np.dot(phi, gamma[t - 1:0:-1])) / v[t - 1]
        phi = np.concatenate((phi - reflection * phi[::-1], [reflection]))
        v[t] = v[t - 1] * (1.0 - reflection ** 2)
        if v[t] <= 0.0:
            raise NonPositiveDefinite("innovation variance %r at t=%d" % (v[t], t))
        phis.append(phi.copy())

    return phis, v


def simulate_hosking(model, N, seed=DEFAULT_SEED, replicates=DEFAULT_REPLICATES, tol=DEFAULT_ACV_TOL):
    """
    Exact simulation, each sample is drawn from its Gaussian distribution
    conditional on the past.  The recursion is run once and shared by all
    replicates.

    :param model: a :class:`GegenbauerModel`
    :param N: series length
    :returns: an array of shape (replicates, N)
    """
    if _debug: _log.debug("simulate_hosking %r %r %r %r", model, N, seed, replicates)
    if N < 1 or replicates < 1:
        raise ValueError("N and replicates must be positive")

    acv = autocovariance(model, N - 1, tol)
    return _hosking_from_acv(acv.gamma, seed, replicates)


def _hosking_from_acv(gamma, seed, replicates):
    phis, v = durbin_levinson(gamma)
    N = len(gamma)

    noise = np.empty((replicates, N))
    for r in range(replicates):
        noise[r] = replicate_generator(seed, r).standard_normal(N)

    series = np.empty((replicates, N))
    scale = np.sqrt(v)
    for t in range(N):
        mean = series[:, t - 1::-1] @ phis[t] if t else 0.0
        series[:, t] = mean + scale[t] * noise[:, t]

    return series


def sample_acv(series, max_lag, estimator=UNBIASED):
    """
    Sample autocovariances after removing the sample mean.

    :param series: a series, or an array of series along the last axis
    :param max_lag: largest lag, less than the series length
    :param estimator: 'unbiased' divides lag h by N - h, 'biased' by N
    :returns: lags 0 .. max_lag along the last axis
    """
    x = np.asarray(series, dtype=float)
    N = x.shape[-1]
    if not (0 <= max_lag < N):
        raise LengthMismatch("max_lag %r for a series of length %d" % (max_lag, N))
    if estimator not in (UNBIASED, BIASED):
        raise ValueError("unknown estimator: %r" % (estimator,))

    x = x - x.mean(axis=-1, keepdims=True)
    acv = np.empty(x.shape[:-1] + (max_lag + 1,))
    for h in range(max_lag + 1):
        total = np.sum(x[..., :N - h] * x[..., h:], axis=-1)
        acv[..., h] = total / ((N - h) if estimator == UNBIASED else N)

    return acv
