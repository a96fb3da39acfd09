#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Gegenbauer Processes
====================

The k-factor Gegenbauer model, its spectral density

    f(lam) = sigma2 / (2 pi) prod_i [4 (cos 2 pi lam - cos 2 pi nu_i)^2]^(-d_i)

band-pass variances and exact autocovariances.  The spectral density is
integrable but unbounded at every nu_i, so integrals are split at the
singular frequencies and the subintervals touching one are integrated after
the change of variable u = |lam - nu|^(1 - alpha), alpha being the local
exponent of the singularity.
"""

import os
import math
import warnings
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy import integrate, linalg

from bacpypes.debugging import bacpypes_debugging, DebugContents, ModuleLogger

from .errors import InvalidModel, DuplicateFrequency, SingularFrequency, \
    QuadratureFailure, NonPositiveDefinite

# some debugging
_debug = 0
_log = ModuleLogger(globals())

# settings
DEFAULT_TOL = float(os.getenv('GEGENPYPES_TOL', 1e-8))
DEFAULT_ACV_TOL = float(os.getenv('GEGENPYPES_ACV_TOL', 1e-7))
DEFAULT_SIGMA2 = float(os.getenv('GEGENPYPES_SIGMA2', 2.0 * math.pi))
CACHE_SIZE = int(os.getenv('GEGENPYPES_CACHE_SIZE', 2 ** 15))

# quadrature subdivision limit
QUAD_LIMIT = 400

# frequencies closer than this are the same frequency
FREQUENCY_EPS = 1e-14

#
#   GegenbauerModel
#


@bacpypes_debugging
class GegenbauerModel(DebugContents):

    """
    A k-factor Gegenbauer process, a list of (d, nu) factors and the
    innovation variance sigma2.
    """

    _debug_contents = ('factors', 'sigma2')

    def __init__(self, factors=(), sigma2=DEFAULT_SIGMA2):
        if _debug: GegenbauerModel._debug("__init__ %r %r", factors, sigma2)

        self.factors = tuple((float(d), float(Fraction(nu) if isinstance(nu, str) else nu))
            for d, nu in factors)
        self.sigma2 = float(sigma2)
        self._validate()

    def _validate(self):
        if not (self.sigma2 > 0.0):
            raise InvalidModel("innovation variance must be positive: %r" % (self.sigma2,))

        for d, nu in self.factors:
            if not (0.0 <= nu <= 0.5):
                raise InvalidModel("Gegenbauer frequency outside [0, 1/2]: %r" % (nu,))
            bound = 0.25 if self._is_edge(nu) else 0.5
            if not (0.0 < d < bound):
                raise InvalidModel("memory parameter %r not in (0, %r) for nu=%r" % (d, bound, nu))

        nus = sorted(self.nus)
        for first, second in zip(nus[:-1], nus[1:]):
            if second - first < FREQUENCY_EPS:
                raise DuplicateFrequency(second)

    @staticmethod
    def _is_edge(nu):
        # the symmetric pair of singularities merges at 0 and 1/2
        return (nu < FREQUENCY_EPS) or (0.5 - nu < FREQUENCY_EPS)

    @property
    def k(self):
        return len(self.factors)

    @property
    def ds(self):
        return tuple(d for d, nu in self.factors)

    @property
    def nus(self):
        return tuple(nu for d, nu in self.factors)

    @property
    def etas(self):
        return tuple(math.cos(2.0 * math.pi * nu) for nu in self.nus)

    def singular_exponent(self, i):
        """Local exponent alpha of f ~ |lam - nu_i|^(-alpha) near nu_i."""
        d, nu = self.factors[i]
        return 4.0 * d if self._is_edge(nu) else 2.0 * d

    def scaled(self, factor):
        """The same process with the innovation variance multiplied."""
        return GegenbauerModel(self.factors, self.sigma2 * factor)

    def __eq__(self, other):
        if not isinstance(other, GegenbauerModel):
            return NotImplemented
        return (self.factors == other.factors) and (self.sigma2 == other.sigma2)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.factors, self.sigma2))

    def __repr__(self):
        return "<%s %s sigma2=%r>" % (
            self.__class__.__name__,
            " ".join("(d=%r,nu=%r)" % factor for factor in self.factors) or "white",
            self.sigma2,
            )

#
#   AcvTable
#


class AcvTable(DebugContents):

    """Autocovariances gamma(0..H_max) of a model."""

    _debug_contents = ('model', 'method', 'tol')

    def __init__(self, model, gamma, method='quadrature', tol=DEFAULT_ACV_TOL):
        self.model = model
        gamma = np.array(gamma, dtype=float)
        gamma.setflags(write=False)
        self.gamma = gamma
        self.method = method
        self.tol = tol

    @property
    def h_max(self):
        return len(self.gamma) - 1

    @property
    def rho(self):
        return self.gamma / self.gamma[0]

    def __getitem__(self, h):
        return self.gamma[abs(h)]

#
#   Spectral density
#


def _log_psd(model, lam, anchor=None, offset=None):
    """Logarithm of the spectral density.  When anchor is a factor index the
    frequency is nu_anchor + offset and the anchor factor is evaluated from
    the offset directly, which keeps full precision next to the singularity.
    """
    if anchor is not None:
        lam = model.factors[anchor][1] + offset

    value = math.log(model.sigma2 / (2.0 * math.pi))
    for i, (d, nu) in enumerate(model.factors):
        if i == anchor:
            near = abs(math.sin(math.pi * offset))
            if model._is_edge(nu):
                far = near
            else:
                far = abs(math.sin(math.pi * (2.0 * nu + offset)))
        else:
            near = abs(math.sin(math.pi * (lam - nu)))
            far = abs(math.sin(math.pi * (lam + nu)))

        # 4 (cos 2 pi lam - cos 2 pi nu)^2 = 16 sin^2 pi(lam+nu) sin^2 pi(lam-nu)
        value -= d * (math.log(16.0) + 2.0 * math.log(far) + 2.0 * math.log(near))

    return value


def psd(model, lam):
    """
    Spectral density of the model at frequency lam in [0, 1/2].

    :param model: a :class:`GegenbauerModel`
    :param lam: frequency in cycles per sample
    :returns: f(lam)
    """
    lam = float(lam)
    for nu in model.nus:
        if abs(lam - nu) < FREQUENCY_EPS:
            raise SingularFrequency(lam)

    return math.exp(_log_psd(model, lam))

#
#   Singularity aware quadrature
#


def _quad(func, a, b, tol, epsabs, lag=0):
    """Run QUADPACK and raise QuadratureFailure when it stalls."""
    kwargs = dict(full_output=1, epsabs=epsabs, epsrel=tol, limit=QUAD_LIMIT)
    if lag:
        kwargs.update(weight='cos', wvar=2.0 * math.pi * lag)

    with warnings.catch_warnings():
        warnings.simplefilter('ignore', integrate.IntegrationWarning)
        result = integrate.quad(func, a, b, **kwargs)

    value, abserr = result[0], result[1]
    if (len(result) > 3) and (abserr > 10.0 * max(epsabs, tol * abs(value))):
        raise QuadratureFailure("[%r, %r] lag %r: %r +/- %r" % (a, b, lag, value, abserr))
    return value


def _singular_panel(model, anchor, side, width, lag, tol, epsabs):
    """Integral of f(lam) cos(2 pi lag lam) over [nu, nu + width] (side=+1)
    or [nu - width, nu] (side=-1), nu being the anchor frequency."""
    nu = model.factors[anchor][1]
    alpha = model.singular_exponent(anchor)
    power = 1.0 - alpha

    def integrand(u):
        # lam - nu = side * u^(1 / power), dlam = u^(alpha / power) du / power
        log_delta = math.log(max(u, 1e-300)) / power
        delta = math.exp(log_delta)
        value = math.exp(_log_psd(model, None, anchor, side * delta) + alpha * log_delta) / power
        if lag:
            value *= math.cos(2.0 * math.pi * lag * (nu + side * delta))
        return value

    return _quad(integrand, 0.0, width ** power, tol, epsabs)


def _regular_panel(model, a, b, lag, tol, epsabs):
    def integrand(lam):
        return math.exp(_log_psd(model, lam))

    return _quad(integrand, a, b, tol, epsabs, lag=lag)


def _singular_index(model, lam):
    for i, nu in enumerate(model.nus):
        if abs(lam - nu) < FREQUENCY_EPS:
            return i
    return None


def spectral_integral(model, a, b, lag=0, tol=DEFAULT_TOL, epsabs=0.0):
    """
    The integral of f(lam) cos(2 pi lag lam) over [a, b], a subinterval of
    [0, 1/2].  The interval is split at every interior Gegenbauer frequency,
    and near a singular endpoint the panel width is capped at 1 / (8 lag) so
    the substituted panels see less than a quarter period of the cosine.
    """
    if _debug: _log.debug("spectral_integral %r %r %r %r", a, b, lag, tol)

    points = [a] + sorted(nu for nu in model.nus if a + FREQUENCY_EPS < nu < b - FREQUENCY_EPS) + [b]
    cap = 1.0 / (8.0 * lag) if lag else float('inf')

    total = 0.0
    for lo, hi in zip(points[:-1], points[1:]):
        lo_index = _singular_index(model, lo)
        hi_index = _singular_index(model, hi)
        width = hi - lo
        reach = width / 2.0 if (lo_index is not None and hi_index is not None) else width

        start, stop = lo, hi
        if lo_index is not None:
            span = min(reach, cap)
            total += _singular_panel(model, lo_index, +1, span, lag, tol, epsabs)
            start = lo + span
        if hi_index is not None:
            span = min(reach, cap)
            total += _singular_panel(model, hi_index, -1, span, lag, tol, epsabs)
            stop = hi - span

        if stop - start > FREQUENCY_EPS * max(1.0, width):
            total += _regular_panel(model, start, stop, lag, tol, epsabs)

    return total

#
#   Band-pass variances and autocovariances
#


@lru_cache(maxsize=CACHE_SIZE)
def band_pass_variance(model, j, p, tol=DEFAULT_TOL):
    """
    Twice the integral of the spectral density over the band of packet (j, p),
    the variance carried by that band.

    :param model: a :class:`GegenbauerModel`
    :param j: depth
    :param p: frequency index, 0 <= p < 2^j
    :param tol: relative tolerance
    :returns: beta^2_{j,p}
    """
    if not (0 <= p < 2 ** j):
        raise ValueError("frequency index %r out of range at depth %r" % (p, j))

    width = 1.0 / 2 ** (j + 1)
    return 2.0 * spectral_integral(model, p * width, (p + 1) * width, tol=tol)


def leaf_variances(model, tree, tol=DEFAULT_TOL):
    """
    Band-pass variances of the leaves of a tree.

    :returns: a dict leaf -> (beta^2, sigma^2) with sigma^2 = 2^j beta^2 the
        variance of each coefficient of the leaf
    """
    variances = {}
    for leaf in tree.leaves:
        beta2 = band_pass_variance(model, leaf.j, leaf.p, tol)
        variances[leaf] = (beta2, (2.0 ** leaf.j) * beta2)
    return variances


@lru_cache(maxsize=256)
def _variance(model, tol):
    return 2.0 * spectral_integral(model, 0.0, 0.5, tol=tol)


@lru_cache(maxsize=CACHE_SIZE)
def _autocovariance_lag(model, lag, tol):
    gamma0 = _variance(model, tol)
    if lag == 0:
        return gamma0
    return 2.0 * spectral_integral(model, 0.0, 0.5, lag=lag, tol=tol, epsabs=0.1 * tol * gamma0)


def autocovariance(model, h_max, tol=DEFAULT_ACV_TOL):
    """
    Exact autocovariances gamma(h) = 2 int_0^(1/2) f(lam) cos(2 pi lam h) dlam
    for h = 0 .. h_max.

    :param model: a :class:`GegenbauerModel`
    :param h_max: largest lag
    :param tol: relative tolerance
    :returns: an :class:`AcvTable`
    """
    if _debug: _log.debug("autocovariance %r %r %r", model, h_max, tol)
    if h_max < 0:
        raise ValueError("negative lag %r" % (h_max,))

    gamma = np.array([_autocovariance_lag(model, h, tol) for h in range(h_max + 1)])

    if not (gamma[0] > 0.0):
        raise QuadratureFailure("non-positive variance %r" % (gamma[0],))
    if np.any(np.abs(gamma) > gamma[0] * (1.0 + 10.0 * tol)):
        raise QuadratureFailure("autocovariance exceeds the variance")

    return AcvTable(model, gamma, tol=tol)


def acv_asymptote(d, nu, h):
    """The envelope reference h^(2d-1) cos(2 pi nu h) of a 1-factor model."""
    return h ** (2.0 * d - 1.0) * math.cos(2.0 * math.pi * nu * h)


def covariance_matrix(model, N, tol=DEFAULT_ACV_TOL, check=True):
    """
    The N x N Toeplitz covariance matrix of N consecutive samples.

    :param check: verify positive semidefiniteness numerically
    """
    if N < 1:
        raise ValueError("N must be positive")

    acv = autocovariance(model, N - 1, tol)
    gamma = linalg.toeplitz(acv.gamma)

    if check:
        smallest = np.linalg.eigvalsh(gamma)[0]
        if smallest < -1e-8 * acv.gamma[0]:
            raise NonPositiveDefinite("smallest eigenvalue %r" % (smallest,))

    return gamma
