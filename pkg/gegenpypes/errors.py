#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Errors
======

Every failure raised by the library is a :class:`GegenpypesException`.  The
error code selects the message text and the exit status of the command line
front end, 1 for bad input and 2 for numerical failures.
"""

from bacpypes.debugging import ModuleLogger

# some debugging
_debug = 0
_log = ModuleLogger(globals())

# exit status
EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2

#
#   GegenpypesException
#


class GegenpypesException(RuntimeError):

    """Helper class for exceptions."""

    UNSUPPORTED_FAMILY_ORDER    = 0x01
    LENGTH_MISMATCH             = 0x02
    INVALID_TREE                = 0x03
    SINGULAR_FREQUENCY          = 0x04
    INVALID_MODEL               = 0x05
    INVALID_FREQUENCY           = 0x06
    DUPLICATE_FREQUENCY         = 0x07
    DIMENSION_MISMATCH          = 0x08
    QUADRATURE_FAILURE          = 0x81
    NON_POSITIVE_DEFINITE       = 0x82
    BASIS_NOT_FOUND             = 0x83
    INSUFFICIENT_PAIRS          = 0x84
    ZERO_VARIANCE               = 0x85

    _exceptionText = {
        UNSUPPORTED_FAMILY_ORDER: "unsupported filter family or order",
        LENGTH_MISMATCH: "signal length does not match the tree",
        INVALID_TREE: "invalid wavelet packet tree",
        SINGULAR_FREQUENCY: "frequency coincides with a Gegenbauer frequency",
        INVALID_MODEL: "invalid Gegenbauer model",
        INVALID_FREQUENCY: "frequency outside [0, 1/2]",
        DUPLICATE_FREQUENCY: "duplicate Gegenbauer frequency",
        DIMENSION_MISMATCH: "matrix dimension mismatch",
        QUADRATURE_FAILURE: "quadrature failed to reach the tolerance",
        NON_POSITIVE_DEFINITE: "autocovariance is not positive definite",
        BASIS_NOT_FOUND: "no orthonormal basis could be built",
        INSUFFICIENT_PAIRS: "no coefficient pair satisfies the support condition",
        ZERO_VARIANCE: "zero variance on the diagonal",
        }

    errCode = None

    def __init__(self, *args):
        text = GegenpypesException._exceptionText.get(
            self.errCode,
            "unknown exception %r" % (self.errCode,),
            )
        self.args = (text,) + args

    @property
    def exit_status(self):
        """Exit status of the command line front end for this error."""
        if self.errCode is not None and self.errCode & 0x80:
            return EXIT_NUMERICAL
        return EXIT_VALIDATION

    def __str__(self):
        return ": ".join(str(arg) for arg in self.args)

#
#   Validation errors
#


class UnsupportedFamilyOrder(GegenpypesException):
    errCode = GegenpypesException.UNSUPPORTED_FAMILY_ORDER


class LengthMismatch(GegenpypesException):
    errCode = GegenpypesException.LENGTH_MISMATCH


class InvalidTree(GegenpypesException):
    errCode = GegenpypesException.INVALID_TREE


class SingularFrequency(GegenpypesException):
    errCode = GegenpypesException.SINGULAR_FREQUENCY


class InvalidModel(GegenpypesException):
    errCode = GegenpypesException.INVALID_MODEL


class InvalidFrequency(GegenpypesException):
    errCode = GegenpypesException.INVALID_FREQUENCY


class DuplicateFrequency(GegenpypesException):
    errCode = GegenpypesException.DUPLICATE_FREQUENCY


class DimensionMismatch(GegenpypesException):
    errCode = GegenpypesException.DIMENSION_MISMATCH

#
#   Numerical failures
#


class QuadratureFailure(GegenpypesException):
    errCode = GegenpypesException.QUADRATURE_FAILURE


class NonPositiveDefinite(GegenpypesException):
    errCode = GegenpypesException.NON_POSITIVE_DEFINITE


class BasisNotFound(GegenpypesException):
    errCode = GegenpypesException.BASIS_NOT_FOUND


class InsufficientPairs(GegenpypesException):
    errCode = GegenpypesException.INSUFFICIENT_PAIRS


class ZeroVariance(GegenpypesException):
    errCode = GegenpypesException.ZERO_VARIANCE
