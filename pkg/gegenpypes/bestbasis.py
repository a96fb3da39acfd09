#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Best Basis
==========

Best-ortho-basis construction for Gegenbauer processes.  The trees built by
:func:`best_basis_1factor` and :func:`best_basis_kfactor` only depend on the
Gegenbauer frequencies and the depth: the bands that hold a singularity are
refined down to the finest scale and every other band is kept as large as
possible.  The cost driven searches and the filter gain threshold baseline
are here for comparison.
"""

import math
from fractions import Fraction

import numpy as np

from bacpypes.debugging import bacpypes_debugging, DebugContents, ModuleLogger

from .errors import InvalidFrequency, DuplicateFrequency, BasisNotFound
from .wpt import WpNode, WpTree, cascade_squared_gain
from .gegenbauer import band_pass_variance, DEFAULT_TOL

# some debugging
_debug = 0
_log = ModuleLogger(globals())

# float frequencies this close to a dyadic edge are on the edge
EDGE_EPS = 1e-12

# relative slack of the split decision of the cost driven search
SPLIT_SLACK = 1e-6

# default gain threshold of the baseline construction
DEFAULT_THRESHOLD = 0.01

#
#   Frequencies
#


def as_frequency(nu):
    """
    Validate a Gegenbauer frequency.  Fractions and "a/b" strings are kept
    exact so dyadic edges are detected without rounding.

    :param nu: a number, a Fraction or a string
    :returns: a Fraction or a float in [0, 1/2]
    """
    if isinstance(nu, str):
        try:
            nu = Fraction(nu.strip())
        except (ValueError, ZeroDivisionError):
            raise InvalidFrequency(nu)
    elif isinstance(nu, int):
        nu = Fraction(nu)
    elif not isinstance(nu, Fraction):
        nu = float(nu)

    if not (0 <= nu <= Fraction(1, 2)):
        raise InvalidFrequency(nu)
    return nu


def _scaled_frequency(nu, j):
    """Position of nu in units of the depth j band width, snapped to the
    nearest integer when nu sits on a band edge."""
    if isinstance(nu, Fraction):
        return nu * 2 ** (j + 1)

    x = nu * 2.0 ** (j + 1)
    nearest = round(x)
    if abs(x - nearest) < EDGE_EPS:
        return nearest
    return x


def band_contains(node, nu):
    """True when nu lies in the closed band of the node."""
    x = _scaled_frequency(nu, node.j)
    return node.p <= x <= node.p + 1

#
#   TreeIndicator
#


@bacpypes_debugging
class TreeIndicator(DebugContents):

    """Binary marks Tree(j, p) over every node of a depth J tree."""

    _debug_contents = ('J',)

    def __init__(self, J):
        if _debug: TreeIndicator._debug("__init__ %r", J)

        self.J = J
        self.flags = [np.zeros(2 ** j, dtype=bool) for j in range(J + 1)]

    def mark(self, j, p):
        self.flags[j][p] = True

    def unmark(self, j, p):
        self.flags[j][p] = False

    def is_marked(self, j, p):
        return bool(self.flags[j][p])

    def union(self, other):
        """Logical OR with another indicator of the same depth."""
        if other.J != self.J:
            raise ValueError("depth mismatch")

        result = TreeIndicator(self.J)
        result.flags = [mine | theirs for mine, theirs in zip(self.flags, other.flags)]
        return result

    def prune(self):
        """Unmark every marked node that has a marked strict descendant."""
        if _debug: TreeIndicator._debug("prune")

        below = np.zeros(2 ** self.J, dtype=bool)
        for j in range(self.J - 1, -1, -1):
            children = self.flags[j + 1] | below
            below = children.reshape(-1, 2).any(axis=1)
            self.flags[j] &= ~below

    def marked(self):
        return [WpNode(j, int(p)) for j, flags in enumerate(self.flags) for p in np.flatnonzero(flags)]

    def to_tree(self):
        """The marked nodes as the leaves of a tree, raises InvalidTree when
        they do not tile [0, 1/2]."""
        return WpTree(self.J, self.marked())

#
#   Singularity driven construction
#


def _singularity_indicator(nu, J):
    """The marks of the one factor construction for a single frequency,
    before pruning."""
    indicator = TreeIndicator(J)

    for j in range(1, J + 1):
        x = _scaled_frequency(nu, j)

        # only the sibling pair around x, and the one before it when x is
        # on an even edge, can hold nu
        base = 2 * math.floor(x / 2)
        for p in (base - 2, base):
            if not (0 <= p < 2 ** j):
                continue
            # the sibling of a band holding nu is a leaf candidate
            if p <= x <= p + 1:
                indicator.mark(j, p + 1)
            if p + 1 <= x <= p + 2:
                indicator.mark(j, p)

    # the finest cells holding nu complete the tiling
    x = _scaled_frequency(nu, J)
    for p in (math.floor(x) - 1, math.floor(x)):
        if (0 <= p < 2 ** J) and (p <= x <= p + 1):
            indicator.mark(J, p)

    return indicator


def best_basis_1factor(nu, J):
    """
    The best-ortho-basis of a one factor process.

    :param nu: Gegenbauer frequency in [0, 1/2]
    :param J: depth, at least one
    :returns: a :class:`WpTree`
    """
    if _debug: _log.debug("best_basis_1factor %r %r", nu, J)
    if J < 1:
        raise ValueError("depth must be at least one")

    indicator = _singularity_indicator(as_frequency(nu), J)
    indicator.prune()
    return indicator.to_tree()


def _distinct_frequencies(nus):
    frequencies = [as_frequency(nu) for nu in nus]
    if not frequencies:
        raise InvalidFrequency("no frequency")

    ordered = sorted(frequencies)
    for first, second in zip(ordered[:-1], ordered[1:]):
        if first == second:
            raise DuplicateFrequency(second)
    return frequencies


def best_basis_kfactor(nus, J):
    """
    The best-ortho-basis of a k-factor process, the union of the one factor
    constructions pruned back to a basis.

    :param nus: distinct Gegenbauer frequencies in [0, 1/2]
    :param J: depth, at least one
    :returns: a :class:`WpTree`
    """
    if _debug: _log.debug("best_basis_kfactor %r %r", nus, J)
    if J < 1:
        raise ValueError("depth must be at least one")

    indicator = None
    for nu in _distinct_frequencies(nus):
        factor = _singularity_indicator(nu, J)
        indicator = factor if indicator is None else indicator.union(factor)

    indicator.prune()
    return indicator.to_tree()

#
#   CostSpec
#


class CostSpec(DebugContents):

    """The cost functional of :func:`cw_best_basis`."""

    VARIANCE_COMPARISON = 'variance-comparison'
    THRESHOLD_FUNCTIONAL = 'threshold'
    SINGULARITY_INDICATOR = 'indicator'

    KINDS = (VARIANCE_COMPARISON, THRESHOLD_FUNCTIONAL, SINGULARITY_INDICATOR)

    _debug_contents = ('kind', 'delta', 'ratio')

    def __init__(self, kind, delta=None, ratio=0.5):
        if kind not in self.KINDS:
            raise ValueError("unknown cost kind: %r" % (kind,))
        if kind == self.THRESHOLD_FUNCTIONAL and not (delta is not None and delta > 0):
            raise ValueError("the threshold functional needs a positive delta")
        if kind == self.VARIANCE_COMPARISON and not (0.0 < ratio < 1.0):
            raise ValueError("the variance ratio must be in (0, 1)")

        self.kind = kind
        self.delta = delta
        self.ratio = ratio

    @classmethod
    def indicator(cls):
        return cls(cls.SINGULARITY_INDICATOR)

    @classmethod
    def threshold(cls, delta):
        return cls(cls.THRESHOLD_FUNCTIONAL, delta=delta)

    @classmethod
    def variance_comparison(cls, ratio=0.5):
        return cls(cls.VARIANCE_COMPARISON, ratio=ratio)

    def __repr__(self):
        return "<%s %s>" % (self.__class__.__name__, self.kind)

#
#   Cost driven search
#


@bacpypes_debugging
class _CostSearch:

    """Band variances are computed on demand and cached for one search."""

    def __init__(self, model, J, cost, tol):
        if _debug: _CostSearch._debug("__init__ %r %r %r %r", model, J, cost, tol)

        self.model = model
        self.J = J
        self.cost = cost
        self.tol = tol
        self.nus = [as_frequency(nu) for nu in model.nus]

    def beta2(self, node):
        return band_pass_variance(self.model, node.j, node.p, self.tol)

    def node_cost(self, node):
        if self.cost.kind == CostSpec.SINGULARITY_INDICATOR:
            if any(band_contains(node, nu) for nu in self.nus):
                return self.beta2(node)
            return 0.0

        beta2 = self.beta2(node)
        if beta2 >= self.cost.delta:
            return beta2
        return 0.0

    def bottom_up(self, node):
        """Return (best cost, leaves) of the subtree at node."""
        cost = self.node_cost(node)
        if node.j == self.J:
            return cost, [node]

        # a node without cost can not get any cheaper
        if cost <= 0.0:
            return cost, [node]

        best = 0.0
        leaves = []
        for child in node.children():
            child_cost, child_leaves = self.bottom_up(child)
            best += child_cost
            leaves.extend(child_leaves)

        if best <= cost * (1.0 + SPLIT_SLACK):
            return best, leaves
        return cost, [node]

    def top_down(self, node):
        """The modified aggregation, split when one child variance is
        negligible against the other."""
        if node.j == self.J:
            return [node]

        low, high = node.children()
        low_var, high_var = self.beta2(low), self.beta2(high)
        ratio = self.cost.ratio
        if (low_var <= ratio * high_var) or (high_var <= ratio * low_var):
            return self.top_down(low) + self.top_down(high)
        return [node]


def cw_best_basis(model, J, cost, tol=DEFAULT_TOL):
    """
    A best basis search driven by band-pass variances.

    The threshold and indicator costs are additive and minimized bottom-up,
    a node with a positive cost is split when its children cost no more.
    The variance comparison is the modified aggregation, applied top-down.

    :param model: a :class:`GegenbauerModel`
    :param J: depth
    :param cost: a :class:`CostSpec`
    :param tol: band-pass variance tolerance
    :returns: a :class:`WpTree`
    """
    if _debug: _log.debug("cw_best_basis %r %r %r", model, J, cost)

    search = _CostSearch(model, J, cost, tol)
    if cost.kind == CostSpec.VARIANCE_COMPARISON:
        leaves = search.top_down(WpNode(0, 0))
    else:
        _, leaves = search.bottom_up(WpNode(0, 0))

    return WpTree(J, leaves)

#
#   Filter gain threshold baseline
#


def whitcher_basis(nus, qmf, J, threshold=DEFAULT_THRESHOLD):
    """
    The baseline construction, a node is kept when the squared gain of its
    equivalent filter is below the threshold at every Gegenbauer frequency,
    otherwise it is split.  The gain is not normalized, the passband of a
    packet at depth j peaks near 2^j, so the leakage of every filter on the
    path is amplified with depth and the packets around a singularity are
    split further than the variance criterion of :func:`best_basis_1factor`
    would split them.

    Spline filters are refused with :class:`BasisNotFound`.  Their truncated
    taps leave a gain floor that a fixed threshold cannot be tuned against,
    which is the known failure of this construction for spline wavelets.

    :param nus: Gegenbauer frequencies
    :param qmf: a :class:`QmfPair`
    :param J: depth
    :param threshold: gain threshold, positive
    :returns: a :class:`WpTree`
    """
    if _debug: _log.debug("whitcher_basis %r %r %r %r", nus, qmf, J, threshold)

    if not (threshold > 0):
        raise ValueError("threshold must be positive")
    if not qmf.compact:
        raise BasisNotFound("%s is not compactly supported" % (qmf.name,))

    frequencies = np.array([float(nu) for nu in _distinct_frequencies(nus)])

    leaves = []
    pending = [WpNode(0, 0)]
    while pending:
        node = pending.pop()
        gain = cascade_squared_gain(qmf, node.j, node.p, frequencies)
        if (node.j == J) or np.all(gain < threshold):
            leaves.append(node)
        else:
            pending.extend(node.children())

    return WpTree(J, leaves)

#
#   Inspection
#


def leaf_count(tree):
    """Number of packets in the basis."""
    return tree.leaf_count()


def render_partition(tree, max_columns=128):
    """
    Render a tree as rows of frequency bands, one row per depth.  A '#'
    marks a leaf, a '-' a node that is split and blanks are below a leaf.

    :param tree: a :class:`WpTree`
    :param max_columns: the band axis is sampled at most this many times
    :returns: a string
    """
    columns = min(2 ** tree.J, max_columns)
    lines = []
    for j in range(tree.J + 1):
        row = []
        for c in range(columns):
            node = WpNode(j, (c * 2 ** j) // columns)
            if tree.is_leaf(node):
                row.append('#')
            elif tree.is_internal(node):
                row.append('-')
            else:
                row.append(' ')
        lines.append("j=%-2d |%s|" % (j, ''.join(row)))

    axis = "0".ljust(columns // 2) + "1/4".ljust(columns - columns // 2 - 3) + "1/2"
    lines.append("      " + axis if columns >= 16 else "      0 .. 1/2")
    return "\n".join(lines)
