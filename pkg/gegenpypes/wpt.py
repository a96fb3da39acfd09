#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Wavelet Packet Transform
========================

Binary packet trees, the sequency ordered periodic filter bank and explicit
transform matrices.  Node (j, p) covers the frequency band
[p / 2^(j+1), (p+1) / 2^(j+1)] of the Nyquist interval [0, 1/2].
"""

import json
from collections import namedtuple

import numpy as np

from bacpypes.debugging import bacpypes_debugging, DebugContents, ModuleLogger

from .errors import LengthMismatch, InvalidTree
from .filters import squared_gain

# some debugging
_debug = 0
_log = ModuleLogger(globals())

#
#   Sequency ordering
#


def gray_code(p):
    """Natural filter bank position of the packet with frequency index p."""
    return p ^ (p >> 1)


def gray_permutation(j):
    """
    The permutation that lists the natural (Paley) ordered packets of depth
    j in sequency order, element p is the filter bank position of the packet
    whose band is [p / 2^(j+1), (p+1) / 2^(j+1)].

    :param j: depth
    :returns: integer array of length 2^j
    """
    p = np.arange(2 ** j)
    return p ^ (p >> 1)


def filter_path(j, p):
    """Return the list of 'low'/'high' filters applied, first stage first,
    to reach packet (j, p)."""
    natural = gray_code(p)
    return [
        'high' if (natural >> (j - 1 - stage)) & 1 else 'low'
        for stage in range(j)
        ]


def cascade_squared_gain(qmf, j, p, lam, normalized=False):
    """
    Squared gain of the equivalent filter of packet (j, p), the product of
    the stage gains evaluated at 2^l lam along the filter path.

    :param qmf: a :class:`QmfPair`
    :param j: depth
    :param p: frequency index
    :param lam: frequency, scalar or array
    :param normalized: divide by 2^j so that the peak gain is one
    """
    lam = np.asarray(lam, dtype=float)
    gain = np.ones_like(lam)
    for stage, which in enumerate(filter_path(j, p)):
        gain = gain * squared_gain(qmf, which, (2.0 ** stage) * lam)
    if normalized:
        gain = gain / (2.0 ** j)

    if gain.ndim == 0:
        return float(gain)
    return gain

#
#   WpNode
#


class WpNode(namedtuple('WpNode', 'j p')):

    """A node of the packet tree, j is the depth and p the frequency index."""

    __slots__ = ()

    @property
    def band(self):
        """The nominal frequency band as a (low, high) tuple."""
        width = 1.0 / 2 ** (self.j + 1)
        return (self.p * width, (self.p + 1) * width)

    def ancestor(self, depth):
        """The ancestor of this node at a smaller or equal depth."""
        return WpNode(depth, self.p >> (self.j - depth))

    def children(self):
        return (WpNode(self.j + 1, 2 * self.p), WpNode(self.j + 1, 2 * self.p + 1))

    def edge_key(self, J):
        """Integer lower band edge in units of 1 / 2^(J+1), used for ordering."""
        return self.p << (J - self.j)

#
#   WpTree
#


@bacpypes_debugging
class WpTree(DebugContents):

    """
    A wavelet packet basis, the leaves of a binary tree of depth at most J
    whose bands tile [0, 1/2].
    """

    _debug_contents = ('J', 'leaves')

    def __init__(self, J, leaves):
        if _debug: WpTree._debug("__init__ %r ...", J)

        self.J = int(J)
        nodes = set(WpNode(int(j), int(p)) for j, p in leaves)

        self._validate(nodes)
        self.leaves = tuple(sorted(nodes, key=lambda node: (node.edge_key(self.J), node.j)))
        self._leaf_set = frozenset(self.leaves)
        self._internal = frozenset(
            leaf.ancestor(depth)
            for leaf in self.leaves
            for depth in range(leaf.j)
            )

    def _validate(self, leaf_set):
        if self.J < 0:
            raise InvalidTree("negative depth %r" % (self.J,))
        if not leaf_set:
            raise InvalidTree("no leaves")

        total = 0
        for leaf in leaf_set:
            if not (0 <= leaf.j <= self.J):
                raise InvalidTree("leaf deeper than J: %r" % (leaf,))
            if not (0 <= leaf.p < 2 ** leaf.j):
                raise InvalidTree("frequency index out of range: %r" % (leaf,))
            for depth in range(leaf.j):
                if leaf.ancestor(depth) in leaf_set:
                    raise InvalidTree("overlapping leaves: %r" % (leaf,))
            total += 2 ** (self.J - leaf.j)

        if total != 2 ** self.J:
            raise InvalidTree("leaves do not tile [0, 1/2]")

    @property
    def N(self):
        return 2 ** self.J

    def is_leaf(self, node):
        return node in self._leaf_set

    def is_internal(self, node):
        return node in self._internal

    def leaf_count(self):
        return len(self.leaves)

    def offsets(self):
        """Map each leaf to the position of its first coefficient in the
        concatenated coefficient vector."""
        offsets = {}
        position = 0
        for leaf in self.leaves:
            offsets[leaf] = position
            position += 2 ** (self.J - leaf.j)
        return offsets

    def to_json(self):
        return json.dumps({
            'J': self.J,
            'leaves': [[leaf.j, leaf.p] for leaf in self.leaves],
            })

    @classmethod
    def from_json(cls, text):
        content = json.loads(text)
        return cls(content['J'], [tuple(leaf) for leaf in content['leaves']])

    def __eq__(self, other):
        if not isinstance(other, WpTree):
            return NotImplemented
        return (self.J == other.J) and (self.leaves == other.leaves)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.J, self.leaves))

    def __repr__(self):
        return "<%s J=%d leaves=%s>" % (
            self.__class__.__name__, self.J,
            ",".join("(%d,%d)" % leaf for leaf in self.leaves),
            )

#
#   Tree constructors
#


def root_tree(J):
    """The identity basis, a single leaf at the root."""
    return WpTree(J, [(0, 0)])


def full_tree(J, depth=None):
    """Every packet at one depth, the default is the Shannon basis at J."""
    if depth is None:
        depth = J
    return WpTree(J, [(depth, p) for p in range(2 ** depth)])


def wavelet_tree(J, depth=None):
    """The dyadic wavelet basis, details (j, 1) and the scaling packet."""
    if depth is None:
        depth = J
    leaves = [(j, 1) for j in range(1, depth + 1)]
    leaves.append((depth, 0))
    return WpTree(J, leaves)


def random_tree(J, rng, split_probability=0.6):
    """A random admissible tree, each node splits with the given probability."""
    leaves = []
    pending = [WpNode(0, 0)]
    while pending:
        node = pending.pop()
        if (node.j < J) and (rng.random() < split_probability):
            pending.extend(node.children())
        else:
            leaves.append(node)
    return WpTree(J, leaves)

#
#   WpCoefficients
#


@bacpypes_debugging
class WpCoefficients(DebugContents):

    """
    Coefficient vectors W_j^p(n), one per leaf.  The vectors may carry
    extra trailing dimensions, the coefficient index is always axis 0.
    """

    _debug_contents = ('tree',)

    def __init__(self, tree, vectors):
        if _debug: WpCoefficients._debug("__init__ %r ...", tree)

        self.tree = tree
        self.vectors = {}
        for leaf in tree.leaves:
            vector = np.asarray(vectors[leaf], dtype=float)
            if vector.shape[0] != 2 ** (tree.J - leaf.j):
                raise LengthMismatch("leaf %r has %d coefficients" % (leaf, vector.shape[0]))
            self.vectors[leaf] = vector

    def __getitem__(self, leaf):
        return self.vectors[WpNode(*leaf)]

    def as_vector(self):
        """Concatenate the leaf vectors, leaves ordered by band."""
        return np.concatenate([self.vectors[leaf] for leaf in self.tree.leaves], axis=0)

    @classmethod
    def from_vector(cls, tree, vector):
        vector = np.asarray(vector, dtype=float)
        if vector.shape[0] != tree.N:
            raise LengthMismatch("expected %d coefficients, got %d" % (tree.N, vector.shape[0]))

        vectors = {}
        for leaf, offset in tree.offsets().items():
            vectors[leaf] = vector[offset:offset + 2 ** (tree.J - leaf.j)]
        return cls(tree, vectors)

    def energy(self):
        return sum(float(np.sum(vector ** 2)) for vector in self.vectors.values())

#
#   Filter bank
#


def _child_filters(node):
    """Filters giving the (2p, 2p+1) children, swapped below odd packets."""
    if node.p % 2 == 0:
        return ('low', 'high')
    return ('high', 'low')


def _analysis_step(x, coeffs, first):
    """Circular filter and keep the even samples, y(k) = sum_n c(n) x(2k + n)."""
    n = x.shape[0]
    base = 2 * np.arange(n // 2)
    y = np.zeros((n // 2,) + x.shape[1:])
    for m, c in enumerate(coeffs):
        y += c * x[(base + first + m) % n]
    return y


def _synthesis_step(y, coeffs, first):
    """Adjoint of :func:`_analysis_step`."""
    half = y.shape[0]
    n = 2 * half
    base = 2 * np.arange(half)
    x = np.zeros((n,) + y.shape[1:])
    for m, c in enumerate(coeffs):
        x[(base + first + m) % n] += c * y
    return x


def analyze(signal, tree, qmf):
    """
    Wavelet packet analysis of a length 2^J signal along a tree.

    :param signal: array with the time index on axis 0
    :param tree: a :class:`WpTree`
    :param qmf: a :class:`QmfPair`
    :returns: a :class:`WpCoefficients`
    """
    if _debug: _log.debug("analyze ... %r %r", tree, qmf)

    signal = np.asarray(signal, dtype=float)
    if signal.shape[0] != tree.N:
        raise LengthMismatch("signal length %d, tree needs %d" % (signal.shape[0], tree.N))

    vectors = {}
    pending = [(WpNode(0, 0), signal)]
    while pending:
        node, data = pending.pop()
        if tree.is_leaf(node):
            vectors[node] = data
            continue

        for child, which in zip(node.children(), _child_filters(node)):
            coeffs, first = qmf.coefficients(which)
            pending.append((child, _analysis_step(data, coeffs, first)))

    return WpCoefficients(tree, vectors)


def synthesize(coeffs, qmf):
    """
    Inverse of :func:`analyze` for the same tree and filter.

    :param coeffs: a :class:`WpCoefficients`
    :param qmf: a :class:`QmfPair`
    :returns: the signal, time index on axis 0
    """
    tree = coeffs.tree
    if _debug: _log.debug("synthesize ... %r %r", tree, qmf)

    def build(node):
        if tree.is_leaf(node):
            return coeffs.vectors[node]
        if not tree.is_internal(node):
            raise InvalidTree("node %r is not covered by the tree" % (node,))

        data = None
        for child, which in zip(node.children(), _child_filters(node)):
            filt, first = qmf.coefficients(which)
            part = _synthesis_step(build(child), filt, first)
            data = part if data is None else data + part
        return data

    return build(WpNode(0, 0))


def transform_matrix(tree, qmf, N):
    """
    The N x N matrix whose columns are the basis vectors of the tree, in the
    order of the concatenated coefficient vector.

    :param tree: a :class:`WpTree`
    :param qmf: a :class:`QmfPair`
    :param N: series length, must equal 2^J
    """
    if N != tree.N:
        raise LengthMismatch("N=%r for a depth %d tree" % (N, tree.J))

    return synthesize(WpCoefficients.from_vector(tree, np.eye(N)), qmf)
