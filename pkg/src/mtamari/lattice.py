"""The m-Tamari lattice on m-Dyck sequences.

Going *up* in the order decrements a primitive block, so the bottom element
is ``(0, m, 2m, ...)`` and the top is ``(0, 0, ..., 0)``.  Element IDs are
ranks in the lexicographic enumeration of :mod:`mtamari.paths`.

Order queries use Python ints as bitsets over element IDs.
"""

import json
from dataclasses import dataclass, field

from .errors import CapExceeded, EmptyIntervalError, InvariantViolation, NotACover, UsageError
from .paths import (bottom, check_sequence, fuss_catalan, iter_paths, parse_sequence,
                    primitive_subsequence, top)

DEFAULT_BUILD_CAP = 250_000
REACH_THRESHOLD = 20_000


def cover_move(seq, m, i):
    """Rotate at position i: decrement the primitive block starting at i+1.

    Requires ``a_i < a_{i+1}``; the result covers ``seq``.
    """
    n = len(seq)
    if not 1 <= i <= n - 1:
        raise UsageError("cover position %r out of range 1..%d" % (i, n - 1))
    if seq[i - 1] >= seq[i]:
        raise NotACover("no cover at position %d: a_%d = a_%d" % (i, i, i + 1))
    k = primitive_subsequence(seq, m, i + 1)
    return seq[:i] + tuple(v - 1 for v in seq[i:k]) + seq[k:]


def covers(seq, m):
    """All upper covers of ``seq`` as ``(i, target)`` pairs, ordered by i."""
    return [(i, cover_move(seq, m, i))
            for i in range(1, len(seq)) if seq[i - 1] < seq[i]]


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Lattice:
    """Immutable m-Tamari lattice T_n^(m) built for one (m, n).

    Attributes: ``m``, ``n``, ``elements`` (tuple of sequences, index = ID),
    ``index`` (sequence -> ID), ``up_covers`` / ``down_covers`` (per-ID
    tuples of ``(position, ID)``), ``zero`` and ``one``.
    """

    def __init__(self, m, n, elements, cover_triples, reach_threshold=REACH_THRESHOLD):
        self.m = m
        self.n = n
        self.elements = tuple(elements)
        self.index = {seq: k for k, seq in enumerate(self.elements)}
        up = [[] for _ in self.elements]
        down = [[] for _ in self.elements]
        for src, dst, pos in cover_triples:
            up[src].append((pos, dst))
            down[dst].append((pos, src))
        self.up_covers = tuple(tuple(sorted(x)) for x in up)
        self.down_covers = tuple(tuple(sorted(x)) for x in down)
        self.zero = self.index[bottom(m, n)]
        self.one = self.index[top(n)]
        self.num_edges = sum(len(x) for x in up)
        # covers strictly lower the entry sum, so sorting by sum is a linear extension
        self.topo_order = tuple(sorted(range(len(self.elements)),
                                       key=lambda k: (-sum(self.elements[k]), k)))
        self._precomputed = len(self.elements) <= reach_threshold
        self._up = {}
        self._down = {}
        if self._precomputed:
            self._fill_reachability()

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return "Lattice(m=%d, n=%d, elements=%d, edges=%d)" % (
            self.m, self.n, len(self), self.num_edges)

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return (self.m, self.n, self.elements, self.up_covers) == (
            other.m, other.n, other.elements, other.up_covers)

    def __getstate__(self):
        state = self.__dict__.copy()
        if not self._precomputed:
            state["_up"], state["_down"] = {}, {}
        return state

    def _fill_reachability(self):
        for k in reversed(self.topo_order):
            mask = 1 << k
            for _, t in self.up_covers[k]:
                mask |= self._up[t]
            self._up[k] = mask
        for k in self.topo_order:
            mask = 1 << k
            for _, s in self.down_covers[k]:
                mask |= self._down[s]
            self._down[k] = mask

    def _search(self, start, adjacency, cache):
        if start in cache:
            return cache[start]
        mask = 0
        stack = [start]
        while stack:
            k = stack.pop()
            if mask >> k & 1:
                continue
            if k in cache:
                mask |= cache[k]
                continue
            mask |= 1 << k
            stack.extend(t for _, t in adjacency[k])
        cache[start] = mask
        return mask

    def upset_mask(self, a):
        """Bitset of all z with a <= z."""
        if self._precomputed:
            return self._up[a]
        return self._search(a, self.up_covers, self._up)

    def downset_mask(self, b):
        """Bitset of all z with z <= b."""
        if self._precomputed:
            return self._down[b]
        return self._search(b, self.down_covers, self._down)

    def id_of(self, seq):
        try:
            return self.index[tuple(seq)]
        except KeyError:
            raise UsageError("%r is not an element of T_%d^(%d)" % (seq, self.n, self.m)) from None

    def edges(self):
        """Yield every cover edge as ``(from_id, to_id, position)``."""
        for src, outs in enumerate(self.up_covers):
            for pos, dst in outs:
                yield src, dst, pos

    def to_json(self):
        doc = {
            "m": self.m,
            "n": self.n,
            "elements": [list(seq) for seq in self.elements],
            "covers": [[s, t, p] for s, t, p in self.edges()],
            "zero": self.zero,
            "one": self.one,
        }
        return json.dumps(doc, separators=(",", ":"))

    @classmethod
    def from_json(cls, text):
        doc = json.loads(text)
        elements = [tuple(seq) for seq in doc["elements"]]
        lat = cls(doc["m"], doc["n"], elements, [tuple(c) for c in doc["covers"]])
        if (lat.zero, lat.one) != (doc["zero"], doc["one"]):
            raise UsageError("zero/one fields disagree with the element list")
        return lat


def build_lattice(m, n, cap=DEFAULT_BUILD_CAP, reach_threshold=REACH_THRESHOLD):
    """Enumerate T_n^(m) and materialize all cover edges."""
    total = fuss_catalan(m, n)
    if cap is not None and total > cap:
        # every element has at most n-1 upper covers
        raise CapExceeded("lattice T_%d^(%d) (up to %d edges)" % (n, m, total * (n - 1)),
                          total, cap)
    elements = list(iter_paths(m, n))
    index = {seq: k for k, seq in enumerate(elements)}
    triples = [(k, index[dst], pos)
               for k, seq in enumerate(elements) for pos, dst in covers(seq, m)]
    return Lattice(m, n, elements, triples, reach_threshold=reach_threshold)


def leq(lat, a, b):
    return bool(lat.upset_mask(a) >> b & 1)


@dataclass(frozen=True)
class IntervalView:
    lattice: Lattice = field(repr=False, compare=False)
    a: int
    b: int
    mask: int = field(repr=False)

    @property
    def members(self):
        return frozenset(_bits(self.mask))

    def __contains__(self, k):
        return bool(self.mask >> k & 1)

    def __len__(self):
        return bin(self.mask).count("1")

    @property
    def bottom_seq(self):
        return self.lattice.elements[self.a]

    @property
    def top_seq(self):
        return self.lattice.elements[self.b]


def interval_elements(lat, a, b):
    """The closed interval [a, b]; raises :class:`EmptyIntervalError` if a is not below b."""
    mask = lat.upset_mask(a) & lat.downset_mask(b)
    if not mask:
        raise EmptyIntervalError(lat.elements[a], lat.elements[b])
    return IntervalView(lat, a, b, mask)


def iter_intervals(lat):
    """All intervals [a, b] with a <= b, ordered by (a, b)."""
    for a in range(len(lat)):
        up = lat.upset_mask(a)
        for b in _bits(up):
            yield IntervalView(lat, a, b, up & lat.downset_mask(b))


def _unique_extreme(lat, common, neighbours):
    # minimal elements of `common` w.r.t. the order given by `neighbours`
    found = [z for z in _bits(common) if neighbours(z) & common == 1 << z]
    if len(found) != 1:
        raise InvariantViolation("expected a unique extreme element, found %r" % found)
    return found[0]


def join(lat, a, b):
    common = lat.upset_mask(a) & lat.upset_mask(b)
    return _unique_extreme(lat, common, lat.downset_mask)


def meet(lat, a, b):
    common = lat.downset_mask(a) & lat.downset_mask(b)
    return _unique_extreme(lat, common, lat.upset_mask)


def element_ids(lat, *seqs):
    """Convenience: look up several sequences (tuples or literals) at once."""
    out = []
    for s in seqs:
        if isinstance(s, str):
            s = parse_sequence(s)
        out.append(lat.id_of(check_sequence(s, lat.m)))
    return out
