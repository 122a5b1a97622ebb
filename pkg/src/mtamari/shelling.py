"""Edge labels, maximal chains and the EL-property check.

A cover ``a -> b`` is labelled ``(j, a_j)`` where j is the first position
at which the sequences differ.  Labels are ordered by position first and,
for equal positions, by *decreasing* value.  Label words compare
lexicographically with proper prefixes smaller, which is exactly Python's
tuple ordering once :class:`EdgeLabel` carries the right comparisons.
"""

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial, total_ordering

from .errors import CapExceeded, InvariantViolation, NotACover
from .lattice import _bits, cover_move, covers, interval_elements, iter_intervals
from .paths import primitive_subsequence, short_name

DEFAULT_CHAIN_CAP = 10_000_000


@total_ordering
@dataclass(frozen=True)
class EdgeLabel:
    j: int
    v: int

    def key(self):
        return (self.j, -self.v)

    def __lt__(self, other):
        return self.key() < other.key()

    def __str__(self):
        return "(%d,%d)" % (self.j, self.v)


def edge_label(a, b, m=None):
    """Label of the cover ``a -> b``.

    With ``m`` given, the pair is checked to really be a cover; without it
    only the shape of the difference is checked.
    """
    a, b = tuple(a), tuple(b)
    diff = [i for i in range(len(a)) if a[i] != b[i]]
    if not diff:
        raise NotACover("%s and %s are equal" % (a, b))
    j = diff[0] + 1
    if m is not None:
        if b not in (t for _, t in covers(a, m)):
            raise NotACover("%s is not covered by %s" % (a, b))
    elif any(a[i] - b[i] != 1 for i in diff) or diff != list(range(diff[0], diff[-1] + 1)):
        raise NotACover("%s -> %s does not decrement one contiguous block" % (a, b))
    return EdgeLabel(j, a[j - 1])


def cover_label(seq, pos):
    """Label of the cover produced by ``cover_move(seq, m, pos)``."""
    return EdgeLabel(pos + 1, seq[pos])


def label_leq(x, y):
    return x.key() <= y.key()


def word_lex_leq(w1, w2):
    return tuple(w1) <= tuple(w2)


@dataclass(frozen=True)
class MaximalChain:
    ids: tuple
    word: tuple = field(compare=False)

    def __len__(self):
        return len(self.word)

    def seqs(self, lat):
        return [lat.elements[k] for k in self.ids]

    def describe(self, lat):
        return "->".join(short_name(s) for s in self.seqs(lat))


def _outgoing(view):
    """Interval-restricted upper covers of each member, in ascending label order."""
    lat = view.lattice
    out = {}
    for k in _bits(view.mask):
        seq = lat.elements[k]
        edges = [(cover_label(seq, pos), t) for pos, t in lat.up_covers[k] if view.mask >> t & 1]
        edges.sort(key=lambda e: e[0].key())
        out[k] = edges
    return out


def count_maximal_chains(view):
    """Number of maximal chains of the interval, by path counting."""
    lat = view.lattice
    counts = {view.b: 1}
    for k in reversed(lat.topo_order):
        if k == view.b or not view.mask >> k & 1:
            continue
        counts[k] = sum(counts[t] for _, t in lat.up_covers[k] if view.mask >> t & 1)
    return counts[view.a]


def maximal_chains(view, cap=DEFAULT_CHAIN_CAP):
    """Yield every maximal chain of ``view`` once, lexicographically first chain first.

    The depth-first search follows outgoing edges in ascending label order,
    so chains come out in increasing lexicographic order of their words.
    """
    if cap is not None:
        total = count_maximal_chains(view)
        if total > cap:
            raise CapExceeded("maximal chains of [%d,%d]" % (view.a, view.b), total, cap)
    out = _outgoing(view)
    ids = [view.a]
    word = []

    def walk(k):
        if k == view.b:
            yield MaximalChain(tuple(ids), tuple(word))
            return
        for label, t in out[k]:
            ids.append(t)
            word.append(label)
            yield from walk(t)
            ids.pop()
            word.pop()

    yield from walk(view.a)


def _word(chain):
    return chain.word if isinstance(chain, MaximalChain) else tuple(chain)


def is_rising(chain):
    w = _word(chain)
    return all(x < y for x, y in zip(w, w[1:]))


def is_falling(chain):
    w = _word(chain)
    return all(x > y for x, y in zip(w, w[1:]))


def rising_chain(view):
    """Build the rising chain by always rotating at the leftmost position still above the target.

    From the current element ``r`` pick the smallest ``j`` with
    ``r_j > b_j`` and decrement the primitive block starting at ``j``.
    """
    lat = view.lattice
    m = lat.m
    target = view.top_seq
    cur = view.bottom_seq
    ids = [view.a]
    word = []
    while cur != target:
        j = next(j for j in range(2, lat.n + 1) if cur[j - 1] > target[j - 1])
        if cur[j - 2] >= cur[j - 1]:
            raise InvariantViolation("rising construction stuck at %s, position %d" % (cur, j))
        word.append(cover_label(cur, j - 1))
        cur = cover_move(cur, m, j - 1)
        k = lat.index[cur]
        if not view.mask >> k & 1:
            raise InvariantViolation("rising construction left the interval at %s" % (cur,))
        ids.append(k)
    return MaximalChain(tuple(ids), tuple(word))


def falling_chains(view):
    """All falling maximal chains of ``view`` (at most one).

    Equivalent to filtering :func:`maximal_chains` by :func:`is_falling`,
    but prunes any branch as soon as a label fails to drop.
    """
    out = _outgoing(view)
    found = []
    ids = [view.a]
    word = []

    def walk(k):
        if k == view.b:
            found.append(MaximalChain(tuple(ids), tuple(word)))
            return
        for label, t in out[k]:
            if word and not label < word[-1]:
                continue
            ids.append(t)
            word.append(label)
            walk(t)
            ids.pop()
            word.pop()

    walk(view.a)
    if len(found) > 1:
        raise InvariantViolation("%d falling chains in [%d,%d]" % (len(found), view.a, view.b))
    return found


def falling_positions(a, b, m):
    """Positions j with a_j != b_j and a_j >= a_{j-1} + m, ascending."""
    return [j for j in range(2, len(a) + 1)
            if a[j - 1] != b[j - 1] and a[j - 1] >= a[j - 2] + m]


def candidate_falling_labels(a, b, m):
    """Label word a falling chain of [a, b] is predicted to carry.

    This is only a prediction; :func:`verify_el` records where it disagrees
    with the falling chain actually found.
    """
    return tuple(EdgeLabel(j, a[j - 1]) for j in reversed(falling_positions(a, b, m)))


def containment_mismatches(seq, m):
    """Positions k where ``a_k >= a_{k-1} + m`` disagrees with "no primitive
    block starting at some i < k reaches k".  Returned as ``(k, jump, uncovered)``.
    """
    out = []
    for k in range(2, len(seq) + 1):
        jump = seq[k - 1] >= seq[k - 2] + m
        uncovered = all(primitive_subsequence(seq, m, i) < k for i in range(1, k))
        if jump != uncovered:
            out.append((k, jump, uncovered))
    return out


@dataclass
class IntervalCheck:
    a: int
    b: int
    num_chains: int
    num_rising: int
    num_falling: int
    lex_first_is_rising: bool
    violation: str = ""
    falling_word: tuple = None
    predicted_falling: tuple = ()


@dataclass
class ELReport:
    m: int
    n: int
    rows: list

    @property
    def violations(self):
        return [r for r in self.rows if r.violation]

    @property
    def falling_mismatches(self):
        """Intervals whose falling chain word differs from :func:`candidate_falling_labels`."""
        return [r for r in self.rows
                if r.falling_word is not None and r.falling_word != r.predicted_falling]

    @property
    def ok(self):
        return not self.violations

    def to_csv(self, lat):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["a", "b", "num_chains", "num_rising", "num_falling",
                    "lex_first_is_rising", "violation"])
        for r in self.rows:
            w.writerow([short_name(lat.elements[r.a]), short_name(lat.elements[r.b]),
                        r.num_chains, r.num_rising, r.num_falling,
                        int(r.lex_first_is_rising), r.violation])
        return buf.getvalue()


def check_interval(view, cap=DEFAULT_CHAIN_CAP):
    """Exhaustively test one interval against the EL requirements."""
    lat = view.lattice
    problems = []
    num = rising = 0
    falling = []
    first = lex_min = None
    for chain in maximal_chains(view, cap=cap):
        num += 1
        if first is None:
            first = chain
        if lex_min is None or chain.word < lex_min.word:
            lex_min = chain
        if is_rising(chain):
            rising += 1
        if is_falling(chain):
            falling.append(chain)
    if rising != 1:
        problems.append("%d rising chains" % rising)
    if first.ids != lex_min.ids:
        problems.append("search order is not lexicographic")
    if not is_rising(lex_min):
        problems.append("lex-first chain is not rising")
    built = rising_chain(view)
    if built.ids != lex_min.ids:
        problems.append("constructed rising chain is not lex-first")
    if len(falling) > 1:
        problems.append("%d falling chains" % len(falling))
    return IntervalCheck(
        view.a, view.b, num, rising, len(falling), is_rising(lex_min), "; ".join(problems),
        falling[0].word if len(falling) == 1 else None,
        candidate_falling_labels(view.bottom_seq, view.top_seq, lat.m),
    )


_worker_lattice = None


def _init_worker(lat):
    global _worker_lattice
    _worker_lattice = lat


def _check_bottom(a, lat=None, cap=DEFAULT_CHAIN_CAP):
    lat = lat if lat is not None else _worker_lattice
    up = lat.upset_mask(a)
    return [check_interval(interval_elements(lat, a, b), cap) for b in _bits(up)]


def verify_el(lat, workers=1, cap=DEFAULT_CHAIN_CAP):
    """Check every interval of ``lat``; violations are collected, never raised."""
    bottoms = range(len(lat))
    if workers > 1:
        with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(lat,)) as pool:
            parts = list(pool.map(partial(_check_bottom, cap=cap), bottoms, chunksize=8))
    else:
        parts = [_check_bottom(a, lat, cap) for a in bottoms]
    return ELReport(lat.m, lat.n, [row for part in parts for row in part])


__all__ = [
    "EdgeLabel", "MaximalChain", "ELReport", "IntervalCheck",
    "edge_label", "cover_label", "label_leq", "word_lex_leq",
    "count_maximal_chains", "maximal_chains", "rising_chain", "is_rising", "is_falling",
    "falling_chains", "falling_positions", "candidate_falling_labels",
    "containment_mismatches", "check_interval", "verify_el", "iter_intervals",
]
