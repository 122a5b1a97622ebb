"""Möbius function engines, interval classification and spherical censuses.

Three independent engines compute mu on intervals:

* ``recursive``: the defining recursion, treated as ground truth;
* ``chain``: alternating count of strict chains (Hall's theorem);
* ``falling``: (-1)^length of the unique falling chain, or 0.

The closed forms in this module (:func:`classify_interval`,
:func:`mobius_closed`, :func:`mobius_from_bottom`, :func:`mobius_to_top`)
are always checked against ``recursive``, never the other way round.
"""

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .errors import InvariantViolation, UsageError
from .lattice import _bits, cover_move, interval_elements
from .paths import format_sequence, short_name
from .shelling import falling_chains


@dataclass
class MobiusTable:
    """mu(a, b) for every comparable pair of IDs, tagged with the engine used."""
    engine: str
    values: dict = field(default_factory=dict)

    def __getitem__(self, pair):
        return self.values[tuple(pair)]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def items(self):
        return self.values.items()


def _recursive_from(lat, a):
    up = lat.upset_mask(a)
    mu = {a: 1}
    for b in lat.topo_order:
        if b == a or not up >> b & 1:
            continue
        below = lat.downset_mask(b) & up & ~(1 << b)
        mu[b] = -sum(mu[z] for z in _bits(below))
    return mu


def mobius_recursive_pair(lat, a, b):
    """mu(a, b) by the recursion, computing only the row of ``a``."""
    return _recursive_from(lat, a).get(b, 0)


def mobius_recursive(lat):
    """Full Möbius table by ``mu(a,b) = -sum_{a <= z < b} mu(a,z)``."""
    table = MobiusTable("recursive")
    for a in range(len(lat)):
        for b, v in _recursive_from(lat, a).items():
            table.values[a, b] = v
    return table


def _chain_counts(lat, a, members):
    """counts[z][s] = number of chains a = x_0 < x_1 < ... < x_s = z inside ``members``."""
    counts = {}
    for z in lat.topo_order:
        if not members >> z & 1:
            continue
        if z == a:
            counts[z] = [1]
            continue
        poly = [0]
        for y in _bits(lat.downset_mask(z) & members & ~(1 << z)):
            for s, c in enumerate(counts[y], start=1):
                if s == len(poly):
                    poly.append(0)
                poly[s] += c
        counts[z] = poly
    return counts


def _alternate(poly):
    return sum(c if s % 2 == 0 else -c for s, c in enumerate(poly))


def mobius_chain_alternating(view):
    """mu via signed counts of strict chains from bottom to top of the interval.

    A chain with k intermediate elements contributes ``(-1)^(k+1)``; the
    singleton interval gives 1.
    """
    if view.a == view.b:
        return 1
    counts = _chain_counts(view.lattice, view.a, view.mask)
    return _alternate(counts[view.b])


def mobius_falling(view):
    chains = falling_chains(view)
    if not chains:
        return 0
    return -1 if len(chains[0]) % 2 else 1


def e_counter(a, m, D, j):
    """Number of i in D below j whose primitive block, after rotating at j, still reaches j.

    Concretely: ``a_j - 1 - a_i < m(j-i)`` and ``a_k - a_i < m(k-i)`` for all
    ``i < k < j``.
    """
    D = frozenset(D)
    if j not in D:
        raise UsageError("position %r is not in D=%s" % (j, sorted(D)))
    for i in D:
        if not 2 <= i <= len(a) or a[i - 1] <= a[i - 2]:
            raise UsageError("D must only hold positions i >= 2 with a_i > a_{i-1}; %r fails" % i)
    count = 0
    for i in D:
        if i >= j:
            continue
        base = a[i - 1]
        if a[j - 1] - 1 - base < m * (j - i) and all(
                a[k - 1] - base < m * (k - i) for k in range(i + 1, j)):
            count += 1
    return count


def up_rotation(a, m, j):
    """Decrement the primitive block of ``a`` at position j (needs ``a_j > a_{j-1}``)."""
    a = tuple(a)
    if not 2 <= j <= len(a):
        raise UsageError("position %r out of range 2..%d" % (j, len(a)))
    if a[j - 1] <= a[j - 2]:
        raise UsageError("no up-rotation at %d: a_%d = a_%d" % (j, j, j - 1))
    return cover_move(a, m, j - 1)


@dataclass(frozen=True)
class IntervalClass:
    """Homotopy tag of an open interval: ``sphere`` of dimension ``dim`` or ``point``.

    ``dim`` is ``len(D) - 2``; the singleton interval is tagged sphere(-2)
    so that ``(-1)**dim`` still gives mu(a, a) = 1.
    """
    kind: str
    dim: int
    D: tuple
    sph1: dict = field(compare=False, default_factory=dict)
    sph2: dict = field(compare=False, default_factory=dict)

    @property
    def is_sphere(self):
        return self.kind == "sphere"

    def __str__(self):
        return "Sphere(%d)" % self.dim if self.is_sphere else "Point"


def sphere_positions(a, b):
    """Positions j with a_j != b_j and a_j > a_{j-1}."""
    return tuple(j for j in range(2, len(a) + 1)
                 if a[j - 1] != b[j - 1] and a[j - 1] > a[j - 2])


def classify_interval(a, b, m):
    """Evaluate both sphere conditions on every position of D, exactly as stated.

    sph1: ``a_j - 1 - a_{j-1} < m`` implies ``b_j - b_{j-1} < m``;
    sph2: ``b_j = a_j - 1 - e_j(a)``.
    """
    a, b = tuple(a), tuple(b)
    D = sphere_positions(a, b)
    sph1 = {}
    sph2 = {}
    for j in D:
        premise = a[j - 1] - 1 - a[j - 2] < m
        sph1[j] = (not premise) or b[j - 1] - b[j - 2] < m
        sph2[j] = b[j - 1] == a[j - 1] - 1 - e_counter(a, m, D, j)
    ok = all(sph1.values()) and all(sph2.values())
    return IntervalClass("sphere" if ok else "point", len(D) - 2, D, sph1, sph2)


def mobius_closed(a, b, m):
    cls = classify_interval(a, b, m)
    if not cls.is_sphere:
        return 0
    return -1 if len(cls.D) % 2 else 1


def mobius_from_bottom(a, m):
    """Closed form for mu(0, a)."""
    a = tuple(a)
    D = [j for j in range(2, len(a) + 1) if a[j - 1] != (j - 1) * m]
    for idx, j in enumerate(D):
        # idx == |{i in D : i < j}|
        if a[j - 1] != (j - 1) * m - 1 - idx:
            return 0
    return -1 if len(D) % 2 else 1


def mobius_to_top(a, m):
    """Closed form for mu(a, 1)."""
    a = tuple(a)
    D = frozenset(j for j in range(2, len(a) + 1) if a[j - 1] > a[j - 2])
    for j in D:
        if a[j - 1] != e_counter(a, m, D, j) + 1:
            return 0
    return -1 if len(D) % 2 else 1


def diff_set(a, b):
    return frozenset(i for i in range(2, len(a) + 1) if a[i - 1] != b[i - 1])


def diff_class(lat, a, D):
    """IDs of all elements whose diff set against element ``a`` is exactly D."""
    seq = lat.elements[a]
    D = frozenset(D)
    return {k for k, other in enumerate(lat.elements) if diff_set(seq, other) == D}


def chi_witness(D, m, n):
    """Bottom element with every position of D lowered by one."""
    D = frozenset(D)
    if any(not 2 <= j <= n for j in D):
        raise UsageError("D must be a subset of {2..%d}" % n)
    return tuple((j - 1) * m - (1 if j in D else 0) for j in range(1, n + 1))


def _pick(lat, table):
    if table is None:
        return mobius_recursive(lat)
    return table


def spherical_census(lat, table=None):
    """Elements with mu(0, .) != 0 and with mu(., 1) != 0; each set has 2^(n-1) members."""
    table = _pick(lat, table)
    S0 = {k for k in range(len(lat)) if table[lat.zero, k] != 0}
    S1 = {k for k in range(len(lat)) if table[k, lat.one] != 0}
    expected = 2 ** (lat.n - 1)
    if len(S0) != expected or len(S1) != expected:
        raise InvariantViolation("spherical census |S0|=%d |S1|=%d, expected %d"
                                 % (len(S0), len(S1), expected))
    return S0, S1


def top_census_by_diff(lat, table=None):
    """Group {a : mu(a, 1) != 0} by the diff set against the top element.

    Only suffixes ``[i, n]`` and the empty set may occur, with
    ``2^(n-i)`` and 1 members respectively.
    """
    table = _pick(lat, table)
    one = lat.elements[lat.one]
    groups = {}
    for k in range(len(lat)):
        if table[k, lat.one] != 0:
            key = diff_set(lat.elements[k], one)
            groups[key] = groups.get(key, 0) + 1
    n = lat.n
    expected = {frozenset(): 1}
    for i in range(2, n + 1):
        expected[frozenset(range(i, n + 1))] = 2 ** (n - i)
    if groups != expected:
        raise InvariantViolation("top census by diff set %s, expected %s"
                                 % (_fmt_groups(groups), _fmt_groups(expected)))
    return groups


def _fmt_key(D):
    return "{" + ",".join(str(j) for j in sorted(D)) + "}"


def _fmt_groups(groups):
    return {_fmt_key(k): v for k, v in sorted(groups.items(), key=lambda kv: sorted(kv[0]))}


def census_json(lat, table=None):
    S0, S1 = spherical_census(lat, table)
    by_diff = top_census_by_diff(lat, table)
    doc = {
        "m": lat.m,
        "n": lat.n,
        "S0": sorted(S0),
        "S1": sorted(S1),
        "expected": 2 ** (lat.n - 1),
        "by_diff": {_fmt_key(k): v for k, v in sorted(by_diff.items(),
                                                     key=lambda kv: (len(kv[0]), sorted(kv[0])))},
    }
    return json.dumps(doc, indent=2)


@dataclass
class MobiusRow:
    a: int
    b: int
    mu_recursive: int
    mu_chain: int
    mu_falling: int
    mu_closed: int
    cls: IntervalClass

    @property
    def discrepancy(self):
        """``"point"`` or ``"sphere"`` when the closed form disagrees with the recursion."""
        if self.mu_closed == self.mu_recursive:
            return ""
        return "point" if not self.cls.is_sphere else "sphere"

    @property
    def engines_agree(self):
        return self.mu_recursive == self.mu_chain == self.mu_falling


_worker_lattice = None


def _init_worker(lat):
    global _worker_lattice
    _worker_lattice = lat


def _rows_from(a, lat=None):
    lat = lat if lat is not None else _worker_lattice
    m = lat.m
    rec = _recursive_from(lat, a)
    chains = _chain_counts(lat, a, lat.upset_mask(a))
    rows = []
    for b in sorted(rec):
        view = interval_elements(lat, a, b)
        sa, sb = lat.elements[a], lat.elements[b]
        cls = classify_interval(sa, sb, m)
        closed = 0 if not cls.is_sphere else (-1 if len(cls.D) % 2 else 1)
        rows.append(MobiusRow(a, b, rec[b], _alternate(chains[b]), mobius_falling(view),
                              closed, cls))
    return rows


def mobius_rows(lat, workers=1):
    """One :class:`MobiusRow` per interval, ordered by (a, b)."""
    bottoms = range(len(lat))
    if workers > 1:
        with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(lat,)) as pool:
            parts = list(pool.map(_rows_from, bottoms, chunksize=8))
    else:
        parts = [_rows_from(a, lat) for a in bottoms]
    return [row for part in parts for row in part]


def discrepancies(rows):
    return [r for r in rows if r.discrepancy]


MOBIUS_COLUMNS = ["a_id", "a_seq", "b_id", "b_seq", "mu_recursive", "mu_chain",
                  "mu_falling", "mu_closed", "class", "D_size", "discrepancy"]


def rows_to_csv(lat, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(MOBIUS_COLUMNS)
    for r in rows:
        w.writerow([r.a, format_sequence(lat.elements[r.a]), r.b, format_sequence(lat.elements[r.b]),
                    r.mu_recursive, r.mu_chain, r.mu_falling, r.mu_closed, str(r.cls),
                    len(r.cls.D), r.discrepancy])
    return buf.getvalue()


def describe_pair(lat, row):
    return "(%s,%s)" % (short_name(lat.elements[row.a]), short_name(lat.elements[row.b]))


__all__ = [
    "MobiusTable", "IntervalClass", "MobiusRow",
    "mobius_recursive", "mobius_recursive_pair", "mobius_chain_alternating", "mobius_falling",
    "e_counter", "up_rotation", "sphere_positions", "classify_interval", "mobius_closed",
    "mobius_from_bottom", "mobius_to_top", "diff_set", "diff_class", "chi_witness",
    "spherical_census", "top_census_by_diff", "census_json",
    "mobius_rows", "discrepancies", "rows_to_csv", "describe_pair",
]
