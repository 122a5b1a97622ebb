"""m-Dyck paths in their sequence encoding.

A path of height ``n`` is stored as a tuple ``(a_1, ..., a_n)`` of
non-negative integers with ``a_1 <= a_2 <= ... <= a_n`` and
``a_i <= m*(i-1)``.  Positions are 1-based in every public function;
the tuple itself is of course indexed from 0.
"""

from collections import namedtuple
from math import comb

from .errors import CapExceeded, UsageError

DEFAULT_ENUM_CAP = 5_000_000

Verdict = namedtuple("Verdict", "valid position condition")
Verdict.__doc__ = """Result of :func:`validate_sequence`.

``position`` is the smallest 1-based violating index (None when valid) and
``condition`` one of ``"nonnegative"``, ``"monotone"``, ``"bound"``.
"""

_CONDITION_TEXT = {
    "nonnegative": "a_1 >= 0",
    "monotone": "a_{i-1} <= a_i",
    "bound": "a_i <= m(i-1)",
}


class Params(namedtuple("Params", "m n")):
    __slots__ = ()

    def __new__(cls, m, n):
        if m < 1 or n < 1:
            raise UsageError("m and n must be positive, got m=%r n=%r" % (m, n))
        return super().__new__(cls, m, n)


def validate_sequence(seq, m):
    """Check the two defining conditions and report the first violation."""
    seq = tuple(seq)
    if not seq:
        raise UsageError("empty sequence")
    if m < 1:
        raise UsageError("m must be positive, got %r" % m)
    if seq[0] < 0:
        return Verdict(False, 1, "nonnegative")
    for i, v in enumerate(seq, start=1):
        if i > 1 and v < seq[i - 2]:
            return Verdict(False, i, "monotone")
        if v > m * (i - 1):
            return Verdict(False, i, "bound")
    return Verdict(True, None, None)


def describe_violation(verdict):
    """Human readable text for a failed :class:`Verdict`."""
    if verdict.valid:
        return "valid"
    return "violates %s at i=%d" % (_CONDITION_TEXT[verdict.condition], verdict.position)


def check_sequence(seq, m):
    """Return ``seq`` as a tuple, raising :class:`UsageError` if it is not an m-Dyck path."""
    seq = tuple(seq)
    verdict = validate_sequence(seq, m)
    if not verdict.valid:
        raise UsageError("%s does not encode a %d-Dyck path: %s"
                         % (format_sequence(seq), m, describe_violation(verdict)))
    return seq


def fuss_catalan(m, n):
    """Number of m-Dyck paths of height n, ``binom((m+1)n, n) / (mn+1)``."""
    if m < 1 or n < 0:
        raise UsageError("need m >= 1 and n >= 0")
    q, r = divmod(comb((m + 1) * n, n), m * n + 1)
    assert r == 0, "Fuss-Catalan division left a remainder"
    return q


def iter_paths(m, n):
    """Yield every valid sequence of length n in ascending lexicographic order."""
    if m < 1 or n < 1:
        raise UsageError("need m >= 1 and n >= 1")
    seq = [0] * n

    def extend(i):
        # i is the 0-based slot to fill; its bound is m*i
        if i == n:
            yield tuple(seq)
            return
        for v in range(seq[i - 1], m * i + 1):
            seq[i] = v
            yield from extend(i + 1)

    yield from extend(1)


def enumerate_paths(m, n, cap=DEFAULT_ENUM_CAP):
    """All m-Dyck sequences of height n, lexicographically sorted.

    Refuses with :class:`CapExceeded` when the Fuss-Catalan count exceeds
    ``cap`` instead of returning a partial list.
    """
    total = fuss_catalan(m, n)
    if cap is not None and total > cap:
        raise CapExceeded("enumeration of D(%d,%d)" % (m, n), total, cap)
    return list(iter_paths(m, n))


def primitive_subsequence(seq, m, i):
    """End position k of the primitive subsequence starting at position i.

    k is the largest index such that ``a_j - a_i < m(j - i)`` for all
    ``i < j <= k``.
    """
    n = len(seq)
    if not 1 <= i <= n:
        raise UsageError("position %r out of range 1..%d" % (i, n))
    base = seq[i - 1]
    k = i
    while k < n and seq[k] - base < m * (k + 1 - i):
        k += 1
    return k


def to_step_word(seq, m):
    """Render a sequence as a word over ``U`` (vertical) and ``R`` (horizontal).

    ``a_i`` R's precede the i-th U in total, and the word is padded with
    R's up to ``m*n``.
    """
    n = len(seq)
    out = []
    prev = 0
    for v in seq:
        out.append("R" * (v - prev))
        out.append("U")
        prev = v
    out.append("R" * (m * n - prev))
    return "".join(out)


def from_step_word(word):
    """Inverse of :func:`to_step_word`: the R-count before each U."""
    seq = []
    rights = 0
    for ch in word:
        if ch == "R":
            rights += 1
        elif ch == "U":
            seq.append(rights)
        else:
            raise UsageError("unexpected step %r" % ch)
    return tuple(seq)


def parse_sequence(text):
    """Parse ``"0,2,4"`` or the digit shorthand ``"024"``."""
    text = text.strip()
    if not text:
        raise UsageError("empty sequence literal")
    try:
        if "," in text:
            return tuple(int(part) for part in text.split(","))
        if text.isdigit():
            return tuple(int(ch) for ch in text)
        return (int(text),)
    except ValueError:
        raise UsageError("bad sequence literal %r" % text) from None


def format_sequence(seq):
    return ",".join(str(v) for v in seq)


def short_name(seq):
    """Digit-string shorthand (``024``) when every entry is a single digit."""
    if all(0 <= v <= 9 for v in seq):
        return "".join(str(v) for v in seq)
    return format_sequence(seq)


def bottom(m, n):
    return tuple(m * i for i in range(n))


def top(n):
    return (0,) * n
