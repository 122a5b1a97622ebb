import pytest

from mtamari.lattice import build_lattice

# grid used by every exhaustive check: {1}x{2..5} u {2}x{2..4} u {3,4}x{2..3}
GRID = [(1, 2), (1, 3), (1, 4), (1, 5), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2), (4, 3)]

_cache = {}


def lattice(m, n):
    if (m, n) not in _cache:
        _cache[m, n] = build_lattice(m, n)
    return _cache[m, n]


@pytest.fixture
def t32():
    return lattice(2, 3)


@pytest.fixture
def ids(t32):
    """Look up T_3^(2) element IDs by digit shorthand: ids("024")."""
    def lookup(*names):
        out = [t32.id_of(tuple(int(c) for c in name)) for name in names]
        return out[0] if len(out) == 1 else out
    return lookup


ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line("criterion %2d: %s  %s" % (key, "PASS" if ok else "FAIL", detail))
