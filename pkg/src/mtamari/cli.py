"""Command line front end.

Exit codes: 0 success, 1 a verification failed, 2 usage or I/O error.
Data goes to stdout (or ``--out``); progress and summaries go to stderr.
"""

import argparse
import sys
from dataclasses import dataclass

from . import export
from .errors import CapExceeded, EmptyIntervalError, InvariantViolation, UsageError
from .lattice import DEFAULT_BUILD_CAP, build_lattice, interval_elements, leq
from .paths import (DEFAULT_ENUM_CAP, check_sequence, describe_violation, enumerate_paths,
                    format_sequence, fuss_catalan, parse_sequence, short_name,
                    validate_sequence)
from .shelling import verify_el
from .topology import (census_json, classify_interval, discrepancies, mobius_chain_alternating,
                       mobius_closed, mobius_falling, mobius_from_bottom, mobius_recursive_pair,
                       mobius_rows, mobius_to_top, rows_to_csv, spherical_census,
                       top_census_by_diff)

FORMATS = ("dot", "json", "csv", "text")
SUITES = ("el", "mobius", "spherical", "theorem43")
DEFAULT_GRID = "1:2-5,2:2-4,3:2-3,4:2-3"


class VerificationFailed(Exception):
    pass


@dataclass
class RunConfig:
    m: int = None
    n: int = None
    cap: int = None
    format: str = "text"
    out: str = None
    workers: int = 1

    def __post_init__(self):
        if self.cap is not None and self.cap <= 0:
            raise UsageError("--cap must be positive")
        if self.workers < 1:
            raise UsageError("--workers must be at least 1")
        if self.format not in FORMATS:
            raise UsageError("--format must be one of %s" % ", ".join(FORMATS))


def parse_grid(text):
    """``"1:2-5,2:2-4"`` -> ``[(1,2),(1,3),(1,4),(1,5),(2,2),(2,3),(2,4)]``."""
    cells = []
    for part in text.split(","):
        try:
            m, ns = part.split(":")
            lo, _, hi = ns.partition("-")
            lo = int(lo)
            hi = int(hi) if hi else lo
            cells.extend((int(m), n) for n in range(lo, hi + 1))
        except ValueError:
            raise UsageError("bad grid cell %r (expected m:nlo-nhi)" % part) from None
    if not cells or any(m < 1 or n < 1 for m, n in cells):
        raise UsageError("grid must list positive (m, n) cells")
    return cells


def render_path(seq, m):
    """ASCII picture, one row per up-step, top row first.

    ``|`` is the up-step, ``_`` the right-steps that follow it, ``.`` marks
    where the line x = m*y crosses the row.
    """
    n = len(seq)
    width = m * n + 1
    rows = []
    for i in range(n, 0, -1):
        row = [" "] * width
        row[m * (i - 1)] = "."
        start = seq[i - 1]
        end = seq[i] if i < n else m * n
        for x in range(start + 1, end + 1):
            row[x] = "_"
        row[start] = "|"
        rows.append("".join(row).rstrip())
    return "\n".join(rows) + "\n"


def _emit(cfg, text):
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _note(msg):
    print(msg, file=sys.stderr)


def cmd_enumerate(cfg):
    paths = enumerate_paths(cfg.m, cfg.n, cap=cfg.cap or DEFAULT_ENUM_CAP)
    body = export.paths_csv(paths) if cfg.format == "csv" else export.paths_lines(paths)
    _emit(cfg, body)
    expected = fuss_catalan(cfg.m, cfg.n)
    _note("count=%d fuss_catalan=%d" % (len(paths), expected))
    return 0 if len(paths) == expected else 1


def cmd_lattice(cfg):
    lat = build_lattice(cfg.m, cfg.n, cap=cfg.cap or DEFAULT_BUILD_CAP)
    if cfg.format == "json":
        body = lat.to_json() + "\n"
    elif cfg.format == "dot":
        body = export.to_dot(lat)
    else:
        raise UsageError("lattice export supports --format dot or json")
    _emit(cfg, body)
    _note("elements=%d covers=%d" % (len(lat), lat.num_edges))
    return 0


def _read_element(lat, text):
    seq = parse_sequence(text)
    if len(seq) != lat.n:
        raise UsageError("%s has length %d, expected n=%d" % (text, len(seq), lat.n))
    return lat.id_of(check_sequence(seq, lat.m))


def cmd_mobius(cfg, from_=None, to=None):
    lat = build_lattice(cfg.m, cfg.n, cap=cfg.cap or DEFAULT_BUILD_CAP)
    if from_ is None and to is None:
        _emit(cfg, rows_to_csv(lat, mobius_rows(lat, workers=cfg.workers)))
        return 0
    a = _read_element(lat, from_ if from_ is not None else format_sequence(lat.elements[lat.zero]))
    b = _read_element(lat, to if to is not None else format_sequence(lat.elements[lat.one]))
    sa, sb = lat.elements[a], lat.elements[b]
    if not leq(lat, a, b):
        _emit(cfg, "incomparable: %s is not below %s\n" % (format_sequence(sa), format_sequence(sb)))
        return 0
    view = interval_elements(lat, a, b)
    rec = mobius_recursive_pair(lat, a, b)
    cls = classify_interval(sa, sb, lat.m)
    closed = mobius_closed(sa, sb, lat.m)
    lines = [
        "from=%s to=%s" % (format_sequence(sa), format_sequence(sb)),
        "mu_recursive=%d" % rec,
        "mu_chain=%d" % mobius_chain_alternating(view),
        "mu_falling=%d" % mobius_falling(view),
        "mu_closed=%d" % closed,
        "class=%s D={%s}" % (cls, ",".join(map(str, cls.D))),
        "discrepancy=%s" % ("yes" if closed != rec else "no"),
    ]
    _emit(cfg, "\n".join(lines) + "\n")
    return 0


def _suite_el(lat, cfg):
    report = verify_el(lat, workers=cfg.workers)
    bad = report.violations
    if bad:
        r = bad[0]
        raise VerificationFailed("interval [%s,%s]: %s" % (
            short_name(lat.elements[r.a]), short_name(lat.elements[r.b]), r.violation))
    return "%d intervals, 0 violations, %d falling-label mismatches recorded" % (
        len(report.rows), len(report.falling_mismatches))


def _suite_mobius(lat, cfg):
    rows = mobius_rows(lat, workers=cfg.workers)
    m = lat.m
    for r in rows:
        where = "[%s,%s]" % (short_name(lat.elements[r.a]), short_name(lat.elements[r.b]))
        if not r.engines_agree:
            raise VerificationFailed("%s engines disagree: recursive=%d chain=%d falling=%d"
                                     % (where, r.mu_recursive, r.mu_chain, r.mu_falling))
        if r.mu_recursive not in (-1, 0, 1):
            raise VerificationFailed("%s mu=%d outside {-1,0,1}" % (where, r.mu_recursive))
        if r.cls.is_sphere and r.mu_recursive != (-1) ** r.cls.dim:
            raise VerificationFailed("%s classified %s but mu=%d" % (where, r.cls, r.mu_recursive))
        seq = lat.elements[r.b]
        if r.a == lat.zero and mobius_from_bottom(seq, m) != r.mu_recursive:
            raise VerificationFailed("%s bottom closed form gives %d, mu=%d"
                                     % (where, mobius_from_bottom(seq, m), r.mu_recursive))
        seq = lat.elements[r.a]
        if r.b == lat.one and mobius_to_top(seq, m) != r.mu_recursive:
            raise VerificationFailed("%s top closed form gives %d, mu=%d"
                                     % (where, mobius_to_top(seq, m), r.mu_recursive))
    return "%d intervals, engines agree" % len(rows)


def _suite_spherical(lat, cfg):
    try:
        S0, S1 = spherical_census(lat)
        top_census_by_diff(lat)
    except InvariantViolation as exc:
        raise VerificationFailed(str(exc)) from None
    return "|S0| = %d, |S1| = %d" % (len(S0), len(S1))


def _suite_theorem43(lat, cfg, sink):
    rows = discrepancies(mobius_rows(lat, workers=cfg.workers))
    body = rows_to_csv(lat, rows).splitlines()
    if not sink:
        sink.append("m,n," + body[0])
    sink.extend("%d,%d,%s" % (lat.m, lat.n, line) for line in body[1:])
    return "%d discrepancy rows" % len(rows)


def cmd_verify(cfg, suite, grid=None):
    if cfg.m is not None and cfg.n is not None:
        cells = [(cfg.m, cfg.n)]
    elif cfg.m is None and cfg.n is None:
        cells = parse_grid(grid or DEFAULT_GRID)
    else:
        raise UsageError("give both --m and --n, or neither (grid mode)")
    suites = SUITES if suite == "all" else (suite,)
    csv_sink = []
    census = []
    status = 0
    for m, n in cells:
        lat = build_lattice(m, n, cap=cfg.cap or DEFAULT_BUILD_CAP)
        for name in suites:
            try:
                if name == "theorem43":
                    summary = _suite_theorem43(lat, cfg, csv_sink)
                else:
                    summary = {"el": _suite_el, "mobius": _suite_mobius,
                               "spherical": _suite_spherical}[name](lat, cfg)
                    if name == "spherical":
                        census.append(census_json(lat))
                _note("%s m=%d n=%d: ok, %s" % (name, m, n, summary))
            except VerificationFailed as exc:
                _note("%s m=%d n=%d: FAIL, %s" % (name, m, n, exc))
                status = 1
    if "theorem43" in suites:
        _emit(cfg, "\n".join(csv_sink) + "\n")
    elif suites == ("spherical",) and cfg.format == "json":
        _emit(cfg, census[0] + "\n" if len(census) == 1 else "[\n" + ",\n".join(census) + "\n]\n")
    return status


def cmd_render(seq_text, m):
    seq = parse_sequence(seq_text)
    verdict = validate_sequence(seq, m)
    if not verdict.valid:
        _note("%s: %s" % (seq_text, describe_violation(verdict)))
        return 2
    sys.stdout.write(render_path(seq, m))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="mtamari",
                                     description="m-Tamari lattices: enumeration, EL checks, Möbius function")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_mn=True, fmt=None):
        p.add_argument("--m", type=int, required=need_mn)
        p.add_argument("--n", type=int, required=need_mn)
        p.add_argument("--cap", type=int)
        p.add_argument("--out")
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--format", default=fmt or "text", choices=FORMATS)

    common(sub.add_parser("enumerate", help="list all m-Dyck sequences of height n"))
    common(sub.add_parser("lattice", help="export the Hasse diagram"), fmt="json")
    p = sub.add_parser("mobius", help="Möbius values for one pair or the whole table")
    common(p)
    p.add_argument("--from", dest="from_")
    p.add_argument("--to")
    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("suite", choices=SUITES + ("all",))
    common(p, need_mn=False)
    p.add_argument("--grid", help="cells as m:nlo-nhi,... (default %s)" % DEFAULT_GRID)
    p = sub.add_parser("render", help="draw a path as ASCII")
    p.add_argument("seq")
    p.add_argument("--m", type=int, required=True)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "render":
            return cmd_render(args.seq, args.m)
        cfg = RunConfig(args.m, args.n, args.cap, args.format, args.out, args.workers)
        if cfg.m is not None and cfg.m < 1 or cfg.n is not None and cfg.n < 1:
            raise UsageError("--m and --n must be positive")
        if args.command == "enumerate":
            return cmd_enumerate(cfg)
        if args.command == "lattice":
            return cmd_lattice(cfg)
        if args.command == "mobius":
            return cmd_mobius(cfg, args.from_, args.to)
        return cmd_verify(cfg, args.suite, args.grid)
    except (UsageError, CapExceeded, EmptyIntervalError, OSError) as exc:
        _note("error: %s" % exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
