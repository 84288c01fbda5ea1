"""Command-line front end: ``sporadic <command> [options]``.

Exit status: 0 when every report row passes, 1 when a row fails or an
anomaly is flagged, 2 for usage, configuration or cache-directory errors.
"""

from __future__ import annotations

import argparse
import configparser
import dataclasses
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable

from . import congruence as cg
from . import pointcount, qseries, sequences
from .arith import is_prime, kronecker_symbol, primes_between
from .cache import Cache, series_to_text
from .congruence import CongruenceReport, CongruenceRow

FORMATS = ("text", "records", "csv")
SERIES_BUILDERS: dict[str, Callable[[int], qseries.QSeries]] = {
    "t": qseries.t_series,
    "s": qseries.s_series,
    "P": qseries.p_series,
    "g": qseries.g_series,
    "j": qseries.j_series,
}
G_PREFIX = {1: Fraction(1), 3: Fraction(3, 2), 5: Fraction(-9, 8), 7: Fraction(-85, 16), 9: Fraction(-981, 128)}


class ConfigError(Exception):
    """Bad flags or configuration file; exit status 2."""


@dataclass
class RunConfig:
    terms: int | None = None
    max_prime: int | None = None
    min_prime: int | None = None
    p: list[int] = field(default_factory=list)
    m_max: int = 9
    r_max: int = 2
    cover: int = 2
    cache_dir: str | None = None
    no_cache: bool = False
    format: str = "text"
    workers: int = 1
    # command specific
    triple: tuple[int, int, int] = (17, 6, 72)
    box_a: tuple[int, int] = (0, 20)
    box_b: tuple[int, int] = (0, 10)
    box_c: tuple[int, int] = (-20, 80)
    depth: int = 30
    hits_csv: str | None = None
    name: str = "g"
    deg_s: int = 24
    deg_j: int = 1
    k: int = 3
    genus: int = 0
    regular_cusps: int = 6
    irregular_cusps: int = 0
    elliptic: tuple[int, ...] = ()

    def validate(self) -> None:
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {', '.join(FORMATS)}")
        if self.cover not in (1, 2, 3):
            raise ConfigError("cover must be 1, 2 or 3")
        if self.terms is not None and self.terms < 1:
            raise ConfigError("terms must be positive")

    def need_terms(self, largest_index: int) -> int:
        """``terms``, checked to cover coefficient ``largest_index``."""
        minimal = largest_index + 1
        if self.terms is None:
            return minimal
        if self.terms < minimal:
            raise ConfigError(f"insufficient series length: --terms {self.terms} < {minimal}; "
                              f"minimal sufficient N = {minimal}")
        return self.terms


def _int_list(text: str) -> list[int]:
    return [int(x) for x in str(text).replace(",", " ").split()]


def _range(text: str) -> tuple[int, int]:
    lo, _, hi = str(text).partition(":")
    if not hi:
        raise ValueError(f"expected lo:hi, got {text!r}")
    return int(lo), int(hi)


def _triple(text: str) -> tuple[int, int, int]:
    vals = _int_list(text)
    if len(vals) != 3:
        raise ValueError(f"expected A,B,C, got {text!r}")
    return tuple(vals)


CONVERTERS: dict[str, Callable] = {
    "terms": int, "max_prime": int, "min_prime": int, "p": _int_list,
    "m_max": int, "r_max": int, "cover": int, "cache_dir": str,
    "no_cache": lambda v: str(v).lower() in ("1", "true", "yes", "on"),
    "format": str, "workers": int, "triple": _triple,
    "box_a": _range, "box_b": _range, "box_c": _range, "depth": int, "hits_csv": str,
    "name": str, "deg_s": int, "deg_j": int, "k": int, "genus": int,
    "regular_cusps": int, "irregular_cusps": int, "elliptic": lambda v: tuple(_int_list(v)),
}


def read_config_file(path: str) -> dict:
    """``key = value`` lines; ``#`` starts a comment. Keys may use - or _."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
    parser.optionxform = str
    try:
        parser.read_string("[run]\n" + text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config file {path}: {exc}") from exc
    out = {}
    for key, value in parser["run"].items():
        name = key.strip().replace("-", "_")
        if name not in CONVERTERS:
            raise ConfigError(f"unknown config key {key!r} in {path}")
        out[name] = value
    return out


def build_config(args: argparse.Namespace) -> RunConfig:
    raw: dict = {}
    if getattr(args, "config", None):
        raw.update(read_config_file(args.config))
    for name in CONVERTERS:
        value = getattr(args, name, None)
        if value is not None and value is not False:
            raw[name] = value
    values = {}
    for name, value in raw.items():
        try:
            values[name] = value if not isinstance(value, str) else CONVERTERS[name](value)
        except ValueError as exc:
            raise ConfigError(f"bad value for {name}: {exc}") from exc
    cfg = RunConfig(**values)
    cfg.validate()
    return cfg


# ---------------------------------------------------------------------------
# shared data, through the cache

class Context:
    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.cache = Cache(cfg.cache_dir, enabled=not cfg.no_cache)
        if self.cache.enabled:
            self.cache.root.mkdir(parents=True, exist_ok=True)
            if not os.access(self.cache.root, os.W_OK):
                raise ConfigError(f"cache directory {self.cache.root} is not writable")
        pointcount.TRACE_STORE = self.cache.counts if self.cache.enabled else None

    def series(self, name: str, N: int) -> qseries.QSeries:
        return self.cache.series(name, N, SERIES_BUILDERS[name])

    def g(self, N: int) -> qseries.QSeries:
        return self.series("g", N)


@dataclass
class Outcome:
    report: CongruenceReport
    text: str = ""


def _row(family, p, required, achieved, passed, note="", m=None, r=None) -> CongruenceRow:
    return CongruenceRow(family, p, m, r, required, achieved, passed, note)


# ---------------------------------------------------------------------------
# commands

def cmd_sequences(ctx: Context) -> Outcome:
    cfg = ctx.cfg
    N = 300 if cfg.terms is None else cfg.terms
    prefix = sequences.zagier_u(cfg.triple, N)
    rep = CongruenceReport("sequences")
    lines = [f"{n} {v}" for n, v in enumerate(prefix.values)]
    rep.rows.append(_row("sequences-integral", None, N, sequences.integral_depth(cfg.triple, N),
                         prefix.integral, f"triple {cfg.triple}"))
    if tuple(cfg.triple) == sequences.F_TRIPLE:
        closed = [sequences.f_closed(n) for n in range(N + 1)]
        agree = sum(1 for a, b in zip(closed, prefix.values) if a == b)
        rep.rows.append(_row("sequences-closed-form", None, N + 1, agree, agree == N + 1,
                             "closed form against recurrence"))
        head = tuple(int(v) for v in prefix.values[:5])
        rep.rows.append(_row("sequences-prefix", None, "1 6 42 312 2394", " ".join(map(str, head)),
                             head == (1, 6, 42, 312, 2394)))
    return Outcome(rep, "\n".join(lines) + "\n")


def cmd_search(ctx: Context) -> Outcome:
    cfg = ctx.cfg
    hits = sequences.search_integral(cfg.box_a, cfg.box_b, cfg.box_c, cfg.depth, cfg.workers)
    if cfg.hits_csv:
        Path(cfg.hits_csv).write_text(sequences.hits_to_csv(hits))
    found = {tuple(h.triple) for h in hits}
    rep = CongruenceReport("search")

    def inside(t):
        return all(lo <= v <= hi for v, (lo, hi) in zip(t, (cfg.box_a, cfg.box_b, cfg.box_c)))

    for t in list(sequences.SPORADIC_TRIPLES) + [sequences.APERY_B_TRIPLE]:
        if inside(t):
            rep.rows.append(_row("search", None, "(%d,%d,%d)" % tuple(t),
                                 "found" if tuple(t) in found else "missing", tuple(t) in found))
    rep.notes.append(f"{len(hits)} integral triples at depth {cfg.depth}, "
                     f"{sum(h.nondegenerate for h in hits)} nondegenerate")
    text = "A B C nondegenerate depth\n" + "".join(
        f"{h.triple[0]} {h.triple[1]} {h.triple[2]} {int(h.nondegenerate)} {h.depth}\n" for h in hits)
    return Outcome(rep, text)


def cmd_series(ctx: Context) -> Outcome:
    cfg = ctx.cfg
    if cfg.name not in SERIES_BUILDERS:
        raise ConfigError(f"series name must be one of {', '.join(SERIES_BUILDERS)}")
    N = 2000 if cfg.terms is None else cfg.terms
    s = ctx.series(cfg.name, N)
    rep = CongruenceReport("series")
    if cfg.name == "g":
        want = {n: c for n, c in G_PREFIX.items() if n < N}
        got = {n: s[n] for n in want}
        rep.rows.append(_row("series-g-prefix", None, " ".join(map(str, want.values())),
                             " ".join(map(str, got.values())), got == want))
        even = [n for n, c in s.items() if n % 2 == 0 and c]
        rep.rows.append(_row("series-g-even", None, 0, len(even), not even, "nonzero even coefficients"))
        odd_den = [n for n, c in s.items() if c.denominator & (c.denominator - 1)]
        rep.rows.append(_row("series-g-denominators", None, 0, len(odd_den), not odd_den,
                             "denominators that are not powers of 2"))
        top = max(c.denominator.bit_length() - 1 for _, c in s.items())
        rep.notes.append(f"largest denominator 2^{top} up to w^{N - 1}")
    else:
        rep.rows.append(_row("series-length", None, N, s.prec, s.prec == N))
    return Outcome(rep, series_to_text(cfg.name, s))


def cmd_pf_check(ctx: Context) -> Outcome:
    N = 300 if ctx.cfg.terms is None else ctx.cfg.terms
    rep = CongruenceReport("pf-check")
    theta = qseries.picard_fuchs_residual(N, "theta")
    rep.rows.append(_row("pf-theta", None, "zero", "zero" if theta.is_zero() else f"t^{theta.valuation()}",
                         theta.is_zero(), f"residual to t^{N}"))
    ordinary = qseries.picard_fuchs_residual(N, "ordinary")
    c0 = ordinary[0]
    rep.rows.append(_row("pf-ordinary", None, "nonzero at t^0", c0, c0 != 0,
                         "d/dt reading; discrepancy expected"))
    return Outcome(rep)


def cmd_sj_relation(ctx: Context) -> Outcome:
    cfg = ctx.cfg
    solve_N = 110 if cfg.terms is None else cfg.terms
    check_N = max(300, solve_N)
    try:
        rel = qseries.derive_sj_relation(cfg.deg_s, cfg.deg_j, solve_N)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    rep = CongruenceReport("sj-relation")
    text = ""
    if rel is None:
        rep.rows.append(_row("sj-found", None, "relation", "none", False,
                             f"deg_s <= {cfg.deg_s}, deg_j <= {cfg.deg_j}"))
    else:
        res = rel.evaluate(check_N)
        rep.rows.append(_row("sj-found", None, "relation", f"kernel dim {rel.kernel_dim}", True,
                             f"s-degree {rel.deg_s}, j-degree {rel.deg_j}"))
        rep.rows.append(_row("sj-vanishes", None, check_N, check_N if res.is_zero() else res.valuation(),
                             res.is_zero(), f"evaluated to w^{check_N}"))
        text = str(rel) + "\n"
    printed = qseries.printed_sj_relation().evaluate(40)
    if printed.is_zero():
        rep.notes.append("printed relation vanishes to w^40")
    else:
        v = printed.valuation()
        rep.notes.append(f"printed relation residual: valuation {v}, leading coefficient {printed[v]}")
    rotated = qseries.rotated_printed_residual(120)
    rep.notes.append("printed relation at s -> i*s, j -> j(6 tau): "
                     + ("vanishes" if rotated.is_zero() else f"residual valuation {rotated.valuation()}")
                     + f" to w^{rotated.prec}")
    return Outcome(rep, text)


def _one_prime(cfg: RunConfig, default: int) -> int:
    if len(cfg.p) > 1:
        raise ConfigError("this command takes a single --p")
    return cfg.p[0] if cfg.p else default


def cmd_trace(ctx: Context) -> Outcome:
    cfg = ctx.cfg
    p = _one_prime(cfg, 7)
    try:
        res = pointcount.surface_trace(p, cfg.cover)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    rep = CongruenceReport("trace")
    F = pointcount.as_field(p)
    lines = [f"q = {res.q}, cover = {res.cover}"]
    for s0, lt in res.per_fiber:
        tag = ""
        if pointcount.is_singular_param(F, s0, cfg.cover):
            cls = pointcount.classify_fiber(F, s0, cfg.cover)
            tag = f"  {cls.kind.value} {cls.kodaira} ({cls.detail})"
        lines.append(f"{s0} {lt}{tag}")
    lines.append(f"A {res.A}")
    if cfg.cover == 2 and F.degree == 1 and p >= 5:
        want = kronecker_symbol(-1, p) * cg.gamma_extract(p, ctx.g(p + 1)).value
        rep.rows.append(_row("trace", p, want, res.A, res.A == want, "(-1/p) gamma(p)"))
    else:
        rep.rows.append(_row("trace", res.q, "-", res.A, True, f"cover {cfg.cover}; no reference value"))
    return Outcome(rep, "\n".join(lines) + "\n")


def cmd_det(ctx: Context) -> Outcome:
    p = _one_prime(ctx.cfg, 7)
    try:
        det = pointcount.rho_det(p)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    want = kronecker_symbol(-24, p) * p * p
    rep = CongruenceReport("det")
    rep.rows.append(_row("det", p, want, det, det == want, "(A_p^2 - A_{p^2})/2 against (-24/p) p^2"))
    return Outcome(rep)


def cmd_gamma(ctx: Context) -> Outcome:
    cfg = ctx.cfg
    lo = 5 if cfg.min_prime is None else cfg.min_prime
    hi = 97 if cfg.max_prime is None else cfg.max_prime
    g = ctx.g(cfg.need_terms(_largest_prime(hi)))
    rep = cg.gamma_report(lo, hi, g, cfg.workers)
    rep.extend(cg.vanishing_readings(lo, hi, g))
    return Outcome(rep)


def _largest_prime(n: int) -> int:
    ps = primes_between(2, n)
    if not ps:
        raise ConfigError(f"no primes up to {n}")
    return ps[-1]


def cmd_theorem1(ctx: Context) -> Outcome:
    cfg = ctx.cfg
    hi = 199 if cfg.max_prime is None else cfg.max_prime
    g = ctx.g(cfg.need_terms(_largest_prime(hi)))
    return Outcome(cg.verify_theorem1(hi, g))


def cmd_asd(ctx: Context) -> Outcome:
    cfg = ctx.cfg
    primes = cfg.p or [5, 7, 11, 13]
    if any(p < 5 or not is_prime(p) for p in primes):
        raise ConfigError("asd primes must be primes >= 5")
    N = cfg.need_terms(max(primes)) if cfg.terms is not None else 1600
    g = ctx.g(N)
    rep = cg.three_term_grid(g, primes, cfg.m_max, cfg.r_max, N - 1)
    rep.extend(cg.beukers_transfer(primes, cfg.m_max, cfg.r_max, N - 1, g))
    return Outcome(rep)


def cmd_stienstra_beukers(ctx: Context) -> Outcome:
    cfg = ctx.cfg
    return Outcome(cg.verify_stienstra_beukers(100 if cfg.max_prime is None else cfg.max_prime,
                                               5 if cfg.min_prime is None else cfg.min_prime))


def cmd_serre_faltings(ctx: Context) -> Outcome:
    cfg = ctx.cfg
    lo = 31 if cfg.min_prime is None else cfg.min_prime
    hi = 73 if cfg.max_prime is None else cfg.max_prime
    g = ctx.g(cfg.need_terms(_largest_prime(hi)))
    return Outcome(cg.serre_faltings_table(lo, hi, g, cfg.workers))


def cmd_twists(ctx: Context) -> Outcome:
    cfg = ctx.cfg
    hi = 100 if cfg.max_prime is None else cfg.max_prime
    g = ctx.g(cfg.need_terms(_largest_prime(hi)))
    rep = cg.twist_report(g, hi)
    inert = cg.cubic_inert_check(7)
    rep.rows.append(_row("cubic-inert", 7, True, inert, inert, "s^3 + 3s - 2 has no root mod 7"))
    return Outcome(rep)


def cmd_three_cover(ctx: Context) -> Outcome:
    cfg = ctx.cfg
    hi = 61 if cfg.max_prime is None else cfg.max_prime
    rep = cg.verify_three_cover(hi, cfg.workers)
    rep.extend(cg.verify_three_cover_eigenpiece(hi))
    rep.notes.append("three-cover compares the full four-dimensional trace; three-cover-piece "
                     "compares the t^(2(p-1)/3) eigenpiece")
    return Outcome(rep)


def cmd_dim(ctx: Context) -> Outcome:
    cfg = ctx.cfg
    try:
        d = cg.dim_cusp_forms(cfg.k, cfg.genus, cfg.regular_cusps, cfg.irregular_cusps, cfg.elliptic)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    rep = CongruenceReport("dim")
    rep.rows.append(_row("dim", None, "integer", d, d.denominator == 1,
                         f"k={cfg.k} genus={cfg.genus} r1={cfg.regular_cusps} r2={cfg.irregular_cusps} "
                         f"elliptic={list(cfg.elliptic)}"))
    return Outcome(rep, f"{d}\n")


def cmd_oracles(ctx: Context) -> Outcome:
    from .oracles import oracle_report

    hi = 13 if ctx.cfg.max_prime is None else ctx.cfg.max_prime
    return Outcome(oracle_report(hi))


COMMANDS: dict[str, tuple[Callable[[Context], Outcome], str]] = {
    "sequences": (cmd_sequences, "recurrence prefix and closed-form cross-check"),
    "search": (cmd_search, "bounded search for integral recurrence triples"),
    "series": (cmd_series, "print a named series in cache format"),
    "pf-check": (cmd_pf_check, "Picard-Fuchs residual in both readings"),
    "sj-relation": (cmd_sj_relation, "algebraic relation between s and j by nullspace"),
    "trace": (cmd_trace, "Frobenius trace with per-fiber breakdown"),
    "det": (cmd_det, "determinant (A_p^2 - A_{p^2})/2"),
    "gamma": (cmd_gamma, "gamma(p) from extraction, point counts and CM"),
    "theorem1": (cmd_theorem1, "F((p-1)/2) = gamma(p) mod p"),
    "asd": (cmd_asd, "three-term congruences on g and the differential-form sequence"),
    "stienstra-beukers": (cmd_stienstra_beukers, "Apery b_{(p-1)/2} congruence"),
    "serre-faltings": (cmd_serre_faltings, "trace/determinant table on 31..73"),
    "twists": (cmd_twists, "witnesses against quadratic twists"),
    "three-cover": (cmd_three_cover, "F((p-1)/3) against the three-cover trace"),
    "dim": (cmd_dim, "dimension of odd-weight cusp forms"),
    "oracles": (cmd_oracles, "fast kernels against brute-force scans"),
}

# acceptance order: series before counts before congruences
ALL_PLAN: list[tuple[str, dict]] = [
    ("sequences", {"terms": 300}),
    ("search", {}),
    ("series", {"name": "g", "terms": 2000}),
    ("pf-check", {"terms": 300}),
    ("sj-relation", {}),
    ("dim", {}),
    ("oracles", {}),
    ("trace", {"p": [7]}),
    ("det", {"p": [7]}),
    ("serre-faltings", {}),
    ("gamma", {}),
    ("theorem1", {"max_prime": 199, "terms": 200}),
    ("asd", {"terms": 1600}),
    ("stienstra-beukers", {"max_prime": 100}),
    ("twists", {"max_prime": 100}),
    ("three-cover", {"max_prime": 61}),
]


def emit(rep: CongruenceReport, text: str, fmt: str, header: bool = True) -> str:
    if fmt == "records":
        return rep.to_records()
    if fmt == "csv":
        return rep.to_csv(header=header)
    return text + rep.to_text()


def run_all(cfg: RunConfig, out) -> int:
    matrix = []
    for i, (name, overrides) in enumerate(ALL_PLAN):
        sub = dataclasses.replace(cfg, **{**dataclasses.asdict(RunConfig()), **overrides,
                                          "cache_dir": cfg.cache_dir, "no_cache": cfg.no_cache,
                                          "format": cfg.format, "workers": cfg.workers})
        outcome = COMMANDS[name][0](Context(sub))
        rep = outcome.report
        out.write(emit(rep, "", cfg.format, header=(i == 0)))
        matrix.append((name, len(rep.rows), len(rep.failures()), len(rep.anomalies), rep.ok))
    width = max(len(m[0]) for m in matrix)
    lines = ["== summary ==", f"{'command'.ljust(width)}  rows  failed  anomalies  result"]
    for name, rows, failed, anomalies, ok in matrix:
        lines.append(f"{name.ljust(width)}  {rows:4d}  {failed:6d}  {anomalies:9d}  {'PASS' if ok else 'FAIL'}")
    summary = "\n".join(lines) + "\n"
    (out if cfg.format == "text" else sys.stderr).write(summary)
    return 0 if all(m[4] for m in matrix) else 1


def _add_common(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("run configuration")
    g.add_argument("--config", help="key = value configuration file; flags override it")
    g.add_argument("--terms", "-N", type=int, help="series truncation N (coefficients up to w^(N-1))")
    g.add_argument("--max-prime", dest="max_prime", type=int)
    g.add_argument("--min-prime", dest="min_prime", type=int)
    g.add_argument("--p", type=_int_list, help="prime(s), comma separated")
    g.add_argument("--m-max", dest="m_max", type=int)
    g.add_argument("--r-max", dest="r_max", type=int)
    g.add_argument("--cover", type=int, choices=(1, 2, 3))
    g.add_argument("--format", choices=FORMATS)
    g.add_argument("--workers", type=int)
    g.add_argument("--cache-dir", dest="cache_dir")
    g.add_argument("--no-cache", dest="no_cache", action="store_true", default=None)
    g.add_argument("--triple", type=_triple, help="A,B,C")
    g.add_argument("--box-a", dest="box_a", type=_range, help="lo:hi")
    g.add_argument("--box-b", dest="box_b", type=_range, help="lo:hi")
    g.add_argument("--box-c", dest="box_c", type=_range, help="lo:hi")
    g.add_argument("--depth", type=int)
    g.add_argument("--hits-csv", dest="hits_csv")
    g.add_argument("--name", choices=sorted(SERIES_BUILDERS))
    g.add_argument("--deg-s", dest="deg_s", type=int)
    g.add_argument("--deg-j", dest="deg_j", type=int)
    g.add_argument("--k", type=int)
    g.add_argument("--genus", type=int)
    g.add_argument("--regular-cusps", dest="regular_cusps", type=int)
    g.add_argument("--irregular-cusps", dest="irregular_cusps", type=int)
    g.add_argument("--elliptic", type=lambda v: tuple(_int_list(v)), help="elliptic orders, comma separated")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sporadic", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        _add_common(sub.add_parser(name, help=help_text))
    _add_common(sub.add_parser("all", help="every check in dependency order, with a summary"))
    cache = sub.add_parser("cache", help="inspect or clear the cache")
    cache.add_argument("action", choices=("status", "clear"))
    cache.add_argument("--cache-dir", dest="cache_dir")
    cache.add_argument("--config")
    return parser


def _cache_command(args) -> int:
    raw = read_config_file(args.config) if args.config else {}
    root = args.cache_dir or raw.get("cache_dir")
    cache = Cache(root)
    try:
        if args.action == "clear":
            n = cache.clear()
            print(f"removed {n} entries from {cache.root}")
            return 0
        entries = cache.entries()
    except OSError as exc:
        print(f"error: cache directory {cache.root}: {exc}", file=sys.stderr)
        return 2
    print(f"cache: {cache.root}")
    for e in entries:
        print(f"{e.kind:7s} {e.key:24s} version={e.version if e.version is not None else '-'} {e.status}")
    if not entries:
        print("(empty)")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        if args.command == "cache":
            return _cache_command(args)
        cfg = build_config(args)
        if args.command == "all":
            return run_all(cfg, sys.stdout)
        outcome = COMMANDS[args.command][0](Context(cfg))
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(emit(outcome.report, outcome.text, cfg.format))
    return 0 if outcome.report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
