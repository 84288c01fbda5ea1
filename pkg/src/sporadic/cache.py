"""On-disk caches for named series and per-(q, cover) fiber traces.

Series file: header ``name N version`` then one ``n numerator denominator``
line for every exponent from min(0, valuation) to N-1. Count file: header
``counts q cover version``, one ``s0 localtrace`` line per parameter
(``inf`` last) and a closing ``A value`` line. Files are written to a
temporary name and renamed into place.
"""

from __future__ import annotations

import logging
import os
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable

from .pointcount import INFINITY, TraceResult
from .qseries import QSeries

CACHE_VERSION = 1
ENV_VAR = "SPORADIC_CACHE_DIR"

log = logging.getLogger(__name__)


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "sporadic"


class CorruptEntry(ValueError):
    pass


@dataclass
class CacheEntry:
    kind: str  # "series" or "counts"
    key: str
    version: int | None
    path: Path
    status: str  # ok / corrupt / stale


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def series_to_text(name: str, s: QSeries) -> str:
    lo = min(0, s.valuation())
    lines = [f"{name} {s.prec} {CACHE_VERSION}"]
    for n in range(lo, s.prec):
        c = s[n]
        lines.append(f"{n} {c.numerator} {c.denominator}")
    return "\n".join(lines) + "\n"


def series_from_text(text: str) -> tuple[str, int, QSeries]:
    lines = text.splitlines()
    if not lines:
        raise CorruptEntry("empty file")
    head = lines[0].split()
    if len(head) != 3:
        raise CorruptEntry("bad header")
    name, N, version = head[0], int(head[1]), int(head[2])
    if version != CACHE_VERSION:
        raise CorruptEntry(f"version {version} != {CACHE_VERSION}")
    coeffs = {}
    expected = None
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 3:
            raise CorruptEntry(f"bad line {line!r}")
        n, num, den = map(int, parts)
        if expected is not None and n != expected:
            raise CorruptEntry(f"gap at exponent {expected}")
        expected = n + 1
        coeffs[n] = Fraction(num, den)
    if expected != N:
        raise CorruptEntry(f"payload stops at {expected}, header says {N}")
    return name, N, QSeries(coeffs, N)


def counts_to_text(r: TraceResult) -> str:
    lines = [f"counts {r.q} {r.cover} {CACHE_VERSION}"] + r.to_lines()
    return "\n".join(lines) + "\n"


def counts_from_text(text: str) -> TraceResult:
    lines = text.splitlines()
    if not lines:
        raise CorruptEntry("empty file")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "counts":
        raise CorruptEntry("bad header")
    q, cover, version = int(head[1]), int(head[2]), int(head[3])
    if version != CACHE_VERSION:
        raise CorruptEntry(f"version {version} != {CACHE_VERSION}")
    body = lines[1:]
    if len(body) != q + 2 or not body[-1].startswith("A "):
        raise CorruptEntry("wrong number of fiber lines")
    per_fiber = []
    for line in body[:-1]:
        s0, lt = line.split()
        per_fiber.append((INFINITY if s0 == INFINITY else int(s0), int(lt)))
    A = int(body[-1].split()[1])
    if A != -sum(lt for _, lt in per_fiber):
        raise CorruptEntry("summary line disagrees with fibers")
    return TraceResult(q, cover, A, per_fiber)


class Cache:
    def __init__(self, root: Path | str | None = None, enabled: bool = True):
        self.root = Path(root) if root is not None else default_cache_dir()
        self.enabled = enabled
        self.hits = 0
        self.misses = 0

    def _series_path(self, name: str) -> Path:
        return self.root / "series" / f"{name}.txt"

    def _counts_path(self, q: int, cover: int) -> Path:
        return self.root / "counts" / f"q{q}_cover{cover}.txt"

    def series(self, name: str, N: int, build: Callable[[int], QSeries]) -> QSeries:
        """Series ``name`` to O(w^N), from disk when a long enough copy exists."""
        if self.enabled:
            path = self._series_path(name)
            if path.exists():
                try:
                    _, cached_N, s = series_from_text(path.read_text())
                    if cached_N >= N:
                        self.hits += 1
                        return s.truncate(N)
                except (CorruptEntry, ValueError) as exc:
                    log.warning("ignoring cache entry %s: %s", path, exc)
        self.misses += 1
        s = build(N)
        if self.enabled:
            _atomic_write(self._series_path(name), series_to_text(name, s))
        return s

    def counts(self, q: int, cover: int, build: Callable[[int, int], TraceResult]) -> TraceResult:
        if self.enabled:
            path = self._counts_path(q, cover)
            if path.exists():
                try:
                    r = counts_from_text(path.read_text())
                    self.hits += 1
                    return r
                except (CorruptEntry, ValueError) as exc:
                    log.warning("ignoring cache entry %s: %s", path, exc)
        self.misses += 1
        r = build(q, cover)
        if self.enabled:
            _atomic_write(self._counts_path(q, cover), counts_to_text(r))
        return r

    def entries(self) -> list[CacheEntry]:
        out = []
        for path in sorted((self.root / "series").glob("*.txt")):
            try:
                name, N, _ = series_from_text(path.read_text())
                out.append(CacheEntry("series", f"{name} N={N}", CACHE_VERSION, path, "ok"))
            except (CorruptEntry, ValueError) as exc:
                out.append(CacheEntry("series", path.stem, None, path, f"corrupt ({exc})"))
        for path in sorted((self.root / "counts").glob("*.txt")):
            try:
                r = counts_from_text(path.read_text())
                out.append(CacheEntry("counts", f"q={r.q} cover={r.cover}", CACHE_VERSION, path, "ok"))
            except (CorruptEntry, ValueError) as exc:
                out.append(CacheEntry("counts", path.stem, None, path, f"corrupt ({exc})"))
        return out

    def clear(self) -> int:
        removed = 0
        for sub in ("series", "counts"):
            for path in (self.root / sub).glob("*.txt"):
                path.unlink()
                removed += 1
        return removed
