"""On-disk memo of exact Born-Jordan elements.

One text record per element: ``m n r_sqrt2 r_arcsinh`` with both rationals
written as ``num/den``. Appends take an exclusive ``flock`` so concurrent
writers never interleave records.
"""
from __future__ import annotations

import fcntl
import os
from pathlib import Path

from ..specfun import BigRational
from .exact import BJExactEntry, bj_element_exact

CACHE_FILE = "bj_exact.txt"
DEFAULT_DIR = "pscache"


def default_cache_dir() -> Path:
    return Path(os.environ.get("PSCACHE_DIR", DEFAULT_DIR))


def _fmt(q: BigRational) -> str:
    return f"{q.numerator}/{q.denominator}"


def _parse(tok: str) -> BigRational:
    num, _, den = tok.partition("/")
    return BigRational(int(num), int(den or 1))


def format_record(e: BJExactEntry) -> str:
    return f"{e.m} {e.n} {_fmt(e.r_sqrt2)} {_fmt(e.r_arcsinh)}"


def parse_record(line: str) -> BJExactEntry:
    m, n, r2, ra = line.split()
    return BJExactEntry(int(m), int(n), _parse(r2), _parse(ra))


class ExactCache:
    """Load-once, append-on-flush store keyed by (m, n) with m >= n."""

    def __init__(self, directory=None):
        self.directory = Path(directory) if directory is not None else default_cache_dir()
        self.path = self.directory / CACHE_FILE
        self._data: dict[tuple[int, int], BJExactEntry] = {}
        self._pending: list[BJExactEntry] = []
        self.hits = 0
        self.misses = 0
        if self.path.exists():
            for line in self.path.read_text().splitlines():
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                e = parse_record(line)
                self._data[(e.m, e.n)] = e

    def __len__(self):
        return len(self._data)

    def __contains__(self, key):
        m, n = key
        return (max(m, n), min(m, n)) in self._data

    def get(self, m: int, n: int) -> BJExactEntry:
        key = (max(m, n), min(m, n))
        e = self._data.get(key)
        if e is not None:
            self.hits += 1
            return e
        self.misses += 1
        e = bj_element_exact(*key)
        self._data[key] = e
        if not e.is_zero:
            self._pending.append(e)
        return e

    def flush(self) -> int:
        if not self._pending:
            return 0
        self.directory.mkdir(parents=True, exist_ok=True)
        text = "".join(format_record(e) + "\n" for e in self._pending)
        with open(self.path, "a") as fh:
            fcntl.flock(fh, fcntl.LOCK_EX)
            try:
                fh.write(text)
            finally:
                fcntl.flock(fh, fcntl.LOCK_UN)
        written = len(self._pending)
        self._pending.clear()
        return written
