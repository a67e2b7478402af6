"""Catalogue of explicit base factorizations.

Three layers back the catalogue:

* transcribed explicit solutions shipped as package data (verified on load;
  the four transcription corrections are listed in data/appendix/CORRECTIONS.md);
* generated entries (pure one-cycle-length bases and the doubled even cases
  on 15 vertices), shipped pre-computed and regenerable on demand into a
  cache directory;
* registered open keys: instances the catalogue knows to be unsettled carry
  no factorization and report status "unknown-open".

The text format is the package's one certificate format: an entry header
``HWP* v m n r s`` followed by one line per factor, each a concatenation of
``(a,b,c,...)`` cycles with no spaces; ``#`` starts a comment and a blank
line ends an entry.  Serialization of a parsed entry is bit-exact.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterator

from .digraph import complete_symmetric
from .errors import AtlasParseError, CacheCorruptionError, GenerationTimeoutError
from .model import (
    Factorization,
    ProblemSpec,
    TwoFactor,
    canonical_cycle,
    verify_factorization,
)

__all__ = [
    "AtlasKey",
    "AtlasEntry",
    "Atlas",
    "parse_atlas_text",
    "serialize_entry",
    "default_cache_dir",
    "get_default_atlas",
    "OPEN_KEYS",
]


@dataclass(frozen=True, order=True)
class AtlasKey:
    """Normalized instance key: m < n always."""

    v: int
    m: int
    n: int
    r: int
    s: int

    @staticmethod
    def of(v: int, m: int, n: int, r: int, s: int) -> "AtlasKey":
        if m > n:
            m, n, r, s = n, m, s, r
        return AtlasKey(v, m, n, r, s)

    def spec(self) -> ProblemSpec:
        return ProblemSpec(self.v, self.m, self.n, self.r, self.s)


@dataclass
class AtlasEntry:
    key: AtlasKey
    factorization: Factorization | None
    provenance: str  # appendix | generated-search | generated-doubling | composite
    status: str  # verified | unknown-open


# Keys the catalogue records as possibly-unsolvable: no certificate is known
# and exhausting them is out of desk-scale reach, so they are marked open
# rather than absent.
OPEN_KEYS: frozenset[AtlasKey] = frozenset(
    {
        AtlasKey(15, 3, 5, 11, 3),
        AtlasKey(15, 3, 5, 12, 2),
        AtlasKey(15, 3, 5, 13, 1),
        AtlasKey(15, 3, 15, 13, 1),
    }
)


def default_cache_dir() -> Path:
    env = os.environ.get("DHWP_CACHE")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "dhwp"


# --------------------------------------------------------------------------
# text format
# --------------------------------------------------------------------------


def serialize_entry(key: AtlasKey, factorization: Factorization) -> str:
    """Canonical text block for an entry (no trailing blank line)."""
    lines = [f"HWP* {key.v} {key.m} {key.n} {key.r} {key.s}"]
    for factor in factorization.factors:
        lines.append(
            "".join(
                "(" + ",".join(str(x) for x in c.vertices) + ")" for c in factor.cycles
            )
        )
    return "\n".join(lines) + "\n"


def _parse_factor_line(line: str, entry_name: str, index: int) -> TwoFactor:
    if not (line.startswith("(") and line.endswith(")")):
        raise AtlasParseError(f"{entry_name}: factor {index}: malformed line {line!r}")
    cycles = []
    for part in line[1:-1].split(")("):
        try:
            seq = tuple(int(x) for x in part.split(","))
            cycles.append(canonical_cycle(seq))
        except Exception as exc:
            raise AtlasParseError(
                f"{entry_name}: factor {index}: bad cycle ({part}): {exc}"
            ) from exc
    return TwoFactor(tuple(cycles))


def parse_atlas_text(
    text: str, provenance: str = "appendix", verify: bool = True
) -> list[AtlasEntry]:
    """Parse catalogue text; with verify (the default), a verification
    failure is a parse error naming the entry."""
    entries: list[AtlasEntry] = []
    header: AtlasKey | None = None
    factors: list[TwoFactor] = []

    def flush():
        nonlocal header, factors
        if header is None:
            return
        name = f"HWP*({header.v};{header.m}^{header.r},{header.n}^{header.s})"
        host = complete_symmetric(header.v)
        fac = Factorization(host, tuple(factors))
        if verify:
            verdict = verify_factorization(host, fac, header.spec())
            if not verdict.valid:
                fail = verdict.first_failure
                raise AtlasParseError(
                    f"{name}: verification failed: {fail.reason}: {fail.detail}"
                )
        entries.append(AtlasEntry(header, fac, provenance, "verified" if verify else "unchecked"))
        header, factors = None, []

    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            flush()
            continue
        if line.startswith("#"):
            continue
        if line.startswith("HWP*"):
            flush()
            parts = line.split()
            if len(parts) != 6:
                raise AtlasParseError(f"malformed header {line!r}")
            try:
                v, m, n, r, s = (int(x) for x in parts[1:])
            except ValueError as exc:
                raise AtlasParseError(f"malformed header {line!r}") from exc
            header = AtlasKey(v, m, n, r, s)
            continue
        if header is None:
            raise AtlasParseError(f"factor line outside entry: {line!r}")
        name = f"HWP*({header.v};{header.m}^{header.r},{header.n}^{header.s})"
        factors.append(_parse_factor_line(line, name, len(factors)))
    flush()
    return entries


def _stated_provenance(text: str) -> str:
    for line in text.splitlines():
        if line.startswith("# provenance:"):
            return line.split(":", 1)[1].strip()
        if line and not line.startswith("#"):
            break
    return "generated-search"


# --------------------------------------------------------------------------
# the catalogue
# --------------------------------------------------------------------------


class Atlas:
    """Explicit-solution catalogue with a generation-backed cache.

    ``lookup`` returns None for keys the catalogue knows nothing about
    (constructions handle those); a present entry with status
    "unknown-open" means the instance is recorded as unsettled.
    """

    def __init__(self, cache_dir: Path | str | None = None):
        self.cache_dir = Path(cache_dir) if cache_dir else default_cache_dir()
        self._store: dict[AtlasKey, AtlasEntry] = {}
        self._pure_memo: dict[tuple[int, int], tuple[Factorization, str]] = {}
        self._load_appendix()
        self._load_generated_dir()
        for key in OPEN_KEYS:
            self._store.setdefault(key, AtlasEntry(key, None, "appendix", "unknown-open"))

    # -- loading ------------------------------------------------------------

    def _load_appendix(self):
        data_root = resources.files("dhwp").joinpath("data/appendix")
        for item in sorted(data_root.iterdir(), key=lambda p: p.name):
            if item.name.endswith(".txt"):
                for entry in parse_atlas_text(item.read_text(), provenance="appendix"):
                    self._store[entry.key] = entry

    def _load_generated_dir(self):
        data_root = resources.files("dhwp").joinpath("data/generated")
        if not data_root.is_dir():
            return
        for item in sorted(data_root.iterdir(), key=lambda p: p.name):
            if item.name.endswith(".txt"):
                text = item.read_text()
                for entry in parse_atlas_text(text, provenance=_stated_provenance(text)):
                    self._store.setdefault(entry.key, entry)

    @staticmethod
    def _cache_name(key: AtlasKey) -> str:
        return f"hwp_{key.v}_{key.m}_{key.n}_{key.r}_{key.s}.txt"

    @staticmethod
    def _single(entries: list[AtlasEntry], key: AtlasKey, origin: str) -> AtlasEntry:
        if len(entries) != 1 or entries[0].key != key:
            raise CacheCorruptionError(f"{origin}: expected exactly the entry {key}")
        return entries[0]

    # -- queries ------------------------------------------------------------

    def lookup(self, key: AtlasKey) -> AtlasEntry | None:
        key = AtlasKey.of(key.v, key.m, key.n, key.r, key.s)
        hit = self._store.get(key)
        if hit is not None:
            return hit
        cached = self._load_cached(key)
        if cached is not None:
            self._store[key] = cached
        return cached

    def entries(self) -> Iterator[AtlasEntry]:
        return iter(sorted(self._store.values(), key=lambda e: e.key))

    def appendix_entries(self) -> list[AtlasEntry]:
        return [e for e in self.entries() if e.provenance == "appendix" and e.factorization]

    # -- cache --------------------------------------------------------------

    def _load_cached(self, key: AtlasKey) -> AtlasEntry | None:
        path = self.cache_dir / self._cache_name(key)
        if not path.exists():
            return None
        try:
            text = path.read_text()
            entries = parse_atlas_text(text, provenance=_stated_provenance(text))
            return self._single(entries, key, str(path))
        except AtlasParseError as exc:
            raise CacheCorruptionError(f"{path}: {exc}") from exc

    def _persist(self, entry: AtlasEntry):
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        path = self.cache_dir / self._cache_name(entry.key)
        path.write_text(
            f"# provenance: {entry.provenance}\n"
            + serialize_entry(entry.key, entry.factorization)
        )

    # -- generation ---------------------------------------------------------

    def ensure_generated(self, key: AtlasKey, time_limit: float = 120.0) -> AtlasEntry:
        """Return the entry for a generatable base key, creating it if needed.

        Raises GenerationTimeoutError when the search budget runs out, and
        CacheCorruptionError when cached data fails verification.
        """
        key = AtlasKey.of(key.v, key.m, key.n, key.r, key.s)
        hit = self.lookup(key)
        if hit is not None:
            return hit
        from . import generate  # deferred: generation recipes use constructions

        factorization, provenance = generate.generate_base(self, key, time_limit)
        verdict = verify_factorization(factorization.host, factorization, key.spec())
        if not verdict.valid:
            raise GenerationTimeoutError(
                f"generation for {key} produced an invalid result: {verdict.first_failure}"
            )
        entry = AtlasEntry(key, factorization, provenance, "verified")
        self._store[key] = entry
        self._persist(entry)
        return entry

    # -- pure-profile memo (shared between equal-content keys) -------------

    def pure_memo(self) -> dict[tuple[int, int], tuple[Factorization, str]]:
        return self._pure_memo


_default_atlas: Atlas | None = None


def get_default_atlas() -> Atlas:
    """Process-wide catalogue instance using the default cache directory."""
    global _default_atlas
    if _default_atlas is None:
        _default_atlas = Atlas()
    return _default_atlas
