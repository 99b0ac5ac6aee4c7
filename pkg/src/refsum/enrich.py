"""Citation-count enrichment: pluggable providers plus an on-disk cache.

A provider resolves (title, first-author family, year) to a count or
not-found. Lookups that fail in transport degrade softly: the record keeps
an absent count and the failure lands in the report; enrichment never aborts
the pipeline.

The cache is an append-only TSV, one record per line:
``key<TAB>count<TAB>timestamp`` where key hashes the lookup triple. Later
lines for the same key win, so updates are plain appends and the file stays
diff-friendly.
"""

from __future__ import annotations

import hashlib
import json
import re
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Protocol

from .errors import ProviderError
from .records import ReferenceRecord

_WS = re.compile(r"\s+")

CACHE_FILENAME = "citations.tsv"


def _norm(text: str) -> str:
    return _WS.sub(" ", text.strip().lower())


def lookup_key(title: str, family: str, year: int | None) -> str:
    """Stable cache key for one lookup triple."""
    blob = "|".join((_norm(title), _norm(family), str(year) if year else ""))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


class CitationProvider(Protocol):
    def resolve(self, title: str, family: str, year: int | None) -> int | None:
        """Return a non-negative count, or None when the work is unknown."""
        ...


class NullProvider:
    """Offline mode: every lookup is a miss."""

    def resolve(self, title: str, family: str, year: int | None) -> int | None:
        return None


class StaticCountProvider:
    """Counts from an in-memory or JSON-file mapping of title -> count."""

    def __init__(self, counts: dict[str, int]) -> None:
        self._counts = {_norm(title): count for title, count in counts.items()}

    @classmethod
    def from_file(cls, path: str | Path) -> StaticCountProvider:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        return cls({str(k): int(v) for k, v in data.items()})

    def resolve(self, title: str, family: str, year: int | None) -> int | None:
        return self._counts.get(_norm(title))


class ScholarLookupProvider:
    """HTTP client for a Semantic-Scholar-compatible paper search endpoint."""

    def __init__(self, base_url: str = "https://api.semanticscholar.org/graph/v1",
                 timeout: float = 10.0, session=None) -> None:
        import requests

        self._base = base_url.rstrip("/")
        self._timeout = timeout
        self._session = session or requests.Session()

    def resolve(self, title: str, family: str, year: int | None) -> int | None:
        import requests

        params = {"query": title, "fields": "title,year,citationCount", "limit": "5"}
        try:
            resp = self._session.get(f"{self._base}/paper/search",
                                     params=params, timeout=self._timeout)
            resp.raise_for_status()
            payload = resp.json()
        except (requests.RequestException, ValueError) as exc:
            raise ProviderError(f"lookup failed for {title!r}: {exc}") from exc
        hits = payload.get("data") or []
        best = None
        for hit in hits:
            if _norm(str(hit.get("title", ""))) == _norm(title):
                best = hit
                break
        if best is None:
            for hit in hits:
                hit_year = hit.get("year")
                if year is not None and isinstance(hit_year, int) and abs(hit_year - year) <= 1:
                    best = hit
                    break
        if best is None:
            return None
        count = best.get("citationCount")
        if isinstance(count, int) and count >= 0:
            return count
        return None


class CountCache:
    """Append-only citation-count cache under a directory."""

    def __init__(self, directory: str | Path) -> None:
        self._path = Path(directory) / CACHE_FILENAME
        self._lock = threading.Lock()
        self._counts: dict[str, int] = {}
        if self._path.exists():
            for line in self._path.read_text(encoding="utf-8").splitlines():
                parts = line.split("\t")
                if len(parts) >= 2:
                    try:
                        self._counts[parts[0]] = int(parts[1])
                    except ValueError:
                        continue  # tolerate a corrupt line

    def get(self, key: str) -> int | None:
        with self._lock:
            return self._counts.get(key)

    def put(self, key: str, count: int) -> None:
        stamp = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
        with self._lock:
            self._counts[key] = count
            self._path.parent.mkdir(parents=True, exist_ok=True)
            with self._path.open("a", encoding="utf-8") as fh:
                fh.write(f"{key}\t{count}\t{stamp}\n")

    def __len__(self) -> int:
        with self._lock:
            return len(self._counts)


@dataclass
class EnrichmentReport:
    """Hit/miss bookkeeping for one enrichment pass."""

    looked_up: int = 0
    already_present: int = 0
    cache_hits: int = 0
    provider_hits: int = 0
    not_found: int = 0
    failures: list[tuple[str, str]] = field(default_factory=list)

    def summary(self) -> str:
        line = (f"citation counts: {self.looked_up} looked up, "
                f"{self.already_present} already present, {self.cache_hits} from cache, "
                f"{self.provider_hits} from provider, {self.not_found} not found")
        if self.failures:
            line += f", {len(self.failures)} failed"
        return line


def enrich_citation_counts(
    records: list[ReferenceRecord],
    provider: CitationProvider | None,
    cache: CountCache | None = None,
    *,
    max_workers: int = 4,
) -> tuple[list[ReferenceRecord], EnrichmentReport]:
    """Fill absent citation counts from cache first, then the provider.

    Records that already carry a count are left untouched. Output order is
    the input order regardless of lookup completion order, and the whole
    pass is idempotent once the cache is warm.
    """
    report = EnrichmentReport()
    results: dict[int, int | None] = {}
    pending: list[int] = []

    for i, record in enumerate(records):
        if record.citation_count is not None:
            report.already_present += 1
            continue
        report.looked_up += 1
        family = record.authors[0].family if record.authors else ""
        key = lookup_key(record.title, family, record.year)
        cached = cache.get(key) if cache is not None else None
        if cached is not None:
            report.cache_hits += 1
            results[i] = cached
        else:
            pending.append(i)

    def fetch(i: int) -> tuple[int, int | None, str | None]:
        record = records[i]
        family = record.authors[0].family if record.authors else ""
        try:
            count = provider.resolve(record.title, family, record.year)
        except ProviderError as exc:
            return i, None, str(exc)
        return i, count, None

    if provider is not None and pending:
        workers = max(1, min(max_workers, len(pending)))
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for i, count, error in pool.map(fetch, pending):
                record = records[i]
                if error is not None:
                    report.failures.append((record.id, error))
                elif count is None:
                    report.not_found += 1
                else:
                    report.provider_hits += 1
                    results[i] = count
                    if cache is not None:
                        family = record.authors[0].family if record.authors else ""
                        cache.put(lookup_key(record.title, family, record.year), count)
    else:
        report.not_found += len(pending)

    enriched = []
    for i, record in enumerate(records):
        if i in results:
            enriched.append(replace(record, citation_count=results[i]))
        else:
            enriched.append(record)
    return enriched, report
