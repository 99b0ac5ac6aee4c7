"""Reference records: mapping parsed entries onto typed records.

Venue typing runs in two stages. The BibTeX entry kind is authoritative for
the coarse type (an ``@article`` is a journal paper no matter what the
venue string says); the taxonomy then fills in the academic domain and
subdomain, which BibTeX has no field for.
"""

from __future__ import annotations

import json
import re
import unicodedata
from dataclasses import dataclass, replace
from pathlib import Path

from .errors import ConfigError, RecordFileError
from .names import PersonName, parse_person_names

VENUE_TYPES = ("proceedings", "journal", "book", "other")

YEAR_MIN = 1000
YEAR_MAX = 3000

# Entry kinds that already pin down the venue type; anything else falls
# through to the taxonomy and finally to "other".
_KIND_VENUE_TYPE = {
    "article": "journal",
    "inproceedings": "proceedings",
    "conference": "proceedings",
    "proceedings": "proceedings",
    "book": "book",
    "inbook": "book",
    "incollection": "book",
}

# Preferred venue field per entry kind, with fallbacks.
_VENUE_FIELDS = {
    "article": ("journal", "booktitle", "publisher"),
    "inproceedings": ("booktitle", "journal", "publisher"),
    "conference": ("booktitle", "journal", "publisher"),
    "proceedings": ("booktitle", "publisher", "journal"),
    "book": ("publisher", "booktitle", "journal"),
    "inbook": ("publisher", "booktitle", "journal"),
    "incollection": ("booktitle", "publisher", "journal"),
}
_DEFAULT_VENUE_FIELDS = ("journal", "booktitle", "publisher", "howpublished")

_YEAR_RE = re.compile(r"\d{4}")


# -- LaTeX cleanup ----------------------------------------------------------

_COMBINING = {"'": "́", "`": "̀", '"': "̈", "^": "̂",
              "~": "̃", "=": "̄", ".": "̇"}
_NAMED = {"ss": "ß", "ae": "æ", "AE": "Æ", "oe": "œ", "OE": "Œ",
          "o": "ø", "O": "Ø", "aa": "å", "AA": "Å", "l": "ł", "L": "Ł",
          "i": "ı"}
_ESCAPES = {"\\&": "&", "\\%": "%", "\\_": "_", "\\#": "#", "\\$": "$"}

_ACCENT_RE = re.compile(r"\{?\\(['`\"^~=.])\{?([A-Za-z])\}?\}?")
_CEDILLA_RE = re.compile(r"\{?\\c\{?([cC])\}?\}?")
_CARON_RE = re.compile(r"\{?\\v\{?([a-zA-Z])\}?\}?")
_NAMED_RE = re.compile(r"\{?\\(" + "|".join(sorted(_NAMED, key=len, reverse=True)) + r")\}?(?![A-Za-z])")
_WS_RE = re.compile(r"\s+")


def _compose(mark: str, letter: str) -> str:
    return unicodedata.normalize("NFC", letter + _COMBINING[mark])


def de_latex(text: str) -> str:
    """Undo the common LaTeX escapes and accent commands, drop braces.

    Covers a fixed table of frequent sequences only; exotic macros are left
    as-is minus their braces.
    """
    for seq, plain in _ESCAPES.items():
        text = text.replace(seq, plain)
    text = _ACCENT_RE.sub(lambda m: _compose(m.group(1), m.group(2)), text)
    text = _CEDILLA_RE.sub(lambda m: "ç" if m.group(1) == "c" else "Ç", text)
    text = _CARON_RE.sub(lambda m: unicodedata.normalize("NFC", m.group(1) + "̌"), text)
    text = _NAMED_RE.sub(lambda m: _NAMED[m.group(1)], text)
    text = text.replace("~", " ").replace("{", "").replace("}", "")
    return _WS_RE.sub(" ", text).strip()


# -- domain types -------------------------------------------------------------

@dataclass(frozen=True)
class ReferenceRecord:
    """One cited work with the attributes the summariser consumes."""

    id: str
    title: str = ""
    authors: tuple[PersonName, ...] = ()
    year: int | None = None
    venue_name: str = ""
    venue_type: str = "other"
    domain: str | None = None
    subdomain: str | None = None
    citation_count: int | None = None
    self_citation: bool | None = None

    def __post_init__(self) -> None:
        if self.venue_type not in VENUE_TYPES:
            raise ValueError(f"invalid venue type {self.venue_type!r}")


@dataclass(frozen=True)
class CitingPaper:
    """The paper whose reference list is being summarised."""

    title: str = ""
    authors: tuple[PersonName, ...] = ()
    references: tuple[ReferenceRecord, ...] = ()


@dataclass(frozen=True)
class TaxonomyRule:
    pattern: str
    venue_type: str | None = None
    domain: str | None = None
    subdomain: str | None = None

    def matches(self, venue_name: str) -> bool:
        return re.search(r"(?<![A-Za-z0-9])" + re.escape(self.pattern) + r"(?![A-Za-z0-9])",
                         venue_name, re.IGNORECASE) is not None


@dataclass(frozen=True)
class VenueTaxonomy:
    """Ordered keyword rules mapping venue names to type/domain/subdomain.

    The first matching rule wins; no match means (None, None, None) and the
    caller falls back to its defaults.
    """

    rules: tuple[TaxonomyRule, ...] = ()

    def classify(self, venue_name: str) -> tuple[str | None, str | None, str | None]:
        for rule in self.rules:
            if rule.matches(venue_name):
                return rule.venue_type, rule.domain, rule.subdomain
        return None, None, None


def load_taxonomy(text: str) -> VenueTaxonomy:
    """Parse the tab-separated rule table: pattern, type, domain, subdomain.

    Blank lines and ``#`` comments are skipped; ``-`` or an empty column
    means "leave unset".
    """
    rules = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.rstrip()
        if not line or line.lstrip().startswith("#"):
            continue
        cols = [c.strip() for c in line.split("\t")]
        if len(cols) < 2:
            raise ConfigError(f"taxonomy line {lineno}: expected tab-separated columns")
        cols += [""] * (4 - len(cols))
        pattern, venue_type, domain, subdomain = cols[:4]
        if not pattern:
            raise ConfigError(f"taxonomy line {lineno}: empty pattern")
        venue_type = venue_type if venue_type not in ("", "-") else None
        if venue_type is not None and venue_type not in VENUE_TYPES:
            raise ConfigError(
                f"taxonomy line {lineno}: unknown venue type {venue_type!r}")
        rules.append(TaxonomyRule(
            pattern=pattern,
            venue_type=venue_type,
            domain=domain if domain not in ("", "-") else None,
            subdomain=subdomain if subdomain not in ("", "-") else None,
        ))
    return VenueTaxonomy(tuple(rules))


def load_taxonomy_file(path: str | Path) -> VenueTaxonomy:
    return load_taxonomy(Path(path).read_text(encoding="utf-8"))


# -- record construction ------------------------------------------------------

def _parse_year(raw: str | None) -> int | None:
    if not raw:
        return None
    m = _YEAR_RE.search(raw)
    if not m:
        return None
    year = int(m.group(0))
    if not YEAR_MIN <= year <= YEAR_MAX:
        return None
    return year


def to_reference_record(entry, taxonomy: VenueTaxonomy | None = None,
                        warnings: list[str] | None = None) -> ReferenceRecord:
    """Map one RawEntry onto a ReferenceRecord; total, never raises.

    Missing fields degrade to absent values and are noted in ``warnings``.
    """
    taxonomy = taxonomy or VenueTaxonomy()
    if warnings is None:
        warnings = []
    kind = entry.entry_kind.lower()
    fields = entry.fields

    title = de_latex(fields.get("title", ""))
    if not title:
        warnings.append(f"{entry.cite_key}: no title")

    author_field = fields.get("author", "")
    authors = tuple(parse_person_names(de_latex(author_field))) if author_field else ()
    if not authors:
        warnings.append(f"{entry.cite_key}: no authors")

    year = _parse_year(fields.get("year"))
    if year is None:
        warnings.append(f"{entry.cite_key}: no usable year")

    venue_name = ""
    for venue_field in _VENUE_FIELDS.get(kind, _DEFAULT_VENUE_FIELDS):
        if fields.get(venue_field):
            venue_name = de_latex(fields[venue_field])
            break
    if not venue_name:
        warnings.append(f"{entry.cite_key}: no venue field")

    taxo_type, domain, subdomain = taxonomy.classify(venue_name) if venue_name \
        else (None, None, None)
    venue_type = _KIND_VENUE_TYPE.get(kind) or taxo_type or "other"

    return ReferenceRecord(
        id=entry.cite_key,
        title=title,
        authors=authors,
        year=year,
        venue_name=venue_name,
        venue_type=venue_type,
        domain=domain,
        subdomain=subdomain,
    )


def detect_self_citation(reference: ReferenceRecord,
                         citing_authors: list[PersonName] | tuple[PersonName, ...]) -> bool:
    """True iff the reference shares an author with the citing paper."""
    citing_keys = {a.normalized_key for a in citing_authors}
    return any(a.normalized_key in citing_keys for a in reference.authors)


def derive_self_citations(records: list[ReferenceRecord],
                          citing_authors: tuple[PersonName, ...]) -> list[ReferenceRecord]:
    return [replace(r, self_citation=detect_self_citation(r, citing_authors))
            for r in records]


# -- line-delimited record files ----------------------------------------------

def _name_from_json(value) -> PersonName | None:
    if isinstance(value, str):
        names = parse_person_names(value)
        return names[0] if names else None
    if isinstance(value, dict) and value.get("family"):
        return PersonName(family=str(value["family"]), given=str(value.get("given", "")))
    return None


def load_record_lines(text: str, warnings: list[str] | None = None) -> list[ReferenceRecord]:
    """Read one reference object per line, fields named as in ReferenceRecord."""
    if warnings is None:
        warnings = []
    records = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise RecordFileError(f"line {lineno}: not a valid record object ({exc.msg})")
        if not isinstance(obj, dict):
            raise RecordFileError(f"line {lineno}: expected an object")
        rid = str(obj.get("id") or f"r{lineno}")
        authors = tuple(n for n in (_name_from_json(a) for a in obj.get("authors", []))
                        if n is not None)
        year = obj.get("year")
        if year is not None:
            if not isinstance(year, int) or not YEAR_MIN <= year <= YEAR_MAX:
                warnings.append(f"{rid}: year {year!r} out of range, dropped")
                year = None
        venue_type = obj.get("venue_type") or "other"
        if venue_type not in VENUE_TYPES:
            warnings.append(f"{rid}: unknown venue type {venue_type!r} mapped to 'other'")
            venue_type = "other"
        count = obj.get("citation_count")
        if count is not None and (not isinstance(count, int) or count < 0):
            warnings.append(f"{rid}: invalid citation count {count!r}, dropped")
            count = None
        self_citation = obj.get("self_citation")
        if self_citation is not None:
            self_citation = bool(self_citation)
        records.append(ReferenceRecord(
            id=rid,
            title=str(obj.get("title", "")),
            authors=authors,
            year=year,
            venue_name=str(obj.get("venue_name", "")),
            venue_type=venue_type,
            domain=obj.get("domain"),
            subdomain=obj.get("subdomain"),
            citation_count=count,
            self_citation=self_citation,
        ))
    return records
