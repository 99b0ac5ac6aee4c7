"""Template packs: named surface templates with ``{slot}`` placeholders.

Pack files are plain text. A ``[section]`` header opens either a template
(dotted lowercase key, body lines joined into one template string), the
``[settings]`` table, or a ``[lexicon.<attribute>]`` table mapping value
tokens to display phrases. ``#`` starts a comment line.

Lookup falls back through progressively less specific keys (for example
``quant.subdomain.most.first`` before ``quant.most.first``), and value
display falls back from the per-attribute lexicon to the shared
``[lexicon.values]`` table to a plain prettified token.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path

from .errors import TemplateError


@dataclass(frozen=True)
class TemplatePack:
    templates: dict[str, str]
    lexicon: dict[str, dict[str, str]]
    settings: dict[str, str]

    @property
    def noun(self) -> str:
        return self.settings.get("noun", "items")

    @property
    def unit(self) -> str:
        return self.settings.get("unit", "")

    @property
    def show_counts(self) -> bool:
        return self.settings.get("show_counts", "yes").lower() not in ("no", "false", "0")

    def template(self, *candidates: str) -> str:
        for key in candidates:
            if key in self.templates:
                return self.templates[key]
        raise TemplateError(f"no template for any of: {', '.join(candidates)}")

    def has_template(self, key: str) -> bool:
        return key in self.templates

    def lexeme(self, attribute: str, token: str) -> str:
        by_attr = self.lexicon.get(attribute, {})
        if token in by_attr:
            return by_attr[token]
        shared = self.lexicon.get("values", {})
        if token in shared:
            return shared[token]
        return token.replace("-", " ").replace("_", " ")

    def with_settings(self, **overrides: str) -> TemplatePack:
        merged = dict(self.settings)
        merged.update({k: v for k, v in overrides.items() if v is not None})
        return replace(self, settings=merged)


def load_template_pack(text: str) -> TemplatePack:
    templates: dict[str, str] = {}
    lexicon: dict[str, dict[str, str]] = {}
    settings: dict[str, str] = {}
    section: str | None = None
    body: list[str] = []

    def close_section() -> None:
        if section is None:
            return
        if section.startswith("lexicon.") or section == "settings":
            table = settings if section == "settings" else \
                lexicon.setdefault(section[len("lexicon."):], {})
            for line in body:
                if "=" not in line:
                    raise TemplateError(f"[{section}]: expected 'token = display' lines")
                token, _, display = line.partition("=")
                table[token.strip()] = display.strip()
        else:
            if not body:
                raise TemplateError(f"[{section}]: empty template body")
            templates[section] = " ".join(body)

    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            close_section()
            section = line[1:-1].strip()
            if not section:
                raise TemplateError("empty section header")
            body = []
        elif section is None:
            raise TemplateError(f"content before the first section header: {line!r}")
        else:
            body.append(line)
    close_section()
    return TemplatePack(templates=templates, lexicon=lexicon, settings=settings)


def load_template_pack_file(path: str | Path) -> TemplatePack:
    return load_template_pack(Path(path).read_text(encoding="utf-8"))


# The stock pack for bibliography summaries (citation counts dominate).
DEFAULT_PACK_TEXT = """\
[settings]
noun = references
unit =
show_counts = yes

[intro.lead]
This paper cites {total} {noun}. {lead_sentences}

[quant.most.first]
Most {noun} ({percentage}) are from {value}.

[quant.most.subsequent]
Most are from {value} ({percentage}).

[quant.large.first]
A large proportion of {noun} ({percentage}) is from {value}.

[quant.large.subsequent]
A large proportion is from {value} ({percentage}).

[quant.some.first]
Some {noun} ({percentage}) are from {value}.

[quant.some.subsequent]
Some are from {value} ({percentage}).

[quant.subdomain.most.first]
Most {noun} ({percentage}) are in {value}.

[quant.subdomain.most.subsequent]
Most are in {value} ({percentage}).

[quant.subdomain.large.first]
A large proportion of {noun} ({percentage}) is in {value}.

[quant.subdomain.large.subsequent]
A large proportion is in {value} ({percentage}).

[quant.subdomain.some.first]
Some {noun} ({percentage}) are in {value}.

[quant.subdomain.some.subsequent]
Some are in {value} ({percentage}).

[range]
The {attribute} ranges from {min} to {max}, centred on {median}.

[yearspan.full]
The {noun} were published between {min} and {max}, centred on {median}; {share} are self-citations.

[yearspan.year_only]
The {noun} were published between {min} and {max}, centred on {median}.

[yearspan.single.full]
The {noun} were all published in {year}; {share} are self-citations.

[yearspan.single.year_only]
The {noun} were all published in {year}.

[yearspan.share_only]
{share} of the {noun} are self-citations.

[grouptop.counted]
The most cited is "{title}" ({count} citations).

[grouptop.counted.one]
The most cited is "{title}" (1 citation).

[grouptop.named]
The most cited is "{title}".

[grouptop.plain]
A representative publication is "{title}".

[authors.counted]
The {k} authors with the highest citation counts are {authors}.

[authors.counted.single]
The author with the highest citation count is {authors}.

[authors.uncounted]
The {k} most frequently listed authors are {authors}.

[authors.uncounted.single]
The most frequently listed author is {authors}.

[authors.item.counted]
{name} ({score} citations)

[authors.item.counted.one]
{name} (1 citation)

[authors.item.plain]
{name}

[shape]
The {attribute} of the {total} {noun} ranges from {unit}{min} to {unit}{max}, with a median of {unit}{median}.

[shape.single]
All {total} {noun} share the same {attribute} of {unit}{value}.

[subject.default]
{Noun} from {value}

[compare.higher.slightly]
{subject} are generally slightly more cited ({unit}{sub} vs {unit}{sup}).

[compare.higher.much]
{subject} are generally much more cited ({unit}{sub} vs {unit}{sup}).

[compare.lower.slightly]
{subject} are generally slightly less cited ({unit}{sub} vs {unit}{sup}).

[compare.lower.much]
{subject} are generally much less cited ({unit}{sub} vs {unit}{sup}).

[compare.same.same]
{subject} are cited about as often as the full set ({unit}{sub} vs {unit}{sup}).

[lexicon.venue_type]
journal = journals
book = books
proceedings = proceedings
other = other sources

[lexicon.attributes]
citation_count = citation count
venue_type = venue type

[lexicon.values]
unknown = unclassified sources
"""

# A pack for priced product sets, where features are things items "have".
PRICE_PACK_TEXT = """\
[settings]
noun = products
unit = £
show_counts = yes

[intro.lead]
This set contains {total} {noun}. {lead_sentences}

[quant.most.first]
Most {noun} ({percentage}) have {value}.

[quant.most.subsequent]
Most have {value} ({percentage}).

[quant.large.first]
A large proportion of {noun} ({percentage}) have {value}.

[quant.large.subsequent]
A large proportion have {value} ({percentage}).

[quant.some.first]
Some {noun} ({percentage}) have {value}.

[quant.some.subsequent]
Some have {value} ({percentage}).

[range]
The {attribute} ranges from {min} to {max}, centred on {median}.

[shape]
The {attribute} of the {total} {noun} ranges from {unit}{min} to {unit}{max}, with a median of {unit}{median}.

[shape.single]
All {total} {noun} share the same {attribute} of {unit}{value}.

[subject.default]
{Noun} with {value}

[compare.higher.slightly]
{subject} are generally slightly more expensive ({unit}{sub} vs {unit}{sup}).

[compare.higher.much]
{subject} are generally much more expensive ({unit}{sub} vs {unit}{sup}).

[compare.lower.slightly]
{subject} are generally slightly less expensive ({unit}{sub} vs {unit}{sup}).

[compare.lower.much]
{subject} are generally much less expensive ({unit}{sub} vs {unit}{sup}).

[compare.same.same]
{subject} generally cost about the same as the full set ({unit}{sub} vs {unit}{sup}).

[lexicon.attributes]
price = price
"""


def default_pack() -> TemplatePack:
    return load_template_pack(DEFAULT_PACK_TEXT)


def price_pack() -> TemplatePack:
    return load_template_pack(PRICE_PACK_TEXT)
