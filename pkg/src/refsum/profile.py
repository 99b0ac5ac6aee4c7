"""Set statistics feeding the document planner.

Every operation here is a pure function over immutable records and is
deterministic: ties are always broken by a total order (value name, year,
title, id, author key), never by input position. Records may be
ReferenceRecord instances or plain mappings, so the same machinery profiles
bibliographies and any other attribute-tagged set with a numeric column.
"""

from __future__ import annotations

import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from enum import IntEnum
from typing import Any

from .config import ComparisonBands, QuantifierThresholds, SummaryConfig
from .errors import EmptySetError, StatsError
from .names import PersonName
from .records import CitingPaper

UNKNOWN = "unknown"

_DEFAULT_QT = QuantifierThresholds()
_DEFAULT_CB = ComparisonBands()


class Quantifier(IntEnum):
    """Vague quantity words, ordered so that more means greater."""

    SOME = 1
    LARGE_PROPORTION = 2
    MOST = 3

    @property
    def label(self) -> str:
        return {Quantifier.SOME: "some",
                Quantifier.LARGE_PROPORTION: "large",
                Quantifier.MOST: "most"}[self]


# -- profile fragment types ---------------------------------------------------

@dataclass(frozen=True)
class DistributionEntry:
    value: str
    count: int
    proportion: float
    bucket: Quantifier


@dataclass(frozen=True)
class CategoricalDistribution:
    attribute: str
    entries: tuple[DistributionEntry, ...]
    total: int


@dataclass(frozen=True)
class ContinuousSummary:
    attribute: str
    minimum: float
    maximum: float
    median: float
    count: int


@dataclass(frozen=True)
class GroupTopEntry:
    group_value: str
    share: float
    bucket: Quantifier
    top_reference: str
    top_count: int | None
    top_title: str = ""
    top_year: int | None = None


@dataclass(frozen=True)
class GroupTop:
    group_attribute: str
    entries: tuple[GroupTopEntry, ...]


@dataclass(frozen=True)
class AuthorScore:
    author: PersonName
    score: int
    paper_count: int
    counted_papers: int


@dataclass(frozen=True)
class ComparisonResult:
    attribute: str
    feature_value: str
    subset_median: float
    superset_median: float
    direction: str   # higher | lower | same
    magnitude: str   # much | slightly | same


@dataclass(frozen=True)
class FeatureImportance:
    ranking: tuple[tuple[str, float], ...]


@dataclass(frozen=True)
class SetProfile:
    total: int
    distributions: tuple[CategoricalDistribution, ...] = ()
    continuous: tuple[ContinuousSummary, ...] = ()
    dominating_shape: ContinuousSummary | None = None
    group_tops: tuple[GroupTop, ...] = ()
    top_authors: tuple[AuthorScore, ...] = ()
    importance: FeatureImportance | None = None
    comparisons: tuple[ComparisonResult, ...] = ()
    self_citation_share: float | None = None

    def distribution(self, attribute: str) -> CategoricalDistribution | None:
        for dist in self.distributions:
            if dist.attribute == attribute:
                return dist
        return None

    def continuous_for(self, attribute: str) -> ContinuousSummary | None:
        for summary in self.continuous:
            if summary.attribute == attribute:
                return summary
        return None

    def group_top(self, attribute: str) -> GroupTop | None:
        for top in self.group_tops:
            if top.group_attribute == attribute:
                return top
        return None

    def comparison(self, attribute: str) -> ComparisonResult | None:
        for comp in self.comparisons:
            if comp.attribute == attribute:
                return comp
        return None


# -- record access ------------------------------------------------------------

def field_value(record: Any, attribute: str) -> Any:
    if isinstance(record, Mapping):
        return record.get(attribute)
    return getattr(record, attribute, None)


def categorical_value(record: Any, attribute: str) -> str:
    value = field_value(record, attribute)
    if value is None:
        return UNKNOWN
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def numeric_value(record: Any, attribute: str) -> float | int | None:
    value = field_value(record, attribute)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        return None
    return value


def _present_values(records: Sequence[Any], attribute: str) -> list[float]:
    return [v for v in (numeric_value(r, attribute) for r in records) if v is not None]


def _median(values: Sequence[float]) -> float:
    ordered = sorted(values)
    n = len(ordered)
    if n % 2:
        return ordered[n // 2]
    return (ordered[n // 2 - 1] + ordered[n // 2]) / 2


def _record_id(record: Any) -> str:
    value = field_value(record, "id")
    return str(value) if value is not None else ""


def _record_title(record: Any) -> str:
    value = field_value(record, "title")
    return str(value) if value is not None else ""


# -- operations ---------------------------------------------------------------

def quantifier_for(proportion: float,
                   thresholds: QuantifierThresholds = _DEFAULT_QT) -> Quantifier:
    """Bucket a proportion: most >= 0.5, large proportion >= 0.2, else some."""
    if not 0.0 < proportion <= 1.0:
        raise ValueError(f"proportion {proportion!r} outside (0, 1]")
    if proportion >= thresholds.most:
        return Quantifier.MOST
    if proportion >= thresholds.large:
        return Quantifier.LARGE_PROPORTION
    return Quantifier.SOME


def categorical_distribution(records: Sequence[Any], attribute: str,
                             thresholds: QuantifierThresholds = _DEFAULT_QT,
                             ) -> CategoricalDistribution:
    """Counts, proportions and quantifier buckets per observed value.

    Records missing the attribute are counted under ``unknown``. Entries are
    sorted by proportion descending, ties by value name.
    """
    if not records:
        raise EmptySetError("empty set")
    counts: dict[str, int] = {}
    for record in records:
        value = categorical_value(record, attribute)
        counts[value] = counts.get(value, 0) + 1
    total = len(records)
    entries = tuple(
        DistributionEntry(value=value, count=count, proportion=count / total,
                          bucket=quantifier_for(count / total, thresholds))
        for value, count in sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    )
    return CategoricalDistribution(attribute=attribute, entries=entries, total=total)


def continuous_summary(records: Sequence[Any], attribute: str) -> ContinuousSummary:
    """Range and median over the records where the attribute is present."""
    if not records:
        raise EmptySetError("empty set")
    values = _present_values(records, attribute)
    if not values:
        raise StatsError(f"attribute fully absent: {attribute}")
    return ContinuousSummary(attribute=attribute, minimum=min(values),
                             maximum=max(values), median=_median(values),
                             count=len(values))


def dominating_shape(records: Sequence[Any], dominating_attribute: str) -> ContinuousSummary:
    """Shape of the dominating column: its range and centering."""
    return continuous_summary(records, dominating_attribute)


def _top_rank_key(record: Any) -> tuple:
    count = numeric_value(record, "citation_count")
    year = numeric_value(record, "year")
    return (
        0 if count is not None else 1,       # absent counts rank below all present
        -(count if count is not None else 0),
        year if year is not None else math.inf,  # then the earlier year
        _record_title(record),
        _record_id(record),
    )


def top_reference_per_group(records: Sequence[Any], group_attribute: str,
                            thresholds: QuantifierThresholds = _DEFAULT_QT,
                            ) -> GroupTop:
    """Per observed group value: its share of the set and its most cited record.

    Records without a group value are left out of the groups but still count
    toward the share denominator.
    """
    if not records:
        raise EmptySetError("empty set")
    groups: dict[str, list[Any]] = {}
    for record in records:
        value = field_value(record, group_attribute)
        if value is None:
            continue
        groups.setdefault(str(value), []).append(record)
    total = len(records)
    entries = []
    for value, members in sorted(groups.items(), key=lambda kv: (-len(kv[1]), kv[0])):
        top = min(members, key=_top_rank_key)
        count = numeric_value(top, "citation_count")
        year = numeric_value(top, "year")
        share = len(members) / total
        entries.append(GroupTopEntry(
            group_value=value,
            share=share,
            bucket=quantifier_for(share, thresholds),
            top_reference=_record_id(top),
            top_count=int(count) if count is not None else None,
            top_title=_record_title(top),
            top_year=int(year) if year is not None else None,
        ))
    return GroupTop(group_attribute=group_attribute, entries=tuple(entries))


def top_authors(records: Sequence[Any], k: int = 7, *,
                score_mode: str = "sum") -> tuple[AuthorScore, ...]:
    """The k authors whose references carry the highest citation counts.

    An author's score is the sum (or max) of counts over the references that
    list them; an absent count contributes 0 and never fabricates standing.
    Ties break by paper count, then by the normalized author key.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    scores: dict[str, int] = {}
    papers: dict[str, int] = {}
    counted: dict[str, int] = {}
    variants: dict[str, set[PersonName]] = {}
    for record in records:
        authors = field_value(record, "authors") or ()
        count = numeric_value(record, "citation_count")
        contribution = int(count) if count is not None else 0
        for author in {a.normalized_key: a for a in authors}.values():
            key = author.normalized_key
            if score_mode == "max":
                scores[key] = max(scores.get(key, 0), contribution)
            else:
                scores[key] = scores.get(key, 0) + contribution
            papers[key] = papers.get(key, 0) + 1
            if count is not None:
                counted[key] = counted.get(key, 0) + 1
            variants.setdefault(key, set()).add(author)
    def display(key: str) -> PersonName:
        return sorted(variants[key],
                      key=lambda p: (-len(p.given), p.family, p.given))[0]
    ranked = sorted(scores, key=lambda key: (-scores[key], -papers[key], key))
    return tuple(
        AuthorScore(author=display(key), score=scores[key],
                    paper_count=papers[key], counted_papers=counted.get(key, 0))
        for key in ranked[:k]
    )


def feature_importance(records: Sequence[Any], dominating_attribute: str,
                       candidate_attributes: Sequence[str],
                       *, min_category_size: int = 2) -> FeatureImportance:
    """Rank candidate attributes by how far they spread the dominating column.

    Score = (spread of per-category medians) / (overall range), computed over
    categories holding at least ``min_category_size`` records with a present
    dominating value; 0 when the overall range collapses.
    """
    overall = _present_values(records, dominating_attribute)
    if len(overall) < 2:
        raise StatsError(
            f"dominating attribute {dominating_attribute!r} present on fewer than 2 records")
    denominator = max(overall) - min(overall)
    ranking = []
    for attribute in candidate_attributes:
        groups: dict[str, list[float]] = {}
        for record in records:
            value = numeric_value(record, dominating_attribute)
            if value is None:
                continue
            groups.setdefault(categorical_value(record, attribute), []).append(value)
        medians = [_median(vals) for vals in groups.values()
                   if len(vals) >= min_category_size]
        if denominator > 0 and medians:
            score = (max(medians) - min(medians)) / denominator
        else:
            score = 0.0
        ranking.append((attribute, score))
    ranking.sort(key=lambda pair: (-pair[1], pair[0]))
    return FeatureImportance(ranking=tuple(ranking))


def subset_vs_superset(subset_records: Sequence[Any], superset_records: Sequence[Any],
                       dominating_attribute: str,
                       bands: ComparisonBands = _DEFAULT_CB,
                       *, attribute: str = "", feature_value: str = "",
                       ) -> ComparisonResult:
    """Vague comparison of a subset's dominating median against its superset's."""
    sub_values = _present_values(subset_records, dominating_attribute)
    sup_values = _present_values(superset_records, dominating_attribute)
    if not sub_values or not sup_values:
        raise StatsError(f"no {dominating_attribute!r} values to compare")
    m_sub = _median(sub_values)
    m_sup = _median(sup_values)
    if m_sup == 0:
        if m_sub == 0:
            direction, magnitude = "same", "same"
        else:
            # zero baseline: any difference is beyond relative banding
            direction = "higher" if m_sub > 0 else "lower"
            magnitude = "much"
    else:
        ratio = (m_sub - m_sup) / m_sup
        if abs(ratio) < bands.same:
            direction, magnitude = "same", "same"
        else:
            direction = "higher" if ratio > 0 else "lower"
            magnitude = "slightly" if abs(ratio) <= bands.slight else "much"
    return ComparisonResult(attribute=attribute, feature_value=feature_value,
                            subset_median=m_sub, superset_median=m_sup,
                            direction=direction, magnitude=magnitude)


def self_citation_share(records: Sequence[Any]) -> float:
    """Fraction of records flagged as self-citations (absent flags count no)."""
    if not records:
        raise EmptySetError("empty set")
    flagged = sum(1 for r in records if field_value(r, "self_citation") is True)
    return flagged / len(records)


# -- assembly -----------------------------------------------------------------

def build_profile(citing: CitingPaper, config: SummaryConfig,
                  warnings: list[str] | None = None) -> SetProfile:
    """Run every statistic the configured algorithm needs.

    Per-attribute gaps (a fully absent column, say) degrade to absent
    fragments with a warning; only an empty reference list is an error.
    """
    if warnings is None:
        warnings = []
    config.validate()
    records = list(citing.references)
    if not records:
        raise EmptySetError("the reference list is empty")
    qt = config.quantifier_thresholds

    distributions = tuple(
        categorical_distribution(records, spec.name, qt)
        for spec in config.categorical()
    )
    continuous = []
    for spec in config.continuous():
        try:
            continuous.append(continuous_summary(records, spec.name))
        except StatsError as exc:
            warnings.append(f"profile: {exc}")

    share = None
    for spec in config.flags():
        if spec.name != "self_citation":
            warnings.append(f"profile: flag attribute {spec.name!r} is not supported")
            continue
        if any(field_value(r, "self_citation") is not None for r in records):
            share = self_citation_share(records)
        else:
            warnings.append("profile: self-citation flags never derived")

    shape = None
    importance = None
    comparisons: list[ComparisonResult] = []
    group_tops: list[GroupTop] = []
    authors: tuple[AuthorScore, ...] = ()

    if config.algorithm == "refset":
        for spec in config.attributes:
            if spec.role == "grouping":
                group_tops.append(top_reference_per_group(records, spec.name, qt))
        authors = top_authors(records, config.author_k,
                              score_mode=config.author_score_mode)
    else:
        try:
            shape = dominating_shape(records, config.dominating)
        except StatsError as exc:
            warnings.append(f"profile: {exc}")
        listed = [spec.name for spec in config.listed()]
        try:
            importance = feature_importance(records, config.dominating, listed)
        except StatsError as exc:
            warnings.append(f"profile: {exc}")
        for dist in distributions:
            if dist.attribute not in listed or not dist.entries:
                continue
            top_value = dist.entries[0].value
            subset = [r for r in records
                      if categorical_value(r, dist.attribute) == top_value]
            try:
                comparisons.append(subset_vs_superset(
                    subset, records, config.dominating, config.comparison_bands,
                    attribute=dist.attribute, feature_value=top_value))
            except StatsError as exc:
                warnings.append(f"profile: {dist.attribute}: {exc}")

    return SetProfile(
        total=len(records),
        distributions=distributions,
        continuous=tuple(continuous),
        dominating_shape=shape,
        group_tops=tuple(group_tops),
        top_authors=authors,
        importance=importance,
        comparisons=tuple(comparisons),
        self_citation_share=share,
    )


def profile_to_text(profile: SetProfile) -> str:
    """Stable line-oriented dump of a profile, for inspection and testing."""
    lines = [f"total\t{profile.total}"]
    if profile.self_citation_share is not None:
        lines.append(f"self_citation_share\t{profile.self_citation_share!r}")
    for dist in profile.distributions:
        lines.append(f"distribution\t{dist.attribute}\ttotal={dist.total}")
        for e in dist.entries:
            lines.append(f"entry\t{e.value}\t{e.count}\t{e.proportion!r}\t{e.bucket.label}")
    for summary in profile.continuous:
        lines.append(
            f"continuous\t{summary.attribute}\tmin={summary.minimum!r}"
            f"\tmax={summary.maximum!r}\tmedian={summary.median!r}\tcount={summary.count}")
    if profile.dominating_shape is not None:
        s = profile.dominating_shape
        lines.append(f"shape\t{s.attribute}\tmin={s.minimum!r}\tmax={s.maximum!r}"
                     f"\tmedian={s.median!r}\tcount={s.count}")
    for top in profile.group_tops:
        lines.append(f"group_top\t{top.group_attribute}")
        for e in top.entries:
            count = e.top_count if e.top_count is not None else "-"
            lines.append(f"group\t{e.group_value}\tshare={e.share!r}"
                         f"\tbucket={e.bucket.label}\ttop={e.top_reference}\tcount={count}")
    for a in profile.top_authors:
        lines.append(f"author\t{a.author.normalized_key}\t{a.author.display()}"
                     f"\tscore={a.score}\tpapers={a.paper_count}\tcounted={a.counted_papers}")
    if profile.importance is not None:
        for attribute, score in profile.importance.ranking:
            lines.append(f"importance\t{attribute}\t{score!r}")
    for c in profile.comparisons:
        lines.append(f"comparison\t{c.attribute}\t{c.feature_value}"
                     f"\tsub={c.subset_median!r}\tsup={c.superset_median!r}"
                     f"\t{c.direction}\t{c.magnitude}")
    return "\n".join(lines)
