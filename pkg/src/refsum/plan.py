"""Document planning: fixed schemata turn a profile into ordered messages.

A plan is wording-free. Each paragraph holds typed messages whose payloads
are profile fragments; the realiser decides the sentences. The refset schema
opens with the total fused with the lead attribute and closes with the
author list; the prodset schema opens with the dominating column's shape and
then walks the listed features in importance order.

Paragraphs whose underlying data is entirely absent are skipped rather than
realised as filler.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any

from .config import SummaryConfig
from .errors import PlanningError
from .profile import SetProfile, CategoricalDistribution, UNKNOWN


class MessageKind(Enum):
    INTRO_WITH_LEAD = "IntroWithLeadAttribute"
    CATEGORICAL_QUANT = "CategoricalQuant"
    CONTINUOUS_RANGE = "ContinuousRange"
    COMBINED_YEAR_SELF_CITE = "CombinedYearSelfCite"
    GROUP_TOP_LIST = "GroupTopList"
    AUTHOR_LIST = "AuthorList"
    DOMINATING_SHAPE = "DominatingShape"
    FEATURE_WITH_COMPARISON = "FeatureWithComparison"


@dataclass(frozen=True)
class Message:
    kind: MessageKind
    payload: dict[str, Any]


@dataclass(frozen=True)
class Paragraph:
    label: str
    messages: tuple[Message, ...]


@dataclass(frozen=True)
class DocumentPlan:
    algorithm: str
    paragraphs: tuple[Paragraph, ...]


def _informative(dist: CategoricalDistribution | None) -> bool:
    """A distribution carries information unless every record is unknown."""
    return dist is not None and any(e.value != UNKNOWN for e in dist.entries)


def _require_distribution(profile: SetProfile, attribute: str) -> CategoricalDistribution:
    dist = profile.distribution(attribute)
    if dist is None:
        raise PlanningError(f"missing profile fragment: distribution '{attribute}'")
    return dist


def build_refset_plan(profile: SetProfile, config: SummaryConfig) -> DocumentPlan:
    """Intro with the lead attribute, middle paragraphs in config order,
    author list last. The dominating column's own shape is never planned."""
    config.validate()
    lead = config.lead()
    if lead is None:
        raise PlanningError("missing profile fragment: lead attribute")
    paragraphs = [Paragraph("intro", (Message(MessageKind.INTRO_WITH_LEAD, {
        "total": profile.total,
        "distribution": _require_distribution(profile, lead.name),
    }),))]

    combined_done = False
    for spec in config.attributes:
        if spec.role == "lead":
            continue
        if spec.role == "listed" and spec.kind == "categorical":
            dist = _require_distribution(profile, spec.name)
            if not _informative(dist):
                continue
            paragraphs.append(Paragraph(spec.name, (Message(
                MessageKind.CATEGORICAL_QUANT, {"distribution": dist}),)))
        elif spec.role == "listed" and spec.kind == "continuous":
            summary = profile.continuous_for(spec.name)
            if summary is None:
                continue
            paragraphs.append(Paragraph(spec.name, (Message(
                MessageKind.CONTINUOUS_RANGE, {"summary": summary}),)))
        elif spec.role == "grouping":
            top = profile.group_top(spec.name)
            if top is None:
                raise PlanningError(f"missing profile fragment: group top '{spec.name}'")
            if not top.entries:
                continue
            paragraphs.append(Paragraph(spec.name, (Message(
                MessageKind.GROUP_TOP_LIST, {"group_top": top}),)))
        elif spec.role == "combined" and not combined_done:
            combined_done = True
            year_spec = next((s for s in config.attributes
                              if s.role == "combined" and s.kind == "continuous"), None)
            summary = profile.continuous_for(year_spec.name) if year_spec else None
            share = profile.self_citation_share
            if summary is None and share is None:
                continue
            paragraphs.append(Paragraph("years", (Message(
                MessageKind.COMBINED_YEAR_SELF_CITE,
                {"summary": summary, "share": share}),)))

    if profile.top_authors:
        paragraphs.append(Paragraph("authors", (Message(MessageKind.AUTHOR_LIST, {
            "authors": profile.top_authors,
            "has_counts": any(a.counted_papers > 0 for a in profile.top_authors),
        }),)))
    return DocumentPlan(algorithm="refset", paragraphs=tuple(paragraphs))


def build_prodset_plan(profile: SetProfile, config: SummaryConfig) -> DocumentPlan:
    """Dominating shape first, then one feature paragraph per listed
    attribute in importance order, each with its superset comparison."""
    config.validate()
    if profile.dominating_shape is None:
        raise PlanningError("missing profile fragment: dominating shape")
    if profile.importance is None:
        raise PlanningError("missing profile fragment: feature importance")
    paragraphs = [Paragraph("shape", (Message(MessageKind.DOMINATING_SHAPE, {
        "summary": profile.dominating_shape,
        "attribute": config.dominating,
        "total": profile.total,
    }),))]
    for attribute, _score in profile.importance.ranking:
        dist = _require_distribution(profile, attribute)
        if not _informative(dist):
            continue
        paragraphs.append(Paragraph(attribute, (Message(
            MessageKind.FEATURE_WITH_COMPARISON,
            {"distribution": dist, "comparison": profile.comparison(attribute)}),)))
    return DocumentPlan(algorithm="prodset", paragraphs=tuple(paragraphs))


def build_plan(profile: SetProfile, config: SummaryConfig) -> DocumentPlan:
    if config.algorithm == "prodset":
        return build_prodset_plan(profile, config)
    return build_refset_plan(profile, config)


def plan_to_text(plan: DocumentPlan) -> str:
    """Stable line-oriented dump of a plan, for inspection and testing."""
    lines = [f"plan\t{plan.algorithm}"]
    for paragraph in plan.paragraphs:
        lines.append(f"paragraph\t{paragraph.label}")
        for message in paragraph.messages:
            detail = []
            payload = message.payload
            if "total" in payload:
                detail.append(f"total={payload['total']}")
            if payload.get("distribution") is not None:
                dist = payload["distribution"]
                detail.append(f"attribute={dist.attribute}")
                detail.append(f"entries={len(dist.entries)}")
            if payload.get("summary") is not None:
                detail.append(f"attribute={payload['summary'].attribute}")
            if "share" in payload:
                detail.append(f"share={'yes' if payload['share'] is not None else 'no'}")
            if payload.get("group_top") is not None:
                top = payload["group_top"]
                detail.append(f"attribute={top.group_attribute}")
                detail.append(f"groups={len(top.entries)}")
            if "authors" in payload:
                detail.append(f"authors={len(payload['authors'])}")
                detail.append(f"counted={'yes' if payload['has_counts'] else 'no'}")
            if "comparison" in payload:
                comp = payload["comparison"]
                detail.append("comparison=" +
                              (f"{comp.direction}/{comp.magnitude}" if comp else "none"))
            lines.append("message\t" + "\t".join([message.kind.value] + detail))
    return "\n".join(lines)
