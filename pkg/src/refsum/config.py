"""Summary configuration: which attributes are described, and how.

Each attribute has a kind (categorical, continuous, or flag) and a role:

* ``lead``     -- fused into the opening paragraph with the total count
* ``listed``   -- gets its own quantifier paragraph (or feature paragraph
                  in prodset mode)
* ``grouping`` -- per-group top-publication listing
* ``combined`` -- fused into the shared year/self-citation paragraph

The middle-paragraph order of a summary follows the attribute order given
here, so reordering attributes reorders the document.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .errors import ConfigError

ALGORITHMS = ("refset", "prodset")
ATTRIBUTE_KINDS = ("categorical", "continuous", "flag")
ATTRIBUTE_ROLES = ("lead", "listed", "grouping", "combined")
SCORE_MODES = ("sum", "max")


@dataclass(frozen=True)
class AttributeSpec:
    name: str
    kind: str
    role: str = "listed"

    def __post_init__(self) -> None:
        if self.kind not in ATTRIBUTE_KINDS:
            raise ConfigError(f"attribute {self.name!r}: unknown kind {self.kind!r}")
        if self.role not in ATTRIBUTE_ROLES:
            raise ConfigError(f"attribute {self.name!r}: unknown role {self.role!r}")


@dataclass(frozen=True)
class QuantifierThresholds:
    """Proportion bands for the vague quantity words."""

    most: float = 0.5
    large: float = 0.2

    def __post_init__(self) -> None:
        if not 0.0 < self.large < self.most <= 1.0:
            raise ConfigError("quantifier thresholds must satisfy 0 < large < most <= 1")


@dataclass(frozen=True)
class ComparisonBands:
    """Relative-difference bands for subset-vs-superset comparisons."""

    same: float = 0.02
    slight: float = 0.15

    def __post_init__(self) -> None:
        if not 0.0 < self.same < self.slight:
            raise ConfigError("comparison bands must satisfy 0 < same < slight")


@dataclass(frozen=True)
class SummaryConfig:
    algorithm: str
    attributes: tuple[AttributeSpec, ...]
    dominating: str = "citation_count"
    author_k: int = 7
    author_score_mode: str = "sum"
    quantifier_thresholds: QuantifierThresholds = field(default_factory=QuantifierThresholds)
    comparison_bands: ComparisonBands = field(default_factory=ComparisonBands)
    show_counts: bool = True
    unit: str = ""
    noun: str | None = None
    template_pack: str | None = None

    def validate(self) -> None:
        if self.algorithm not in ALGORITHMS:
            raise ConfigError(f"unknown algorithm {self.algorithm!r}")
        if self.author_k < 1:
            raise ConfigError("author list size must be at least 1")
        if self.author_score_mode not in SCORE_MODES:
            raise ConfigError(f"unknown author score mode {self.author_score_mode!r}")
        seen = set()
        for spec in self.attributes:
            if spec.name in seen:
                raise ConfigError(f"attribute {spec.name!r} configured twice")
            seen.add(spec.name)
        leads = [s for s in self.attributes if s.role == "lead"]
        if self.algorithm == "refset" and len(leads) != 1:
            raise ConfigError("refset needs exactly one lead attribute")
        if self.algorithm == "prodset" and not self.dominating:
            raise ConfigError("prodset needs a dominating attribute")

    # -- attribute views ---------------------------------------------------

    def categorical(self) -> tuple[AttributeSpec, ...]:
        return tuple(s for s in self.attributes if s.kind == "categorical")

    def continuous(self) -> tuple[AttributeSpec, ...]:
        return tuple(s for s in self.attributes if s.kind == "continuous")

    def flags(self) -> tuple[AttributeSpec, ...]:
        return tuple(s for s in self.attributes if s.kind == "flag")

    def lead(self) -> AttributeSpec | None:
        for spec in self.attributes:
            if spec.role == "lead":
                return spec
        return None

    def listed(self) -> tuple[AttributeSpec, ...]:
        return tuple(s for s in self.attributes if s.role == "listed")

    def with_overrides(self, **changes) -> SummaryConfig:
        return replace(self, **changes)


def default_refset_config(**overrides) -> SummaryConfig:
    """The standard reference-set setup: venue type leads, authors close."""
    config = SummaryConfig(
        algorithm="refset",
        attributes=(
            AttributeSpec("venue_type", "categorical", "lead"),
            AttributeSpec("domain", "categorical", "listed"),
            AttributeSpec("subdomain", "categorical", "grouping"),
            AttributeSpec("year", "continuous", "combined"),
            AttributeSpec("self_citation", "flag", "combined"),
        ),
    )
    return config.with_overrides(**overrides) if overrides else config


def default_prodset_config(**overrides) -> SummaryConfig:
    """Dominating-column setup applied to references: counts stand in for price."""
    config = SummaryConfig(
        algorithm="prodset",
        attributes=(
            AttributeSpec("venue_type", "categorical", "listed"),
            AttributeSpec("domain", "categorical", "listed"),
            AttributeSpec("subdomain", "categorical", "listed"),
        ),
        dominating="citation_count",
    )
    return config.with_overrides(**overrides) if overrides else config
