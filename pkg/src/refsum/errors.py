"""Exception types shared across the pipeline."""

from __future__ import annotations


class RefsumError(Exception):
    """Base class for every error this package raises deliberately."""


class InputError(RefsumError):
    """A problem with an input file (bibliography, record file, taxonomy)."""


class BibParseError(InputError):
    """Unrecoverable bibliography syntax error.

    Carries the byte offset of the offending construct and, when known, the
    cite key of the enclosing entry.
    """

    def __init__(self, message: str, *, offset: int | None = None,
                 cite_key: str | None = None) -> None:
        super().__init__(message)
        self.offset = offset
        self.cite_key = cite_key


class RecordFileError(InputError):
    """Malformed line-delimited record file."""


class ConfigError(RefsumError):
    """Invalid configuration (file, flags, or summary config object)."""


class StatsError(RefsumError):
    """A statistic cannot be computed from the given records."""


class EmptySetError(StatsError):
    """An operation that needs at least one record received none."""


class ProviderError(RefsumError):
    """A citation-count provider failed to answer a lookup."""


class PlanningError(RefsumError):
    """The document planner is missing a required profile fragment."""


class RealizationError(RefsumError):
    """Template rendering failed (missing template or unresolved slot)."""


class TemplateError(RealizationError):
    """A template pack is malformed or lacks a required template."""
