"""Command-line interface.

Subcommands:

* ``summarize`` -- one summary (or, via --emit, the plan or profile behind it)
* ``compare``   -- both algorithms side by side on the same input
* ``enrich``    -- warm the citation-count cache, nothing else

Exit codes: 0 success, 1 input/parse error, 2 configuration error,
3 planning/realisation error. Summaries go to stdout; warnings and
enrichment reports go to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .bibtex import scan_bibtex
from .config import (ComparisonBands, QuantifierThresholds, SummaryConfig,
                     default_prodset_config, default_refset_config)
from .enrich import (CountCache, ScholarLookupProvider, StaticCountProvider,
                     enrich_citation_counts)
from .errors import (BibParseError, ConfigError, EmptySetError, InputError,
                     PlanningError, RealizationError, RefsumError)
from .names import parse_person_names
from .plan import build_plan, plan_to_text
from .profile import build_profile, profile_to_text
from .realize import realize
from .records import (CitingPaper, VenueTaxonomy, derive_self_citations,
                      load_record_lines, load_taxonomy_file, to_reference_record)
from .templates import TemplatePack, default_pack, load_template_pack_file

CACHE_DIR_ENV = "REFSUM_CACHE_DIR"

_CONFIG_KEYS = {
    "algo", "taxonomy", "templates", "provider", "counts", "cache_dir",
    "workers", "k", "unit", "noun", "show_counts", "paper_title",
    "paper_authors", "quantifier_most", "quantifier_large", "compare_same",
    "compare_slight", "author_score_mode", "strict", "emit", "endpoint",
}


@dataclass
class RunConfig:
    """Everything one pipeline run needs, after merging flags > file > defaults."""

    input_path: str
    algo: str = "refset"
    emit: str = "summary"
    taxonomy: str | None = None
    templates: str | None = None
    provider: str = "off"
    counts: str | None = None
    cache_dir: str | None = None
    endpoint: str | None = None
    workers: int = 4
    k: int = 7
    unit: str | None = None
    noun: str | None = None
    show_counts: bool | None = None
    paper_title: str = ""
    paper_authors: str = ""
    quantifier_most: float = 0.5
    quantifier_large: float = 0.2
    compare_same: float = 0.02
    compare_slight: float = 0.15
    author_score_mode: str = "sum"
    strict: bool = False


def _load_config_file(path: str) -> dict:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc.msg}")
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must hold a JSON object")
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"config file {path}: unknown keys {sorted(unknown)}")
    return data


def _merge_run_config(args: argparse.Namespace) -> RunConfig:
    run = RunConfig(input_path=args.input)
    if getattr(args, "config", None):
        for key, value in _load_config_file(args.config).items():
            setattr(run, key, value)
    env_cache = os.environ.get(CACHE_DIR_ENV)
    if env_cache:
        run.cache_dir = env_cache
    for key in vars(run):
        flag = getattr(args, key, None)
        if flag is not None and key != "input_path":
            setattr(run, key, flag)
    if run.emit not in ("summary", "plan", "profile"):
        raise ConfigError(f"unknown emit mode {run.emit!r}")
    if run.provider not in ("off", "mock", "http"):
        raise ConfigError(f"unknown provider {run.provider!r}")
    if run.algo not in ("refset", "prodset"):
        raise ConfigError(f"unknown algorithm {run.algo!r}")
    return run


# -- pipeline pieces ----------------------------------------------------------

def _read_input(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read input {path}: {exc}")


def _load_records(run: RunConfig, warnings: list[str]):
    text = _read_input(run.input_path)
    stripped = text.lstrip()
    is_bibtex = run.input_path.endswith(".bib") or stripped.startswith("@")
    if not is_bibtex and stripped.startswith("{"):
        return load_record_lines(text, warnings)
    taxonomy = VenueTaxonomy()
    if run.taxonomy:
        try:
            taxonomy = load_taxonomy_file(run.taxonomy)
        except OSError as exc:
            raise InputError(f"cannot read taxonomy {run.taxonomy}: {exc}")
    entries, issues = scan_bibtex(text)
    errors = [i for i in issues if i.severity == "error"]
    for issue in issues:
        warnings.append(f"{run.input_path}: {issue}")
    if run.strict and errors:
        first = errors[0]
        raise BibParseError(str(first), offset=first.offset, cite_key=first.cite_key)
    if not entries:
        raise InputError(f"{run.input_path}: no usable entries"
                         + (f" ({len(errors)} errors)" if errors else ""))
    return [to_reference_record(e, taxonomy, warnings) for e in entries]


def _build_provider(run: RunConfig):
    if run.provider == "off":
        return None
    if run.provider == "mock":
        if not run.counts:
            raise ConfigError("--provider mock needs --counts FILE")
        try:
            return StaticCountProvider.from_file(run.counts)
        except OSError as exc:
            raise ConfigError(f"cannot read counts file {run.counts}: {exc}")
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"counts file {run.counts} is not a title->count map: {exc}")
    kwargs = {"base_url": run.endpoint} if run.endpoint else {}
    return ScholarLookupProvider(**kwargs)


def _assemble(run: RunConfig, warnings: list[str]) -> CitingPaper:
    records = _load_records(run, warnings)
    citing_authors = tuple(parse_person_names(run.paper_authors)) \
        if run.paper_authors else ()
    if citing_authors:
        records = derive_self_citations(records, citing_authors)
    provider = _build_provider(run)
    cache = CountCache(run.cache_dir) if run.cache_dir else None
    if provider is not None or cache is not None:
        records, report = enrich_citation_counts(records, provider, cache,
                                                 max_workers=run.workers)
        warnings.append(report.summary())
        warnings.extend(f"{rid}: {msg}" for rid, msg in report.failures)
    return CitingPaper(title=run.paper_title, authors=citing_authors,
                       references=tuple(records))


def _summary_config(run: RunConfig) -> SummaryConfig:
    base = default_refset_config() if run.algo == "refset" else default_prodset_config()
    return base.with_overrides(
        author_k=run.k,
        author_score_mode=run.author_score_mode,
        quantifier_thresholds=QuantifierThresholds(most=run.quantifier_most,
                                                   large=run.quantifier_large),
        comparison_bands=ComparisonBands(same=run.compare_same,
                                         slight=run.compare_slight),
        show_counts=run.show_counts if run.show_counts is not None else True,
        unit=run.unit if run.unit is not None else "",
        noun=run.noun,
        template_pack=run.templates,
    )


def _load_pack(config: SummaryConfig) -> TemplatePack:
    pack = load_template_pack_file(config.template_pack) if config.template_pack \
        else default_pack()
    overrides: dict[str, str] = {}
    if config.unit:
        overrides["unit"] = config.unit
    if config.noun:
        overrides["noun"] = config.noun
    overrides["show_counts"] = "yes" if config.show_counts else "no"
    return pack.with_settings(**overrides)


def _emit(citing: CitingPaper, run: RunConfig, warnings: list[str]) -> str:
    config = _summary_config(run)
    profile = build_profile(citing, config, warnings)
    if run.emit == "profile":
        return profile_to_text(profile)
    plan = build_plan(profile, config)
    if run.emit == "plan":
        return plan_to_text(plan)
    return realize(plan, _load_pack(config)).full_text


# -- subcommands ----------------------------------------------------------------

def _cmd_summarize(args: argparse.Namespace) -> int:
    run = _merge_run_config(args)
    warnings: list[str] = []
    citing = _assemble(run, warnings)
    output = _emit(citing, run, warnings)
    _flush_warnings(warnings)
    print(output)
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    run = _merge_run_config(args)
    warnings: list[str] = []
    citing = _assemble(run, warnings)
    sections = []
    for algo in ("refset", "prodset"):
        run.algo = algo
        run.emit = "summary"
        sections.append(f"[{algo}]\n{_emit(citing, run, warnings)}")
    _flush_warnings(warnings)
    print("\n\n".join(sections))
    return 0


def _cmd_enrich(args: argparse.Namespace) -> int:
    run = _merge_run_config(args)
    if run.provider == "off":
        raise ConfigError("enrich needs --provider mock or http")
    if not run.cache_dir:
        raise ConfigError("enrich needs --cache-dir (or " + CACHE_DIR_ENV + ")")
    warnings: list[str] = []
    records = _load_records(run, warnings)
    provider = _build_provider(run)
    cache = CountCache(run.cache_dir)
    _, report = enrich_citation_counts(records, provider, cache,
                                       max_workers=run.workers)
    warnings.append(report.summary())
    warnings.extend(f"{rid}: {msg}" for rid, msg in report.failures)
    _flush_warnings(warnings)
    return 0


def _flush_warnings(warnings: list[str]) -> None:
    for line in warnings:
        print(line, file=sys.stderr)


# -- argument parsing -----------------------------------------------------------

def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("input", help="bibliography (.bib) or line-delimited record file")
    parser.add_argument("--config", help="JSON config file (flags override it)")
    parser.add_argument("--taxonomy", help="venue taxonomy table (tab-separated)")
    parser.add_argument("--provider", choices=["off", "mock", "http"], default=None,
                        help="citation-count source (default off)")
    parser.add_argument("--counts", help="title->count JSON map for --provider mock")
    parser.add_argument("--endpoint", help="base URL for --provider http")
    parser.add_argument("--cache-dir", dest="cache_dir",
                        help=f"citation cache directory (or ${CACHE_DIR_ENV})")
    parser.add_argument("--workers", type=int, default=None,
                        help="max concurrent provider lookups (default 4)")
    parser.add_argument("--paper-title", dest="paper_title", default=None,
                        help="title of the citing paper")
    parser.add_argument("--paper-authors", dest="paper_authors", default=None,
                        help="authors of the citing paper, 'A and B' form "
                             "(enables self-citation detection)")
    parser.add_argument("--strict", action="store_true", default=None,
                        help="fail on the first bibliography syntax error")


def _add_summary_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--templates", help="template pack file")
    parser.add_argument("--k", type=int, default=None,
                        help="size of the author list (default 7)")
    parser.add_argument("--unit", default=None, help="unit symbol for comparisons")
    parser.add_argument("--noun", default=None, help="noun for the summarised items")
    parser.add_argument("--no-counts", dest="show_counts", action="store_false",
                        default=None, help="hide citation counts in the text")


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="refsum",
        description="Generate natural-language overviews of reference lists.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sum = sub.add_parser("summarize", help="summarise one bibliography")
    _add_common(p_sum)
    _add_summary_options(p_sum)
    p_sum.add_argument("--algo", choices=["refset", "prodset"], default=None,
                       help="summary algorithm (default refset)")
    p_sum.add_argument("--emit", choices=["summary", "plan", "profile"], default=None,
                       help="what to print (default summary)")
    p_sum.set_defaults(func=_cmd_summarize)

    p_cmp = sub.add_parser("compare", help="both algorithms side by side")
    _add_common(p_cmp)
    _add_summary_options(p_cmp)
    p_cmp.set_defaults(func=_cmd_compare)

    p_enr = sub.add_parser("enrich", help="warm the citation-count cache")
    _add_common(p_enr)
    p_enr.set_defaults(func=_cmd_enrich)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_arg_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"refsum: configuration error: {exc}", file=sys.stderr)
        return 2
    except (PlanningError, RealizationError) as exc:
        print(f"refsum: {exc}", file=sys.stderr)
        return 3
    except (InputError, EmptySetError) as exc:
        print(f"refsum: {exc}", file=sys.stderr)
        return 1
    except RefsumError as exc:
        print(f"refsum: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
