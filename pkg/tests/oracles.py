"""Brute-force reference implementations used to check the statistics.

These deliberately avoid the library's own code paths: plain loops, the
statistics module, and exhaustive scans. Keep them dumb.
"""

from __future__ import annotations

import statistics
from collections.abc import Mapping


def get(record, attribute):
    if isinstance(record, Mapping):
        return record.get(attribute)
    return getattr(record, attribute, None)


def brute_median(values):
    return statistics.median(values)


def brute_range(values):
    return min(values), max(values)


def brute_distribution(records, attribute):
    """value -> (count, proportion) including 'unknown' for absent values."""
    tally = {}
    for r in records:
        v = get(r, attribute)
        if v is None:
            key = "unknown"
        elif isinstance(v, bool):
            key = "true" if v else "false"
        else:
            key = str(v)
        tally[key] = tally.get(key, 0) + 1
    return {k: (c, c / len(records)) for k, c in tally.items()}


def brute_self_citation_share(records):
    return sum(1 for r in records if get(r, "self_citation") is True) / len(records)


def brute_top_authors(records, k):
    """Exhaustive per-author tally: (score, papers) keyed by normalized key."""
    scores = {}
    papers = {}
    for r in records:
        seen = set()
        for a in get(r, "authors") or ():
            if a.normalized_key in seen:
                continue
            seen.add(a.normalized_key)
            c = get(r, "citation_count")
            scores[a.normalized_key] = scores.get(a.normalized_key, 0) + (c or 0)
            papers[a.normalized_key] = papers.get(a.normalized_key, 0) + 1
    order = sorted(scores, key=lambda key: (-scores[key], -papers[key], key))
    return [(key, scores[key], papers[key]) for key in order[:k]]


def brute_group_tops(records, attribute):
    """group value -> id of the winning record, by exhaustive comparison."""
    winners = {}
    for r in records:
        g = get(r, attribute)
        if g is None:
            continue
        g = str(g)
        if g not in winners:
            winners[g] = r
            continue
        winners[g] = _better(r, winners[g])
    return {g: get(r, "id") for g, r in winners.items()}


def _better(a, b):
    ca, cb = get(a, "citation_count"), get(b, "citation_count")
    if (ca is not None) != (cb is not None):
        return a if ca is not None else b
    if ca is not None and ca != cb:
        return a if ca > cb else b
    ya = get(a, "year")
    yb = get(b, "year")
    if (ya is not None) != (yb is not None):
        return a if ya is not None else b
    if ya is not None and ya != yb:
        return a if ya < yb else b
    ta, tb = get(a, "title") or "", get(b, "title") or ""
    if ta != tb:
        return a if ta < tb else b
    return a if (get(a, "id") or "") < (get(b, "id") or "") else b


def brute_importance(records, dominating, candidates, min_size=2):
    """Direct evaluation of the spread-over-range importance formula."""
    present = [get(r, dominating) for r in records if get(r, dominating) is not None]
    lo, hi = min(present), max(present)
    result = {}
    for attribute in candidates:
        buckets = {}
        for r in records:
            v = get(r, dominating)
            if v is None:
                continue
            c = get(r, attribute)
            if c is None:
                key = "unknown"
            elif isinstance(c, bool):
                key = "true" if c else "false"
            else:
                key = str(c)
            buckets.setdefault(key, []).append(v)
        medians = [statistics.median(vals) for vals in buckets.values()
                   if len(vals) >= min_size]
        if hi == lo or not medians:
            result[attribute] = 0.0
        else:
            result[attribute] = (max(medians) - min(medians)) / (hi - lo)
    return result


def brute_percentage(proportion):
    """Integer percent via decimal-string surgery, halves away from zero."""
    text = f"{proportion * 100:.6f}"
    whole, frac = text.split(".")
    n = int(whole)
    if int(frac[0]) >= 5:
        n += 1
    return f"{n}%"
