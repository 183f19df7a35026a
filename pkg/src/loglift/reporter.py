"""Run metrics: analyzed fraction, level distributions, bug-context focus.

The report gathers everything a run learned: how many statements were
analyzable, which heuristics filtered what, how the level histogram would
shift if all suggestions were applied, and how often proposed moves point
the right way in bug-fix contexts.
"""

from __future__ import annotations

import math
import re
from collections import Counter

from .doi_engine import DoiConfig
from .errors import EmptyHistogram
from .levels import LevelScheme
from .leveler import HEURISTIC_ORDER, LevelingResult, Suggestion
from .repo_miner import ChangeEvent, CommitRecord, MineResult
from .source_index import SourceIndex

REPORT_SCHEMA = "loglift-report@1"

# Commit messages matching this mark their changed methods as bug context.
DEFAULT_BUG_PATTERN = r"\b(?:fix|bug|defect|fault|repair)"


def normalized_entropy(histogram: dict[str, int], scheme: LevelScheme) -> float:
    """Shannon entropy of the level histogram, scaled into [0, 1]."""
    total = sum(histogram.values())
    if total == 0:
        raise EmptyHistogram("level histogram is empty")
    if len(scheme.levels) <= 1:
        return 0.0
    h = 0.0
    for count in histogram.values():
        if count > 0:
            p = count / total
            h -= p * math.log(p)
    return h / math.log(len(scheme.levels))


def distribution_change(
    before: dict[str, int], after: dict[str, int], scheme: LevelScheme
) -> tuple[float, float, float]:
    """(entropy_before, entropy_after, relative_change) with epsilon guard."""
    if sum(before.values()) != sum(after.values()):
        raise ValueError("histograms must cover the same statements")
    eb = normalized_entropy(before, scheme)
    ea = normalized_entropy(after, scheme)
    return eb, ea, (ea - eb) / max(eb, 1e-9)


def bug_focus(
    commits: list[CommitRecord],
    events: list[ChangeEvent],
    suggestions: list[Suggestion],
    scheme: LevelScheme,
    pattern: str = DEFAULT_BUG_PATTERN,
) -> float | None:
    """Fraction of suggestions moving the right way for their bug context.

    A method is in bug context when at least one commit whose message
    matches ``pattern`` changed it; ideal moves raise levels there and
    lower them elsewhere. None when there are no suggestions to judge.
    """
    if not suggestions:
        return None
    rx = re.compile(pattern, re.IGNORECASE)
    bug_commits = {c.id for c in commits if rx.search(c.message)}
    buggy_methods = {e.method for e in events if e.commit in bug_commits}
    ideal = 0
    for sug in suggestions:
        raised = scheme.ordinal(sug.proposed_level) > scheme.ordinal(sug.current_level)
        in_bug_context = sug.statement.enclosing_method in buggy_methods
        if (in_bug_context and raised) or (not in_bug_context and not raised):
            ideal += 1
    return ideal / len(suggestions)


def _histograms(
    index: SourceIndex, leveling: LevelingResult
) -> tuple[dict[str, int], dict[str, int]]:
    before: Counter = Counter()
    after: Counter = Counter()
    emitted = {s.statement.key(): s.proposed_level for s in leveling.suggestions}
    for stmt in index.statements:
        if not stmt.analyzable:
            continue
        before[stmt.level] += 1
        after[emitted.get(stmt.key(), stmt.level)] += 1
    return dict(before), dict(after)


def _suggestion_payload(sug: Suggestion, emitted: bool) -> dict:
    return {
        "file": sug.statement.file_path,
        "line": sug.statement.line,
        "flavor": sug.statement.flavor,
        "current_level": sug.current_level,
        "proposed_level": sug.proposed_level,
        "doi": sug.doi,
        "distance": sug.distance,
        "verdicts": [v.label for v in sug.verdicts],
        "emitted": emitted,
        "method": str(sug.statement.enclosing_method),
    }


def build_report(
    index: SourceIndex,
    leveling: LevelingResult,
    mine_result: MineResult,
    scheme: LevelScheme,
    doi_cfg: DoiConfig,
    bug_pattern: str = DEFAULT_BUG_PATTERN,
) -> dict:
    """Assemble the full run report as a JSON-serializable dict."""
    suggestions = leveling.suggestions
    denied = leveling.denied
    total = index.total_statements
    analyzable = total - index.failures

    denial_counts: Counter = Counter()
    for sug in denied:
        denial_counts[sug.first_denial] += 1

    lowered = sum(
        1
        for s in suggestions
        if scheme.ordinal(s.proposed_level) < scheme.ordinal(s.current_level)
    )
    lowered_fraction = lowered / len(suggestions) if suggestions else 0.0

    before, after = _histograms(index, leveling)
    if analyzable:
        eb, ea, rel = distribution_change(before, after, scheme)
        distribution = {
            "before": {lv: before.get(lv, 0) for lv in scheme.levels},
            "after": {lv: after.get(lv, 0) for lv in scheme.levels},
            "entropy_before": eb,
            "entropy_after": ea,
            "relative_change": rel,
        }
    else:
        distribution = None

    distance_hist: Counter = Counter(s.distance for s in suggestions)
    focus = bug_focus(
        mine_result.commits, mine_result.events, suggestions, scheme, bug_pattern
    )

    partitioning = leveling.partitioning
    return {
        "schema": REPORT_SCHEMA,
        "framework": scheme.framework,
        "totals": {
            "total_statements": total,
            "analyzable": analyzable,
            "failures": index.failures,
            "matched": leveling.matched_count,
            "nonfeature": len(denied),
            "feature": leveling.matched_count + len(suggestions),
            "suggestions_emitted": len(suggestions),
        },
        "analyzed_fraction": index.analyzed_fraction,
        "nonfeature_by_heuristic": {
            name: denial_counts.get(name, 0)
            for name in HEURISTIC_ORDER
            if denial_counts.get(name, 0)
        },
        "lowered_fraction": lowered_fraction,
        "distribution": distribution,
        "distance_histogram": sorted(
            [d, c] for d, c in distance_hist.items()
        ),
        "bug_focus": focus,
        "doi": {
            "edit_scaling": doi_cfg.edit_scaling,
            "decay_rate": doi_cfg.decay_rate,
            "events": len(mine_result.events),
            "commits": len(mine_result.commits),
        },
        "partitioning": (
            {
                "lo": partitioning.lo,
                "hi": partitioning.hi,
                "width": partitioning.width,
                "considered_levels": list(partitioning.considered),
            }
            if partitioning is not None
            else None
        ),
        "suggestions": [
            _suggestion_payload(s, True) for s in suggestions
        ]
        + [_suggestion_payload(s, False) for s in denied],
        "diagnostics": {
            **mine_result.diagnostics.as_dict(),
            "unparsable_files": list(index.unparsable_files),
            "statements_outside_methods": index.statements_outside_methods,
        },
    }


def conservation_holds(report: dict) -> bool:
    """Every statement lands in exactly one disposition bucket."""
    t = report["totals"]
    return (
        t["failures"] + t["nonfeature"] + t["matched"] + t["suggestions_emitted"]
        == t["total_statements"]
    )
