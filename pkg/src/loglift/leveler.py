"""Map DOI values to log levels and filter mismatches through heuristics.

The DOI range observed over the relevant methods is split into equal-width
bands, one per considered level (category levels are removed from the scale
when the category heuristic is active). A statement whose current level
differs from its band's level is a mismatch; eight heuristics then decide
whether the transformation is safe to propose.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .doi_engine import DoiConfig, DoiModel, DoiValue, doi_of
from .errors import EmptyModel, OutOfRange
from .levels import LevelScheme
from .repo_miner import MethodIdentity
from .source_index import LoggingStatement, SourceIndex, message_keywords_present

DEFAULT_KEYL_KEYWORDS = ("fail", "disabl", "error", "exception")
DEFAULT_KEYR_KEYWORDS = ("stop", "shut", "kill", "dead", "not alive")

HEURISTIC_ORDER = ("WS", "CTCH", "IFS", "KEYL", "CNDS", "KEYR", "INH", "TDIST")


@dataclass(frozen=True)
class HeuristicConfig:
    ws_enabled: bool = True
    ws_categories: frozenset[str] | None = None  # None: scheme default
    ctch: bool = True
    ifs: bool = True
    keyl: bool = True
    cnds: bool = True
    keyr: bool = True
    inh: bool = True
    tdist: int | None = None  # None: unlimited
    keyl_keywords: tuple[str, ...] = DEFAULT_KEYL_KEYWORDS
    keyr_keywords: tuple[str, ...] = DEFAULT_KEYR_KEYWORDS
    # widen the partition population from statement-enclosing methods to
    # every method in the tree
    partition_all_methods: bool = False

    def __post_init__(self):
        if self.tdist is not None and self.tdist < 1:
            raise ValueError("tdist must be >= 1 when finite")
        if self.keyl and not self.keyl_keywords:
            raise ValueError("keyl requires a non-empty keyword list")
        if self.keyr and not self.keyr_keywords:
            raise ValueError("keyr requires a non-empty keyword list")

    def categories(self, scheme: LevelScheme) -> frozenset[str]:
        if self.ws_categories is not None:
            return self.ws_categories
        return scheme.categories


@dataclass(frozen=True)
class Partitioning:
    lo: float
    hi: float
    considered: tuple[str, ...]

    @property
    def width(self) -> float:
        return (self.hi - self.lo) / len(self.considered)

    def band_of(self, value: float) -> int:
        if value < self.lo or value > self.hi:
            raise OutOfRange(f"{value} outside [{self.lo}, {self.hi}]")
        if self.width == 0.0:
            return 0
        idx = math.floor((value - self.lo) / self.width)
        return min(idx, len(self.considered) - 1)


def build_partitioning(
    doi_values: list[DoiValue], scheme: LevelScheme, cfg: HeuristicConfig
) -> Partitioning:
    """Equal-width bands over the observed DOI range, one per level."""
    if not doi_values:
        raise EmptyModel("no DOI values to partition")
    values = [dv.value for dv in doi_values]
    considered = scheme.considered_levels(cfg.ws_enabled, cfg.categories(scheme))
    if not considered:
        raise ValueError("category set leaves no considered levels")
    return Partitioning(lo=min(values), hi=max(values), considered=considered)


def predict_level(partitioning: Partitioning, value: float) -> str:
    """Considered level whose band contains ``value``."""
    return partitioning.considered[partitioning.band_of(value)]


@dataclass(frozen=True)
class Verdict:
    heuristic: str
    passed: bool

    @property
    def label(self) -> str:
        return "pass" if self.passed else f"denied-by-{self.heuristic}"


def transformation_distance(
    current: str, proposed: str, partitioning: Partitioning, scheme: LevelScheme
) -> int:
    """Level distance over the considered ordering (full scheme as fallback
    when the current level is not itself a considered level)."""
    considered = partitioning.considered
    if current in considered and proposed in considered:
        return abs(considered.index(current) - considered.index(proposed))
    return abs(scheme.ordinal(current) - scheme.ordinal(proposed))


def evaluate_heuristics(
    stmt: LoggingStatement,
    current: str,
    proposed: str,
    cfg: HeuristicConfig,
    scheme: LevelScheme,
    partitioning: Partitioning,
    override_group_proposals: tuple[str, ...] = (),
) -> list[Verdict]:
    """Apply the eight heuristics in their fixed order.

    ``override_group_proposals`` holds the predicted levels of every
    statement sharing the override chain of ``stmt`` (itself included);
    consistent proposals keep the chain's logging behavior aligned.
    """
    lowering = scheme.ordinal(proposed) < scheme.ordinal(current)
    raising = scheme.ordinal(proposed) > scheme.ordinal(current)
    categories = cfg.categories(scheme)
    verdicts: list[Verdict] = []

    deny_ws = cfg.ws_enabled and current in categories
    verdicts.append(Verdict("WS", not deny_ws))

    deny_ctch = cfg.ctch and lowering and stmt.in_catch
    verdicts.append(Verdict("CTCH", not deny_ctch))

    deny_ifs = cfg.ifs and lowering and stmt.first_in_branch
    verdicts.append(Verdict("IFS", not deny_ifs))

    deny_keyl = (
        cfg.keyl
        and lowering
        and message_keywords_present(stmt, list(cfg.keyl_keywords))
    )
    verdicts.append(Verdict("KEYL", not deny_keyl))

    deny_cnds = cfg.cnds and stmt.level_guarded
    verdicts.append(Verdict("CNDS", not deny_cnds))

    # KEYR guards critical target levels; with categories active those are
    # never proposed, so the heuristic is inapplicable
    deny_keyr = (
        cfg.keyr
        and not cfg.ws_enabled
        and raising
        and proposed in scheme.raise_guard_levels
        and not message_keywords_present(stmt, list(cfg.keyr_keywords))
    )
    verdicts.append(Verdict("KEYR", not deny_keyr))

    deny_inh = (
        cfg.inh
        and len(override_group_proposals) >= 2
        and len(set(override_group_proposals)) > 1
    )
    verdicts.append(Verdict("INH", not deny_inh))

    deny_tdist = cfg.tdist is not None and (
        transformation_distance(current, proposed, partitioning, scheme) > cfg.tdist
    )
    verdicts.append(Verdict("TDIST", not deny_tdist))
    return verdicts


@dataclass
class Suggestion:
    statement: LoggingStatement
    current_level: str
    proposed_level: str
    doi: float
    distance: int
    verdicts: list[Verdict]

    @property
    def emitted(self) -> bool:
        return all(v.passed for v in self.verdicts)

    @property
    def first_denial(self) -> str | None:
        for v in self.verdicts:
            if not v.passed:
                return v.heuristic
        return None


MATCHED = "matched"
DENIED = "denied"
SUGGESTED = "suggested"


@dataclass
class Assessment:
    statement: LoggingStatement
    doi: float
    proposed: str
    disposition: str  # matched | denied | suggested
    suggestion: Suggestion | None = None


@dataclass
class LevelingResult:
    partitioning: Partitioning | None
    assessments: list[Assessment]
    doi_values: dict[MethodIdentity, float] = field(default_factory=dict)

    @property
    def suggestions(self) -> list[Suggestion]:
        return [
            a.suggestion
            for a in self.assessments
            if a.disposition == SUGGESTED and a.suggestion is not None
        ]

    @property
    def denied(self) -> list[Suggestion]:
        return [
            a.suggestion
            for a in self.assessments
            if a.disposition == DENIED and a.suggestion is not None
        ]

    @property
    def matched_count(self) -> int:
        return sum(1 for a in self.assessments if a.disposition == MATCHED)


def assess(
    index: SourceIndex,
    model: DoiModel,
    scheme: LevelScheme,
    cfg: HeuristicConfig,
    doi_cfg: DoiConfig,
) -> LevelingResult:
    """Predict a level for every analyzable statement and judge mismatches."""
    if cfg.partition_all_methods:
        population = [m.identity for m in index.methods]
        # keep deterministic order and uniqueness
        population = list(dict.fromkeys(population))
    else:
        population = index.methods_with_statements()
    if not population:
        return LevelingResult(partitioning=None, assessments=[])

    doi_values = [doi_of(model, ident, doi_cfg) for ident in population]
    partitioning = build_partitioning(doi_values, scheme, cfg)
    by_method = {dv.method: dv.value for dv in doi_values}

    analyzable = [s for s in index.statements if s.analyzable]

    # proposals first, so override groups can check consistency
    proposals: dict[tuple, str] = {}
    dois: dict[tuple, float] = {}
    for stmt in analyzable:
        value = by_method.get(stmt.enclosing_method)
        if value is None:
            value = doi_of(model, stmt.enclosing_method, doi_cfg).value
        dois[stmt.key()] = value
        proposals[stmt.key()] = predict_level(partitioning, value)

    group_of: dict[MethodIdentity, int] = {}
    for gi, group in enumerate(index.override_groups):
        for ident in group:
            group_of[ident] = gi
    group_proposals: dict[int, list[str]] = {}
    for stmt in analyzable:
        gi = group_of.get(stmt.enclosing_method)
        if gi is not None:
            group_proposals.setdefault(gi, []).append(proposals[stmt.key()])

    assessments: list[Assessment] = []
    for stmt in analyzable:
        proposed = proposals[stmt.key()]
        value = dois[stmt.key()]
        current = stmt.level
        assert current is not None
        if proposed == current:
            assessments.append(
                Assessment(statement=stmt, doi=value, proposed=proposed, disposition=MATCHED)
            )
            continue
        gi = group_of.get(stmt.enclosing_method)
        group = tuple(group_proposals.get(gi, ())) if gi is not None else ()
        verdicts = evaluate_heuristics(
            stmt, current, proposed, cfg, scheme, partitioning, group
        )
        suggestion = Suggestion(
            statement=stmt,
            current_level=current,
            proposed_level=proposed,
            doi=value,
            distance=transformation_distance(current, proposed, partitioning, scheme),
            verdicts=verdicts,
        )
        disposition = SUGGESTED if suggestion.emitted else DENIED
        assessments.append(
            Assessment(
                statement=stmt,
                doi=value,
                proposed=proposed,
                disposition=disposition,
                suggestion=suggestion,
            )
        )
    return LevelingResult(
        partitioning=partitioning,
        assessments=assessments,
        doi_values={dv.method: dv.value for dv in doi_values},
    )


def suggest(
    index: SourceIndex,
    model: DoiModel,
    scheme: LevelScheme,
    cfg: HeuristicConfig,
    doi_cfg: DoiConfig,
) -> list[Suggestion]:
    """Transformable suggestions: mismatches that pass every heuristic."""
    return assess(index, model, scheme, cfg, doi_cfg).suggestions
