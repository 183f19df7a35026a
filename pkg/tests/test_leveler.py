"""Partitioning, heuristics, and suggestion assembly."""

import random

import pytest

from loglift.doi_engine import DoiConfig, DoiValue
from loglift.errors import EmptyModel, OutOfRange
from loglift.levels import JUL, SLF4J
from loglift.leveler import (
    HEURISTIC_ORDER,
    HeuristicConfig,
    Partitioning,
    assess,
    build_partitioning,
    evaluate_heuristics,
    predict_level,
    suggest,
)
from conftest import ident, make_index, make_statement, model_for
from flips import ALL_OFF, COLD, HOT, flip_fixture, flip_model, only_enabled

_model = flip_model


def _dv(values: list[float]) -> list[DoiValue]:
    return [
        DoiValue(ident("p/F.java", f"F#m{k}()"), v) for k, v in enumerate(values)
    ]


# -- partitioning -----------------------------------------------------------


def test_partition_spec_example_seven_bands():
    p = build_partitioning(_dv([0.0, 17.78]), JUL, ALL_OFF)
    assert len(p.considered) == 7
    assert p.width == pytest.approx(2.54, abs=0.01)
    assert predict_level(p, 1.0) == "FINEST"
    assert predict_level(p, 17.78) == "SEVERE"


def test_partition_ws_removes_categories():
    cfg = HeuristicConfig()  # ws on, JUL default categories
    p = build_partitioning(_dv([0.0, 8.0]), JUL, cfg)
    assert p.considered == ("FINEST", "FINER", "FINE", "INFO")
    assert predict_level(p, 8.0) == "INFO"


def test_partition_slf4j_defaults():
    p = build_partitioning(_dv([0.0, 5.0]), SLF4J, HeuristicConfig())
    assert p.considered == ("TRACE", "DEBUG", "INFO")


def test_partition_degenerate_range_maps_to_lowest():
    p = build_partitioning(_dv([3.5, 3.5]), JUL, ALL_OFF)
    assert p.width == 0.0
    assert predict_level(p, 3.5) == "FINEST"


def test_partition_empty_model():
    with pytest.raises(EmptyModel):
        build_partitioning([], JUL, ALL_OFF)


def test_partition_rejects_all_levels_categorized():
    cfg = HeuristicConfig(ws_categories=frozenset(JUL.levels))
    with pytest.raises(ValueError, match="considered"):
        build_partitioning(_dv([0.0, 1.0]), JUL, cfg)


def test_predict_floor_rule_and_top_clamp():
    p = Partitioning(lo=0.0, hi=7.0, considered=JUL.levels)
    assert predict_level(p, 2.5) == "FINE"
    assert predict_level(p, 0.0) == "FINEST"
    assert predict_level(p, 7.0) == "SEVERE"


def test_predict_out_of_range():
    p = Partitioning(lo=1.0, hi=2.0, considered=JUL.levels)
    with pytest.raises(OutOfRange):
        predict_level(p, 0.5)
    with pytest.raises(OutOfRange):
        predict_level(p, 2.5)


def _scan_band_oracle(lo: float, hi: float, bands: int, value: float) -> int:
    """Brute-force scan of band upper edges."""
    width = (hi - lo) / bands
    if width == 0.0:
        return 0
    for i in range(bands - 1):
        if value < lo + (i + 1) * width:
            return i
    return bands - 1


def test_predict_matches_scan_oracle_on_10000_values():
    rng = random.Random(42)
    checked = 0
    while checked < 10_000:
        bands = rng.randint(1, 7)
        lo = rng.uniform(0.0, 100.0)
        hi = lo + rng.uniform(0.1, 50.0)
        p = Partitioning(lo=lo, hi=hi, considered=JUL.levels[:bands])
        width = p.width
        for _ in range(20):
            band = rng.randint(0, bands - 1)
            # interior points: stay away from representability boundaries
            value = lo + (band + rng.uniform(0.02, 0.98)) * width
            if not (lo <= value <= hi):
                continue
            expected = _scan_band_oracle(lo, hi, bands, value)
            assert p.band_of(value) == expected
            checked += 1


def test_boundary_values_map_upward_with_exact_arithmetic():
    # dyadic widths make band edges exactly representable
    bands = 7
    width = 0.25
    p = Partitioning(lo=0.0, hi=bands * width, considered=JUL.levels)
    for i in range(1, bands):
        assert p.band_of(i * width) == i  # interior boundary: upper band
    assert p.band_of(0.0) == 0
    assert p.band_of(bands * width) == bands - 1  # hi itself: top band


def test_predict_is_monotone():
    rng = random.Random(7)
    p = Partitioning(lo=2.0, hi=11.0, considered=JUL.levels)
    values = sorted(rng.uniform(2.0, 11.0) for _ in range(500))
    bands = [p.band_of(v) for v in values]
    assert bands == sorted(bands)


def test_bands_tile_the_range():
    p = Partitioning(lo=0.0, hi=14.0, considered=JUL.levels)
    for i in range(7):
        inner = 0.0 + (i + 0.5) * p.width
        assert p.band_of(inner) == i


def test_scale_invariance_with_exact_factors():
    rng = random.Random(11)
    lo, hi, bands = 1.0, 9.0, 7
    p = Partitioning(lo=lo, hi=hi, considered=JUL.levels)
    values = [lo + (rng.randint(0, bands - 1) + rng.uniform(0.05, 0.95)) * p.width
              for _ in range(200)]
    for factor in (2.0, 0.5, 4.0):
        scaled = Partitioning(lo=lo * factor, hi=hi * factor, considered=JUL.levels)
        for v in values:
            assert scaled.band_of(v * factor) == p.band_of(v)


# -- heuristics --------------------------------------------------------------


def _verdicts_map(verdicts):
    return {v.heuristic: v.passed for v in verdicts}


def _eval(stmt, current, proposed, cfg, scheme=JUL, group=()):
    p = Partitioning(lo=0.0, hi=7.0, considered=scheme.levels)
    return evaluate_heuristics(stmt, current, proposed, cfg, scheme, p, group)


def test_verdict_order_is_fixed():
    stmt = make_statement(COLD, "INFO", 1)
    verdicts = _eval(stmt, "INFO", "FINE", HeuristicConfig())
    assert [v.heuristic for v in verdicts] == list(HEURISTIC_ORDER)


def test_ws_denies_statements_at_category_levels():
    stmt = make_statement(COLD, "WARNING", 1)
    verdicts = _eval(stmt, "WARNING", "FINE", HeuristicConfig(ws_enabled=True))
    assert _verdicts_map(verdicts)["WS"] is False
    assert verdicts[0].label == "denied-by-WS"


def test_ctch_denies_lowering_in_catch():
    stmt = make_statement(COLD, "WARNING", 1, in_catch=True)
    cfg = HeuristicConfig(ws_enabled=False)
    verdicts = _eval(stmt, "WARNING", "FINE", cfg)
    assert _verdicts_map(verdicts)["CTCH"] is False
    raised = _eval(stmt, "INFO", "SEVERE",
                   HeuristicConfig(ws_enabled=False, keyr=False))
    assert _verdicts_map(raised)["CTCH"] is True  # raising is allowed


def test_ifs_denies_lowering_first_in_branch():
    stmt = make_statement(COLD, "INFO", 1, first_in_branch=True)
    verdicts = _eval(stmt, "INFO", "FINEST", HeuristicConfig(ws_enabled=False))
    assert _verdicts_map(verdicts)["IFS"] is False


def test_keyl_denies_lowering_with_keywords():
    stmt = make_statement(COLD, "INFO", 1, message="Connection error occurred")
    verdicts = _eval(stmt, "INFO", "FINEST", HeuristicConfig(ws_enabled=False))
    assert _verdicts_map(verdicts)["KEYL"] is False
    calm = make_statement(COLD, "INFO", 2, message="Temperature has risen")
    verdicts = _eval(calm, "INFO", "FINEST", HeuristicConfig(ws_enabled=False))
    assert _verdicts_map(verdicts)["KEYL"] is True


def test_cnds_denies_any_change_when_guarded():
    stmt = make_statement(COLD, "SEVERE", 1, level_guarded=True)
    verdicts = _eval(stmt, "SEVERE", "INFO", HeuristicConfig(ws_enabled=False))
    assert _verdicts_map(verdicts)["CNDS"] is False
    raised = make_statement(COLD, "FINE", 2, level_guarded=True)
    verdicts = _eval(raised, "FINE", "SEVERE",
                     HeuristicConfig(ws_enabled=False, keyr=False))
    assert _verdicts_map(verdicts)["CNDS"] is False


def test_keyr_denies_raising_to_critical_without_keywords():
    stmt = make_statement(COLD, "INFO", 1, message="retrying soon")
    verdicts = _eval(stmt, "INFO", "WARNING", HeuristicConfig(ws_enabled=False))
    assert _verdicts_map(verdicts)["KEYR"] is False
    shutting = make_statement(COLD, "INFO", 2, message="shutting down now")
    verdicts = _eval(shutting, "INFO", "WARNING", HeuristicConfig(ws_enabled=False))
    assert _verdicts_map(verdicts)["KEYR"] is True
    # lowering onto a critical level is not KEYR's business
    lowered = make_statement(COLD, "SEVERE", 3, message="retrying soon")
    verdicts = _eval(lowered, "SEVERE", "WARNING", HeuristicConfig(ws_enabled=False))
    assert _verdicts_map(verdicts)["KEYR"] is True
    # inapplicable when categories are active
    verdicts = _eval(stmt, "INFO", "WARNING", HeuristicConfig(ws_enabled=True))
    assert _verdicts_map(verdicts)["KEYR"] is True


def test_keyr_slf4j_critical_levels():
    stmt = make_statement(COLD, "INFO", 1, message="routine step")
    verdicts = _eval(stmt, "INFO", "ERROR",
                     HeuristicConfig(ws_enabled=False), scheme=SLF4J)
    assert _verdicts_map(verdicts)["KEYR"] is False


def test_inh_requires_consistent_group_proposals():
    stmt = make_statement(HOT, "FINE", 1)
    cfg = HeuristicConfig(ws_enabled=False, keyr=False)
    consistent = _eval(stmt, "FINE", "SEVERE", cfg, group=("SEVERE", "SEVERE"))
    assert _verdicts_map(consistent)["INH"] is True
    conflicting = _eval(stmt, "FINE", "SEVERE", cfg, group=("SEVERE", "FINEST"))
    assert _verdicts_map(conflicting)["INH"] is False
    alone = _eval(stmt, "FINE", "SEVERE", cfg, group=("SEVERE",))
    assert _verdicts_map(alone)["INH"] is True


def test_tdist_denies_beyond_threshold():
    stmt = make_statement(COLD, "INFO", 1)
    cfg = HeuristicConfig(ws_enabled=False, tdist=2)
    verdicts = _eval(stmt, "INFO", "FINEST", cfg)  # distance 4
    assert _verdicts_map(verdicts)["TDIST"] is False
    near = _eval(stmt, "INFO", "FINE", cfg)  # distance 2
    assert _verdicts_map(near)["TDIST"] is True


def test_tdist_rejects_bad_threshold():
    with pytest.raises(ValueError):
        HeuristicConfig(tdist=0)


def test_enabled_keyword_heuristics_need_keywords():
    with pytest.raises(ValueError):
        HeuristicConfig(keyl=True, keyl_keywords=())
    with pytest.raises(ValueError):
        HeuristicConfig(keyr=True, keyr_keywords=())
    HeuristicConfig(keyl=False, keyl_keywords=(), keyr=False, keyr_keywords=())


# -- suggestion assembly -----------------------------------------------------


def _sites(suggestions):
    return {(s.statement.file_path, s.statement.line) for s in suggestions}


def test_suggest_hot_and_cold_fixture():
    control = make_statement(COLD, "INFO", 10)
    hot_stmt = make_statement(HOT, "FINEST", 20)
    index = make_index([control, hot_stmt])
    out = suggest(index, _model(), JUL, ALL_OFF, DoiConfig())
    assert {(s.current_level, s.proposed_level) for s in out} == {
        ("INFO", "FINEST"),
        ("FINEST", "SEVERE"),
    }


def test_statement_at_predicted_level_is_matched():
    stmt = make_statement(COLD, "FINEST", 10)
    hot_stmt = make_statement(HOT, "SEVERE", 20)
    index = make_index([stmt, hot_stmt])
    result = assess(index, _model(), JUL, ALL_OFF, DoiConfig())
    assert result.suggestions == []
    assert result.matched_count == 2


def test_suggestions_sorted_by_file_then_line():
    stmts = [
        make_statement(HOT, "FINEST", 30),
        make_statement(COLD, "INFO", 20),
        make_statement(COLD, "WARNING", 10),
    ]
    index = make_index(stmts)
    out = suggest(index, _model(), JUL, ALL_OFF, DoiConfig())
    keys = [(s.statement.file_path, s.statement.line) for s in out]
    assert keys == sorted(keys)


def test_partition_population_defaults_to_statement_methods():
    # a hotter, log-free method must not stretch the range by default
    control = make_statement(COLD, "INFO", 10)
    hot_stmt = make_statement(HOT, "FINEST", 20)
    silent = ident("p/Silent.java", "Silent#s()")
    index = make_index([control, hot_stmt], extra_methods=[silent])
    model = model_for([COLD] + [HOT] * 5 + [silent] * 20)
    narrow = assess(index, model, JUL, ALL_OFF, DoiConfig())
    assert narrow.partitioning.hi == pytest.approx(
        max(narrow.doi_values[HOT], narrow.doi_values[COLD])
    )
    wide_cfg = HeuristicConfig(
        ws_enabled=False, ctch=False, ifs=False, keyl=False,
        cnds=False, keyr=False, inh=False, partition_all_methods=True,
    )
    wide = assess(index, model, JUL, wide_cfg, DoiConfig())
    assert wide.partitioning.hi > narrow.partitioning.hi


def test_unseen_method_gets_zero_doi():
    unseen = ident("p/New.java", "New#n()")
    stmt = make_statement(unseen, "INFO", 10)
    hot_stmt = make_statement(HOT, "FINEST", 20)
    index = make_index([stmt, hot_stmt])
    result = assess(index, _model(), JUL, ALL_OFF, DoiConfig())
    assert result.doi_values[unseen] == 0.0


def test_applying_suggestions_then_reassessing_is_stable():
    control = make_statement(COLD, "INFO", 10)
    hot_stmt = make_statement(HOT, "FINEST", 20)
    index = make_index([control, hot_stmt])
    first = suggest(index, _model(), JUL, ALL_OFF, DoiConfig())
    replacement = {s.statement.key(): s.proposed_level for s in first}
    updated = []
    for stmt in index.statements:
        new_level = replacement.get(stmt.key(), stmt.level)
        updated.append(
            make_statement(stmt.enclosing_method, new_level, stmt.line)
        )
    second = suggest(make_index(updated), _model(), JUL, ALL_OFF, DoiConfig())
    assert second == []


# -- heuristic flip battery ---------------------------------------------------


@pytest.mark.parametrize("name", HEURISTIC_ORDER)
def test_heuristic_flip_removes_exactly_one(name):
    statements, groups, arm_cfg = flip_fixture(name)
    index = make_index(statements, override_groups=groups)
    model = _model()
    base = suggest(index, model, JUL, ALL_OFF, DoiConfig())
    arm = suggest(index, model, JUL, arm_cfg, DoiConfig())
    victim_site = (statements[1].file_path, statements[1].line)
    assert _sites(base) - _sites(arm) == {victim_site}
    assert _sites(arm) <= _sites(base)  # heuristics only filter
    # the denial is attributable to this heuristic alone: enabling any
    # other one (at defaults) keeps the victim's site transformable
    for other in HEURISTIC_ORDER:
        if other == name:
            continue
        other_out = suggest(index, model, JUL, only_enabled(other), DoiConfig())
        assert victim_site in _sites(other_out), f"{other} removed the victim"


def test_emitted_suggestions_pass_all_verdicts():
    statements, groups, arm_cfg = flip_fixture("CTCH")
    index = make_index(statements, override_groups=groups)
    result = assess(index, _model(), JUL, arm_cfg, DoiConfig())
    for sug in result.suggestions:
        assert sug.emitted and all(v.passed for v in sug.verdicts)
    for sug in result.denied:
        assert not sug.emitted and sug.first_denial == "CTCH"


def test_ws_proposals_never_target_categories():
    stmts = [
        make_statement(COLD, "INFO", 10),
        make_statement(HOT, "FINEST", 20),
        make_statement(HOT, "WARNING", 30),
    ]
    index = make_index(stmts)
    result = assess(index, _model(), JUL, HeuristicConfig(), DoiConfig())
    for a in result.assessments:
        assert a.proposed not in JUL.categories
    for sug in result.suggestions:
        assert sug.statement.level not in JUL.categories
