import pytest

from proofinfo import (
    brd,
    builtin_example,
    check_knowledge_system,
    check_proof,
    day_is,
    day_not,
    enumerate_proofs,
    is_data,
    not_win,
    parse_kformula,
    parse_world,
    resolve_reliability,
    win,
    win_disj,
)
from proofinfo.errors import (
    InconsistentDayContextError,
    MalformedDocumentError,
    UnknownNameError,
    UnparsableFormulaError,
)
from proofinfo.kernel import DECEITFUL, TRUTHFUL, UNKNOWN, WorldSpec


# ---- formulas ---------------------------------------------------------------

def test_parse_basic_forms(world):
    assert parse_kformula("Brd(R2,Dok)", world) == brd("R2", "Dok")
    assert parse_kformula("Win(Bok)", world) == win("Bok")
    assert parse_kformula("¬Win(Fok)", world) == not_win("Fok")
    assert parse_kformula("Day=Fri", world) == day_is("Fri")
    assert parse_kformula("Day≠Fri", world) == day_not("Fri")
    assert parse_kformula("Win(Bok)∨Win(Fok)", world) == win_disj({"Bok", "Fok"})


def test_parse_ascii_aliases(world):
    assert parse_kformula("~Win(Fok)", world) == not_win("Fok")
    assert parse_kformula("Day!=Fri", world) == day_not("Fri")
    assert parse_kformula("Win(Bok)\\/Win(Fok)", world) == win_disj({"Bok", "Fok"})


def test_parse_rejects_unknown_names(world):
    with pytest.raises(UnknownNameError):
        parse_kformula("Brd(R9,Bok)", world)
    with pytest.raises(UnknownNameError):
        parse_kformula("Win(Zok)", world)
    with pytest.raises(UnknownNameError):
        parse_kformula("Day=Tue", world)


def test_parse_rejects_garbage(world):
    with pytest.raises(UnparsableFormulaError):
        parse_kformula("Hello world", world)
    with pytest.raises(UnparsableFormulaError):
        parse_kformula("Win(Bok)∨Win(Bok)", world)
    with pytest.raises(UnparsableFormulaError):
        parse_kformula("Win(Bok)∨Day=Fri", world)


def test_disjunction_factory_collapses_singleton():
    assert win_disj({"Bok"}) == win("Bok")
    with pytest.raises(ValueError):
        win_disj(set())


def test_formula_text_roundtrip(world):
    for text in ("Day=Fri", "Day≠Fri", "Brd(R3,Fok)", "Win(Dok)", "¬Win(Bok)",
                 "Win(Bok)∨Win(Fok)"):
        assert parse_kformula(text, world).text() == text


def test_data_admissibility():
    assert is_data(day_is("Fri"))
    assert is_data(brd("R1", "Bok"))
    assert not is_data(win("Bok"))
    assert not is_data(not_win("Bok"))
    assert not is_data(win_disj({"Bok", "Fok"}))


# ---- world -------------------------------------------------------------------

def test_parse_world_schema(world):
    doc = {
        "participants": ["Bok", "Dok", "Fok"],
        "day_domain": ["Fri", "Other"],
        "sources": {
            "R1": "always_truthful",
            "R2": {"truthful_on": ["Fri"]},
            "R3": "always_deceitful",
        },
    }
    parsed = parse_world(doc)
    assert parsed == world


def test_parse_world_rejects_bad_schedule():
    doc = {
        "participants": ["A", "B"],
        "day_domain": ["Fri"],
        "sources": {"R1": "sometimes"},
    }
    with pytest.raises(MalformedDocumentError):
        parse_world(doc)


def test_parse_world_rejects_extra_keys():
    with pytest.raises(MalformedDocumentError):
        parse_world({"participants": ["A", "B"], "day_domain": ["d"], "sources": {}, "x": 1})


def test_world_needs_two_participants():
    with pytest.raises(MalformedDocumentError):
        WorldSpec(("Bok",), ("Fri",), {"R1": frozenset()})


def test_world_rejects_stray_schedule_days():
    with pytest.raises(UnknownNameError):
        WorldSpec(("A", "B"), ("Fri",), {"R1": frozenset({"Tue"})})


def test_resolve_reliability(world):
    assert resolve_reliability(world, "R1", []) == TRUTHFUL
    assert resolve_reliability(world, "R3", []) == DECEITFUL
    assert resolve_reliability(world, "R2", []) == UNKNOWN
    assert resolve_reliability(world, "R2", [day_is("Fri")]) == TRUTHFUL
    assert resolve_reliability(world, "R2", [day_not("Fri")]) == DECEITFUL
    with pytest.raises(InconsistentDayContextError):
        resolve_reliability(world, "R2", [day_is("Fri"), day_not("Fri")])
    with pytest.raises(UnknownNameError):
        resolve_reliability(world, "R9", [])


# ---- proof checking ----------------------------------------------------------

def test_all_fixture_proofs_check_valid(world):
    ks = builtin_example()
    results = check_knowledge_system(world, ks)
    assert [c.proof_id for c in results] == [p.id for p in ks.proofs]
    assert all(c.valid for c in results), [
        (c.proof_id, c.violations) for c in results if not c.valid
    ]


def test_strict_mode_requires_explicit_intermediates(world):
    ks = builtin_example()
    results = {c.proof_id: c for c in check_knowledge_system(world, ks, strict=True)}
    # QB3 and QF1 elide the not-win step their disjunction rests on
    assert not results["QB3"].valid
    assert not results["QF1"].valid
    for pid in ("QB1", "QB2", "QD1", "QD2", "QD3"):
        assert results[pid].valid


def test_qb3_composite_step_records_implicit_formula(world):
    ks = builtin_example()
    results = {c.proof_id: c for c in check_knowledge_system(world, ks)}
    disj_step = results["QB3"].steps[2]
    assert disj_step.rule == "ExistenceDisj"
    assert disj_step.implicit == (not_win("Dok"),)


def test_qb1_without_day_fact_is_invalid(world):
    listing = [brd("R2", "Bok"), win("Bok")]
    checked = check_proof(world, listing, {win("Bok")}, proof_id="QB1-mutant")
    assert not checked.valid
    assert any("R2 reliability unknown" in reason for _, reason in checked.violations)


def test_extraneous_premise_removal_keeps_qd2_valid(world):
    listing = [day_is("Fri"), brd("R2", "Dok"), win("Dok")]
    checked = check_proof(world, listing, {win("Dok")})
    assert checked.valid


def test_goal_must_come_last(world):
    listing = [win("Dok"), brd("R1", "Dok")]
    checked = check_proof(world, listing, {win("Dok")})
    assert not checked.valid
    assert any("not a goal" in reason for _, reason in checked.violations)


def test_uniqueness_rule(world):
    listing = [brd("R1", "Dok"), win("Dok"), not_win("Bok")]
    checked = check_proof(world, listing, {not_win("Bok")})
    assert checked.steps[2].rule == "Uniqueness"
    assert checked.valid


def test_empty_listing_rejected(world):
    with pytest.raises(ValueError):
        check_proof(world, [], {win("Bok")})


def test_inconsistent_day_facts_reported_as_violation(world):
    listing = [day_is("Fri"), day_not("Fri"), brd("R2", "Bok"), win("Bok")]
    checked = check_proof(world, listing, {win("Bok")})
    assert not checked.valid


# ---- enumeration ---------------------------------------------------------------

def test_enumerate_single_chain_matches_qb1(world):
    result = enumerate_proofs(world, {day_is("Fri"), brd("R2", "Bok")}, max_steps=10)
    assert result.contradictions == ()
    assert len(result.proofs) == 1
    listing = result.proofs[0]
    assert listing.goal == win("Bok")
    assert set(listing.texts()) == {"Day=Fri", "Brd(R2,Bok)", "Win(Bok)"}


def test_enumerated_proofs_recheck_strict(world):
    scenarios = [
        {day_is("Fri"), brd("R2", "Bok")},
        {day_not("Fri"), brd("R2", "Dok"), brd("R3", "Fok")},
        {brd("R1", "Dok")},
        {day_is("Fri"), brd("R3", "Fok"), brd("R2", "Dok")},
    ]
    for data in scenarios:
        result = enumerate_proofs(world, data, max_steps=50)
        assert result.proofs
        for listing in result.proofs:
            checked = check_proof(world, listing.formulas, {listing.goal}, strict=True)
            assert checked.valid, (listing.texts(), checked.violations)


def test_enumerate_qb3_scenario_adds_one_intermediate(world):
    ks = builtin_example()
    result = enumerate_proofs(
        world, {day_not("Fri"), brd("R2", "Dok"), brd("R3", "Fok")}, max_steps=50
    )
    bok_proofs = [p for p in result.proofs if p.goal == win("Bok")]
    assert len(bok_proofs) == 1
    # fully explicit variant of QB3: the published listing minus its elided step
    expected = set(ks.by_id["QB3"].formulas) | {"¬Win(Dok)"}
    assert set(bok_proofs[0].texts()) == expected


def test_enumerate_detects_contradiction(world):
    result = enumerate_proofs(world, {brd("R1", "Bok"), brd("R1", "Dok")}, max_steps=50)
    assert "Bok" in result.contradictions and "Dok" in result.contradictions


def test_consistent_data_yields_no_contradiction(world):
    scenarios = [
        {brd("R1", "Dok")},
        {day_is("Fri"), brd("R2", "Bok"), brd("R3", "Fok")},
        {day_not("Fri"), brd("R2", "Dok"), brd("R3", "Fok")},
    ]
    for data in scenarios:
        assert enumerate_proofs(world, data, max_steps=50).contradictions == ()


def test_enumerate_rejects_non_data(world):
    with pytest.raises(ValueError):
        enumerate_proofs(world, {win("Bok")}, max_steps=5)


def test_enumerate_rejects_inconsistent_day_context(world):
    with pytest.raises(InconsistentDayContextError):
        enumerate_proofs(world, {day_is("Fri"), day_not("Fri"), brd("R1", "Bok")})


def test_enumerate_respects_step_budget(world):
    result = enumerate_proofs(world, {brd("R1", "Bok")}, max_steps=1)
    # only one application allowed: Win(Bok); the uniqueness fan-out is cut off
    assert [p.goal for p in result.proofs] == [win("Bok")]
    with pytest.raises(ValueError):
        enumerate_proofs(world, {brd("R1", "Bok")}, max_steps=0)


def test_enumerate_goal_predicate_filters(world):
    result = enumerate_proofs(
        world,
        {day_is("Fri"), brd("R2", "Bok")},
        goal_pred=lambda p: p == "Dok",
        max_steps=20,
    )
    assert result.proofs == ()


def test_enumerate_disjunctive_goals_behind_flag(world):
    data = {day_not("Fri"), brd("R2", "Dok")}
    plain = enumerate_proofs(world, data, max_steps=50)
    assert all(p.goal.kind == "win" for p in plain.proofs)
    flagged = enumerate_proofs(world, data, max_steps=50, include_disjunctive=True)
    disj_goals = [p for p in flagged.proofs if p.goal.kind == "win_disj"]
    assert disj_goals
    assert win_disj({"Bok", "Fok"}) in [p.goal for p in disj_goals]


def test_day_domain_extends_beyond_two_days():
    week = ("Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun")
    world = WorldSpec(
        participants=("Bok", "Dok"),
        day_domain=week,
        truthful_days={"R1": frozenset(week), "R2": frozenset({"Fri"})},
    )
    assert resolve_reliability(world, "R2", [day_is("Sat")]) == DECEITFUL
    assert resolve_reliability(world, "R2", [day_is("Fri")]) == TRUTHFUL
    assert resolve_reliability(world, "R2", [day_not("Mon")]) == UNKNOWN
    # excluding every day but one decides the verdict
    ctx = [day_not(d) for d in week if d != "Fri"]
    assert resolve_reliability(world, "R2", ctx) == TRUTHFUL
    with pytest.raises(InconsistentDayContextError):
        resolve_reliability(world, "R2", [day_not(d) for d in week])


def test_fixture_step_rules(world):
    ks = builtin_example()
    results = {c.proof_id: c for c in check_knowledge_system(world, ks)}
    assert [s.rule for s in results["QB1"].steps] == [
        "UserData", "UserData", "TruthfulBroadcast",
    ]
    assert [s.rule for s in results["QB3"].steps] == [
        "UserData", "UserData", "ExistenceDisj", "UserData",
        "DeceitfulBroadcast", "DisjElim",
    ]
    assert [s.rule for s in results["QF1"].steps] == [
        "UserData", "UserData", "ExistenceDisj", "UserData",
        "DeceitfulBroadcast", "DisjElim",
    ]
