from __future__ import annotations

import pytest

from quotlab.scenarios import (
    OPERATIONS,
    ScenarioParseError,
    find_scenario,
    load_corpus,
    parse_scenario,
    run_scenario,
)

HEADER = """\
name: demo
base: {kind: prime_field, p: 5}
algebra: {variables: [t], truncation: 6}
action:
  kind: constant
  group: {cyclic: 2}
  images: {g: {t: "-t"}}
"""


def scenario(tasks: str):
    return parse_scenario(HEADER + "tasks:\n" + tasks, "demo.yaml")


def test_parse_error_carries_line_and_column():
    text = HEADER + "tasks:\n  - op: frobnicate\n"
    with pytest.raises(ScenarioParseError) as info:
        parse_scenario(text, "demo.yaml")
    assert info.value.location == "demo.yaml:9:9"
    assert "unknown operation" in str(info.value)


def test_invalid_yaml_is_located():
    with pytest.raises(ScenarioParseError) as info:
        parse_scenario("name: [unclosed\n", "bad.yaml")
    assert info.value.location.startswith("bad.yaml:")


def test_expectations_need_provenance():
    with pytest.raises(ScenarioParseError) as info:
        scenario("  - op: norm\n    params: {element: t}\n    expect: {norm: '-t^2'}\n")
    assert info.value.location == "demo.yaml:9:5"


def test_unknown_keys_are_rejected():
    with pytest.raises(ScenarioParseError):
        parse_scenario(HEADER + "colour: blue\n", "demo.yaml")


def test_operations_that_need_an_action():
    with pytest.raises(ScenarioParseError):
        parse_scenario("name: x\ntasks:\n  - op: norm\n", "x.yaml")


def test_pass_fail_and_gated_outcomes():
    sc = scenario(
        "  - op: norm\n    params: {element: t}\n    expect: {norm: '-t^2'}\n    provenance: derived\n"
        "  - op: norm\n    params: {element: t}\n    expect: {norm: 't^2'}\n    provenance: derived\n"
        "  - op: smooth_invariants\n"
        "  - op: extraction\n    params: {subgroup: [e, g], element: t}\n"
    )
    rep = run_scenario(sc)
    outcomes = [r.outcome for r in rep.tasks]
    assert outcomes[0] == "pass"
    assert outcomes[1] == "fail"
    assert rep.outcome == "fail"


def test_expected_gate_counts_as_pass():
    sc = parse_scenario(
        """\
name: gate
base: {kind: prime_field, p: 3}
algebra: {variables: [t], truncation: 6}
action: {kind: constant, group: {cyclic: 6}, images: {g: {t: "-t"}}}
tasks:
  - op: extraction
    params: {subgroup: [e, "g^2", "g^4"], element: t}
    expect_outcome: gated
  - op: extraction
    params: {subgroup: [e, "g^2", "g^4"], element: t}
""",
        "gate.yaml",
    )
    rep = run_scenario(sc)
    assert [r.outcome for r in rep.tasks] == ["gated", "gated"]
    assert rep.outcome == "gated"


def test_missing_parameter_is_a_failure():
    rep = run_scenario(scenario("  - op: norm\n"))
    assert rep.tasks[0].outcome == "fail"
    assert "missing parameter" in rep.tasks[0].message


def test_truncation_override():
    sc = scenario("  - op: validate\n")
    rep = run_scenario(sc, truncation=4)
    assert rep.describe(False)["tasks"][0]["artifacts"]["algebra_dim"] == 4


def test_report_schema_and_timing_switch():
    rep = run_scenario(scenario("  - op: validate\n"))
    with_t = rep.describe(True)
    without = rep.describe(False)
    assert without["schema"] == 1
    assert "seconds" in with_t and "seconds" not in without


def test_corpus_is_sorted_and_tagged():
    names = [s.name for s in load_corpus()]
    assert names == sorted(names)
    assert len(names) >= 30
    appendix = load_corpus("appendix")
    assert appendix and all(s.tags == ["appendix"] for s in appendix)
    assert find_scenario("node-swap-z4").name == "node-swap-z4"


def test_every_operation_is_used_by_the_corpus():
    used = {t.op for s in load_corpus() for t in s.tasks}
    assert used == set(OPERATIONS)


def test_expected_values_always_have_provenance():
    for s in load_corpus():
        for t in s.tasks:
            if t.expect:
                assert t.provenance in ("paper", "derived", "trivial")
