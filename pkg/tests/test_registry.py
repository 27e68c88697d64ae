import pytest

from chowcalc import registry
from chowcalc.report import emit_report
from chowcalc.script import parse_script

EXPECTED_IDS = [
    "A15-L2",
    "A18-L3",
    "A18-L5",
    "A18-L6",
    "A20-L1",
    "A20-L2",
    "A23-L1",
    "A23-L1-SL1",
    "A23-L1-SL2",
    "A23-L2-SL1",
    "A23-L2-SL4",
    "A23-L2-SL5",
    "A23-L3",
    "A23-L4",
]


def test_registry_is_complete():
    assert [rec.id for rec in registry.all_records()] == EXPECTED_IDS


def test_unknown_id_raises():
    with pytest.raises(KeyError):
        registry.get("A99-L9")


@pytest.mark.parametrize("record_id", EXPECTED_IDS)
def test_script_parses(record_id):
    parse_script(registry.get(record_id).script)


@pytest.mark.parametrize("record_id", EXPECTED_IDS)
def test_scenario_passes(record_id):
    rep = registry.run(record_id)
    assert rep.ok, emit_report(rep, "human").decode()
    assert rep.counts["passed"] >= 1


def test_expansion_matrix_reported():
    rep = registry.run("A23-L1-SL2")
    assert rep.values["matrix"] == "((20 -2) (5 1))"


def test_every_sourced_assertion_names_its_record():
    for rec in registry.all_records():
        rep = registry.run(rec.id)
        tags = {r.tag for r in rep.results if r.tag.startswith("lemma:")}
        assert f"lemma:{rec.id}" in tags


def test_run_all_merges():
    rep = registry.run_all()
    assert rep.ok
    assert rep.counts["passed"] >= 60
