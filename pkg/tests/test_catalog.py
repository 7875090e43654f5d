"""The table catalog: coverage, statuses, and reproduction runs."""

import pytest

from oaforge.catalog import catalog, run_entries


def test_every_row_appears_exactly_once():
    counts = {
        "table1": 44, "table2": 37, "table3": 24, "table4": 21,
        "table5": 5, "table6": 15, "theorems": 13,
    }
    for query, expected in counts.items():
        entries = catalog(query)
        assert len(entries) == expected, query
        assert len({e.source for e in entries}) == expected  # unique ids
    assert len(catalog("all")) == sum(counts.values())


def test_statuses_are_legal():
    legal = {"synthesizable", "fixture-required", "unreconciled", "out-of-scope"}
    for entry in catalog("all"):
        assert entry.status in legal, entry.source


def test_table1_is_mostly_fixture_required():
    entries = catalog("table1")
    assert all(e.status == "fixture-required" for e in entries)


def test_table5_all_synthesizable():
    entries = catalog("table5")
    assert len(entries) == 5
    assert all(e.status == "synthesizable" for e in entries)
    assert all(e.command for e in entries)


def test_transcribed_table2_rows_are_synthesizable():
    entries = catalog("table2")
    synth = [e for e in entries if e.status == "synthesizable"]
    assert len(synth) == 8
    assert all(e.command and "expand" in e.command for e in synth)


def test_unreconciled_rows_are_marked():
    t4 = {e.source: e for e in catalog("table4")}
    odd = [e for e in t4.values() if "1153" in e.result]
    assert len(odd) == 1 and odd[0].status == "unreconciled"
    mismatch = [e for e in t4.values() if "1056" in e.result]
    assert len(mismatch) == 1 and mismatch[0].status == "unreconciled"


def test_synthesizable_entries_have_runners():
    for entry in catalog("all"):
        if entry.status == "synthesizable":
            assert entry.runner is not None, entry.source
            assert entry.command is not None, entry.source


def test_run_outcomes_table3():
    outcomes = dict()
    for entry, outcome in run_entries(catalog("table3")):
        outcomes[entry.source] = outcome
    assert outcomes["table3 row 1"].startswith("LOA(48,12^1,2^8,2)")
    assert outcomes["table3 row 4"].startswith("LOA(64,16^1,2^8,2)")
    assert outcomes["table3 row 23"].startswith("LOA(80,5^1,2^9,3)")
    assert outcomes["table3 row 10"] == "unreconciled"
    assert outcomes["table3 row 2"] == "needs-fixture"


def test_run_outcomes_table4():
    outcomes = {e.source: o for e, o in run_entries(catalog("table4"))}
    assert outcomes["table4 row 1"].startswith("OA(352,")
    assert outcomes["table4 row 16"].startswith("OA(896,")
    assert outcomes["table4 row 18"] == "unreconciled"


def test_run_respects_budget():
    entries = [e for e in catalog("table2") if e.status == "synthesizable"]
    results = run_entries(entries, budget=100)
    assert all(outcome == "skipped(budget)" for _, outcome in results)


def test_run_reports_chai2_verdict():
    entries = [e for e in catalog("table5")]
    outcomes = {e.source: o for e, o in run_entries(entries)}
    assert outcomes["table5 row 4"].startswith("failed:")
    assert "(13, 17)" in outcomes["table5 row 4"]
    assert outcomes["table5 row 1"].endswith("verified")


def test_theorem_entries_runnable():
    entries = [e for e in catalog("theorems")
               if e.source in ("theorem v1+q4-3", "theorem tt-1n2-3",
                               "theorem qtp43")]
    for entry, outcome in run_entries(entries):
        assert outcome.endswith("verified"), (entry.source, outcome)


def test_unknown_query():
    with pytest.raises(ValueError):
        catalog("table9")
