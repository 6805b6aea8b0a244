import itertools

import pytest
from hypothesis import given

from cnotperm.errors import BudgetExceededError, TableIntegrityError
from cnotperm.gf2 import Circuit, CnotGate, circuit_matrix, parse_circuit
from cnotperm.analysis import (
    check_phi_properties,
    impossibility_report,
    paper_verification_suite,
    phi_trace,
)
from cnotperm.search import DistanceTable, build_distance_table, enumerate_minimal_circuits, save_table, table_path

from test_gf2 import circuits


def test_phi_trace_examples():
    assert phi_trace(parse_circuit("AEFDCB", 3), (1, 1, 1)).weights == (3, 2, 2, 3, 2, 2, 3)
    assert phi_trace(Circuit(3), "111").weights == (3,)
    for text in ("1>2 2>1 1>2", "2>1 1>2 2>1"):
        tr = phi_trace(parse_circuit(text, 2), "11")
        assert tr.weights[0] == 2 and tr.weights[-1] == 2
        assert set(tr.steps()) <= {-1, 0, 1}


@given(circuits(max_len=20))
def test_phi_steps_and_range_on_random_circuits(c):
    for x in itertools.product((0, 1), repeat=c.n):
        tr = phi_trace(c, x)
        assert len(tr.weights) == len(c) + 1
        assert all(abs(s) <= 1 for s in tr.steps())
        assert all(0 <= w <= c.n for w in tr.weights)


@given(circuits(max_len=20))
def test_all_ones_never_reaches_zero(c):
    assert min(phi_trace(c, (1,) * c.n).weights) >= 1


def test_phi_properties_on_minimal_circuits(tables):
    report = check_phi_properties(enumerate_minimal_circuits("231", tables[3]), (1, 1, 1))
    assert report.checked == 90
    assert report.ok
    swaps = check_phi_properties(enumerate_minimal_circuits("21", tables[2]), "11")
    assert swaps.checked == 2 and swaps.ok


def test_phi_properties_on_padded_circuit(tables):
    base = enumerate_minimal_circuits("231", tables[3])[0]
    pad = Circuit(3, (CnotGate(1, 2), CnotGate(1, 2)))
    for padded in (base + pad, pad + base):
        report = check_phi_properties([padded], "111")
        # steps and range always hold; the penultimate weight is only reported
        assert report.step_bound_holds and report.range_holds
        assert report.checked == 1
    # trailing pair: weight before the last gate is that of A applied to 111
    assert check_phi_properties([base + pad], "111").ok
    # leading pair ends with the minimal circuit's own tail
    assert check_phi_properties([pad + base], "111").ok


@given(circuits(max_len=14))
def test_penultimate_weight_for_any_permutation_realization(c):
    # all-ones returns to all-ones, so the last gate's control is 1 and it
    # must have flipped its target from 0: weight n-1 just before it
    if c.gates and circuit_matrix(c).is_permutation():
        assert phi_trace(c, (1,) * c.n).weights[-2] == c.n - 1


def test_phi_penultimate_violation_is_reported():
    report = check_phi_properties([parse_circuit("1>2", 2)], "11")
    assert len(report.violations) == 1
    assert not report.penultimate_holds
    assert report.step_bound_holds and report.range_holds


def test_impossibility_examples():
    r = impossibility_report("231", 6)
    assert r.counts == [0, 0, 0, 0, 0, 0, 90]
    assert r.smallest_length == 6
    r = impossibility_report("21", 3)
    assert r.counts == [0, 0, 0, 2]
    assert r.smallest_length == 3
    r = impossibility_report("123", 2)
    # empty word, no single gate, and g g for each of the 6 gates
    assert r.counts == [1, 0, 6]
    assert r.smallest_length == 0
    with pytest.raises(BudgetExceededError):
        impossibility_report("231", 6, budget=100)


def test_suite_skip_n5():
    report = paper_verification_suite(skip_n5=True)
    assert report.ok
    statuses = {c.id: c.status for c in report.claims}
    assert statuses["five-wire-cost"] == "skipped"
    assert statuses["four-wire-cost"] == "pass"
    assert all(s in ("pass", "skipped") for s in statuses.values())


def test_suite_full():
    report = paper_verification_suite()
    assert report.ok
    assert all(c.status == "pass" for c in report.claims)
    assert '"ok": true' in report.to_json()


def test_suite_rejects_corrupt_cache(tmp_path):
    t = build_distance_table(3)
    bad = t.dist.copy()
    bad[0] = 2  # the zero matrix is singular and must stay unreached
    save_table(DistanceTable(3, bad), table_path(tmp_path, 3))
    with pytest.raises(TableIntegrityError):
        paper_verification_suite(skip_n5=True, cache_dir=tmp_path)
