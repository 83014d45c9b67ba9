"""Core model semantics: literals, state update, executions, traces, validation."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stemcheck.generate import GeneratorParams, generate_random_model
from stemcheck.model import (
    ExecutionBudgetExceeded,
    Literal,
    Task,
    and_,
    compute_trace,
    count_executions,
    enumerate_executions,
    is_consistent,
    make_model,
    seq,
    state_update,
    task,
    validate_model,
    xor,
)
from stemcheck.obligations import (
    AssumptionConflict,
    ConditionalObligation,
    ObligationKind,
    specialize_for_obligation,
)

from conftest import lit, lits


def test_literal_complement_involution():
    a = lit("a")
    assert a.complement().complement() == a
    assert a.complement() == lit("!a")
    assert str(lit("!a")) == "!a"


def test_literal_parse_accepts_negation_signs():
    assert Literal.parse("¬a") == lit("!a")
    assert Literal.parse("!!a") == lit("a")
    with pytest.raises(ValueError):
        Literal.parse("  ")


def test_state_update_table_rows():
    # state after t4 on the first row, state after t2 on the second
    assert state_update(lits("a", "c", "d"), lits("!a")) == lits("!a", "c", "d")
    assert state_update(frozenset(), lits("b", "c")) == lits("b", "c")
    assert state_update(lits("a", "b"), frozenset()) == lits("a", "b")


@given(st.sets(st.sampled_from([Literal(a, p) for a in "abcd" for p in (True, False)])))
def test_state_update_preserves_consistency(incoming):
    base = lits("a", "!b")
    incoming = frozenset(incoming)
    if not is_consistent(incoming):
        return
    assert is_consistent(state_update(base, incoming))


def test_validate_reports_inconsistent_annotation():
    tasks = {
        "start": Task("start"),
        "t": Task("t", lits("a", "!a")),
        "end": Task("end"),
    }
    report = validate_model(seq(task("start"), task("t"), task("end")), tasks, "start", "end")
    assert ("InconsistentAnnotation", "t") in report.problems


def test_validate_reports_small_composite_and_bad_refs():
    tasks = {"start": Task("start"), "t": Task("t"), "end": Task("end")}
    root = seq(task("start"), xor(task("t")), task("end"))
    report = validate_model(root, tasks, "start", "end")
    codes = {code for code, _ in report.problems}
    assert "CompositeArityBelowTwo" in codes

    root = seq(task("start"), task("ghost"), task("end"))
    report = validate_model(root, {"start": Task("start"), "end": Task("end")}, "start", "end")
    codes = {code for code, _ in report.problems}
    assert "UnresolvedTaskRef" in codes

    root = seq(task("t"), task("end"))
    report = validate_model(root, {"t": Task("t"), "end": Task("end")}, "start", "end")
    assert any(code == "MissingStartOrEnd" for code, _ in report.problems)


def test_teaching_model_is_valid(teaching_model):
    assert set(teaching_model.tasks) == {"start", "t1", "t2", "t3", "t4", "end"}


def test_single_task_execution():
    assert enumerate_executions(task("t")) == [("t",)]


def test_and_of_two_tasks_interleaves():
    assert set(enumerate_executions(and_(task("a"), task("b")))) == {("a", "b"), ("b", "a")}


def test_teaching_model_has_table_executions(teaching_model):
    exes = set(enumerate_executions(teaching_model.root))
    assert exes == {
        ("start", "t1", "t3", "t4", "end"),
        ("start", "t3", "t1", "t4", "end"),
        ("start", "t2", "t3", "t4", "end"),
        ("start", "t3", "t2", "t4", "end"),
    }


def test_execution_budget():
    block = and_(*(task(f"t{i}") for i in range(8)))
    with pytest.raises(ExecutionBudgetExceeded):
        enumerate_executions(block, limit=100)
    assert count_executions(block) == 40320


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_cardinality_laws_on_random_models(seed):
    model = generate_random_model(seed, GeneratorParams(max_tasks=6, max_depth=2))
    exes = enumerate_executions(model.root, 100_000)
    assert len(set(exes)) == len(exes), "duplicate executions"
    assert count_executions(model.root) == len(exes)
    seen = model.block_task_ids()
    for exe in exes:
        assert len(set(exe)) == len(exe), "task repeated within an execution"
        assert set(exe) <= set(seen)


def test_seq_projection_property():
    a = xor(task("a1"), task("a2"))
    b = and_(task("b1"), task("b2"))
    model_block = seq(a, b)
    a_exes = set(enumerate_executions(a))
    for exe in enumerate_executions(model_block):
        projected = tuple(t for t in exe if t in ("a1", "a2"))
        assert projected in a_exes


def test_trace_of_first_table_row(teaching_model):
    trace = compute_trace(teaching_model, ("start", "t1", "t3", "t4", "end"))
    assert trace.states == (
        frozenset(),
        lits("a"),
        lits("a", "c", "d"),
        lits("!a", "c", "d"),
        lits("!a", "c", "d"),
    )


def test_trace_of_second_table_row(teaching_model):
    trace = compute_trace(teaching_model, ("start", "t2", "t3", "t4", "end"))
    assert trace.states == (
        frozenset(),
        lits("b", "c"),
        lits("b", "c", "d"),
        lits("!a", "b", "c", "d"),
        lits("!a", "b", "c", "d"),
    )


def test_trace_of_unannotated_tasks_stays_empty():
    tasks = {name: Task(name) for name in ("start", "t", "end")}
    model = make_model(seq(task("start"), task("t"), task("end")), tasks)
    trace = compute_trace(model, ("start", "t", "end"))
    assert all(state == frozenset() for state in trace.states)


def test_specialize_adds_start_and_end_annotations(teaching_model, teaching_obligation):
    spec = specialize_for_obligation(teaching_model, teaching_obligation)
    assert spec.tasks["start"].annotation == lits("!b")
    assert spec.tasks["end"].annotation == lits("!a")
    # the input model is untouched
    assert teaching_model.tasks["start"].annotation == frozenset()


def test_specialize_is_idempotent(teaching_model, teaching_obligation):
    once = specialize_for_obligation(teaching_model, teaching_obligation)
    twice = specialize_for_obligation(once, teaching_obligation)
    assert twice.tasks["start"].annotation == once.tasks["start"].annotation
    assert twice.tasks["end"].annotation == once.tasks["end"].annotation


def test_specialize_order_independent_when_compatible(teaching_model):
    ob1 = ConditionalObligation(ObligationKind.ACHIEVEMENT, lit("b"), lit("c"), lit("!a"))
    ob2 = ConditionalObligation(ObligationKind.MAINTENANCE, lit("d"), lit("a"), lit("c"))
    one = specialize_for_obligation(specialize_for_obligation(teaching_model, ob1), ob2)
    other = specialize_for_obligation(specialize_for_obligation(teaching_model, ob2), ob1)
    assert one.tasks["start"].annotation == other.tasks["start"].annotation
    assert one.tasks["end"].annotation == other.tasks["end"].annotation


def test_specialize_conflict_raises():
    tasks = {
        "start": Task("start", lits("b")),
        "t": Task("t", lits("c")),
        "end": Task("end"),
    }
    model = make_model(seq(task("start"), task("t"), task("end")), tasks)
    ob = ConditionalObligation(ObligationKind.ACHIEVEMENT, lit("b"), lit("c"), lit("!a"))
    with pytest.raises(AssumptionConflict):
        specialize_for_obligation(model, ob)
