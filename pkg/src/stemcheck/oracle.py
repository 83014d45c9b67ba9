"""Brute-force semantics: interval compliance on traces and direct constraint matching.

This module is the ground truth the tree engine is tested against. It
enumerates executions, replays traces, and decides compliance by scanning
in-force intervals, exactly as the definitions read:

* every position whose task annotates the trigger opens an interval;
* the interval closes at the first position (possibly the same one) whose
  state satisfies the deadline; with specialized models the end task
  guarantees closure;
* achievement complies when the requirement holds at some state of the
  interval, maintenance when it holds at every state, both ends inclusive;
* a trace complies when all its intervals do, for every obligation.

trace_matches_delta implements the failure-pattern matchers. Quantifier
scoping follows the committed reading that keeps pattern matches equivalent
to trace violations: exclusion windows run to the trigger, clauses about the
deadline or requirement "already holding" are decided on trace states, and
the window for the late-requirement-drop pattern excludes its witness task.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .constraints import DeltaFamily, FailureDeltaConstraint
from .model import (
    DEFAULT_EXECUTION_BUDGET,
    Execution,
    Literal,
    ProcessModel,
    Trace,
    compute_trace,
    enumerate_executions,
)
from .obligations import ConditionalObligation, ObligationKind, specialize_for_obligation


@dataclass(frozen=True)
class InForceInterval:
    trigger_index: int
    close_index: int
    satisfied: bool


class ComplianceLevel(Enum):
    FULL = "full"
    PARTIAL = "partial"
    NON_COMPLIANT = "non-compliant"


@dataclass
class ComplianceVerdict:
    level: ComplianceLevel
    compliant_witness: Execution | None = None
    violating_witness: tuple[ConditionalObligation, Execution] | None = None


def in_force_intervals(trace: Trace, model: ProcessModel, ob: ConditionalObligation) -> list[InForceInterval]:
    """All in-force intervals of the obligation over the trace.

    Callers are expected to pass traces of a specialized model; an interval
    that never meets the deadline closes at the last position.
    """
    steps = trace.steps
    n = len(steps)
    last = n - 1
    intervals = []
    for i, (tid, _state) in enumerate(steps):
        # trigger detection is on the task annotation, not the state
        if ob.trigger not in model.annotation(tid):
            continue
        close = last
        for j in range(i, n):
            if ob.deadline in steps[j][1]:
                close = j
                break
        window = [steps[j][1] for j in range(i, close + 1)]
        if ob.kind is ObligationKind.ACHIEVEMENT:
            ok = any(ob.requirement in s for s in window)
        else:
            ok = all(ob.requirement in s for s in window)
        intervals.append(InForceInterval(i, close, ok))
    return intervals


def trace_complies(trace: Trace, model: ProcessModel, ob: ConditionalObligation) -> tuple[bool, list[InForceInterval]]:
    """Whether a trace complies with one obligation, plus the interval detail."""
    intervals = in_force_intervals(trace, model, ob)
    violated = [iv for iv in intervals if not iv.satisfied]
    return (not violated, violated)


def classify_process_compliance(
    model: ProcessModel,
    obligations: list[ConditionalObligation],
    limit: int = DEFAULT_EXECUTION_BUDGET,
) -> ComplianceVerdict:
    """Exhaustive Full/Partial/NonCompliant classification.

    Each obligation is checked over its own specialized model; executions are
    shared task-id sequences, so per-execution results combine across
    obligations.
    """
    executions = enumerate_executions(model.root, limit)
    specialized = [specialize_for_obligation(model, ob) for ob in obligations]

    all_ok = True
    some_ok = False
    compliant_witness = None
    violating_witness = None
    for exe in executions:
        exe_ok = True
        for ob, spec in zip(obligations, specialized):
            ok, _ = trace_complies(compute_trace(spec, exe), spec, ob)
            if not ok:
                exe_ok = False
                if violating_witness is None:
                    violating_witness = (ob, exe)
        if exe_ok:
            some_ok = True
            if compliant_witness is None:
                compliant_witness = exe
        else:
            all_ok = False
    if all_ok:
        level = ComplianceLevel.FULL
    elif some_ok:
        level = ComplianceLevel.PARTIAL
    else:
        level = ComplianceLevel.NON_COMPLIANT
    return ComplianceVerdict(level, compliant_witness, violating_witness)


def trace_matches_delta(exe: Execution, model: ProcessModel, c: FailureDeltaConstraint) -> bool:
    """Direct pattern match of one failure constraint on one execution.

    The execution must come from a model already specialized for the source
    obligation; states are replayed internally for the state-level clauses.
    """
    trace = compute_trace(model, exe)
    anns = [model.annotation(tid) for tid in exe]
    states = list(trace.states)
    n = len(exe)
    r, t, d = c.requirement, c.trigger, c.deadline
    not_r, not_d = r.complement(), d.complement()

    ann_pos = lambda lit: [i for i in range(n) if lit in anns[i]]
    triggers = ann_pos(t)
    if not triggers:
        return False

    def no_task(lit: Literal, lo: int, hi: int) -> bool:
        """No task annotating lit in positions lo..hi inclusive."""
        return not any(lit in anns[i] for i in range(max(lo, 0), min(hi, n - 1) + 1))

    fam = c.family

    if fam is DeltaFamily.AD1S:
        # some !r at-or-before the trigger and some d at-or-after it, with no
        # r task anywhere between the two
        for p in triggers:
            for w in ann_pos(not_r):
                if w > p:
                    continue
                for v in ann_pos(d):
                    if v >= p and no_task(r, w, v):
                        return True
        return False

    if fam is DeltaFamily.AD1:
        # AD1S restricted to triggers where the deadline does not already hold
        for p in triggers:
            if d in states[p]:
                continue
            for w in ann_pos(not_r):
                if w > p:
                    continue
                for v in ann_pos(d):
                    if v >= p and no_task(r, w, v):
                        return True
        return False

    if fam is DeltaFamily.AD2:
        # deadline already holds at the trigger state while the requirement
        # does not, the latter witnessed by an unrevoked !r task
        for p in triggers:
            if d not in states[p]:
                continue
            if any(w <= p and no_task(r, w, p) for w in ann_pos(not_r)):
                return True
        return False

    if fam is DeltaFamily.AD2_1:
        # !r then d, both at-or-before the trigger; no r from !r onward and no
        # !d from d onward (both windows run to the trigger)
        for p in triggers:
            for w in ann_pos(not_r):
                if w > p or not no_task(r, w, p):
                    continue
                for v in ann_pos(d):
                    if w <= v <= p and no_task(not_d, v, p):
                        return True
        return False

    if fam is DeltaFamily.AD2_2:
        # d at-or-before !r, both at-or-before the trigger; same windows
        # (one task may serve as both, same as in the sibling decomposition)
        for p in triggers:
            for w in ann_pos(not_r):
                if w > p or not no_task(r, w, p):
                    continue
                for v in ann_pos(d):
                    if v <= w and no_task(not_d, v, p):
                        return True
        return False

    if fam is DeltaFamily.MD1:
        # an unrevoked !r task at-or-before the trigger
        return any(
            w <= p and no_task(r, w, p)
            for p in triggers
            for w in ann_pos(not_r)
        )

    if fam is DeltaFamily.MD2:
        # requirement holds at the trigger but is dropped by a !r task before
        # the interval can close
        for p in triggers:
            if r not in states[p] or d in states[p]:
                continue
            if any(u > p and no_task(d, p + 1, u - 1) for u in ann_pos(not_r)):
                return True
        return False

    if fam is DeltaFamily.MD2S:
        # as MD2 without the requirement-holds clause; the witness task may
        # itself carry the deadline
        for p in triggers:
            if d in states[p]:
                continue
            if any(u >= p and no_task(d, p + 1, u - 1) for u in ann_pos(not_r)):
                return True
        return False

    raise ValueError(f"unmatchable family {fam}")
