"""Stem evaluation: polynomial full-compliance checking over the process tree.

For each obligation the model is specialized, translated to its failure
constraints, and every trigger leaf is examined: leaves whose annotation
falsifies the constraint outright are dropped, the tree is pruned along the
stem, and the stem is walked leaf to root carrying a classification set.

At a SEQ overnode the off-stem siblings fold into the stem label through the
one-sided guard patterns (the sequence families use only the side their
pattern lives on); at an AND overnode all siblings fold into one bag first
and then combine with the stem label. The walk stops as soon as the family's
fulfilment label appears: that certifies an execution violating the source
obligation, so the model cannot be fully compliant.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .classification import (
    AggregationCounter,
    ClassSet,
    aggregate_sets,
    classify_subtree,
    prune_to_maximal,
)
from .constraints import (
    DeltaFamily,
    FailureDeltaConstraint,
    OvernodeContext,
    PatternKind,
    parametrise,
    translate_obligation,
)
from .model import BlockKind, Execution, ProcessModel
from .obligations import ConditionalObligation, specialize_for_obligation
from .oracle import trace_matches_delta
from .tables import FULFILMENT, GSP_AND, IOP_AND, IOP_LEFT, IOP_RIGHT, igp_combine
from .tree import ProcessTree, Stem, build_tree, check_leaf_fail, prune_stem, trigger_leaves


@dataclass
class StemEvaluation:
    """Record of one (constraint, trigger leaf) stem walk."""

    constraint: FailureDeltaConstraint
    trigger_leaf: str
    outcome: str  # satisfied | unsatisfied | leaf-fail
    trail: list[tuple[str, frozenset[str]]] = field(default_factory=list)
    aggregations: int = 0
    max_set_size: int = 1
    node_count: int = 0

    @property
    def root_labels(self) -> frozenset[str]:
        return self.trail[-1][1] if self.trail else frozenset()


@dataclass
class ConstraintOutcome:
    constraint: FailureDeltaConstraint
    satisfied: bool
    witness_leaf: str | None
    evaluations: list[StemEvaluation]
    witness_execution: Execution | None = None


@dataclass
class ObligationOutcome:
    obligation: ConditionalObligation
    constraints: list[ConstraintOutcome]

    @property
    def violated(self) -> bool:
        return any(c.satisfied for c in self.constraints)


@dataclass
class EngineReport:
    obligations: list[ObligationOutcome]

    @property
    def fully_compliant(self) -> bool:
        return not any(ob.violated for ob in self.obligations)

    @property
    def verdict(self) -> str:
        return "fully-compliant" if self.fully_compliant else "not-fully-compliant"

    def total_aggregations(self) -> int:
        return sum(
            ev.aggregations
            for ob in self.obligations
            for c in ob.constraints
            for ev in c.evaluations
        )


def _seed(c: FailureDeltaConstraint, ann, pattern) -> ClassSet | None:
    """Trigger-leaf seeding; None marks a leaf the constraint cannot fire from.

    The straddle pattern seeds both sides by membership (pattern elements may
    coincide with the trigger task). The left-sequence pattern additionally
    dies when the blocking slots sit on the trigger itself, and an endpoint
    that cannot be paired seeds neutral.
    """
    kind = pattern.kind
    if kind is PatternKind.IOP:
        x = "+" if pattern.x in ann else "0"
        z = "+" if pattern.z in ann else "0"
        return ClassSet(kind, frozenset({f"x{x}tz{z}"}))
    if kind is PatternKind.GSP:
        if (pattern.y is not None and pattern.y in ann) or (pattern.k is not None and pattern.k in ann):
            return None
        if pattern.x in ann and pattern.z in ann:
            return ClassSet(kind, frozenset({"x+z+"}))
        if pattern.z in ann:
            return ClassSet(kind, frozenset({"x0z+"}))
        # an unpaired x on the trigger cannot meet a z at or before it
        return ClassSet(kind, frozenset({"x0z0"}))
    if kind is PatternKind.LSP:
        return ClassSet(kind, frozenset({"x+" if pattern.x in ann else "x0"}))
    raise ValueError(f"{kind} cannot classify a stem")


def _combine_stem(table, stem_set: ClassSet, fold: ClassSet, counter: AggregationCounter) -> ClassSet:
    out: set[str] = set()
    for s in stem_set.labels:
        for u in fold.labels:
            out.update(table[(s, u)])
            counter.cells += 1
    result = prune_to_maximal(stem_set.family, out)
    counter.note_set(len(result.labels))
    return result


def _combine_igp(side: str, stem_set: ClassSet, fold: ClassSet, counter: AggregationCounter) -> ClassSet:
    out: set[str] = set()
    for s in stem_set.labels:
        for u in fold.labels:
            out.update(igp_combine(s, u, side))
            counter.cells += 1
    result = prune_to_maximal(stem_set.family, out)
    counter.note_set(len(result.labels))
    return result


def evaluate(
    pruned: ProcessTree,
    stem: Stem,
    c: FailureDeltaConstraint,
    *,
    early_exit: bool = True,
) -> tuple[bool, StemEvaluation]:
    """Walk one stem bottom-up; True certifies a violating execution."""
    record = StemEvaluation(c, stem.leaf.task_id, "unsatisfied", node_count=pruned.node_count())
    counter = AggregationCounter()
    main = parametrise(c, OvernodeContext.OVERNODE_MAIN)
    fulfil = FULFILMENT[main.kind]
    gsp_family = main.kind is PatternKind.GSP

    def finish(found: bool) -> tuple[bool, StemEvaluation]:
        record.outcome = "satisfied" if found else "unsatisfied"
        record.aggregations = counter.cells
        record.max_set_size = counter.max_set
        return found, record

    seed = _seed(c, pruned.model.annotation(stem.leaf.task_id), main)
    if seed is None:
        return finish(False)
    current = seed
    record.trail.append((f"leaf:{stem.leaf.task_id}", current.labels))
    if early_exit and fulfil in current:
        return finish(True)

    # overnodes from the leaf's parent up to the root
    for depth in range(len(stem.path) - 2, -1, -1):
        node = stem.path[depth]
        idx = stem.child_indices[depth]
        if node.kind is BlockKind.SEQ:
            current = _seq_overnode(pruned, node, idx, current, c, main, counter)
        elif node.kind is BlockKind.AND:
            current = _and_overnode(pruned, node, idx, current, c, main, counter)
        else:
            raise AssertionError("XOR overnodes are removed by stem pruning")
        record.trail.append((f"{node.kind.value}@depth{depth}", current.labels))
        if early_exit and fulfil in current:
            return finish(True)

    return finish(fulfil in current)


def _seq_overnode(tree, node, idx, current, c, main, counter):
    left = node.children[:idx]
    right = node.children[idx + 1:]
    kind = main.kind

    if kind is PatternKind.IOP:
        if left:
            p = parametrise(c, OvernodeContext.SEQ_LEFT)
            fold = _fold_side(tree, left, p, BlockKind.SEQ, counter)
            current = _combine_stem(IOP_LEFT, current, fold, counter)
        if right:
            p = parametrise(c, OvernodeContext.SEQ_RIGHT)
            fold = _fold_side(tree, right, p, BlockKind.SEQ, counter)
            current = _combine_stem(IOP_RIGHT, current, fold, counter)
        return current

    if kind is PatternKind.GSP:
        # the whole pattern lies left of the trigger; right siblings are inert
        if left:
            p = parametrise(c, OvernodeContext.SEQ_LEFT)
            fold = _fold_side(tree, left, p, BlockKind.SEQ, counter)
            return aggregate_sets(PatternKind.GSP, BlockKind.SEQ, fold, current, counter)
        return current

    # LSP: only the material before the trigger matters
    if left:
        p = parametrise(c, OvernodeContext.SEQ_LEFT)
        fold = _fold_side(tree, left, p, BlockKind.SEQ, counter)
        return aggregate_sets(PatternKind.LSP, BlockKind.SEQ, fold, current, counter)
    return current


def _and_overnode(tree, node, idx, current, c, main, counter):
    siblings = node.children[:idx] + node.children[idx + 1:]
    kind = main.kind
    p = parametrise(c, OvernodeContext.AND_UNDERNODE)
    fold = _fold_side(tree, siblings, p, BlockKind.AND, counter)

    if kind is PatternKind.IOP:
        return _combine_stem(IOP_AND, current, fold, counter)
    if kind is PatternKind.GSP:
        return _combine_stem(GSP_AND, current, fold, counter)
    return _combine_igp("x", current, fold, counter)


def _fold_side(tree, nodes, pattern, block_kind, counter) -> ClassSet:
    parts = [classify_subtree(pattern, tree, n, counter) for n in nodes]
    acc = parts[0]
    for nxt in parts[1:]:
        acc = aggregate_sets(pattern.kind, block_kind, acc, nxt, counter)
    return acc


def stem_evaluation(
    specialized: ProcessModel,
    c: FailureDeltaConstraint,
    *,
    early_exit: bool = True,
) -> tuple[bool, list[StemEvaluation]]:
    """Try every trigger leaf of an already-specialized model against one constraint."""
    tree = build_tree(specialized)
    eval_tree = tree
    if c.family is DeltaFamily.MD2S:
        injected = _with_open_deadline_start(specialized, c)
        if injected is not specialized:
            # trigger leaves and the leaf fast-fail stay on the uninjected
            # annotations; only the walk sees the synthetic start literal
            eval_tree = build_tree(injected)
    eval_leaves = {leaf.task_id: leaf for leaf in eval_tree.leaves()}
    evaluations: list[StemEvaluation] = []
    found = False
    for leaf in trigger_leaves(tree, c):
        if check_leaf_fail(tree, leaf, c):
            evaluations.append(StemEvaluation(c, leaf.task_id, "leaf-fail", node_count=tree.node_count()))
            continue
        pruned, stem = prune_stem(eval_tree, eval_leaves[leaf.task_id])
        ok, record = evaluate(pruned, stem, c, early_exit=early_exit)
        evaluations.append(record)
        if ok:
            found = True
            if early_exit:
                break
    return found, evaluations


def _with_open_deadline_start(model: ProcessModel, c: FailureDeltaConstraint) -> ProcessModel:
    """Annotate the start task with the deadline's complement when consistent.

    The initial state satisfies no deadline; making that observable as a task
    annotation lets the straddle pattern treat "no deadline yet" and "deadline
    revoked" uniformly, the same move the specialization makes for the unmet
    requirement. Skipped when the start task already annotates the deadline.
    """
    from dataclasses import replace

    from .model import is_consistent

    start = model.tasks[model.start_id]
    new_ann = start.annotation | {c.deadline.complement()}
    if not is_consistent(new_ann):
        return model
    tasks = dict(model.tasks)
    tasks[start.id] = replace(start, annotation=new_ann)
    return ProcessModel(root=model.root, tasks=tasks, start_id=model.start_id, end_id=model.end_id)


def check_full_compliance(
    model: ProcessModel,
    obligations: list[ConditionalObligation],
    *,
    early_exit: bool = True,
) -> EngineReport:
    """Engine verdict over a whole framework of obligations."""
    outcomes = []
    for ob in obligations:
        specialized = specialize_for_obligation(model, ob)
        constraints = []
        for c in translate_obligation(ob):
            ok, evaluations = stem_evaluation(specialized, c, early_exit=early_exit)
            witness = next((ev.trigger_leaf for ev in evaluations if ev.outcome == "satisfied"), None)
            constraints.append(ConstraintOutcome(c, ok, witness, evaluations))
        outcomes.append(ObligationOutcome(ob, constraints))
    return EngineReport(outcomes)


def attach_witnesses(report: EngineReport, model: ProcessModel, limit: int) -> None:
    """Fill in violating executions from the brute-force matcher, budget permitting."""
    from .model import ExecutionBudgetExceeded, enumerate_executions

    try:
        executions = enumerate_executions(model.root, limit)
    except ExecutionBudgetExceeded:
        return
    for ob_outcome in report.obligations:
        specialized = specialize_for_obligation(model, ob_outcome.obligation)
        for c_outcome in ob_outcome.constraints:
            if not c_outcome.satisfied:
                continue
            c_outcome.witness_execution = next(
                (exe for exe in executions if trace_matches_delta(exe, specialized, c_outcome.constraint)),
                None,
            )
