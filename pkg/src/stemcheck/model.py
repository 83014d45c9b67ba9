"""Structured process models: literals, annotated tasks, nested blocks, executions, traces.

A model is a properly nested composition of SEQ/XOR/AND blocks over annotated
tasks, wrapped by a start and an end task inside the outermost SEQ. Executions
are the duplicate-free task sequences admitted by the block semantics (XOR
picks one branch, AND interleaves); a trace pairs an execution with the literal
states obtained by folding the update operator over task annotations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum


class ModelError(Exception):
    """Base class for model construction and evaluation errors."""


class ValidationError(ModelError):
    """Raised when a model violates a structural invariant."""


class ExecutionBudgetExceeded(ModelError):
    """Raised when a block admits more executions than the caller allows."""

    def __init__(self, count: int, limit: int):
        super().__init__(f"block admits at least {count} executions, budget is {limit}")
        self.count = count
        self.limit = limit


class UnknownTask(ModelError):
    """Raised when an execution references a task id absent from the model."""


DEFAULT_EXECUTION_BUDGET = 1_000_000


@dataclass(frozen=True, order=True)
class Literal:
    """A signed propositional atom."""

    atom: str
    positive: bool = True

    def complement(self) -> Literal:
        return Literal(self.atom, not self.positive)

    def __str__(self) -> str:
        return self.atom if self.positive else "!" + self.atom

    @staticmethod
    def parse(text: str) -> Literal:
        """Parse a signed literal; "!" or "¬" prefix marks a negative one."""
        text = text.strip()
        positive = True
        while text and text[0] in "!¬":
            positive = not positive
            text = text[1:].strip()
        if not text:
            raise ValueError("empty literal")
        return Literal(text, positive)


def is_consistent(literals: frozenset[Literal] | set[Literal]) -> bool:
    """A literal set is consistent when it never contains both l and its complement."""
    return not any(lit.complement() in literals for lit in literals)


def state_update(state: frozenset[Literal], annotation: frozenset[Literal]) -> frozenset[Literal]:
    """Update a process state with a task annotation.

    The annotation's literals enter the state; literals complementary to an
    incoming one are retired. The result of updating a consistent state with a
    consistent annotation is consistent.
    """
    retired = {lit.complement() for lit in annotation}
    return (state - retired) | annotation


@dataclass(frozen=True)
class Task:
    id: str
    annotation: frozenset[Literal] = frozenset()


class BlockKind(Enum):
    SEQ = "seq"
    XOR = "xor"
    AND = "and"
    TASK = "task"


@dataclass(frozen=True)
class TaskRef:
    task_id: str

    @property
    def kind(self) -> BlockKind:
        return BlockKind.TASK


@dataclass(frozen=True)
class Composite:
    kind: BlockKind
    children: tuple["Block", ...]


Block = TaskRef | Composite

Execution = tuple[str, ...]


def seq(*children: Block) -> Composite:
    return Composite(BlockKind.SEQ, tuple(children))


def xor(*children: Block) -> Composite:
    return Composite(BlockKind.XOR, tuple(children))


def and_(*children: Block) -> Composite:
    return Composite(BlockKind.AND, tuple(children))


def task(task_id: str) -> TaskRef:
    return TaskRef(task_id)


@dataclass(frozen=True)
class ProcessModel:
    """A validated structured process model.

    The root is a SEQ block whose first element is the start task and whose
    last element is the end task. Every task id resolves and is referenced
    exactly once.
    """

    root: Composite
    tasks: dict[str, Task]
    start_id: str
    end_id: str

    def annotation(self, task_id: str) -> frozenset[Literal]:
        try:
            return self.tasks[task_id].annotation
        except KeyError:
            raise UnknownTask(task_id) from None

    def block_task_ids(self, block: Block | None = None) -> list[str]:
        """Task ids in the subtree of ``block`` (default: whole model), document order."""
        block = block if block is not None else self.root
        out: list[str] = []

        def walk(b: Block) -> None:
            if isinstance(b, TaskRef):
                out.append(b.task_id)
            else:
                for child in b.children:
                    walk(child)

        walk(block)
        return out


@dataclass
class ValidationReport:
    """Outcome of validating a candidate model; empty problem list means valid."""

    problems: list[tuple[str, str]] = field(default_factory=list)

    def add(self, code: str, where: str) -> None:
        self.problems.append((code, where))

    @property
    def ok(self) -> bool:
        return not self.problems


def validate_model(root: Composite, tasks: dict[str, Task], start_id: str, end_id: str) -> ValidationReport:
    """Check every structural invariant of a candidate model.

    Reported problem codes: DuplicateTaskId, InconsistentAnnotation,
    CompositeArityBelowTwo, MissingStartOrEnd, UnresolvedTaskRef,
    UnreferencedTask, TaskReferencedTwice, RootNotSeq.
    """
    report = ValidationReport()

    for tid, t in tasks.items():
        if t.id != tid:
            report.add("DuplicateTaskId", f"tasks[{tid}] has id {t.id}")
        if not is_consistent(t.annotation):
            report.add("InconsistentAnnotation", tid)

    seen: list[str] = []

    def walk(b: Block, path: str) -> None:
        if isinstance(b, TaskRef):
            if b.task_id not in tasks:
                report.add("UnresolvedTaskRef", f"{path}:{b.task_id}")
            seen.append(b.task_id)
            return
        if len(b.children) < 2:
            report.add("CompositeArityBelowTwo", path)
        for i, child in enumerate(b.children):
            walk(child, f"{path}/{b.kind.value}[{i}]")

    if root.kind is not BlockKind.SEQ:
        report.add("RootNotSeq", "root")
    walk(root, "root")

    dupes = {tid for tid in seen if seen.count(tid) > 1}
    for tid in sorted(dupes):
        report.add("TaskReferencedTwice", tid)
    for tid in sorted(set(tasks) - set(seen)):
        report.add("UnreferencedTask", tid)

    if not root.children or not isinstance(root.children[0], TaskRef) or root.children[0].task_id != start_id:
        report.add("MissingStartOrEnd", f"start task {start_id} is not the first element of the root")
    if not root.children or not isinstance(root.children[-1], TaskRef) or root.children[-1].task_id != end_id:
        report.add("MissingStartOrEnd", f"end task {end_id} is not the last element of the root")

    return report


def make_model(root: Composite, tasks: dict[str, Task], start_id: str = "start", end_id: str = "end") -> ProcessModel:
    """Validate and construct a ProcessModel; raises ValidationError on any problem."""
    report = validate_model(root, tasks, start_id, end_id)
    if not report.ok:
        raise ValidationError("; ".join(f"{code} at {where}" for code, where in report.problems))
    return ProcessModel(root=root, tasks=dict(tasks), start_id=start_id, end_id=end_id)


class _CountCap(Exception):
    def __init__(self, count: int):
        self.count = count


def count_executions(block: Block, cap: int | None = None) -> int:
    """Exact execution count, computed without enumeration.

    SEQ multiplies child counts, XOR sums them, and AND sums over one-per-child
    execution choices weighted by the multinomial number of interleavings. To
    handle XOR branches of different lengths the recursion tracks a count per
    execution length.

    With ``cap`` the computation aborts as soon as any subtree count exceeds
    it, raising ExecutionBudgetExceeded; this keeps the check cheap on models
    whose counts are astronomical.
    """

    def guard(dist: dict[int, int]) -> dict[int, int]:
        if cap is not None and sum(dist.values()) > cap:
            raise _CountCap(sum(dist.values()))
        return dist

    def by_length(b: Block) -> dict[int, int]:
        if isinstance(b, TaskRef):
            return {1: 1}
        dists = [by_length(c) for c in b.children]
        if b.kind is BlockKind.SEQ:
            acc = {0: 1}
            for d in dists:
                nxt: dict[int, int] = {}
                for la, ca in acc.items():
                    for lb, cb in d.items():
                        nxt[la + lb] = nxt.get(la + lb, 0) + ca * cb
                acc = guard(nxt)
            return acc
        if b.kind is BlockKind.XOR:
            merged: dict[int, int] = {}
            for d in dists:
                for length, c in d.items():
                    merged[length] = merged.get(length, 0) + c
            return guard(merged)
        # AND: convolve with multinomial interleaving factors
        acc = {0: 1}
        for d in dists:
            nxt = {}
            for la, ca in acc.items():
                for lb, cb in d.items():
                    ways = _binomial(la + lb, lb)
                    nxt[la + lb] = nxt.get(la + lb, 0) + ca * cb * ways
            acc = guard(nxt)
        return acc

    try:
        return sum(by_length(block).values())
    except _CountCap as exc:
        raise ExecutionBudgetExceeded(exc.count, cap) from None


def _binomial(n: int, k: int) -> int:
    out = 1
    for i in range(1, k + 1):
        out = out * (n - k + i) // i
    return out


def enumerate_executions(block: Block, limit: int = DEFAULT_EXECUTION_BUDGET) -> list[Execution]:
    """All executions of a block, in a deterministic order.

    Raises ExecutionBudgetExceeded before enumerating when the exact count
    exceeds ``limit``; this keeps the check cheap on large models.
    """
    count = count_executions(block, cap=limit)
    if count > limit:
        raise ExecutionBudgetExceeded(count, limit)
    return list(_enumerate(block))


def _enumerate(block: Block):
    if isinstance(block, TaskRef):
        yield (block.task_id,)
        return
    if block.kind is BlockKind.SEQ:
        for parts in itertools.product(*(_enumerate(c) for c in block.children)):
            yield tuple(itertools.chain.from_iterable(parts))
        return
    if block.kind is BlockKind.XOR:
        for child in block.children:
            yield from _enumerate(child)
        return
    for parts in itertools.product(*(_enumerate(c) for c in block.children)):
        yield from _interleave(parts)


def _interleave(sequences: tuple[Execution, ...]):
    """All order-preserving merges of the given sequences."""
    sequences = tuple(s for s in sequences if s)
    if not sequences:
        yield ()
        return
    if len(sequences) == 1:
        yield sequences[0]
        return
    for i, s in enumerate(sequences):
        head, rest = s[0], s[1:]
        remaining = sequences[:i] + ((rest,) if rest else ()) + sequences[i + 1:]
        for tail in _interleave(remaining):
            yield (head,) + tail


@dataclass(frozen=True)
class Trace:
    """An execution paired with the state reached after each task."""

    steps: tuple[tuple[str, frozenset[Literal]], ...]

    @property
    def task_ids(self) -> tuple[str, ...]:
        return tuple(tid for tid, _ in self.steps)

    @property
    def states(self) -> tuple[frozenset[Literal], ...]:
        return tuple(state for _, state in self.steps)


def compute_trace(model: ProcessModel, exe: Execution) -> Trace:
    """Fold the state update over the execution, starting from the empty state."""
    state: frozenset[Literal] = frozenset()
    steps = []
    for tid in exe:
        state = state_update(state, model.annotation(tid))
        steps.append((tid, state))
    return Trace(tuple(steps))
