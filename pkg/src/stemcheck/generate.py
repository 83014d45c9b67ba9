"""Seeded random model and obligation generation for differential testing."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .model import (
    Block,
    Literal,
    ProcessModel,
    Task,
    TaskRef,
    and_,
    make_model,
    seq,
    task,
    xor,
)
from .obligations import ConditionalObligation, ObligationKind


@dataclass(frozen=True)
class GeneratorParams:
    max_tasks: int = 8
    max_depth: int = 3
    atom_count: int = 4
    seq_weight: float = 1.0
    xor_weight: float = 1.0
    and_weight: float = 1.0
    max_arity: int = 4
    annotation_rate: float = 0.8


def generate_random_model(seed: int, params: GeneratorParams = GeneratorParams()) -> ProcessModel:
    """Deterministic random model; always passes validation.

    Inner task count is capped by ``max_tasks`` (start and end are extra);
    composite arity is sampled in [2, max_arity] and trimmed to the remaining
    task budget, so undersized composites collapse into single tasks.
    """
    rng = random.Random(seed)
    atoms = [chr(ord("a") + i) for i in range(params.atom_count)]
    counter = [0]
    tasks: dict[str, Task] = {}

    def new_task() -> TaskRef:
        counter[0] += 1
        tid = f"t{counter[0]}"
        tasks[tid] = Task(tid, random_annotation(rng, atoms, params.annotation_rate))
        return task(tid)

    def build(depth: int, budget: int) -> tuple[Block, int]:
        if depth >= params.max_depth or budget < 2 or rng.random() < 0.35:
            return new_task(), budget - 1
        kinds = [("seq", params.seq_weight), ("xor", params.xor_weight), ("and", params.and_weight)]
        kind = rng.choices([k for k, _ in kinds], weights=[w for _, w in kinds])[0]
        arity = min(rng.randint(2, params.max_arity), budget)
        if arity < 2:
            return new_task(), budget - 1
        children = []
        remaining = budget
        for i in range(arity):
            # keep at least one task of budget per remaining child
            child, remaining = build(depth + 1, remaining - (arity - i - 1))
            remaining += arity - i - 1
            children.append(child)
        make = {"seq": seq, "xor": xor, "and": and_}[kind]
        return make(*children), remaining

    n_tasks = rng.randint(1, params.max_tasks)
    body, _ = build(0, n_tasks)
    tasks["start"] = Task("start", frozenset())
    tasks["end"] = Task("end", frozenset())
    root = seq(task("start"), body, task("end"))
    return make_model(root, tasks)


def random_annotation(rng: random.Random, atoms: list[str], rate: float) -> frozenset[Literal]:
    ann: set[Literal] = set()
    for atom in atoms:
        if rng.random() < rate / len(atoms):
            ann.add(Literal(atom, rng.random() < 0.7))
    return frozenset(ann)


def generate_random_obligations(seed: int, params: GeneratorParams = GeneratorParams()) -> list[ConditionalObligation]:
    """One achievement and one maintenance obligation over the same atom pool."""
    rng = random.Random(seed ^ 0x5EED)
    atoms = [chr(ord("a") + i) for i in range(params.atom_count)]

    def lit() -> Literal:
        return Literal(rng.choice(atoms), rng.random() < 0.7)

    return [
        ConditionalObligation(ObligationKind.ACHIEVEMENT, lit(), lit(), lit()),
        ConditionalObligation(ObligationKind.MAINTENANCE, lit(), lit(), lit()),
    ]


def generate_balanced_model(num_tasks: int, trigger_tasks: int = 3, seed: int = 0) -> tuple[ProcessModel, ConditionalObligation]:
    """Large balanced model for benchmarking the engine against the oracle.

    Alternates AND and XOR levels over SEQ pairs so the execution count
    explodes while the tree stays shallow. The returned obligation's trigger
    appears on ``trigger_tasks`` inner tasks only, keeping the number of stems
    small and the engine runtime near-linear.
    """
    rng = random.Random(seed)
    tasks: dict[str, Task] = {}
    counter = [0]

    def new_task(ann: frozenset[Literal]) -> TaskRef:
        counter[0] += 1
        tid = f"t{counter[0]}"
        tasks[tid] = Task(tid, ann)
        return task(tid)

    pool = [Literal("p"), Literal("q", False), Literal("u")]
    leaves: list[Block] = []
    for _ in range(num_tasks):
        ann = frozenset({rng.choice(pool)}) if rng.random() < 0.5 else frozenset()
        leaves.append(new_task(ann))
    # sprinkle the trigger on a few tasks away from the edges
    obligation = ConditionalObligation(
        ObligationKind.ACHIEVEMENT, Literal("r"), Literal("tr"), Literal("d")
    )
    step = max(1, num_tasks // (trigger_tasks + 1))
    for i in range(1, trigger_tasks + 1):
        ref = leaves[i * step]
        tasks[ref.task_id] = Task(ref.task_id, tasks[ref.task_id].annotation | {Literal("tr")})

    level = 0
    while len(leaves) > 1:
        paired = []
        make = (and_, xor, seq)[level % 3]
        for i in range(0, len(leaves) - 1, 2):
            paired.append(make(leaves[i], leaves[i + 1]))
        if len(leaves) % 2:
            paired.append(leaves[-1])
        leaves = paired
        level += 1

    tasks["start"] = Task("start", frozenset())
    tasks["end"] = Task("end", frozenset())
    root = seq(task("start"), leaves[0], task("end"))
    return make_model(root, tasks), obligation
