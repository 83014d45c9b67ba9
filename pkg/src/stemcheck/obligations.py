"""Conditional obligations and per-obligation model specialization.

An obligation is a tuple (kind, requirement, trigger, deadline) of single
propositional literals. It comes in force at every state whose task annotates
the trigger and stays in force until the first state satisfying the deadline.
Achievement demands the requirement at some state of each in-force interval,
maintenance at every state.

Before checking, a model is specialized for the obligation: the start task is
annotated with the complement of the requirement (so that failure patterns can
observe an unmet requirement) and the end task with the deadline (so every
interval closes by the end of the trace).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

from .model import Literal, ModelError, ProcessModel, is_consistent


class ObligationKind(Enum):
    ACHIEVEMENT = "achievement"
    MAINTENANCE = "maintenance"


@dataclass(frozen=True)
class ConditionalObligation:
    kind: ObligationKind
    requirement: Literal
    trigger: Literal
    deadline: Literal

    def __str__(self) -> str:
        tag = "a" if self.kind is ObligationKind.ACHIEVEMENT else "m"
        return f"O^{tag}<{self.requirement},{self.trigger},{self.deadline}>"


class AssumptionConflict(ModelError):
    """Specializing the model would make a start/end annotation inconsistent."""


def specialize_for_obligation(model: ProcessModel, ob: ConditionalObligation) -> ProcessModel:
    """Overlay model with the start/end annotations the checks assume.

    Adds complement(requirement) to the start task and the deadline to the end
    task. Idempotent; the input model is left untouched. Raises
    AssumptionConflict when an addition would break annotation consistency.
    """
    not_r = ob.requirement.complement()
    start = model.tasks[model.start_id]
    end = model.tasks[model.end_id]

    new_start_ann = start.annotation | {not_r}
    if not is_consistent(new_start_ann):
        raise AssumptionConflict(
            f"start task {start.id} already annotates {ob.requirement}; cannot add {not_r}"
        )
    new_end_ann = end.annotation | {ob.deadline}
    if not is_consistent(new_end_ann):
        raise AssumptionConflict(
            f"end task {end.id} already annotates {ob.deadline.complement()}; cannot add {ob.deadline}"
        )

    tasks = dict(model.tasks)
    tasks[start.id] = replace(start, annotation=new_start_ann)
    tasks[end.id] = replace(end, annotation=new_end_ann)
    return ProcessModel(root=model.root, tasks=tasks, start_id=model.start_id, end_id=model.end_id)
