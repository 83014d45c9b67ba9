"""Failure delta-constraints and their pattern parametrisations.

A failure delta-constraint is an existential task-ordering pattern whose match
on an execution certifies a violation of the source obligation. The engine
checks a small fixed set per obligation:

* achievement -> AD1S, AD2_1, AD2_2
* maintenance -> MD1, MD2S

The raw families (AD1, AD2, MD2) exist only for the brute-force matcher, which
uses them to cross-check the simplification and decomposition equivalences.

Each engine-facing family is evaluated over the process tree through generic
patterns, parametrised with literals derived from the obligation:

* interval overnode pattern iop(x, y, z): x before the trigger, z after it,
  no y anywhere between x and z;
* left sub-pattern lsp(x, y): an x with no y from it onward;
* right sub-pattern rsp(y, z): a z with no y at or before it;
* interval sub-pattern isp(x, y, z): an x..z interval free of y;
* generalised sequence pattern gsp(x, y, z, k): x then z, both before the
  trigger, no y from x onward and no k from z onward;
* interleaved generic pattern igp(k, y): a task carrying k, usable anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .model import Literal
from .obligations import ConditionalObligation, ObligationKind


class DeltaFamily(Enum):
    AD1 = "AD1"
    AD1S = "AD1S"
    AD2 = "AD2"
    AD2_1 = "AD2.1"
    AD2_2 = "AD2.2"
    MD1 = "MD1"
    MD2 = "MD2"
    MD2S = "MD2S"

    @property
    def engine_facing(self) -> bool:
        return self in ENGINE_FAMILIES


ENGINE_FAMILIES = frozenset({DeltaFamily.AD1S, DeltaFamily.AD2_1, DeltaFamily.AD2_2,
                             DeltaFamily.MD1, DeltaFamily.MD2S})
RAW_ACHIEVEMENT = (DeltaFamily.AD1, DeltaFamily.AD2)
RAW_MAINTENANCE = (DeltaFamily.MD1, DeltaFamily.MD2)


@dataclass(frozen=True)
class FailureDeltaConstraint:
    family: DeltaFamily
    requirement: Literal
    trigger: Literal
    deadline: Literal

    def __str__(self) -> str:
        return f"{self.family.value}<{self.requirement},{self.trigger},{self.deadline}>"


def translate_obligation(ob: ConditionalObligation, raw: bool = False) -> tuple[FailureDeltaConstraint, ...]:
    """Instantiate the failure constraints for an obligation (constant time).

    With ``raw`` the original un-simplified families are returned instead;
    these are only meaningful to the brute-force matcher.
    """
    if ob.kind is ObligationKind.ACHIEVEMENT:
        families = RAW_ACHIEVEMENT if raw else (DeltaFamily.AD1S, DeltaFamily.AD2_1, DeltaFamily.AD2_2)
    else:
        families = RAW_MAINTENANCE if raw else (DeltaFamily.MD1, DeltaFamily.MD2S)
    return tuple(
        FailureDeltaConstraint(f, ob.requirement, ob.trigger, ob.deadline) for f in families
    )


class PatternKind(Enum):
    IOP = "iop"
    LSP = "lsp"
    RSP = "rsp"
    ISP = "isp"
    GSP = "gsp"
    IGP = "igp"


class OvernodeContext(Enum):
    """Where a parametrised pattern is applied during a stem walk."""

    OVERNODE_MAIN = "overnode-main"
    SEQ_LEFT = "seq-left"
    SEQ_RIGHT = "seq-right"
    AND_UNDERNODE = "and-undernode"


@dataclass(frozen=True)
class PatternParametrisation:
    """A generic pattern with its slot literals and leaf-rule variant.

    ``straddle`` marks interval patterns whose endpoints must sit strictly on
    both sides of the trigger, so one task cannot complete them alone.
    ``witness_carries_blocker`` marks the late-drop pattern, whose witness
    task still counts when it carries the blocking element itself (the
    in-force interval includes its closing state).
    """

    kind: PatternKind
    x: Literal | None = None
    y: Literal | None = None
    z: Literal | None = None
    k: Literal | None = None
    straddle: bool = False
    witness_carries_blocker: bool = False

    def slots(self) -> dict[str, Literal]:
        return {name: lit for name, lit in (("x", self.x), ("y", self.y), ("z", self.z), ("k", self.k))
                if lit is not None}


class InvalidContext(ValueError):
    """The requested context does not exist for the constraint family."""


def parametrise(c: FailureDeltaConstraint, context: OvernodeContext) -> PatternParametrisation:
    """Pattern and slot literals used at the given position of a stem walk."""
    r, d = c.requirement, c.deadline
    not_r, not_d = r.complement(), d.complement()

    if c.family is DeltaFamily.AD1S:
        if context is OvernodeContext.OVERNODE_MAIN:
            return PatternParametrisation(PatternKind.IOP, x=not_r, y=r, z=d)
        if context is OvernodeContext.SEQ_LEFT:
            return PatternParametrisation(PatternKind.LSP, x=not_r, y=r)
        if context is OvernodeContext.SEQ_RIGHT:
            return PatternParametrisation(PatternKind.RSP, y=r, z=d)
        return PatternParametrisation(PatternKind.ISP, x=not_r, y=r, z=d, straddle=True)

    if c.family in (DeltaFamily.AD2_1, DeltaFamily.AD2_2):
        if c.family is DeltaFamily.AD2_1:
            x, y, z, k = not_r, r, d, not_d
        else:
            x, y, z, k = d, not_d, not_r, r
        if context in (OvernodeContext.OVERNODE_MAIN, OvernodeContext.SEQ_LEFT):
            return PatternParametrisation(PatternKind.GSP, x=x, y=y, z=z, k=k)
        if context is OvernodeContext.AND_UNDERNODE:
            return PatternParametrisation(PatternKind.ISP, x=x, y=y, z=z)
        raise InvalidContext(f"{c.family} has no {context.value} pattern")

    if c.family is DeltaFamily.MD1:
        if context in (OvernodeContext.OVERNODE_MAIN, OvernodeContext.SEQ_LEFT):
            return PatternParametrisation(PatternKind.LSP, x=not_r, y=r)
        if context is OvernodeContext.AND_UNDERNODE:
            return PatternParametrisation(PatternKind.IGP, k=not_r, y=r)
        raise InvalidContext(f"{c.family} has no {context.value} pattern")

    if c.family is DeltaFamily.MD2S:
        # The requirement must drop while the in-force interval is still open:
        # a complement(r) task at-or-after the trigger with no deadline state
        # from the trigger up to (exclusive of) it. Deadline state at the
        # trigger is a property of the pre-trigger material, so the check is
        # the full straddle pattern with complement(d) as the left element,
        # not a right-side-only scan: the left side certifies "the deadline
        # does not hold yet", the right side the dropping task.
        if context is OvernodeContext.OVERNODE_MAIN:
            return PatternParametrisation(PatternKind.IOP, x=not_d, y=d, z=not_r,
                                          witness_carries_blocker=True)
        if context is OvernodeContext.SEQ_LEFT:
            return PatternParametrisation(PatternKind.LSP, x=not_d, y=d)
        if context is OvernodeContext.SEQ_RIGHT:
            return PatternParametrisation(PatternKind.RSP, y=d, z=not_r,
                                          witness_carries_blocker=True)
        return PatternParametrisation(PatternKind.ISP, x=not_d, y=d, z=not_r,
                                      straddle=True, witness_carries_blocker=True)

    raise InvalidContext(f"{c.family} is not evaluated over the tree")
