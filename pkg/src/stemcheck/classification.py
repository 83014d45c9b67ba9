"""Label assignment and aggregation over classification sets.

A block's classification for a pattern is a set of labels forming an
antichain in the family's preference order: anything a strictly better label
can certify, the better label certifies too, so dominated labels are dropped.
Leaves are classified from their annotation alone; composite blocks fold
their children's sets left to right through the aggregation tables (XOR
children contribute by union).

Leaf rules encode how a single task can serve a pattern. The corner cases
follow from position arithmetic, with the differential suite as the
backstop:

* a task carrying the undesired middle element is a pure blocker for the
  interval and sequence families, even when it also carries a useful slot;
* one task cannot span a strict interval (the straddling patterns need the
  trigger strictly between the endpoints), so carrying both endpoints yields
  the two one-sided labels instead;
* in the left-of-trigger sequence context both endpoints on one task do
  complete the pattern, so there the interval is reflexive.
"""

from __future__ import annotations

from dataclasses import dataclass

from .constraints import PatternKind, PatternParametrisation
from .model import BlockKind, Literal
from .tables import SIBLING_TABLES, leq
from .tree import ProcessTree, TreeNode


@dataclass(frozen=True)
class ClassSet:
    family: PatternKind
    labels: frozenset[str]

    def __contains__(self, label: str) -> bool:
        return label in self.labels


def prune_to_maximal(family: PatternKind, labels: set[str] | frozenset[str]) -> ClassSet:
    """Drop every label that has a strictly greater one in the set."""
    keep = {
        a for a in labels
        if not any(a != b and leq(family, a, b) for b in labels)
    }
    return ClassSet(family, frozenset(keep))


def classify_leaf(p: PatternParametrisation, annotation: frozenset[Literal]) -> ClassSet:
    """Classification of a single task under the given pattern."""
    has = lambda lit: lit is not None and lit in annotation

    if p.kind is PatternKind.LSP:
        if has(p.y):
            return ClassSet(p.kind, frozenset({"x-"}))
        if has(p.x):
            return ClassSet(p.kind, frozenset({"x+"}))
        return ClassSet(p.kind, frozenset({"x0"}))

    if p.kind is PatternKind.RSP:
        # a blocker on the witness task poisons it, unless the pattern's
        # interval closes inclusively (then the task still witnesses)
        if has(p.z) and (p.witness_carries_blocker or not has(p.y)):
            return ClassSet(p.kind, frozenset({"z+"}))
        if has(p.y):
            return ClassSet(p.kind, frozenset({"z-"}))
        return ClassSet(p.kind, frozenset({"z0"}))

    if p.kind is PatternKind.IGP:
        return ClassSet(p.kind, frozenset({"k+" if has(p.k) else "k0"}))

    if p.kind is PatternKind.ISP:
        if has(p.y):
            # an inclusively-closing pattern keeps a blocker-carrying witness
            if p.witness_carries_blocker and has(p.z):
                return ClassSet(p.kind, frozenset({"x0z+"}))
            return ClassSet(p.kind, frozenset({"xz-"}))
        if has(p.x) and has(p.z):
            if p.straddle:
                return ClassSet(p.kind, frozenset({"x+z0", "x0z+"}))
            return ClassSet(p.kind, frozenset({"x+z+"}))
        if has(p.x):
            return ClassSet(p.kind, frozenset({"x+z0"}))
        if has(p.z):
            return ClassSet(p.kind, frozenset({"x0z+"}))
        return ClassSet(p.kind, frozenset({"x0z0"}))

    if p.kind is PatternKind.GSP:
        if has(p.y):
            return ClassSet(p.kind, frozenset({"xz-"}))
        if has(p.x) and has(p.z):
            # z cannot carry k here: the z and k slots are complementary
            return ClassSet(p.kind, frozenset({"x+z+"}))
        if has(p.x):
            return ClassSet(p.kind, frozenset({"x+z-" if has(p.k) else "x+z0"}))
        if has(p.z):
            return ClassSet(p.kind, frozenset({"x0z+"}))
        if has(p.k):
            return ClassSet(p.kind, frozenset({"x0z-"}))
        return ClassSet(p.kind, frozenset({"x0z0"}))

    raise ValueError(f"{p.kind} has no leaf classification")


class MissingCell(KeyError):
    """An aggregation table misses a cell; table totality is violated."""


class AggregationCounter:
    """Counts table-cell applications during one evaluation run."""

    __slots__ = ("cells", "max_set")

    def __init__(self) -> None:
        self.cells = 0
        self.max_set = 1

    def note_set(self, size: int) -> None:
        if size > self.max_set:
            self.max_set = size


def aggregate_sets(
    family: PatternKind,
    kind: BlockKind,
    a: ClassSet,
    b: ClassSet,
    counter: AggregationCounter | None = None,
) -> ClassSet:
    """Combine two sibling classifications under a composite block.

    XOR takes the pruned union; SEQ and AND take the pruned union of the
    table cell over every label pair.
    """
    if kind is BlockKind.XOR:
        return prune_to_maximal(family, a.labels | b.labels)
    column = "seq" if kind is BlockKind.SEQ else "and"
    table = SIBLING_TABLES[family]
    out: set[str] = set()
    for la in a.labels:
        for lb in b.labels:
            try:
                cell = table[(la, lb)][column]
            except KeyError:
                raise MissingCell(f"{family.value}: ({la}, {lb})") from None
            if counter is not None:
                counter.cells += 1
            out.update(cell)
    result = prune_to_maximal(family, out)
    if counter is not None:
        counter.note_set(len(result.labels))
    return result


def classify_subtree(
    p: PatternParametrisation,
    tree: ProcessTree,
    node: TreeNode,
    counter: AggregationCounter | None = None,
) -> ClassSet:
    """Left-to-right fold of a whole off-stem subtree into one ClassSet."""
    if node.is_leaf:
        return classify_leaf(p, tree.model.annotation(node.task_id))
    parts = [classify_subtree(p, tree, child, counter) for child in node.children]
    acc = parts[0]
    for nxt in parts[1:]:
        acc = aggregate_sets(p.kind, node.kind, acc, nxt, counter)
    return acc
