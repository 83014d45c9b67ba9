"""Process trees, stems, and stem pruning.

The process tree mirrors the block nesting one node per block; leaves are
tasks (start and end included). The stem for a trigger leaf is the root-to-
leaf path: nodes on it are overnodes, all others undernodes. Pruning replaces
every XOR overnode by its on-stem child, which removes exactly the executions
that avoid the trigger leaf.
"""

from __future__ import annotations

from dataclasses import dataclass

from .constraints import DeltaFamily, FailureDeltaConstraint
from .model import Block, BlockKind, Composite, ProcessModel, TaskRef


@dataclass(frozen=True)
class TreeNode:
    kind: BlockKind
    task_id: str | None = None
    children: tuple["TreeNode", ...] = ()

    @property
    def is_leaf(self) -> bool:
        return self.kind is BlockKind.TASK

    def iter_nodes(self):
        yield self
        for child in self.children:
            yield from child.iter_nodes()


@dataclass(frozen=True)
class ProcessTree:
    root: TreeNode
    model: ProcessModel

    def node_count(self) -> int:
        return sum(1 for _ in self.root.iter_nodes())

    def leaves(self) -> list[TreeNode]:
        return [n for n in self.root.iter_nodes() if n.is_leaf]


@dataclass(frozen=True)
class Stem:
    """Root-to-trigger-leaf path with the sibling split at every overnode.

    For each path entry the index of the on-stem child within the parent is
    recorded; SEQ overnodes split their remaining children into left-of-stem
    and right-of-stem, AND overnodes keep them as one bag.
    """

    path: tuple[TreeNode, ...]
    child_indices: tuple[int, ...]

    @property
    def leaf(self) -> TreeNode:
        return self.path[-1]


def build_tree(model: ProcessModel) -> ProcessTree:
    """One tree node per block, child order preserved."""

    def convert(block: Block) -> TreeNode:
        if isinstance(block, TaskRef):
            return TreeNode(BlockKind.TASK, task_id=block.task_id)
        return TreeNode(block.kind, children=tuple(convert(c) for c in block.children))

    return ProcessTree(convert(model.root), model)


def trigger_leaves(tree: ProcessTree, c: FailureDeltaConstraint) -> list[TreeNode]:
    """Leaves whose task annotation contains the constraint's trigger, in document order."""
    return [
        leaf for leaf in tree.leaves()
        if c.trigger in tree.model.annotation(leaf.task_id)
    ]


def find_stem(root: TreeNode, leaf: TreeNode) -> Stem:
    """Path from the root to the given leaf node (node identity, not equality)."""
    path: list[TreeNode] = []
    indices: list[int] = []

    def descend(node: TreeNode) -> bool:
        path.append(node)
        if node is leaf:
            return True
        for i, child in enumerate(node.children):
            indices.append(i)
            if descend(child):
                return True
            indices.pop()
        path.pop()
        return False

    if not descend(root):
        raise ValueError("leaf is not part of this tree")
    return Stem(tuple(path), tuple(indices))


def prune_stem(tree: ProcessTree, leaf: TreeNode) -> tuple[ProcessTree, Stem]:
    """Replace every XOR node on the stem with its on-stem child.

    The replacing child splices into its grandparent's child list at the XOR's
    position, preserving SEQ ordering. Off-stem subtrees are shared with the
    input tree. Returns the pruned tree along with the (recomputed) stem of
    the same leaf inside it.
    """
    stem = find_stem(tree.root, leaf)

    def rebuild(node: TreeNode, depth: int) -> TreeNode:
        if node.is_leaf:
            return node
        idx = stem.child_indices[depth]
        new_child = rebuild(node.children[idx], depth + 1)
        if node.kind is BlockKind.XOR:
            return new_child
        children = list(node.children)
        children[idx] = new_child
        return TreeNode(node.kind, children=tuple(children))

    new_root = rebuild(tree.root, 0)
    pruned = ProcessTree(new_root, tree.model)
    # the leaf object survives pruning untouched, so it can be located again
    return pruned, find_stem(new_root, leaf)


def pruned_block(tree: ProcessTree) -> Block:
    """The block structure corresponding to a (possibly pruned) tree."""

    def convert(node: TreeNode) -> Block:
        if node.is_leaf:
            return TaskRef(node.task_id)
        return Composite(node.kind, tuple(convert(c) for c in node.children))

    return convert(tree.root)


def check_leaf_fail(tree: ProcessTree, leaf: TreeNode, c: FailureDeltaConstraint) -> bool:
    """Trigger-leaf fast-fail: annotations that falsify the constraint outright.

    The requirement on the trigger task kills every achievement pattern and
    MD1; the deadline on it kills MD2S (the interval closes at the trigger
    itself).
    """
    ann = tree.model.annotation(leaf.task_id)
    if c.family is DeltaFamily.MD2S:
        return c.deadline in ann
    return c.requirement in ann
