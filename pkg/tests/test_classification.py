"""Label assignment, antichain pruning, aggregation, and table sanity."""

import itertools

import pytest

from stemcheck.classification import (
    ClassSet,
    MissingCell,
    aggregate_sets,
    classify_leaf,
    classify_subtree,
    prune_to_maximal,
)
from stemcheck.constraints import (
    DeltaFamily,
    FailureDeltaConstraint,
    OvernodeContext,
    PatternKind,
    parametrise,
)
from stemcheck.model import BlockKind
from stemcheck.tables import (
    FAMILY_LABELS,
    GSP_AND,
    GSP_LABELS,
    IOP_AND,
    IOP_LEFT,
    IOP_RIGHT,
    ISP_LABELS,
    LSP_LABELS,
    NEUTRAL,
    RSP_LABELS,
    SIBLING_TABLES,
    leq,
)
from stemcheck.tree import build_tree

from conftest import lit, lits


def isp_teaching():
    c = FailureDeltaConstraint(DeltaFamily.AD1S, lit("b"), lit("c"), lit("!a"))
    return parametrise(c, OvernodeContext.AND_UNDERNODE)


def test_leaf_classification_of_teaching_tasks():
    p = isp_teaching()
    assert classify_leaf(p, lits("a")).labels == {"x0z0"}
    assert classify_leaf(p, lits("b", "c")).labels == {"xz-"}
    assert classify_leaf(p, lits("!b")).labels == {"x+z0"}
    assert classify_leaf(p, lits("!a")).labels == {"x0z+"}


def test_leaf_with_both_interval_ends_cannot_straddle():
    # one task cannot sit on both sides of the trigger
    assert classify_leaf(isp_teaching(), lits("!b", "!a")).labels == {"x+z0", "x0z+"}


def test_lsp_leaf_classification():
    c = FailureDeltaConstraint(DeltaFamily.AD1S, lit("b"), lit("c"), lit("!a"))
    p = parametrise(c, OvernodeContext.SEQ_LEFT)
    assert classify_leaf(p, lits("!b")).labels == {"x+"}
    assert classify_leaf(p, lits("b")).labels == {"x-"}
    assert classify_leaf(p, lits("q")).labels == {"x0"}


def test_prune_keeps_only_maximal():
    assert prune_to_maximal(PatternKind.ISP, {"x0z0", "xz-"}).labels == {"x0z0"}
    assert prune_to_maximal(PatternKind.ISP, {"x+z0", "x0z+", "x0z0"}).labels == {"x+z0", "x0z+"}
    assert prune_to_maximal(PatternKind.LSP, {"x+", "x+"}).labels == {"x+"}


def test_prune_is_idempotent_and_order_insensitive():
    labels = {"x+z-", "x0z0", "x-z+", "xz-"}
    once = prune_to_maximal(PatternKind.ISP, labels)
    assert prune_to_maximal(PatternKind.ISP, once.labels).labels == once.labels
    assert once.labels == {"x+z-", "x0z0", "x-z+"}


def cs(family, *labels):
    return ClassSet(family, frozenset(labels))


def test_lsp_aggregation_rows():
    got = aggregate_sets(PatternKind.LSP, BlockKind.SEQ, cs(PatternKind.LSP, "x+"), cs(PatternKind.LSP, "x-"))
    assert got.labels == {"x-"}
    got = aggregate_sets(PatternKind.LSP, BlockKind.AND, cs(PatternKind.LSP, "x+"), cs(PatternKind.LSP, "x-"))
    assert got.labels == {"x+"}


def test_isp_aggregation_rows():
    got = aggregate_sets(PatternKind.ISP, BlockKind.AND, cs(PatternKind.ISP, "x+z0"), cs(PatternKind.ISP, "x0z+"))
    assert got.labels == {"x+z+"}
    got = aggregate_sets(PatternKind.ISP, BlockKind.SEQ, cs(PatternKind.ISP, "x+z0"), cs(PatternKind.ISP, "x-z+"))
    assert got.labels == {"x+z-", "x-z+"}


def test_xor_aggregation_is_pruned_union():
    got = aggregate_sets(PatternKind.ISP, BlockKind.XOR, cs(PatternKind.ISP, "x0z0"), cs(PatternKind.ISP, "xz-"))
    assert got.labels == {"x0z0"}


def test_classify_subtree_of_teaching_xor(teaching_model):
    tree = build_tree(teaching_model)
    xor_node = tree.root.children[1].children[0]
    got = classify_subtree(isp_teaching(), tree, xor_node)
    assert got.labels == {"x0z0"}


def test_classify_subtree_single_leaf_degenerate(teaching_model):
    tree = build_tree(teaching_model)
    start = tree.root.children[0]
    c = FailureDeltaConstraint(DeltaFamily.AD1S, lit("b"), lit("c"), lit("!a"))
    p = parametrise(c, OvernodeContext.SEQ_LEFT)
    # start is unannotated here; the specialized model marks it x+
    assert classify_subtree(p, tree, start).labels == {"x0"}


def test_aggregate_raises_on_foreign_labels():
    with pytest.raises(MissingCell):
        aggregate_sets(PatternKind.LSP, BlockKind.SEQ, cs(PatternKind.LSP, "z+"), cs(PatternKind.LSP, "x0"))


# --- table sanity: totality, symmetry, neutrality, absorption ---------------


def test_sibling_tables_total_and_consistent():
    for kind, table in SIBLING_TABLES.items():
        labels = FAMILY_LABELS[kind]
        assert set(table) == {(a, b) for a in labels for b in labels}
        for cell in table.values():
            assert set(cell) == {"seq", "and"}
            for col in cell.values():
                assert col and all(r in labels for r in col)


def test_and_columns_are_symmetric():
    for kind, table in SIBLING_TABLES.items():
        for (a, b), cell in table.items():
            assert set(cell["and"]) == set(table[(b, a)]["and"])


def test_neutral_label_is_identity_both_sides():
    for kind, table in SIBLING_TABLES.items():
        neutral = NEUTRAL[kind]
        for label in FAMILY_LABELS[kind]:
            for col in ("seq", "and"):
                assert table[(neutral, label)][col] == (label,)
                assert table[(label, neutral)][col] == (label,)


def test_isp_top_absorbs_under_all_kinds():
    table = SIBLING_TABLES[PatternKind.ISP]
    for label in ISP_LABELS:
        assert table[("x+z+", label)]["seq"] == ("x+z+",)
        assert table[("x+z+", label)]["and"] == ("x+z+",)
        assert table[(label, "x+z+")]["and"] == ("x+z+",)
    # XOR union keeps the top
    got = aggregate_sets(PatternKind.ISP, BlockKind.XOR, cs(PatternKind.ISP, "x+z+"), cs(PatternKind.ISP, "xz-"))
    assert got.labels == {"x+z+"}


def test_stem_combine_tables_total():
    cases = [
        (IOP_LEFT, FAMILY_LABELS[PatternKind.IOP], LSP_LABELS),
        (IOP_RIGHT, FAMILY_LABELS[PatternKind.IOP], RSP_LABELS),
        (IOP_AND, FAMILY_LABELS[PatternKind.IOP], ISP_LABELS),
        (GSP_AND, GSP_LABELS, ISP_LABELS),
    ]
    for table, stems, unders in cases:
        assert set(table) == {(s, u) for s in stems for u in unders}
        for results in table.values():
            assert results


def test_stem_top_absorbs():
    for u in ISP_LABELS:
        assert IOP_AND[("x+tz+", u)] == ("x+tz+",)
        assert GSP_AND[("x+z+", u)] == ("x+z+",)
    for u in LSP_LABELS:
        assert IOP_LEFT[("x+tz+", u)] == ("x+tz+",)
    for u in RSP_LABELS:
        assert IOP_RIGHT[("x+tz+", u)] == ("x+tz+",)


def test_cells_are_antichains_and_bounded():
    for kind, table in SIBLING_TABLES.items():
        for cell in table.values():
            for col in ("seq", "and"):
                got = prune_to_maximal(kind, set(cell[col]))
                assert got.labels == set(cell[col]), f"{kind} cell not an antichain"
                assert len(cell[col]) <= 3


def test_preference_orders_shape():
    # one-sided orders are total
    for labels in (LSP_LABELS, RSP_LABELS):
        kind = PatternKind.LSP if labels is LSP_LABELS else PatternKind.RSP
        for a, b in itertools.combinations(labels, 2):
            assert leq(kind, a, b) or leq(kind, b, a)
    # bottoms and tops of the product orders
    for label in ISP_LABELS:
        assert leq(PatternKind.ISP, "xz-", label)
        assert leq(PatternKind.ISP, label, "x+z+")
    for label in GSP_LABELS:
        assert leq(PatternKind.GSP, "xz-", label)
        assert leq(PatternKind.GSP, label, "x+z+")
    for label in FAMILY_LABELS[PatternKind.IOP]:
        assert leq(PatternKind.IOP, "x-tz-", label)
        assert leq(PatternKind.IOP, label, "x+tz+")
    # incomparable pair stays incomparable
    assert not leq(PatternKind.ISP, "x+z-", "x-z+")
    assert not leq(PatternKind.ISP, "x-z+", "x+z-")
