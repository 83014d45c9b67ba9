"""Obligation translation and pattern parametrisation."""

import pytest

from stemcheck.constraints import (
    DeltaFamily,
    FailureDeltaConstraint,
    InvalidContext,
    OvernodeContext,
    PatternKind,
    parametrise,
    translate_obligation,
)
from stemcheck.obligations import ConditionalObligation, ObligationKind

from conftest import lit


def make_ob(kind=ObligationKind.ACHIEVEMENT):
    return ConditionalObligation(kind, lit("b"), lit("c"), lit("!a"))


def test_achievement_translates_to_three_constraints():
    got = translate_obligation(make_ob())
    assert [c.family for c in got] == [DeltaFamily.AD1S, DeltaFamily.AD2_1, DeltaFamily.AD2_2]
    for c in got:
        assert (c.requirement, c.trigger, c.deadline) == (lit("b"), lit("c"), lit("!a"))


def test_maintenance_translates_to_two_constraints():
    got = translate_obligation(make_ob(ObligationKind.MAINTENANCE))
    assert [c.family for c in got] == [DeltaFamily.MD1, DeltaFamily.MD2S]


def test_translation_is_deterministic():
    ob = make_ob()
    assert translate_obligation(ob) == translate_obligation(ob)
    raw = translate_obligation(ob, raw=True)
    assert [c.family for c in raw] == [DeltaFamily.AD1, DeltaFamily.AD2]


def ad1s():
    return FailureDeltaConstraint(DeltaFamily.AD1S, lit("b"), lit("c"), lit("!a"))


def test_ad1s_parametrisations():
    main = parametrise(ad1s(), OvernodeContext.OVERNODE_MAIN)
    assert (main.kind, main.x, main.y, main.z) == (PatternKind.IOP, lit("!b"), lit("b"), lit("!a"))
    left = parametrise(ad1s(), OvernodeContext.SEQ_LEFT)
    assert (left.kind, left.x, left.y) == (PatternKind.LSP, lit("!b"), lit("b"))
    right = parametrise(ad1s(), OvernodeContext.SEQ_RIGHT)
    assert (right.kind, right.y, right.z) == (PatternKind.RSP, lit("b"), lit("!a"))
    under = parametrise(ad1s(), OvernodeContext.AND_UNDERNODE)
    assert (under.kind, under.x, under.y, under.z) == (PatternKind.ISP, lit("!b"), lit("b"), lit("!a"))
    assert under.straddle


def test_ad2_parametrisations():
    c1, c2 = translate_obligation(make_ob())[1:]
    g1 = parametrise(c1, OvernodeContext.OVERNODE_MAIN)
    assert (g1.kind, g1.x, g1.y, g1.z, g1.k) == (PatternKind.GSP, lit("!b"), lit("b"), lit("!a"), lit("a"))
    g2 = parametrise(c2, OvernodeContext.OVERNODE_MAIN)
    assert (g2.x, g2.y, g2.z, g2.k) == (lit("!a"), lit("a"), lit("!b"), lit("b"))
    u1 = parametrise(c1, OvernodeContext.AND_UNDERNODE)
    assert (u1.kind, u1.x, u1.y, u1.z) == (PatternKind.ISP, lit("!b"), lit("b"), lit("!a"))
    assert not u1.straddle
    with pytest.raises(InvalidContext):
        parametrise(c1, OvernodeContext.SEQ_RIGHT)


def test_md1_parametrisations():
    ob = ConditionalObligation(ObligationKind.MAINTENANCE, lit("c"), lit("b"), lit("d"))
    md1, md2s = translate_obligation(ob)
    main = parametrise(md1, OvernodeContext.OVERNODE_MAIN)
    assert (main.kind, main.x, main.y) == (PatternKind.LSP, lit("!c"), lit("c"))
    under = parametrise(md1, OvernodeContext.AND_UNDERNODE)
    assert (under.kind, under.k, under.y) == (PatternKind.IGP, lit("!c"), lit("c"))
    with pytest.raises(InvalidContext):
        parametrise(md1, OvernodeContext.SEQ_RIGHT)

    # the late-drop pattern straddles the trigger: complement(d) guards the
    # left side, complement(r) is the witness on the right
    main2 = parametrise(md2s, OvernodeContext.OVERNODE_MAIN)
    assert (main2.kind, main2.x, main2.y, main2.z) == (PatternKind.IOP, lit("!d"), lit("d"), lit("!c"))
    assert main2.witness_carries_blocker
    under2 = parametrise(md2s, OvernodeContext.AND_UNDERNODE)
    assert (under2.kind, under2.x, under2.y, under2.z) == (PatternKind.ISP, lit("!d"), lit("d"), lit("!c"))
    assert under2.straddle and under2.witness_carries_blocker
