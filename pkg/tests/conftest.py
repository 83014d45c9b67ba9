import pytest

from stemcheck.model import Literal, Task, and_, make_model, seq, task, xor
from stemcheck.obligations import ConditionalObligation, ObligationKind


def lit(text: str) -> Literal:
    return Literal.parse(text)


def lits(*texts: str) -> frozenset[Literal]:
    return frozenset(Literal.parse(t) for t in texts)


@pytest.fixture
def teaching_model():
    """SEQ(start, AND(XOR(t1, t2), t3), t4, end) with the usual annotations."""
    tasks = {
        "start": Task("start"),
        "t1": Task("t1", lits("a")),
        "t2": Task("t2", lits("b", "c")),
        "t3": Task("t3", lits("c", "d")),
        "t4": Task("t4", lits("!a")),
        "end": Task("end"),
    }
    root = seq(task("start"), and_(xor(task("t1"), task("t2")), task("t3")), task("t4"), task("end"))
    return make_model(root, tasks)


@pytest.fixture
def teaching_obligation():
    return ConditionalObligation(ObligationKind.ACHIEVEMENT, lit("b"), lit("c"), lit("!a"))
