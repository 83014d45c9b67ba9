"""JSON document formats for models, obligations, and reports.

Model documents carry the task annotations as lists of signed literal
strings ("a" positive, "!a" negative, "¬a" accepted on input) and the block
structure as nested tagged objects. Documents round-trip losslessly.
"""

from __future__ import annotations

import json
from typing import Any

from .engine import EngineReport
from .model import (
    Block,
    BlockKind,
    Composite,
    Literal,
    ProcessModel,
    Task,
    TaskRef,
    make_model,
)
from .obligations import ConditionalObligation, ObligationKind


class DocumentError(ValueError):
    """Malformed model or obligation document."""


def _literals_to_doc(annotation: frozenset[Literal]) -> list[str]:
    return sorted(str(lit) for lit in annotation)


def _literals_from_doc(items: Any, where: str) -> frozenset[Literal]:
    if not isinstance(items, list) or not all(isinstance(s, str) for s in items):
        raise DocumentError(f"{where}: annotation must be a list of literal strings")
    try:
        return frozenset(Literal.parse(s) for s in items)
    except ValueError as exc:
        raise DocumentError(f"{where}: {exc}") from None


def _block_to_doc(block: Block) -> dict:
    if isinstance(block, TaskRef):
        return {"kind": "task", "id": block.task_id}
    return {"kind": block.kind.value, "children": [_block_to_doc(c) for c in block.children]}


def _block_from_doc(doc: Any, where: str) -> Block:
    if not isinstance(doc, dict) or "kind" not in doc:
        raise DocumentError(f"{where}: block must be an object with a 'kind'")
    kind = doc["kind"]
    if kind == "task":
        if not isinstance(doc.get("id"), str):
            raise DocumentError(f"{where}: task block needs a string 'id'")
        return TaskRef(doc["id"])
    if kind not in ("seq", "xor", "and"):
        raise DocumentError(f"{where}: unknown block kind {kind!r}")
    children = doc.get("children")
    if not isinstance(children, list):
        raise DocumentError(f"{where}: composite block needs a 'children' list")
    return Composite(
        BlockKind(kind),
        tuple(_block_from_doc(c, f"{where}/{kind}[{i}]") for i, c in enumerate(children)),
    )


def model_to_doc(model: ProcessModel) -> dict:
    return {
        "start": model.start_id,
        "end": model.end_id,
        "tasks": {tid: _literals_to_doc(t.annotation) for tid, t in sorted(model.tasks.items())},
        "root": _block_to_doc(model.root),
    }


def model_from_doc(doc: Any) -> ProcessModel:
    if not isinstance(doc, dict):
        raise DocumentError("model document must be an object")
    for key in ("start", "end", "tasks", "root"):
        if key not in doc:
            raise DocumentError(f"model document misses '{key}'")
    if not isinstance(doc["tasks"], dict):
        raise DocumentError("'tasks' must map task ids to annotations")
    tasks = {
        tid: Task(tid, _literals_from_doc(ann, f"tasks[{tid}]"))
        for tid, ann in doc["tasks"].items()
    }
    root = _block_from_doc(doc["root"], "root")
    if not isinstance(root, Composite):
        raise DocumentError("root block must be a seq composite")
    return make_model(root, tasks, doc["start"], doc["end"])


def parse_model_file(data: bytes | str) -> ProcessModel:
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"model file: {exc}") from None
    return model_from_doc(doc)


def obligation_to_doc(ob: ConditionalObligation) -> dict:
    return {
        "kind": ob.kind.value,
        "requirement": str(ob.requirement),
        "trigger": str(ob.trigger),
        "deadline": str(ob.deadline),
    }


def obligation_from_doc(doc: Any, where: str = "obligation") -> ConditionalObligation:
    if not isinstance(doc, dict):
        raise DocumentError(f"{where}: obligation must be an object")
    kind = doc.get("kind")
    if kind not in ("achievement", "maintenance"):
        raise DocumentError(f"{where}: unknown obligation kind {kind!r}")
    try:
        return ConditionalObligation(
            ObligationKind(kind),
            Literal.parse(doc["requirement"]),
            Literal.parse(doc["trigger"]),
            Literal.parse(doc["deadline"]),
        )
    except (KeyError, ValueError) as exc:
        raise DocumentError(f"{where}: {exc}") from None


def parse_obligations_file(data: bytes | str) -> list[ConditionalObligation]:
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"obligations file: {exc}") from None
    if not isinstance(doc, list):
        raise DocumentError("obligations file must hold a list")
    return [obligation_from_doc(item, f"obligations[{i}]") for i, item in enumerate(doc)]


def obligations_to_json(obligations: list[ConditionalObligation]) -> str:
    return json.dumps([obligation_to_doc(ob) for ob in obligations], indent=2)


def model_to_json(model: ProcessModel) -> str:
    return json.dumps(model_to_doc(model), indent=2)


def report_to_doc(report: EngineReport, counters: dict | None = None) -> dict:
    doc: dict = {"verdict": report.verdict, "obligations": []}
    for ob in report.obligations:
        entry = {
            "obligation": obligation_to_doc(ob.obligation),
            "violated": ob.violated,
            "constraints": [],
        }
        for c in ob.constraints:
            c_doc = {
                "family": c.constraint.family.value,
                "satisfied": c.satisfied,
                "trigger_leaf": c.witness_leaf,
                "evaluations": [
                    {
                        "leaf": ev.trigger_leaf,
                        "outcome": ev.outcome,
                        "aggregations": ev.aggregations,
                        "root_labels": sorted(ev.root_labels),
                    }
                    for ev in c.evaluations
                ],
            }
            if c.witness_execution is not None:
                c_doc["witness_execution"] = list(c.witness_execution)
            entry["constraints"].append(c_doc)
        doc["obligations"].append(entry)
    if counters:
        doc["counters"] = counters
    return doc


def report_to_text(report: EngineReport) -> str:
    lines = []
    verdict = "Fully Compliant" if report.fully_compliant else "Not Fully Compliant"
    lines.append(f"verdict: {verdict}")
    for ob in report.obligations:
        lines.append(f"  obligation {ob.obligation}: {'violated' if ob.violated else 'satisfied'}")
        for c in ob.constraints:
            mark = "hit" if c.satisfied else "no match"
            leaf = f" at trigger leaf {c.witness_leaf}" if c.witness_leaf else ""
            lines.append(f"    {c.constraint.family.value}: {mark}{leaf}")
            if c.witness_execution:
                lines.append(f"      witness execution: {' -> '.join(c.witness_execution)}")
    return "\n".join(lines)
