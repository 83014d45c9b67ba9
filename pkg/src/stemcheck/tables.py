"""Aggregation tables for every classification family, encoded as literal data.

Label syntax: signs -, 0, + on the pattern sides. "x+" / "z-" are the one-sided
guard labels, "x+z0" the two-sided interval and sequence labels ("xz-" is the
collapsed bottom), "x+tz0" the trigger-straddling stem labels, "k+" / "k0" the
interleaved-pattern labels.

Two row shapes:

* sibling tables (``A B | SEQ | AND``): how two neighbouring blocks of the
  same family combine under a SEQ or an AND parent;
* stem-combine tables (``STEM UNDER | RESULT``): how the accumulated stem
  label absorbs the folded classification of the overnode's other children.

Cells may hold several labels (written ``l1/l2``); aggregation keeps the
maximal ones afterwards. The module self-checks totality, AND symmetry,
neutral-element rows, and top absorption at import time.
"""

from __future__ import annotations

from .constraints import PatternKind

SIGNS = ("-", "0", "+")
_SIGN_RANK = {"-": 0, "0": 1, "+": 2}

LSP_LABELS = ("x-", "x0", "x+")
RSP_LABELS = ("z-", "z0", "z+")
IGP_LABELS = ("k0", "k+")
ISP_LABELS = ("xz-", "x-z+", "x0z0", "x+z-", "x0z+", "x+z0", "x+z+")
GSP_LABELS = ("xz-", "x0z-", "x-z+", "x0z0", "x+z-", "x0z+", "x+z0", "x+z+")
IOP_LABELS = (
    "x-tz-", "x-tz0", "x0tz-", "x-tz+", "x0tz0", "x+tz-", "x0tz+", "x+tz0", "x+tz+",
)

FAMILY_LABELS = {
    PatternKind.LSP: LSP_LABELS,
    PatternKind.RSP: RSP_LABELS,
    PatternKind.IGP: IGP_LABELS,
    PatternKind.ISP: ISP_LABELS,
    PatternKind.GSP: GSP_LABELS,
    PatternKind.IOP: IOP_LABELS,
}

FULFILMENT = {
    PatternKind.IOP: "x+tz+",
    PatternKind.GSP: "x+z+",
    PatternKind.LSP: "x+",
    PatternKind.RSP: "z+",
}

NEUTRAL = {
    PatternKind.LSP: "x0",
    PatternKind.RSP: "z0",
    PatternKind.IGP: "k0",
    PatternKind.ISP: "x0z0",
    PatternKind.GSP: "x0z0",
    PatternKind.IOP: "x0tz0",
}


def label_signs(label: str) -> tuple[str, ...]:
    """Component signs of a label; the collapsed bottoms map to all-minus."""
    if label in ("xz-", "x-tz-"):
        return ("-", "-")
    out = []
    i = 0
    while i < len(label):
        ch = label[i]
        if ch in "xzk":
            out.append(label[i + 1])
            i += 2
        else:  # the literal 't' marker in stem labels
            i += 1
    return tuple(out)


def leq(family: PatternKind, a: str, b: str) -> bool:
    """Componentwise preference order; bottoms below everything in-family."""
    if a == b:
        return True
    sa, sb = label_signs(a), label_signs(b)
    return all(_SIGN_RANK[x] <= _SIGN_RANK[y] for x, y in zip(sa, sb))


# --- sibling tables: "A B | SEQ | AND" -------------------------------------

_LSP_ROWS = """
x0 x0 | x0 | x0
x0 x+ | x+ | x+
x0 x- | x- | x-
x+ x0 | x+ | x+
x+ x+ | x+ | x+
x+ x- | x- | x+
x- x0 | x- | x-
x- x+ | x+ | x+
x- x- | x- | x-
"""

_RSP_ROWS = """
z0 z0 | z0 | z0
z0 z+ | z+ | z+
z0 z- | z- | z-
z+ z0 | z+ | z+
z+ z+ | z+ | z+
z+ z- | z+ | z+
z- z0 | z- | z-
z- z+ | z- | z+
z- z- | z- | z-
"""

_IGP_ROWS = """
k0 k0 | k0 | k0
k0 k+ | k+ | k+
k+ k0 | k+ | k+
k+ k+ | k+ | k+
"""

_ISP_ROWS = """
x0z0 x0z0 | x0z0 | x0z0
x0z0 xz-  | xz-  | xz-
x0z0 x+z0 | x+z0 | x+z0
x0z0 x+z- | x+z- | x+z-
x0z0 x0z+ | x0z+ | x0z+
x0z0 x-z+ | x-z+ | x-z+
x0z0 x+z+ | x+z+ | x+z+
xz-  x0z0 | xz-  | xz-
xz-  xz-  | xz-  | xz-
xz-  x+z0 | x+z0 | x+z0
xz-  x+z- | x+z- | x+z-
xz-  x0z+ | x-z+ | x0z+
xz-  x-z+ | x-z+ | x-z+
xz-  x+z+ | x+z+ | x+z+
x+z0 x0z0 | x+z0 | x+z0
x+z0 xz-  | x+z- | x+z0
x+z0 x+z0 | x+z0 | x+z0
x+z0 x+z- | x+z- | x+z0
x+z0 x0z+ | x+z+ | x+z+
x+z0 x-z+ | x+z-/x-z+ | x+z+
x+z0 x+z+ | x+z+ | x+z+
x+z- x0z0 | x+z- | x+z-
x+z- xz-  | x+z- | x+z-
x+z- x+z0 | x+z0 | x+z0
x+z- x+z- | x+z- | x+z-
x+z- x0z+ | x+z-/x-z+ | x+z+
x+z- x-z+ | x+z-/x-z+ | x+z+
x+z- x+z+ | x+z+ | x+z+
x0z+ x0z0 | x0z+ | x0z+
x0z+ xz-  | x0z+ | x0z+
x0z+ x+z0 | x0z+/x+z0 | x+z+
x0z+ x+z- | x0z+/x+z- | x+z+
x0z+ x0z+ | x0z+ | x0z+
x0z+ x-z+ | x0z+ | x0z+
x0z+ x+z+ | x+z+ | x+z+
x-z+ x0z0 | x-z+ | x-z+
x-z+ xz-  | x-z+ | x-z+
x-z+ x+z0 | x-z+/x+z0 | x+z+
x-z+ x+z- | x-z+/x+z- | x+z+
x-z+ x0z+ | x-z+ | x0z+
x-z+ x-z+ | x-z+ | x-z+
x-z+ x+z+ | x+z+ | x+z+
x+z+ x0z0 | x+z+ | x+z+
x+z+ xz-  | x+z+ | x+z+
x+z+ x+z0 | x+z+ | x+z+
x+z+ x+z- | x+z+ | x+z+
x+z+ x0z+ | x+z+ | x+z+
x+z+ x-z+ | x+z+ | x+z+
x+z+ x+z+ | x+z+ | x+z+
"""

# Four SEQ cells with a k-only right operand (x0z-) deviate from projecting
# the right class. A k-only block carries no middle element, so an available
# x on its left survives it ((x+z+ | x+z0 | x+z-, x0z-) keep the x as x+z-),
# while a left class whose every execution carries the middle element keeps
# poisoning once its z is gone ((x-z+, x0z-) collapses to the bottom).
_GSP_ROWS = """
x+z+ x+z+ | x+z+ | x+z+
x+z+ x+z0 | x+z+ | x+z+
x+z+ x0z+ | x+z+ | x+z+
x+z+ x0z0 | x+z+ | x+z+
x+z+ x-z+ | x-z+ | x+z+
x+z+ x+z- | x+z- | x+z+
x+z+ x0z- | x+z- | x+z+
x+z+ xz-  | xz-  | x+z+
x+z0 x+z+ | x+z+ | x+z+
x+z0 x+z0 | x+z0 | x+z0
x+z0 x0z+ | x+z+ | x+z+
x+z0 x0z0 | x+z0 | x+z0
x+z0 x-z+ | x-z+ | x+z+
x+z0 x+z- | x+z- | x+z0
x+z0 x0z- | x+z- | x+z0
x+z0 xz-  | xz-  | x+z0
x0z+ x+z+ | x+z+ | x+z+
x0z+ x+z0 | x0z+/x+z0 | x+z+
x0z+ x0z+ | x0z+ | x0z+
x0z+ x0z0 | x0z+ | x0z+
x0z+ x-z+ | x-z+ | x-z+
x0z+ x+z- | x+z- | x+z+
x0z+ x0z- | x0z- | x0z+
x0z+ xz-  | xz-  | x-z+
x0z0 x+z+ | x+z+ | x+z+
x0z0 x+z0 | x+z0 | x+z0
x0z0 x0z+ | x0z+ | x0z+
x0z0 x0z0 | x0z0 | x0z0
x0z0 x-z+ | x-z+ | x-z+
x0z0 x+z- | x+z- | x+z-
x0z0 x0z- | x0z- | x0z-
x0z0 xz-  | xz-  | xz-
x-z+ x+z+ | x+z+ | x+z+
x-z+ x+z0 | x-z+/x+z0 | x+z+
x-z+ x0z+ | x-z+ | x-z+
x-z+ x0z0 | x-z+ | x-z+
x-z+ x-z+ | x-z+ | x-z+
x-z+ x+z- | x+z- | x+z+
x-z+ x0z- | xz-  | x-z+
x-z+ xz-  | xz-  | x-z+
x+z- x+z+ | x+z+ | x+z+
x+z- x+z0 | x+z0 | x+z0
x+z- x0z+ | x+z+ | x+z+
x+z- x0z0 | x+z- | x+z-
x+z- x-z+ | x-z+ | x+z+
x+z- x+z- | x+z- | x+z-
x+z- x0z- | x+z- | x+z-
x+z- xz-  | xz-  | x+z-
x0z- x+z+ | x+z+ | x+z+
x0z- x+z0 | x+z0 | x+z0
x0z- x0z+ | x0z+ | x0z+
x0z- x0z0 | x0z- | x0z-
x0z- x-z+ | x-z+ | x-z+
x0z- x+z- | x+z- | x+z-
x0z- x0z- | x0z- | x0z-
x0z- xz-  | xz-  | xz-
xz-  x+z+ | x+z+ | x+z+
xz-  x+z0 | x+z0 | x+z0
xz-  x0z+ | x-z+ | x-z+
xz-  x0z0 | xz-  | xz-
xz-  x-z+ | x-z+ | x-z+
xz-  x+z- | x+z- | x+z-
xz-  x0z- | xz-  | xz-
xz-  xz-  | xz-  | xz-
"""

# --- stem-combine tables: "STEM UNDER | RESULT" -----------------------------

# straddle stem x left guard (left-of-stem fold enters the x side)
_IOP_LSP_ROWS = """
x+tz+ x+ | x+tz+
x+tz+ x0 | x+tz+
x+tz+ x- | x+tz+
x+tz0 x+ | x+tz0
x+tz0 x0 | x+tz0
x+tz0 x- | x+tz0
x0tz+ x+ | x+tz+
x0tz+ x0 | x0tz+
x0tz+ x- | x-tz+
x+tz- x+ | x+tz-
x+tz- x0 | x+tz-
x+tz- x- | x+tz-
x0tz0 x+ | x+tz0
x0tz0 x0 | x0tz0
x0tz0 x- | x-tz0
x-tz+ x+ | x-tz+
x-tz+ x0 | x-tz+
x-tz+ x- | x-tz+
x0tz- x+ | x+tz-
x0tz- x0 | x0tz-
x0tz- x- | x-tz-
x-tz0 x+ | x-tz0
x-tz0 x0 | x-tz0
x-tz0 x- | x-tz0
x-tz- x+ | x-tz-
x-tz- x0 | x-tz-
x-tz- x- | x-tz-
"""

# straddle stem x right guard (right-of-stem fold enters the z side)
_IOP_RSP_ROWS = """
x+tz+ z+ | x+tz+
x+tz+ z0 | x+tz+
x+tz+ z- | x+tz+
x+tz0 z+ | x+tz+
x+tz0 z0 | x+tz0
x+tz0 z- | x+tz-
x0tz+ z+ | x0tz+
x0tz+ z0 | x0tz+
x0tz+ z- | x0tz+
x+tz- z+ | x+tz-
x+tz- z0 | x+tz-
x+tz- z- | x+tz-
x0tz0 z+ | x0tz+
x0tz0 z0 | x0tz0
x0tz0 z- | x0tz-
x-tz+ z+ | x-tz+
x-tz+ z0 | x-tz+
x-tz+ z- | x-tz+
x0tz- z+ | x0tz-
x0tz- z0 | x0tz-
x0tz- z- | x0tz-
x-tz0 z+ | x-tz+
x-tz0 z0 | x-tz0
x-tz0 z- | x-tz-
x-tz- z+ | x-tz-
x-tz- z0 | x-tz-
x-tz- z- | x-tz-
"""

# straddle stem x interval fold (AND-overnode sibling bag)
_IOP_ISP_ROWS = """
x+tz+ x+z+ | x+tz+
x+tz+ x+z0 | x+tz+
x+tz+ x0z+ | x+tz+
x+tz+ x+z- | x+tz+
x+tz+ x0z0 | x+tz+
x+tz+ x-z+ | x+tz+
x+tz+ xz-  | x+tz+
x+tz0 x+z+ | x+tz+
x+tz0 x+z0 | x+tz0
x+tz0 x0z+ | x+tz+
x+tz0 x+z- | x+tz0
x+tz0 x0z0 | x+tz0
x+tz0 x-z+ | x+tz+
x+tz0 xz-  | x+tz0
x0tz+ x+z+ | x+tz+
x0tz+ x+z0 | x+tz+
x0tz+ x0z+ | x0tz+
x0tz+ x+z- | x+tz+
x0tz+ x0z0 | x0tz+
x0tz+ x-z+ | x0tz+
x0tz+ xz-  | x0tz+
x+tz- x+z+ | x+tz+
x+tz- x+z0 | x+tz-
x+tz- x0z+ | x+tz+
x+tz- x+z- | x+tz-
x+tz- x0z0 | x+tz-
x+tz- x-z+ | x+tz+
x+tz- xz-  | x+tz-
x0tz0 x+z+ | x+tz+
x0tz0 x+z0 | x+tz0
x0tz0 x0z+ | x0tz+
x0tz0 x+z- | x+tz-/x-tz0
x0tz0 x0z0 | x0tz0
x0tz0 x-z+ | x-tz+/x0tz-
x0tz0 xz-  | x0tz-/x-tz0
x-tz+ x+z+ | x+tz+
x-tz+ x+z0 | x+tz+
x-tz+ x0z+ | x-tz+
x-tz+ x+z- | x+tz+
x-tz+ x0z0 | x-tz+
x-tz+ x-z+ | x-tz+
x-tz+ xz-  | x-tz+
x0tz- x+z+ | x+tz+
x0tz- x+z0 | x+tz-
x0tz- x0z+ | x0tz+
x0tz- x+z- | x+tz-
x0tz- x0z0 | x0tz-
x0tz- x-z+ | x-tz+/x0tz-
x0tz- xz-  | x0tz-
x-tz0 x+z+ | x+tz+
x-tz0 x+z0 | x+tz0
x-tz0 x0z+ | x-tz+
x-tz0 x+z- | x+tz-/x-tz0
x-tz0 x0z0 | x-tz0
x-tz0 x-z+ | x-tz+
x-tz0 xz-  | x-tz0
x-tz- x+z+ | x+tz+
x-tz- x+z0 | x+tz-
x-tz- x0z+ | x-tz+
x-tz- x+z- | x+tz-
x-tz- x0z0 | x-tz-
x-tz- x-z+ | x-tz+
x-tz- xz-  | x-tz-
"""

# left-sequence stem x interval fold (AND-overnode sibling bag).
# Rows where the stem carries only blockers deviate from projecting the bag
# label: an interleaved undernode element lands between the stem's blocker
# and the trigger, so a bag z reopens the z side cleanly (x0z-/xz- with
# Ux0z+), while a bag x keeps the stem's blocker mark for material that can
# only arrive before it (x0z-/xz- with Ux+z0 and Ux+z-).
_GSP_ISP_ROWS = """
x+z+ x+z+ | x+z+
x+z+ x+z0 | x+z+
x+z+ x0z+ | x+z+
x+z+ x+z- | x+z+
x+z+ x0z0 | x+z+
x+z+ x-z+ | x+z+
x+z+ xz-  | x+z+
x+z0 x+z+ | x+z+
x+z0 x+z0 | x+z0
x+z0 x0z+ | x+z+
x+z0 x+z- | x+z0
x+z0 x0z0 | x+z0
x+z0 x-z+ | x+z+
x+z0 xz-  | x+z0
x0z+ x+z+ | x+z+
x0z+ x+z0 | x+z+
x0z+ x0z+ | x0z+
x0z+ x+z- | x+z+
x0z+ x0z0 | x0z+
x0z+ x-z+ | x0z+
x0z+ xz-  | x0z+
x0z0 x+z+ | x+z+
x0z0 x+z0 | x+z0
x0z0 x0z+ | x0z+
x0z0 x+z- | x+z0
x0z0 x0z0 | x0z0
x0z0 x-z+ | x0z0/x-z+
x0z0 xz-  | x0z0
x-z+ x+z+ | x+z+
x-z+ x+z0 | x+z+
x-z+ x0z+ | x-z+
x-z+ x+z- | x+z+
x-z+ x0z0 | x-z+
x-z+ x-z+ | x-z+
x-z+ xz-  | x-z+
x+z- x+z+ | x+z+
x+z- x+z0 | x+z-
x+z- x0z+ | x+z+
x+z- x+z- | x+z-
x+z- x0z0 | x+z-
x+z- x-z+ | x+z+
x+z- xz-  | x+z-
x0z- x+z+ | x+z+
x0z- x+z0 | x+z-
x0z- x0z+ | x0z+
x0z- x+z- | x+z-
x0z- x0z0 | x0z-
x0z- x-z+ | x0z-/x-z+
x0z- xz-  | x0z-
xz-  x+z+ | x+z+
xz-  x+z0 | x+z-
xz-  x0z+ | x-z+
xz-  x+z- | x+z-
xz-  x0z0 | xz-
xz-  x-z+ | x-z+
xz-  xz-  | xz-
"""


def _parse_sibling(rows: str) -> dict[tuple[str, str], dict[str, tuple[str, ...]]]:
    table: dict[tuple[str, str], dict[str, tuple[str, ...]]] = {}
    for line in rows.strip().splitlines():
        pair, s, a = (part.strip() for part in line.split("|"))
        la, lb = pair.split()
        table[(la, lb)] = {
            "seq": tuple(s.split("/")),
            "and": tuple(a.split("/")),
        }
    return table


def _parse_combine(rows: str) -> dict[tuple[str, str], tuple[str, ...]]:
    table: dict[tuple[str, str], tuple[str, ...]] = {}
    for line in rows.strip().splitlines():
        pair, result = (part.strip() for part in line.split("|"))
        stem, under = pair.split()
        table[(stem, under)] = tuple(result.split("/"))
    return table


SIBLING_TABLES: dict[PatternKind, dict[tuple[str, str], dict[str, tuple[str, ...]]]] = {
    PatternKind.LSP: _parse_sibling(_LSP_ROWS),
    PatternKind.RSP: _parse_sibling(_RSP_ROWS),
    PatternKind.IGP: _parse_sibling(_IGP_ROWS),
    PatternKind.ISP: _parse_sibling(_ISP_ROWS),
    PatternKind.GSP: _parse_sibling(_GSP_ROWS),
}

IOP_LEFT = _parse_combine(_IOP_LSP_ROWS)
IOP_RIGHT = _parse_combine(_IOP_RSP_ROWS)
IOP_AND = _parse_combine(_IOP_ISP_ROWS)
GSP_AND = _parse_combine(_GSP_ISP_ROWS)


def igp_combine(stem: str, under: str, side: str) -> tuple[str, ...]:
    """Fold an IGP bag into a one-sided stem label.

    k0 acts as the neutral guard label and k+ as the fulfilled one, combined
    through the AND column of the matching one-sided table.
    """
    kind = PatternKind.LSP if side == "x" else PatternKind.RSP
    mapped = side + ("+" if under == "k+" else "0")
    return SIBLING_TABLES[kind][(mapped, stem)]["and"]


def _check_tables() -> None:
    for kind, table in SIBLING_TABLES.items():
        labels = FAMILY_LABELS[kind]
        for a in labels:
            for b in labels:
                assert (a, b) in table, f"{kind}: missing cell ({a}, {b})"
                cell = table[(a, b)]
                for col in ("seq", "and"):
                    assert all(r in labels for r in cell[col]), f"{kind}: bad label in ({a},{b})"
                assert set(cell["and"]) == set(table[(b, a)]["and"]), f"{kind}: AND not symmetric at ({a},{b})"
        neutral = NEUTRAL[kind]
        for b in labels:
            assert table[(neutral, b)]["seq"] == (b,), f"{kind}: neutral row broken at ({neutral},{b})"
            assert table[(neutral, b)]["and"] == (b,), f"{kind}: neutral row broken at ({neutral},{b})"
    for label in ISP_LABELS:
        assert SIBLING_TABLES[PatternKind.ISP][("x+z+", label)]["seq"] == ("x+z+",)
        assert SIBLING_TABLES[PatternKind.ISP][("x+z+", label)]["and"] == ("x+z+",)

    for name, table, stems, unders in (
        ("iop-left", IOP_LEFT, IOP_LABELS, LSP_LABELS),
        ("iop-right", IOP_RIGHT, IOP_LABELS, RSP_LABELS),
        ("iop-and", IOP_AND, IOP_LABELS, ISP_LABELS),
        ("gsp-and", GSP_AND, GSP_LABELS, ISP_LABELS),
    ):
        for s in stems:
            for u in unders:
                assert (s, u) in table, f"{name}: missing cell ({s}, {u})"


_check_tables()


def dump_tables() -> str:
    """Text rendering of every table, for review."""
    parts = []
    for kind, table in SIBLING_TABLES.items():
        parts.append(f"== sibling table {kind.value}")
        for (a, b), cell in table.items():
            parts.append(f"  {a:5} {b:5} | SEQ {'/'.join(cell['seq']):11} | AND {'/'.join(cell['and'])}")
    for name, table in (("iop-left", IOP_LEFT), ("iop-right", IOP_RIGHT),
                        ("iop-and", IOP_AND), ("gsp-and", GSP_AND)):
        parts.append(f"== stem-combine table {name}")
        for (s, u), result in table.items():
            parts.append(f"  {s:6} {u:5} | {'/'.join(result)}")
    return "\n".join(parts)


if __name__ == "__main__":
    print(dump_tables())
