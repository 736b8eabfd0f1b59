"""Serialization of decompositions: JSON documents, DOT and edge lists.

JSON is the only format that can be read back.  Loading re-runs
:func:`verify_urd` unless told not to.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .core import Decomposition
from .verify import VerificationReport, verify_urd

FORMAT_VERSION = 1


class DocumentError(ValueError):
    """Malformed JSON or a field with the wrong shape or type."""


class InvalidDecompositionError(ValueError):
    """A well-formed document whose decomposition fails verification."""

    def __init__(self, report: VerificationReport):
        self.report = report
        first = report.first()
        super().__init__(f"{first.kind}: {first.detail}" if first else "verification failed")


def to_document(d: Decomposition) -> dict[str, Any]:
    return {
        "formatVersion": FORMAT_VERSION,
        "v": int(d.v),
        "n": int(d.n),
        "s": int(d.s),
        "oneFactor": [[a, b] for a, b in d.matching()],
        "starClasses": [
            [{"center": c, "leaves": list(ls)} for c, ls in cls]
            for cls in d.raw_classes()
        ],
    }


def dumps(d: Decomposition) -> str:
    return json.dumps(to_document(d), separators=(",", ":")) + "\n"


def _int(x: Any, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise DocumentError(f"{where}: expected an integer, got {json.dumps(x)}")
    return x


def _list(x: Any, where: str) -> list:
    if not isinstance(x, list):
        raise DocumentError(f"{where}: expected a list, got {type(x).__name__}")
    return x


def from_document(doc: Any, verify: bool = True) -> Decomposition:
    if not isinstance(doc, dict):
        raise DocumentError("top level: expected an object")
    for key in ("formatVersion", "v", "n", "s", "oneFactor", "starClasses"):
        if key not in doc:
            raise DocumentError(f"missing field {key!r}")
    version = _int(doc["formatVersion"], "formatVersion")
    if version != FORMAT_VERSION:
        raise DocumentError(f"formatVersion: unsupported version {version}")
    v, n, s = (_int(doc[k], k) for k in ("v", "n", "s"))

    pairs = []
    for i, pair in enumerate(_list(doc["oneFactor"], "oneFactor")):
        where = f"oneFactor[{i}]"
        pair = _list(pair, where)
        if len(pair) != 2:
            raise DocumentError(f"{where}: expected a pair, got {len(pair)} entries")
        pairs.append([_int(x, where) for x in pair])

    classes = []
    for ci, cls in enumerate(_list(doc["starClasses"], "starClasses")):
        blocks = []
        for bi, star in enumerate(_list(cls, f"starClasses[{ci}]")):
            where = f"starClasses[{ci}][{bi}]"
            if not isinstance(star, dict) or "center" not in star or "leaves" not in star:
                raise DocumentError(f"{where}: expected an object with center and leaves")
            center = _int(star["center"], f"{where}.center")
            leaves = tuple(_int(x, f"{where}.leaves") for x in _list(star["leaves"], f"{where}.leaves"))
            blocks.append((center, leaves))
        classes.append(blocks)
    if len(classes) != s:
        raise DocumentError(f"s: document says {s} but lists {len(classes)} star classes")

    one_factor = np.array(pairs, dtype=np.int64).reshape(-1, 2)
    class_sizes = {len(cls) for cls in classes}
    star_sizes = {len(ls) for cls in classes for _, ls in cls}
    star_classes: Any = classes
    if len(class_sizes) == 1 and len(star_sizes) == 1 and 0 not in class_sizes:
        star_classes = np.array([[(c,) + ls for c, ls in cls] for cls in classes], dtype=np.int64)
    d = Decomposition(v=v, n=n, one_factor=one_factor, star_classes=star_classes)
    if verify:
        report = verify_urd(d)
        if not report.ok:
            raise InvalidDecompositionError(report)
    return d


def loads(text: str, verify: bool = True) -> Decomposition:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"line {e.lineno}, column {e.colno}: {e.msg}") from None
    return from_document(doc, verify=verify)


def to_dot(d: Decomposition) -> str:
    """Undirected multigraph, one subgraph per class (the one-factor first)."""
    lines = [f"graph urd_v{d.v}_n{d.n} {{", "  node [shape=circle];"]
    lines.append('  subgraph class_0 {\n    label="one-factor";')
    lines += [f"    {a} -- {b};" for a, b in d.matching()]
    lines.append("  }")
    for ci, cls in enumerate(d.raw_classes(), 1):
        lines.append(f'  subgraph class_{ci} {{\n    label="star class {ci}";')
        for c, ls in cls:
            lines.append(f"    {c} -- {{{' '.join(str(x) for x in ls)}}};")
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_edge_list(d: Decomposition) -> str:
    """``u x class-id`` per edge with ``u < x``; class 0 is the one-factor."""
    rows = [(min(a, b), max(a, b), 0) for a, b in d.matching()]
    for ci, cls in enumerate(d.raw_classes(), 1):
        rows += [(min(c, x), max(c, x), ci) for c, ls in cls for x in ls]
    return "".join(f"{u} {x} {ci}\n" for u, x, ci in rows)
