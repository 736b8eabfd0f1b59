"""Trust-nothing checks of decompositions and balanced star arrays.

Nothing here calls into the constructors: edges are rebuilt from the raw
``(center, leaf)`` pairs and differences are recomputed from scratch.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from .core import Decomposition

UNCOVERED = "uncovered-edge"
DOUBLY = "doubly-covered-edge"
NON_SPANNING = "non-spanning-class"
MALFORMED = "malformed-block"
WRONG_COUNT = "wrong-class-count"
NOT_MATCHING = "not-a-matching"

# witnesses kept per violation kind; the full count goes into the last one
MAX_WITNESSES = 5


@dataclass(frozen=True)
class Violation:
    kind: str
    witness: Any
    detail: str = ""


@dataclass
class VerificationReport:
    ok: bool
    edge_census: dict[int, tuple[int, int]] = field(default_factory=dict)
    violations: list[Violation] = field(default_factory=list)

    def kinds(self) -> set[str]:
        return {x.kind for x in self.violations}

    def first(self) -> Optional[Violation]:
        return self.violations[0] if self.violations else None


class _Collector:
    def __init__(self):
        self.items: list[Violation] = []
        self._seen: dict[str, int] = {}

    def add(self, kind: str, witness, detail: str = "") -> None:
        n = self._seen.get(kind, 0)
        self._seen[kind] = n + 1
        if n < MAX_WITNESSES:
            self.items.append(Violation(kind, witness, detail))


def _flatten(d: Decomposition):
    """Per-block arrays (class, center, leaf count) and per-edge arrays."""
    sc = d.star_classes
    if isinstance(sc, np.ndarray) and sc.ndim == 3 and sc.shape[0] > 0:
        s, b, width = sc.shape
        blk_cls = np.repeat(np.arange(s), b)
        flat = sc.reshape(s * b, width).astype(np.int64)
        centers = flat[:, 0]
        leaves = flat[:, 1:]
        blk_len = np.full(s * b, width - 1)
        e_blk = np.repeat(np.arange(s * b), width - 1)
        return blk_cls, centers, blk_len, flat, centers[e_blk], leaves.reshape(-1), e_blk
    blk_cls, centers, blk_len, verts, e_c, e_l, e_blk = [], [], [], [], [], [], []
    for ci, cls in enumerate(d.raw_classes()):
        for c, ls in cls:
            bi = len(centers)
            blk_cls.append(ci)
            centers.append(c)
            blk_len.append(len(ls))
            verts.append((c,) + tuple(ls))
            e_c.extend([c] * len(ls))
            e_l.extend(ls)
            e_blk.extend([bi] * len(ls))
    arr = lambda x: np.array(x, dtype=np.int64)  # noqa: E731
    return arr(blk_cls), arr(centers), arr(blk_len), verts, arr(e_c), arr(e_l), arr(e_blk)


def _expected_classes(v: int, n: int) -> Optional[int]:
    num = (v - 2) * (n + 1)
    return num // (2 * n) if num % (2 * n) == 0 else None


def verify_urd(d: Decomposition) -> VerificationReport:
    """Check ``d`` against the definition of a (K2, K1,n)-URD(v; 1, s)."""
    v, n = d.v, d.n
    out = _Collector()
    r = n + 1

    # one-factor
    try:
        I = np.asarray(d.one_factor, dtype=np.int64).reshape(-1, 2)
    except ValueError:
        out.add(NOT_MATCHING, None, "one-factor is not a list of pairs")
        I = np.zeros((0, 2), dtype=np.int64)
    bad = (I < 0) | (I >= v)
    for row in I[bad.any(axis=1)][:MAX_WITNESSES]:
        out.add(NOT_MATCHING, tuple(int(x) for x in row), "pair label out of range")
    I = I[~bad.any(axis=1)]
    for row in I[I[:, 0] == I[:, 1]]:
        out.add(NOT_MATCHING, tuple(int(x) for x in row), "pair is a loop")
    deg = np.bincount(I.reshape(-1), minlength=v)
    for x in np.flatnonzero(deg != 1):
        out.add(NOT_MATCHING, int(x), f"vertex {x} lies in {deg[x]} matching pairs")

    # star classes
    expected_s = _expected_classes(v, n)
    if expected_s is None or d.s != expected_s:
        out.add(WRONG_COUNT, d.s, f"{d.s} star classes, expected (v-2)(n+1)/(2n) = {expected_s}")

    blk_cls, centers, blk_len, verts, e_c, e_l, e_blk = _flatten(d)
    nblk = len(centers)
    for bi in np.flatnonzero(blk_len != n):
        out.add(MALFORMED, (int(blk_cls[bi]), int(centers[bi])),
                f"star centered at {centers[bi]} has {blk_len[bi]} leaves, expected {n}")
    if isinstance(verts, np.ndarray):
        out_of_range = ((verts < 0) | (verts >= v)).any(axis=1)
        srt = np.sort(verts, axis=1)
        repeated = (np.diff(srt, axis=1) == 0).any(axis=1)
        flat_v = verts.reshape(-1)
    else:
        out_of_range = np.array([any(x < 0 or x >= v for x in b) for b in verts], dtype=bool)
        repeated = np.array([len(set(b)) != len(b) for b in verts], dtype=bool)
        flat_v = np.array([x for b in verts for x in b], dtype=np.int64)
    for bi in np.flatnonzero(out_of_range | repeated):
        why = "label out of range" if out_of_range[bi] else "repeated vertex in star"
        out.add(MALFORMED, (int(blk_cls[bi]), int(centers[bi])), why)

    m = v // r if v % r == 0 else None
    per_class_blocks = np.bincount(blk_cls, minlength=d.s) if nblk else np.zeros(d.s, int)
    for ci in np.flatnonzero(per_class_blocks != m):
        out.add(NON_SPANNING, int(ci), f"class {ci} has {per_class_blocks[ci]} stars, expected {m}")
    flat_c = np.repeat(blk_cls, blk_len + 1)
    ok_lab = (flat_v >= 0) & (flat_v < v)
    counts = np.bincount(flat_c[ok_lab] * v + flat_v[ok_lab], minlength=max(d.s, 1) * v)
    counts = counts.reshape(-1, v)[: d.s]
    for ci, x in zip(*np.nonzero(counts != 1)):
        out.add(NON_SPANNING, (int(ci), int(x)),
                f"vertex {x} appears {counts[ci, x]} times in class {ci}")

    # edge partition of K_v
    ok_e = (e_c >= 0) & (e_c < v) & (e_l >= 0) & (e_l < v) & (e_c != e_l)
    us = np.concatenate([np.minimum(e_c, e_l)[ok_e], I.min(axis=1)])
    xs = np.concatenate([np.maximum(e_c, e_l)[ok_e], I.max(axis=1)])
    keep = us != xs
    us, xs = us[keep], xs[keep]
    cover = np.bincount(us * v + xs, minlength=v * v).reshape(v, v)
    upper = np.triu(np.ones((v, v), dtype=bool), 1)
    for u, x in zip(*np.nonzero(upper & (cover == 0))):
        out.add(UNCOVERED, (int(u), int(x)), f"edge {{{u},{x}}} is not covered")
    for u, x in zip(*np.nonzero(upper & (cover > 1))):
        out.add(DOUBLY, (int(u), int(x)), f"edge {{{u},{x}}} is covered {cover[u, x]} times")

    gap = xs - us
    diff = np.minimum(gap, v - gap)
    observed = np.bincount(diff, minlength=v // 2 + 1)
    census = {
        int(dv): (int(observed[dv]), v if 2 * dv < v else v // 2)
        for dv in range(1, v // 2 + 1)
    }
    return VerificationReport(ok=not out.items, edge_census=census, violations=out.items)


def verify_balanced_array(a, p) -> tuple[bool, Optional[str]]:
    """Re-derive the difference set and check one balanced star array."""
    n, r, v = p.n, p.n + 1, p.v
    universe = {d for d in range(1, (v - 2) // 2 + 1) if d % r}
    seen: dict[int, tuple[int, int]] = {}
    partial_rows = []
    misplaced = []
    for ri, row in enumerate(a.rows, 1):
        if len(row) != n:
            return False, f"row {ri} has {len(row)} cells, expected {n}"
        filled = [c is not None for c in row]
        if not all(filled):
            if ri > a.t1_rows:
                return False, f"row {ri} belongs to T2 but has empty cells"
            partial_rows.append(ri)
            if filled != [j < p.q for j in range(n)]:
                return False, f"row {ri}: filled cells must be exactly columns 1..{p.q}"
        for j, cell in enumerate(row, 1):
            if cell is None:
                continue
            if cell % r != j % r:
                # keep scanning: a moved entry usually displaces another
                misplaced.append(f"(row {ri}, col {j}): {cell} ≢ {j} (mod {r})")
                continue
            if cell in seen:
                return False, f"(row {ri}, col {j}): {cell} repeats (row {seen[cell][0]}, col {seen[cell][1]})"
            if cell not in universe:
                return False, f"(row {ri}, col {j}): {cell} is not in D'"
            seen[cell] = (ri, j)
    if misplaced:
        return False, "; ".join(misplaced[:MAX_WITNESSES])
    if len(partial_rows) > 1:
        return False, f"rows {partial_rows} all have empty cells"
    missing = sorted(universe - set(seen))
    if missing:
        return False, f"differences {missing[:10]} of D' are missing"
    return True, None
