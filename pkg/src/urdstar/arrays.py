"""Balanced star arrays, Part II factors and full URD assembly.

For every residue class ``V_i`` (labels ``= i mod (n+1)``) a balanced star
array records, column by column, which differences ``d`` (with
``d != 0 mod (n+1)``) are already covered from ``V_i`` by the lifted base
factor.  Column ``j`` only holds differences ``= j (mod n+1)``.  Rows that
are still free (``T2``) each generate one more star factor by development.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .almost import AlmostStarFactor, ConstructionError, build_almost_factor
from .core import Decomposition, Params, derive_params
from .lift import build_base_factor, develop_all

Cell = Optional[int]
Row = tuple[Cell, ...]


class ArrayImbalanceError(ConstructionError):
    """Leftover differences cannot be arranged into full rows."""


@dataclass(frozen=True)
class BalancedStarArray:
    residue: int
    n: int
    rows: tuple[Row, ...]
    t1_rows: int
    full_diff_set: frozenset

    @property
    def t1(self) -> tuple[Row, ...]:
        return self.rows[: self.t1_rows]

    @property
    def t2(self) -> tuple[Row, ...]:
        return self.rows[self.t1_rows:]

    def entries(self) -> list[int]:
        return [c for row in self.rows for c in row if c is not None]


def build_difference_universe(p: Params) -> frozenset:
    """Differences ``1..(v-2)/2`` that are not multiples of ``n+1``.

    ``v/2`` itself belongs to the one-factor and is excluded.
    """
    r = p.n + 1
    return frozenset(d for d in range(1, (p.v - 2) // 2 + 1) if d % r)


def _credit(center: int, leaf: int, p: Params) -> tuple[int, int]:
    """(residue class, difference) an edge is charged to."""
    gap = (leaf - center) % p.v
    if 2 * gap == p.v:
        raise ConstructionError(f"edge {{{center},{leaf}}} has the one-factor difference")
    if 2 * gap < p.v:
        return center % (p.n + 1), gap
    return leaf % (p.n + 1), p.v - gap


def record_part1_differences(p: Params, almost: AlmostStarFactor) -> list[list[Row]]:
    """T1 rows for each residue class, from the lifted base factor.

    Prime and little-star lifts give full rows; the prime edges of the
    ``n+1`` mixed-star lifts are pooled per class into one row with
    columns ``1..q`` filled (backward leaves land in another class).
    """
    n, r = p.n, p.n + 1
    B = build_base_factor(almost, p)
    tables: list[list[Row]] = [[] for _ in range(r)]
    mixed: list[dict[int, int]] = [{} for _ in range(r)]

    for star, kind in zip(B.stars, B.kinds):
        groups: dict[int, dict[int, int]] = {}
        for leaf in star.leaves:
            cls, d = _credit(star.center, leaf, p)
            if d % r == 0:
                if kind in ("pure", "mixed"):
                    continue
                raise ConstructionError(f"{kind} edge {{{star.center},{leaf}}} has pure difference {d}")
            if kind == "pure":
                raise ConstructionError(f"pure edge {{{star.center},{leaf}}} has difference {d}")
            target = mixed[cls] if kind == "mixed" else groups.setdefault(cls, {})
            col = d % r
            if col in target:
                raise ConstructionError(f"column {col} of T_{cls} filled twice")
            target[col] = d
        for cls, cells in groups.items():
            tables[cls].append(tuple(cells.get(j) for j in range(1, r)))

    for cls in range(r):
        if mixed[cls]:
            tables[cls].append(tuple(mixed[cls].get(j) for j in range(1, r)))
    return tables


def complete_arrays(partial: list[list[Row]], p: Params) -> list[BalancedStarArray]:
    """Fill T2 with the uncovered differences, smallest first per column."""
    n, r = p.n, p.n + 1
    universe = build_difference_universe(p)
    out = []
    for i, t1 in enumerate(partial):
        used = [c for row in t1 for c in row if c is not None]
        if len(set(used)) != len(used) or not set(used) <= universe:
            raise ConstructionError(f"T1_{i} entries are repeated or outside D'")
        free = sorted(universe - set(used))
        columns = [[d for d in free if d % r == j] for j in range(1, r)]
        sizes = {len(col) for col in columns}
        if len(sizes) != 1:
            raise ArrayImbalanceError(
                f"T_{i}: leftover column sizes {[len(c) for c in columns]} differ"
            )
        t2 = [tuple(row) for row in zip(*columns)]
        out.append(BalancedStarArray(i, n, tuple(t1) + tuple(t2), len(t1), universe))
    return out


def part2_factors(arrays: list[BalancedStarArray], p: Params) -> np.ndarray:
    """One developed star factor per T2 row, shape ``(rows, v/(n+1), n+1)``."""
    r = p.n + 1
    bases = [
        [a.residue] + [a.residue + d for d in row]
        for a in arrays
        for row in a.t2
    ]
    if not bases:
        return np.zeros((0, p.m, r), dtype=np.int64)
    base = np.array(bases, dtype=np.int64)
    shifts = r * np.arange(p.m, dtype=np.int64)
    return (base[:, None, :] + shifts[None, :, None]) % p.v


def half_difference_matching(v: int) -> np.ndarray:
    half = v // 2
    return np.stack([np.arange(half), np.arange(half) + half], axis=1).astype(np.int64)


def base_case(p: Params) -> Decomposition:
    """The ``v = 2(n+1)`` decomposition: ``n+1`` shifted pairs of stars."""
    n, r, v = p.n, p.n + 1, p.v
    if v != 2 * r:
        raise ValueError(f"base case needs v=2(n+1)={2 * r}, got v={v}")
    block = np.arange(r, dtype=np.int64)
    classes = np.array(
        [[(block + i) % v, (block + r + i) % v] for i in range(r)], dtype=np.int64
    )
    return Decomposition(v=v, n=n, one_factor=half_difference_matching(v), star_classes=classes)


def build_arrays(p: Params, almost: Optional[AlmostStarFactor] = None) -> list[BalancedStarArray]:
    almost = almost or build_almost_factor(p)
    return complete_arrays(record_part1_differences(p, almost), p)


def construct_urd(n: int, v: int) -> Decomposition:
    """A (K2, K1,n)-URD(v; 1, s); raises InadmissibleError for bad ``v``."""
    p = derive_params(n, v)
    if p.k_prime == 0:
        return base_case(p)
    almost = build_almost_factor(p)
    part1 = develop_all(build_base_factor(almost, p))
    part2 = part2_factors(build_arrays(p, almost), p)
    classes = np.concatenate([part1, part2], axis=0)
    if len(classes) != p.s:
        raise ConstructionError(f"built {len(classes)} star classes, expected s={p.s}")
    return Decomposition(v=v, n=n, one_factor=half_difference_matching(v), star_classes=classes)
