"""Exhaustive search for a (K2, K1,n)-URD(v; 1, s) on tiny ``v``.

Independent of the difference-method constructions.  The one-factor is
fixed to ``{2i, 2i+1}`` (any perfect matching can be relabelled to it), and
counting pins down roles: every vertex is the center of a star in exactly
``a = (v-2-s)/(n-1)`` classes and a leaf in the rest.

Two complete searches are interleaved under growing node cutoffs:

* by class: star classes are built one at a time, ordered by the smallest
  edge at vertex 0 they use (so vertex 0's block in each new class is
  pinned), with a seeded random value order;
* by schedule: first choose which vertices are centers in each class
  (center sets in nondecreasing lexicographic order), then attach every
  non-center to a center, most constrained choice first.

Short randomized restarts help the first on instances with many classes
(cutoffs follow the Luby sequence, which is unbounded); the second
settles the ``v = 2(n+1)`` family, where every class is forced to be
centered on a matched pair.  Either search finishing under its cutoff
without a witness has covered its whole space, which proves nonexistence.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .core import Decomposition, check_n

WITNESS = "witness"
NONE = "none"
TIMEOUT = "timeout"

DEFAULT_BUDGET = 10**8
# node cutoffs per unit of the restart sequence
CLASS_CUTOFF = 128
SCHEDULE_CUTOFF = 256
# move lists up to this size are shuffled whole instead of generated lazily
SHUFFLE_LIMIT = 20000

Block = tuple[int, tuple[int, ...]]


@dataclass
class OracleResult:
    status: str
    decomposition: Optional[Decomposition] = None
    nodes: int = 0
    reason: str = ""


class _Cutoff(Exception):
    pass


def _counting_obstruction(n: int, v: int) -> Optional[str]:
    if v < 2 or v % 2:
        return f"v={v} is not even, so K_v has no one-factor"
    if v % (n + 1):
        return f"(n+1)={n + 1} does not divide v={v}, so no n-star factor exists"
    rest = v * (v - 2) // 2
    per_class = n * v // (n + 1)
    if rest % per_class:
        return f"{rest} edges outside the one-factor are not a multiple of {per_class}"
    s = rest // per_class
    if (v - 2 - s) % (n - 1) or not 0 <= (v - 2 - s) // (n - 1) <= s:
        return "vertex degree v-2 cannot split into center and leaf roles"
    return None


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class _Counter:
    def __init__(self, cutoff: int):
        self.cutoff = cutoff
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.cutoff:
            raise _Cutoff


def _search_by_class(n: int, v: int, s: int, roles: int, counter: _Counter,
                     rng: random.Random) -> Optional[list[list[Block]]]:
    full = (1 << v) - 1
    adj = [full & ~(1 << u) & ~(1 << (u ^ 1)) for u in range(v)]
    centers_left = [roles] * v
    classes: list[list[Block]] = []

    def consistent(free: int, R: int) -> bool:
        """Role counting; vertices outside ``free`` have one class fewer left."""
        exhausted = 0
        for x in range(v):
            if centers_left[x] == 0:
                exhausted |= 1 << x
        for u in range(v):
            a = centers_left[u]
            rem = R if free >> u & 1 else R - 1
            if a > rem:
                return False
            nb = adj[u]
            # edges to exhausted vertices need u as their center
            if (nb & exhausted).bit_count() > n * a:
                return False
            # u's leaf roles need distinct centers among its neighbours
            if (nb & ~exhausted).bit_count() < rem - a:
                return False
        return True

    def options_left(free: int, R: int) -> bool:
        """Every free vertex of the current class can still be placed."""
        can_center = 0
        for x in range(v):
            if centers_left[x] > 0:
                can_center |= 1 << x
        for x in _bits(free):
            if centers_left[x] > 0 and (adj[x] & free).bit_count() >= n:
                continue
            if centers_left[x] < R and adj[x] & free & can_center:
                continue
            return False
        return True

    def place(c: int, leaves: tuple[int, ...], free: int, stars: list, R: int) -> bool:
        centers_left[c] -= 1
        for x in leaves:
            adj[c] &= ~(1 << x)
            adj[x] &= ~(1 << c)
        stars.append((c, leaves))
        rest = free & ~(1 << c)
        for x in leaves:
            rest &= ~(1 << x)
        ok = options_left(rest, R) and consistent(rest, R) and fill(rest, stars, R)
        if not ok:
            stars.pop()
            centers_left[c] += 1
            for x in leaves:
                adj[c] |= 1 << x
                adj[x] |= 1 << c
        return ok

    def fill(free: int, stars: list, R: int) -> bool:
        # R counts the classes left, the current one included
        if not free:
            classes.append(list(stars))
            if build(R - 1):
                return True
            classes.pop()
            return False
        counter.tick()
        u = (free & -free).bit_length() - 1
        rest = free & ~(1 << u)
        leafable = 0
        for x in _bits(rest):
            if centers_left[x] < R:
                leafable |= 1 << x
        # vertex 0 opens every class and must take its smallest uncovered edge
        required = (adj[0] & -adj[0]).bit_length() - 1 if u == 0 else -1

        def as_center() -> Iterator[Block]:
            pool = adj[u] & rest & leafable
            if required >= 0:
                if not pool >> required & 1:
                    return
                pool &= ~(1 << required)
            pool_list = shuffled(pool)
            for others in combinations(pool_list, n - 1 if required >= 0 else n):
                yield u, (others + (required,)) if required >= 0 else others

        def as_leaf() -> Iterator[Block]:
            for c in shuffled(adj[u] & rest):
                if centers_left[c] == 0 or (required >= 0 and c != required):
                    continue
                for others in combinations(shuffled(adj[c] & rest & leafable), n - 1):
                    yield c, (u,) + others

        kinds = []
        if centers_left[u] > 0:
            kinds.append(as_center)
        if centers_left[u] < R:
            kinds.append(as_leaf)
        rng.shuffle(kinds)
        moves: Iterable[Block] = (mv for kind in kinds for mv in kind())
        if comb(rest.bit_count(), n) <= SHUFFLE_LIMIT:
            # small enough to shuffle as a whole, which spreads the restarts better
            moves = list(moves)
            rng.shuffle(moves)
        return any(place(c, ls, free, stars, R) for c, ls in moves)

    def shuffled(mask: int) -> list[int]:
        out = _bits(mask)
        rng.shuffle(out)
        return out

    def build(R: int) -> bool:
        if R == 0:
            return not any(adj)
        return fill(full, [], R)

    return classes if build(s) else None


def _combinations_from(items: Sequence[int], k: int, start: tuple) -> Iterator[tuple]:
    """k-subsets of sorted ``items`` that are lexicographically >= ``start``."""
    def rec(lo: int, prefix: tuple, tight: bool):
        if len(prefix) == k:
            yield prefix
            return
        for idx in range(lo, len(items) - (k - len(prefix)) + 1):
            x = items[idx]
            if tight and x < start[len(prefix)]:
                continue
            yield from rec(idx + 1, prefix + (x,), tight and x == start[len(prefix)])
    yield from rec(0, (), bool(start))


def _attach(n: int, v: int, C: list[int], counter: _Counter) -> Optional[dict]:
    """Attach every non-center to a center of its class, covering each edge once."""
    s = len(C)
    full = (1 << v) - 1
    adj = [full & ~(1 << u) & ~(1 << (u ^ 1)) for u in range(v)]
    cap = [[n if C[f] >> c & 1 else 0 for c in range(v)] for f in range(s)]
    open_slots = [full & ~C[f] for f in range(s)]
    with_room = list(C)
    chosen: dict[tuple[int, int], int] = {}

    def most_constrained():
        """Moves for the tightest slot or edge; None at a dead end."""
        best: Optional[list] = None
        for f in range(s):
            o = open_slots[f]
            if not o:
                continue
            for c in _bits(with_room[f]):
                if (o & adj[c]).bit_count() < cap[f][c]:
                    return None
            for u in _bits(o):
                dom = with_room[f] & adj[u]
                if not dom:
                    return None
                if best is None or dom.bit_count() < len(best):
                    best = [(f, u, c) for c in _bits(dom)]
                    if len(best) == 1:
                        return best
        for u in range(v):
            for x in _bits(adj[u] >> (u + 1) << (u + 1)):
                opts = []
                for f in range(s):
                    if C[f] >> u & 1:
                        if open_slots[f] >> x & 1 and cap[f][u]:
                            opts.append((f, x, u))
                    elif C[f] >> x & 1 and open_slots[f] >> u & 1 and cap[f][x]:
                        opts.append((f, u, x))
                if not opts:
                    return None
                if best is None or len(opts) < len(best):
                    best = opts
                    if len(opts) == 1:
                        return best
        return best if best is not None else []

    def step(f: int, u: int, c: int, sign: int) -> None:
        if sign > 0:
            adj[u] &= ~(1 << c)
            adj[c] &= ~(1 << u)
            open_slots[f] &= ~(1 << u)
            cap[f][c] -= 1
            if cap[f][c] == 0:
                with_room[f] &= ~(1 << c)
            chosen[f, u] = c
        else:
            adj[u] |= 1 << c
            adj[c] |= 1 << u
            open_slots[f] |= 1 << u
            cap[f][c] += 1
            with_room[f] |= 1 << c
            del chosen[f, u]

    def dfs() -> bool:
        counter.tick()
        moves = most_constrained()
        if moves is None:
            return False
        if not moves:
            return True
        for mv in moves:
            step(*mv, 1)
            if dfs():
                return True
            step(*mv, -1)
        return False

    return dict(chosen) if dfs() else None


def _search_by_schedule(n: int, v: int, s: int, roles: int,
                        counter: _Counter) -> Optional[list[list[Block]]]:
    m = v // (n + 1)
    left = [roles] * v
    # apart[u][x]: some class already has exactly one of u, x as center
    apart = [[x == u or x == u ^ 1 for x in range(v)] for u in range(v)]
    C: list[int] = []

    def stuck(R: int) -> bool:
        for u in range(v):
            for x in range(u + 1, v):
                if apart[u][x]:
                    continue
                if left[u] == left[x] == 0 or left[u] == left[x] == R:
                    return True
        return False

    def schedule(R: int, last: tuple) -> Optional[dict]:
        if R == 0:
            return _attach(n, v, C, counter)
        eligible = [u for u in range(v) if left[u] > 0]
        must = [u for u in range(v) if left[u] == R]
        for combo in _combinations_from(eligible, m, last):
            counter.tick()
            mask = sum(1 << u for u in combo)
            if any(not mask >> u & 1 for u in must):
                continue
            for u in combo:
                left[u] -= 1
            split = [(u, x) for u in range(v) for x in range(u + 1, v)
                     if not apart[u][x] and (mask >> u & 1) != (mask >> x & 1)]
            for u, x in split:
                apart[u][x] = True
            if not stuck(R - 1):
                C.append(mask)
                found = schedule(R - 1, combo)
                if found is not None:
                    return found
                C.pop()
            for u, x in split:
                apart[u][x] = False
            for u in combo:
                left[u] += 1
        return None

    chosen = schedule(s, ())
    if chosen is None:
        return None
    classes = []
    for f, mask in enumerate(C):
        leaves: dict[int, list[int]] = {c: [] for c in _bits(mask)}
        for (g, u), c in chosen.items():
            if g == f:
                leaves[c].append(u)
        classes.append([(c, tuple(ls)) for c, ls in leaves.items()])
    return classes


def _luby(i: int) -> int:
    """i-th term (from 1) of the restart sequence 1, 1, 2, 1, 1, 2, 4, ..."""
    k = 1
    while (1 << k) - 1 < i:
        k += 1
    if i == (1 << k) - 1:
        return 1 << (k - 1)
    return _luby(i - (1 << (k - 1)) + 1)


def brute_force_urd(n: int, v: int, budget: int = DEFAULT_BUDGET, seed: int = 0) -> OracleResult:
    """Search for a URD; ``timeout`` means the node budget ran out first."""
    check_n(n)
    why = _counting_obstruction(n, v)
    if why:
        return OracleResult(NONE, reason=why)

    s = (v * (v - 2) // 2) // (n * v // (n + 1))
    roles = (v - 2 - s) // (n - 1)
    rng = random.Random(seed)
    spent = 0
    found = None
    longest = 0
    i = 0
    while found is None:
        i += 1
        step = _luby(i)
        runs = []
        if step > longest:
            # the schedule search is deterministic, so rerun it only on a longer cutoff
            longest = step
            runs.append(("schedule", SCHEDULE_CUTOFF * step))
        runs.append(("class", CLASS_CUTOFF * step))
        for strategy, cutoff in runs:
            counter = _Counter(min(cutoff, budget - spent))
            try:
                if strategy == "class":
                    found = _search_by_class(n, v, s, roles, counter, rng)
                else:
                    found = _search_by_schedule(n, v, s, roles, counter)
            except _Cutoff:
                spent += counter.cutoff
                if spent >= budget:
                    return OracleResult(TIMEOUT, nodes=spent, reason=f"node budget {budget} exhausted")
                continue
            spent += counter.nodes
            if found is None:
                return OracleResult(NONE, nodes=spent, reason=f"search by {strategy} exhausted")
            break

    one_factor = np.array([(2 * i, 2 * i + 1) for i in range(v // 2)], dtype=np.int64)
    star_classes = np.array(
        [[(c,) + tuple(sorted(ls)) for c, ls in sorted(cls)] for cls in found],
        dtype=np.int64,
    )
    d = Decomposition(v=v, n=n, one_factor=one_factor, star_classes=star_classes)
    return OracleResult(WITNESS, decomposition=d, nodes=spent)
