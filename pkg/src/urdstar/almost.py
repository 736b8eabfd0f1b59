"""Almost n-star factors on ``g`` points.

An almost n-star factor of ``K_g`` is a family of vertex-disjoint n-stars
covering all but ``t = g mod (n+1)`` points, which instead carry a
``(t-1)``-star (the little star; a lone vertex when ``t == 1``).  Edges are
labelled by their cyclic difference: every difference appears exactly once
on a *pure* edge and at most once more on a *prime* edge.

Five regimes are covered, selected by ``k'``:

* ``odd-base``   ``k' = 1``
* ``odd-small``  ``k'`` odd, ``1 <= k <= q``
* ``odd-large``  ``k'`` odd, ``k >= q + 1``
* ``even-base``  ``k' = 2``
* ``even-large`` ``k'`` even, ``k >= 2``
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .core import (
    BACKWARD,
    FORWARD,
    PRIME,
    PURE,
    LabeledDifference,
    Params,
    Star,
    edge_difference,
)


class ConstructionError(RuntimeError):
    """An internal invariant of a construction step failed."""


@dataclass(frozen=True)
class MixedStar:
    """The one star mixing ``q+1`` pure edges with ``q`` prime edges."""

    center: int
    pure_leaves: tuple[int, ...]
    prime_leaves: tuple[int, ...]

    @property
    def star(self) -> Star:
        return Star(self.center, self.pure_leaves + self.prime_leaves)

    def annotations(self, g: int) -> dict[int, LabeledDifference]:
        out = {}
        for leaf in self.pure_leaves + self.prime_leaves:
            d = edge_difference(min(self.center, leaf), max(self.center, leaf), g)
            purity = PURE if leaf in self.pure_leaves else PRIME
            out[leaf] = LabeledDifference(d.value, d.direction, purity)
        return out


@dataclass(frozen=True)
class DifferenceLedger:
    D: frozenset = frozenset()
    D0: frozenset = frozenset()
    D1: frozenset = frozenset()
    D2: frozenset = frozenset()
    Dm_pure: frozenset = frozenset()
    Dm_prime: frozenset = frozenset()
    prime_used: frozenset = frozenset()
    A1: frozenset = frozenset()
    A2: frozenset = frozenset()
    B1: frozenset = frozenset()
    B2: frozenset = frozenset()
    rho1: Optional[int] = None
    rho2: Optional[int] = None
    z: Optional[int] = None
    z1: Optional[int] = None
    z2: Optional[int] = None


@dataclass(frozen=True)
class AlmostStarFactor:
    g: int
    regime: str
    pure_stars: tuple[Star, ...]
    prime_stars: tuple[Star, ...] = ()
    mixed_star: Optional[MixedStar] = None
    little_star: Optional[Star] = None
    isolated_vertex: Optional[int] = None
    ledger: DifferenceLedger = field(default_factory=DifferenceLedger)

    def components(self) -> list[tuple[int, ...]]:
        comps = [s.vertices for s in self.pure_stars + self.prime_stars]
        if self.mixed_star is not None:
            comps.append(self.mixed_star.star.vertices)
        if self.little_star is not None:
            comps.append(self.little_star.vertices)
        if self.isolated_vertex is not None:
            comps.append((self.isolated_vertex,))
        return comps

    def labeled_edges(self) -> list[tuple[int, int, str]]:
        """``(center, leaf, purity)`` for every edge, purity as constructed."""
        out = [(s.center, x, PURE) for s in self.pure_stars for x in s.leaves]
        out += [(s.center, x, PRIME) for s in self.prime_stars for x in s.leaves]
        if self.little_star is not None:
            out += [(self.little_star.center, x, PRIME) for x in self.little_star.leaves]
        m = self.mixed_star
        if m is not None:
            out += [(m.center, x, PURE) for x in m.pure_leaves]
            out += [(m.center, x, PRIME) for x in m.prime_leaves]
        return out


def difference_range(p: Params) -> range:
    """Differences that must appear on pure edges: ``1..mu`` or ``1..mu-1``."""
    return range(1, p.mu + 1) if p.odd else range(1, p.mu)


def _pure_block(p: Params) -> list[Star]:
    # centers 0..m-1 with consecutive leaf runs; uses exactly the labels 0..mu-w
    n = p.n
    count = (p.mu + 1 - p.w) // (n + 1)
    stars = []
    for i in range(1, count + 1):
        j = (p.mu - p.w) - n * (i - 1)
        stars.append(Star(i - 1, tuple(range(j, j - n, -1))))
    return stars


def _differences(stars: Iterable[Star]) -> set[int]:
    return {abs(x - s.center) for s in stars for x in s.leaves}


def _take(unused: set[int], labels: Iterable[int]) -> None:
    for x in labels:
        if x not in unused:
            raise ConstructionError(f"vertex {x} already used")
        unused.remove(x)


def build_greedy_tail(
    unused: Iterable[int], p: Params
) -> tuple[Optional[Star], Optional[int], list[Star]]:
    """Little star (or isolated vertex) and prime stars on the leftover labels.

    Smallest remaining label is always the center; leaves are the largest
    remaining labels, listed in descending order.
    """
    pool = sorted(unused)
    n, t = p.n, p.t
    if len(pool) % (n + 1) != t:
        raise ConstructionError(
            f"{len(pool)} leftover vertices, expected t={t} mod {n + 1}"
        )
    little = isolated = None
    if t == 1:
        isolated = pool.pop()
    elif t >= 2:
        center = pool.pop(0)
        leaves = pool[-(t - 1):][::-1]
        del pool[-(t - 1):]
        little = Star(center, tuple(leaves))
    primes = []
    while pool:
        center = pool.pop(0)
        leaves = pool[-n:][::-1]
        del pool[-n:]
        primes.append(Star(center, tuple(leaves)))
    return little, isolated, primes


def _tail_ledger_diffs(little, primes) -> frozenset:
    stars = list(primes) + ([little] if little is not None else [])
    return frozenset(_differences(stars))


def _odd_base(p: Params) -> AlmostStarFactor:
    q = p.q
    m = MixedStar(
        0, tuple(range(q + 1, 0, -1)), tuple(range(q + 2, 2 * q + 2))
    )
    prime_d = frozenset(a.value for x, a in m.annotations(p.g).items() if x in m.prime_leaves)
    ledger = DifferenceLedger(
        D=frozenset(range(1, q + 2)),
        Dm_pure=frozenset(range(1, q + 2)),
        Dm_prime=prime_d,
        prime_used=prime_d,
    )
    return AlmostStarFactor(
        g=p.g, regime="odd-base", pure_stars=(), mixed_star=m,
        isolated_vertex=2 * q + 2, ledger=ledger,
    )


def _odd_small(p: Params) -> AlmostStarFactor:
    n, q, k, mu, w, g = p.n, p.q, p.k, p.mu, p.w, p.g
    if w != q + 2 - k:
        raise ConstructionError(f"w={w} disagrees with q+2-k={q + 2 - k}")
    pure = _pure_block(p)
    if len(pure) != k:
        raise ConstructionError("pure block size differs from k")
    unused = set(range(g))
    for s in pure:
        _take(unused, s.vertices)

    A1 = [mu - d for d in range(0, w)]
    A2 = [(n + 1) * d for d in range(1, k)]
    B1 = [mu - d for d in range(0, w - 1)]
    B2 = [mu - w - d for d in range(0, q - (w - 1))]
    c = mu - w + 1
    pure_lengths = sorted(A1 + A2, reverse=True)
    prime_lengths = sorted(B1 + B2, reverse=True)
    pure_leaves = tuple(c + d for d in pure_lengths)
    prime_leaves = tuple(c + g - d if d in B1 else c + d for d in prime_lengths)
    m = MixedStar(c, pure_leaves, prime_leaves)
    _take(unused, m.star.vertices)

    little, isolated, primes = build_greedy_tail(unused, p)
    D1 = frozenset(_differences(pure))
    ledger = DifferenceLedger(
        D=frozenset(range(1, mu + 1)),
        D1=D1,
        Dm_pure=frozenset(A1 + A2),
        Dm_prime=frozenset(B1 + B2),
        prime_used=_tail_ledger_diffs(little, primes),
        A1=frozenset(A1), A2=frozenset(A2), B1=frozenset(B1), B2=frozenset(B2),
        rho1=c,
    )
    return AlmostStarFactor(
        g=g, regime="odd-small", pure_stars=tuple(pure), prime_stars=tuple(primes),
        mixed_star=m, little_star=little, isolated_vertex=isolated, ledger=ledger,
    )


def _odd_large(p: Params) -> AlmostStarFactor:
    n, q, mu, g = p.n, p.q, p.mu, p.g
    p1 = _pure_block(p)
    unused = set(range(g))
    for s in p1:
        _take(unused, s.vertices)
    D = frozenset(range(1, mu + 1))
    D1 = frozenset(_differences(p1))
    rest = sorted(D - D1, reverse=True)

    p0 = []
    z = None
    if len(rest) >= n + q + 1:
        lengths, rest = rest[:n], rest[n:]
        if lengths[0] != mu:
            raise ConstructionError("P0 must contain the edge {mu, 2mu}")
        p0 = [Star(mu, tuple(mu + d for d in lengths))]
        _take(unused, p0[0].vertices)
        z = lengths[-1]
    D0 = frozenset(_differences(p0))

    rho1 = min(unused)
    m_pure, rest = rest[: q + 1], rest[q + 1:]
    pure_leaves = tuple(rho1 + d for d in m_pure)
    _take(unused, (rho1,) + pure_leaves)
    prime_leaves = tuple(sorted(unused)[-q:][::-1])
    _take(unused, prime_leaves)
    m = MixedStar(rho1, pure_leaves, prime_leaves)
    prime_d = frozenset(x - rho1 for x in prime_leaves)

    if len(rest) % n:
        raise ConstructionError(f"|D2|={len(rest)} is not a multiple of n")
    D2 = frozenset(rest)
    p2 = []
    rho2 = min(unused) if rest else None
    while rest:
        lengths, rest = rest[:n], rest[n:]
        center = min(unused)
        star = Star(center, tuple(center + d for d in lengths))
        _take(unused, star.vertices)
        p2.append(star)

    little, isolated, primes = build_greedy_tail(unused, p)
    ledger = DifferenceLedger(
        D=D, D0=D0, D1=D1, D2=D2,
        Dm_pure=frozenset(m_pure), Dm_prime=prime_d,
        prime_used=_tail_ledger_diffs(little, primes),
        rho1=rho1, rho2=rho2, z=z,
        z1=m_pure[-1], z2=max(D2) if D2 else None,
    )
    return AlmostStarFactor(
        g=g, regime="odd-large", pure_stars=tuple(p1 + p0 + p2),
        prime_stars=tuple(primes), mixed_star=m, little_star=little,
        isolated_vertex=isolated, ledger=ledger,
    )


def _even_base(p: Params) -> AlmostStarFactor:
    n = p.n
    pure = Star(0, tuple(range(n, 0, -1)))
    prime = Star(n + 1, tuple(range(2 * n + 1, n + 1, -1)))
    D = frozenset(range(1, n + 1))
    return AlmostStarFactor(
        g=p.g, regime="even-base", pure_stars=(pure,), prime_stars=(prime,),
        ledger=DifferenceLedger(D=D, D1=D, prime_used=D),
    )


def _even_large(p: Params) -> AlmostStarFactor:
    n, mu, g = p.n, p.mu, p.g
    p1 = _pure_block(p)
    unused = set(range(g))
    for s in p1:
        _take(unused, s.vertices)
    D = frozenset(range(1, mu))
    D1 = frozenset(_differences(p1))
    rest = sorted(D - D1, reverse=True)

    lengths, rest = rest[:n], rest[n:]
    p0 = Star(mu, tuple(mu + d for d in lengths))
    _take(unused, p0.vertices)
    D0 = frozenset(lengths)

    D2 = frozenset(rest)
    p2 = []
    while rest:
        lengths, rest = rest[:n], rest[n:]
        center = min(x for x in unused if x > mu)
        star = Star(center, tuple(center + d for d in lengths))
        _take(unused, star.vertices)
        p2.append(star)

    little, isolated, primes = build_greedy_tail(unused, p)
    ledger = DifferenceLedger(
        D=D, D0=D0, D1=D1, D2=D2,
        prime_used=_tail_ledger_diffs(little, primes),
        z1=min(D0), z2=max(D2) if D2 else None,
    )
    return AlmostStarFactor(
        g=g, regime="even-large", pure_stars=tuple(p1 + [p0] + p2),
        prime_stars=tuple(primes), little_star=little, isolated_vertex=isolated,
        ledger=ledger,
    )


def build_almost_factor(p: Params) -> AlmostStarFactor:
    """Canonical almost n-star factor on ``g = v/(n+1)`` points (``k' >= 1``)."""
    if p.k_prime == 0:
        raise ValueError("k'=0 has no almost factor; use the base case")
    if p.odd:
        if p.k == 0:
            return _odd_base(p)
        if p.k <= p.q:
            return _odd_small(p)
        return _odd_large(p)
    if p.k == 1:
        return _even_base(p)
    return _even_large(p)


_MIXED_BACKWARD = {
    "odd-base": lambda p: p.q,
    "odd-small": lambda p: p.w - 1,
    "odd-large": lambda p: 0,
}


def check_almost_factor(f: AlmostStarFactor, p: Params) -> list[str]:
    """Recheck every property of ``f`` from raw edges; return the violations."""
    report = []
    g, n, q, t = p.g, p.n, p.q, p.t
    if f.g != g:
        report.append(f"factor has g={f.g}, params say g={g}")

    labels = Counter(x for comp in f.components() for x in comp)
    missing = sorted(set(range(g)) - set(labels))
    extra = sorted(x for x, c in labels.items() if c > 1 or not 0 <= x < g)
    if missing:
        report.append(f"vertex partition: uncovered vertices {missing}")
    if extra:
        report.append(f"vertex partition: repeated or out-of-range vertices {extra}")

    for s in f.pure_stars + f.prime_stars:
        if len(s.leaves) != n:
            report.append(f"star {s} has {len(s.leaves)} leaves, expected {n}")
    if t == 0 and (f.little_star is not None or f.isolated_vertex is not None):
        report.append("t=0 but a little star or isolated vertex is present")
    if t == 1 and f.isolated_vertex is None:
        report.append("t=1 but no isolated vertex")
    if t >= 2:
        if f.little_star is None:
            report.append(f"t={t} but no little star")
        elif len(f.little_star.leaves) != t - 1:
            report.append(f"little star has {len(f.little_star.leaves)} leaves, expected {t - 1}")

    drange = set(difference_range(p))
    pure_count: Counter = Counter()
    total: Counter = Counter()
    prime_count: Counter = Counter()
    mixed_dirs = []
    for c, x, purity in f.labeled_edges():
        if not (0 <= c < g and 0 <= x < g) or c == x:
            continue
        d = edge_difference(min(c, x), max(c, x), g)
        total[d.value] += 1
        if d.value not in drange:
            report.append(f"edge {{{c},{x}}} has difference {d.value} outside {min(drange)}..{max(drange)}")
        if purity == PURE:
            pure_count[d.value] += 1
            if d.direction != FORWARD:
                report.append(f"pure edge {{{c},{x}}} is backward")
        else:
            prime_count[d.value] += 1
            in_mixed = f.mixed_star is not None and c == f.mixed_star.center
            if in_mixed:
                mixed_dirs.append(d.direction)
            elif d.direction != FORWARD:
                report.append(f"prime edge {{{c},{x}}} is backward")

    for d in sorted(drange):
        if pure_count[d] == 0:
            report.append(f"difference {d} not covered by a forward pure edge")
        elif pure_count[d] > 1:
            report.append(f"pure difference {d} used {pure_count[d]} times")
    for d, c in sorted(total.items()):
        if c > 2:
            report.append(f"multiplicity > 2: difference {d} appears {c} times")
    for d, c in sorted(prime_count.items()):
        if c > 1:
            report.append(f"prime difference {d} repeated {c} times")

    m = f.mixed_star
    if f.regime in _MIXED_BACKWARD:
        if m is None:
            report.append("mixed star missing")
        else:
            if len(m.pure_leaves) != q + 1:
                report.append(f"mixed star has {len(m.pure_leaves)} pure edges, expected {q + 1}")
            if len(m.prime_leaves) != q:
                report.append(f"mixed star has {len(m.prime_leaves)} prime edges, expected {q}")
            want = _MIXED_BACKWARD[f.regime](p)
            got = mixed_dirs.count(BACKWARD)
            if got != want or mixed_dirs.count(FORWARD) != q - want:
                report.append(
                    f"mixed star direction split: {got} backward/"
                    f"{mixed_dirs.count(FORWARD)} forward, expected {want}/{q - want}"
                )
    elif m is not None:
        report.append(f"regime {f.regime} must not have a mixed star")
    return report
