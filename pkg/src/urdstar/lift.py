"""Lift an almost n-star factor on ``g`` points to n-star factors of ``K_v``.

Point ``x`` of ``K_g`` becomes the ``n+1`` vertices ``(n+1)x + i``; the
base factor ``B`` is then developed by adding multiples of ``n+1``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .almost import AlmostStarFactor, ConstructionError, MixedStar
from .core import BACKWARD, Params, Star


@dataclass(frozen=True)
class StarFactor:
    v: int
    stars: tuple[Star, ...]
    kinds: tuple[str, ...] = ()

    def as_array(self) -> np.ndarray:
        return np.array([s.vertices for s in self.stars], dtype=np.int64)


def residue_classes(v: int, n: int) -> list[range]:
    return [range(i, v, n + 1) for i in range(n + 1)]


def lift_pure_star(s: Star, i: int, p: Params) -> Star:
    r = p.n + 1
    return Star((r * s.center + i) % p.v, tuple((r * x + i) % p.v for x in s.leaves))


def lift_prime_star(s: Star, i: int, p: Params) -> Star:
    r = p.n + 1
    leaves = sorted(s.leaves)
    return Star(
        (r * s.center + i) % p.v,
        tuple((r * x + (r - j + i) % r) % p.v for j, x in enumerate(leaves, 1)),
    )


def lift_mixed_star(m: MixedStar, i: int, p: Params) -> Star:
    """Pure leaves lift as in a pure star; the j-th prime leaf (ascending
    label) gets offset ``i + j`` if forward and ``i - j`` if backward."""
    r = p.n + 1
    notes = m.annotations(p.g)
    leaves = [(r * x + i) % p.v for x in m.pure_leaves]
    for j, x in enumerate(sorted(m.prime_leaves), 1):
        sign = -1 if notes[x].direction == BACKWARD else 1
        leaves.append((r * x + (i + sign * j) % r) % p.v)
    return Star((r * m.center + i) % p.v, tuple(leaves))


def _rotation(c: int, leaf: int, i: int, r: int) -> Star:
    # every copy of `leaf` except offset i
    return Star(r * c + i, tuple(r * leaf + (i + a) % r for a in range(1, r)))


def lift_little_star(L: Star, p: Params) -> list[Star]:
    """Expand the little star on ``t`` points into ``t`` n-stars."""
    n, q, t, r = p.n, p.q, p.t, p.n + 1
    c = L.center
    ls = sorted(L.leaves)
    if len(ls) != t - 1:
        raise ConstructionError(f"little star has {len(ls)} leaves, expected {t - 1}")

    if t == 1:
        stars = [Star(r * c, tuple(r * c + a for a in range(1, r)))]
    elif p.odd and t <= q + 2:
        # t-2 rotations, then two closing stars that leave offset q+1 of the
        # last leaf to the second-to-last star
        stars = [_rotation(c, ls[i], i, r) for i in range(t - 2)]
        closing = [r * ls[j] + j for j in range(t - 2)]
        closing += [r * c + a for a in range(t - 1, q + 1)]
        closing.append(r * ls[t - 2] + q + 1)
        closing += [r * c + a for a in range(q + 2, n + 1)]
        stars.append(Star(r * c + t - 2, tuple(closing)))
        stars.append(
            Star(r * c + q + 1, tuple(r * ls[t - 2] + a for a in range(r) if a != q + 1))
        )
    else:
        stars = [_rotation(c, ls[i], i, r) for i in range(t - 1)]
        closing = [r * ls[j] + j for j in range(t - 1)]
        closing += [r * c + a for a in range(t, n + 1)]
        stars.append(Star(r * c + t - 1, tuple(closing)))

    for s in stars:
        if len(s.leaves) != n:
            raise ConstructionError(f"lifted little star {s} has {len(s.leaves)} leaves")
    want = {r * x + a for x in [c] + ls for a in range(r)}
    got = [x for s in stars for x in s.vertices]
    if len(got) != len(set(got)) or set(got) != want:
        raise ConstructionError("lifted little stars do not tile their vertex block")
    return [Star(s.center % p.v, tuple(x % p.v for x in s.leaves)) for s in stars]


def build_base_factor(f: AlmostStarFactor, p: Params) -> StarFactor:
    """The n-star factor ``B`` of ``K_v`` obtained by lifting every component."""
    stars, kinds = [], []
    for s in f.pure_stars:
        for i in range(p.n + 1):
            stars.append(lift_pure_star(s, i, p))
            kinds.append("pure")
    for s in f.prime_stars:
        for i in range(p.n + 1):
            stars.append(lift_prime_star(s, i, p))
            kinds.append("prime")
    if f.mixed_star is not None:
        for i in range(p.n + 1):
            stars.append(lift_mixed_star(f.mixed_star, i, p))
            kinds.append("mixed")
    little = f.little_star
    if little is None and f.isolated_vertex is not None:
        little = Star(f.isolated_vertex, ())
    if little is not None:
        for s in lift_little_star(little, p):
            stars.append(s)
            kinds.append("little")

    seen = np.zeros(p.v, dtype=np.int64)
    for s in stars:
        seen[list(s.vertices)] += 1
    if len(stars) != p.m or not (seen == 1).all():
        raise ConstructionError("lifted stars do not form an n-star factor")
    return StarFactor(p.v, tuple(stars), tuple(kinds))


def _star_size(B: StarFactor) -> int:
    return len(B.stars[0].leaves) + 1


def develop_factor(B: StarFactor, j: int) -> StarFactor:
    """Translate every label of ``B`` by ``(n+1) j`` modulo ``v``."""
    shift = _star_size(B) * j
    return StarFactor(
        B.v,
        tuple(Star((s.center + shift) % B.v, tuple((x + shift) % B.v for x in s.leaves))
              for s in B.stars),
        B.kinds,
    )


def develop_all(B: StarFactor) -> np.ndarray:
    """All ``g`` translates of ``B`` as an array ``(g, v/(n+1), n+1)``."""
    base = B.as_array()
    r = _star_size(B)
    shifts = r * np.arange(B.v // r, dtype=np.int64)
    return (base[None, :, :] + shifts[:, None, None]) % B.v
