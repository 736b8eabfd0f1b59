"""Instance parameters, admissibility and cyclic edge differences.

Vertices are always the integers ``0 .. m-1`` for an ambient size ``m``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional, Sequence, Union

import numpy as np

FORWARD = "forward"
BACKWARD = "backward"
PURE = "pure"
PRIME = "prime"

Direction = Literal["forward", "backward"]
Purity = Literal["pure", "prime"]


class InadmissibleError(ValueError):
    """Raised when ``(n, v)`` violates the existence condition.

    ``failures`` names every congruence that fails, so callers can report
    exactly which divisibility broke.
    """

    def __init__(self, n: int, v: int, failures: tuple[str, ...]):
        self.n = n
        self.v = v
        self.failures = failures
        super().__init__(
            f"v={v} is not admissible for n={n}: "
            + "; ".join(failures)
            + f" (need v = 2(n+1) mod n(n+1), i.e. v = {2 * (n + 1)} mod {n * (n + 1)})"
        )


@dataclass(frozen=True)
class Params:
    n: int
    k_prime: int
    v: int
    g: int
    k: int
    q: int
    mu: int
    w: int
    t: int
    s: int

    @property
    def odd(self) -> bool:
        """True when ``k_prime`` is odd."""
        return self.k_prime % 2 == 1

    @property
    def m(self) -> int:
        """Block count of a star factor on ``v`` vertices."""
        return self.v // (self.n + 1)


@dataclass(frozen=True)
class Star:
    center: int
    leaves: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "leaves", tuple(int(x) for x in self.leaves))
        object.__setattr__(self, "center", int(self.center))
        if len(set(self.leaves)) != len(self.leaves):
            raise ValueError(f"repeated leaf in {self}")
        if self.center in self.leaves:
            raise ValueError(f"center {self.center} is also a leaf")

    @property
    def vertices(self) -> tuple[int, ...]:
        return (self.center,) + self.leaves

    def edges(self) -> list[tuple[int, int]]:
        return [(min(self.center, x), max(self.center, x)) for x in self.leaves]


@dataclass(frozen=True)
class LabeledDifference:
    value: int
    direction: Direction
    purity: Optional[Purity] = None


def check_n(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"n must be an int, got {type(n).__name__}")
    if n < 3 or n % 2 == 0:
        raise ValueError(f"n must be odd and at least 3, got {n}")


def admissibility_failures(n: int, v: int) -> tuple[str, ...]:
    failures = []
    if v % (n + 1):
        failures.append(f"(n+1)={n + 1} does not divide v={v}")
    if (v - 2) % n:
        failures.append(f"n={n} does not divide v-2={v - 2}")
    if not failures and v < 2 * (n + 1):
        failures.append(f"v={v} is below the minimum 2(n+1)={2 * (n + 1)}")
    return tuple(failures)


def derive_params(n: int, v: int) -> Params:
    """Derive every construction parameter for ``(n, v)``.

    Raises :class:`InadmissibleError` unless ``v = 2(n+1) (mod n(n+1))``.
    """
    check_n(n)
    failures = admissibility_failures(n, v)
    if failures:
        raise InadmissibleError(n, v, failures)

    k_prime = (v - 2 * (n + 1)) // (n * (n + 1))
    g = v // (n + 1)
    k = k_prime // 2
    q = (n - 1) // 2
    mu = (g - 1) // 2 if g % 2 else g // 2
    w = (mu + 1) % (n + 1) or n + 1
    t = g % (n + 1)
    s, rem = divmod((v - 2) * (n + 1), 2 * n)
    assert rem == 0
    return Params(n=n, k_prime=k_prime, v=v, g=g, k=k, q=q, mu=mu, w=w, t=t, s=s)


def params_from_k_prime(n: int, k_prime: int) -> Params:
    if k_prime < 0:
        raise ValueError("k' must be nonnegative")
    return derive_params(n, n * (n + 1) * k_prime + 2 * (n + 1))


def enumerate_admissible(n: int, v_max: int) -> list[Params]:
    """All admissible instances with ``v <= v_max``, ascending in ``v``."""
    check_n(n)
    out = []
    v = 2 * (n + 1)
    while v <= v_max:
        out.append(derive_params(n, v))
        v += n * (n + 1)
    return out


def edge_difference(u: int, x: int, m: int) -> LabeledDifference:
    """Cyclic difference of the edge ``{u, x}`` on ``m`` points, ``u < x``.

    A tie at ``m/2`` counts as forward.
    """
    if not 0 <= u < x <= m - 1:
        raise ValueError(f"need 0 <= u < x < m, got u={u}, x={x}, m={m}")
    gap = x - u
    if gap <= m - gap:
        return LabeledDifference(gap, FORWARD)
    return LabeledDifference(m - gap, BACKWARD)


RawBlock = tuple[int, tuple[int, ...]]
StarClasses = Union[np.ndarray, Sequence[Sequence[Union[Star, RawBlock]]]]


def raw_block(b) -> RawBlock:
    if isinstance(b, Star):
        return b.center, b.leaves
    center, leaves = b
    return int(center), tuple(int(x) for x in leaves)


@dataclass(eq=False)
class Decomposition:
    """One perfect matching plus star classes on the vertices ``0..v-1``.

    ``star_classes`` is normally an int array of shape
    ``(s, v/(n+1), n+1)`` whose last axis is ``(center, leaf_1, ..., leaf_n)``.
    A list of lists of :class:`Star` or raw ``(center, leaves)`` pairs is
    also accepted so that malformed input (ragged classes, short or
    self-intersecting stars) can still be represented and reported on.
    """

    v: int
    n: int
    one_factor: np.ndarray
    star_classes: StarClasses

    @property
    def s(self) -> int:
        return len(self.star_classes)

    @property
    def regular(self) -> bool:
        return isinstance(self.star_classes, np.ndarray)

    def raw_classes(self) -> list[list[RawBlock]]:
        if self.regular:
            return [[(int(b[0]), tuple(int(x) for x in b[1:])) for b in cls]
                    for cls in self.star_classes]
        return [[raw_block(b) for b in cls] for cls in self.star_classes]

    def classes(self) -> list[list[Star]]:
        """Star classes as :class:`Star` objects; fails on malformed blocks."""
        return [[Star(c, ls) for c, ls in cls] for cls in self.raw_classes()]

    def matching(self) -> list[tuple[int, int]]:
        return [(int(a), int(b)) for a, b in np.asarray(self.one_factor).reshape(-1, 2)]

    def __eq__(self, other):
        if not isinstance(other, Decomposition):
            return NotImplemented
        return (
            self.v == other.v
            and self.n == other.n
            and self.matching() == other.matching()
            and self.raw_classes() == other.raw_classes()
        )
