import pytest

from urdstar.almost import MixedStar, build_almost_factor
from urdstar.core import Star, params_from_k_prime
from urdstar.lift import (
    StarFactor, build_base_factor, develop_all, develop_factor, lift_little_star,
    lift_mixed_star, lift_prime_star, lift_pure_star,
)


def _as_set(s: Star):
    return s.center, frozenset(s.leaves)


@pytest.mark.parametrize("star,n,kp,i,expected", [
    (Star(0, (3, 2, 1)), 3, 1, 1, Star(1, (13, 9, 5))),
    (Star(0, (3, 2, 1)), 3, 1, 0, Star(0, (12, 8, 4))),
    (Star(0, (5, 4, 3, 2, 1)), 5, 1, 2, Star(2, (32, 26, 20, 14, 8))),
])
def test_lift_pure_star(star, n, kp, i, expected):
    assert lift_pure_star(star, i, params_from_k_prime(n, kp)) == expected


@pytest.mark.parametrize("i,expected", [
    (0, Star(16, (23, 26, 29))),
    (1, Star(17, (20, 27, 30))),
])
def test_lift_prime_star(i, expected):
    p = params_from_k_prime(3, 2)
    assert p.v == 32
    assert lift_prime_star(Star(4, (5, 6, 7)), i, p) == expected


def test_lift_prime_star_ignores_leaf_order():
    p = params_from_k_prime(3, 2)
    a = lift_prime_star(Star(4, (5, 6, 7)), 1, p)
    b = lift_prime_star(Star(4, (7, 6, 5)), 1, p)
    assert _as_set(a) == _as_set(b)


@pytest.mark.parametrize("i,expected", [
    (0, (0, {6, 12, 18, 29, 34})),
    (1, (1, {7, 13, 19, 24, 35})),
])
def test_lift_mixed_star_backward_primes(i, expected):
    p = params_from_k_prime(5, 1)
    m = MixedStar(0, (3, 2, 1), (4, 5))
    assert _as_set(lift_mixed_star(m, i, p)) == (expected[0], frozenset(expected[1]))


def test_lift_mixed_star_forward_primes():
    # n=3, k'=5: mixed star (8; 16, 12 | 15') with a forward prime leaf
    p = params_from_k_prime(3, 5)
    m = build_almost_factor(p).mixed_star
    assert m == MixedStar(8, (16, 12), (15,))
    for i in range(4):
        s = lift_mixed_star(m, i, p)
        assert 4 * 15 + (i + 1) % 4 in s.leaves


def test_little_star_isolated_vertex():
    p = params_from_k_prime(5, 1)
    assert lift_little_star(Star(6, ()), p) == [Star(36, (37, 38, 39, 40, 41))]


def test_little_star_n3_t3():
    p = params_from_k_prime(3, 3)
    assert p.t == 3
    L = build_almost_factor(p).little_star
    c, (l1, l2) = L.center, sorted(L.leaves)
    got = {_as_set(s) for s in lift_little_star(L, p)}
    want = {
        (4 * c, frozenset({4 * l1 + 1, 4 * l1 + 2, 4 * l1 + 3})),
        (4 * c + 1, frozenset({4 * c + 3, 4 * l1, 4 * l2 + 2})),
        (4 * c + 2, frozenset({4 * l2, 4 * l2 + 1, 4 * l2 + 3})),
    }
    assert got == want


def test_little_star_rotations_and_closing():
    p = params_from_k_prime(5, 3)
    assert (p.t, p.q) == (5, 2)
    stars = lift_little_star(Star(7, (8, 9, 10, 11)), p)
    assert len(stars) == 5
    for i, leaf in enumerate((8, 9, 10, 11)):
        assert _as_set(stars[i]) == (
            42 + i, frozenset(6 * leaf + (i + a) % 6 for a in range(1, 6)))
    assert _as_set(stars[4]) == (46, frozenset({48, 55, 62, 69, 47}))


@pytest.mark.parametrize("n", [3, 5, 7, 9, 11])
@pytest.mark.parametrize("kp", range(1, 13))
def test_little_star_tiles_its_block(n, kp):
    p = params_from_k_prime(n, kp)
    f = build_almost_factor(p)
    L = f.little_star
    if L is None:
        if f.isolated_vertex is None:
            return
        L = Star(f.isolated_vertex, ())
    stars = lift_little_star(L, p)
    assert len(stars) == p.t
    labels = [x for s in stars for x in s.vertices]
    want = {(n + 1) * x + a for x in L.vertices for a in range(n + 1)}
    assert sorted(labels) == sorted(want)
    assert all(len(s.leaves) == n for s in stars)


@pytest.mark.parametrize("n,kp,count", [(3, 2, 8), (5, 5, 27), (3, 1, 5)])
def test_base_factor_size(n, kp, count):
    p = params_from_k_prime(n, kp)
    B = build_base_factor(build_almost_factor(p), p)
    assert len(B.stars) == count
    assert sorted(x for s in B.stars for x in s.vertices) == list(range(p.v))


@pytest.mark.parametrize("n", [3, 5, 7, 9, 11])
@pytest.mark.parametrize("kp", range(1, 13))
def test_base_factor_spans(n, kp):
    p = params_from_k_prime(n, kp)
    B = build_base_factor(build_almost_factor(p), p)
    assert sorted(x for s in B.stars for x in s.vertices) == list(range(p.v))
    assert all(len(s.leaves) == n for s in B.stars)


def test_develop_identity_and_example():
    B = StarFactor(20, (Star(0, (12, 8, 4)),))
    assert develop_factor(B, 0) == B
    assert Star(4, (16, 12, 8)) in develop_factor(B, 1).stars


def test_develop_translates_are_disjoint_and_compose():
    p = params_from_k_prime(5, 3)
    B = build_base_factor(build_almost_factor(p), p)
    stars = [{_as_set(s) for s in develop_factor(B, j).stars} for j in range(p.g)]
    for j in range(p.g):
        for jj in range(j + 1, p.g):
            assert not stars[j] & stars[jj]
    assert develop_factor(develop_factor(B, 2), 3) == develop_factor(B, 5)


def test_develop_all_matches_develop_factor():
    p = params_from_k_prime(3, 4)
    B = build_base_factor(build_almost_factor(p), p)
    arr = develop_all(B)
    assert arr.shape == (p.g, p.m, p.n + 1)
    for j in (0, 1, p.g - 1):
        assert arr[j].tolist() == develop_factor(B, j).as_array().tolist()
