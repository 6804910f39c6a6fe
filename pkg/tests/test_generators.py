import random

import pytest

import oracle
from trilines import ProjPoint, aikn_fig1, aikn_fig2, random_concurrent, random_general
from trilines.errors import InvalidParams
from trilines.generators import (
    FamilyParams,
    aikn_fig1_carriers,
    apex_to_infinity,
    generate,
    random_transform,
)
from trilines.kernel import incident, meet


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_fig2_shape(k):
    X = aikn_fig2(k)
    assert X.n == 4 * k + 1
    finite = [P for P in X.points if P[2]]
    rows = {P[1] // P[2] for P in finite}
    assert rows == {0, 1, 2}
    assert sum(1 for P in finite if P[1] == P[2]) == 2 * k - 1
    assert set(X.infinite_points) == {ProjPoint(1, 0, 0), ProjPoint(0, 1, 0)}
    assert oracle.t_of(X.points) < oracle.ceil_half(X.n)


def test_fig2_caption_size():
    assert aikn_fig2(4).n == 17


@pytest.mark.parametrize("k", [2, 3, 4, 6])
def test_fig1_shape(k):
    X = aikn_fig1(k)
    assert X.n == 4 * k + 1
    assert len(X.infinite_points) == 1
    assert X.metadata["infinity"] == " ".join(str(c) for c in X.infinite_points[0])
    lines = aikn_fig1_carriers(k)
    finite = [P for P in X.points if P[2]]
    assert all(any(incident(P, l) for l in lines) for P in finite)
    a, b, c = lines
    assert len({meet(a, b), meet(a, c), meet(b, c)}) == 3
    assert ProjPoint(0, 0) in X
    assert oracle.t_of(X.points) < oracle.ceil_half(X.n)


@pytest.mark.parametrize("bad", [1, 0, -3])
def test_families_reject_small_k(bad):
    with pytest.raises(InvalidParams):
        aikn_fig2(bad)
    with pytest.raises(InvalidParams):
        aikn_fig1(bad)
    with pytest.raises(InvalidParams):
        FamilyParams("aikn2", k=bad)


def test_random_concurrent_lies_on_its_lines():
    X = random_concurrent((4, 5, 6), include_apex=True, seed=9)
    A, lines = X.metadata["apex"], X.metadata["lines"]
    assert X.n == 16 and A in X
    assert all(incident(A, l) for l in lines)
    for l, cnt in zip(lines, (4, 5, 6)):
        assert sum(1 for P in X.points if P != A and incident(P, l)) == cnt


def test_random_concurrent_is_seeded():
    assert random_concurrent((3, 3, 3), seed=5) == random_concurrent((3, 3, 3), seed=5)
    assert random_concurrent((3, 3, 3), seed=5) != random_concurrent((3, 3, 3), seed=6)


@pytest.mark.parametrize("counts", [(0, 0, 5), (-1, 2, 2), (1, 1, 0)])
def test_random_concurrent_rejects_degenerate_counts(counts):
    with pytest.raises(InvalidParams):
        random_concurrent(counts)


def test_random_general():
    X = random_general(30, 40, seed=2, infinite=3)
    assert X.n == 30 and len(X.infinite_points) == 3
    assert all(max(abs(P[0]), abs(P[1])) <= 40 * max(1, P[2]) for P in X.points)
    assert X == random_general(30, 40, seed=2, infinite=3)
    with pytest.raises(InvalidParams):
        random_general(2)


def test_apex_to_infinity_makes_carriers_parallel():
    X = random_concurrent((3, 4, 2), include_apex=True, seed=1)
    T, Y, A = apex_to_infinity(X, X.metadata["apex"], seed=1)
    assert A[2] == 0 and A in Y
    assert Y.infinite_points == (A,)
    assert sorted(oracle.counts(Y.points)) == sorted(oracle.counts(X.points))
    with pytest.raises(InvalidParams):
        apex_to_infinity(Y, A)


def test_random_transform_is_invertible_and_bounded():
    rng = random.Random(0)
    for _ in range(50):
        T = random_transform(rng)
        assert T.det != 0
        assert all(-5 <= v <= 5 for row in T.matrix for v in row)


def test_generate_dispatch_and_params():
    assert generate(FamilyParams("aikn2", k=3)) == aikn_fig2(3)
    assert generate(FamilyParams("random-general", n=8, bound=10, seed=1)).n == 8
    with pytest.raises(InvalidParams):
        FamilyParams("nope")
    with pytest.raises(InvalidParams):
        FamilyParams("random-general", seed=-1)
