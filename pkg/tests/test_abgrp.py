import math
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import enumerate_cokernel, int_det, random_matrix, structure_from_counts

from kfield.abgrp import (
    ZZ,
    CoefficientRing,
    ExactMatrix,
    GradedModule,
    Module,
    cokernel,
    colimit_stationary,
    diagonal,
    element_order,
    exterior_algebra,
    exterior_ranks,
    graded_tensor,
    invariant_factors,
    kernel,
    module_iso_eq,
    rank,
    snf,
)
from kfield.errors import NotStationary, RingMismatch


def matmul(A, B):
    return [[sum(a * b for a, b in zip(r, c)) for c in zip(*B)] for r in A]


def check_snf(A):
    U, D, V = snf(A)
    assert matmul(matmul(U, A), V) == D
    assert abs(int_det(U)) == 1 and abs(int_det(V)) == 1
    d = diagonal(D)
    for i, row in enumerate(D):
        for j, x in enumerate(row):
            if i != j:
                assert x == 0
    nz = [x for x in d if x]
    assert all(x > 0 for x in nz)
    assert d[: len(nz)] == nz  # zeros come last
    for a, b in zip(nz, nz[1:]):
        assert b % a == 0
    return d


def test_ring_basics():
    R = CoefficientRing.inverting(12)
    assert R.inverted == {2, 3}
    assert str(R) == "Z[1/6]" and str(ZZ) == "Z"
    assert R.strip(-72) == 1 and R.strip(90) == 5
    assert R.is_unit(Fraction(4, 9)) and not R.is_unit(5) and not R.is_unit(0)
    assert CoefficientRing.inverting(1) == ZZ


def test_invariant_factors():
    assert invariant_factors([4, 6]) == (2, 12)
    assert invariant_factors([2, 3]) == (6,)
    assert invariant_factors([1, 8]) == (8,)
    assert invariant_factors([]) == ()


def test_module_canonical_form():
    assert Module(ZZ, 1, (6, 4)) == Module(ZZ, 1, (2, 12))
    R = CoefficientRing.inverting(3)
    m = Module(R, 2, (4, 9, 12))
    assert m.torsion == (4, 4)
    assert str(m) == "Z/4 (+) Z/4 (+) Z[1/3]^2"
    assert Module(ZZ, 0).is_zero() and str(Module(ZZ, 0)) == "0"
    assert Module(ZZ, 1, (4,)).localize(CoefficientRing.inverting(2)) == Module(CoefficientRing.inverting(2), 1)
    assert m.to_json() == {"ring": "Z[1/3]", "rank": 2, "torsion": [4, 4]}


def test_iso_eq_needs_same_ring():
    with pytest.raises(RingMismatch):
        module_iso_eq(Module(ZZ, 1), Module(CoefficientRing.inverting(2), 1))
    with pytest.raises(RingMismatch):
        GradedModule(Module(ZZ, 1), Module(CoefficientRing.inverting(2), 0))


def test_graded_tensor_examples():
    A = GradedModule(Module(ZZ, 1, (4,)), Module(ZZ, 1))
    B = exterior_algebra(1)
    T = graded_tensor(A, B)
    assert T.even == Module(ZZ, 2, (4,)) and T.odd == Module(ZZ, 2, (4,))
    C = GradedModule(Module(ZZ, 0, (6,)), Module(ZZ, 0))
    assert graded_tensor(C, C).even == Module(ZZ, 0, (6,))


def test_exterior_ranks():
    assert exterior_ranks(0) == (1, 0)
    for r in range(1, 12):
        assert exterior_ranks(r) == (2 ** (r - 1), 2 ** (r - 1))
    # Lambda(Z^r) is the r-fold tensor power of Lambda(Z)
    acc = GradedModule.unit()
    for r in range(1, 8):
        acc = graded_tensor(acc, exterior_algebra(1))
        assert acc == exterior_algebra(r)


modules = st.builds(
    Module,
    st.just(ZZ),
    st.integers(0, 3),
    st.lists(st.sampled_from([2, 3, 4, 6, 8, 9, 12]), max_size=3).map(tuple),
)
graded = st.builds(GradedModule, modules, modules)


@settings(max_examples=150, deadline=None)
@given(graded, graded, graded)
def test_graded_tensor_laws(A, B, C):
    assert graded_tensor(A, B) == graded_tensor(B, A)
    assert graded_tensor(graded_tensor(A, B), C) == graded_tensor(A, graded_tensor(B, C))
    assert graded_tensor(A, GradedModule.unit()) == A


@settings(max_examples=150, deadline=None)
@given(graded, graded, st.sampled_from([2, 3, 6, 35]))
def test_localization_is_monoidal(A, B, n):
    R = CoefficientRing.inverting(n)
    assert graded_tensor(A, B).localize(R) == graded_tensor(A.localize(R), B.localize(R))


def test_exact_matrix():
    R = CoefficientRing.inverting(3)
    M = ExactMatrix([[1, Fraction(1, 3)], [0, 9]], R)
    assert M.det() == 9
    assert (M @ ExactMatrix.identity(2, R)) == M
    assert M @ [3, 3] == [4, 27]
    assert M.cleared() == ([[3, 1], [0, 27]], 3)
    assert M.with_entry(1, 0, 2).det() == 9 - Fraction(2, 3)
    with pytest.raises(ValueError):
        ExactMatrix([[Fraction(1, 2)]], R)
    with pytest.raises(ValueError):
        ExactMatrix([[1, 2], [3]])


def test_snf_examples():
    U, D, V = snf([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert diagonal(D) == [2, 6, 12]
    assert diagonal(snf([[0, 0], [0, 0]])[1]) == [0, 0]
    assert diagonal(snf([[4, 6]])[1]) == [2]
    assert diagonal(snf([[2, 0], [0, 3]])[1]) == [1, 6]


def test_snf_against_sympy():
    from sympy.matrices.normalforms import smith_normal_form

    rng = random.Random(11)
    for _ in range(200):
        r, c = rng.randint(1, 5), rng.randint(1, 5)
        A = random_matrix(rng, r, c, 9)
        d = check_snf(A)
        S = smith_normal_form(sympy.Matrix(A), domain=sympy.ZZ)
        theirs = sorted(abs(S[i, i]) for i in range(min(r, c)) if S[i, i])
        assert sorted(x for x in d if x) == theirs
        assert rank(A) == sympy.Matrix(A).rank()


def test_cokernel_examples():
    assert cokernel([[2, 0], [0, 3]]) == Module(ZZ, 0, (6,))
    assert cokernel([[2], [0]]) == Module(ZZ, 1, (2,))
    assert cokernel([[1, 1]]) == Module(ZZ, 0)
    R = CoefficientRing.inverting(2)
    assert cokernel([[4, 0], [0, 3]], R) == Module(R, 0, (3,))
    assert kernel([[1, 1], [2, 2]]) == Module(ZZ, 1)
    assert kernel([[1, 0], [0, 1]]) == Module(ZZ, 0)


def test_cokernel_matches_enumeration():
    rng = random.Random(5)
    tested = 0
    while tested < 150:
        k = rng.randint(1, 3)
        A = random_matrix(rng, k, k, 3)
        if int_det(A) == 0:
            assert cokernel(A).rank == k - sympy.Matrix(A).rank()
            continue
        elements, det = enumerate_cokernel(A)
        C = cokernel(A)
        assert C.rank == 0
        assert C.torsion_order == len(elements) == abs(int_det(A))
        assert C.torsion == structure_from_counts(elements, det)
        tested += 1


def test_element_order():
    A = [[4, 0], [0, 0]]
    assert element_order(A, [1, 0]) == 4
    assert element_order(A, [2, 0]) == 2
    assert element_order(A, [0, 1]) == 0
    assert element_order(A, [4, 0]) == 1
    R = CoefficientRing.inverting(2)
    assert element_order([[12]], [1], R) == 3


def test_colimit_stationary():
    R = CoefficientRing.inverting(5)
    col = colimit_stationary(lambda m: ExactMatrix([[5, 1], [0, 1]], R), R)
    assert col.module == Module(R, 2) and col.stable_from == 0
    col = colimit_stationary(lambda m: ExactMatrix([[max(1, 3 - m)]], R), R, probe_bound=10)
    assert col.stable_from == 2
    with pytest.raises(NotStationary):
        colimit_stationary(lambda m: ExactMatrix([[2]], R), R, probe_bound=5)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.randoms(use_true_random=False))
def test_block_sum_cokernel(r, c, rnd):
    A = random_matrix(rnd, r, c, 5)
    B = random_matrix(rnd, c, r, 5)
    blocks = [row + [0] * r for row in A] + [[0] * c + row for row in B]
    CA, CB, CAB = cokernel(A), cokernel(B), cokernel(blocks)
    assert CAB.rank == CA.rank + CB.rank
    assert CAB.torsion == invariant_factors(CA.torsion + CB.torsion)
    assert math.prod(CAB.torsion) == CA.torsion_order * CB.torsion_order
