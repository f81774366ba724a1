import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from hqft.builtins import builtin_algebra
from hqft.crossed import (basic_idempotents, classify, cocycle_algebra, decompose_simple,
                          dimension_pattern, group_ring, pi_F_algebra, pushforward_crossed,
                          rescale, transfer, validate_crossed)
from hqft.errors import (AxiomViolation, KernelNotCentral, NotSimple, NotSplitSemisimple,
                         NotSurjective, NotTraceless, ZeroScale)
from hqft.graded import FrobeniusAlgebra, combine
from hqft.groups import (builtin_group, check_cocycle, make_subgroup,
                         sign_cocycle_klein, trivial_cocycle)
from hqft.linalg import Matrix

from helpers import CROSSED_SUITE, MUTANTS


@pytest.mark.parametrize("name", CROSSED_SUITE)
def test_builtins_validate(name):
    L = builtin_algebra(name)
    assert validate_crossed(L) is L


@pytest.mark.parametrize("tag", sorted(MUTANTS))
def test_mutants_fail_with_their_tag(tag):
    with pytest.raises(AxiomViolation) as e:
        validate_crossed(MUTANTS[tag]())
    assert e.value.axiom == tag
    assert e.value.witness is not None


def test_group_ring_action_is_conjugation():
    S3 = builtin_group("S3")
    L = group_ring(S3)
    for b, a in itertools.product(S3.elements, repeat=2):
        assert L.phi[(b, a)] == Matrix([[1]])
    assert cocycle_algebra(S3, trivial_cocycle(S3)) == L


def test_twisted_examples():
    L = builtin_algebra("Ltheta[Z2]")
    assert L.eta[0] == Matrix([[1]]) and L.eta[1] == Matrix([[-1]])
    assert all(m == Matrix([[1]]) for m in L.phi.values())
    S = builtin_algebra("Lsign[Z2xZ2]")
    assert S.phi[(1, 2)] == Matrix([[-1]])


def test_transfer_of_ground_field_over_z2():
    L = builtin_algebra("Transfer[Z2/1]")
    assert L.dims == (2, 0)
    assert L.phi[(1, 0)] == Matrix([[0, 1], [1, 0]])
    assert L.eta[0] == Matrix.identity(2)


def test_transfer_along_whole_group_is_identity():
    for name in ["K[S3]", "Lsign[Z2xZ2]"]:
        L = builtin_algebra(name)
        G = L.group
        assert transfer(G, make_subgroup(G, G.elements), L) == L


def test_transfer_dims_match_enumeration():
    S3 = builtin_group("S3")
    sub = [0, 3, 4]
    L = builtin_algebra("Transfer[S3/Z3]")
    reps = make_subgroup(S3, sub).representatives
    for a in S3.elements:
        count = sum(1 for w in reps if S3.mul(w, a, S3.inv[w]) in sub)
        assert L.dims[a] == count


def test_pushforward_examples():
    assert builtin_algebra("Pushforward[Z4/Z2]").dims == (2, 2)
    K = builtin_algebra("K[Z2]")
    assert pushforward_crossed([0, 1], builtin_group("Z2"), K) == K
    P = pushforward_crossed([0, 0], builtin_group("trivial"), builtin_algebra("Ltheta[Z2]"))
    assert P.dims == (2,)
    with pytest.raises(NotSplitSemisimple):
        basic_idempotents(P)


def test_pushforward_preconditions():
    with pytest.raises(NotSurjective):
        pushforward_crossed([0, 0], builtin_group("Z2"), builtin_algebra("K[Z2]"))
    S3, Z2 = builtin_group("S3"), builtin_group("Z2")
    # the sign map has kernel Z3, which is not central in S3
    sign = [0 if S3.names[x] in ("012", "120", "201") else 1 for x in S3.elements]
    with pytest.raises(KernelNotCentral):
        pushforward_crossed(sign, Z2, builtin_algebra("K[S3]"))


def _diag_algebra(n):
    T = builtin_group("trivial")
    mult = {(0, 0): [[tuple(1 if k == i == j else 0 for k in range(n)) for j in range(n)]
                     for i in range(n)]}
    return FrobeniusAlgebra(T, [n], [1] * n, mult, eta={0: Matrix.identity(n)})


def test_pi_F_examples():
    L = builtin_algebra("PiF[Z2;swap]")
    assert L.dims == (2, 0)
    assert L == builtin_algebra("Transfer[Z2/1]")
    assert builtin_algebra("PiF[Z2xZ2;regular]").dims == (4, 0, 0, 0)
    with pytest.raises(NotTraceless):
        pi_F_algebra(_diag_algebra(1), builtin_group("Z2"), {0: [[1]], 1: [[1]]})


def test_rescale():
    L = builtin_algebra("Lsign[Z2xZ2]")
    assert rescale(L, 1) == L
    assert rescale(rescale(L, F(3)), F(1, 3)) == L
    assert rescale(L, 2).eta[0] == Matrix([[2]])
    with pytest.raises(ZeroScale):
        rescale(L, 0)


def test_basic_idempotents_examples():
    S = basic_idempotents(builtin_algebra("Ltheta[Z2]"))
    assert [e.component(0) for e in S.idempotents] == [(1,)]
    T = builtin_algebra("Transfer[Z2/1]")
    S = basic_idempotents(T)
    assert [e.component(0) for e in S.idempotents] == [(1, 0), (0, 1)]
    assert S.perm[1] == (1, 0)
    assert S.orbits == ((0, 1),)


def test_decompose_direct_sum():
    K, Lt = builtin_algebra("K[Z2]"), builtin_algebra("Ltheta[Z2]")
    parts = decompose_simple(combine("direct_sum", K, Lt))
    assert parts == [K, Lt]
    assert decompose_simple(K) == [K]
    with pytest.raises(NotSimple):
        classify(combine("direct_sum", K, Lt))


def test_classify_examples():
    c = classify(builtin_algebra("Transfer[Z2/1]"))
    assert c.subgroup.elements == (0,) and c.cocycle.values == ((1,),) and c.scale == 1
    th = sign_cocycle_klein()
    c = classify(builtin_algebra("Lsign[Z2xZ2]"))
    assert c.subgroup.elements == (0, 1, 2, 3) and c.cocycle.values == th.values
    S3 = builtin_group("S3")
    c = classify(group_ring(S3))
    assert c.subgroup.elements == tuple(S3.elements)
    assert c.cocycle == trivial_cocycle(c.group)


CASES = [
    ("Z2", [0], [[1]]),
    ("Z2", [0, 1], [[1, 1], [1, -1]]),
    ("Z3", [0, 1, 2], [[1] * 3] * 3),
    ("Z4", [0, 2], [[1, 1], [1, -1]]),
    ("Z4", [0, 2], [[1, 1], [1, 1]]),
    ("S3", [0], [[1]]),
    ("S3", [0, 1], [[1, 1], [1, -1]]),
    ("S3", [0, 3, 4], [[1] * 3] * 3),
    ("Z2xZ2", [0, 2], [[1, 1], [1, -1]]),
    ("Z2xZ2", [0, 1, 2, 3], [list(r) for r in sign_cocycle_klein().values]),
]


@pytest.mark.parametrize("g,els,table", CASES)
@pytest.mark.parametrize("k", [F(1), F(2), F(-1, 3)])
def test_classification_round_trip(g, els, table, k):
    G = builtin_group(g)
    sub = make_subgroup(G, els)
    H, emb = sub.as_group()
    th = check_cocycle(H, table)
    L = rescale(transfer(G, sub, cocycle_algebra(H, th), emb), k)
    c = classify(L)
    assert c.subgroup.elements == tuple(els)
    assert c.cocycle.values == th.values
    assert c.scale == k
    pattern = dimension_pattern(L, basic_idempotents(L))
    assert len(pattern) == sub.index * G.order


@pytest.mark.parametrize("name", CROSSED_SUITE)
def test_crossed_invariants(name):
    L = builtin_algebra(name)
    G = L.group
    n = L.dims[0]
    units = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    for a in G.elements:
        # Dim L_a = Tr(phi_{a^-1} | L_1)
        assert L.dims[a] == L.phi[(G.inv[a], 0)].trace()
        for u in units:
            assert L.left_matrix(0, u, a) == L.right_matrix(0, u, a)
    for u, v in itertools.product(units, repeat=2):
        assert L.mul_vec(0, u, 0, v) == L.mul_vec(0, v, 0, u)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(CROSSED_SUITE), st.data())
def test_action_preserves_products(name, data):
    L = builtin_algebra(name)
    G = L.group
    b = data.draw(st.sampled_from(list(G.elements)))
    degs = [a for a in G.elements if L.dims[a]]
    a1, a2 = data.draw(st.sampled_from(degs)), data.draw(st.sampled_from(degs))
    x = L.basis(a1, data.draw(st.integers(0, L.dims[a1] - 1)))
    y = L.basis(a2, data.draw(st.integers(0, L.dims[a2] - 1)))
    assert L.act(b, x * y) == L.act(b, x) * L.act(b, y)
