import itertools

import pytest
from hypothesis import given, strategies as st

from hqft.errors import BadEmbedding, CocycleViolation, NotAGroup, NotClosed, NotNormalized
from hqft.groups import (builtin_group, check_cocycle, check_embedding, check_homomorphism,
                         make_group, make_subgroup, minus_one_cocycle_z2, product_group,
                         sign_cocycle_klein)

GROUPS = ["trivial", "Z2", "Z3", "Z4", "Z2xZ2", "S3"]


def test_make_group_examples():
    assert make_group([[0]]).order == 1
    assert make_group([[0, 1], [1, 0]]).order == 2
    with pytest.raises(NotAGroup):
        make_group([[0, 1], [1, 1]])


def test_non_associative_table_rejected():
    # a Latin square with identity 0 that is not associative (order 5 loop)
    table = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1],
             [4, 3, 1, 2, 0]]
    with pytest.raises(NotAGroup) as e:
        make_group(table)
    assert e.value.axiom == "associativity"


def test_s3_is_nonabelian_and_named():
    S3 = builtin_group("S3")
    assert S3.order == 6 and not S3.is_abelian()
    assert S3.element("012") == 0
    assert builtin_group("Z7").order == 7
    with pytest.raises(KeyError):
        builtin_group("Z9")


@pytest.mark.parametrize("name", GROUPS)
def test_conjugation_is_an_action(name):
    G = builtin_group(name)
    for b, b2, a in itertools.product(G.elements, repeat=3):
        assert G.conj(b, G.conj(b2, a)) == G.conj(G.mult[b][b2], a)


def test_cocycle_examples():
    Z2 = builtin_group("Z2")
    assert check_cocycle(Z2, [[1, 1], [1, 1]]).values[1][1] == 1
    assert minus_one_cocycle_z2().values[1][1] == -1
    th = sign_cocycle_klein()
    # brute force over all 64 triples, independent of check_cocycle
    K = th.group
    for a, b, c in itertools.product(range(4), repeat=3):
        assert th(a, b) * th(K.mult[a][b], c) == th(a, K.mult[b][c]) * th(b, c)
    assert th(2, 1) == -1 and th(1, 2) == 1


def test_cocycle_failures():
    Z2 = builtin_group("Z2")
    with pytest.raises(NotNormalized):
        check_cocycle(Z2, [[2, 2], [2, 2]])
    with pytest.raises(CocycleViolation):
        check_cocycle(Z2, [[1, 1], [1, 0]])
    Z3 = builtin_group("Z3")
    with pytest.raises(CocycleViolation):
        check_cocycle(Z3, [[1, 1, 1], [1, -1, 1], [1, 1, 1]])


@pytest.mark.parametrize("th", [minus_one_cocycle_z2(), sign_cocycle_klein()])
def test_cocycle_symmetric_on_inverse_pairs(th):
    G = th.group
    for a in G.elements:
        assert th(a, G.inv[a]) == th(G.inv[a], a)


def test_subgroup_examples():
    Z2 = builtin_group("Z2")
    sub = make_subgroup(Z2, [0])
    assert sub.index == 2 and sub.representatives == (0, 1)
    S3 = builtin_group("S3")
    assert make_subgroup(S3, [0, 3, 4]).index == 2
    with pytest.raises(NotClosed):
        make_subgroup(Z2, [1])


@pytest.mark.parametrize("name,els", [("Z2", [0]), ("S3", [0, 3, 4]), ("S3", [0, 1]),
                                      ("Z2xZ2", [0, 2]), ("Z4", [0, 2])])
def test_coset_decomposition_is_bijective(name, els):
    G = builtin_group(name)
    sub = make_subgroup(G, els)
    hit = [G.mult[g][w] for w in sub.representatives for g in sub.elements]
    assert sorted(hit) == list(G.elements)
    assert sub.representatives[0] == 0


def test_embedding_checks():
    S3 = builtin_group("S3")
    sub = make_subgroup(S3, [0, 3, 4])
    H, emb = sub.as_group()
    assert check_embedding(H, sub, emb) == emb
    with pytest.raises(BadEmbedding):
        check_embedding(builtin_group("Z3"), sub, [0, 3, 4][::-1])


def test_homomorphism_reduction():
    assert check_homomorphism(builtin_group("Z4"), builtin_group("Z2"), [0, 1, 0, 1]) == (0, 1, 0, 1)


@given(st.sampled_from(GROUPS), st.sampled_from(GROUPS))
def test_product_group_order(a, b):
    P = product_group(builtin_group(a), builtin_group(b))
    assert P.order == builtin_group(a).order * builtin_group(b).order
