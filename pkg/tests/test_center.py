import itertools
from fractions import Fraction as F

import pytest

from hqft.builtins import builtin_algebra
from hqft.center import (ExtendedSpace, build_action_groupalg, build_homset_algebra,
                         check_biangular, check_nondegenerate, lemma_identity, pi_center,
                         separability_identity)
from hqft.crossed import basic_idempotents, group_ring, validate_crossed
from hqft.errors import DegenerateForm, NotAnAction, TraceCondition
from hqft.graded import GradedAlgebra, inner
from hqft.groups import builtin_group
from hqft.linalg import ZERO, Matrix, unit_vec

from helpers import BIANGULAR, NONDEG


def _dual_numbers():
    mult = {(0, 0): [[(1, 0), (0, 1)], [(0, 1), (0, 0)]]}
    return GradedAlgebra(builtin_group("trivial"), [2], [1, 0], mult)


def _oracle_trace_form(A, degrees, a):
    """Trace form computed straight from structure constants, without left_matrix."""
    G = A.group
    ai = G.inv[a]
    out = []
    for i in range(A.dims[a]):
        row = []
        for j in range(A.dims[ai]):
            v = A.mult[(a, ai)][i][j]
            t = ZERO
            for c in degrees:
                for k in range(A.dims[c]):
                    t += A.mul_vec(0, v, c, unit_vec(A.dims[c], k))[k]
            row.append(t)
        out.append(row)
    return Matrix(out, ncols=A.dims[ai])


@pytest.mark.parametrize("name", BIANGULAR)
def test_biangular_forms_match_oracle(name):
    A = builtin_algebra(name)
    B = check_biangular(A)
    for a in A.group.elements:
        assert B.base.eta[a] == _oracle_trace_form(A, [0], a)
        # b_{a^-1} is b_a with its tensor factors swapped
        assert B.canon[A.group.inv[a]] == B.canon[a].T
        # sum_i p_i q_i = 1
        assert B.b_hat(a) == A.unit


@pytest.mark.parametrize("name", NONDEG)
def test_nondeg_forms_match_oracle(name):
    A = builtin_algebra(name)
    N = check_nondegenerate(A)
    G = A.group
    for a in G.elements:
        assert N.base.eta[a] == _oracle_trace_form(A, list(G.elements), a)
    total = (ZERO,) * A.dims[0]
    for a in G.elements:
        total = tuple(x + y for x, y in zip(total, N.bhat[a]))
    assert total == A.unit
    for a, b in itertools.product(G.elements, repeat=2):
        assert separability_identity(N, a, b) == (True, None)


@pytest.mark.parametrize("name", BIANGULAR)
def test_nondeg_form_is_order_times_biangular(name):
    A = builtin_algebra(name)
    B, N = check_biangular(A), check_nondegenerate(A)
    n = A.group.order
    for a in A.group.elements:
        assert N.base.eta[a] == B.base.eta[a] * n


def test_biangular_examples():
    K = group_ring(builtin_group("Z3"))
    B = check_biangular(K)
    for a in K.group.elements:
        assert B.base.eta[a] == Matrix([[1]])
    check_biangular(builtin_algebra("Ltheta[Z2]"))
    with pytest.raises(TraceCondition):
        check_biangular(builtin_algebra("Homset[Z2;reg;1,2]"))


def test_nondeg_examples():
    N = check_nondegenerate(builtin_algebra("K[Z2]"))
    assert N.base.eta[1] == Matrix([[2]])
    with pytest.raises(DegenerateForm):
        check_nondegenerate(_dual_numbers())
    with pytest.raises(DegenerateForm):
        check_biangular(_dual_numbers())


@pytest.mark.parametrize("model,names", [("biangular", BIANGULAR), ("nondeg", NONDEG)])
def test_lemma_identity_on_bases(model, names):
    for name in names:
        A = builtin_algebra(name)
        T = check_biangular(A) if model == "biangular" else check_nondegenerate(A)
        G = A.group
        for a in G.elements:
            xd, yd = G.inv[a], a
            for i in range(A.dims[xd]):
                for j in range(A.dims[yd]):
                    lhs, rhs = lemma_identity(T, a, xd, unit_vec(A.dims[xd], i),
                                              yd, unit_vec(A.dims[yd], j))
                    assert lhs == rhs


@pytest.mark.parametrize("name", BIANGULAR)
def test_psi_is_an_action_and_adjoint(name):
    A = builtin_algebra(name)
    B = check_biangular(A)
    G = A.group
    L = B.base
    for a, a2, b in itertools.product(G.elements, repeat=3):
        lhs = B.psi(a)[G.conj(a2, b)] @ B.psi(a2)[b]
        assert lhs == B.psi(G.mult[a][a2])[b]
    for a, b in itertools.product(G.elements, repeat=2):
        t = G.conj(a, b)
        ti = G.inv[t]
        for i in range(L.dims[b]):
            x = unit_vec(L.dims[b], i)
            for j in range(L.dims[ti]):
                y = unit_vec(L.dims[ti], j)
                assert L.form(t, B.psi(a)[b] @ x, y) == \
                    L.form(b, x, B.psi(G.inv[a])[ti] @ y)


def test_psi_one_on_group_rings():
    K = builtin_algebra("K[S3]")
    B = check_biangular(K)
    for b in K.group.elements:
        assert B.psi(0)[b] == Matrix.identity(1)
    # with the whole-algebra form b_1 = 1/3 (1 (x) 1), so psi_1 is a third of the identity;
    # the idempotent in this regime is Psi_1 on the extended space
    N = check_nondegenerate(builtin_algebra("K[Z3]"))
    for b in range(3):
        assert N.psi(0)[b] == Matrix([[F(1, 3)]])
    P = ExtendedSpace(N)
    for a in range(3):
        M = P.Psi(0, a)
        assert M @ M == M


def test_biangular_center_examples():
    for name in ["K[Z3]", "K[S3]", "Ltheta[Z2]", "Lsign[Z2xZ2]"]:
        L = builtin_algebra(name)
        C = pi_center("biangular", L)
        assert C == L
    C = pi_center("biangular", builtin_algebra("Homset[Z2;pt;2]"))
    assert C.dims == (1, 1)
    assert inner(C.one(), C.one()) == 4


def test_nondeg_center_examples():
    C = pi_center("nondeg", builtin_algebra("K[Z2]"))
    assert C.dims == (1, 1)
    C = pi_center("nondeg", builtin_algebra("Homset[Z2;reg;1,1]"))
    validate_crossed(C)
    basic_idempotents(C)


@pytest.mark.parametrize("model,names", [("biangular", BIANGULAR), ("nondeg", NONDEG)])
def test_centers_validate_and_split(model, names):
    for name in names:
        C = pi_center(model, builtin_algebra(name))
        validate_crossed(C)
        basic_idempotents(C)


def test_action_groupalg_examples():
    T = builtin_group("trivial")
    Q = GradedAlgebra(T, [1], [1], {(0, 0): [[(1,)]]})
    for g in ["Z2", "S3"]:
        G = builtin_group(g)
        A = build_action_groupalg(Q, G, {b: Matrix([[1]]) for b in G.elements})
        assert A.same_structure(group_ring(G))
    check_biangular(builtin_algebra("Action[Z2;swap]"))
    Z2 = builtin_group("Z2")
    D = build_action_groupalg(_dual_numbers(), Z2, {0: Matrix.identity(2), 1: Matrix.identity(2)})
    with pytest.raises(DegenerateForm):
        check_biangular(D)


def test_homset_examples():
    Z2 = builtin_group("Z2")
    L = build_homset_algebra(Z2, [[0], [0]], [2], "sum")
    assert L.dims == (4, 4)
    R = builtin_algebra("Rtensor[Z2;reg;1,2]")
    B = check_biangular(R)
    assert B.base.form(0, R.unit, R.unit) == R.dims[0] == 4
    assert check_biangular(builtin_algebra("Homset[Z2;reg;1,1]")).base.dims == (2, 2)
    with pytest.raises(NotAnAction):
        build_homset_algebra(Z2, [[0, 1], [1, 1]], [1, 1])
