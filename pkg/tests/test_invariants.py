import itertools
from fractions import Fraction as F

import pytest

from hqft.builtins import builtin_algebra
from hqft.crossed import (basic_idempotents, pushforward_crossed, rescale, trace_c_phi,
                          trace_phi_c)
from hqft.errors import DegreeNotOne, NotSplitSemisimple, RelationViolated
from hqft.graded import inner
from hqft.groups import builtin_group
from hqft.invariants import (cross_check, handle_element, rho0, verlinde_boundary,
                             verlinde_closed)
from hqft.surfaces import SurfaceSignature

from helpers import CROSSED_SUITE


@pytest.mark.parametrize("name", CROSSED_SUITE)
def test_handle_element_trace_identities(name):
    L = builtin_algebra(name)
    G = L.group
    for a, b in itertools.product(G.elements, repeat=2):
        h = handle_element(L, a, b)
        d = G.commutator(a, b)
        assert set(h.value.comps) <= {G.inv[d]}
        for i in range(L.dims[d]):
            c = L.basis(d, i)
            assert inner(c, h.value) == trace_c_phi(L, d, c.component(d), a, b)
            assert inner(c, h.value) == trace_phi_c(L, d, c.component(d), a, b)


def test_handle_element_examples():
    K = builtin_algebra("K[Z2]")
    assert handle_element(K, 1, 1).value == K.one()
    S = builtin_algebra("Lsign[Z2xZ2]")
    assert handle_element(S, 1, 2).value == -1 * S.one()
    T = builtin_algebra("Transfer[Z2/1]")
    h = handle_element(T, 0, 0).value
    assert h == T.one() and h.component(0) == (1, 1)


def test_verlinde_examples():
    assert verlinde_closed(builtin_algebra("K[Z2]"), SurfaceSignature(1, [0, 0])) == 1
    assert verlinde_closed(builtin_algebra("K[Z2]"), SurfaceSignature(1, [1, 1])) == 1
    assert verlinde_closed(builtin_algebra("Lsign[Z2xZ2]"), SurfaceSignature(1, [1, 2])) == -1
    total, terms = verlinde_closed(builtin_algebra("Transfer[Z2/1]"),
                                   SurfaceSignature(1, [0, 0]), breakdown=True)
    assert total == 2 and terms == [1, 1]


def test_verlinde_errors():
    S3 = builtin_algebra("K[S3]")
    G = S3.group
    with pytest.raises(RelationViolated):
        verlinde_closed(S3, SurfaceSignature(1, [G.element("102"), G.element("120")]))
    P = pushforward_crossed([0, 0], builtin_group("trivial"), builtin_algebra("Ltheta[Z2]"))
    verlinde_closed(P, SurfaceSignature(0, []))
    with pytest.raises(NotSplitSemisimple):
        verlinde_closed(P, SurfaceSignature(0, []), breakdown=True)


def test_breakdown_vanishes_off_fixed_idempotents():
    # on Transfer[Z2/1] the action swaps the two idempotents, so with alpha = 1 in
    # the second slot each term is zero
    T = builtin_algebra("Transfer[Z2/1]")
    S = basic_idempotents(T)
    total, terms = verlinde_closed(T, SurfaceSignature(1, [0, 1]), breakdown=True)
    moved = [k for k, p in enumerate(S.perm[1]) if p != k]
    assert moved and all(terms[k] == 0 for k in moved)
    assert total == sum(terms)


def test_verlinde_boundary_examples():
    K = builtin_algebra("K[Z2]")
    sphere = SurfaceSignature(0, [])
    u = K.basis(0, 0)
    assert verlinde_boundary(K, sphere, [(0, 0)], [u]) == inner(u, K.one())
    x = K.basis(1, 0)
    assert verlinde_boundary(K, sphere, [(1, 0), (1, 0)], [x, x]) == 1
    with pytest.raises(DegreeNotOne):
        verlinde_boundary(K, sphere, [(1, 0)], [x])
    for name in ["Lsign[Z2xZ2]", "Transfer[S3/Z3]"]:
        L = builtin_algebra(name)
        for alphas in ([0, 0], [1, 1]):
            sig = SurfaceSignature(1, alphas)
            assert verlinde_boundary(L, sig, [(0, 1)], [L.one()]) == verlinde_closed(L, sig)


def test_rho0():
    assert [rho0(n) for n in range(4)] == [1, 0, -1, -2]
    with pytest.raises(ValueError):
        rho0(-1)


@pytest.mark.parametrize("name", ["K[S3]", "Lsign[Z2xZ2]", "Transfer[S3/Z3]"])
@pytest.mark.parametrize("k", [F(2), F(-1), F(1, 3)])
def test_rescale_bridge(name, k):
    L = builtin_algebra(name)
    R = rescale(L, k)
    for n in range(3):
        sig = SurfaceSignature(n, [0] * (2 * n))
        assert verlinde_closed(R, sig) == k ** (1 - n) * verlinde_closed(L, sig)


def test_cross_check_examples():
    r = cross_check("biangular", builtin_algebra("K[Z3]"), SurfaceSignature(2, [0, 0, 0, 0]))
    assert r["agree"] and r["tau"] == 1
    r = cross_check("biangular", builtin_algebra("Homset[Z2;pt;2]"), SurfaceSignature(0, []))
    assert r["agree"] and r["verlinde"] == 4
    r = cross_check("nondeg", builtin_algebra("K[Z2]"), SurfaceSignature(1, [1, 0]))
    assert r["agree"] and r["tau"] == 1


def test_cross_check_genus_three():
    for name in ["K[Z2]", "Lsign[Z2xZ2]"]:
        L = builtin_algebra(name)
        for alphas in ([0] * 6, [1, 2, 1, 1, 2, 2]):
            sig = SurfaceSignature(3, alphas)
            for model in ("biangular", "nondeg"):
                if max(alphas) < L.group.order:
                    assert cross_check(model, L, sig)["agree"]
