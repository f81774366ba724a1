"""Invariants computed on the crossed-algebra side: handle elements and Verlinde sums."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .center import pi_center, trace_algebra
from .crossed import basic_idempotents, trace_c_phi, trace_phi_c
from .errors import DegreeNotOne, InternalError, RelationViolated
from .graded import CrossedAlgebra, GradedVector, inner
from .linalg import ZERO, canonical_element, unit_vec, vadd, vscale
from .statesum import genus_formula, tau
from .surfaces import SurfaceSignature


@dataclass(frozen=True)
class HandleElement:
    algebra: CrossedAlgebra
    alpha: int
    beta: int
    value: GradedVector


def handle_element(L: CrossedAlgebra, a: int, b: int) -> HandleElement:
    """The element ``h`` of degree ``b a b^-1 a^-1`` with ``eta(c, h) = Tr(c phi_b | L_a)``."""
    # algebras are immutable, so the (checked) result can be kept on the instance
    cache = L.__dict__.setdefault("_handle_cache", {})
    if (a, b) not in cache:
        cache[(a, b)] = _handle_element(L, a, b)
    return cache[(a, b)]


def _handle_element(L: CrossedAlgebra, a: int, b: int) -> HandleElement:
    G = L.group
    d = G.commutator(a, b)
    di = G.inv[d]
    C = canonical_element(L.eta[d]).coeffs
    val = (ZERO,) * L.dims[di]
    for i in range(L.dims[d]):
        t = trace_c_phi(L, d, unit_vec(L.dims[d], i), a, b)
        if not t:
            continue
        for j in range(L.dims[di]):
            if C[i, j]:
                val = vadd(val, vscale(C[i, j] * t, unit_vec(L.dims[di], j)))
    for i in range(L.dims[d]):
        c = unit_vec(L.dims[d], i)
        pair = L.form(d, c, val)
        if pair != trace_c_phi(L, d, c, a, b) or pair != trace_phi_c(L, d, c, a, b):
            raise InternalError("handle element fails its trace identities", witness=(a, b, i))
    return HandleElement(L, a, b, GradedVector(L, {di: val}))


def _handle_product(L: CrossedAlgebra, sig: SurfaceSignature) -> GradedVector:
    sig.check(L.group)
    prod = L.one()
    for r in range(sig.genus):
        h = handle_element(L, sig.alphas[2 * r + 1], sig.alphas[2 * r])
        prod = prod * h.value
    return prod


def verlinde_closed(L: CrossedAlgebra, sig: SurfaceSignature, breakdown: bool = False):
    """``eta(prod_r h_{a_2r, a_2r-1}, 1)``; with ``breakdown`` also the terms per basic idempotent."""
    prod = _handle_product(L, sig)
    total = inner(prod, L.one())
    if not breakdown:
        return total
    S = basic_idempotents(L)
    terms = [inner(prod, i) for i in S.idempotents]
    if sum(terms, ZERO) != total:
        raise InternalError("idempotent terms do not add up to the total")
    return total, terms


def verlinde_boundary(L: CrossedAlgebra, sig: SurfaceSignature, boundary, inputs) -> Fraction:
    """Value on inputs ``u_p`` in ``L_{a_p}`` at boundary circles with conjugators ``g_p``.

    ``boundary`` lists pairs ``(a_p, g_p)``; the labels must make the product
    of commutators and of the conjugated ``a_p`` trivial.
    """
    G = L.group
    if len(boundary) != len(inputs):
        raise DegreeNotOne("one input per boundary circle is required")
    deg = 0
    for r in range(sig.genus):
        deg = G.mul(deg, G.commutator(sig.alphas[2 * r], sig.alphas[2 * r + 1]))
    for (a, c), u in zip(boundary, inputs):
        if set(u.comps) - {a}:
            raise DegreeNotOne("input does not lie in the boundary degree", witness=(a,))
        deg = G.mul(deg, G.conj(c, a))
    if deg != 0:
        raise DegreeNotOne("product does not lie in degree 1", witness=(deg,))
    prod = L.one()
    for r in range(sig.genus):
        prod = prod * handle_element(L, sig.alphas[2 * r + 1], sig.alphas[2 * r]).value
    for (a, c), u in zip(boundary, inputs):
        prod = prod * L.act(c, u)
    if set(prod.comps) - {0}:
        raise DegreeNotOne("product does not lie in degree 1")
    return inner(prod, L.one())


def rho0(n: int) -> int:
    if n < 0:
        raise ValueError("genus must be nonnegative")
    return 1 - n


def _report(model, T, C, sig) -> dict:
    t = tau(model, T, sig)
    gf = genus_formula(model, T, sig)
    v = verlinde_closed(C, sig)
    return {"model": model, "genus": sig.genus, "alphas": list(sig.alphas),
            "tau": t, "genus_formula": gf, "verlinde": v, "agree": t == gf == v}


def cross_check(model: str, alg, sig: SurfaceSignature) -> dict:
    """State sum, closed genus formula and Verlinde sum of the center, with a verdict."""
    T = trace_algebra(model, alg)
    return _report(model, T, pi_center(model, T), sig)


def cross_check_many(model: str, alg, sigs) -> list:
    """``cross_check`` over several signatures, building the center only once."""
    T = trace_algebra(model, alg)
    C = pi_center(model, T)
    return [_report(model, T, C, s) for s in sigs]
