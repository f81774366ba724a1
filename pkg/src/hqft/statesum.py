"""State sums on labelled skeletons and the closed-form genus evaluations.

``state_sum_bracket`` contracts one canonical element per edge against one
cyclic form per vertex.  Vertex tensors are built by multiplying along the
clockwise order, closing loops at the vertex as soon as both ends have been
seen; the remaining edges are contracted between vertex tensors with sparse
dictionaries.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

from .center import BiangularAlgebra, NonDegenerateAlgebra, _TraceFormAlgebra, trace_algebra
from .errors import GroupMismatch, InternalError, TooLarge
from .linalg import ONE, ZERO, vadd, vscale, unit_vec
from .surfaces import PiSystem, SurfaceSignature, canonical_skeleton, homotopy_act

FACE_SUM_LIMIT = 10 ** 6


def _vertex_tensor(T: _TraceFormAlgebra, ps: PiSystem, v: int):
    """Sparse tensor over the basis indices of the half-edges at ``v`` leading elsewhere."""
    L = T.base
    G = ps.group
    sk = ps.skeleton
    order = sk.clockwise(v)
    at_v = set(order)
    external = [h for h in order if sk.pairing[h] not in at_v]
    # state: (external indices so far, open loop indices) -> (degree, vector)
    states = {((), ()): L.unit}
    deg = 0
    open_slots = []  # half-edges whose partner is still to come
    for h in order:
        a = ps.g[h]
        d = L.dims[a]
        new = {}
        k = sk.pairing[h]
        if k not in at_v:
            for (ext, opn), vecv in states.items():
                for i in range(d):
                    w = L.mul_vec(deg, vecv, a, unit_vec(d, i))
                    if any(w):
                        new[(ext + (i,), opn)] = w
        elif k not in open_slots:
            open_slots.append(h)
            for (ext, opn), vecv in states.items():
                for i in range(d):
                    w = L.mul_vec(deg, vecv, a, unit_vec(d, i))
                    if any(w):
                        new[(ext, opn + (i,))] = w
        else:
            pos = open_slots.index(k)
            open_slots.pop(pos)
            C = T.canon[ps.g[k]]
            for (ext, opn), vecv in states.items():
                i = opn[pos]
                rest = opn[:pos] + opn[pos + 1:]
                acc = new.get((ext, rest))
                for j in range(d):
                    c = C[i, j]
                    if c:
                        w = vscale(c, L.mul_vec(deg, vecv, a, unit_vec(d, j)))
                        acc = w if acc is None else vadd(acc, w)
                if acc is not None:
                    new[(ext, rest)] = acc
        deg = G.mult[deg][a]
        states = new
        if not states:
            break
    if deg != 0 and states:
        raise InternalError("vertex product does not land in degree 1", witness=(v,))
    out = {}
    for (ext, _), vecv in states.items():
        val = L.form(0, vecv, L.unit)
        if val:
            out[ext] = out.get(ext, ZERO) + val
    return external, {k: x for k, x in out.items() if x}


def _merge(T, ps, A, B):
    """Contract two sparse tensors along every edge joining them (or join them as a product)."""
    sk = ps.skeleton
    axes_a, data_a = A
    axes_b, data_b = B
    shared = [(i, axes_b.index(sk.pairing[h])) for i, h in enumerate(axes_a)
              if sk.pairing[h] in axes_b]
    ia = [i for i, _ in shared]
    ib = [j for _, j in shared]
    keep_a = [i for i in range(len(axes_a)) if i not in ia]
    keep_b = [j for j in range(len(axes_b)) if j not in ib]
    mats = [T.canon[ps.g[axes_a[i]]] for i in ia]
    # push A's shared indices through the canonical-element grids
    pushed = {}
    for key, x in data_a.items():
        partial = {(): x}
        for M, i in zip(mats, ia):
            nxt = {}
            row = key[i]
            for pre, y in partial.items():
                for j in range(M.ncols):
                    c = M[row, j]
                    if c:
                        kk = pre + (j,)
                        nxt[kk] = nxt.get(kk, ZERO) + c * y
            partial = nxt
        rest = tuple(key[i] for i in keep_a)
        for idx, y in partial.items():
            k2 = (rest, idx)
            pushed[k2] = pushed.get(k2, ZERO) + y
    by_idx = {}
    for key, x in data_b.items():
        idx = tuple(key[j] for j in ib)
        by_idx.setdefault(idx, []).append((tuple(key[j] for j in keep_b), x))
    out = {}
    for (rest_a, idx), x in pushed.items():
        for rest_b, y in by_idx.get(idx, ()):
            k = rest_a + rest_b
            out[k] = out.get(k, ZERO) + x * y
    axes = [axes_a[i] for i in keep_a] + [axes_b[j] for j in keep_b]
    return axes, {k: x for k, x in out.items() if x}


def state_sum_bracket(T: _TraceFormAlgebra, ps: PiSystem) -> Fraction:
    """``<g>``: canonical elements on edges contracted with cyclic forms at vertices."""
    if T.group != ps.group:
        raise GroupMismatch("algebra and labelling use different groups")
    sk = ps.skeleton
    tensors = [_vertex_tensor(T, ps, v) for v in range(sk.num_vertices)]
    current = tensors.pop(0)
    while tensors:
        ax = set(sk.pairing[h] for h in current[0])
        best = max(range(len(tensors)), key=lambda k: len(ax & set(tensors[k][0])))
        current = _merge(T, ps, current, tensors.pop(best))
    axes, data = current
    if axes:
        raise InternalError("uncontracted edges remain")
    return data.get((), ZERO)


def face_sum(T: _TraceFormAlgebra, ps: PiSystem) -> Fraction:
    """Sum of ``<gamma g>`` over all face labellings ``gamma``."""
    G = ps.group
    F = ps.skeleton.num_faces
    if G.order ** F > FACE_SUM_LIMIT:
        raise TooLarge(f"{G.order}^{F} face labellings exceed the limit of {FACE_SUM_LIMIT}")
    total = ZERO
    for gamma in itertools.product(G.elements, repeat=F):
        total += state_sum_bracket(T, homotopy_act(ps, gamma))
    return total


def _as_pi_system(T, surface) -> PiSystem:
    if isinstance(surface, SurfaceSignature):
        return canonical_skeleton(surface, T.group)
    if isinstance(surface, PiSystem):
        return surface
    raise TypeError("surface must be a SurfaceSignature or a PiSystem")


def tau(model: str, alg, surface) -> Fraction:
    """The invariant of a closed labelled surface in either model.

    Disconnected skeletons are handled by the same contraction, which
    multiplies over components.
    """
    T = trace_algebra(model, alg)
    ps = _as_pi_system(T, surface)
    if T.group != ps.group:
        raise GroupMismatch("algebra and labelling use different groups")
    if model == "biangular":
        return state_sum_bracket(T, ps)
    return face_sum(T, ps)


def _bracket_element(T: _TraceFormAlgebra, a: int, b: int) -> tuple:
    """``[b_a, b_b] = sum c c' p_i p'_k q_j q'_l``, an element of degree ``a b a^-1 b^-1``."""
    L = T.base
    G = T.group
    ai, bi = G.inv[a], G.inv[b]
    ab = G.mult[a][b]
    aba = G.mult[ab][ai]
    out = (ZERO,) * L.dims[G.mult[aba][bi]]
    for (c1, p, q) in T.b_element(a):
        for (c2, p2, q2) in T.b_element(b):
            x = L.mul_vec(a, p, b, p2)
            x = L.mul_vec(ab, x, ai, q)
            x = L.mul_vec(aba, x, bi, q2)
            out = vadd(out, vscale(c1 * c2, x))
    return out


def _commutator_product(T: _TraceFormAlgebra, alphas) -> tuple:
    L = T.base
    G = T.group
    deg, val = 0, L.unit
    for r in range(len(alphas) // 2):
        a, b = alphas[2 * r], alphas[2 * r + 1]
        c = G.commutator(a, b)
        val = L.mul_vec(deg, val, c, _bracket_element(T, a, b))
        deg = G.mult[deg][c]
    return deg, val


def genus_formula(model: str, alg, sig: SurfaceSignature) -> Fraction:
    """Closed-form value of a genus-n surface, independent of the skeleton machinery."""
    T = trace_algebra(model, alg)
    G = T.group
    sig.check(G)
    L = T.base
    if sig.genus == 0:
        base = L.form(0, L.unit, L.unit)
        return base if model == "biangular" else G.order * base
    if model == "biangular":
        deg, val = _commutator_product(T, sig.alphas)
        return L.form(0, val, L.unit)
    total = ZERO
    for b in G.elements:
        conj = [G.conj(b, a) for a in sig.alphas]
        deg, val = _commutator_product(T, conj)
        total += L.form(0, val, L.unit)
    return total
