"""Crossed algebras: validation, constructors and semisimple structure theory."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import (AxiomViolation, DimensionAnomaly, InternalError, KernelActsNontrivially,
                     KernelNotCentral, NotAnAction, NotAutomorphism, NotCommutative, NotSimple,
                     NotSplitSemisimple, NotSurjective, NotTraceless, ZeroScale, HQFTError)
from .graded import (CrossedAlgebra, FrobeniusAlgebra, GradedVector, _revalidate, combine,
                     inner, pushforward, validate_frobenius)
from .groups import (Cocycle2, FiniteGroup, Subgroup, check_cocycle, check_embedding,
                     check_homomorphism, trivial_cocycle)
from .linalg import (ONE, ZERO, Matrix, charpoly, rational_roots, scalar, solve_linear,
                     unit_vec, vscale)


# --- validation ------------------------------------------------------------
def _basis_pairs(alg, a, b):
    return itertools.product(range(alg.dims[a]), range(alg.dims[b]))


def check_action(alg: CrossedAlgebra) -> None:
    g = alg.group
    for a in g.elements:
        if alg.phi[(0, a)] != Matrix.identity(alg.dims[a]):
            raise AxiomViolation("phi_1 is not the identity", witness=(0, a), axiom="action")
    for b, c, a in itertools.product(g.elements, repeat=3):
        ca = g.conj(c, a)
        if alg.phi[(b, ca)] @ alg.phi[(c, a)] != alg.phi[(g.mult[b][c], a)]:
            raise AxiomViolation("phi_b phi_c != phi_bc", witness=(b, c, a), axiom="action")


def validate_crossed(alg: CrossedAlgebra) -> CrossedAlgebra:
    """Check every Frobenius and crossed axiom on basis elements.

    Failures raise :class:`AxiomViolation` tagged with the axiom that broke
    (``"3.1.1"`` ... ``"3.2.4"``, or ``"action"``/``"associativity"``/``"unit"``)
    and a basis witness.
    """
    validate_frobenius(alg)
    check_action(alg)
    g = alg.group
    d = alg.dims
    # 3.2.1: algebra automorphisms preserving the form
    for b in g.elements:
        if alg.phi[(b, 0)] @ alg.unit != alg.unit:
            raise AxiomViolation("phi_b does not fix the unit", witness=(b,), axiom="3.2.1")
        for a1, a2 in itertools.product(g.elements, repeat=2):
            a12 = g.mult[a1][a2]
            t1, t2 = g.conj(b, a1), g.conj(b, a2)
            P1, P2, P12 = alg.phi[(b, a1)], alg.phi[(b, a2)], alg.phi[(b, a12)]
            for i, j in _basis_pairs(alg, a1, a2):
                lhs = P12 @ alg.mult[(a1, a2)][i][j]
                rhs = alg.mul_vec(t1, P1.col(i), t2, P2.col(j))
                if lhs != rhs:
                    raise AxiomViolation("phi_b is not multiplicative",
                                         witness=(b, (a1, i), (a2, j)), axiom="3.2.1")
        for a in g.elements:
            ai = g.inv[a]
            t = g.conj(b, a)
            P, Q = alg.phi[(b, a)], alg.phi[(b, ai)]
            if P.T @ alg.eta[t] @ Q != alg.eta[a]:
                w = next((i, j) for i, j in _basis_pairs(alg, a, ai)
                         if alg.form(t, P.col(i), Q.col(j)) != alg.eta[a][i, j])
                raise AxiomViolation("phi_b does not preserve the form",
                                     witness=(b, (a, w[0]), (ai, w[1])), axiom="3.2.1")
    # 3.2.2
    for b in g.elements:
        if alg.phi[(b, b)] != Matrix.identity(d[b]):
            P = alg.phi[(b, b)]
            i = next(i for i in range(d[b]) if P.col(i) != unit_vec(d[b], i))
            raise AxiomViolation("phi_b is not the identity on L_b", witness=(b, i),
                                 axiom="3.2.2")
    # 3.2.3: phi_b(x) y = y x for x in L_a, y in L_b
    for a, b in itertools.product(g.elements, repeat=2):
        t = g.conj(b, a)
        for i, j in _basis_pairs(alg, a, b):
            lhs = alg.mul_vec(t, alg.phi[(b, a)].col(i), b, unit_vec(d[b], j))
            rhs = alg.mult[(b, a)][j][i]
            if lhs != rhs:
                raise AxiomViolation("phi_b(x) y != y x", witness=((a, i), (b, j)),
                                     axiom="3.2.3")
    # 3.2.4: Tr(c phi_b | L_a) = Tr(phi_{a^-1} c | L_b) for c in L_{[a,b]}
    for a, b in itertools.product(g.elements, repeat=2):
        c = g.commutator(a, b)
        for k in range(d[c]):
            e = unit_vec(d[c], k)
            lhs = trace_c_phi(alg, c, e, a, b)
            rhs = trace_phi_c(alg, c, e, a, b)
            if lhs != rhs:
                raise AxiomViolation("trace identity fails", witness=(a, b, (c, k)),
                                     axiom="3.2.4")
    return alg


def trace_c_phi(alg, c, u, a, b) -> Fraction:
    """``Tr(x -> u phi_b(x) : L_a -> L_a)`` for ``u`` in ``L_c``."""
    t = alg.group.conj(b, a)
    return (alg.left_matrix(c, u, t) @ alg.phi[(b, a)]).trace()


def trace_phi_c(alg, c, u, a, b) -> Fraction:
    """``Tr(x -> phi_{a^-1}(u x) : L_b -> L_b)`` for ``u`` in ``L_c``."""
    g = alg.group
    cb = g.mult[c][b]
    return (alg.phi[(g.inv[a], cb)] @ alg.left_matrix(c, u, b)).trace()


# --- constructors ----------------------------------------------------------
def cocycle_algebra(group: FiniteGroup, theta: Cocycle2) -> CrossedAlgebra:
    """The twisted group algebra with basis ``l_a`` and ``l_a l_b = theta(a,b) l_ab``."""
    g = group
    t = theta.values
    mult = {(a, b): [[(t[a][b],)]] for a in g.elements for b in g.elements}
    eta = {a: Matrix([[t[a][g.inv[a]]]]) for a in g.elements}
    phi = {}
    for b in g.elements:
        for a in g.elements:
            y = t[b][a] / t[g.conj(b, a)][b]
            phi[(b, a)] = Matrix([[y]])
    alg = CrossedAlgebra(g, [1] * g.order, [1], mult, eta=eta, phi=phi)
    return _revalidate(alg)


def group_ring(group: FiniteGroup) -> CrossedAlgebra:
    return cocycle_algebra(group, trivial_cocycle(group))


def rescale(L: CrossedAlgebra, k) -> CrossedAlgebra:
    k = scalar(k)
    if k == 0:
        raise ZeroScale("cannot rescale the form by 0")
    return CrossedAlgebra(L.group, L.dims, L.unit, L.mult, eta=L.rescaled_eta(k), phi=L.phi)


def transfer(group: FiniteGroup, sub: Subgroup, L: CrossedAlgebra, emb=None) -> CrossedAlgebra:
    """Induce a crossed algebra over ``sub`` (as a group) up to ``group``.

    ``emb[h]`` is the element of ``group`` corresponding to element ``h`` of
    ``L.group``; it defaults to ``sub.elements`` (the order used by
    :meth:`Subgroup.as_group`).  Degree ``a`` of the result has one block per
    coset ``i`` with ``w_i a w_i^-1`` in the subgroup, in coset order.
    """
    if sub.parent != group:
        raise HQFTError("subgroup belongs to a different group")
    emb = check_embedding(L.group, sub, sub.elements if emb is None else emb)
    back = {x: h for h, x in enumerate(emb)}
    g = group
    reps = sub.representatives
    ncos = sub.index

    def inner_deg(i, a):
        x = g.mul(reps[i], a, g.inv[reps[i]])
        return back.get(x)

    blocks = {}
    dims = []
    for a in g.elements:
        lst, off = [], 0
        for i in range(ncos):
            h = inner_deg(i, a)
            if h is not None:
                lst.append((i, h, off))
                off += L.dims[h]
        blocks[a] = lst
        dims.append(off)
    where = {a: {i: (h, off) for i, h, off in blocks[a]} for a in g.elements}

    def fn(a, i, b, j):
        ab = g.mult[a][b]
        out = [ZERO] * dims[ab]
        ci = next(c for c, h, off in blocks[a] if off <= i < off + L.dims[h])
        hi, oi = where[a][ci]
        if ci not in where[b]:
            return tuple(out)
        hj, oj = where[b][ci]
        if not oj <= j < oj + L.dims[hj]:
            return tuple(out)
        hab, oab = where[ab][ci]
        for k, x in enumerate(L.mult[(hi, hj)][i - oi][j - oj]):
            out[oab + k] = x
        return tuple(out)

    mult = {(a, b): [[fn(a, i, b, j) for j in range(dims[b])] for i in range(dims[a])]
            for a in g.elements for b in g.elements}
    unit = []
    for i in range(ncos):
        unit.extend(L.unit)
    eta = {}
    for a in g.elements:
        ai = g.inv[a]
        m = [[ZERO] * dims[ai] for _ in range(dims[a])]
        for i, h, off in blocks[a]:
            hi2, off2 = where[ai][i]
            for r in range(L.dims[h]):
                for s in range(L.dims[hi2]):
                    m[off + r][off2 + s] = L.eta[h][r, s]
        eta[a] = Matrix(m, ncols=dims[ai])
    phi = {}
    for b in g.elements:
        for a in g.elements:
            t = g.conj(b, a)
            m = [[ZERO] * dims[a] for _ in range(dims[t])]
            for i, h, off in blocks[a]:
                bi = sub.coset_of(g.mult[reps[i]][g.inv[b]])
                beta_i = back[g.mul(reps[bi], b, g.inv[reps[i]])]
                h2, off2 = where[t][bi]
                P = L.phi[(beta_i, h)]
                for r in range(L.dims[h2]):
                    for s in range(L.dims[h]):
                        m[off2 + r][off + s] = P[r, s]
            phi[(b, a)] = Matrix(m, ncols=dims[a])
    return _revalidate(CrossedAlgebra(g, dims, unit, mult, eta=eta, phi=phi))


def transfer_blocks(group: FiniteGroup, sub: Subgroup, emb=None) -> dict:
    """``N(a)``: the cosets contributing a block to degree ``a`` of a transfer."""
    emb = tuple(sub.elements if emb is None else emb)
    inside = set(emb)
    out = {}
    for a in group.elements:
        out[a] = [i for i, w in enumerate(sub.representatives)
                  if group.mul(w, a, group.inv[w]) in inside]
    return out


def pushforward_crossed(q, dst: FiniteGroup, L: CrossedAlgebra) -> CrossedAlgebra:
    """Regroup a crossed algebra along a surjection with central kernel acting trivially."""
    src = L.group
    q = check_homomorphism(src, dst, q)
    if set(q) != set(dst.elements):
        missing = min(set(dst.elements) - set(q))
        raise NotSurjective("homomorphism is not surjective", witness=(missing,))
    kernel = [h for h in src.elements if q[h] == 0]
    for h in kernel:
        for u in src.elements:
            if src.mult[h][u] != src.mult[u][h]:
                raise KernelNotCentral("kernel element is not central", witness=(h, u))
    for h in kernel:
        for u in src.elements:
            if L.phi[(h, u)] != Matrix.identity(L.dims[u]):
                raise KernelActsNontrivially("kernel element acts nontrivially", witness=(h, u))
    lift = {}
    for u in src.elements:
        lift.setdefault(q[u], u)

    def make_phi(layout, offset, dims):
        phi = {}
        for b in dst.elements:
            u0 = lift[b]
            for a in dst.elements:
                t = dst.conj(b, a)
                m = [[ZERO] * dims[a] for _ in range(dims[t])]
                for u, off in layout[a]:
                    v = src.conj(u0, u)
                    P = L.phi[(u0, u)]
                    for r in range(L.dims[v]):
                        for s in range(L.dims[u]):
                            m[offset[v] + r][off + s] = P[r, s]
                phi[(b, a)] = Matrix(m, ncols=dims[a])
        return phi

    return _revalidate(pushforward(q, dst, L, _keep_phi=make_phi))


def _check_trivial_group_algebra(A: FrobeniusAlgebra):
    if A.group.order != 1:
        raise HQFTError("expected an algebra over the trivial group")
    n = A.dims[0]
    for i in range(n):
        for j in range(n):
            if A.mult[(0, 0)][i][j] != A.mult[(0, 0)][j][i]:
                raise NotCommutative("algebra is not commutative", witness=(i, j))


def pi_F_algebra(A: FrobeniusAlgebra, group: FiniteGroup, action) -> CrossedAlgebra:
    """Crossed algebra concentrated in degree 1 from a commutative Frobenius algebra
    with a group action; requires every non-identity element to act tracelessly
    after multiplication by any ``c``.

    ``action[b]`` is the matrix (column convention) of the action of ``b``.
    """
    validate_frobenius(A)
    _check_trivial_group_algebra(A)
    n = A.dims[0]
    acts = {}
    for b in group.elements:
        m = action[b]
        acts[b] = m if isinstance(m, Matrix) else Matrix(m, ncols=n)
    for b in group.elements:
        P = acts[b]
        if P.shape != (n, n) or not P.is_invertible():
            raise NotAutomorphism("action matrix is not invertible", witness=(b,))
        if P @ A.unit != A.unit:
            raise NotAutomorphism("action does not fix the unit", witness=(b,))
        for i, j in itertools.product(range(n), repeat=2):
            if P @ A.mult[(0, 0)][i][j] != A.mul_vec(0, P.col(i), 0, P.col(j)):
                raise NotAutomorphism("action is not multiplicative", witness=(b, i, j))
        if P.T @ A.eta[0] @ P != A.eta[0]:
            raise NotAutomorphism("action does not preserve the form", witness=(b,))
    if acts[0] != Matrix.identity(n):
        raise NotAnAction("identity acts nontrivially", witness=(0,))
    for b, c in itertools.product(group.elements, repeat=2):
        if acts[b] @ acts[c] != acts[group.mult[b][c]]:
            raise NotAnAction("composition law fails", witness=(b, c))
    for b in group.elements:
        if b == 0:
            continue
        for k in range(n):
            if (A.left_matrix(0, unit_vec(n, k), 0) @ acts[b]).trace() != 0:
                raise NotTraceless("Tr(c phi_b) != 0", witness=(b, k))
    dims = [n] + [0] * (group.order - 1)
    mult = {(0, 0): A.mult[(0, 0)]}
    eta = {0: A.eta[0]}
    phi = {(b, 0): acts[b] for b in group.elements}
    for b in group.elements:
        for a in group.elements:
            if a:
                phi[(b, a)] = Matrix.zeros(0, 0)
    return _revalidate(CrossedAlgebra(group, dims, A.unit, mult, eta=eta, phi=phi))


# --- restriction to subspaces ----------------------------------------------
class Subspaces:
    """Per-degree subspaces of an ambient algebra with rref bases.

    ``bases[a]`` lists ambient vectors of degree ``a`` in reduced row-echelon
    form; ``pivots[a]`` are their leading coordinates.
    """

    def __init__(self, bases: dict, dims: dict):
        self.bases = {a: list(rows) for a, rows in bases.items()}
        self.ambient_dims = dims
        self.pivots = {a: [next(k for k, x in enumerate(r) if x) for r in rows]
                       for a, rows in self.bases.items()}

    @classmethod
    def image(cls, matrices: dict, dims: dict) -> "Subspaces":
        return cls({a: M.image_basis() for a, M in matrices.items()}, dims)

    def dim(self, a):
        return len(self.bases[a])

    def coords(self, a, w) -> tuple:
        c = tuple(w[p] for p in self.pivots[a])
        back = [ZERO] * self.ambient_dims[a]
        for x, r in zip(c, self.bases[a]):
            if x:
                for k, y in enumerate(r):
                    back[k] += x * y
        if tuple(back) != tuple(w):
            raise InternalError("vector does not lie in the subspace", witness=(a,))
        return c

    def embed(self, a, coeffs) -> tuple:
        out = [ZERO] * self.ambient_dims[a]
        for x, r in zip(coeffs, self.bases[a]):
            if x:
                for k, y in enumerate(r):
                    out[k] += x * y
        return tuple(out)

    def embedding_matrix(self, a) -> Matrix:
        return Matrix.from_columns(self.bases[a], self.ambient_dims[a])


def restrict(group, sub: Subspaces, mul, unit, form, act) -> CrossedAlgebra:
    """Build the crossed algebra carried by ``sub``.

    ``mul(a, u, b, v)``, ``form(a, u, v)`` and ``act(b, a, u)`` operate on
    ambient vectors; every result is re-expressed in ``sub``'s bases and a
    closure failure raises :class:`InternalError`.
    """
    g = group
    dims = [sub.dim(a) for a in g.elements]
    mult = {}
    for a in g.elements:
        for b in g.elements:
            ab = g.mult[a][b]
            mult[(a, b)] = [[sub.coords(ab, mul(a, ra, b, rb)) for rb in sub.bases[b]]
                            for ra in sub.bases[a]]
    eta = {a: Matrix([[form(a, ra, rb) for rb in sub.bases[g.inv[a]]] for ra in sub.bases[a]],
                     ncols=dims[g.inv[a]]) for a in g.elements}
    phi = {}
    for b in g.elements:
        for a in g.elements:
            t = g.conj(b, a)
            cols = [sub.coords(t, act(b, a, r)) for r in sub.bases[a]]
            phi[(b, a)] = Matrix.from_columns(cols, dims[t]) if cols else Matrix.zeros(dims[t], 0)
    return CrossedAlgebra(g, dims, sub.coords(0, unit), mult, eta=eta, phi=phi)


# --- isomorphisms ----------------------------------------------------------
def check_isomorphism(A: CrossedAlgebra, B: CrossedAlgebra, maps: dict) -> None:
    """Check that ``maps[a]`` (``B_a x A_a`` matrices) define an isomorphism A -> B.

    Raises :class:`InternalError` naming the first structure that is not preserved.
    """
    g = A.group
    if B.group != g:
        raise InternalError("isomorphism between algebras over different groups")
    for a in g.elements:
        M = maps[a]
        if M.shape != (B.dims[a], A.dims[a]) or (A.dims[a] and not M.is_invertible()):
            raise InternalError("degree map is not bijective", witness=(a,))
    if maps[0] @ A.unit != B.unit:
        raise InternalError("unit is not preserved")
    for a, b in itertools.product(g.elements, repeat=2):
        ab = g.mult[a][b]
        for i, j in _basis_pairs(A, a, b):
            if maps[ab] @ A.mult[(a, b)][i][j] != B.mul_vec(a, maps[a].col(i), b, maps[b].col(j)):
                raise InternalError("multiplication is not preserved", witness=((a, i), (b, j)))
    for a in g.elements:
        ai = g.inv[a]
        if maps[a].T @ B.eta[a] @ maps[ai] != A.eta[a]:
            raise InternalError("form is not preserved", witness=(a,))
    for b, a in itertools.product(g.elements, repeat=2):
        t = g.conj(b, a)
        if maps[t] @ A.phi[(b, a)] != B.phi[(b, a)] @ maps[a]:
            raise InternalError("action is not preserved", witness=(b, a))


# --- semisimple structure --------------------------------------------------
@dataclass(frozen=True)
class SemisimpleStructure:
    """Basic idempotents of ``L_1`` and how the action permutes them.

    ``perm[b][k]`` is the index of ``phi_b(idempotents[k])``.
    """

    algebra: CrossedAlgebra
    idempotents: tuple
    perm: dict
    orbits: tuple


def _restricted_operator(B: Matrix, op: Matrix) -> Matrix:
    """Matrix of ``op`` on the invariant subspace spanned by the columns of ``B``."""
    img = op @ B
    cols = [solve_linear(B, img.col(j)) for j in range(B.ncols)]
    return Matrix.from_columns(cols, B.ncols)


def basic_idempotents(L: CrossedAlgebra) -> SemisimpleStructure:
    """Split ``L_1`` into joint eigenspaces of the multiplication operators.

    Idempotents are returned in decreasing lexicographic order of their
    coordinate vectors.
    """
    n = L.dims[0]
    spaces = [Matrix.identity(n)]
    for k in range(n):
        mu = L.left_matrix(0, unit_vec(n, k), 0)
        nxt = []
        for B in spaces:
            M = _restricted_operator(B, mu)
            roots, split = rational_roots(charpoly(M))
            if not split:
                raise NotSplitSemisimple("multiplication operator has an irreducible factor "
                                         "over Q", witness=(0, k))
            found = 0
            for r in sorted(roots):
                ker = (M - Matrix.identity(M.nrows) * r).nullspace()
                found += len(ker)
                if ker:
                    nxt.append(B @ Matrix.from_columns(ker, M.nrows))
            if found < M.nrows:
                raise NotSplitSemisimple("multiplication operator is not diagonalizable",
                                         witness=(0, k))
        spaces = nxt
    idems = []
    for B in spaces:
        if B.ncols != 1:
            raise NotSplitSemisimple("joint eigenspace of dimension > 1 (nilpotent part)",
                                     witness=(0,))
        v = B.col(0)
        sq = L.mul_vec(0, v, 0, v)
        piv = next(i for i, x in enumerate(v) if x)
        kappa = sq[piv] / v[piv]
        if kappa == 0 or sq != vscale(kappa, v):
            raise NotSplitSemisimple("nilpotent element in degree 1", witness=(0,))
        idems.append(vscale(ONE / kappa, v))
    idems.sort(key=lambda v: tuple(-x for x in v))
    total = [ZERO] * n
    for i, u in enumerate(idems):
        for j, w in enumerate(idems):
            p = L.mul_vec(0, u, 0, w)
            if p != (u if i == j else (ZERO,) * n):
                raise InternalError("idempotents are not orthogonal", witness=(i, j))
        total = [x + y for x, y in zip(total, u)]
    if tuple(total) != L.unit:
        raise InternalError("idempotents do not sum to the unit")
    index = {v: k for k, v in enumerate(idems)}
    perm = {}
    for b in L.group.elements:
        try:
            perm[b] = tuple(index[L.phi[(b, 0)] @ v] for v in idems)
        except KeyError:
            raise InternalError("action does not permute the idempotents", witness=(b,)) from None
    seen, orbits = set(), []
    for k in range(len(idems)):
        if k in seen:
            continue
        orb = sorted({perm[b][k] for b in L.group.elements})
        seen.update(orb)
        orbits.append(tuple(orb))
    vecs = tuple(GradedVector(L, {0: v}) for v in idems)
    return SemisimpleStructure(L, vecs, perm, tuple(orbits))


def _ideal_subspaces(L: CrossedAlgebra, e: tuple) -> Subspaces:
    mats = {a: L.left_matrix(0, e, a) for a in L.group.elements}
    return Subspaces.image(mats, dict(enumerate(L.dims)))


def _restrict_to(L: CrossedAlgebra, sub: Subspaces, unit, form=None) -> CrossedAlgebra:
    return restrict(L.group, sub, L.mul_vec, unit, form or L.form,
                    lambda b, a, u: L.phi[(b, a)] @ u)


def decompose_simple(L: CrossedAlgebra, S: SemisimpleStructure | None = None) -> list:
    """Split ``L`` into simple summands, one per orbit of basic idempotents.

    Each summand is ``eL`` for the orbit sum ``e``, with the rref basis of
    ``eL_a`` inside ``L_a``.  The direct sum of the summands is checked to be
    isomorphic to ``L`` via these embeddings.
    """
    S = S or basic_idempotents(L)
    parts, subs = [], []
    for orb in S.orbits:
        e = [ZERO] * L.dims[0]
        for k in orb:
            e = [x + y for x, y in zip(e, S.idempotents[k].component(0))]
        e = tuple(e)
        sub = _ideal_subspaces(L, e)
        parts.append(_revalidate(_restrict_to(L, sub, e)))
        subs.append(sub)
    total = parts[0]
    for p in parts[1:]:
        total = combine("direct_sum", total, p)
    maps = {}
    for a in L.group.elements:
        cols = [r for sub in subs for r in sub.bases[a]]
        maps[a] = Matrix.from_columns(cols, L.dims[a]) if cols else Matrix.zeros(L.dims[a], 0)
    check_isomorphism(total, L, maps)
    return parts


@dataclass(frozen=True)
class Classification:
    subgroup: Subgroup
    group: FiniteGroup
    embedding: tuple
    cocycle: Cocycle2
    scale: Fraction


def dimension_pattern(L: CrossedAlgebra, S: SemisimpleStructure) -> dict:
    """``dim(i L_a)`` for every basic idempotent ``i`` and degree ``a``.

    Raises :class:`DimensionAnomaly` unless the dimension is 1 when ``phi_a``
    fixes ``i`` and 0 otherwise.
    """
    out = {}
    for k, idem in enumerate(S.idempotents):
        u = idem.component(0)
        for a in L.group.elements:
            r = L.left_matrix(0, u, a).rank()
            want = 1 if S.perm[a][k] == k else 0
            if r != want:
                raise DimensionAnomaly(f"dim(i L_a) = {r}, expected {want}", witness=(k, a))
            out[(k, a)] = r
    return out


def classify(L: CrossedAlgebra, i0: int = 0) -> Classification:
    """Recover (G, theta, k) from a simple split-semisimple crossed algebra.

    ``G`` is the stabilizer of the chosen basic idempotent, ``k = eta(i0, i0)``
    and ``theta`` comes from generators ``s_a`` of ``i0 L_a`` normalized to have
    first nonzero coordinate 1 (``s_1 = i0``).  The result is checked by
    building the transfer of the cocycle algebra and verifying an explicit
    isomorphism back onto ``L``.
    """
    S = basic_idempotents(L)
    if len(S.orbits) != 1:
        raise NotSimple(f"algebra has {len(S.orbits)} simple summands")
    dimension_pattern(L, S)
    g = L.group
    idem = S.idempotents[i0]
    e = idem.component(0)
    k = inner(idem, idem)
    if k == 0:
        raise InternalError("eta(i, i) = 0 for a basic idempotent")
    G = [a for a in g.elements if S.perm[a][i0] == i0]
    s = {0: e}
    for a in G:
        if a:
            (row,) = L.left_matrix(0, e, a).image_basis()
            s[a] = row

    sub = Subgroup(g, G)
    H, emb = sub.as_group()
    table = []
    for a in emb:
        row = []
        for b in emb:
            ab = g.mult[a][b]
            p = L.mul_vec(a, s[a], b, s[b])
            piv = next(i for i, x in enumerate(s[ab]) if x)
            th = p[piv] / s[ab][piv]
            if p != vscale(th, s[ab]):
                raise InternalError("generator product is not a multiple", witness=(a, b))
            row.append(th)
        table.append(row)
    theta = check_cocycle(H, table)
    # round trip: transfer of the cocycle algebra, rescaled, maps isomorphically onto L
    T = rescale(transfer(g, sub, cocycle_algebra(H, theta), emb), k)
    blocks = transfer_blocks(g, sub, emb)
    maps = {}
    for a in g.elements:
        cols = []
        for i in blocks[a]:
            w = sub.representatives[i]
            gam = g.mul(w, a, g.inv[w])
            cols.append(L.phi[(g.inv[w], gam)] @ s[gam])
        maps[a] = Matrix.from_columns(cols, L.dims[a]) if cols else Matrix.zeros(L.dims[a], 0)
    check_isomorphism(T, L, maps)
    return Classification(sub, H, emb, theta, k)
