"""Biangular and non-degenerate graded algebras and their crossed centers.

In both regimes the inner product is derived from traces of multiplication
operators, never supplied by the caller.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

from .crossed import Subspaces, restrict
from .errors import (DegenerateForm, DegeneratePairing, InternalError, NotAnAction,
                     NotAutomorphism, TraceCondition, HQFTError)
from .graded import (FrobeniusAlgebra, GradedAlgebra, _revalidate, check_graded_algebra,
                     validate_frobenius)
from .groups import FiniteGroup
from .linalg import ONE, ZERO, Matrix, canonical_element, dot, unit_vec, vadd, vscale


class _TraceFormAlgebra:
    """Shared machinery: derived form, canonical elements ``b_a`` and ``psi``."""

    model = ""

    def __init__(self, base: FrobeniusAlgebra, canon: dict):
        self.base = base
        # canon[a]: coefficient grid of b_a = sum c_ij p_i (x) q_j, p in L_a, q in L_{a^-1}
        self.canon = canon
        self._psi = {}

    @property
    def group(self) -> FiniteGroup:
        return self.base.group

    def b_element(self, a: int) -> list:
        """``b_a`` as a list of ``(coeff, p_vector, q_vector)`` triples."""
        C = self.canon[a]
        g = self.group
        d, di = self.base.dims[a], self.base.dims[g.inv[a]]
        return [(C[i, j], unit_vec(d, i), unit_vec(di, j))
                for i in range(d) for j in range(di) if C[i, j]]

    def b_hat(self, a: int) -> tuple:
        """``sum_i p_i q_i`` in ``L_1``."""
        L = self.base
        g = self.group
        out = (ZERO,) * L.dims[0]
        for c, p, q in self.b_element(a):
            out = vadd(out, vscale(c, L.mul_vec(a, p, g.inv[a], q)))
        return out

    def psi(self, a: int) -> dict:
        """Matrices of ``psi_a(x) = sum_i p_i x q_i`` on every degree ``b``."""
        if a in self._psi:
            return self._psi[a]
        L = self.base
        g = self.group
        ai = g.inv[a]
        out = {}
        for b in g.elements:
            ab = g.mult[a][b]
            t = g.conj(a, b)
            cols = []
            for k in range(L.dims[b]):
                x = unit_vec(L.dims[b], k)
                col = (ZERO,) * L.dims[t]
                for c, p, q in self.b_element(a):
                    px = L.mul_vec(a, p, b, x)
                    col = vadd(col, vscale(c, L.mul_vec(ab, px, ai, q)))
                cols.append(col)
            out[b] = Matrix.from_columns(cols, L.dims[t]) if cols else Matrix.zeros(L.dims[t], 0)
        self._psi[a] = out
        return out


class BiangularAlgebra(_TraceFormAlgebra):
    model = "biangular"


class NonDegenerateAlgebra(_TraceFormAlgebra):
    model = "nondeg"

    def __init__(self, base, canon):
        super().__init__(base, canon)
        self.bhat = {a: self.b_hat(a) for a in base.group.elements}


def _plain(A: GradedAlgebra) -> GradedAlgebra:
    if type(A) is GradedAlgebra:
        return A
    return GradedAlgebra(A.group, A.dims, A.unit, A.mult)


def _trace_form(A: GradedAlgebra, degrees) -> dict:
    """``eta(a, b) = sum over degrees g of Tr(x -> abx on L_g)``."""
    g = A.group
    eta = {}
    tr_cache = {}

    def tr(v):
        if v not in tr_cache:
            tr_cache[v] = sum((A.left_matrix(0, v, c).trace() for c in degrees), ZERO)
        return tr_cache[v]

    for a in g.elements:
        ai = g.inv[a]
        rows = [[tr(A.mult[(a, ai)][i][j]) for j in range(A.dims[ai])] for i in range(A.dims[a])]
        eta[a] = Matrix(rows, ncols=A.dims[ai])
    return eta


def _canonical(A: FrobeniusAlgebra) -> dict:
    canon = {}
    g = A.group
    for a in g.elements:
        if A.dims[a] != A.dims[g.inv[a]]:
            raise DegenerateForm("trace form is degenerate", witness=(a,))
        try:
            canon[a] = canonical_element(A.eta[a]).coeffs
        except DegeneratePairing:
            raise DegenerateForm("trace form is degenerate", witness=(a,)) from None
    return canon


def check_biangular(A: GradedAlgebra) -> BiangularAlgebra:
    """Check the degree-independence of traces and non-degeneracy of the ``L_1`` trace form."""
    A = check_graded_algebra(_plain(A))
    g = A.group
    n = A.dims[0]
    for k in range(n):
        e = unit_vec(n, k)
        t1 = A.left_matrix(0, e, 0).trace()
        for a in g.elements:
            if A.left_matrix(0, e, a).trace() != t1:
                raise TraceCondition("Tr(mu_l | L_a) != Tr(mu_l | L_1)", witness=(k, a))
    eta = _trace_form(A, [0])
    F = FrobeniusAlgebra(g, A.dims, A.unit, A.mult, eta=eta)
    canon = _canonical(F)
    validate_frobenius(F)
    B = BiangularAlgebra(F, canon)
    for a in g.elements:
        if B.b_hat(a) != A.unit:
            raise InternalError("sum_i p_i q_i != 1 in a biangular algebra", witness=(a,))
    return B


def check_nondegenerate(A: GradedAlgebra) -> NonDegenerateAlgebra:
    """Check non-degeneracy of the whole-algebra trace form and the separability identities."""
    A = check_graded_algebra(_plain(A))
    g = A.group
    eta = _trace_form(A, list(g.elements))
    F = FrobeniusAlgebra(g, A.dims, A.unit, A.mult, eta=eta)
    canon = _canonical(F)
    validate_frobenius(F)
    N = NonDegenerateAlgebra(F, canon)
    total = (ZERO,) * A.dims[0]
    for a in g.elements:
        total = vadd(total, N.bhat[a])
    if total != A.unit:
        raise InternalError("sum of b-hat elements is not the unit")
    for a, b in itertools.product(g.elements, repeat=2):
        ok, w = separability_identity(N, a, b)
        if not ok:
            raise InternalError("(a (x) 1) b_beta != b_{alpha beta} (1 (x) a)", witness=(a, b, w))
    return N


def separability_identity(N: _TraceFormAlgebra, a: int, b: int) -> tuple:
    """Compare ``(x (x) 1) b_b`` and ``b_ab (1 (x) x)`` for every basis ``x`` of ``L_a``.

    Both sides live in ``L_ab (x) L_{b^-1}`` and are compared as coefficient
    matrices.  Returns ``(True, None)`` or ``(False, basis index)``.
    """
    L = N.base
    g = N.group
    ab = g.mult[a][b]
    bi, abi = g.inv[b], g.inv[ab]
    for k in range(L.dims[a]):
        x = unit_vec(L.dims[a], k)
        lhs = L.left_matrix(a, x, b) @ N.canon[b]
        rhs = N.canon[ab] @ L.right_matrix(a, x, abi).T
        if lhs != rhs:
            return False, k
    return True, None


def lemma_identity(N: _TraceFormAlgebra, a: int, x_deg: int, x: tuple, y_deg: int, y: tuple) -> tuple:
    """Both sides of ``sum_i eta(x p_i, 1) eta(q_i y, 1) = eta(xy, 1)`` for ``b_a``.

    The identity is meant for ``x`` in ``L_{a^-1}`` and ``y`` in ``L_a``; for
    other degrees the left side vanishes by grading.
    """
    L = N.base
    g = N.group
    one = L.unit
    lhs = ZERO
    for c, p, q in N.b_element(a):
        xp = L.mul_vec(x_deg, x, a, p)
        qy = L.mul_vec(g.inv[a], q, y_deg, y)
        d1, d2 = g.mult[x_deg][a], g.mult[g.inv[a]][y_deg]
        if d1 == 0 and d2 == 0:
            lhs += c * L.form(0, xp, one) * L.form(0, qy, one)
    xy = L.mul_vec(x_deg, x, y_deg, y)
    rhs = L.form(0, xy, one) if g.mult[x_deg][y_deg] == 0 else ZERO
    return lhs, rhs


def pi_center_biangular(B: BiangularAlgebra):
    """The crossed algebra ``C_a = psi_1(L_a)`` with action ``psi_b`` and the restricted form."""
    L = B.base
    g = B.group
    P1 = B.psi(0)
    sub = Subspaces.image(P1, dict(enumerate(L.dims)))
    C = restrict(g, sub, L.mul_vec, L.unit, L.form, lambda b, a, u: B.psi(b)[a] @ u)
    return _revalidate(C)


class ExtendedSpace:
    """``P_a``: direct sum over ``w`` in the group of ``L_{w a w^-1}``, blocks ordered by ``w``."""

    def __init__(self, N: NonDegenerateAlgebra):
        self.N = N
        L = N.base
        g = N.group
        self.offsets = {}
        self.dims = {}
        for a in g.elements:
            off = 0
            for w in g.elements:
                self.offsets[(a, w)] = off
                off += L.dims[g.conj(w, a)]
            self.dims[a] = off

    def block(self, a, w, u) -> tuple:
        o = self.offsets[(a, w)]
        return tuple(u[o:o + self.N.base.dims[self.N.group.conj(w, a)]])

    def assemble(self, a, parts: dict) -> tuple:
        out = []
        g = self.N.group
        for w in g.elements:
            out.extend(parts.get(w, (ZERO,) * self.N.base.dims[g.conj(w, a)]))
        return tuple(out)

    def mul(self, a, u, b, v) -> tuple:
        L = self.N.base
        g = self.N.group
        return self.assemble(g.mult[a][b], {
            w: L.mul_vec(g.conj(w, a), self.block(a, w, u), g.conj(w, b), self.block(b, w, v))
            for w in g.elements})

    def form(self, a, u, v) -> Fraction:
        L = self.N.base
        g = self.N.group
        ai = g.inv[a]
        return sum((L.form(g.conj(w, a), self.block(a, w, u), self.block(ai, w, v))
                    for w in g.elements), ZERO)

    def gram(self, a) -> Matrix:
        """Matrix of ``form`` on ``P_a x P_{a^-1}``: block-diagonal in ``w``."""
        L = self.N.base
        g = self.N.group
        ai = g.inv[a]
        rows = [[ZERO] * self.dims[ai] for _ in range(self.dims[a])]
        for w in g.elements:
            E = L.eta[g.conj(w, a)]
            r0, c0 = self.offsets[(a, w)], self.offsets[(ai, w)]
            for r in range(E.nrows):
                for c in range(E.ncols):
                    rows[r0 + r][c0 + c] = E[r, c]
        return Matrix(rows, ncols=self.dims[ai])

    def unit(self) -> tuple:
        return self.assemble(0, {w: self.N.base.unit for w in self.N.group.elements})

    def Psi(self, b, a) -> Matrix:
        """Block matrix of ``Psi_b: P_a -> P_{b a b^-1}``; block (w', w) is ``psi_{w' b w^-1}``."""
        N = self.N
        L = N.base
        g = N.group
        t = g.conj(b, a)
        rows = [[ZERO] * self.dims[a] for _ in range(self.dims[t])]
        for w in g.elements:
            src = g.conj(w, a)
            so = self.offsets[(a, w)]
            for w2 in g.elements:
                m = N.psi(g.mul(w2, b, g.inv[w]))[src]
                to = self.offsets[(t, w2)]
                for r in range(m.nrows):
                    for c in range(m.ncols):
                        rows[to + r][so + c] = m[r, c]
        return Matrix(rows, ncols=self.dims[a])


def pi_center_nondegenerate(N: NonDegenerateAlgebra):
    """The crossed algebra ``C_a = Psi_1(P_a)`` with coordinatewise product and action ``Psi_b``."""
    g = N.group
    P = ExtendedSpace(N)
    Psi = {(b, a): P.Psi(b, a) for b in g.elements for a in g.elements}
    for b, c, a in itertools.product(g.elements, repeat=3):
        if Psi[(b, g.conj(c, a))] @ Psi[(c, a)] != Psi[(g.mult[b][c], a)]:
            raise InternalError("Psi is not an action", witness=(b, c, a))
    for a in g.elements:
        M = Psi[(0, a)]
        if M @ M != M:
            raise InternalError("Psi_1 is not idempotent", witness=(a,))
        ai = g.inv[a]
        H = P.gram(a)
        if M.T @ H != H @ Psi[(0, ai)]:
            raise InternalError("Psi_1 is not self-adjoint", witness=(a,))
    sub = Subspaces.image({a: Psi[(0, a)] for a in g.elements}, P.dims)
    C = restrict(g, sub, P.mul, P.unit(), P.form, lambda b, a, u: Psi[(b, a)] @ u)
    return _revalidate(C)


def pi_center(model: str, alg):
    if model == "biangular":
        B = alg if isinstance(alg, BiangularAlgebra) else check_biangular(alg)
        return pi_center_biangular(B)
    if model == "nondeg":
        N = alg if isinstance(alg, NonDegenerateAlgebra) else check_nondegenerate(alg)
        return pi_center_nondegenerate(N)
    raise ValueError(f"unknown model {model!r}")


def trace_algebra(model: str, alg):
    """Wrap a graded algebra in the requested trace-form regime (idempotent on wrapped input)."""
    if model == "biangular":
        return alg if isinstance(alg, BiangularAlgebra) else check_biangular(alg)
    if model == "nondeg":
        return alg if isinstance(alg, NonDegenerateAlgebra) else check_nondegenerate(alg)
    raise ValueError(f"unknown model {model!r}")


# --- example constructors --------------------------------------------------
def _check_automorphism_action(A: GradedAlgebra, group: FiniteGroup, acts: dict) -> None:
    n = A.dims[0]
    for b in group.elements:
        P = acts[b]
        if P.shape != (n, n) or not P.is_invertible():
            raise NotAutomorphism("action matrix is not invertible", witness=(b,))
        if P @ A.unit != A.unit:
            raise NotAutomorphism("action does not fix the unit", witness=(b,))
        for i, j in itertools.product(range(n), repeat=2):
            if P @ A.mult[(0, 0)][i][j] != A.mul_vec(0, P.col(i), 0, P.col(j)):
                raise NotAutomorphism("action is not multiplicative", witness=(b, i, j))
    if acts[0] != Matrix.identity(n):
        raise NotAnAction("identity acts nontrivially", witness=(0,))
    for b, c in itertools.product(group.elements, repeat=2):
        if acts[b] @ acts[c] != acts[group.mult[b][c]]:
            raise NotAnAction("composition law fails", witness=(b, c))


def build_action_groupalg(A: GradedAlgebra, group: FiniteGroup, action) -> GradedAlgebra:
    """Crossed-product algebra ``L_a = A a`` with ``(x a)(y b) = (x a(y)) ab``.

    ``A`` is an algebra over the trivial group; ``action[b]`` is the matrix
    (column convention) of ``b`` acting on ``A``.
    """
    if A.group.order != 1:
        raise HQFTError("expected an algebra over the trivial group")
    check_graded_algebra(A)
    n = A.dims[0]
    acts = {b: m if isinstance(m, Matrix) else Matrix(m, ncols=n) for b, m in action.items()}
    _check_automorphism_action(A, group, acts)

    def fn(a, i, b, j):
        return A.mul_vec(0, unit_vec(n, i), 0, acts[a].col(j))

    alg = GradedAlgebra.from_function(group, [n] * group.order, A.unit, fn)
    return check_graded_algebra(alg)


def build_homset_algebra(group: FiniteGroup, perm, dims, mode: str = "sum") -> GradedAlgebra:
    """Algebra of homomorphisms between vector spaces attached to a finite group-set.

    ``perm[a][s]`` is the image of point ``s`` under ``a`` and ``dims[s]`` the
    dimension of ``V_s``.  In ``sum`` mode ``L_a`` is the direct sum over ``s``
    of ``Hom(V_s, V_{a(s)})`` with basis ordered by ``(s, row, col)``; in
    ``tensor`` mode it is their tensor product with basis ordered
    lexicographically by the tuple of ``(row, col)`` pairs over ``s``.  The
    product is ``(xy)_s = x_{b(s)} y_s`` for ``y`` of degree ``b``.
    """
    pts = range(len(dims))
    perm = [tuple(int(x) for x in row) for row in perm]
    if len(perm) != group.order or any(sorted(r) != list(pts) for r in perm):
        raise NotAnAction("not a permutation action", witness=None)
    if perm[0] != tuple(pts):
        raise NotAnAction("identity moves a point", witness=(0,))
    for a, b in itertools.product(group.elements, repeat=2):
        for s in pts:
            if perm[a][perm[b][s]] != perm[group.mult[a][b]][s]:
                raise NotAnAction("composition law fails", witness=(a, b, s))
    dims = [int(d) for d in dims]
    if mode == "sum":
        basis = {a: [(s, r, c) for s in pts for r in range(dims[perm[a][s]]) for c in range(dims[s])]
                 for a in group.elements}
        index = {a: {x: k for k, x in enumerate(basis[a])} for a in group.elements}

        def fn(a, i, b, j):
            ab = group.mult[a][b]
            s1, r1, c1 = basis[a][i]
            s2, r2, c2 = basis[b][j]
            out = [ZERO] * len(basis[ab])
            if s1 == perm[b][s2] and c1 == r2:
                out[index[ab][(s2, r1, c2)]] = ONE
            return tuple(out)

        unit = [ONE if r == c else ZERO for (s, r, c) in basis[0]]
    elif mode == "tensor":
        basis = {}
        for a in group.elements:
            factors = [[(r, c) for r in range(dims[perm[a][s]]) for c in range(dims[s])] for s in pts]
            basis[a] = list(itertools.product(*factors))
        index = {a: {x: k for k, x in enumerate(basis[a])} for a in group.elements}

        def fn(a, i, b, j):
            ab = group.mult[a][b]
            x, y = basis[a][i], basis[b][j]
            out = [ZERO] * len(basis[ab])
            res = []
            for s in pts:
                r1, c1 = x[perm[b][s]]
                r2, c2 = y[s]
                if c1 != r2:
                    return tuple(out)
                res.append((r1, c2))
            out[index[ab][tuple(res)]] = ONE
            return tuple(out)

        unit = [ONE if all(r == c for r, c in x) else ZERO for x in basis[0]]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    alg = GradedAlgebra.from_function(group, [len(basis[a]) for a in group.elements], unit, fn)
    return check_graded_algebra(alg)
