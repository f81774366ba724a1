"""Group-graded algebras, Frobenius forms and the structural operations on them.

Conventions used throughout the package:

* ``dims[a]`` is the dimension of the degree-``a`` component ``L_a``.
* ``mult[(a, b)][i][j]`` is the coefficient vector (in ``L_ab``) of the product
  of basis vector ``i`` of ``L_a`` with basis vector ``j`` of ``L_b``.
* ``eta[a]`` is the ``dims[a] x dims[a^-1]`` Gram matrix of the form on
  ``L_a (x) L_{a^-1}``.
* ``phi[(b, a)]`` is the matrix of ``phi_b : L_a -> L_{b a b^-1}`` in column
  convention (rows index the target basis).
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable, Mapping

from .errors import (AlgebraMismatch, AxiomViolation, GroupMismatch, HQFTError,
                     InternalError, NotAHomomorphism)
from .groups import FiniteGroup, check_homomorphism
from .linalg import ONE, ZERO, Matrix, dot, is_zero, scalar, unit_vec, vadd, vec, vscale


class GradedVector:
    """An element of a graded algebra, stored sparsely by degree."""

    __slots__ = ("algebra", "comps")

    def __init__(self, algebra: "GradedAlgebra", comps: Mapping[int, tuple] | None = None):
        self.algebra = algebra
        clean = {}
        for a, v in (comps or {}).items():
            v = tuple(v)
            if len(v) != algebra.dims[a]:
                raise ValueError(f"degree {a} vector has length {len(v)}, expected {algebra.dims[a]}")
            if not is_zero(v):
                clean[a] = vec(v)
        self.comps = dict(sorted(clean.items()))

    def component(self, a: int) -> tuple:
        return self.comps.get(a, (ZERO,) * self.algebra.dims[a])

    def degrees(self) -> list:
        return list(self.comps)

    def is_zero(self) -> bool:
        return not self.comps

    def degree(self):
        """The degree of a nonzero homogeneous element, else None."""
        if len(self.comps) == 1:
            return next(iter(self.comps))
        return None

    def _check(self, other):
        if not isinstance(other, GradedVector) or other.algebra is not self.algebra and \
                other.algebra != self.algebra:
            raise AlgebraMismatch("elements belong to different algebras")

    def __add__(self, other):
        self._check(other)
        out = dict(self.comps)
        for a, v in other.comps.items():
            out[a] = vadd(out[a], v) if a in out else v
        return GradedVector(self.algebra, out)

    def __sub__(self, other):
        return self + other * (-1)

    def __mul__(self, other):
        if isinstance(other, GradedVector):
            return multiply(self, other)
        c = scalar(other)
        return GradedVector(self.algebra, {a: vscale(c, v) for a, v in self.comps.items()})

    def __rmul__(self, c):
        return self * c

    def __neg__(self):
        return self * (-1)

    def __eq__(self, other):
        if not isinstance(other, GradedVector):
            return NotImplemented
        return self.comps == other.comps

    def __hash__(self):
        return hash(tuple(self.comps.items()))

    def __repr__(self):
        parts = [f"{a}:[{', '.join(str(x) for x in v)}]" for a, v in self.comps.items()]
        return "GradedVector(" + "; ".join(parts) + ")"


class GradedAlgebra:
    """A unital algebra graded by a finite group (no form attached)."""

    def __init__(self, group: FiniteGroup, dims, unit, mult):
        self.group = group
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != group.order or any(d < 0 for d in self.dims):
            raise HQFTError("dims must list a nonnegative count for every group element")
        self.unit = vec(unit)
        if len(self.unit) != self.dims[0]:
            raise HQFTError("unit vector length does not match the degree-1 dimension")
        self.mult = {}
        g = group
        for a in g.elements:
            for b in g.elements:
                ab = g.mult[a][b]
                blk = mult.get((a, b)) if isinstance(mult, Mapping) else None
                if blk is None:
                    blk = [[(ZERO,) * self.dims[ab]] * self.dims[b] for _ in range(self.dims[a])]
                if len(blk) != self.dims[a] or any(len(r) != self.dims[b] for r in blk):
                    raise HQFTError(f"structure constants for degrees ({a}, {b}) have wrong shape")
                rows = []
                for r in blk:
                    row = []
                    for v in r:
                        v = vec(v)
                        if len(v) != self.dims[ab]:
                            raise HQFTError(f"product vector for ({a}, {b}) has wrong length")
                        row.append(v)
                    rows.append(tuple(row))
                self.mult[(a, b)] = tuple(rows)
        self._lcache = {}

    @classmethod
    def from_function(cls, group, dims, unit, fn: Callable, **kw):
        """Build structure constants from ``fn(a, i, b, j) -> vector in L_ab``."""
        mult = {}
        for a in group.elements:
            for b in group.elements:
                mult[(a, b)] = [[fn(a, i, b, j) for j in range(dims[b])] for i in range(dims[a])]
        return cls(group, dims, unit, mult, **kw)

    # --- elements -----------------------------------------------------------
    def basis(self, a: int, i: int) -> GradedVector:
        return GradedVector(self, {a: unit_vec(self.dims[a], i)})

    def element(self, a: int, coeffs) -> GradedVector:
        return GradedVector(self, {a: vec(coeffs)})

    def one(self) -> GradedVector:
        return GradedVector(self, {0: self.unit})

    def zero(self) -> GradedVector:
        return GradedVector(self, {})

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def basis_iter(self):
        for a in self.group.elements:
            for i in range(self.dims[a]):
                yield a, i

    # --- multiplication -----------------------------------------------------
    def mul_vec(self, a: int, u: tuple, b: int, v: tuple) -> tuple:
        """Product of ``u`` in ``L_a`` with ``v`` in ``L_b``; a vector in ``L_ab``."""
        ab = self.group.mult[a][b]
        out = [ZERO] * self.dims[ab]
        blk = self.mult[(a, b)]
        for i, x in enumerate(u):
            if not x:
                continue
            row = blk[i]
            for j, y in enumerate(v):
                if not y:
                    continue
                c = x * y
                for k, z in enumerate(row[j]):
                    if z:
                        out[k] += c * z
        return tuple(out)

    def left_matrix(self, c: int, u: tuple, a: int) -> Matrix:
        """Matrix of ``x -> u x`` from ``L_a`` to ``L_ca`` for ``u`` in ``L_c``."""
        cols = [self.mul_vec(c, u, a, unit_vec(self.dims[a], j)) for j in range(self.dims[a])]
        return Matrix.from_columns(cols, self.dims[self.group.mult[c][a]])

    def right_matrix(self, c: int, u: tuple, a: int) -> Matrix:
        """Matrix of ``x -> x u`` from ``L_a`` to ``L_ac`` for ``u`` in ``L_c``."""
        cols = [self.mul_vec(a, unit_vec(self.dims[a], j), c, u) for j in range(self.dims[a])]
        return Matrix.from_columns(cols, self.dims[self.group.mult[a][c]])

    def same_structure(self, other: "GradedAlgebra") -> bool:
        return (self.group == other.group and self.dims == other.dims
                and self.unit == other.unit and self.mult == other.mult)

    def __eq__(self, other):
        if not isinstance(other, GradedAlgebra) or type(self) is not type(other):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash((self.group, self.dims, self.unit))

    def _key(self):
        return (self.group.mult, self.dims, self.unit, self.mult)

    def __repr__(self):
        return f"{type(self).__name__}({self.group.name}, dims={list(self.dims)})"


class FrobeniusAlgebra(GradedAlgebra):
    """A graded algebra with an invariant symmetric form pairing ``L_a`` with ``L_{a^-1}``."""

    def __init__(self, group, dims, unit, mult, eta=None):
        super().__init__(group, dims, unit, mult)
        self.eta = {}
        eta = eta or {}
        for a in group.elements:
            ai = group.inv[a]
            m = eta.get(a)
            if m is None:
                m = Matrix.zeros(self.dims[a], self.dims[ai])
            elif not isinstance(m, Matrix):
                m = Matrix(m, ncols=self.dims[ai])
            if m.shape != (self.dims[a], self.dims[ai]):
                raise HQFTError(f"eta block for degree {a} has shape {m.shape}")
            self.eta[a] = m

    def form(self, a: int, u: tuple, v: tuple) -> Fraction:
        """``eta(u, v)`` for ``u`` in ``L_a`` and ``v`` in ``L_{a^-1}``."""
        return dot(u, self.eta[a] @ v)

    def _key(self):
        return super()._key() + (tuple(sorted(self.eta.items())),)

    def rescaled_eta(self, k) -> dict:
        k = scalar(k)
        return {a: m * k for a, m in self.eta.items()}


class CrossedAlgebra(FrobeniusAlgebra):
    """A Frobenius algebra with a group action ``phi`` satisfying the crossed axioms.

    Instances returned by :func:`hqft.crossed.validate_crossed` (and by every
    constructor in this package) have been fully validated.
    """

    def __init__(self, group, dims, unit, mult, eta=None, phi=None):
        super().__init__(group, dims, unit, mult, eta)
        self.phi = {}
        g = group
        phi = phi or {}
        for b in g.elements:
            for a in g.elements:
                t = g.conj(b, a)
                m = phi.get((b, a))
                if m is None:
                    if b == 0:
                        m = Matrix.identity(self.dims[a])
                    else:
                        raise HQFTError(f"missing action matrix for beta={b}, alpha={a}")
                elif not isinstance(m, Matrix):
                    m = Matrix(m, ncols=self.dims[a])
                if m.shape != (self.dims[t], self.dims[a]):
                    raise HQFTError(f"action matrix for beta={b}, alpha={a} has shape {m.shape}")
                self.phi[(b, a)] = m

    def act(self, b: int, x: GradedVector) -> GradedVector:
        out = {}
        for a, v in x.comps.items():
            out[self.group.conj(b, a)] = self.phi[(b, a)] @ v
        return GradedVector(self, out)

    def _key(self):
        return super()._key() + (tuple(sorted(self.phi.items())),)


def is_crossed(alg) -> bool:
    return isinstance(alg, CrossedAlgebra)


# --- element-level operations ----------------------------------------------
def multiply(x: GradedVector, y: GradedVector) -> GradedVector:
    x._check(y)
    alg = x.algebra
    out = {}
    for a, u in x.comps.items():
        for b, v in y.comps.items():
            ab = alg.group.mult[a][b]
            w = alg.mul_vec(a, u, b, v)
            out[ab] = vadd(out[ab], w) if ab in out else w
    return GradedVector(alg, out)


def inner(x: GradedVector, y: GradedVector) -> Fraction:
    x._check(y)
    alg = x.algebra
    if not isinstance(alg, FrobeniusAlgebra):
        raise AlgebraMismatch("algebra carries no inner product")
    total = ZERO
    for a, u in x.comps.items():
        ai = alg.group.inv[a]
        if ai in y.comps:
            total += alg.form(a, u, y.comps[ai])
    return total


def _basis_left(alg, a: int, i: int, b: int) -> Matrix:
    """Left multiplication by basis vector ``i`` of ``L_a``, as a map ``L_b -> L_ab``."""
    key = ("L", a, i, b)
    m = alg._lcache.get(key)
    if m is None:
        m = Matrix.from_columns(alg.mult[(a, b)][i], alg.dims[alg.group.mult[a][b]])
        alg._lcache[key] = m
    return m


def _basis_right(alg, b: int, j: int, a: int) -> Matrix:
    """Right multiplication by basis vector ``j`` of ``L_b``, as a map ``L_a -> L_ab``."""
    key = ("R", b, j, a)
    m = alg._lcache.get(key)
    if m is None:
        m = Matrix.from_columns([row[j] for row in alg.mult[(a, b)]],
                                alg.dims[alg.group.mult[a][b]])
        alg._lcache[key] = m
    return m


def _combo_left(alg, a: int, u: tuple, b: int) -> Matrix:
    out = Matrix.zeros(alg.dims[alg.group.mult[a][b]], alg.dims[b])
    for i, x in enumerate(u):
        if x:
            out = out + _basis_left(alg, a, i, b) * x
    return out


# --- validation ------------------------------------------------------------
def check_graded_algebra(alg: GradedAlgebra) -> GradedAlgebra:
    """Check associativity and the two-sided unit on basis elements."""
    g = alg.group
    d = alg.dims
    for a in g.elements:
        for i in range(d[a]):
            e = unit_vec(d[a], i)
            if alg.mul_vec(0, alg.unit, a, e) != e or alg.mul_vec(a, e, 0, alg.unit) != e:
                raise AxiomViolation("unit is not two-sided", witness=(a, i), axiom="unit")
    # associativity as lambda(xy) = lambda(x) lambda(y) on every degree
    for a, b, c in itertools.product(g.elements, repeat=3):
        if not d[a] or not d[b] or not d[c]:
            continue
        ab, bc = g.mult[a][b], g.mult[b][c]
        for i in range(d[a]):
            Li = _basis_left(alg, a, i, bc)
            for j in range(d[b]):
                lhs = _combo_left(alg, ab, alg.mult[(a, b)][i][j], c)
                if lhs != Li @ _basis_left(alg, b, j, c):
                    k = next(k for k in range(d[c])
                             if lhs.col(k) != alg.mul_vec(a, unit_vec(d[a], i), bc,
                                                          alg.mult[(b, c)][j][k]))
                    raise AxiomViolation("multiplication is not associative",
                                         witness=((a, i), (b, j), (c, k)),
                                         axiom="associativity")
    return alg


def check_frobenius_form(alg: FrobeniusAlgebra) -> None:
    g = alg.group
    d = alg.dims
    for a in g.elements:
        ai = g.inv[a]
        if d[a] != d[ai] or not alg.eta[a].is_invertible():
            raise AxiomViolation("form is degenerate on a degree block", witness=(a,),
                                 axiom="3.1.1")
    for a in g.elements:
        ai = g.inv[a]
        if alg.eta[a] != alg.eta[ai].T:
            m, n = alg.eta[a], alg.eta[ai]
            w = next((i, j) for i in range(d[a]) for j in range(d[ai]) if m[i, j] != n[j, i])
            raise AxiomViolation("form is not symmetric", witness=(a, w), axiom="symmetry")
    # eta(ab, c) = eta(a, bc); only triples with abc = 1 can be nonzero.  For each
    # basis y of L_b this is R_y^T eta_ab = eta_a L_y with R_y, L_y right/left products.
    for a, b in itertools.product(g.elements, repeat=2):
        if not d[a] or not d[b]:
            continue
        ab = g.mult[a][b]
        c = g.inv[ab]
        if not d[c]:
            continue
        for j in range(d[b]):
            R = _basis_right(alg, b, j, a)
            if R.T @ alg.eta[ab] == alg.eta[a] @ _basis_left(alg, b, j, c):
                continue
            for i, k in itertools.product(range(d[a]), range(d[c])):
                ec = unit_vec(d[c], k)
                lhs = alg.form(ab, alg.mult[(a, b)][i][j], ec)
                rhs = alg.form(a, unit_vec(d[a], i), alg.mul_vec(b, unit_vec(d[b], j), c, ec))
                if lhs != rhs:
                    raise AxiomViolation("form is not invariant: eta(ab,c) != eta(a,bc)",
                                         witness=((a, i), (b, j), (c, k)), axiom="3.1.2")


def validate_frobenius(alg: FrobeniusAlgebra) -> FrobeniusAlgebra:
    check_graded_algebra(alg)
    check_frobenius_form(alg)
    return alg


def _revalidate(alg):
    """Validate a constructor output; failures here are bugs, not bad input."""
    from .crossed import validate_crossed
    try:
        if isinstance(alg, CrossedAlgebra):
            return validate_crossed(alg)
        if isinstance(alg, FrobeniusAlgebra):
            return validate_frobenius(alg)
        return check_graded_algebra(alg)
    except AxiomViolation as e:
        raise InternalError(f"constructor produced an invalid algebra: {e}") from e


def _same_kind(alg, *args, **kw):
    """Instantiate the class of ``alg`` with only the fields it supports."""
    if isinstance(alg, CrossedAlgebra):
        return CrossedAlgebra(*args, **kw)
    kw.pop("phi", None)
    if isinstance(alg, FrobeniusAlgebra):
        return FrobeniusAlgebra(*args, **kw)
    kw.pop("eta", None)
    return GradedAlgebra(*args, **kw)


def _least_kind(x, y):
    for cls in (GradedAlgebra, FrobeniusAlgebra):
        if type(x) is cls or type(y) is cls:
            return x if type(x) is cls else y
    return x


# --- structural operations -------------------------------------------------
def combine(kind: str, L: GradedAlgebra, M: GradedAlgebra) -> GradedAlgebra:
    """Direct sum or tensor product of two algebras over the same group.

    Direct sum bases are concatenated (``L`` first); tensor bases are
    lexicographic pairs ``(i, j) -> i * dim M_a + j``.
    """
    if L.group != M.group:
        raise GroupMismatch("algebras are graded by different groups")
    g = L.group
    kind_of = _least_kind(L, M)
    frob = isinstance(kind_of, FrobeniusAlgebra)
    crossed = isinstance(kind_of, CrossedAlgebra)
    if kind == "direct_sum":
        dims = [L.dims[a] + M.dims[a] for a in g.elements]

        def fn(a, i, b, j):
            ab = g.mult[a][b]
            if i < L.dims[a] and j < L.dims[b]:
                return L.mult[(a, b)][i][j] + (ZERO,) * M.dims[ab]
            if i >= L.dims[a] and j >= L.dims[b]:
                return (ZERO,) * L.dims[ab] + M.mult[(a, b)][i - L.dims[a]][j - L.dims[b]]
            return (ZERO,) * dims[ab]

        unit = L.unit + M.unit

        def blockdiag(x: Matrix, y: Matrix) -> Matrix:
            rows = [r + (ZERO,) * y.ncols for r in x.rows] + \
                   [(ZERO,) * x.ncols + r for r in y.rows]
            return Matrix(rows, ncols=x.ncols + y.ncols)

        join = blockdiag
    elif kind == "tensor":
        dims = [L.dims[a] * M.dims[a] for a in g.elements]

        def fn(a, i, b, j):
            i1, i2 = divmod(i, M.dims[a])
            j1, j2 = divmod(j, M.dims[b])
            u = L.mult[(a, b)][i1][j1]
            v = M.mult[(a, b)][i2][j2]
            return tuple(x * y for x in u for y in v)

        unit = tuple(x * y for x in L.unit for y in M.unit)

        def kron(x: Matrix, y: Matrix) -> Matrix:
            rows = [tuple(p * q for p in rx for q in ry) for rx in x.rows for ry in y.rows]
            return Matrix(rows, ncols=x.ncols * y.ncols)

        join = kron
    else:
        raise ValueError(f"unknown combination {kind!r}")
    mult = {(a, b): [[fn(a, i, b, j) for j in range(dims[b])] for i in range(dims[a])]
            for a in g.elements for b in g.elements}
    kw = {}
    if frob:
        kw["eta"] = {a: join(L.eta[a], M.eta[a]) for a in g.elements}
    if crossed:
        kw["phi"] = {k: join(L.phi[k], M.phi[k]) for k in L.phi}
    out = _same_kind(kind_of, g, dims, unit, mult, **kw)
    return _revalidate(out)


def direct_sum(L, M):
    return combine("direct_sum", L, M)


def tensor(L, M):
    return combine("tensor", L, M)


def dual(L: GradedAlgebra) -> GradedAlgebra:
    """Opposite multiplication with degrees inverted: ``L*_a = L_{a^-1}``.

    The form and the action matrices carry over unchanged under this
    re-indexing.
    """
    g = L.group
    inv = g.inv
    dims = [L.dims[inv[a]] for a in g.elements]
    mult = {}
    for a in g.elements:
        for b in g.elements:
            # a o b = b a, with a in L_{a^-1}, b in L_{b^-1}
            blk = L.mult[(inv[b], inv[a])]
            mult[(a, b)] = [[blk[j][i] for j in range(dims[b])] for i in range(dims[a])]
    kw = {}
    if isinstance(L, FrobeniusAlgebra):
        kw["eta"] = {a: L.eta[inv[a]] for a in g.elements}
    if isinstance(L, CrossedAlgebra):
        kw["phi"] = {(b, a): L.phi[(b, inv[a])] for b in g.elements for a in g.elements}
    return _revalidate(_same_kind(L, g, dims, L.unit, mult, **kw))


def pullback(q, src: FiniteGroup, L: GradedAlgebra) -> GradedAlgebra:
    """Pull ``L`` (over ``L.group``) back along a homomorphism ``q: src -> L.group``."""
    q = check_homomorphism(src, L.group, q)
    dims = [L.dims[q[a]] for a in src.elements]
    mult = {(a, b): L.mult[(q[a], q[b])] for a in src.elements for b in src.elements}
    kw = {}
    if isinstance(L, FrobeniusAlgebra):
        kw["eta"] = {a: L.eta[q[a]] for a in src.elements}
    if isinstance(L, CrossedAlgebra):
        kw["phi"] = {(b, a): L.phi[(q[b], q[a])] for b in src.elements for a in src.elements}
    return _revalidate(_same_kind(L, src, dims, L.unit, mult, **kw))


def fiber_layout(q, src: FiniteGroup, dst: FiniteGroup, dims) -> dict:
    """For each target degree, the list of ``(u, offset)`` blocks of its fiber."""
    layout = {a: [] for a in dst.elements}
    size = {a: 0 for a in dst.elements}
    for u in src.elements:
        a = q[u]
        layout[a].append((u, size[a]))
        size[a] += dims[u]
    return layout, size


def pushforward(q, dst: FiniteGroup, L: GradedAlgebra, _keep_phi=None) -> GradedAlgebra:
    """Regroup ``L`` (over a group ``src``) along ``q: src -> dst``.

    Degree ``a`` of the result is the direct sum of ``L_u`` over ``u`` in the
    fiber of ``a``, in increasing order of ``u``.  No action is produced; see
    :func:`hqft.crossed.pushforward_crossed`.
    """
    src = L.group
    q = check_homomorphism(src, dst, q)
    layout, size = fiber_layout(q, src, dst, L.dims)
    dims = [size[a] for a in dst.elements]
    offset = {u: off for a in dst.elements for u, off in layout[a]}
    unit = [ZERO] * dims[0]
    for k, x in enumerate(L.unit):
        unit[offset[0] + k] = x
    mult = {(a, b): [[[ZERO] * dims[dst.mult[a][b]] for _ in range(dims[b])] for _ in range(dims[a])]
            for a in dst.elements for b in dst.elements}
    for u in src.elements:
        for v in src.elements:
            uv = src.mult[u][v]
            blk = mult[(q[u], q[v])]
            for i in range(L.dims[u]):
                for j in range(L.dims[v]):
                    for k, x in enumerate(L.mult[(u, v)][i][j]):
                        blk[offset[u] + i][offset[v] + j][offset[uv] + k] = x
    kw = {}
    if isinstance(L, FrobeniusAlgebra):
        eta = {}
        for a in dst.elements:
            ai = dst.inv[a]
            m = [[ZERO] * dims[ai] for _ in range(dims[a])]
            for u, off in layout[a]:
                ui = src.inv[u]
                for i in range(L.dims[u]):
                    for j in range(L.dims[ui]):
                        m[off + i][offset[ui] + j] = L.eta[u][i, j]
            eta[a] = Matrix(m, ncols=dims[ai])
        kw["eta"] = eta
    if _keep_phi is not None:
        kw["phi"] = _keep_phi(layout, offset, dims)
        out = CrossedAlgebra(dst, dims, unit, mult, **kw)
    elif "eta" in kw:
        out = FrobeniusAlgebra(dst, dims, unit, mult, **kw)
    else:
        out = GradedAlgebra(dst, dims, unit, mult)
    return out if _keep_phi is not None else _revalidate(out)
