"""Exact linear algebra over the rationals.

Everything is built on :class:`fractions.Fraction`; no floating point is used
anywhere in the package.  Matrices are small and dense, so a tuple-of-tuples
representation with plain Gaussian elimination is adequate.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import sympy

from .errors import DegeneratePairing, InconsistentSystem, NotSquare

Scalar = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)


def scalar(x) -> Fraction:
    """Coerce ints, Fractions and strings like ``"-3/4"`` to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, str)):
        return Fraction(x)
    if isinstance(x, sympy.Rational):
        return Fraction(int(x.p), int(x.q))
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def format_scalar(x: Fraction) -> str:
    x = scalar(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def vec(values: Iterable) -> tuple:
    return tuple(scalar(v) for v in values)


def zero_vec(n: int) -> tuple:
    return (ZERO,) * n


def unit_vec(n: int, i: int) -> tuple:
    return tuple(ONE if k == i else ZERO for k in range(n))


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, u):
    return tuple(c * a for a in u)


def dot(u, v) -> Fraction:
    # structure matrices are mostly zero, so skip those terms before multiplying
    return sum((a * b for a, b in zip(u, v) if a and b), ZERO)


def is_zero(u) -> bool:
    return all(a == 0 for a in u)


class Matrix:
    """Immutable dense matrix of Fractions (row-major)."""

    __slots__ = ("_rows", "nrows", "ncols", "_hash")

    def __init__(self, rows: Sequence[Sequence], ncols: int | None = None):
        self._rows = tuple(tuple(scalar(x) for x in r) for r in rows)
        self.nrows = len(self._rows)
        if ncols is None:
            ncols = len(self._rows[0]) if self._rows else 0
        self.ncols = ncols
        for r in self._rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        self._hash = None

    @classmethod
    def _raw(cls, rows, ncols):
        m = cls.__new__(cls)
        m._rows = rows
        m.nrows = len(rows)
        m.ncols = ncols
        m._hash = None
        return m

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls._raw(tuple((ZERO,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._raw(tuple(unit_vec(n, i) for i in range(n)), n)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int | None = None) -> "Matrix":
        cols = [vec(c) for c in cols]
        if nrows is None:
            nrows = len(cols[0]) if cols else 0
        return cls._raw(tuple(tuple(c[i] for c in cols) for i in range(nrows)), len(cols))

    @property
    def rows(self) -> tuple:
        return self._rows

    @property
    def shape(self) -> tuple:
        return (self.nrows, self.ncols)

    def row(self, i: int) -> tuple:
        return self._rows[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self._rows)

    def columns(self) -> list:
        return [self.col(j) for j in range(self.ncols)]

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shape, self._rows))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(format_scalar(x) for x in r) for r in self._rows)
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(tuple(zip(*self._rows)) if self.nrows else (), self.nrows) \
            if self.ncols else Matrix.zeros(0, self.nrows)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix._raw(tuple(vadd(a, b) for a, b in zip(self._rows, other._rows)), self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix._raw(tuple(vsub(a, b) for a, b in zip(self._rows, other._rows)), self.ncols)

    def __neg__(self):
        return Matrix._raw(tuple(vscale(-ONE, r) for r in self._rows), self.ncols)

    def __mul__(self, c):
        c = scalar(c)
        return Matrix._raw(tuple(vscale(c, r) for r in self._rows), self.ncols)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            cols = other.columns()
            return Matrix._raw(tuple(tuple(dot(r, c) for c in cols) for r in self._rows),
                               other.ncols)
        v = tuple(other)
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        return tuple(dot(r, v) for r in self._rows)

    def trace(self) -> Fraction:
        if self.nrows != self.ncols:
            raise NotSquare(f"trace of a {self.nrows}x{self.ncols} matrix")
        return sum((self._rows[i][i] for i in range(self.nrows)), ZERO)

    def rref(self) -> tuple:
        """Reduced row echelon form and the list of pivot columns."""
        rows = [list(r) for r in self._rows]
        pivots = []
        r = 0
        for c in range(self.ncols):
            p = next((i for i in range(r, self.nrows) if rows[i][c] != 0), None)
            if p is None:
                continue
            rows[r], rows[p] = rows[p], rows[r]
            inv = ONE / rows[r][c]
            rows[r] = [x * inv for x in rows[r]]
            for i in range(self.nrows):
                if i != r and rows[i][c] != 0:
                    f = rows[i][c]
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == self.nrows:
                break
        return Matrix._raw(tuple(tuple(x) for x in rows), self.ncols), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise NotSquare("inverse of a non-square matrix")
        n = self.nrows
        aug = Matrix._raw(tuple(r + unit_vec(n, i) for i, r in enumerate(self._rows)), 2 * n)
        red, piv = aug.rref()
        if len([p for p in piv if p < n]) < n:
            raise DegeneratePairing("matrix is singular")
        return Matrix._raw(tuple(r[n:] for r in red.rows), n)

    def nullspace(self) -> list:
        """Basis of the kernel, one vector per free column (in column order)."""
        red, piv = self.rref()
        free = [c for c in range(self.ncols) if c not in piv]
        basis = []
        for f in free:
            v = [ZERO] * self.ncols
            v[f] = ONE
            for i, p in enumerate(piv):
                v[p] = -red.rows[i][f]
            basis.append(tuple(v))
        return basis

    def image_basis(self) -> list:
        """Canonical basis of the column space: the nonzero rows of rref(A^T).

        Each returned vector has a leading 1 at its pivot coordinate and zeros at
        the pivots of the other vectors, so coordinates of an image vector can be
        read off at the pivots.
        """
        red, piv = self.T.rref()
        return [red.rows[i] for i in range(len(piv))]


def solve_linear(A: Matrix, rhs: Sequence) -> tuple:
    """Solve ``A x = rhs`` exactly.

    Underdetermined systems return the reduced-echelon particular solution with
    every free variable set to zero.
    """
    rhs = vec(rhs)
    if len(rhs) != A.nrows:
        raise ValueError("right-hand side length does not match the matrix")
    aug = Matrix._raw(tuple(r + (b,) for r, b in zip(A.rows, rhs)), A.ncols + 1)
    red, piv = aug.rref()
    if A.ncols in piv:
        raise InconsistentSystem("linear system has no solution")
    x = [ZERO] * A.ncols
    for i, p in enumerate(piv):
        x[p] = red.rows[i][A.ncols]
    return tuple(x)


def trace(A: Matrix) -> Fraction:
    return A.trace()


@dataclass(frozen=True)
class CanonicalElement:
    """The element b = sum_ij coeffs[i][j] p_i (x) q_j dual to a pairing.

    ``coeffs`` is stored as a :class:`Matrix` with ``left_dim`` rows and
    ``right_dim`` columns.
    """

    coeffs: Matrix

    @property
    def left_dim(self) -> int:
        return self.coeffs.nrows

    @property
    def right_dim(self) -> int:
        return self.coeffs.ncols

    def terms(self):
        """Yield ``(i, j, c)`` for every nonzero coefficient."""
        for i, r in enumerate(self.coeffs.rows):
            for j, c in enumerate(r):
                if c:
                    yield i, j, c

    def swapped(self) -> "CanonicalElement":
        return CanonicalElement(self.coeffs.T)


def canonical_element(E: Matrix) -> CanonicalElement:
    """Canonical element of the pairing with Gram matrix ``E[i][j] = eta(p_i, q_j)``.

    The recovery identity ``p = sum_ij c_ij eta(p, q_j) p_i`` on basis vectors
    reads ``C E^T = I``, hence ``C = (E^T)^{-1}``.
    """
    if E.nrows != E.ncols:
        raise DegeneratePairing(f"pairing of {E.nrows}- and {E.ncols}-dimensional spaces")
    if E.nrows == 0:
        return CanonicalElement(Matrix.zeros(0, 0))
    try:
        C = E.T.inverse()
    except DegeneratePairing:
        raise DegeneratePairing("pairing is degenerate", witness=E) from None
    return CanonicalElement(C)


def charpoly(A: Matrix) -> list:
    """Characteristic polynomial det(xI - A), coefficients from leading to constant.

    Faddeev-LeVerrier recursion; exact in characteristic zero.
    """
    if A.nrows != A.ncols:
        raise NotSquare("characteristic polynomial of a non-square matrix")
    n = A.nrows
    coeffs = [ONE]
    M = Matrix.zeros(n, n)
    I = Matrix.identity(n)
    for k in range(1, n + 1):
        M = A @ M + I * coeffs[-1]
        c = -(A @ M).trace() / k
        coeffs.append(c)
    return coeffs


def rational_roots(poly: Sequence[Fraction]) -> tuple:
    """Factor a rational polynomial over Q.

    Returns ``(roots, split)`` where ``roots`` maps each rational root to its
    multiplicity and ``split`` is True iff the polynomial is a product of
    linear factors over Q.
    """
    x = sympy.Symbol("x")
    p = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in poly], x, domain="QQ")
    _, factors = p.factor_list()
    roots = {}
    split = True
    for f, mult in factors:
        if f.degree() == 1:
            a, b = f.all_coeffs()
            r = scalar(-b / a)
            roots[r] = roots.get(r, 0) + mult
        elif f.degree() > 1:
            split = False
    return roots, split
