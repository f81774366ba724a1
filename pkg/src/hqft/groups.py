"""Finite groups given by multiplication tables, subgroups, cosets and 2-cocycles."""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (BadEmbedding, CocycleViolation, NotAGroup, NotAHomomorphism,
                     NotClosed, NotNormalized)
from .linalg import scalar


class FiniteGroup:
    """A finite group on the elements ``0..n-1`` with identity ``0``.

    ``names`` are optional display labels used by the CLI and reports.
    """

    def __init__(self, mult: Sequence[Sequence[int]], name: str = "", names=None):
        n = len(mult)
        self.order = n
        self.mult = tuple(tuple(int(x) for x in row) for row in mult)
        self.name = name
        self.names = tuple(names) if names is not None else tuple(str(i) for i in range(n))
        self._validate()
        self.inv = tuple(self.mult[a].index(0) for a in range(n))
        # conj[b][a] = b a b^-1
        self.conj_table = tuple(
            tuple(self.mult[self.mult[b][a]][self.inv[b]] for a in range(n)) for b in range(n))

    def _validate(self):
        n = self.order
        if n == 0:
            raise NotAGroup("empty table", axiom="identity")
        full = set(range(n))
        for a, row in enumerate(self.mult):
            if len(row) != n:
                raise NotAGroup(f"row {a} has length {len(row)}", witness=(a,), axiom="table")
            if set(row) != full:
                raise NotAGroup(f"row {a} is not a permutation", witness=(a,), axiom="inverse")
        for b in range(n):
            if {self.mult[a][b] for a in range(n)} != full:
                raise NotAGroup(f"column {b} is not a permutation", witness=(b,), axiom="inverse")
        for x in range(n):
            if self.mult[0][x] != x or self.mult[x][0] != x:
                raise NotAGroup("element 0 is not the identity", witness=(0, x), axiom="identity")
        m = self.mult
        for a, b, c in itertools.product(range(n), repeat=3):
            if m[m[a][b]][c] != m[a][m[b][c]]:
                raise NotAGroup("multiplication is not associative", witness=(a, b, c),
                                axiom="associativity")

    def __repr__(self):
        return f"FiniteGroup({self.name or self.order})"

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.mult == other.mult

    def __hash__(self):
        return hash(self.mult)

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, *xs: int) -> int:
        r = 0
        for x in xs:
            r = self.mult[r][x]
        return r

    def conj(self, b: int, a: int) -> int:
        """``b a b^-1``."""
        return self.conj_table[b][a]

    def commutator(self, a: int, b: int) -> int:
        """``a b a^-1 b^-1``."""
        return self.mul(a, b, self.inv[a], self.inv[b])

    def is_abelian(self) -> bool:
        return all(self.mult[a][b] == self.mult[b][a] for a in self.elements for b in self.elements)

    def element(self, token) -> int:
        """Look up an element by index or display name."""
        if isinstance(token, int):
            if 0 <= token < self.order:
                return token
            raise KeyError(token)
        token = str(token).strip()
        if token in self.names:
            return self.names.index(token)
        if token.lstrip("-").isdigit() and 0 <= int(token) < self.order:
            return int(token)
        raise KeyError(f"no element {token!r} in {self.name or 'group'}")


def make_group(mult_table, name: str = "", names=None) -> FiniteGroup:
    return FiniteGroup(mult_table, name=name, names=names)


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)], name=f"Z{n}")


def klein_group() -> FiniteGroup:
    # index = x1 + 2*x2
    mult = [[a ^ b for b in range(4)] for a in range(4)]
    return FiniteGroup(mult, name="Z2xZ2", names=("e", "a", "b", "ab"))


def symmetric_group3() -> FiniteGroup:
    perms = list(itertools.permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    # (s t)(x) = s(t(x))
    mult = [[index[tuple(s[t[x]] for x in range(3))] for t in perms] for s in perms]
    names = ["".join(str(v) for v in p) for p in perms]
    return FiniteGroup(mult, name="S3", names=names)


def trivial_group() -> FiniteGroup:
    return FiniteGroup([[0]], name="trivial")


def product_group(g1: FiniteGroup, g2: FiniteGroup) -> FiniteGroup:
    """Direct product; element (x, y) has index x + |g1| * y."""
    n1, n2 = g1.order, g2.order
    mult = [[g1.mult[a % n1][b % n1] + n1 * g2.mult[a // n1][b // n1]
             for b in range(n1 * n2)] for a in range(n1 * n2)]
    return FiniteGroup(mult, name=f"{g1.name}x{g2.name}")


def check_homomorphism(src: FiniteGroup, dst: FiniteGroup, q: Sequence[int]) -> tuple:
    q = tuple(int(x) for x in q)
    if len(q) != src.order or any(not 0 <= x < dst.order for x in q):
        raise NotAHomomorphism("map has the wrong shape")
    for a in src.elements:
        for b in src.elements:
            if q[src.mult[a][b]] != dst.mult[q[a]][q[b]]:
                raise NotAHomomorphism("q(ab) != q(a)q(b)", witness=(a, b))
    return q


class Subgroup:
    """A subgroup G of ``parent`` together with its right cosets G*w_i.

    The coset containing the identity has representative 0; every other coset
    is represented by its smallest element.  Cosets are ordered by
    representative.
    """

    def __init__(self, parent: FiniteGroup, elements: Iterable[int]):
        self.parent = parent
        els = sorted(set(int(x) for x in elements))
        if 0 not in els:
            raise NotClosed("subset does not contain the identity", witness=(0,))
        es = set(els)
        for a in els:
            if parent.inv[a] not in es:
                raise NotClosed("subset not closed under inverses", witness=(a, a))
            for b in els:
                if parent.mult[a][b] not in es:
                    raise NotClosed("subset not closed under multiplication", witness=(a, b))
        self.elements = tuple(els)
        seen = set()
        cosets = []
        for w in parent.elements:
            if w in seen:
                continue
            c = tuple(sorted(parent.mult[g][w] for g in els))
            seen.update(c)
            cosets.append(c)
        self.right_cosets = tuple(cosets)
        self.representatives = tuple(c[0] for c in cosets)
        self._coset_of = {}
        for i, c in enumerate(cosets):
            for x in c:
                self._coset_of[x] = i

    @property
    def index(self) -> int:
        return len(self.right_cosets)

    def coset_of(self, x: int) -> int:
        return self._coset_of[x]

    def contains(self, x: int) -> bool:
        return self._coset_of[x] == 0

    def as_group(self) -> tuple:
        """The subgroup as a standalone FiniteGroup and its embedding into the parent.

        Element k of the returned group is ``self.elements[k]``.
        """
        pos = {x: k for k, x in enumerate(self.elements)}
        m = self.parent.mult
        mult = [[pos[m[a][b]] for b in self.elements] for a in self.elements]
        names = [self.parent.names[x] for x in self.elements]
        return FiniteGroup(mult, name=f"sub({self.parent.name})", names=names), self.elements


def make_subgroup(group: FiniteGroup, elements) -> Subgroup:
    return Subgroup(group, elements)


def check_embedding(small: FiniteGroup, sub: Subgroup, emb: Sequence[int]) -> tuple:
    """Check that ``emb`` is an isomorphism from ``small`` onto ``sub``."""
    emb = tuple(int(x) for x in emb)
    if len(emb) != small.order or sorted(emb) != list(sub.elements):
        raise BadEmbedding("element map is not a bijection onto the subgroup", witness=emb)
    p = sub.parent
    for a in small.elements:
        for b in small.elements:
            if emb[small.mult[a][b]] != p.mult[emb[a]][emb[b]]:
                raise BadEmbedding("element map is not multiplicative", witness=(a, b))
    return emb


class Cocycle2:
    """A normalized multiplicative 2-cocycle with values in Q*."""

    def __init__(self, group: FiniteGroup, values):
        self.group = group
        self.values = tuple(tuple(scalar(v) for v in row) for row in values)

    def __call__(self, a: int, b: int) -> Fraction:
        return self.values[a][b]

    def __eq__(self, other):
        return isinstance(other, Cocycle2) and self.group == other.group and \
            self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return f"Cocycle2({self.group.name}, {[[str(v) for v in r] for r in self.values]})"

    def __mul__(self, other: "Cocycle2") -> "Cocycle2":
        n = self.group.order
        return Cocycle2(self.group, [[self.values[a][b] * other.values[a][b] for b in range(n)]
                                     for a in range(n)])


def check_cocycle(group: FiniteGroup, values) -> Cocycle2:
    n = group.order
    if len(values) != n or any(len(r) != n for r in values):
        raise CocycleViolation("cocycle table has the wrong shape")
    th = Cocycle2(group, values)
    t = th.values
    for a in group.elements:
        for b in group.elements:
            if t[a][b] == 0:
                raise CocycleViolation("cocycle value is zero", witness=(a, b))
    if t[0][0] != 1:
        raise NotNormalized("theta(1,1) != 1", witness=(0, 0))
    m = group.mult
    for a, b, c in itertools.product(group.elements, repeat=3):
        if t[a][b] * t[m[a][b]][c] != t[a][m[b][c]] * t[b][c]:
            raise CocycleViolation("cocycle condition fails", witness=(a, b, c))
    return th


def trivial_cocycle(group: FiniteGroup) -> Cocycle2:
    return Cocycle2(group, [[1] * group.order for _ in group.elements])


def sign_cocycle_klein(group: FiniteGroup | None = None) -> Cocycle2:
    """theta((x1,x2),(y1,y2)) = (-1)^(x2*y1) on Z2xZ2 (index x1 + 2*x2)."""
    group = group or klein_group()
    vals = [[-1 if (a >> 1) & 1 and b & 1 else 1 for b in range(4)] for a in range(4)]
    return check_cocycle(group, vals)


def minus_one_cocycle_z2(group: FiniteGroup | None = None) -> Cocycle2:
    group = group or cyclic_group(2)
    return check_cocycle(group, [[1, 1], [1, -1]])


BUILTIN_GROUPS = {
    "trivial": trivial_group,
    "Z2": lambda: cyclic_group(2),
    "Z3": lambda: cyclic_group(3),
    "Z4": lambda: cyclic_group(4),
    "Z2xZ2": klein_group,
    "S3": symmetric_group3,
}


def builtin_group(name: str) -> FiniteGroup:
    if name in BUILTIN_GROUPS:
        return BUILTIN_GROUPS[name]()
    if name.startswith("Z") and name[1:].isdigit() and 1 <= int(name[1:]) <= 8:
        return cyclic_group(int(name[1:]))
    raise KeyError(f"unknown built-in group {name!r}")
