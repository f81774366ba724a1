"""Closed oriented surfaces as ribbon graphs, group labellings and local moves.

A skeleton is given by a fixed-point-free involution ``pairing`` on half-edges
and a rotation system: ``rotation`` lists, for every vertex, its half-edges in
counterclockwise order.  Faces are the orbits of ``h -> sigma(pairing(h))``.

A labelling ``g`` assigns to every half-edge ``h`` the group element carried by
its edge oriented toward the vertex of ``h``.  Around every vertex the product
of the labels, read in clockwise order (the reverse of the rotation), is 1.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .errors import (EdgeMismatch, EmptyVertex, FixedPoint, InternalError, NotApplicable,
                     NotInvolution, RelationViolated, VertexRelation, SurfaceError)
from .groups import FiniteGroup


class Skeleton:
    def __init__(self, pairing: Sequence[int], rotation: Sequence[Sequence[int]]):
        self.pairing = tuple(int(x) for x in pairing)
        self.rotation = tuple(tuple(int(x) for x in cyc) for cyc in rotation)
        n = len(self.pairing)
        for h, k in enumerate(self.pairing):
            if not 0 <= k < n or self.pairing[k] != h:
                raise NotInvolution("pairing is not an involution", witness=(h,))
            if k == h:
                raise FixedPoint("pairing has a fixed point", witness=(h,))
        seen = []
        for v, cyc in enumerate(self.rotation):
            if not cyc:
                raise EmptyVertex("vertex without half-edges", witness=(v,))
            seen.extend(cyc)
        if sorted(seen) != list(range(n)):
            raise NotInvolution("rotation cycles do not partition the half-edges")
        self.vertex_of = [0] * n
        self.sigma = [0] * n
        for v, cyc in enumerate(self.rotation):
            for k, h in enumerate(cyc):
                self.vertex_of[h] = v
                self.sigma[h] = cyc[(k + 1) % len(cyc)]
        self.sigma_inv = [0] * n
        for h, s in enumerate(self.sigma):
            self.sigma_inv[s] = h
        # faces: orbits of sigma o pairing, ordered by smallest element
        self.face_of = [-1] * n
        faces = []
        for h in range(n):
            if self.face_of[h] >= 0:
                continue
            orb, x = [], h
            while self.face_of[x] < 0:
                self.face_of[x] = len(faces)
                orb.append(x)
                x = self.sigma[self.pairing[x]]
            faces.append(tuple(orb))
        self.faces = tuple(faces)
        self.components = self._components()

    def _components(self) -> tuple:
        parent = list(range(self.num_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for h, k in enumerate(self.pairing):
            a, b = find(self.vertex_of[h]), find(self.vertex_of[k])
            if a != b:
                parent[max(a, b)] = min(a, b)
        comps = {}
        for v in range(self.num_vertices):
            comps.setdefault(find(v), []).append(v)
        return tuple(tuple(c) for c in comps.values())

    @property
    def num_half_edges(self) -> int:
        return len(self.pairing)

    @property
    def num_vertices(self) -> int:
        return len(self.rotation)

    @property
    def num_edges(self) -> int:
        return len(self.pairing) // 2

    @property
    def num_faces(self) -> int:
        return len(self.faces)

    @property
    def euler_characteristic(self) -> int:
        return self.num_vertices - self.num_edges + self.num_faces

    def component_genera(self) -> list:
        out = []
        for comp in self.components:
            vs = set(comp)
            hs = [h for h in range(self.num_half_edges) if self.vertex_of[h] in vs]
            fs = {self.face_of[h] for h in hs}
            chi = len(vs) - len(hs) // 2 + len(fs)
            out.append((2 - chi) // 2)
        return out

    @property
    def genus(self) -> int:
        """Total genus (sum over connected components)."""
        return sum(self.component_genera())

    def edges(self) -> list:
        return [(h, k) for h, k in enumerate(self.pairing) if h < k]

    def is_loop(self, h: int) -> bool:
        return self.vertex_of[h] == self.vertex_of[self.pairing[h]]

    def clockwise(self, v: int) -> tuple:
        """Half-edges at ``v`` in the reversed rotation order."""
        cyc = self.rotation[v]
        return (cyc[0],) + tuple(reversed(cyc[1:]))

    def right_face(self, h: int) -> int:
        """Face on the right of the edge of ``h`` oriented toward the vertex of ``h``."""
        return self.face_of[self.sigma[h]]

    def left_face(self, h: int) -> int:
        return self.face_of[h]

    def __eq__(self, other):
        return isinstance(other, Skeleton) and self.pairing == other.pairing and \
            self.rotation == other.rotation

    def __hash__(self):
        return hash((self.pairing, self.rotation))

    def __repr__(self):
        return (f"Skeleton(V={self.num_vertices}, E={self.num_edges}, F={self.num_faces}, "
                f"genus={self.genus})")


def build_skeleton(pairing, rotation) -> Skeleton:
    return Skeleton(pairing, rotation)


@dataclass(frozen=True)
class PiSystem:
    skeleton: Skeleton
    group: FiniteGroup
    g: tuple

    def value(self, h: int) -> int:
        return self.g[h]


def validate_pi_system(sk: Skeleton, group: FiniteGroup, g) -> PiSystem:
    g = tuple(int(x) for x in g)
    if len(g) != sk.num_half_edges or any(not 0 <= x < group.order for x in g):
        raise EdgeMismatch("labelling has the wrong shape")
    for h, k in enumerate(sk.pairing):
        if g[k] != group.inv[g[h]]:
            raise EdgeMismatch("opposite half-edges must carry inverse labels", witness=(h, k))
    for v in range(sk.num_vertices):
        if group.mul(*(g[h] for h in sk.clockwise(v))) != 0:
            raise VertexRelation("product around the vertex is not 1", witness=(v,))
    return PiSystem(sk, group, g)


@dataclass(frozen=True)
class SurfaceSignature:
    """A connected closed surface of genus ``n`` with a map given by the images
    ``alphas`` of the standard generators ``a_1, ..., a_2n``."""

    genus: int
    alphas: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(int(a) for a in self.alphas))
        if self.genus < 0 or len(self.alphas) != 2 * self.genus:
            raise RelationViolated("a genus-n signature needs 2n group elements")

    def relation(self, group: FiniteGroup) -> int:
        r = 0
        for k in range(self.genus):
            r = group.mul(r, group.commutator(self.alphas[2 * k], self.alphas[2 * k + 1]))
        return r

    def check(self, group: FiniteGroup) -> "SurfaceSignature":
        if any(not 0 <= a < group.order for a in self.alphas):
            raise RelationViolated("element out of range")
        if self.relation(group) != 0:
            raise RelationViolated("product of commutators is not 1", witness=self.alphas)
        return self


def canonical_skeleton(sig: SurfaceSignature, group: FiniteGroup) -> PiSystem:
    """One-vertex, one-face skeleton of a genus-n surface with the given labels.

    Handle ``r`` uses half-edges ``4r .. 4r+3`` with ``4r <-> 4r+2`` and
    ``4r+1 <-> 4r+3``; read clockwise the vertex sees ``0, 1, 2, ...`` and the
    labels ``a_{2r-1}, a_{2r}, a_{2r-1}^-1, a_{2r}^-1``.  Genus 0 gives the
    sphere with a single trivially labelled loop.
    """
    sig.check(group)
    n = sig.genus
    if n == 0:
        sk = Skeleton([1, 0], [[0, 1]])
        return validate_pi_system(sk, group, [0, 0])
    m = 4 * n
    pairing = []
    g = []
    for r in range(n):
        a, b = sig.alphas[2 * r], sig.alphas[2 * r + 1]
        base = 4 * r
        pairing += [base + 2, base + 3, base, base + 1]
        g += [a, b, group.inv[a], group.inv[b]]
    rotation = [[0] + list(range(m - 1, 0, -1))]
    sk = Skeleton(pairing, rotation)
    if sk.num_faces != 1 or sk.genus != n:
        raise InternalError("canonical skeleton has the wrong topology")
    return validate_pi_system(sk, group, g)


def homotopy_act(ps: PiSystem, gamma: Sequence[int]) -> PiSystem:
    """Apply face labels ``gamma``: ``g'(h) = gamma(right) g(h) gamma(left)^-1``."""
    sk, G = ps.skeleton, ps.group
    if len(gamma) != sk.num_faces:
        raise SurfaceError("one group element per face is required")
    g = [G.mul(gamma[sk.right_face(h)], ps.g[h], G.inv[gamma[sk.left_face(h)]])
         for h in range(sk.num_half_edges)]
    return validate_pi_system(sk, G, g)


# --- moves -----------------------------------------------------------------
class _Work:
    """Mutable half-edge structure used while applying a move."""

    def __init__(self, ps: PiSystem):
        sk = ps.skeleton
        self.group = ps.group
        self.pair = dict(enumerate(sk.pairing))
        self.rot = [list(c) for c in sk.rotation]
        self.g = dict(enumerate(ps.g))
        self.next_id = sk.num_half_edges

    def new(self) -> int:
        h = self.next_id
        self.next_id += 1
        return h

    def vertex(self, h) -> int:
        return next(v for v, c in enumerate(self.rot) if h in c)

    def link(self, h, k, value_h):
        self.pair[h], self.pair[k] = k, h
        self.g[h] = value_h
        self.g[k] = self.group.inv[value_h]

    def finish(self) -> PiSystem:
        rot = [c for c in self.rot if c]
        order = [h for c in rot for h in c]
        relabel = {h: k for k, h in enumerate(order)}
        pairing = [0] * len(order)
        g = [0] * len(order)
        for h in order:
            pairing[relabel[h]] = relabel[self.pair[h]]
            g[relabel[h]] = self.g[h]
        sk = Skeleton(pairing, [[relabel[h] for h in c] for c in rot])
        return validate_pi_system(sk, self.group, g)


def _rotate_to(cyc, h):
    k = cyc.index(h)
    return cyc[k:] + cyc[:k]


def contract(ps: PiSystem, h: int) -> PiSystem:
    """Contract the edge of half-edge ``h`` (not a loop) into a point."""
    sk = ps.skeleton
    if sk.is_loop(h):
        raise NotApplicable("cannot contract a loop", witness=(h,))
    k = sk.pairing[h]
    W = _Work(ps)
    va, vb = sk.vertex_of[h], sk.vertex_of[k]
    a_arc = _rotate_to(W.rot[va], h)[1:]
    b_arc = _rotate_to(W.rot[vb], k)[1:]
    W.rot[va] = a_arc + b_arc
    W.rot[vb] = []
    del W.pair[h], W.pair[k], W.g[h], W.g[k]
    return W.finish()


def uncontract(ps: PiSystem, v: int, start: int, length: int) -> PiSystem:
    """Split vertex ``v`` by a new edge.

    The counterclockwise cycle at ``v`` read from position ``start`` is cut
    into an arc of ``length`` half-edges that stays at the old vertex and the
    remaining arc that moves to the new vertex.
    """
    sk = ps.skeleton
    G = ps.group
    cyc = list(sk.rotation[v])
    n = len(cyc)
    if not 0 <= length <= n:
        raise NotApplicable("arc length out of range")
    cyc = cyc[start % n:] + cyc[:start % n]
    a_arc, b_arc = cyc[:length], cyc[length:]
    W = _Work(ps)
    h, k = W.new(), W.new()
    # clockwise product of the moved arc fixes the new label
    val = G.mul(*(ps.g[x] for x in reversed(b_arc))) if b_arc else 0
    W.link(h, k, val)
    W.rot[v] = [h] + a_arc
    W.rot.append([k] + b_arc)
    return W.finish()


def add_biangle(ps: PiSystem, h: int, x: int) -> PiSystem:
    """Replace the edge of ``h`` by a path with a doubled middle edge (a small biangle).

    One of the two parallel edges carries ``x`` (toward the vertex nearer ``h``).
    """
    sk = ps.skeleton
    G = ps.group
    a, b = h, sk.pairing[h]
    alpha = ps.g[b]
    W = _Work(ps)
    p1, p2, p3, q1, q2, q3 = (W.new() for _ in range(6))
    W.link(a, p1, G.inv[alpha])
    W.link(q1, b, G.inv[alpha])
    W.link(p2, q2, x)
    W.link(p3, q3, G.mul(G.inv[alpha], G.inv[x]))
    W.rot.append([p1, p2, p3])
    W.rot.append([q1, q3, q2])
    return W.finish()


def find_biangles(sk: Skeleton) -> list:
    """Half-edges ``p3`` of removable biangles (two-sided faces between distinct trivalent vertices)."""
    out = []
    for face in sk.faces:
        if len(face) != 2:
            continue
        for x in face:
            y = sk.sigma[sk.pairing[x]]
            vx, vy = sk.vertex_of[x], sk.vertex_of[y]
            if vx == vy or len(sk.rotation[vx]) != 3 or len(sk.rotation[vy]) != 3:
                continue
            p1, q1 = sk.sigma[x], sk.sigma[y]
            if sk.pairing[p1] == q1 or sk.vertex_of[sk.pairing[p1]] in (vx, vy) or \
                    sk.vertex_of[sk.pairing[q1]] in (vx, vy):
                continue
            out.append(x)
    return out


def remove_biangle(ps: PiSystem, x: int) -> PiSystem:
    sk = ps.skeleton
    if x not in find_biangles(sk):
        raise NotApplicable("no removable biangle at this half-edge", witness=(x,))
    y = sk.sigma[sk.pairing[x]]
    p1, q1 = sk.sigma[x], sk.sigma[y]
    a, b = sk.pairing[p1], sk.pairing[q1]
    W = _Work(ps)
    for v in (sk.vertex_of[x], sk.vertex_of[y]):
        for hh in W.rot[v]:
            del W.pair[hh], W.g[hh]
        W.rot[v] = []
    W.link(a, b, ps.g[a])
    return W.finish()


def add_loop(ps: PiSystem, h: int, x: int) -> PiSystem:
    """Subdivide the edge of ``h`` and attach a small loop labelled ``x`` at the new vertex."""
    sk = ps.skeleton
    G = ps.group
    a, b = h, sk.pairing[h]
    W = _Work(ps)
    m1, l1, l2, m2 = (W.new() for _ in range(4))
    W.link(a, m1, ps.g[a])
    W.link(m2, b, ps.g[a])
    W.link(l1, l2, x)
    W.rot.append([m1, l1, l2, m2])
    return W.finish()


def find_loops(sk: Skeleton) -> list:
    """Half-edges ``y`` bounding a removable monogon at a 4-valent vertex."""
    out = []
    for y in range(sk.num_half_edges):
        if sk.sigma[sk.pairing[y]] != y:
            continue
        v = sk.vertex_of[y]
        if len(sk.rotation[v]) != 4:
            continue
        m2 = sk.sigma[y]
        m1 = sk.sigma[m2]
        if sk.vertex_of[sk.pairing[m1]] == v or sk.vertex_of[sk.pairing[m2]] == v:
            continue
        out.append(y)
    return out


def remove_loop(ps: PiSystem, y: int) -> PiSystem:
    sk = ps.skeleton
    if y not in find_loops(sk):
        raise NotApplicable("no removable loop at this half-edge", witness=(y,))
    m2 = sk.sigma[y]
    m1 = sk.sigma[m2]
    a, b = sk.pairing[m1], sk.pairing[m2]
    W = _Work(ps)
    v = sk.vertex_of[y]
    for hh in W.rot[v]:
        del W.pair[hh], W.g[hh]
    W.rot[v] = []
    W.link(a, b, ps.g[a])
    return W.finish()


MOVES = ("contract", "uncontract", "add_biangle", "remove_biangle", "add_loop", "remove_loop")


def apply_move(ps: PiSystem, move: str, *args) -> PiSystem:
    """Apply a named move and check that the surface type is unchanged."""
    fn = {"contract": contract, "uncontract": uncontract, "add_biangle": add_biangle,
          "remove_biangle": remove_biangle, "add_loop": add_loop,
          "remove_loop": remove_loop}.get(move)
    if fn is None:
        raise NotApplicable(f"unknown move {move!r}")
    out = fn(ps, *args)
    before, after = ps.skeleton, out.skeleton
    if before.euler_characteristic != after.euler_characteristic or \
            sorted(before.component_genera()) != sorted(after.component_genera()):
        raise InternalError(f"move {move} changed the surface", witness=args)
    return out


def random_move(ps: PiSystem, rng: random.Random, max_faces: int | None = None) -> tuple:
    """Pick an applicable move uniformly at random; returns ``(move, args)``."""
    sk = ps.skeleton
    G = ps.group
    options = []
    non_loops = [h for h in range(sk.num_half_edges) if not sk.is_loop(h)]
    if non_loops:
        options.append(("contract", lambda: (rng.choice(non_loops),)))
    options.append(("uncontract", lambda: _uncontract_args(sk, rng)))
    grow = max_faces is None or sk.num_faces < max_faces
    if grow:
        options.append(("add_biangle", lambda: (rng.randrange(sk.num_half_edges),
                                                rng.randrange(G.order))))
        options.append(("add_loop", lambda: (rng.randrange(sk.num_half_edges),
                                             rng.randrange(G.order))))
    bi = find_biangles(sk)
    if bi:
        options.append(("remove_biangle", lambda: (rng.choice(bi),)))
    lo = find_loops(sk)
    if lo:
        options.append(("remove_loop", lambda: (rng.choice(lo),)))
    name, argf = rng.choice(options)
    return name, argf()


def _uncontract_args(sk: Skeleton, rng: random.Random) -> tuple:
    v = rng.randrange(sk.num_vertices)
    n = len(sk.rotation[v])
    return v, rng.randrange(n), rng.randrange(n + 1)


def canonical_form(ps: PiSystem) -> tuple:
    """Relabelling-invariant code of a labelled skeleton (connected components sorted)."""
    sk = ps.skeleton
    codes = []
    for comp in sk.components:
        vs = set(comp)
        hs = [h for h in range(sk.num_half_edges) if sk.vertex_of[h] in vs]
        best = None
        for start in hs:
            label = {}
            order = [start]
            label[start] = 0
            k = 0
            while k < len(order):
                h = order[k]
                k += 1
                for nxt in (sk.sigma[h], sk.pairing[h]):
                    if nxt not in label:
                        label[nxt] = len(order)
                        order.append(nxt)
            code = tuple((label[sk.sigma[h]], label[sk.pairing[h]], ps.g[h]) for h in order)
            if best is None or code < best:
                best = code
        codes.append(best)
    return tuple(sorted(codes))
