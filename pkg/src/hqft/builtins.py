"""Registry of named groups, cocycles and algebras used by the CLI and the tests."""
from __future__ import annotations

from functools import lru_cache

from .center import build_action_groupalg, build_homset_algebra
from .crossed import cocycle_algebra, group_ring, pi_F_algebra, pushforward_crossed, transfer
from .graded import FrobeniusAlgebra, GradedAlgebra
from .groups import (builtin_group, make_subgroup, minus_one_cocycle_z2, sign_cocycle_klein,
                     trivial_cocycle)
from .linalg import Matrix

GROUP_NAMES = ("trivial", "Z2", "Z3", "Z4", "Z2xZ2", "S3")


def _swap_algebra():
    """Q x Q (coordinatewise product) over the trivial group, with the identity form."""
    T = builtin_group("trivial")
    mult = {(0, 0): [[(1, 0), (0, 0)], [(0, 0), (0, 1)]]}
    return FrobeniusAlgebra(T, [2], [1, 1], mult, eta={0: Matrix([[1, 0], [0, 1]])})


def _klein_regular_algebra():
    T = builtin_group("trivial")
    mult = {(0, 0): [[tuple(1 if k == i == j else 0 for k in range(4)) for j in range(4)]
                     for i in range(4)]}
    return FrobeniusAlgebra(T, [4], [1] * 4, mult, eta={0: Matrix.identity(4)})


def _perm_matrix(p):
    n = len(p)
    return Matrix([[1 if p[j] == i else 0 for j in range(n)] for i in range(n)])


def _transfer_z2():
    Z2 = builtin_group("Z2")
    return transfer(Z2, make_subgroup(Z2, [0]), group_ring(builtin_group("trivial")))


def _transfer_s3():
    S3 = builtin_group("S3")
    sub = make_subgroup(S3, [0, 3, 4])
    H, emb = sub.as_group()
    return transfer(S3, sub, group_ring(H), emb)


def _pushforward_z4():
    return pushforward_crossed([0, 1, 0, 1], builtin_group("Z2"), group_ring(builtin_group("Z4")))


def _pif_swap():
    Z2 = builtin_group("Z2")
    return pi_F_algebra(_swap_algebra(), Z2, {0: Matrix.identity(2), 1: _perm_matrix([1, 0])})


def _pif_klein():
    K = builtin_group("Z2xZ2")
    return pi_F_algebra(_klein_regular_algebra(), K,
                        {a: _perm_matrix([a ^ x for x in range(4)]) for a in range(4)})


def _homset_point():
    Z2 = builtin_group("Z2")
    return build_homset_algebra(Z2, [[0], [0]], [2], "sum")


def _homset_regular(dims, mode):
    Z2 = builtin_group("Z2")
    return build_homset_algebra(Z2, [[0, 1], [1, 0]], dims, mode)


def _action_swap():
    Z2 = builtin_group("Z2")
    A = _swap_algebra()
    A = GradedAlgebra(A.group, A.dims, A.unit, A.mult)
    return build_action_groupalg(A, Z2, {0: Matrix.identity(2), 1: _perm_matrix([1, 0])})


CROSSED = {
    **{f"K[{g}]": (lambda g=g: group_ring(builtin_group(g))) for g in GROUP_NAMES},
    "Ltheta[Z2]": lambda: cocycle_algebra(builtin_group("Z2"), minus_one_cocycle_z2()),
    "Lsign[Z2xZ2]": lambda: cocycle_algebra(builtin_group("Z2xZ2"), sign_cocycle_klein()),
    "Transfer[Z2/1]": _transfer_z2,
    "Transfer[S3/Z3]": _transfer_s3,
    "Pushforward[Z4/Z2]": _pushforward_z4,
    "PiF[Z2;swap]": _pif_swap,
    "PiF[Z2xZ2;regular]": _pif_klein,
}

GRADED = {
    "Homset[Z2;pt;2]": _homset_point,
    "Homset[Z2;reg;1,1]": lambda: _homset_regular([1, 1], "sum"),
    "Homset[Z2;reg;1,2]": lambda: _homset_regular([1, 2], "sum"),
    "Rtensor[Z2;reg;1,2]": lambda: _homset_regular([1, 2], "tensor"),
    "Action[Z2;swap]": _action_swap,
}

COCYCLES = {
    "trivial[Z2]": lambda: trivial_cocycle(builtin_group("Z2")),
    "minus[Z2]": minus_one_cocycle_z2,
    "sign[Z2xZ2]": sign_cocycle_klein,
}


@lru_cache(maxsize=None)
def builtin_algebra(name: str):
    if name in CROSSED:
        return CROSSED[name]()
    if name in GRADED:
        return GRADED[name]()
    raise KeyError(f"unknown built-in algebra {name!r}")


def builtin_cocycle(name: str):
    if name in COCYCLES:
        return COCYCLES[name]()
    raise KeyError(f"unknown built-in cocycle {name!r}")


def algebra_names() -> list:
    return list(CROSSED) + list(GRADED)


def lookup(name: str):
    """Resolve a built-in name to a group, cocycle or algebra."""
    for fn in (builtin_algebra, builtin_cocycle, builtin_group):
        try:
            return fn(name)
        except KeyError:
            continue
    raise KeyError(f"unknown built-in {name!r}")
