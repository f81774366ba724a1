"""JSON interchange: parsing, schema checks and serialization.

Scalars are written as strings ``"p/q"`` (or ``"p"``).  Action matrices in
files use rows indexed by the source basis, so ``phi_b`` on degree ``a`` is a
``dim L_a x dim L_{b a b^-1}`` array.
"""
from __future__ import annotations

import json
from pathlib import Path

from .builtins import lookup
from .crossed import validate_crossed
from .errors import GroupMismatch, ParseError, SchemaError
from .graded import CrossedAlgebra, FrobeniusAlgebra, GradedAlgebra, check_graded_algebra, \
    validate_frobenius
from .groups import Cocycle2, FiniteGroup, builtin_group, check_cocycle, make_group
from .linalg import Matrix, format_scalar, scalar
from .surfaces import PiSystem, SurfaceSignature, build_skeleton, validate_pi_system


# --- scalars -----------------------------------------------------------------
def _scalar(x, field):
    try:
        return scalar(x)
    except (TypeError, ValueError, ZeroDivisionError):
        raise SchemaError(f"field {field!r}: {x!r} is not an exact rational", witness=field) from None


def _need(obj, key, kind, where):
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(f"{where}: missing field {key!r}", witness=key)
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise SchemaError(f"{where}: field {key!r} has the wrong type", witness=key)
    return val


def _ints(xs, field):
    if not isinstance(xs, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in xs):
        raise SchemaError(f"field {field!r} must be a list of integers", witness=field)
    return xs


# --- groups and cocycles -------------------------------------------------------
def group_to_json(G: FiniteGroup) -> dict:
    out = {"name": G.name, "order": G.order, "mult": [list(r) for r in G.mult]}
    if G.names != tuple(str(i) for i in range(G.order)):
        out["names"] = list(G.names)
    return out


def group_from_json(obj) -> FiniteGroup:
    if isinstance(obj, str):
        try:
            return builtin_group(obj)
        except KeyError:
            raise SchemaError(f"unknown group {obj!r}", witness="group") from None
    mult = _need(obj, "mult", list, "group")
    for row in mult:
        _ints(row, "mult")
    order = obj.get("order", len(mult))
    if order != len(mult):
        raise SchemaError("group: order does not match the table", witness="order")
    return make_group(mult, name=obj.get("name", ""), names=obj.get("names"))


def _group_ref(G: FiniteGroup):
    try:
        if G.name and builtin_group(G.name) == G and builtin_group(G.name).names == G.names:
            return G.name
    except KeyError:
        pass
    return group_to_json(G)


def cocycle_to_json(th: Cocycle2) -> dict:
    return {"group": _group_ref(th.group),
            "values": [[format_scalar(x) for x in r] for r in th.values]}


def cocycle_from_json(obj) -> Cocycle2:
    G = group_from_json(_need(obj, "group", None, "cocycle"))
    vals = _need(obj, "values", list, "cocycle")
    return check_cocycle(G, [[_scalar(x, "values") for x in r] for r in vals])


# --- algebras ----------------------------------------------------------------
def algebra_to_json(L: GradedAlgebra) -> dict:
    G = L.group
    mult = []
    for a in G.elements:
        for b in G.elements:
            for i, row in enumerate(L.mult[(a, b)]):
                for j, v in enumerate(row):
                    if any(v):
                        mult.append({"alpha": a, "beta": b, "i": i, "j": j,
                                     "coeffs": [format_scalar(x) for x in v]})
    out = {"group": _group_ref(G), "dims": list(L.dims),
           "unit": [format_scalar(x) for x in L.unit], "mult": mult}
    if isinstance(L, FrobeniusAlgebra):
        out["eta"] = {str(a): [[format_scalar(x) for x in r] for r in L.eta[a].rows]
                      for a in G.elements}
    if isinstance(L, CrossedAlgebra):
        out["phi"] = [{"beta": b, "alpha": a,
                       "matrix": [[format_scalar(x) for x in r] for r in L.phi[(b, a)].T.rows]}
                      for b in G.elements for a in G.elements]
    return out


def algebra_from_json(obj) -> GradedAlgebra:
    """Parse and fully validate an algebra document."""
    G = group_from_json(_need(obj, "group", None, "algebra"))
    dims = _ints(_need(obj, "dims", list, "algebra"), "dims")
    if len(dims) != G.order:
        raise SchemaError("dims must have one entry per group element", witness="dims")
    unit = [_scalar(x, "unit") for x in _need(obj, "unit", list, "algebra")]
    if len(unit) != dims[0]:
        raise SchemaError("unit has the wrong length", witness="unit")
    mult = {(a, b): [[[0] * dims[G.mult[a][b]] for _ in range(dims[b])] for _ in range(dims[a])]
            for a in G.elements for b in G.elements}
    for e in _need(obj, "mult", list, "algebra"):
        a, b = _need(e, "alpha", int, "mult"), _need(e, "beta", int, "mult")
        i, j = _need(e, "i", int, "mult"), _need(e, "j", int, "mult")
        if not (0 <= a < G.order and 0 <= b < G.order and 0 <= i < dims[a] and 0 <= j < dims[b]):
            raise SchemaError("mult entry out of range", witness="mult")
        coeffs = [_scalar(x, "coeffs") for x in _need(e, "coeffs", list, "mult")]
        if len(coeffs) != dims[G.mult[a][b]]:
            raise SchemaError("mult coefficient vector has the wrong length", witness="coeffs")
        mult[(a, b)][i][j] = coeffs
    eta = None
    if "eta" in obj:
        raw = _need(obj, "eta", dict, "algebra")
        eta = {}
        for a in G.elements:
            rows = raw.get(str(a))
            if rows is None:
                raise SchemaError(f"eta block for degree {a} is missing", witness="eta")
            ai = G.inv[a]
            m = [[_scalar(x, "eta") for x in r] for r in rows]
            if len(m) != dims[a] or any(len(r) != dims[ai] for r in m):
                raise SchemaError(f"eta block for degree {a} has the wrong shape", witness="eta")
            eta[a] = Matrix(m, ncols=dims[ai])
    if "phi" in obj:
        if eta is None:
            raise SchemaError("an action requires a form", witness="phi")
        phi = {}
        for e in _need(obj, "phi", list, "algebra"):
            b, a = _need(e, "beta", int, "phi"), _need(e, "alpha", int, "phi")
            if not (0 <= a < G.order and 0 <= b < G.order):
                raise SchemaError("phi entry out of range", witness="phi")
            t = G.conj(b, a)
            m = [[_scalar(x, "matrix") for x in r] for r in _need(e, "matrix", list, "phi")]
            if len(m) != dims[a] or any(len(r) != dims[t] for r in m):
                raise SchemaError(f"phi matrix for beta={b}, alpha={a} has the wrong shape",
                                  witness="matrix")
            phi[(b, a)] = Matrix(m, ncols=dims[t]).T if dims[a] else Matrix.zeros(dims[t], 0)
        for b in G.elements:
            for a in G.elements:
                if (b, a) not in phi and b != 0:
                    raise SchemaError(f"phi matrix for beta={b}, alpha={a} is missing",
                                      witness="phi")
        return validate_crossed(CrossedAlgebra(G, dims, unit, mult, eta=eta, phi=phi))
    if eta is not None:
        return validate_frobenius(FrobeniusAlgebra(G, dims, unit, mult, eta=eta))
    return check_graded_algebra(GradedAlgebra(G, dims, unit, mult))


# --- surfaces ----------------------------------------------------------------
def surface_to_json(s, group: FiniteGroup | None = None) -> dict:
    """Signature or labelled skeleton; ``group`` (optional) is recorded for standalone files."""
    if isinstance(s, SurfaceSignature):
        out = {"genus": s.genus, "alphas": list(s.alphas)}
    else:
        sk = s.skeleton
        out = {"skeleton": {"pairing": list(sk.pairing),
                            "rotation": [list(c) for c in sk.rotation]},
               "g": list(s.g)}
        group = group or s.group
    if group is not None:
        out["group"] = _group_ref(group)
    return out


def surface_from_json(obj, group: FiniteGroup):
    if isinstance(obj, dict) and "group" in obj and group_from_json(obj["group"]) != group:
        raise GroupMismatch("surface document names a different group", witness="group")
    if "genus" in obj:
        genus = _need(obj, "genus", int, "surface")
        alphas = obj.get("alphas", [])
        alphas = [group.element(a) if isinstance(a, str) else a for a in alphas]
        return SurfaceSignature(genus, _ints(alphas, "alphas")).check(group)
    skel = _need(obj, "skeleton", dict, "surface")
    pairing = _ints(_need(skel, "pairing", list, "skeleton"), "pairing")
    rotation = [_ints(c, "rotation") for c in _need(skel, "rotation", list, "skeleton")]
    g = [group.element(x) if isinstance(x, str) else x for x in _need(obj, "g", list, "surface")]
    return validate_pi_system(build_skeleton(pairing, rotation), group, _ints(g, "g"))


def parse_surface_shorthand(text: str, group: FiniteGroup) -> SurfaceSignature:
    """``genus=N`` optionally followed by ``,alphas=x,y,...`` (names or indices).

    Without ``alphas`` every generator maps to the identity.
    """
    text = text.strip()
    if not text.startswith("genus="):
        raise ParseError(f"surface shorthand must start with 'genus=': {text!r}")
    head, _, tail = text.partition(",alphas=")
    try:
        genus = int(head[len("genus="):])
    except ValueError:
        raise ParseError(f"bad genus in {text!r}") from None
    alphas = []
    if tail:
        for tok in tail.split(","):
            try:
                alphas.append(group.element(tok))
            except KeyError as e:
                raise ParseError(str(e)) from None
    else:
        alphas = [0] * (2 * genus)
    return SurfaceSignature(genus, alphas).check(group)


# --- documents ---------------------------------------------------------------
def read_json(path) -> object:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: {e.msg} at line {e.lineno}, column {e.colno}",
                         witness=(e.lineno, e.colno)) from None


def classify_document(obj) -> str:
    if not isinstance(obj, dict):
        raise SchemaError("document must be a JSON object")
    if "dims" in obj:
        return "algebra"
    if "values" in obj:
        return "cocycle"
    if "mult" in obj:
        return "group"
    if "genus" in obj or "skeleton" in obj:
        return "surface"
    raise SchemaError("cannot tell which kind of document this is")


def load(ref: str, group: FiniteGroup | None = None):
    """Load ``builtin:NAME`` or a JSON file; the object is validated on the way in."""
    if ref.startswith("builtin:"):
        try:
            return lookup(ref[len("builtin:"):])
        except KeyError as e:
            raise SchemaError(str(e.args[0])) from None
    obj = read_json(ref)
    kind = classify_document(obj)
    if kind == "algebra":
        return algebra_from_json(obj)
    if kind == "cocycle":
        return cocycle_from_json(obj)
    if kind == "group":
        return group_from_json(obj)
    if group is None:
        if "group" not in obj:
            raise SchemaError("a surface needs a group to be interpreted", witness="group")
        group = group_from_json(obj["group"])
    return surface_from_json(obj, group)


def to_json(obj):
    if isinstance(obj, GradedAlgebra):
        return algebra_to_json(obj)
    if isinstance(obj, Cocycle2):
        return cocycle_to_json(obj)
    if isinstance(obj, FiniteGroup):
        return group_to_json(obj)
    if isinstance(obj, (SurfaceSignature, PiSystem)):
        return surface_to_json(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)
