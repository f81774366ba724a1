"""Shared fixtures: mutation algebras (one per axiom) and small surface lists."""
import itertools

from hqft.builtins import builtin_algebra
from hqft.graded import CrossedAlgebra
from hqft.groups import builtin_group
from hqft.linalg import Matrix
from hqft.surfaces import SurfaceSignature


def _z2_ring_data():
    L = builtin_algebra("K[Z2]")
    return L.group, L.dims, L.unit, L.mult, dict(L.eta), dict(L.phi)


def mutant_zero_eta():
    G, dims, unit, mult, eta, phi = _z2_ring_data()
    eta[0] = Matrix([[0]])
    return CrossedAlgebra(G, dims, unit, mult, eta=eta, phi=phi)


def mutant_noninvariant_eta():
    G, dims, unit, mult, eta, phi = _z2_ring_data()
    eta[0] = Matrix([[2]])
    return CrossedAlgebra(G, dims, unit, mult, eta=eta, phi=phi)


def mutant_form_not_preserved():
    Z2 = builtin_group("Z2")
    mult = {(0, 0): [[(1, 0), (0, 0)], [(0, 0), (0, 1)]]}
    eta = {0: Matrix([[1, 0], [0, 2]])}
    swap = Matrix([[0, 1], [1, 0]])
    phi = {(1, 0): swap, (1, 1): Matrix.zeros(0, 0)}
    return CrossedAlgebra(Z2, [2, 0], [1, 1], mult, eta=eta, phi=phi)


def mutant_moves_own_degree():
    G, dims, unit, mult, eta, phi = _z2_ring_data()
    phi[(1, 1)] = Matrix([[-1]])
    return CrossedAlgebra(G, dims, unit, mult, eta=eta, phi=phi)


def mutant_identity_action_on_sign():
    L = builtin_algebra("Lsign[Z2xZ2]")
    phi = {(b, a): Matrix.identity(1) for b in range(4) for a in range(4)}
    return CrossedAlgebra(L.group, L.dims, L.unit, L.mult, eta=L.eta, phi=phi)


def mutant_trace_mismatch():
    Z2 = builtin_group("Z2")
    mult = {(0, 0): [[(1,)]]}
    phi = {(1, 0): Matrix.identity(1), (1, 1): Matrix.zeros(0, 0)}
    return CrossedAlgebra(Z2, [1, 0], [1], mult, eta={0: Matrix([[1]])}, phi=phi)


MUTANTS = {
    "3.1.1": mutant_zero_eta,
    "3.1.2": mutant_noninvariant_eta,
    "3.2.1": mutant_form_not_preserved,
    "3.2.2": mutant_moves_own_degree,
    "3.2.3": mutant_identity_action_on_sign,
    "3.2.4": mutant_trace_mismatch,
}

# crossed built-ins named in the acceptance list
CROSSED_SUITE = ["K[trivial]", "K[Z2]", "K[Z3]", "K[Z4]", "K[Z2xZ2]", "K[S3]", "Ltheta[Z2]",
                 "Lsign[Z2xZ2]", "Transfer[Z2/1]", "Transfer[S3/Z3]", "Pushforward[Z4/Z2]",
                 "PiF[Z2;swap]", "PiF[Z2xZ2;regular]"]

BIANGULAR = ["K[trivial]", "K[Z2]", "K[Z3]", "K[Z4]", "K[Z2xZ2]", "K[S3]", "Ltheta[Z2]",
             "Lsign[Z2xZ2]", "Pushforward[Z4/Z2]", "Homset[Z2;pt;2]", "Homset[Z2;reg;1,1]",
             "Rtensor[Z2;reg;1,2]", "Action[Z2;swap]"]

NONDEG = BIANGULAR + ["Transfer[Z2/1]", "Transfer[S3/Z3]", "PiF[Z2;swap]", "PiF[Z2xZ2;regular]",
                      "Homset[Z2;reg;1,2]"]


def commuting_signatures(group, genus):
    """Every signature of the given genus whose relation holds."""
    out = []
    for alphas in itertools.product(group.elements, repeat=2 * genus):
        sig = SurfaceSignature(genus, list(alphas))
        if sig.relation(group) == 0:
            out.append(sig)
    return out


def random_signatures(group, genus, count, rng):
    out = []
    while len(out) < count:
        alphas = [rng.randrange(group.order) for _ in range(2 * genus)]
        sig = SurfaceSignature(genus, alphas)
        if sig.relation(group) == 0:
            out.append(sig)
    return out
