"""Boolean polynomials: F2[x1..xn] modulo the field ideal <x_k^2 - x_k>.

Every Boolean polynomial is held as its canonical square-free
representative.  The separating checks and extractions run on those
representatives in the plain F2 ring — optionally together with the field
ideal generators — and map results back through square-free normalization.
Also houses the degree-bounded vanishing ideal of a point set and the AES
S-box fixtures built on it.
"""

from __future__ import annotations

from itertools import combinations

from .gboracle import division_remainder, field_ideal_gens
from .poly import FIELD_F2, Polynomial, PolySystem, Ring, make_ring, term_squarefree, unit_term
from .reduce import METHOD_ECHELON, kernel_basis
from .sepcheck import EXT_DELETED, check_separating, check_separating_optimized
from .sepextract import (
    CoherentTuple,
    SeparatingTuple,
    compatible_ordering,
    find_separating_tuple,
    find_separating_tuple_tracked,
)

BOOL_PLAIN = "Plain"
BOOL_OPTIMIZED = "Optimized"
BOOL_OPTIMIZED_FIELD = "OptimizedWithFieldIdeal"
BOOL_MODES = (BOOL_PLAIN, BOOL_OPTIMIZED, BOOL_OPTIMIZED_FIELD)


def boolean_ring_of(ring):
    if ring.field != FIELD_F2:
        raise ValueError("boolean layer needs an F2 ring")
    if ring.boolean:
        return ring
    return Ring(ring.names, FIELD_F2, True)


def squarefree_normalize(f):
    """Canonical representative: every exponent clipped to 1, collisions mod 2."""
    bring = boolean_ring_of(f.ring)
    out = {}
    for t, _ in f.coeffs.items():
        sq = term_squarefree(t)
        if sq in out:
            del out[sq]
        else:
            out[sq] = 1
    return Polynomial(bring, out)


def representative(f):
    """The same support read in the plain (non-quotient) F2 ring."""
    return Polynomial(f.ring.plain(), dict(f.coeffs))


def _representative_system(system, with_field_ideal=False):
    plain = system.ring.plain()
    gens = [representative(g) for g in system.gens]
    if with_field_ideal:
        gens.extend(field_ideal_gens(plain))
    return PolySystem(plain, gens)


def bool_normal_remainder(f, divisors, ordering):
    """Normal remainder against (G_1,...,G_r, x_1^2 - x_1,..., x_n^2 - x_n).

    Division happens on representatives in the plain ring, with the field
    ideal generators last in the divisor order; the remainder is reduced
    square-free again.
    """
    plain = f.ring.plain()
    divs = [representative(g) for g in divisors if g]
    divs.extend(field_ideal_gens(plain))
    rem = division_remainder(representative(f), divs, ordering)
    return squarefree_normalize(rem)


def bool_check_separating(system, z_indices, mode=BOOL_PLAIN, method=METHOD_ECHELON,
                          extension=EXT_DELETED):
    """Run a separating check on a boolean-mode system.

    Plain and Optimized operate on the canonical representatives;
    OptimizedWithFieldIdeal appends the field ideal generators first, which
    widens the search to certificates that use the x^2 = x relations.
    """
    if not system.ring.boolean:
        raise ValueError("bool_check_separating needs a boolean-mode system")
    if mode not in BOOL_MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if mode == BOOL_PLAIN:
        reps = _representative_system(system)
        outcome = check_separating(reps, z_indices)
    else:
        reps = _representative_system(system, with_field_ideal=mode == BOOL_OPTIMIZED_FIELD)
        outcome = check_separating_optimized(reps, z_indices, method=method,
                                             extension=extension)
    outcome.mode = mode
    return outcome


def bool_find_separating_tuple(system, z_indices, outcome, method=METHOD_ECHELON,
                               extension=EXT_DELETED):
    """Extract the certificate tuple for a successful boolean check.

    Plain outcomes are extracted with the echelon method on the
    representatives; optimized outcomes replay the checker with companion
    tracking.  Results are mapped back to square-free form.
    """
    if not outcome.ok:
        raise ValueError("outcome is not a Success")
    bring = boolean_ring_of(system.ring)
    if outcome.mode == BOOL_PLAIN:
        reps = _representative_system(system)
        sigma = compatible_ordering(outcome.weights, z_indices)
        sep = find_separating_tuple(reps, z_indices, sigma)
        weights = outcome.weights
    elif outcome.mode in (BOOL_OPTIMIZED, BOOL_OPTIMIZED_FIELD):
        reps = _representative_system(
            system, with_field_ideal=outcome.mode == BOOL_OPTIMIZED_FIELD
        )
        sep = find_separating_tuple_tracked(reps, z_indices, method=method,
                                            extension=extension)
        weights = sep.weights
    else:
        raise ValueError(f"outcome mode {outcome.mode!r} is not a boolean mode")
    entries = []
    for k, f in sep.entries:
        g = squarefree_normalize(Polynomial(bring, dict(f.coeffs)))
        entries.append((k, g))
    return SeparatingTuple(entries, sep.ordering, weights=weights)


def augment_with_indeterminate_products(system, z_indices):
    """Append squarefree(z_i * g_j) for generators whose support holds z_i.

    Only generators with zero constant term qualify; each appended
    polynomial then has linear part exactly z_i, so the augmentation can
    only help the linear-span stage of the plain check.
    """
    if not system.ring.boolean:
        raise ValueError("augmentation needs a boolean-mode system")
    ring = system.ring
    extra = []
    for g in system.gens:
        if g.constant_coeff():
            continue
        for k in z_indices:
            t = unit_term(ring.nvars, k)
            if t in g.coeffs:
                extra.append(g.term_mul_poly(t))
    return PolySystem(ring, list(system.gens) + extra)


def bool_coherent_tuple(sep):
    """Coherent form of a boolean separating tuple, via normal remainders.

    Writes f_i = z_i + h_i and replaces h_i by its normal remainder against
    the whole tuple plus the field ideal; no remainder term is divisible by
    any z_j, so substitution becomes elimination.
    """
    if not sep.entries:
        return CoherentTuple([])
    bring = sep.entries[0][1].ring
    plain = bring.plain()
    divisors = [representative(f) for _, f in sep.entries]
    divisors.extend(field_ideal_gens(plain))
    entries = []
    for k, f in sep.entries:
        z = Polynomial.variable(plain, k)
        h = representative(f) + z  # characteristic 2: h_i = f_i - z_i
        rem = division_remainder(h, divisors, sep.ordering)
        h_bool = squarefree_normalize(rem)
        entries.append((k, Polynomial.variable(bring, k) + h_bool))
    return CoherentTuple(entries)


# -- vanishing ideals of point sets ---------------------------------------------

def _squarefree_terms(nvars, dmax):
    out = []
    for size in range(dmax + 1):
        for combo in combinations(range(nvars), size):
            t = [0] * nvars
            for i in combo:
                t[i] = 1
            out.append(tuple(t))
    return out


def vanishing_ideal_degree_bounded(points, dmax, ring=None):
    """Basis of the square-free polynomials of degree <= dmax vanishing on points.

    Builds the evaluation matrix of all square-free terms of degree <= dmax
    at the points and converts a kernel basis back to Boolean polynomials.
    """
    points = [tuple(int(b) for b in p) for p in points]
    if not points:
        raise ValueError("empty point set")
    m = len(points[0])
    if any(len(p) != m for p in points):
        raise ValueError("points of unequal length")
    if len(set(points)) != len(points):
        raise ValueError("duplicate points")
    if dmax > m:
        raise ValueError("degree bound exceeds the number of coordinates")
    if ring is None:
        ring = make_ring(m, FIELD_F2, boolean=True)
    elif ring.nvars != m:
        raise ValueError("ring size does not match point length")
    terms = _squarefree_terms(m, dmax)
    rows = []
    for p in points:
        rows.append([1 if all(p[i] for i, e in enumerate(t) if e) else 0 for t in terms])
    vecs = kernel_basis(rows, len(terms), FIELD_F2)
    polys = []
    for v in vecs:
        coeffs = {terms[c]: 1 for c, bit in enumerate(v) if bit}
        polys.append(Polynomial(ring, coeffs))
    return polys


# -- AES S-box fixtures -----------------------------------------------------------

def _gf256_mul(a, b):
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        a <<= 1
        if a & 0x100:
            a ^= 0x11B
        b >>= 1
    return acc


def generate_sbox_table():
    """The Rijndael S-box from its definition: GF(256) inverse plus affine map."""
    inverse = [0] * 256
    for a in range(1, 256):
        if inverse[a]:
            continue
        b = next(x for x in range(1, 256) if _gf256_mul(a, x) == 1)
        inverse[a] = b
        inverse[b] = a
    table = []
    for a in range(256):
        inv = inverse[a]
        out = 0
        for i in range(8):
            bit = (
                (inv >> i)
                ^ (inv >> ((i + 4) % 8))
                ^ (inv >> ((i + 5) % 8))
                ^ (inv >> ((i + 6) % 8))
                ^ (inv >> ((i + 7) % 8))
                ^ (0x63 >> i)
            ) & 1
            out |= bit << i
        table.append(out)
    return tuple(table)


def load_sbox_table():
    """The S-box lookup table shipped with the package (256 hex bytes)."""
    from importlib.resources import files

    text = files("zsep").joinpath("data/aes_sbox.txt").read_text(encoding="utf-8")
    entries = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            entries.extend(int(tok, 16) for tok in line.split())
    if len(entries) != 256:
        raise ValueError(f"S-box table has {len(entries)} entries, expected 256")
    return tuple(entries)


def sbox_graph_points(table=None):
    """The 256 points (bits of a, bits of s(a)), each bit string MSB first."""
    if table is None:
        table = load_sbox_table()
    pts = []
    for a in range(256):
        s = table[a]
        bits = [(a >> (7 - i)) & 1 for i in range(8)]
        bits += [(s >> (7 - i)) & 1 for i in range(8)]
        pts.append(tuple(bits))
    return pts


def sbox_ring():
    names = tuple(f"x{i}" for i in range(1, 9)) + tuple(f"y{i}" for i in range(1, 9))
    return Ring(names, FIELD_F2, True)


def sbox_system(dmax=2, table=None):
    """Boolean generators of the S-box graph ideal up to the degree bound."""
    ring = sbox_ring()
    polys = vanishing_ideal_degree_bounded(sbox_graph_points(table), dmax, ring=ring)
    return PolySystem(ring, polys)
