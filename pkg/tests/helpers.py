"""Shared test utilities: parsing shims, random generators, span oracles.

The oracles here are deliberately independent of the library's algorithms:
span membership is decided by echelonization plus lead-reduction, and the
existence of a strict weight vector by exact Fourier-Motzkin elimination,
so they can certify the production code paths without sharing them.
"""

import random
from itertools import product

from zsep.poly import (
    FIELD_F2,
    FIELD_Q,
    QQ,
    Polynomial,
    PolySystem,
    make_ring,
    unit_term,
)
from zsep.reduce import echelon_polys, kernel_basis, rref_matrix
from zsep.sysfile import parse_system


def lex_key(t):
    return t


def parse_poly(ring, text):
    """Parse one polynomial expression through the system-file grammar."""
    header = f"field {ring.field} boolean" if ring.boolean else f"field {ring.field}"
    header += "\nvars " + " ".join(ring.names) + "\npoly "
    system = parse_system(header + text + "\n")
    return system.gens[0] if system.gens else Polynomial.zero(ring)


# -- span membership ------------------------------------------------------------

def reduce_against(f, rows, keyfn):
    """Lead-reduce f against echelon rows; the residual is 0 iff f is in the span."""
    by_lead = {row.lead: row.poly for row in rows}
    while f:
        t, c = f.max_term(keyfn)
        g = by_lead.get(t)
        if g is None:
            return f
        f = f - g.scalar_mul(c)
    return f


def in_span(f, polys, keyfn=lex_key):
    polys = [p for p in polys if p]
    if not polys:
        return f.is_zero()
    return reduce_against(f, echelon_polys(polys, keyfn), keyfn).is_zero()


def spans_equal(polys_a, polys_b, keyfn=lex_key):
    """Mutual containment of two spans, each side reduced against the other."""
    rows_a = echelon_polys([p for p in polys_a if p], keyfn)
    rows_b = echelon_polys([p for p in polys_b if p], keyfn)
    return (
        all(reduce_against(row.poly, rows_b, keyfn).is_zero() for row in rows_a)
        and all(reduce_against(row.poly, rows_a, keyfn).is_zero() for row in rows_b)
    )


# -- random generators ----------------------------------------------------------

def rand_scalar(rng, field):
    if field == FIELD_F2:
        return 1
    return QQ(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 1, 2, 3]))


def rand_term(rng, n, max_deg=3):
    t = [0] * n
    for _ in range(rng.randint(0, max_deg)):
        t[rng.randrange(n)] += 1
    return tuple(t)


def rand_poly(rng, ring, max_terms=4, max_deg=3):
    items = [
        (rand_term(rng, ring.nvars, max_deg), rand_scalar(rng, ring.field))
        for _ in range(rng.randint(1, max_terms))
    ]
    return Polynomial.from_terms(ring, items)


def rand_zdiv_term(rng, n, z, min_deg=2, max_deg=4):
    """A term of degree in [min_deg, max_deg] divisible by some z-indeterminate."""
    t = [0] * n
    t[rng.choice(z)] += 1
    for _ in range(rng.randint(min_deg - 1, max_deg - 1)):
        t[rng.randrange(n)] += 1
    return tuple(t)


def interreduction_instance(rng, field):
    """Random (polys, z) satisfying the linear-interreduction hypotheses.

    The first #z polynomials carry an invertible linear-part matrix over the
    z-indeterminates plus z-divisible tails of degree >= 2; any extra rows
    have no linear part at all.
    """
    n = rng.randint(3, 8)
    s = rng.randint(1, min(3, n))
    z = sorted(rng.sample(range(n), s))
    ring = make_ring(n, field)
    while True:
        lin = [
            [rand_scalar(rng, field) if rng.random() < 0.7 else 0 for _ in range(s)]
            for _ in range(s)
        ]
        if len(rref_matrix(lin, field).pivots) == s:
            break
    polys = []
    for i in range(s):
        items = [(unit_term(n, z[j]), lin[i][j]) for j in range(s) if lin[i][j]]
        for _ in range(rng.randint(0, 3)):
            items.append((rand_zdiv_term(rng, n, z), rand_scalar(rng, field)))
        polys.append(Polynomial.from_terms(ring, items))
    for _ in range(rng.randint(0, 2)):
        items = [
            (rand_zdiv_term(rng, n, z), rand_scalar(rng, field))
            for _ in range(rng.randint(1, 3))
        ]
        p = Polynomial.from_terms(ring, items)
        if p:
            polys.append(p)
    return polys, z


def zero_linear_combos(rng, polys, z, count=3):
    """Random span elements with zero linear part, via the linear-part kernel."""
    ring = polys[0].ring
    field = ring.field
    lincols = [
        [p.linear_part().coeffs.get(unit_term(ring.nvars, k), 0) for p in polys]
        for k in z
    ]
    kernel = kernel_basis(lincols, len(polys), field)
    out = []
    for _ in range(count):
        combo = [0] * len(polys)
        for v in kernel:
            c = rand_scalar(rng, field) if rng.random() < 0.6 else 0
            if not c:
                continue
            for j, vj in enumerate(v):
                combo[j] += c * vj
        acc = Polynomial.zero(ring)
        for j, c in enumerate(combo):
            if c:
                acc = acc + polys[j].scalar_mul(c)
        out.append(acc)
    return out


def rand_checkable_system(rng, field):
    """Random (system, z) biased so plain checks succeed reasonably often."""
    n = rng.randint(2, 6)
    s = rng.randint(1, min(3, n))
    z = sorted(rng.sample(range(n), s))
    ring = make_ring(n, field)
    gens = []
    for j in range(rng.randint(s, 4)):
        if j < s and rng.random() < 0.7:
            items = [(unit_term(n, z[j]), 1)]
            for _ in range(rng.randint(0, 2)):
                items.append((rand_zdiv_term(rng, n, z, min_deg=2, max_deg=3),
                              rand_scalar(rng, field)))
            p = Polynomial.from_terms(ring, items)
        else:
            p = rand_poly(rng, ring)
        if p:
            gens.append(p)
    if not gens:
        gens.append(Polynomial.variable(ring, z[0]))
    return PolySystem(ring, gens), z


def rand_f2_system(rng):
    """Small random F2 system for the completeness comparison (n <= 6, r <= 4)."""
    n = rng.randint(2, 6)
    s = rng.randint(1, min(3, n))
    z = sorted(rng.sample(range(n), s))
    ring = make_ring(n, FIELD_F2)
    gens = []
    for j in range(rng.randint(1, 4)):
        if rng.random() < 0.5:
            items = [(unit_term(n, rng.choice(z)), 1)]
            for _ in range(rng.randint(0, 2)):
                items.append((rand_term(rng, n, 3), 1))
            p = Polynomial.from_terms(ring, items)
        else:
            p = rand_poly(rng, ring, max_terms=3, max_deg=3)
        if p:
            gens.append(p)
    if not gens:
        gens.append(Polynomial.variable(ring, z[0]))
    return PolySystem(ring, gens), z


# -- strict weight vectors and the span separating oracle -------------------------

def strict_weights_exist(rows, n):
    """Is there w >= 0 with a . w > 0 for every row a?  Exact Fourier-Motzkin.

    The system is homogeneous, so it is feasible iff elimination never
    produces the contradictory constraint 0 > 0.
    """
    system = {}

    def add(row, strict):
        system[row] = system.get(row, False) or strict

    for a in rows:
        add(tuple(QQ(v) for v in a), True)
    for k in range(n):
        add(tuple(QQ(1 if i == k else 0) for i in range(n)), False)
    for k in range(n):
        pos = [(a, s) for a, s in system.items() if a[k] > 0]
        neg = [(a, s) for a, s in system.items() if a[k] < 0]
        keep = [(a, s) for a, s in system.items() if not a[k]]
        system = {}
        for a, s in keep:
            add(a, s)
        for ap, sp in pos:
            for an, sn in neg:
                row = tuple(x / ap[k] - y / an[k] for x, y in zip(ap, an))
                add(row, sp or sn)
        for a, s in system.items():
            if s and not any(a):
                return False
    return not any(s for a, s in system.items() if not any(a))


def span_separating_oracle(system, z):
    """Brute force: does the F2-span of the generators hold a Z-separating tuple?

    Enumerates all 2^r span elements, keeps for each z_k the elements whose
    support contains z_k and no other term divisible by it, then searches the
    candidate assignments for one admitting a common strict weight vector.
    """
    ring = system.ring
    n = ring.nvars
    gens = [g for g in system.gens if g]
    span = []
    seen = set()
    for mask in range(1, 1 << len(gens)):
        acc = Polynomial.zero(ring)
        for j in range(len(gens)):
            if mask >> j & 1:
                acc = acc + gens[j]
        if acc and acc not in seen:
            seen.add(acc)
            span.append(acc)
    candidates = []
    for k in z:
        zt = unit_term(n, k)
        ok = [
            f
            for f in span
            if zt in f.coeffs and not any(t != zt and t[k] for t in f.support())
        ]
        if not ok:
            return False
        candidates.append((k, ok))
    for choice in product(*[ok for _, ok in candidates]):
        rows = []
        for (k, _), f in zip(candidates, choice):
            zt = unit_term(n, k)
            rows.extend(
                [zt[i] - t[i] for i in range(n)] for t in f.support() if t != zt
            )
        if strict_weights_exist(rows, n):
            return True
    return False


def all_f2_points(n):
    return list(product((0, 1), repeat=n))


def common_zeros(system, points=None):
    if points is None:
        points = all_f2_points(system.ring.nvars)
    return [p for p in points if all(g.evaluate_f2(p) == 0 for g in system.gens)]
