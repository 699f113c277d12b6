"""Small Buchberger engine used as ground truth in the test suite.

Naive and deliberately simple: normal pair selection, product-criterion
pruning, division-based normal forms, reduced monic output.  Hard resource
guards raise OracleOverload so callers can skip instead of hanging.
Boolean-mode systems automatically pull in the field ideal and are computed
on their canonical representatives in the plain F2 ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .orderings import MatrixOrdering, leading_term
from .poly import (
    FIELD_F2,
    Polynomial,
    PolySystem,
    QQ,
    term_degree,
    term_div,
    term_divides,
    term_lcm,
    term_mul,
    unit_term,
)


class OracleOverload(RuntimeError):
    """The instance exceeded the configured pair or degree budget."""


def division_remainder(f, divisors, ordering):
    """Multivariate division remainder of f against an ordered divisor list.

    Scans the work polynomial top-down; each leading term is cancelled by
    the first divisor whose leading term divides it, or moved to the
    remainder.  No remainder term is divisible by any divisor leading term.
    """
    if not f:
        return f
    ring = f.ring
    key = ordering.key
    lts = [leading_term(g, ordering) for g in divisors]
    work = dict(f.coeffs)
    remainder = {}
    while work:
        t = max(work, key=key)
        c = work[t]
        hit = None
        for g, (lt, lc) in zip(divisors, lts):
            if term_divides(lt, t):
                hit = (g, lt, lc)
                break
        if hit is None:
            remainder[t] = c
            del work[t]
            continue
        g, lt, lc = hit
        cof = term_div(t, lt)
        factor = 1 if ring.field == FIELD_F2 else c / lc
        # cancel t by subtracting factor * cof * g; the t slot vanishes exactly
        for u, v in g.coeffs.items():
            w = term_mul(u, cof)
            if ring.field == FIELD_F2:
                acc = (work.get(w, 0) + v) % 2
            else:
                acc = work.get(w, QQ(0)) - factor * v
            if acc:
                work[w] = acc
            elif w in work:
                del work[w]
    return Polynomial(ring, remainder)


@dataclass
class GroebnerBasis:
    """Reduced monic basis; polynomials live in the plain ring."""

    polys: list
    ordering: object

    def __iter__(self):
        return iter(self.polys)


def _monic(f, ordering):
    if f.ring.field == FIELD_F2:
        return f
    _, lc = leading_term(f, ordering)
    return f.scalar_mul(1 / lc)


def _s_poly(f, g, ordering):
    (lt_f, lc_f) = leading_term(f, ordering)
    (lt_g, lc_g) = leading_term(g, ordering)
    lcm = term_lcm(lt_f, lt_g)
    a = f.term_mul_poly(term_div(lcm, lt_f), 1)
    b = g.term_mul_poly(term_div(lcm, lt_g), 1)
    if f.ring.field == FIELD_F2:
        return a + b
    return a.scalar_mul(1 / lc_f) - b.scalar_mul(1 / lc_g)


def field_ideal_gens(ring):
    """x_k^2 - x_k for every indeterminate, in a plain F2 ring."""
    out = []
    for k in range(ring.nvars):
        t = unit_term(ring.nvars, k)
        out.append(Polynomial.from_terms(ring, [(term_mul(t, t), 1), (t, -1)]))
    return out


def _lift_boolean(system):
    plain = system.ring.plain()
    gens = [Polynomial(plain, dict(g.coeffs)) for g in system.gens]
    gens.extend(field_ideal_gens(plain))
    return PolySystem(plain, gens)


def buchberger(system, ordering, max_pairs=5000, max_degree=60):
    """Reduced Groebner basis of the system's ideal under the ordering."""
    if system.ring.boolean:
        system = _lift_boolean(system)
    basis = [_monic(g, ordering) for g in system.gens if g]
    if not basis:
        return GroebnerBasis([], ordering)
    pairs = {(i, j) for i, j in combinations(range(len(basis)), 2)}
    processed = 0
    while pairs:
        (i, j) = min(
            pairs,
            key=lambda ij: (
                term_degree(term_lcm(leading_term(basis[ij[0]], ordering)[0],
                                     leading_term(basis[ij[1]], ordering)[0])),
                ij,
            ),
        )
        pairs.discard((i, j))
        processed += 1
        if processed > max_pairs:
            raise OracleOverload(f"pair budget {max_pairs} exhausted")
        lt_i = leading_term(basis[i], ordering)[0]
        lt_j = leading_term(basis[j], ordering)[0]
        if term_lcm(lt_i, lt_j) == term_mul(lt_i, lt_j):
            continue  # coprime leading terms reduce to zero
        s = _s_poly(basis[i], basis[j], ordering)
        r = division_remainder(s, basis, ordering)
        if not r:
            continue
        if r.degree() > max_degree:
            raise OracleOverload(f"degree budget {max_degree} exceeded")
        r = _monic(r, ordering)
        k = len(basis)
        basis.append(r)
        pairs.update((i2, k) for i2 in range(k))
    return GroebnerBasis(_reduce_basis(basis, ordering), ordering)


def _reduce_basis(basis, ordering):
    # minimalize: drop elements whose leading term another element's divides
    lts = [leading_term(g, ordering)[0] for g in basis]
    keep = []
    for i, g in enumerate(basis):
        lt = lts[i]
        redundant = any(
            j != i and term_divides(lts[j], lt) and (lts[j] != lt or j < i)
            for j in range(len(basis))
        )
        if not redundant:
            keep.append(g)
    # tail-reduce each survivor against the others
    reduced = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1 :]
        r = division_remainder(g, others, ordering) if others else g
        if r:
            reduced.append(_monic(r, ordering))
    reduced.sort(key=lambda g: ordering.key(leading_term(g, ordering)[0]), reverse=True)
    return reduced


def normal_form(f, gb):
    """Division remainder of f against the basis; zero iff f is in the ideal."""
    if f.ring.boolean:
        f = Polynomial(f.ring.plain(), dict(f.coeffs))
    if not gb.polys:
        return f
    return division_remainder(f, gb.polys, gb.ordering)


def elimination_ordering(n, z_indices):
    """Block ordering: lex on the Z block above DegRevLex on the rest."""
    zset = set(z_indices)
    rows = [[1 if i == k else 0 for i in range(n)] for k in z_indices]
    rest = [i for i in range(n) if i not in zset]
    rows.append([1 if i in rest else 0 for i in range(n)])
    for k in reversed(rest[1:]):
        rows.append([-1 if i == k else 0 for i in range(n)])
    return MatrixOrdering(rows)


def oracle_is_separating(system, z_indices, max_pairs=5000, max_degree=60):
    """Ground truth: does the ideal admit a Z-separating tuple?

    Equivalent to every z_i lying in the leading term ideal of a Groebner
    basis under an elimination ordering for Z, i.e. some basis leading term
    divides z_i (degree-one terms admit only 1 and themselves as divisors,
    so this collapses to an equality test unless the ideal is the unit
    ideal).  Boolean systems are decided in their representative ring
    together with the field ideal.
    """
    ring = system.ring
    n = ring.nvars
    tau = elimination_ordering(n, z_indices)
    gb = buchberger(system, tau, max_pairs=max_pairs, max_degree=max_degree)
    lts = {leading_term(g, tau)[0] for g in gb.polys}
    return all(any(term_divides(lt, unit_term(n, k)) for lt in lts)
               for k in z_indices)
