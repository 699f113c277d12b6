"""From a successful check to actual polynomials, and on to elimination.

A successful check yields weights W positive exactly on Z.  Any term
ordering compatible with the W-grading then certifies Z: the certificate
tuple (f_1,...,f_s) has LT(f_i) = z_i.  The plain path reads the f_i off a
reduced echelon form of the generators themselves; the optimized path
replays the checker while tracking companion ideal elements.  A separating
tuple is made coherent by substituting the z_j away from the tails in
ascending ordering position, after which every z_i can be eliminated from
the ideal by plain substitution.
"""

from __future__ import annotations

from dataclasses import dataclass

from .orderings import MatrixOrdering, WeightThenTiebreak
from .poly import Polynomial, PolySystem, Ring, unit_term
from .reduce import METHOD_ECHELON, echelon_polys
from .sepcheck import EXT_DELETED, check_separating_optimized


class NoRowWithLeadingTerm(ValueError):
    """The echelon form has no row led by the requested indeterminate."""

    def __init__(self, name):
        super().__init__(f"no row with leading term {name}")
        self.name = name


class OptimizedCheckFailed(ValueError):
    """The underlying optimized check returned Fail."""


@dataclass
class SeparatingTuple:
    """Pairs (z index, f_i) with LT(f_i) = z_i under ``ordering``."""

    entries: list
    ordering: object
    weights: tuple | None = None

    def z_indices(self):
        return tuple(k for k, _ in self.entries)

    def polys(self):
        return [f for _, f in self.entries]

    def max_degree(self):
        return max(f.degree() for _, f in self.entries)


@dataclass
class CoherentTuple:
    """Pairs (z index, z_i - h_i) with every h_i free of Z indeterminates."""

    entries: list

    def z_indices(self):
        return tuple(k for k, _ in self.entries)

    def polys(self):
        return [f for _, f in self.entries]

    def max_degree(self):
        return max(f.degree() for _, f in self.entries)

    def tails(self):
        """The h_i, i.e. z_i minus the stored polynomial."""
        out = []
        for k, f in self.entries:
            z = Polynomial.variable(f.ring, k)
            out.append(z - f)
        return out


def compatible_ordering(weights, z_indices):
    """A term ordering compatible with the grading by ``weights``.

    Weight first; ties broken by total degree on the indeterminates outside
    Z, then by preferring smaller-index indeterminates (unit rows in
    descending index order, negated).  Valid whenever the weights are
    positive exactly on Z, which the checkers guarantee.
    """
    n = len(weights)
    zset = set(z_indices)
    rows = [[1 if i not in zset else 0 for i in range(n)]]
    for k in range(n - 1, -1, -1):
        rows.append([-1 if i == k else 0 for i in range(n)])
    return WeightThenTiebreak(weights, MatrixOrdering(rows))


def find_separating_tuple(system, z_indices, ordering):
    """Extract f_i with LT(f_i) = z_i from the span of the generators.

    Reduces the generators to echelon form over their support sorted
    descending by the ordering and picks the rows led by each z_i.  Raises
    NoRowWithLeadingTerm when the ordering is not a certificate for Z.
    """
    ring = system.ring
    rows = echelon_polys(system.gens, ordering.key)
    by_lead = {row.lead: row.poly for row in rows}
    entries = []
    for k in z_indices:
        t = unit_term(ring.nvars, k)
        f = by_lead.get(t)
        if f is None:
            raise NoRowWithLeadingTerm(ring.names[k])
        entries.append((k, f))
    return SeparatingTuple(entries, ordering)


def find_separating_tuple_tracked(system, z_indices, method=METHOD_ECHELON,
                                  extension=EXT_DELETED):
    """Certificate tuple for the optimized check, via companion tracking.

    Runs the optimized checker while mirroring every linear operation on
    undeleted ideal elements; when z_i receives its weight, the companion
    of the row that collapsed to z_i is recorded as f_i.  ``extension``
    selects the product policy of the underlying checker.
    """
    outcome = check_separating_optimized(system, z_indices, method=method,
                                         tracked=True, extension=extension)
    if not outcome:
        raise OptimizedCheckFailed(outcome.reason)
    ordering = compatible_ordering(outcome.weights, z_indices)
    entries = [(k, outcome.certified[k]) for k in z_indices]
    return SeparatingTuple(entries, ordering, weights=outcome.weights)


def coherent_tuple(sep):
    """Rewrite a separating tuple so no tail mentions any z_j.

    Processes the z_i in ascending ordering position; each tail can only
    involve strictly smaller z_j, which have already been rewritten, so one
    substitution pass per entry suffices.
    """
    if not sep.entries:
        return CoherentTuple([])
    ring = sep.entries[0][1].ring
    key = sep.ordering.key
    ordered = sorted(sep.entries, key=lambda kv: key(unit_term(ring.nvars, kv[0])))
    zset = {k for k, _ in sep.entries}
    done = []  # (z index, Z-free tail h)
    for k, f in ordered:
        tail = Polynomial.variable(ring, k) - f
        for j, h in done:
            if any(t[j] for t in tail.support()):
                tail = tail.substitute(j, h)
        residual = {i for t in tail.support() for i in zset if t[i]}
        if residual:
            names = ", ".join(ring.names[i] for i in sorted(residual))
            raise ValueError(f"tail of {ring.names[k]} still involves {names}; "
                             "input tuple was not separating for this ordering")
        done.append((k, tail))
    entries = [(k, Polynomial.variable(ring, k) - h) for k, h in done]
    return CoherentTuple(entries)


@dataclass
class EliminationResult:
    """Generators of the eliminated ideal, presented in the smaller ring.

    ``var_map[new_index] = old_index`` records where each surviving
    indeterminate came from.
    """

    system: PolySystem
    var_map: tuple
    z_indices: tuple


def eliminate(system, coh):
    """Substitute z_i -> h_i in every generator and drop the Z variables.

    The resulting polynomials generate the intersection of the ideal with
    the subring in the remaining indeterminates.
    """
    ring = system.ring
    zset = {k for k, _ in coh.entries}
    tails = {k: Polynomial.variable(ring, k) - f for k, f in coh.entries}
    reduced = []
    for g in system.gens:
        for k, h in tails.items():
            if any(t[k] for t in g.support()):
                g = g.substitute(k, h)
        reduced.append(g)
    keep = tuple(i for i in range(ring.nvars) if i not in zset)
    small = Ring(tuple(ring.names[i] for i in keep), ring.field, ring.boolean)
    out = []
    for g in reduced:
        coeffs = {}
        for t, c in g.coeffs.items():
            if any(t[k] for k in zset):
                raise ValueError("substitution left a Z indeterminate behind; "
                                 "coherent tuple does not cover the system")
            coeffs[tuple(t[i] for i in keep)] = c
        out.append(Polynomial(small, coeffs))
    return EliminationResult(PolySystem(small, out), keep, tuple(sorted(zset)))


def substitute_with_multiplier(p, k, value):
    """Substitute x_k -> value and report the exact multiplier.

    Returns (result, q) with result = p - q * (x_k - value), an identity
    that certifies the substitution only moved p by a multiple of
    x_k - value.
    """
    ring = p.ring
    xk = Polynomial.variable(ring, k)
    q = Polynomial.zero(ring)
    powers = {0: Polynomial.constant(ring, 1)}

    def vpow(e):
        if e not in powers:
            powers[e] = vpow(e - 1) * value
        return powers[e]

    for t, c in p.coeffs.items():
        e = t[k]
        if e == 0:
            continue
        rest = tuple(0 if i == k else a for i, a in enumerate(t))
        # x^e - v^e = (x - v) * sum x^i v^(e-1-i)
        geom = Polynomial.zero(ring)
        for i in range(e):
            geom = geom + (xk ** i) * vpow(e - 1 - i)
        q = q + geom.term_mul_poly(rest, c)
    result = p.substitute(k, value)
    return result, q
