"""Deciding whether a tuple Z of indeterminates is separating.

Both checkers share one skeleton: delete every support term that no
z-indeterminate divides, verify the linear parts span a space of dimension
#Z, then repeatedly interreduce, harvest the working polynomials that have
collapsed to a bare z_i, assign those the current weight d, shrink Z, and
delete again.  The optimized variant additionally injects, each round, a
degree-capped slice of the span of indeterminate-by-row products; this lets
it succeed on ideals where no certificate exists in the plain K-span of the
generators.  Weights grow d -> delta*d + 1 (plain) and d -> 2*delta*d + 1
(optimized).

The product pool for the extension is rebuilt every round from the current
rows, with multipliers drawn from the fixed set Y = X minus the input Z.
Two policies control which rows feed the pool:

* DeletedProducts (default): products of the deleted working polynomials;
  the degree cap applies to the visible, Z-supported combinations.  This is
  the stronger checker.
* UndeletedProducts: products of the undeleted companion elements, capped
  by their full degree before deletion.  Weaker, but its trajectory matches
  the reference weight tuples and certificate polynomials frozen in the
  fixture corpus, so it is the policy the reproduction tests pin.

Both are sound: every injected row restricts a tracked element of the
ideal, which is also what makes companion tracking for the certificate
extractor exact.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations

from .poly import Polynomial, unit_term
from .reduce import (
    METHOD_ECHELON,
    METHOD_KERNEL,
    degree_capped_basis,
    linear_interreduce,
    rref_matrix,
)

MODE_PLAIN = "Plain"
MODE_OPTIMIZED = "Optimized"

EXT_DELETED = "DeletedProducts"
EXT_UNDELETED = "UndeletedProducts"
EXT_POLICIES = (EXT_DELETED, EXT_UNDELETED)


@dataclass
class CheckOutcome:
    """Result of a separating check.

    ``trace`` lists (indeterminate index, assigned weight, iteration)
    in assignment order; ``certified`` maps z index to its companion
    polynomial on tracked optimized runs.
    """

    ok: bool
    weights: tuple | None
    trace: tuple = ()
    mode: str = MODE_PLAIN
    reason: str = ""
    certified: dict | None = None

    def __bool__(self):
        return self.ok


def _validate_z(ring, z_indices):
    if ring.boolean:
        raise ValueError("checkers operate on plain rings; see bool_check_separating")
    z = tuple(int(k) for k in z_indices)
    for k in z:
        if not 0 <= k < ring.nvars:
            raise ValueError(f"Z index {k} out of range")
    if len(set(z)) != len(z):
        raise ValueError("repeated indeterminate in Z")
    return z


def _linear_span_dim(polys, z_indices, fld):
    rows = []
    for p in polys:
        lin = p.linear_part()
        if lin:
            row = [lin.coeffs.get(tuple(1 if i == k else 0 for i in range(p.ring.nvars)), 0)
                   for k in z_indices]
            rows.append(row)
    if not rows:
        return 0
    return len(rref_matrix(rows, fld).pivots)


def _success(weights, trace, mode, certified=None):
    return CheckOutcome(True, tuple(weights), tuple(trace), mode, certified=certified)


def _fail(reason, trace, mode):
    return CheckOutcome(False, None, tuple(trace), mode, reason)


def check_separating(system, z_indices):
    """Decide from the K-span of the generators whether Z is separating.

    Success is complete for span-certificates: it occurs exactly when the
    span of the generators contains a Z-separating tuple.  On Success, any
    term ordering compatible with the returned weights certifies Z.
    """
    ring = system.ring
    z = _validate_z(ring, z_indices)
    n = ring.nvars
    weights = [0] * n
    if not z:
        return _success(weights, (), MODE_PLAIN)
    delta = system.max_degree()
    working = [g.restrict_to_z_multiples(z) for g in system.gens]
    working = [g for g in working if g]
    dim = _linear_span_dim(working, z, ring.field)
    if dim < len(z):
        return _fail(f"linear parts span dimension {dim} < {len(z)}", (), MODE_PLAIN)
    d = 1
    iteration = 0
    trace = []
    remaining = list(z)
    while remaining:
        iteration += 1
        res = linear_interreduce(working, remaining)
        found = [i for i, (k, head) in enumerate(zip(remaining, res.heads))
                 if head == Polynomial.variable(ring, k)]
        if not found:
            return _fail(f"no working polynomial equals an indeterminate of Z "
                         f"(iteration {iteration})", trace, MODE_PLAIN)
        for i in sorted(found, key=lambda i: remaining[i]):
            weights[remaining[i]] = d
            trace.append((remaining[i], d, iteration))
        found_set = set(found)
        remaining = [k for i, k in enumerate(remaining) if i not in found_set]
        survivors = res.heads + res.tails
        working = [p.restrict_to_z_multiples(remaining) for p in survivors] if remaining else []
        working = [p for p in working if p]
        d = delta * d + 1
    return _success(weights, trace, MODE_PLAIN)


def check_separating_optimized(system, z_indices, method=METHOD_ECHELON, tracked=False,
                               extension=EXT_DELETED):
    """The extended checker: augments each round with degree-capped products.

    On Success a Z-separating tuple exists in the ideal (not necessarily in
    the span of the inputs).  With ``tracked`` the outcome carries, for each
    z_i, a companion polynomial of the ideal whose leading term is z_i under
    every ordering compatible with the weights.  ``extension`` selects the
    product policy described in the module docstring.
    """
    ring = system.ring
    z = _validate_z(ring, z_indices)
    if extension not in EXT_POLICIES:
        raise ValueError(f"unknown extension policy {extension!r}")
    n = ring.nvars
    weights = [0] * n
    if not z:
        return _success(weights, (), MODE_OPTIMIZED, certified={} if tracked else None)
    delta = system.max_degree()
    companioned = tracked or extension == EXT_UNDELETED
    working = []  # (deleted polynomial, companion ideal element)
    for g in system.gens:
        p = g.restrict_to_z_multiples(z)
        if p:
            working.append((p, g))
    dim = _linear_span_dim([p for p, _ in working], z, ring.field)
    if dim < len(z):
        return _fail(f"linear parts span dimension {dim} < {len(z)}", (), MODE_OPTIMIZED)
    multipliers = [unit_term(n, i) for i in range(n) if i not in set(z)]
    d = 1
    iteration = 0
    trace = []
    certified = {} if tracked else None
    remaining = list(z)
    while remaining:
        iteration += 1
        if extension == EXT_DELETED:
            prods = [w.term_mul_poly(t) for t in multipliers for w, _ in working]
            rows = degree_capped_basis(prods, delta, method, want_transform=tracked)
            if tracked:
                cprods = [comp.term_mul_poly(t) for t in multipliers for _, comp in working]
                ext = [(row.poly, _combine(ring, row.combo, cprods)) for row in rows]
            else:
                ext = [(row.poly, None) for row in rows]
        else:
            prods = [comp.term_mul_poly(t) for t in multipliers for _, comp in working]
            ext = []
            for row in degree_capped_basis(prods, delta, method):
                q = row.poly.restrict_to_z_multiples(remaining)
                if q:
                    ext.append((q, row.poly))
        batch = working + ext
        res = linear_interreduce([p for p, _ in batch], remaining,
                                 want_transform=companioned)
        outputs = res.heads + res.tails
        if companioned:
            companions = [_combine(ring, combo, [comp for _, comp in batch])
                          for combo in res.transform]
        else:
            companions = [None] * len(outputs)
        found = [i for i, (k, head) in enumerate(zip(remaining, res.heads))
                 if head == Polynomial.variable(ring, k)]
        if not found:
            return _fail(f"no working polynomial equals an indeterminate of Z "
                         f"(iteration {iteration})", trace, MODE_OPTIMIZED)
        for i in sorted(found, key=lambda i: remaining[i]):
            weights[remaining[i]] = d
            trace.append((remaining[i], d, iteration))
            if tracked:
                certified[remaining[i]] = companions[i]
        found_set = set(found)
        remaining = [k for i, k in enumerate(remaining) if i not in found_set]
        working = []
        if remaining:
            for p, comp in zip(outputs, companions):
                q = p.restrict_to_z_multiples(remaining)
                if q:
                    working.append((q, comp))
        d = 2 * delta * d + 1
    return _success(weights, trace, MODE_OPTIMIZED, certified=certified)


def _combine(ring, combo, pool):
    acc = Polynomial.zero(ring)
    for j, c in combo.items():
        acc = acc + pool[j].scalar_mul(c)
    return acc


# -- subset scanning -----------------------------------------------------------

_SCAN_STATE = {}


def _scan_init(system, check):
    _SCAN_STATE["system"] = system
    _SCAN_STATE["check"] = check


def _scan_eval(z):
    return _SCAN_STATE["check"](_SCAN_STATE["system"], z)


def scan_subsets(system, pool, max_size, check=None, jobs=1):
    """Run a checker over every nonempty subset of ``pool`` up to ``max_size``.

    Subsets are visited in (size, lexicographic) order of pool positions and
    the result order is deterministic regardless of ``jobs``.  ``check``
    defaults to the plain checker; pass a partial to select another.
    """
    if check is None:
        check = check_separating
    pool = list(pool)
    subsets = []
    for size in range(1, max_size + 1):
        subsets.extend(tuple(c) for c in combinations(pool, size))
    if jobs > 1 and len(subsets) > 1:
        with ProcessPoolExecutor(max_workers=jobs, initializer=_scan_init,
                                 initargs=(system, check)) as pool_exec:
            outcomes = list(pool_exec.map(_scan_eval, subsets, chunksize=8))
    else:
        outcomes = [check(system, zt) for zt in subsets]
    return list(zip(subsets, outcomes))
