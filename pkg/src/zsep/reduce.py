"""Exact linear algebra on scalars and on polynomial supports.

Three layers:

* dense reduced row echelon form and right-kernel bases for raw scalar
  matrices (Q uses exact rationals, F2 routes through the bit-packed
  kernels);
* a sparse echelon engine on polynomials, parameterized by a column key
  so callers choose how support terms map to columns;
* the two consumers: linear interreduction of polynomials whose support
  is confined to multiples of a tuple Z of indeterminates, and the
  degree-bounded extension basis built from indeterminate-by-generator
  products.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import gf2
from .orderings import DegRevLex
from .poly import FIELD_F2, FIELD_Q, Polynomial, QQ, term_degree, unit_term


@dataclass
class EchelonResult:
    """RREF without zero rows, the transform N with N*M = R, pivot columns."""

    rows: list
    transform: list
    pivots: list


def _dense_rref_q(rows):
    m = [[QQ(v) for v in row] for row in rows]
    n = len(m)
    ncols = len(m[0]) if m else 0
    aug = [[QQ(1) if i == j else QQ(0) for j in range(n)] for i in range(n)]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == n:
            break
        piv = next((i for i in range(r, n) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / m[r][c]
        if inv != 1:
            m[r] = [v * inv for v in m[r]]
            aug[r] = [v * inv for v in aug[r]]
        for i in range(n):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    return EchelonResult(m[:r], aug[:r], pivots)


def _dense_rref_f2(rows):
    supports = [[j for j, v in enumerate(row) if int(v) % 2] for row in rows]
    ncols = len(rows[0]) if rows else 0
    n = len(rows)
    M = gf2.pack_support(supports, ncols, aug_identity=True)
    pivots = list(gf2.rref(M, ncols))
    rank = len(pivots)
    out_rows = []
    out_tr = []
    for i in range(rank):
        cols = set(gf2.unpack_row(M[i], ncols))
        out_rows.append([1 if j in cols else 0 for j in range(ncols)])
        combo = set(gf2.unpack_row(M[i], n, word_offset=gf2.words_for(ncols)))
        out_tr.append([1 if j in combo else 0 for j in range(n)])
    return EchelonResult(out_rows, out_tr, pivots)


def rref_matrix(rows, field=FIELD_Q):
    """Canonical reduced row echelon form with transform tracking."""
    if field == FIELD_F2:
        return _dense_rref_f2(rows)
    return _dense_rref_q(rows)


def kernel_basis(rows, ncols, field=FIELD_Q):
    """Basis of the right kernel {v : A v = 0}; one vector per free column."""
    if not rows:
        if field == FIELD_F2:
            return [[1 if j == f else 0 for j in range(ncols)] for f in range(ncols)]
        return [[QQ(1) if j == f else QQ(0) for j in range(ncols)] for f in range(ncols)]
    res = rref_matrix(rows, field)
    pivot_set = set(res.pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        if field == FIELD_F2:
            v = [0] * ncols
            v[f] = 1
            for i, p in enumerate(res.pivots):
                v[p] = res.rows[i][f]
        else:
            v = [QQ(0)] * ncols
            v[f] = QQ(1)
            for i, p in enumerate(res.pivots):
                v[p] = -res.rows[i][f]
        basis.append(v)
    return basis


# -- sparse echelon form on polynomials --------------------------------------

@dataclass
class EchelonRow:
    poly: Polynomial
    lead: tuple
    combo: dict | None  # input index -> coefficient, when tracking is on


def _echelon_polys_f2(polys, keyfn, want_transform):
    ring = polys[0].ring
    terms = set()
    for p in polys:
        terms.update(p.support())
    order = sorted(terms, key=keyfn, reverse=True)
    col_of = {t: i for i, t in enumerate(order)}
    ncols = len(order)
    supp = [[col_of[t] for t in p.support()] for p in polys]
    M = gf2.pack_support(supp, ncols, aug_identity=want_transform)
    pivots = gf2.rref(M, ncols)
    rows = []
    for i in range(len(pivots)):
        cols = gf2.unpack_row(M[i], ncols)
        coeffs = {order[c]: 1 for c in cols}
        combo = None
        if want_transform:
            combo = {j: 1 for j in gf2.unpack_row(M[i], len(polys), word_offset=gf2.words_for(ncols))}
        rows.append(EchelonRow(Polynomial(ring, coeffs), order[int(pivots[i])], combo))
    return rows


def _echelon_polys_q(polys, keyfn, want_transform):
    ring = polys[0].ring
    pivot_rows = []  # (lead term, row dict, combo dict)
    by_lead = {}

    def reduce_against(work, combo):
        while work:
            lead = max(work, key=keyfn)
            hit = by_lead.get(lead)
            if hit is None:
                return lead
            factor = work[lead]
            prow, pcombo = pivot_rows[hit][1], pivot_rows[hit][2]
            for t, c in prow.items():
                acc = work.get(t, QQ(0)) - factor * c
                if acc:
                    work[t] = acc
                elif t in work:
                    del work[t]
            if want_transform:
                for j, c in pcombo.items():
                    acc = combo.get(j, QQ(0)) - factor * c
                    if acc:
                        combo[j] = acc
                    elif j in combo:
                        del combo[j]
        return None

    for idx, p in enumerate(polys):
        work = dict(p.coeffs)
        combo = {idx: QQ(1)} if want_transform else {}
        lead = reduce_against(work, combo)
        if lead is None:
            continue
        inv = 1 / work[lead]
        if inv != 1:
            work = {t: c * inv for t, c in work.items()}
            if want_transform:
                combo = {j: c * inv for j, c in combo.items()}
        by_lead[lead] = len(pivot_rows)
        pivot_rows.append((lead, work, combo))

    # back-substitution: clear every pivot term from the other rows,
    # rightmost pivot first so each row is final before it is reused
    pivot_rows.sort(key=lambda item: keyfn(item[0]), reverse=True)
    for i in range(len(pivot_rows) - 1, -1, -1):
        lead_i, row_i, combo_i = pivot_rows[i]
        for j in range(i):
            row_j = pivot_rows[j][1]
            factor = row_j.get(lead_i)
            if not factor:
                continue
            combo_j = pivot_rows[j][2]
            for t, c in row_i.items():
                acc = row_j.get(t, QQ(0)) - factor * c
                if acc:
                    row_j[t] = acc
                elif t in row_j:
                    del row_j[t]
            if want_transform:
                for k, c in combo_i.items():
                    acc = combo_j.get(k, QQ(0)) - factor * c
                    if acc:
                        combo_j[k] = acc
                    elif k in combo_j:
                        del combo_j[k]

    return [
        EchelonRow(Polynomial(ring, row), lead, combo if want_transform else None)
        for lead, row, combo in pivot_rows
    ]


def echelon_polys(polys, keyfn, want_transform=False):
    """Canonical echelon basis of the span of ``polys``.

    Columns are the union of supports ordered by ``keyfn`` descending; the
    result rows come back in pivot order (largest lead first) with monic
    leads and every pivot term cleared from the other rows.
    """
    polys = list(polys)
    if not any(polys):
        return []
    nonzero = [p for p in polys if p]
    index_of = [i for i, p in enumerate(polys) if p]
    field = nonzero[0].ring.field
    if field == FIELD_F2:
        rows = _echelon_polys_f2(nonzero, keyfn, want_transform)
    else:
        rows = _echelon_polys_q(nonzero, keyfn, want_transform)
    if want_transform:
        for row in rows:
            row.combo = {index_of[j]: c for j, c in row.combo.items()}
    return rows


# -- linear interreduction ----------------------------------------------------

@dataclass
class InterreductionResult:
    """Heads z_i - h_i aligned with Z, tails with distinct lex leads.

    ``transform`` holds one input-combination dict per output row, heads
    first then tails, matching the order of ``heads + tails``.
    """

    heads: list
    tails: list
    transform: list | None


class InterreductionHypothesisError(ValueError):
    """The inputs violate the interreduction hypotheses (caller bug)."""


def interreduction_key(nvars, z_indices):
    """Column key: z_1 > z_2 > ... > z_s > every other term, rest by lex."""
    s = len(z_indices)
    rank = {unit_term(nvars, k): s - j for j, k in enumerate(z_indices)}
    zero = 0

    def key(t):
        return (rank.get(t, zero), t)

    return key


def linear_interreduce(polys, z_indices, want_transform=False):
    """Interreduce the span of ``polys`` against the indeterminates Z.

    Requires every support term to be divisible by some z in Z and the
    linear parts to span a space of dimension #Z; both hold for the
    working sets the separating checkers produce.
    """
    polys = [p for p in polys if p]
    if not polys:
        raise InterreductionHypothesisError("no nonzero polynomials")
    ring = polys[0].ring
    zset = set(z_indices)
    for p in polys:
        for t in p.support():
            if not any(t[k] for k in zset):
                raise InterreductionHypothesisError(
                    f"support term {t} is not a multiple of any Z indeterminate"
                )
    keyfn = interreduction_key(ring.nvars, z_indices)
    rows = echelon_polys(polys, keyfn, want_transform)
    z_terms = [unit_term(ring.nvars, k) for k in z_indices]
    z_term_set = set(z_terms)
    heads = [row for row in rows if row.lead in z_term_set]
    tails = [row for row in rows if row.lead not in z_term_set]
    if len(heads) != len(z_indices):
        raise InterreductionHypothesisError(
            f"linear parts span dimension {len(heads)}, expected {len(z_indices)}"
        )
    # pivot order within the z block is exactly Z order already
    head_polys = [row.poly for row in heads]
    tail_polys = [row.poly for row in tails]
    transform = [row.combo for row in heads + tails] if want_transform else None
    return InterreductionResult(head_polys, tail_polys, transform)


# -- degree-bounded extension --------------------------------------------------

METHOD_KERNEL = "KernelOfHighTerms"
METHOD_ECHELON = "EchelonScan"


def indeterminate_products(gens, z_indices):
    """The products x_i * g_j for x_i outside Z, duplicates pruned."""
    ring = gens[0].ring
    zset = set(z_indices)
    seen = set()
    out = []
    for i in range(ring.nvars):
        if i in zset:
            continue
        t = unit_term(ring.nvars, i)
        for g in gens:
            p = g.term_mul_poly(t)
            if p and p not in seen:
                seen.add(p)
                out.append(p)
    return out


def degree_capped_basis(products, delta, method=METHOD_ECHELON, want_transform=False):
    """Canonical basis of span(products) intersected with P_<=delta.

    Both methods return the same canonical rows: the intersection is
    recovered either by scanning a degree-compatible echelon form or by
    killing the degree > delta coefficients through a kernel computation
    followed by one more echelonization.  With ``want_transform`` each row
    carries the combination of ``products`` that produced it.
    """
    products = list(products)
    if not any(products):
        return []
    ring = next(p for p in products if p).ring
    tau = DegRevLex()
    if method == METHOD_ECHELON:
        rows = echelon_polys(products, tau.key, want_transform)
        return [row for row in rows if row.poly.degree() <= delta]
    if method != METHOD_KERNEL:
        raise ValueError(f"unknown extension method {method!r}")
    high_terms = sorted(
        {t for p in products if p for t in p.support() if term_degree(t) > delta},
        reverse=True,
    )
    if not high_terms:
        raw = products
        raw_combos = [{j: _one(ring)} for j in range(len(products))]
    else:
        if ring.field == FIELD_F2:
            A = [[p.coeffs.get(t, 0) if p else 0 for p in products] for t in high_terms]
        else:
            A = [[p.coeffs.get(t, QQ(0)) if p else QQ(0) for p in products] for t in high_terms]
        vecs = kernel_basis(A, len(products), ring.field)
        raw = []
        raw_combos = []
        for v in vecs:
            acc = Polynomial.zero(ring)
            combo = {}
            for j, c in enumerate(v):
                if c and products[j]:
                    acc = acc + products[j].scalar_mul(c)
                    combo[j] = c
            raw.append(acc)
            raw_combos.append(combo)
    rows = echelon_polys(raw, tau.key, want_transform)
    if want_transform:
        two = ring.field == FIELD_F2
        for row in rows:
            composed = {}
            for r, c in row.combo.items():
                for j, c2 in raw_combos[r].items():
                    acc = composed.get(j, 0) + c * c2
                    if two:
                        acc %= 2
                    if acc:
                        composed[j] = acc
                    elif j in composed:
                        del composed[j]
            row.combo = composed
    return rows


def _one(ring):
    return 1 if ring.field == FIELD_F2 else QQ(1)


def degree_bounded_extension(gens, z_indices, delta, method=METHOD_ECHELON):
    """Canonical basis of span{x_i g_j : x_i outside Z} intersected with P_<=delta."""
    gens = [g for g in gens if g]
    if not gens:
        return []
    products = indeterminate_products(gens, z_indices)
    if not products:
        return []
    return [row.poly for row in degree_capped_basis(products, delta, method)]
