"""Term orderings as key functions on exponent tuples.

Every ordering exposes ``key(t)`` returning a value whose natural comparison
realises the ordering: t1 > t2 in the ordering iff key(t1) > key(t2).  This
lets ``max(..., key=ord.key)`` pick leading terms and ``sorted`` arrange
supports without a comparator class.
"""

from __future__ import annotations

from .poly import QQ


class Lex:
    """Lexicographic: exponent tuples compare componentwise left to right."""

    def key(self, t):
        return t

    def __repr__(self):
        return "Lex()"

    def __eq__(self, other):
        return isinstance(other, Lex)


class DegRevLex:
    """Degree-reverse-lexicographic.

    Higher total degree wins; ties go to the term with the *smaller*
    exponent on the last indeterminate where they differ.
    """

    def key(self, t):
        return (sum(t), tuple(-e for e in reversed(t)))

    def __repr__(self):
        return "DegRevLex()"

    def __eq__(self, other):
        return isinstance(other, DegRevLex)


class WeightThenTiebreak:
    """Compare by a weight vector first, then by another ordering.

    With non-negative integer weights and a genuine term ordering as the
    tiebreak this is again a term ordering.
    """

    def __init__(self, weights, tiebreak):
        self.weights = tuple(int(w) for w in weights)
        self.tiebreak = tiebreak

    def key(self, t):
        w = sum(a * b for a, b in zip(self.weights, t))
        return (w, self.tiebreak.key(t))

    def __repr__(self):
        return f"WeightThenTiebreak({self.weights}, {self.tiebreak!r})"


class MatrixOrdering:
    """Ordering defined by a matrix of row vectors, compared top-down.

    Rows may be rational; terms compare by the tuple of row-by-exponent
    products.  The matrix must satisfy ``is_term_ordering_matrix`` to define
    a genuine term ordering.
    """

    def __init__(self, rows):
        self.rows = tuple(tuple(QQ(v) for v in row) for row in rows)
        if not self.rows:
            raise ValueError("empty ordering matrix")
        width = len(self.rows[0])
        if any(len(r) != width for r in self.rows):
            raise ValueError("ragged ordering matrix")

    def key(self, t):
        return tuple(sum(a * b for a, b in zip(row, t)) for row in self.rows)

    def __repr__(self):
        return f"MatrixOrdering({[list(map(str, r)) for r in self.rows]})"


def _rank(rows):
    """Rank of a rational matrix by fraction-free style elimination."""
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        pivot = None
        for i in range(rank, len(m)):
            if m[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pv = m[rank][col]
        for i in range(rank + 1, len(m)):
            if m[i][col]:
                factor = m[i][col] / pv
                for j in range(col, ncols):
                    m[i][j] -= factor * m[rank][j]
        rank += 1
    return rank


def is_term_ordering_matrix(rows):
    """Check that a matrix defines a term ordering.

    Two requirements: the rows span full column rank (so distinct terms get
    distinct keys) and in every column the first nonzero entry from the top
    is positive (so every indeterminate exceeds 1, hence the ordering is
    compatible with divisibility).
    """
    rows = [tuple(QQ(v) for v in row) for row in rows]
    if not rows:
        return False
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        return False
    for col in range(ncols):
        lead = next((row[col] for row in rows if row[col]), None)
        if lead is None or lead < 0:
            return False
    return _rank(rows) == ncols


def elimination_matrix(n, z_indices):
    """Matrix ordering rows that eliminate the indeterminates in Z.

    Z-indeterminates dominate: first one unit row per z (in Z order), then
    total degree on the rest, then reverse-lex tiebreaks on the rest.  Any
    term containing a z-indeterminate beats any term free of them.
    """
    zset = set(z_indices)
    rows = []
    for k in z_indices:
        rows.append([1 if i == k else 0 for i in range(n)])
    rest = [i for i in range(n) if i not in zset]
    rows.append([1 if i not in zset else 0 for i in range(n)])
    for k in reversed(rest[1:]):
        rows.append([-1 if i == k else 0 for i in range(n)])
    return rows


def compare_terms(ordering, t, u):
    """-1, 0 or 1 as t <, =, > u under the ordering."""
    kt, ku = ordering.key(t), ordering.key(u)
    return (kt > ku) - (kt < ku)


def sort_terms_desc(terms, ordering):
    return sorted(terms, key=ordering.key, reverse=True)


def leading_term(f, ordering):
    """(term, coeff) of the ordering-largest monomial of a nonzero f."""
    return f.max_term(ordering.key)
