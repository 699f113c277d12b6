"""Sparse multivariate polynomials over Q and F2.

Polynomials are stored as dicts mapping exponent tuples to nonzero
coefficients.  Over Q the coefficients are exact rationals (gmpy2.mpq when
available, fractions.Fraction otherwise); over F2 every stored coefficient
is the integer 1.  Terms print and iterate in lex-descending order, which
keeps all textual output deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover - gmpy2 is a normal install, this is a safety net
    from fractions import Fraction as QQ

FIELD_Q = "Q"
FIELD_F2 = "F2"


@dataclass(frozen=True)
class Ring:
    """A polynomial ring K[x1..xn] with K = Q or F2.

    ``boolean`` marks the quotient by the field ideal <x_k^2 - x_k>; its
    elements are kept as canonical square-free representatives.
    """

    names: tuple
    field: str = FIELD_Q
    boolean: bool = False

    def __post_init__(self):
        if len(self.names) == 0:
            raise ValueError("ring needs at least one indeterminate")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate indeterminate names")
        if self.field not in (FIELD_Q, FIELD_F2):
            raise ValueError(f"unknown field {self.field!r}")
        if self.boolean and self.field != FIELD_F2:
            raise ValueError("boolean mode requires field F2")

    @property
    def nvars(self):
        return len(self.names)

    def var_index(self, name):
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown indeterminate {name!r}") from None

    def zero_term(self):
        return (0,) * len(self.names)

    def plain(self):
        """The same ring without the boolean quotient (for representatives)."""
        if not self.boolean:
            return self
        return Ring(self.names, self.field, False)


def make_ring(n, field=FIELD_Q, boolean=False, prefix="x"):
    """Ring with default names prefix1..prefixn."""
    return Ring(tuple(f"{prefix}{i + 1}" for i in range(n)), field, boolean)


# -- term helpers -----------------------------------------------------------
# a term is a tuple of non-negative exponents, one entry per indeterminate

def term_degree(t):
    return sum(t)


def term_mul(t, u):
    return tuple(a + b for a, b in zip(t, u))


def term_divides(t, u):
    """True when t divides u."""
    return all(a <= b for a, b in zip(t, u))


def term_div(t, u):
    """t / u, assuming u divides t."""
    return tuple(a - b for a, b in zip(t, u))


def term_lcm(t, u):
    return tuple(max(a, b) for a, b in zip(t, u))


def term_squarefree(t):
    return tuple(1 if a else 0 for a in t)


def unit_term(n, k):
    """The term of the single indeterminate with index k."""
    return tuple(1 if i == k else 0 for i in range(n))


class Polynomial:
    """Immutable-by-convention sparse polynomial."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self.coeffs = coeffs

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, ring):
        return cls(ring, {})

    @classmethod
    def from_terms(cls, ring, items):
        """Build from (term, coeff) pairs, merging and dropping zeros."""
        coeffs = {}
        for t, c in items:
            acc = coeffs.get(t, 0) + c
            if ring.field == FIELD_F2:
                acc %= 2
            if acc:
                coeffs[t] = acc if ring.field == FIELD_F2 else QQ(acc)
            elif t in coeffs:
                del coeffs[t]
        if ring.boolean:
            merged = {}
            for t, c in coeffs.items():
                sq = term_squarefree(t)
                merged[sq] = (merged.get(sq, 0) + c) % 2
            coeffs = {t: c for t, c in merged.items() if c}
        return cls(ring, coeffs)

    @classmethod
    def constant(cls, ring, c):
        return cls.from_terms(ring, [(ring.zero_term(), c)])

    @classmethod
    def variable(cls, ring, k):
        return cls.from_terms(ring, [(unit_term(ring.nvars, k), 1)])

    # -- basic queries -------------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def support(self):
        return self.coeffs.keys()

    def sorted_terms(self):
        """(term, coeff) pairs, lex-descending."""
        return [(t, self.coeffs[t]) for t in sorted(self.coeffs, reverse=True)]

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.coeffs:
            return -1
        return max(term_degree(t) for t in self.coeffs)

    def constant_coeff(self):
        return self.coeffs.get(self.ring.zero_term(), 0)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring, frozenset(self.coeffs.items())))

    # -- arithmetic ----------------------------------------------------------

    def _wrap(self, coeffs):
        return Polynomial(self.ring, coeffs)

    def __add__(self, other):
        self._check_ring(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        if self.ring.field == FIELD_F2:
            for t in b:
                if t in out:
                    del out[t]
                else:
                    out[t] = 1
        else:
            for t, c in b.items():
                acc = out.get(t, 0) + c
                if acc:
                    out[t] = acc
                elif t in out:
                    del out[t]
        return self._wrap(out)

    def __neg__(self):
        if self.ring.field == FIELD_F2:
            return self
        return self._wrap({t: -c for t, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scalar_mul(self, c):
        if self.ring.field == FIELD_F2:
            c = int(c) % 2
            return self if c else Polynomial.zero(self.ring)
        c = QQ(c)
        if not c:
            return Polynomial.zero(self.ring)
        if c == 1:
            return self
        return self._wrap({t: c * v for t, v in self.coeffs.items()})

    def term_mul_poly(self, t, c=1):
        """Multiply by the single term c*t."""
        if self.ring.field == FIELD_F2:
            if int(c) % 2 == 0:
                return Polynomial.zero(self.ring)
            out = {}
            for u in self.coeffs:
                out[term_mul(u, t)] = 1
            p = self._wrap(out)
        else:
            c = QQ(c)
            if not c:
                return Polynomial.zero(self.ring)
            p = self._wrap({term_mul(u, t): c * v for u, v in self.coeffs.items()})
        if self.ring.boolean:
            return Polynomial.from_terms(self.ring, p.coeffs.items())
        return p

    def __mul__(self, other):
        self._check_ring(other)
        out = {}
        f2 = self.ring.field == FIELD_F2
        small, big = (self, other) if len(self) <= len(other) else (other, self)
        for t, c in small.coeffs.items():
            for u, v in big.coeffs.items():
                w = term_mul(t, u)
                acc = out.get(w, 0) + c * v
                if f2:
                    acc %= 2
                if acc:
                    out[w] = acc
                elif w in out:
                    del out[w]
        if self.ring.boolean:
            return Polynomial.from_terms(self.ring, out.items())
        return self._wrap(out)

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative exponent")
        result = Polynomial.constant(self.ring, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def _check_ring(self, other):
        if self.ring != other.ring:
            raise ValueError("mixed rings")

    # -- structure -----------------------------------------------------------

    def linear_part(self):
        """Sum of the degree-1 monomials."""
        out = {t: c for t, c in self.coeffs.items() if term_degree(t) == 1}
        return self._wrap(out)

    def restrict_to_z_multiples(self, z_indices):
        """Drop every monomial whose term no z-indeterminate divides."""
        zset = set(z_indices)
        out = {t: c for t, c in self.coeffs.items() if any(t[k] for k in zset)}
        return self._wrap(out)

    def truncate_degree(self, dmax):
        """Keep the monomials of total degree <= dmax."""
        out = {t: c for t, c in self.coeffs.items() if term_degree(t) <= dmax}
        return self._wrap(out)

    def substitute(self, k, value):
        """Replace indeterminate k by the polynomial ``value``."""
        self._check_ring(value)
        n = self.ring.nvars
        powers = {0: Polynomial.constant(self.ring, 1)}

        def power(e):
            if e not in powers:
                powers[e] = power(e - 1) * value
            return powers[e]

        acc = Polynomial.zero(self.ring)
        for t, c in self.coeffs.items():
            e = t[k]
            rest = tuple(0 if i == k else a for i, a in enumerate(t))
            if e == 0:
                acc = acc + Polynomial.from_terms(self.ring, [(t, c)])
            else:
                acc = acc + power(e).term_mul_poly(rest, c)
        return acc

    def evaluate_f2(self, point):
        """Evaluate over F2 at a 0/1 point (sequence of length nvars)."""
        if self.ring.field != FIELD_F2:
            raise ValueError("evaluate_f2 needs an F2 polynomial")
        acc = 0
        for t in self.coeffs:
            if all(point[i] for i, e in enumerate(t) if e):
                acc ^= 1
        return acc

    def max_term(self, key):
        """The (term, coeff) pair maximal under the given key function."""
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading term")
        t = max(self.coeffs, key=key)
        return t, self.coeffs[t]

    # -- printing ------------------------------------------------------------

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)})"


def format_term(ring, t):
    parts = []
    for i, e in enumerate(t):
        if e == 1:
            parts.append(ring.names[i])
        elif e > 1:
            parts.append(f"{ring.names[i]}^{e}")
    return "*".join(parts)


def format_coeff(c):
    """Exact textual form of a scalar: integer or a/b."""
    num, den = c.numerator, c.denominator
    return str(num) if den == 1 else f"{num}/{den}"


def format_polynomial(f):
    """Deterministic human- and parser-readable form, lex-descending."""
    if f.is_zero():
        return "0"
    chunks = []
    for t, c in f.sorted_terms():
        if f.ring.field == FIELD_F2:
            num, den = 1, 1
            negative = False
        else:
            negative = c < 0
            a = -c if negative else c
            num, den = a.numerator, a.denominator
        mono = format_term(f.ring, t)
        if not mono:
            body = str(num) if den == 1 else f"{num}/{den}"
        elif num == 1 and den == 1:
            body = mono
        else:
            coeff = str(num) if den == 1 else f"{num}/{den}"
            body = f"{coeff}*{mono}"
        if not chunks:
            chunks.append(f"-{body}" if negative else body)
        else:
            chunks.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(chunks)


class PolySystem:
    """A ring together with a list of generators.

    Zero generators are kept as given; parsing normalizes them away, but
    operations that substitute into generators may legitimately produce zeros.
    """

    def __init__(self, ring, gens):
        self.ring = ring
        gens = list(gens)
        for g in gens:
            if g.ring != ring:
                raise ValueError("generator from a different ring")
        self.gens = gens

    def __len__(self):
        return len(self.gens)

    def max_degree(self):
        return max((g.degree() for g in self.gens if g), default=0)

    def z_indices(self, names):
        """Resolve indeterminate names to a validated index tuple."""
        idx = tuple(self.ring.var_index(nm) for nm in names)
        if len(set(idx)) != len(idx):
            raise ValueError("repeated indeterminate in Z")
        return idx
