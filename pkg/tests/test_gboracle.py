"""The Buchberger ground-truth engine and the separating oracle built on it."""

import random

import pytest

from helpers import parse_poly, rand_checkable_system, rand_poly, rand_term
from zsep.gboracle import (
    GroebnerBasis,
    OracleOverload,
    buchberger,
    division_remainder,
    elimination_ordering,
    field_ideal_gens,
    normal_form,
    oracle_is_separating,
)
from zsep.orderings import DegRevLex, Lex, compare_terms, leading_term
from zsep.poly import (
    FIELD_F2,
    FIELD_Q,
    Polynomial,
    PolySystem,
    make_ring,
    term_div,
    term_divides,
    term_lcm,
)
from zsep.sepcheck import check_separating
from zsep.sysfile import parse_system


def _spoly(f, g, ordering):
    lt_f, lc_f = leading_term(f, ordering)
    lt_g, lc_g = leading_term(g, ordering)
    lcm = term_lcm(lt_f, lt_g)
    a = f.term_mul_poly(term_div(lcm, lt_f))
    b = g.term_mul_poly(term_div(lcm, lt_g))
    if f.ring.field == FIELD_F2:
        return a + b
    return a.scalar_mul(1 / lc_f) - b.scalar_mul(1 / lc_g)


def test_division_remainder_textbook_example():
    ring = make_ring(2)
    f = parse_poly(ring, "x1^2*x2 + x1*x2^2 + x2^2")
    divisors = [parse_poly(ring, "x1*x2 - 1"), parse_poly(ring, "x2^2 - 1")]
    rem = division_remainder(f, divisors, Lex())
    assert rem == parse_poly(ring, "x1 + x2 + 1")
    lts = [leading_term(g, Lex())[0] for g in divisors]
    for t in rem.support():
        assert not any(term_divides(lt, t) for lt in lts)


def test_division_remainder_edge_cases():
    ring = make_ring(2)
    f = parse_poly(ring, "x1 + 1")
    assert division_remainder(f, [], Lex()) == f
    zero = Polynomial.zero(ring)
    assert not division_remainder(zero, [f], Lex())


def test_buchberger_linear_chain():
    system = parse_system("field Q\nvars x1 x2 x3\npoly x1 - x2\npoly x2 - x3")
    gb = buchberger(system, Lex())
    ring = system.ring
    assert gb.polys == [parse_poly(ring, "x1 - x3"), parse_poly(ring, "x2 - x3")]


def test_buchberger_boolean_pulls_field_ideal():
    system = parse_system("field F2 boolean\nvars x1\npoly x1^2 + 1")
    gb = buchberger(system, Lex())
    assert [str(g) for g in gb.polys] == ["x1 + 1"]
    assert not gb.polys[0].ring.boolean


def test_buchberger_output_is_reduced():
    rng = random.Random(91)
    done = 0
    for field in (FIELD_Q, FIELD_F2):
        ring = make_ring(3, field)
        for _ in range(25):
            gens = [rand_poly(rng, ring, max_terms=3, max_deg=2)
                    for _ in range(rng.randint(1, 3))]
            gens = [g for g in gens if g]
            if not gens:
                continue
            try:
                gb = buchberger(PolySystem(ring, gens), DegRevLex())
            except OracleOverload:
                continue
            lts = [leading_term(g, gb.ordering)[0] for g in gb.polys]
            for i, g in enumerate(gb.polys):
                if ring.field == FIELD_Q:
                    assert leading_term(g, gb.ordering)[1] == 1
                for t in g.support():
                    assert not any(term_divides(lts[j], t)
                                   for j in range(len(lts)) if j != i)
            # every S-polynomial of the output reduces to zero
            for i in range(len(gb.polys)):
                for j in range(i + 1, len(gb.polys)):
                    s = _spoly(gb.polys[i], gb.polys[j], gb.ordering)
                    assert not division_remainder(s, gb.polys, gb.ordering)
            again = buchberger(PolySystem(ring, gb.polys), gb.ordering)
            assert again.polys == gb.polys
            done += 1
    assert done >= 30


def test_normal_form_membership_and_linearity():
    rng = random.Random(92)
    for field in (FIELD_Q, FIELD_F2):
        ring = make_ring(3, field)
        gens = [parse_poly(ring, "x1*x2 - x3"), parse_poly(ring, "x2^2 - 1")]
        gb = buchberger(PolySystem(ring, gens), Lex())
        one = Polynomial.constant(ring, 1)
        assert normal_form(one, gb) == one
        for _ in range(20):
            member = sum(
                (g * rand_poly(rng, ring, max_terms=2, max_deg=2) for g in gens),
                Polynomial.zero(ring),
            )
            assert not normal_form(member, gb)
            f = rand_poly(rng, ring, max_terms=4, max_deg=3)
            g = rand_poly(rng, ring, max_terms=4, max_deg=3)
            nf = normal_form(f, gb)
            assert normal_form(nf, gb) == nf
            assert normal_form(f + g, gb) == nf + normal_form(g, gb)


def test_normal_form_empty_basis():
    ring = make_ring(2)
    f = parse_poly(ring, "x1 + 1")
    assert normal_form(f, GroebnerBasis([], Lex())) == f


def test_overload_guards():
    system = parse_system("field Q\nvars x1 x2 x3\npoly x1*x2 - x3\npoly x2*x3 - x1")
    with pytest.raises(OracleOverload, match="pair budget"):
        buchberger(system, Lex(), max_pairs=0)
    with pytest.raises(OracleOverload, match="degree budget"):
        buchberger(system, Lex(), max_degree=1)


def test_elimination_ordering_blocks():
    rng = random.Random(93)
    n, z = 6, (1, 3)
    tau = elimination_ordering(n, z)
    drl = DegRevLex()
    rest = [i for i in range(n) if i not in z]
    for _ in range(300):
        a = rand_term(rng, n, max_deg=3)
        b = rand_term(rng, n, max_deg=3)
        if any(a[k] for k in z) and not any(b[k] for k in z):
            assert compare_terms(tau, a, b) == 1
        if not any(a[k] for k in z) and not any(b[k] for k in z):
            pa = tuple(a[i] for i in rest)
            pb = tuple(b[i] for i in rest)
            assert compare_terms(tau, a, b) == compare_terms(drl, pa, pb)


def test_oracle_is_separating_examples():
    assert oracle_is_separating(
        parse_system("field Q\nvars x1 x2 x3\npoly x1 - x2*x3"), (0,)
    )
    assert not oracle_is_separating(
        parse_system("field Q\nvars x1 x2\npoly x1*x2"), (0,)
    )
    # unit ideal: 1 is a leading term and divides every indeterminate
    assert oracle_is_separating(
        parse_system("field Q\nvars x1 x2\npoly x1\npoly x1 + 1"), (0, 1)
    )


def test_oracle_confirms_plain_successes():
    rng = random.Random(94)
    confirmed = 0
    for field in (FIELD_Q, FIELD_F2):
        for _ in range(60):
            system, z = rand_checkable_system(rng, field)
            if system.ring.nvars > 4:
                continue
            out = check_separating(system, z)
            if not out.ok:
                continue
            try:
                assert oracle_is_separating(system, z)
            except OracleOverload:
                continue
            confirmed += 1
    assert confirmed >= 10


def test_field_ideal_gens_shape():
    ring = make_ring(3, FIELD_F2)
    gens = field_ideal_gens(ring)
    assert [str(g) for g in gens] == ["x1^2 + x1", "x2^2 + x2", "x3^2 + x3"]
