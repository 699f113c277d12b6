"""Boolean-ring layer: square-free arithmetic, checks, coherence, point ideals."""

import random

import pytest

from helpers import all_f2_points, common_zeros, parse_poly, rand_f2_system
from zsep.boolring import (
    BOOL_OPTIMIZED,
    BOOL_OPTIMIZED_FIELD,
    BOOL_PLAIN,
    augment_with_indeterminate_products,
    bool_check_separating,
    bool_coherent_tuple,
    bool_find_separating_tuple,
    bool_normal_remainder,
    boolean_ring_of,
    generate_sbox_table,
    load_sbox_table,
    representative,
    sbox_graph_points,
    sbox_ring,
    sbox_system,
    squarefree_normalize,
    vanishing_ideal_degree_bounded,
)
from zsep.gboracle import (
    OracleOverload,
    buchberger,
    elimination_ordering,
    field_ideal_gens,
    normal_form,
)
from zsep.orderings import Lex
from zsep.poly import FIELD_F2, FIELD_Q, Polynomial, PolySystem, make_ring, unit_term
from zsep.sepextract import SeparatingTuple
from zsep.sysfile import parse_system


def _bool_system(text):
    return parse_system("field F2 boolean\n" + text)


def _boolify(system):
    bring = boolean_ring_of(system.ring)
    gens = [squarefree_normalize(g) for g in system.gens]
    gens = [g for g in gens if g]
    return PolySystem(bring, gens) if gens else None


def test_squarefree_normalize_examples():
    ring = make_ring(2, FIELD_F2)
    f = parse_poly(ring, "x1^2*x2 + x1*x2")
    assert not squarefree_normalize(f)
    assert str(squarefree_normalize(parse_poly(ring, "x1^3"))) == "x1"
    g = squarefree_normalize(parse_poly(ring, "x1*x2 + x2 + 1"))
    assert squarefree_normalize(representative(g)) == g  # idempotent
    with pytest.raises(ValueError, match="needs an F2 ring"):
        squarefree_normalize(parse_poly(make_ring(2, FIELD_Q), "x1"))


def test_squarefree_normalize_preserves_evaluation():
    rng = random.Random(81)
    ring = make_ring(4, FIELD_F2)
    for _ in range(40):
        items = [
            (tuple(rng.randint(0, 2) for _ in range(4)), 1)
            for _ in range(rng.randint(1, 5))
        ]
        f = Polynomial.from_terms(ring, items)
        g = squarefree_normalize(f)
        for p in all_f2_points(4):
            assert f.evaluate_f2(p) == g.evaluate_f2(p)


def test_representative_reads_back_plain():
    sys_ = _bool_system("vars x1 x2\npoly x1*x2 + x1")
    rep = representative(sys_.gens[0])
    assert not rep.ring.boolean
    assert rep.coeffs == sys_.gens[0].coeffs


def test_bool_normal_remainder_examples():
    sys_ = _bool_system("vars x1 x2\npoly x1 + x2")
    f = parse_poly(sys_.ring, "x1")
    rem = bool_normal_remainder(f, sys_.gens, Lex())
    assert rem == parse_poly(sys_.ring, "x2")
    sys2 = _bool_system("vars x1 x2\npoly x1 + 1")
    rem = bool_normal_remainder(parse_poly(sys2.ring, "x1*x2"), sys2.gens, Lex())
    assert rem == parse_poly(sys2.ring, "x2")


def test_bool_normal_remainder_invariants():
    rng = random.Random(82)
    for _ in range(30):
        plain_sys, _ = rand_f2_system(rng)
        system = _boolify(plain_sys)
        if system is None:
            continue
        n = system.ring.nvars
        items = [(tuple(rng.randint(0, 1) for _ in range(n)), 1)
                 for _ in range(rng.randint(1, 4))]
        f = Polynomial.from_terms(system.ring, items)
        rem = bool_normal_remainder(f, system.gens, Lex())
        lex = Lex()
        leads = [representative(g).max_term(lex.key)[0] for g in system.gens if g]
        for t in rem.support():
            # fully reduced: no remainder term is divisible by a divisor lead
            assert not any(all(a >= b for a, b in zip(t, lt)) for lt in leads)
        for p in common_zeros(system):
            assert rem.evaluate_f2(p) == f.evaluate_f2(p)


def test_bool_check_validation():
    plain = parse_system("field F2\nvars x1\npoly x1")
    with pytest.raises(ValueError, match="boolean-mode system"):
        bool_check_separating(plain, (0,))
    sys_ = _bool_system("vars x1\npoly x1")
    with pytest.raises(ValueError, match="unknown mode"):
        bool_check_separating(sys_, (0,), mode="Fast")


def test_bool_check_modes_and_dominance():
    rng = random.Random(83)
    plain_ok = 0
    for _ in range(50):
        plain_sys, z = rand_f2_system(rng)
        system = _boolify(plain_sys)
        if system is None:
            continue
        z = [k for k in z if any(t[k] for g in system.gens for t in g.support())]
        if not z:
            continue
        out = bool_check_separating(system, z, mode=BOOL_PLAIN)
        assert out.mode == BOOL_PLAIN
        if out.ok:
            plain_ok += 1
            for mode in (BOOL_OPTIMIZED, BOOL_OPTIMIZED_FIELD):
                stronger = bool_check_separating(system, z, mode=mode)
                assert stronger.ok and stronger.mode == mode
    assert plain_ok >= 10


def test_bool_find_separating_tuple_properties():
    rng = random.Random(84)
    extracted = 0
    for _ in range(60):
        plain_sys, z = rand_f2_system(rng)
        system = _boolify(plain_sys)
        if system is None or system.ring.nvars > 4:
            continue
        out = bool_check_separating(system, z, mode=BOOL_PLAIN)
        if not out.ok:
            continue
        sep = bool_find_separating_tuple(system, z, out)
        zeros = common_zeros(system)
        for k, f in sep.entries:
            assert f.ring.boolean
            t, c = f.max_term(sep.ordering.key)
            assert t == unit_term(system.ring.nvars, k) and c == 1
            for p in zeros:
                assert f.evaluate_f2(p) == 0
        extracted += 1
    assert extracted >= 8


def test_bool_find_separating_tuple_needs_success():
    sys_ = _bool_system("vars x1 x2\npoly x1*x2")
    out = bool_check_separating(sys_, (0,), mode=BOOL_PLAIN)
    with pytest.raises(ValueError, match="not a Success"):
        bool_find_separating_tuple(sys_, (0,), out)


def test_augmentation_examples():
    sys_ = _bool_system("vars x1 x2 x3\npoly x1 + x2*x3\npoly x1 + 1\npoly x2")
    aug = augment_with_indeterminate_products(sys_, (0,))
    # only the first generator qualifies: constant term disqualifies the
    # second, x1 is absent from the third
    assert len(aug.gens) == 4
    extra = aug.gens[3]
    assert extra == parse_poly(sys_.ring, "x1 + x1*x2*x3")
    assert extra.linear_part() == parse_poly(sys_.ring, "x1")
    plain = parse_system("field F2\nvars x1\npoly x1")
    with pytest.raises(ValueError, match="boolean-mode system"):
        augment_with_indeterminate_products(plain, (0,))


def test_bool_coherent_tuple_example():
    sys_ = _bool_system("vars x1 x2 x3\npoly x1 + x2\npoly x2 + x3")
    f1, f2 = sys_.gens
    coh = bool_coherent_tuple(SeparatingTuple([(0, f1), (1, f2)], Lex()))
    assert coh.entries == [
        (0, parse_poly(sys_.ring, "x1 + x3")),
        (1, parse_poly(sys_.ring, "x2 + x3")),
    ]


def test_bool_coherent_tuple_random_invariants():
    rng = random.Random(85)
    checked = 0
    for _ in range(60):
        plain_sys, z = rand_f2_system(rng)
        system = _boolify(plain_sys)
        if system is None or system.ring.nvars > 4:
            continue
        out = bool_check_separating(system, z, mode=BOOL_PLAIN)
        if not out.ok:
            continue
        sep = bool_find_separating_tuple(system, z, out)
        coh = bool_coherent_tuple(sep)
        zset = set(coh.z_indices())
        for h in coh.tails():
            assert not any(t[j] for t in h.support() for j in zset)
        plain = system.ring.plain()
        reps = [representative(g) for g in system.gens]
        reps.extend(field_ideal_gens(plain))
        try:
            gb = buchberger(PolySystem(plain, reps),
                            elimination_ordering(plain.nvars, tuple(zset)))
        except OracleOverload:
            continue
        for f in coh.polys():
            assert not normal_form(representative(f), gb)
        checked += 1
    assert checked >= 8


def test_vanishing_ideal_small_cases():
    polys = vanishing_ideal_degree_bounded([(0, 0)], 1)
    assert [str(p) for p in polys] == ["x1", "x2"]
    polys = vanishing_ideal_degree_bounded([(1, 1)], 1)
    assert [str(p) for p in polys] == ["x1 + 1", "x2 + 1"]
    # all four points leave nothing of degree <= 2 to vanish
    assert vanishing_ideal_degree_bounded(all_f2_points(2), 2) == []


def test_vanishing_ideal_properties():
    rng = random.Random(86)
    for _ in range(25):
        m = rng.randint(2, 5)
        pts = rng.sample(all_f2_points(m), rng.randint(1, min(10, 2 ** m)))
        dmax = rng.randint(1, m)
        polys = vanishing_ideal_degree_bounded(pts, dmax)
        for f in polys:
            assert f.degree() <= dmax
            for p in pts:
                assert f.evaluate_f2(p) == 0
        # fresh kernel run is canonical and deterministic
        assert polys == vanishing_ideal_degree_bounded(pts, dmax)


def test_vanishing_ideal_errors():
    with pytest.raises(ValueError, match="empty point set"):
        vanishing_ideal_degree_bounded([], 1)
    with pytest.raises(ValueError, match="unequal length"):
        vanishing_ideal_degree_bounded([(0, 0), (0, 1, 1)], 1)
    with pytest.raises(ValueError, match="duplicate points"):
        vanishing_ideal_degree_bounded([(0, 1), (0, 1)], 1)
    with pytest.raises(ValueError, match="degree bound exceeds"):
        vanishing_ideal_degree_bounded([(0, 1)], 3)
    with pytest.raises(ValueError, match="ring size"):
        vanishing_ideal_degree_bounded([(0, 1)], 1, ring=sbox_ring())


def test_sbox_table_matches_definition():
    table = load_sbox_table()
    assert table == generate_sbox_table()
    assert (table[0x00], table[0x01], table[0xFF]) == (0x63, 0x7C, 0x16)


def test_sbox_graph_points_layout():
    pts = sbox_graph_points()
    assert len(pts) == 256 and all(len(p) == 16 for p in pts)
    assert pts[0] == (0,) * 8 + (0, 1, 1, 0, 0, 0, 1, 1)  # s(0) = 0x63 MSB first
    assert pts[255][:8] == (1,) * 8
    assert pts[255][8:] == (0, 0, 0, 1, 0, 1, 1, 0)  # s(0xFF) = 0x16


def test_sbox_system_shape(sbox39):
    assert len(sbox39.gens) == 39
    assert sbox39.ring.names[:8] == tuple(f"x{i}" for i in range(1, 9))
    assert sbox39.ring.names[8:] == tuple(f"y{i}" for i in range(1, 9))
    pts = sbox_graph_points()
    for g in sbox39.gens:
        assert g.degree() <= 2
        assert all(g.evaluate_f2(p) == 0 for p in pts)
