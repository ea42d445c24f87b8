import random
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from samples import random_class

from higgscoha.ktheory import CurveModel, NumClass, twist
from higgscoha.tautalg.chern import (
    KunnethClass,
    chchar_to_chern,
    chern_to_chchar,
    direct_sum,
    k_difference,
    kunneth_total_chern,
    twist_class,
)
from higgscoha.tautalg.hpoly import parse_hpoly
from higgscoha.tautalg.rings import FreeRing, Tensor, XCohRing

C = NumClass
G2 = CurveModel(2)


def test_one_slot_expansion():
    k = kunneth_total_chern([C(1, 5)], G2, 2)
    expected = parse_hpoly("c[1,1]", G2)
    text = str(k.chern)
    assert text == (
        "1 + c[1,1] (x) 1 + c[1,p1] (x) p1 + c[1,p2] (x) p2 + c[1,p3] (x) p3"
        " + c[1,p4] (x) p4 + 5*1 (x) w + c[2,w] (x) w"
    )
    assert k.degree() == 5 and k.numerical_class() == C(1, 5)
    assert expected.max_degree() == 2


def test_two_slots_add_degrees():
    k = kunneth_total_chern([C(1, 2), C(3, -7)], G2, 2)
    assert k.degree() == -5
    assert k.rank == 4


def test_zero_slots_is_unit():
    k = kunneth_total_chern([], G2, 4)
    assert k.chern == Tensor.one((XCohRing(2),)) and k.rank == 0


def test_newton_examples():
    rings = (FreeRing(2), XCohRing(2))
    unit = KunnethClass(Tensor.one(rings), 0)
    assert chern_to_chchar(unit, 6) == 0
    # a first Chern class with square zero: c[1,p1] (x) p1 + 3 (x) w
    line = Tensor.basis(rings, (((1, 1),), 1)) + Tensor.basis(rings, ((), 5), 3)
    assert line.mul(line) == 0
    ch = chern_to_chchar(KunnethClass(Tensor.one(rings) + line, 1), 6)
    assert ch == Tensor.one(rings) + line


def test_roundtrip_random_degree_8():
    rng = random.Random(3)
    for trial in range(15):
        g = trial % 3
        c = random_class(rng, g, 8, rank=rng.randrange(0, 4))
        ch = chern_to_chchar(c, 8)
        back = chchar_to_chern(ch, 8)
        assert back.chern == c.chern and back.rank == c.rank
        assert chern_to_chchar(back, 8) == ch


def test_universal_roundtrip():
    for g in range(3):
        model = CurveModel(g)
        c = kunneth_total_chern([C(2, 3)], model, 8)
        assert chchar_to_chern(chern_to_chchar(c, 8), 8).chern == c.chern


def test_twist_examples():
    c = kunneth_total_chern([C(2, 3)], G2, 6)
    assert twist_class(c, 0, 6).chern == c.chern
    ell = G2.canonical_degree
    once = twist_class(c, ell, 6)
    assert once.numerical_class() == twist(C(2, 3), ell)
    assert twist_class(once, -ell, 6).chern == c.chern


def test_twist_rank_zero_changes_only_top_components():
    c = random_class(random.Random(1), 2, 6, rank=0)
    before = chern_to_chchar(c, 6)
    after = chern_to_chchar(twist_class(c, 7, 6), 6)
    diff = after - before
    top = XCohRing(2).top
    assert all(key[-1] == top for key in diff.terms)
    assert twist_class(c, 7, 6).degree() == c.degree()


def test_k_difference_examples():
    a = kunneth_total_chern([C(1, 2)], G2, 6)
    unit = KunnethClass(Tensor.one(a.rings), 0)
    same = k_difference(a, a, 6)
    assert same.chern == Tensor.one(a.rings) and same.rank == 0
    assert k_difference(a, unit, 6).chern == a.chern


@given(st.integers(0, 10_000), st.integers(0, 2))
def test_k_difference_whitney(seed, g):
    rng = random.Random(seed)
    a = random_class(rng, g, 6, n_terms=4, rank=2)
    b = random_class(rng, g, 6, n_terms=4, rank=1)
    whole = direct_sum(a, b, 6)
    back = k_difference(whole, b, 6)
    assert back.chern == a.chern and back.rank == a.rank


def test_chchar_scalar_parts():
    c = kunneth_total_chern([C(3, -4)], G2, 4)
    ch = chern_to_chchar(c, 4)
    assert ch.constant() == 3
    # ch_1 along w is the degree
    key = ((), XCohRing(2).top)
    assert ch.terms[key] == Fraction(-4)


@given(st.integers(0, 2), st.integers(-3, 3), st.integers(0, 10_000))
def test_twist_closed_form_matches_chchar_route(g, n, seed):
    from higgscoha.tautalg.chern import twist_class_via_chchar

    rng = random.Random(seed)
    total = random_class(rng, g, 6, rank=rng.randint(-2, 3))
    assert twist_class(total, n, 6) == twist_class_via_chchar(total, n, 6)
