from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from gentile.angles import (
    AngleSpec,
    CandidateTrace,
    Relation,
    obtuse_split_check,
    parse_target,
    side_relation_search,
    splitting_candidates,
    vertex_signatures,
)
from gentile.constructions import equilateral, scalene_acute

T13 = (F(2, 13), F(5, 13), F(6, 13))
T15 = (F(2, 15), F(6, 15), F(7, 15))


def sigs(spec, target):
    return {tuple(s[:3]) for s in vertex_signatures(spec, target)}


def test_parse_target():
    assert parse_target("full") == parse_target(2) == parse_target("2pi") == 2
    assert parse_target("half") == parse_target("pi") == 1
    with pytest.raises(ValueError):
        parse_target("quarter")


def test_spec_validation():
    with pytest.raises(ValueError):
        AngleSpec.of(F(1, 2), F(1, 2), F(1, 2))
    with pytest.raises(ValueError):
        AngleSpec("family", k=1)
    with pytest.raises(ValueError):
        AngleSpec("two_pi_over_m", k=3, m=7)


def test_equilateral_full_vertices():
    found = sigs(AngleSpec.of(F(1, 3), F(1, 3), F(1, 3)), "full")
    assert len(found) == 28
    assert all(sum(s) == 6 for s in found)


def test_split_triple_signatures():
    assert {(1, 0, 4), (0, 4, 1)} <= sigs(AngleSpec.of(*T13), "full")
    assert {(1, 0, 4), (0, 5, 0)} <= sigs(AngleSpec.of(*T15), "full")


def test_two_pi_over_m_matches_explicit():
    spec = AngleSpec("two_pi_over_m", k=3, m=13)
    assert spec.angles == (F(2, 13), F(6, 13), F(5, 13))
    assert sigs(spec, "full") == sigs(AngleSpec.of(F(2, 13), F(6, 13), F(5, 13)), "full")


def test_family_coefficient_matching():
    fam = AngleSpec("family", k=2)
    assert sigs(fam, "half") == {(1, 1, 1), (3, 0, 1)}
    assert sigs(fam, "full") == {(0, 3, 2), (2, 2, 2), (4, 1, 2), (6, 0, 2)}


@pytest.mark.parametrize("k", [2, 3, 5])
def test_family_largest_angle_at_most_once_on_a_line(k):
    assert all(s[2] <= 1 for s in sigs(AngleSpec("family", k=k), "half"))


angle_triples = st.tuples(st.integers(1, 30), st.integers(1, 30), st.integers(1, 30)).map(
    lambda t: tuple(F(x, sum(t)) for x in t)
)


@given(angle_triples, st.sampled_from(["half", "full"]))
def test_signatures_are_exact_solutions(angles, target):
    want = parse_target(target)
    for s in vertex_signatures(AngleSpec.of(*angles), target):
        assert sum(d * a for d, a in zip(s[:3], angles)) == want


@given(angle_triples)
def test_strict_maximum_at_most_once_on_a_line(angles):
    big = max(angles)
    if list(angles).count(big) == 1 and big != F(1, 2):
        w = angles.index(big)
        assert all(s[w] <= 1 for s in vertex_signatures(AngleSpec.of(*angles), "half"))


def test_splitting_candidates_k3():
    assert splitting_candidates(3) == [T13, T15]


@pytest.mark.parametrize("k", range(4, 13))
def test_no_candidates_beyond_3(k):
    assert splitting_candidates(k) == []


def test_candidate_trace():
    tr = CandidateTrace(4)
    splitting_candidates(4, tr)
    assert "fails" in tr.isosceles
    assert {m for m, _ in tr.rejected} == set(range(17, 40, 2))
    with pytest.raises(ValueError):
        splitting_candidates(2)


def test_side_relations_integers():
    rels = side_relation_search([2, 3, 4], 6)
    assert Relation(0, 5, 2, 1) in rels
    for r in rels:
        s = [2, 3, 4]
        others = [s[i] for i in range(3) if i != r.lhs]
        assert r.lam * s[r.lhs] == r.mu * others[0] + r.nu * others[1]


def test_side_relations_equilateral():
    rels = side_relation_search([1, 1, 1], 2)
    assert rels == [Relation(i, 2, 1, 1) for i in range(3)]
    assert Relation(0, 2, 1, 1) in side_relation_search(equilateral(), 2)


def test_side_relations_irrational_master():
    assert side_relation_search(scalene_acute(), 20) == []


def test_side_relations_order_independent():
    a = {(r.lam, r.mu, r.nu) for r in side_relation_search([3, 4, 5], 8) if r.lhs == 2}
    b = {(r.lam, r.mu, r.nu) for r in side_relation_search([5, 3, 4], 8) if r.lhs == 0}
    assert a == b and (1, 1, 1) not in a and (5, 3, 4) in a


def test_side_relations_squared_lengths():
    # squared lengths 1, 4, 9 are sides 1, 2, 3 with 3 = 1 + 2
    assert Relation(2, 1, 1, 1) in side_relation_search([1, 4, 9], 3, squared=True)


@pytest.mark.parametrize(
    "angles,k",
    [((F(1, 12), F(1, 6), F(3, 4)), 3), ((F(1, 10), F(1, 5), F(7, 10)), 5)],
)
def test_obtuse_impossible(angles, k):
    v = obtuse_split_check(angles, k)
    assert v.verdict == "impossible"
    assert v.limiting == "gamma-capacity"


def test_obtuse_boundary_declined():
    assert obtuse_split_check((F(1, 12), F(1, 4), F(2, 3)), 3).verdict == "declined"
