import random

import pytest

from arrangement_lab import arrangement as arr
from arrangement_lab.arrangement import Arrangement, boolean
from arrangement_lab.errors import DimensionTooSmall, OracleTooLarge
from arrangement_lab.poset import (
    CharPoly,
    betti_and_euler,
    build,
    char_poly,
    char_poly_whitney,
    default_oracle_bound,
    isomorphic_by_labels,
    moebius,
    section_char_poly,
    truncate,
)

from helpers import random_suite, rows


def test_build_examples(boolean3, gp4, parallel_pair):
    p = build(boolean3)
    assert len(p) == 8 and p.rank_profile() == (1, 3, 3, 1)
    p = build(parallel_pair)
    assert len(p) == 3 and p.rank_profile() == (1, 2)
    assert build(gp4).rank_profile() == (1, 4, 6, 4)


def test_canonical_order(gp4):
    p = build(gp4)
    keys = [(f.rank, f.index_set) for f in p.flats]
    assert keys == sorted(keys)
    assert p.flats[0].index_set == () and p.flats[0].dim == 3


def test_index_sets_are_closed(concurrent3):
    p = build(concurrent3)
    assert [f.index_set for f in p.by_rank(2)] == [(0, 1, 2)]


def test_moebius_examples(boolean3, concurrent3):
    mu = moebius(build(concurrent3))
    assert mu[(0,)] == -1 and mu[(0, 1, 2)] == 2
    assert moebius(build(boolean3))[(0, 1, 2)] == -1


def test_char_poly_examples(boolean3, gp4, concurrent3):
    assert char_poly(boolean3).coeffs == (1, -3, 3, -1)
    assert char_poly(gp4).coeffs == (1, -4, 6, -4)
    assert char_poly(concurrent3).coeffs == (1, -3, 2)


def test_whitney_examples(boolean3, parallel_pair):
    assert char_poly_whitney(boolean3).coeffs == (1, -3, 3, -1)
    assert char_poly_whitney(Arrangement(2, ())).coeffs == (1, 0, 0)
    assert char_poly_whitney(parallel_pair).coeffs == (1, -2, 0)


def test_whitney_bound(monkeypatch):
    a = boolean(4)
    with pytest.raises(OracleTooLarge):
        char_poly_whitney(a, bound=3)
    monkeypatch.setenv("ARRANGEMENT_LAB_ORACLE_BOUND", "3")
    assert default_oracle_bound() == 3
    with pytest.raises(OracleTooLarge):
        char_poly_whitney(a)


def test_char_poly_str_and_eval():
    p = CharPoly((1, -3, 3, -1))
    assert str(p) == "t^3 - 3t^2 + 3t - 1"
    assert p(1) == 0 and p(0) == -1 and p(2) == 1
    assert str(CharPoly((1, 0, 0))) == "t^2"
    assert str(CharPoly((1, -2, 0))) == "t^2 - 2t"
    assert (CharPoly((1, -2, 0)) - CharPoly((1, -1))).coeffs == (1, -3, 1)


def test_whitney_agrees_random():
    for a in random_suite(120, seed=1, max_n=7):
        assert char_poly(a) == char_poly_whitney(a), a.to_dict()


def test_deletion_restriction_random():
    for a in random_suite(60, seed=2, max_n=6):
        chi = char_poly(a)
        for h in range(len(a)):
            d, r = arr.delete_restrict(a, h)
            assert chi == char_poly(d) - char_poly(r)


def test_sign_rule_and_betti_sums():
    for a in random_suite(60, seed=3, max_n=7):
        p = build(a)
        for f, m in zip(p.flats, p.moebius):
            assert (-1) ** f.rank * m > 0
        betti, euler = betti_and_euler(a)
        assert betti[0] == 1 and all(b >= 0 for b in betti)
        for k in range(a.dim + 1):
            assert betti[k] == sum(abs(m) for f, m in zip(p.flats, p.moebius) if f.rank == k)
        assert euler == sum((-1) ** k * b for k, b in enumerate(betti))


def test_betti_examples(boolean3, gp4):
    assert betti_and_euler(boolean3) == ((1, 3, 3, 1), 0)
    assert betti_and_euler(gp4) == ((1, 4, 6, 4), -1)
    assert betti_and_euler(Arrangement(3, ())) == ((1, 0, 0, 0), 1)


def test_moebius_recursion_holds(gp4):
    p = build(gp4)
    for y in p.flats[1:]:
        assert sum(m for x, m in zip(p.flats, p.moebius) if p.leq(x, y)) == 0


def test_truncate(boolean3, parallel_pair):
    assert len(truncate(build(boolean3))) == 7
    assert len(truncate(build(parallel_pair))) == 3


def test_section_char_poly(boolean3, gp4):
    assert section_char_poly(boolean3).coeffs == (1, -3, 3)
    assert section_char_poly(gp4).coeffs == (1, -4, 6)
    with pytest.raises(DimensionTooSmall):
        section_char_poly(rows([1, 0]))


def test_section_char_poly_matches_explicit_section():
    rng = random.Random(4)
    for a in random_suite(30, seed=5, dims=(2, 3, 4), max_n=6):
        u = arr.random_generic_hyperplane(a, rng.randint(0, 999))
        assert char_poly(arr.section(a, u)) == section_char_poly(a)


def test_iterated_truncation_matches_iterated_section():
    a = rows([1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [1, 1, 1, 1, 1])
    s2 = arr.section(a, arr.random_generic_hyperplane(a, 0))
    s1 = arr.section(s2, arr.random_generic_hyperplane(s2, 0))
    assert char_poly(s1).coeffs == char_poly(a).coeffs[:3]


def test_truncation_isomorphism():
    rng = random.Random(6)
    for a in random_suite(25, seed=7, dims=(2, 3, 4), max_n=7, essential=True):
        p = build(a)
        u = arr.random_generic_hyperplane(a, rng.randint(0, 999), poset=p)
        s = arr.section(a, u, p)
        assert isomorphic_by_labels(truncate(p), a.labels, build(s), [h.parents for h in s])


def test_isomorphism_detects_difference(boolean3):
    p = build(boolean3)
    # without truncation the origin has no counterpart in the section
    s = arr.section(boolean3, arr.random_generic_hyperplane(boolean3, 0))
    assert not isomorphic_by_labels(p, boolean3.labels, build(s), [h.parents for h in s])
