"""Exit criteria.  All checks are exact integer/rational comparisons."""
import io
import random
import time
from fractions import Fraction
from pathlib import Path

import pytest

from arrangement_lab import arrangement as arr
from arrangement_lab.arrangement import Arrangement, boolean
from arrangement_lab.at_infinity import (
    BRUTE_FORCE_BOUND,
    cone,
    dense_edges,
    matroid_components,
    matroid_components_bruteforce,
)
from arrangement_lab.cli import run
from arrangement_lab.errors import Resonant
from arrangement_lab.homology import (
    euler_positivity,
    homology_dims,
    homotopy_nonvanishing,
    hurewicz_certificate,
    section_homology_dims,
)
from arrangement_lab.local_system import nonresonance_check, uniform
from arrangement_lab.os_algebra import nbc_profile
from arrangement_lab.poset import (
    betti_and_euler,
    build,
    char_poly,
    char_poly_whitney,
    isomorphic_by_labels,
    truncate,
)

from helpers import random_suite, rows

DATA = Path(__file__).resolve().parent.parent / "data"
F = Fraction


def gp4():
    return rows([1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [1, 1, 1, 1], labels=["x", "y", "z", "w"])


def named_fixtures():
    return [
        boolean(2), boolean(3), boolean(4), gp4(),
        rows([1, 0, 0], [0, 1, 0], [1, 1, 0]),
        rows([1, 0, 0], [1, 0, 1], [0, 1, 0]),
        rows([1, 0, 0], [1, 0, 1]),
        rows([1, 0, 0], [0, 1, 0], [1, 1, 1]),
        # braid arrangement A_3 (decone) with coordinate hyperplanes
        rows([1, -1, 0, 0], [1, 0, -1, 0], [0, 1, -1, 0], [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]),
        Arrangement(2, ()),
    ]


@pytest.fixture(scope="module")
def suite():
    """Named fixtures plus random arrangements, some with 9-10 hyperplanes."""
    out = named_fixtures()
    out += random_suite(60, seed=101, dims=(1, 2, 3, 4), max_n=8)
    out += random_suite(8, seed=102, dims=(2, 3), max_n=10)
    return out


@pytest.fixture(scope="module")
def essential_suite():
    return random_suite(110, seed=103, dims=(2, 3, 4), max_n=8, essential=True)


@pytest.mark.acceptance(1, "Boolean fixture: chi = (t-1)^l and euler_positivity = 1 for l in 2..5")
def test_criterion_01_boolean():
    from math import comb
    for dim in (2, 3, 4, 5):
        a = boolean(dim)
        expected = tuple((-1) ** k * comb(dim, k) for k in range(dim + 1))
        assert char_poly(a).coeffs == expected
        assert euler_positivity(a) == (1, True)


@pytest.mark.acceptance(2, "char_poly == Whitney oracle on >= 100 random arrangements (l<=4, n<=7, coef in [-3,3]), < 30 s")
def test_criterion_02_whitney():
    arrangements = random_suite(100, seed=201, dims=(1, 2, 3, 4), max_n=7, coef=3)
    start = time.perf_counter()
    for a in arrangements:
        assert char_poly(a) == char_poly_whitney(a), a.to_dict()
    elapsed = time.perf_counter() - start
    assert elapsed < 30, f"took {elapsed:.1f} s"


@pytest.mark.acceptance(3, "deletion-restriction chi(A) = chi(A') - chi(A'') for every hyperplane of every suite arrangement")
def test_criterion_03_deletion_restriction(suite):
    for a in suite:
        chi = char_poly(a)
        for h in range(len(a)):
            d, r = arr.delete_restrict(a, h)
            assert chi == char_poly(d) - char_poly(r), (a.to_dict(), h)


@pytest.mark.acceptance(4, "nbc profile == Moebius Betti numbers on every suite arrangement with n <= 10")
def test_criterion_04_nbc(suite):
    checked = 0
    for a in suite:
        if len(a) <= 10:
            assert nbc_profile(a) == betti_and_euler(a)[0], a.to_dict()
            checked += 1
    assert checked == len(suite) and any(len(a) >= 9 for a in suite)


@pytest.mark.acceptance(5, "truncate(build(A)) isomorphic to build(A cap U) on >= 25 essential arrangements")
def test_criterion_05_truncation():
    rng = random.Random(501)
    arrangements = random_suite(30, seed=502, dims=(2, 3, 4), max_n=8, essential=True)
    for a in arrangements:
        p = build(a)
        u = arr.random_generic_hyperplane(a, rng.randint(0, 10**6), poset=p)
        s = arr.section(a, u, p)
        assert isomorphic_by_labels(truncate(p), a.labels, build(s), [h.parents for h in s])


@pytest.mark.acceptance(6, "fundamental-circuit components == brute-force partition components on suite dense-edge subarrangements")
def test_criterion_06_matroid(suite, essential_suite):
    checked = 0
    for a in list(suite) + list(essential_suite[:40]):
        if not arr.is_essential(a):
            continue
        c = cone(a)
        for e in dense_edges(a, c):
            if len(e.flat_indices) > BRUTE_FORCE_BOUND:
                continue
            vecs = [c.homogenized_normals[i] for i in e.flat_indices]
            assert matroid_components(vecs) == matroid_components_bruteforce(vecs)
            checked += 1
        if len(c.homogenized_normals) <= BRUTE_FORCE_BOUND:
            vecs = list(c.homogenized_normals)
            assert matroid_components(vecs) == matroid_components_bruteforce(vecs)
            checked += 1
    assert checked > 100


@pytest.mark.acceptance(7, "general-position fixture: dim H_3 = 1, dim H_2(section) = 3, b_3 = 4 = 1 + 3; doubled at r = 2")
def test_criterion_07_certificate():
    a = gp4()
    assert char_poly_whitney(a).coeffs == (1, -4, 6, -4)
    l1 = uniform(4, F(1, 3))
    assert homology_dims(a, l1).dims == (0, 0, 0, 1)
    assert section_homology_dims(a, l1).dims == (0, 0, 3)
    c = hurewicz_certificate(a, l1)
    assert (c.top_cells, c.generators, c.kernel_dim, c.image_dim, c.surjective) == (4, 4, 1, 3, True)
    c2 = hurewicz_certificate(a, uniform(4, F(1, 3), rank=2))
    assert (c2.top_cells, c2.generators, c2.kernel_dim, c2.image_dim) == (4, 8, 2, 6)


@pytest.mark.acceptance(8, "lambda = 1/4 on the fixture is Resonant at H_inf (sum -1); homology commands exit 2")
def test_criterion_08_resonance():
    a = gp4()
    verdict = nonresonance_check(a, uniform(4, F(1, 4)))
    assert not verdict.nonresonant
    assert [(v.labels, v.channel, v.value) for v in verdict.violations] == [(("H_inf",), 1, F(-1))]
    for fn in (homology_dims, section_homology_dims, hurewicz_certificate):
        with pytest.raises(Resonant):
            fn(a, uniform(4, F(1, 4)))
    for cmd in ("check-nonresonant", "homology", "certify-hurewicz"):
        out, err = io.StringIO(), io.StringIO()
        code = run([cmd, str(DATA / "gp4.json"), "--local-system", str(DATA / "quarters4.json")], out, err)
        assert code == 2 and out.getvalue() == ""


@pytest.mark.acceptance(9, "(-1)^(l-1) chi(M cap U) > 0 on >= 100 random essential arrangements (l in 2..4, n <= 8)")
def test_criterion_09_positivity(essential_suite):
    assert len(essential_suite) >= 100
    for a in essential_suite:
        value, positive = euler_positivity(a)
        assert positive and value > 0, a.to_dict()


@pytest.mark.acceptance(10, "homotopy_nonvanishing true for all 2 <= k <= l-1 across the random essential suite")
def test_criterion_10_homotopy(essential_suite):
    cases = 0
    for a in essential_suite:
        for k in range(2, a.dim):
            euler, ok = homotopy_nonvanishing(a, k)
            assert ok and (-1) ** k * euler > 0, (a.to_dict(), k)
            cases += 1
    assert cases > 50
