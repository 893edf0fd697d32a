import json
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mdzeta.cone import enumerate_cone
from mdzeta.series import (
    ExponentVector,
    SeriesError,
    TailBoundViolation,
    classical_mzv_series,
    lattice_power_sum,
    mdzv_series,
    refine,
)

from conftest import ZETA2, ZETA3, ZETA12, cone_for


def test_exponent_vector_validation():
    assert ExponentVector.parse("1,2").s == (1, 2)
    assert ExponentVector((3,)).weight == 3
    for bad in ("2,1", "0,2", "", "a,2", (2, 1)):
        with pytest.raises(SeriesError):
            ExponentVector.parse(bad)


def test_rejects_divergent_exponent(cone5):
    with pytest.raises(SeriesError, match="s_m must be"):
        mdzv_series(cone5, (2, 1), 100)
    with pytest.raises(SeriesError):
        classical_mzv_series((1,), 100)


def test_box_example(cone5):
    # the {1,2}^2 box: norms 5, 11, 11, 20
    box = sum(e.norm ** -2.0 for e in enumerate_cone(cone5, 20) if max(e.a, e.b) <= 2)
    assert box == pytest.approx(1 / 25 + 2 / 121 + 1 / 400, rel=1e-15)
    assert box == pytest.approx(0.0590289256, abs=1e-10)
    # the norm <= 20 truncation also contains (1,3) and (3,1), both of norm 19
    r = mdzv_series(cone5, (2,), 20)
    assert r.partialSum == pytest.approx(1 / 25 + 2 / 121 + 2 / 361 + 1 / 400, rel=1e-15)


def test_single_term_example():
    # alpha1 = alpha2 = 1 + beta: N = 5 and N(2 + 2 beta) = 20
    assert 1 / (5 * 20**2) == pytest.approx(0.0005)
    cone = cone_for(5)
    r = mdzv_series(cone, (1, 2), 20)
    # pairs with N(a1+a2) <= 20: only a1 = a2 = (1,1)
    assert r.partialSum == pytest.approx(0.0005, rel=1e-15)


@pytest.mark.parametrize("D", [2, 3, 5, 13])
@pytest.mark.parametrize("k", [2, 3])
def test_depth1_matches_enumeration(D, k):
    cone = cone_for(D)
    X = 20000
    want = math.fsum(e.norm ** -float(k) for e in enumerate_cone(cone, X))
    r = mdzv_series(cone, (k,), X)
    assert r.partialSum == pytest.approx(want, rel=1e-13)
    assert r.termsUsed == len(enumerate_cone(cone, X))


@pytest.mark.parametrize("D", [2, 3, 5])
@pytest.mark.parametrize("s", [(1, 2), (2, 2), (1, 3)])
def test_depth2_bruteforce(D, s):
    cone = cone_for(D)
    X = 3000
    els = enumerate_cone(cone, X)
    T = cone.trace
    total = []
    for e1 in els:
        for e2 in els:
            a, b = e1.a + e2.a, e1.b + e2.b
            n = a * a + T * a * b + b * b
            if n <= X:
                total.append(e1.norm ** -float(s[0]) * n ** -float(s[1]))
    r = mdzv_series(cone, s, X)
    assert r.partialSum == pytest.approx(math.fsum(total), rel=1e-12)


@pytest.mark.parametrize("D", [2, 3, 5])
def test_frozen_references(D):
    cone = cone_for(D)
    z2 = mdzv_series(cone, (2,), 10**6)
    assert abs(z2.value - ZETA2[D]) <= z2.tailBound + 1e-15
    z3 = mdzv_series(cone, (3,), 10**5)
    assert abs(z3.value - ZETA3[D]) <= z3.tailBound + 1e-15
    z12 = mdzv_series(cone, (1, 2), 10**5)
    assert abs(z12.value - ZETA12[D]) <= z12.tailBound
    assert z12.tailBound < 5e-5 * z12.value


def test_depth1_bound_is_sound_and_tight(cone5):
    r = mdzv_series(cone5, (2,), 1000)
    err = abs(r.value - ZETA2[5])
    assert err <= r.tailBound
    assert r.tailBound < 1e-4


def test_refine_examples(cone5, cone2):
    r100 = mdzv_series(cone5, (2,), 100)
    r1000 = refine(r100, cone5, (2,), 1000)
    assert abs(r1000.value - r100.value) <= r100.tailBound
    a = mdzv_series(cone5, (2,), 10**4)
    b = refine(a, cone5, (2,), 10**5)
    assert abs(a.value / b.value - 1) < 5e-7
    c = mdzv_series(cone2, (1, 2), 10**3)
    d = refine(c, cone2, (1, 2), 10**4)
    assert d.partialSum > c.partialSum
    with pytest.raises(SeriesError):
        refine(d, cone2, (1, 2), 10**3)


def test_refine_detects_violation(cone5):
    r = mdzv_series(cone5, (2,), 100)
    r.tailBound = 0.0
    r.value += 1e-3
    with pytest.raises(TailBoundViolation):
        refine(r, cone5, (2,), 1000)


@pytest.mark.parametrize("D", [2, 5])
@pytest.mark.parametrize("s", [(2,), (1, 2)])
def test_partial_sums_increase(D, s):
    cone = cone_for(D)
    vals = [mdzv_series(cone, s, X).partialSum for X in (100, 1000, 10**4, 10**5)]
    assert all(b > a for a, b in zip(vals, vals[1:]))


@settings(max_examples=15, deadline=None)
@given(
    st.sampled_from([2, 3, 5, 6, 7, 13]),
    st.sampled_from([(2,), (3,), (1, 2), (2, 2), (1, 3)]),
    st.integers(300, 20000),
)
def test_tail_bound_soundness(D, s, X):
    cone = cone_for(D)
    a = mdzv_series(cone, s, X)
    b = mdzv_series(cone, s, 16 * X)
    assert abs(a.value - b.value) <= a.tailBound
    assert a.tailBound >= 0


def test_backends_agree():
    for T in (3, 4, 6, 12):
        s1, n1 = lattice_power_sum(T, 2.0, 10**5, backend="numba")
        s2, n2 = lattice_power_sum(T, 2.0, 10**5, backend="numpy")
        assert n1 == n2
        assert s1 == pytest.approx(s2, rel=1e-13)


def test_record_export(cone5):
    r = mdzv_series(cone5, (1, 2), 1000)
    rec = json.loads(r.to_json(cone5))
    assert {"D", "beta", "s", "maxNorm", "value", "tailBound", "termsUsed"} <= set(rec)
    assert rec["D"] == 5 and rec["s"] == [1, 2] and rec["beta"] == "(3+√5)/2"


def test_classical_examples():
    z2 = classical_mzv_series((2,), 10**6)
    assert abs(z2.value - math.pi**2 / 6) <= z2.tailBound
    assert z2.value == pytest.approx(1.6449340668482264, abs=1e-12)
    z3 = classical_mzv_series((3,), 10**4)
    z12 = classical_mzv_series((1, 2), 10**4)
    zeta3 = float(mpmath.zeta(3))
    assert abs(z3.value - zeta3) <= z3.tailBound
    assert abs(z12.value - zeta3) <= z12.tailBound
    assert z12.tailBound < 1e-8


def test_classical_depth2_bruteforce():
    N = 200
    n = np.arange(1, N + 1)
    want = math.fsum(1.0 / (i * j * j) for j in range(1, N + 1) for i in range(1, j))
    r = classical_mzv_series((1, 2), N)
    assert r.partialSum == pytest.approx(want, rel=1e-13)
    assert abs(r.value - float(mpmath.zeta(3))) <= r.tailBound
    r = classical_mzv_series((2, 2), N)
    assert abs(r.value - float(mpmath.pi**4 / 120)) <= r.tailBound
