from __future__ import annotations

import time
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bartree.bars import (
    BarParams,
    Fingerprint,
    NettForm,
    areas,
    bar_tree,
    describe,
    fingerprint,
    frac_str,
    nett_areas,
    parse_frac,
    total_area,
    widths,
)
from bartree.errors import InvalidRatio
from bartree.reverse import DepthProfile

EX = DepthProfile((1, 2, 1))
EX_PARAMS = BarParams(F(1), F(1, 10))


def test_widths_example():
    assert widths(EX, EX_PARAMS) == (F(1), F(1), F(9, 20), F(9, 25))


def test_areas_example():
    assert areas(EX, EX_PARAMS) == (F(0), F(1), F(9, 10), F(27, 25))


def test_nett_example_both_forms():
    for form in NettForm:
        assert nett_areas(EX, EX_PARAMS, form) == (F(1), F(9, 20), F(9, 25))


def test_total_example():
    assert total_area(EX, EX_PARAMS) == F(181, 100)


def test_base_cases():
    empty = DepthProfile(())
    assert widths(empty, EX_PARAMS) == (F(1),)
    assert total_area(empty, EX_PARAMS) == 0
    assert areas(empty, EX_PARAMS)[0] == 0
    p = DepthProfile((3,))
    assert nett_areas(p, EX_PARAMS, NettForm.PRODUCT) == (F(1, 3),)


@pytest.mark.parametrize("k", range(1, 26))
def test_closed_form_flat_profile(k):
    prof = DepthProfile((1,) * k)
    params = BarParams(F(1), F(0))
    assert widths(prof, params) == (F(1),) * (k + 1)
    assert areas(prof, params) == tuple(F(d) for d in range(k + 1))
    assert total_area(prof, params) == k
    # away from the unit normalization every level multiplies by I
    I = F(7, 3)
    assert total_area(prof, BarParams(I, F(0))) == sum(I ** (d + 1) for d in range(1, k + 1))


def test_ratio_bound():
    BarParams(F(1), F(1, 3)).check(3)
    with pytest.raises(InvalidRatio):
        BarParams(F(1), F(1, 3)).check(4)
    with pytest.raises(InvalidRatio):
        BarParams(F(0), F(0))
    with pytest.raises(InvalidRatio):
        BarParams(F(1), F(-1, 2))
    with pytest.raises(InvalidRatio):
        widths(DepthProfile((1,) * 4), BarParams(F(1), F(1, 3)))


profiles = st.lists(st.integers(1, 6), min_size=0, max_size=25).map(lambda p: DepthProfile(tuple(p)))


@st.composite
def profile_and_params(draw):
    prof = draw(profiles)
    I = F(draw(st.integers(1, 50)), draw(st.integers(1, 20)))
    bound = I / max(prof.d_max, 1)
    frac = F(draw(st.integers(0, 100)), 100)
    return prof, BarParams(I, bound * frac)


@settings(max_examples=1000, deadline=None)
@given(profile_and_params())
def test_algebraic_identities(pp):
    prof, params = pp
    w = widths(prof, params)
    A = areas(prof, params)
    rec = nett_areas(prof, params, NettForm.RECURSIVE)
    prod = nett_areas(prof, params, NettForm.PRODUCT)
    assert rec == prod == w[1:]
    assert all(A[d] == d * w[d] for d in range(prof.d_max + 1))
    assert total_area(prof, params) == sum(w[1:])


@settings(max_examples=200, deadline=None)
@given(profile_and_params(), st.integers(0, 24))
def test_more_nodes_shrink_deeper_bars(pp, d):
    prof, params = pp
    if d >= prof.d_max:
        return
    bigger = list(prof.P)
    bigger[d] += 1
    w0, w1 = widths(prof, params), widths(DepthProfile(tuple(bigger)), params)
    assert w1[: d + 1] == w0[: d + 1]
    if params.I - d * params.r > 0:
        assert all(w1[k] < w0[k] for k in range(d + 1, prof.d_max + 1))


@settings(max_examples=200, deadline=None)
@given(profile_and_params(), st.integers(1, 9))
def test_homogeneous_in_scale(pp, c):
    prof, params = pp
    scaled = BarParams(params.I * c, params.r * c)
    w0, w1 = widths(prof, params), widths(prof, scaled)
    assert all(b == a * c ** (d + 1) for d, (a, b) in enumerate(zip(w0, w1)))


def test_frac_round_trip():
    for x in (F(0), F(181, 100), F(-3, 7), F(10**30, 3)):
        assert parse_frac(frac_str(x)) == x
    with pytest.raises(ValueError):
        parse_frac("1.5")


def test_fingerprint_serialization():
    fp = fingerprint(EX, 3, 1, EX_PARAMS, roi_text="x", captured_at="2020-01-01T00:00:00Z")
    d = fp.to_dict()
    assert d["A_total"] == "181/100" and d["P"] == [1, 2, 1] and d["delta"] == 2
    assert d["A"] == ["0/1", "1/1", "9/10", "27/25"] and d["r"] == "1/10"
    assert Fingerprint.from_dict(d) == fp
    bad = dict(d, delta=0)
    with pytest.raises(ValueError):
        Fingerprint.from_dict(bad)


def test_empty_fingerprint():
    fp = fingerprint(DepthProfile(()), 0, 0, roi_text="x", captured_at="t")
    assert (fp.d_max, fp.A_total, fp.P) == (0, 0, ())


def test_fingerprint_deterministic():
    a = fingerprint(EX, 1, 1, roi_text="x", captured_at="t").to_dict()
    b = fingerprint(EX, 1, 1, roi_text="x", captured_at="t").to_dict()
    assert a == b and a["r"] == "1/4"


def test_describe_lists_every_depth():
    text = describe(bar_tree(EX, EX_PARAMS))
    assert "A_total=181/100" in text and text.count("\nd=") == 4


def test_identity_suite_is_fast():
    import random

    rng = random.Random(7)
    t0 = time.perf_counter()
    for _ in range(1000):
        prof = DepthProfile(tuple(rng.randint(1, 4) for _ in range(rng.randint(0, 25))))
        params = BarParams.default_for(prof.d_max)
        assert nett_areas(prof, params) == nett_areas(prof, params, NettForm.PRODUCT)
    assert time.perf_counter() - t0 < 5
