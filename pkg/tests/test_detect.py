from __future__ import annotations

import itertools
from dataclasses import replace

import pytest

from bartree.bars import BarParams, fingerprint
from bartree.detect import (
    Action,
    ChangeReport,
    CompareMode,
    DeltaCase,
    UnreachableDeltaCase,
    classify_delta,
    compare,
    decide,
)
from bartree.errors import ParamMismatch
from bartree.reverse import DepthProfile

P = DepthProfile((1, 2, 3, 4, 4, 2))
PARAMS = BarParams.default_for(6)


def fp(su=3, sl=1, prof=P, params=PARAMS):
    return fingerprint(prof, su, sl, params, roi_text="roi", captured_at="2020-01-01T00:00:00Z")


@pytest.mark.parametrize("mode", list(CompareMode))
def test_identical_no_change(mode):
    r = compare(fp(), fp(), mode)
    assert not r.changed and r.differing == frozenset()
    if mode is CompareMode.FULL_WITH_DELTA:
        assert r.delta_case is DeltaCase.NO_CHANGE


def _collision_profiles():
    # same d_max and A_total, different counts at the deepest levels
    a, b = DepthProfile((1, 3, 4)), DepthProfile((1, 4, 1))
    params = BarParams.default_for(3)
    return a, b, params


def test_simple_misses_same_area_change():
    from bartree.bars import total_area

    a, b, params = _collision_profiles()
    assert total_area(a, params) == total_area(b, params)
    old, new = fp(prof=a, params=params), fp(prof=b, params=params)
    assert not compare(old, new, CompareMode.SIMPLE).changed
    full = compare(old, new, CompareMode.FULL)
    assert full.changed and "P" in full.differing and "A_total" not in full.differing


def test_simple_is_subset_of_full():
    old = fp()
    for new in (fp(prof=DepthProfile((1, 2, 3, 4, 3, 2))), fp(su=4), fp(prof=DepthProfile((1, 2)))):
        s, f = compare(old, new, CompareMode.SIMPLE), compare(old, new, CompareMode.FULL)
        assert s.differing <= f.differing


def test_delta_cases():
    old = fp(3, 1)
    assert classify_delta(old, fp(4, 2)) is DeltaCase.SYMMETRIC_SIMULTANEOUS
    assert classify_delta(old, fp(3, 2)) is DeltaCase.LOWER_ONLY
    assert classify_delta(old, fp(5, 1)) is DeltaCase.UPPER_ONLY
    assert classify_delta(old, fp(5, 0)) is DeltaCase.BOTH_DIFFERENT
    assert classify_delta(old, fp(3, 1)) is DeltaCase.NO_CHANGE


def test_upper_only_report():
    r = compare(fp(3, 1), fp(2, 1), CompareMode.FULL_WITH_DELTA)
    assert r.delta_case is DeltaCase.UPPER_ONLY
    assert r.differing == {"sigma_upper", "delta"}


# (delta equal, sigma_upper equal, sigma_lower equal) -> case
REACHABLE = {
    (True, True, True): DeltaCase.NO_CHANGE,
    (True, False, False): DeltaCase.SYMMETRIC_SIMULTANEOUS,
    (False, False, True): DeltaCase.UPPER_ONLY,
    (False, True, False): DeltaCase.LOWER_ONLY,
    (False, False, False): DeltaCase.BOTH_DIFFERENT,
}


@pytest.mark.parametrize("combo", list(itertools.product([True, False], repeat=3)))
def test_all_predicate_combinations(combo):
    same_d, same_u, same_l = combo
    old = fp(3, 1)
    su = 3 if same_u else 7
    sl = 1 if same_l else (5 if same_d and not same_u else 4)
    if combo in REACHABLE:
        delta = su - sl
    else:
        # only a delta that disagrees with the sigmas realizes these
        delta = old.delta if same_d else old.delta + 11
    new = replace(old, sigma_upper=su, sigma_lower=sl, delta=delta)
    assert (new.delta == old.delta, su == 3, sl == 1) == combo
    consistent = new.delta == new.sigma_upper - new.sigma_lower
    if combo in REACHABLE:
        assert consistent
        assert classify_delta(old, new) is REACHABLE[combo]
    else:
        assert not consistent
        with pytest.raises(UnreachableDeltaCase):
            classify_delta(old, new)


def test_unreachable_by_arithmetic():
    # exhaustively: consistent fingerprints never land in the excluded combinations
    seen = set()
    for su, sl in itertools.product(range(-3, 4), repeat=2):
        old, new = fp(0, 0), fp(su, sl)
        combo = (old.delta == new.delta, old.sigma_upper == su, old.sigma_lower == sl)
        seen.add(combo)
        assert classify_delta(old, new) is REACHABLE[combo]
    assert seen == set(REACHABLE)


def test_param_mismatch():
    with pytest.raises(ParamMismatch):
        compare(fp(), fp(params=BarParams(1, 0)), CompareMode.SIMPLE)


def test_decide():
    changed = ChangeReport(frozenset({"P"}), CompareMode.FULL)
    same = ChangeReport(frozenset(), CompareMode.FULL)
    assert decide(changed, True) is Action.RE_EXTRACT_PATTERN
    assert decide(same, True) is Action.PROCEED
    assert decide(changed, False) is Action.DEFER_AND_WARN
    assert decide(same, False) is Action.DEFER_AND_WARN


def test_report_json_shape():
    r = compare(fp(3, 1), fp(3, 2), CompareMode.FULL_WITH_DELTA)
    assert r.to_dict() == {
        "changed": True,
        "differing": ["delta", "sigma_lower"],
        "delta_case": "LowerOnly",
        "mode": "full-delta",
    }
