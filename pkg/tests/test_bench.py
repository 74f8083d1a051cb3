from __future__ import annotations

import json

import pytest

from bartree.bench import BenchConfig, run_bench
from bartree.detect import CompareMode

SMALL = BenchConfig(classes=(5, 10), pages_per_class=6, mutation_rate=0.5, seed=3, repeats=1,
                    permutation_pages=2, collision_pages=2)


def test_deterministic_modulo_timing():
    a, b = run_bench(SMALL), run_bench(SMALL)
    assert a.to_dict(timing=False) == b.to_dict(timing=False)
    other = run_bench(BenchConfig(**{**SMALL.__dict__, "seed": 4}))
    assert other.to_dict(timing=False) != a.to_dict(timing=False)


def test_json_shape():
    doc = json.loads(json.dumps(run_bench(SMALL).to_dict()))
    assert doc["seed"] == 3
    assert len(doc["classes"]) == 2 * len(CompareMode)
    for entry in doc["classes"]:
        assert set(entry) == {"d_max", "mode", "detection_rate", "mean_check_ms", "n"}
        assert entry["n"] == 3 and 0.0 <= entry["detection_rate"] <= 1.0


def test_zero_rate_is_flagged():
    rep = run_bench(BenchConfig(classes=(5,), pages_per_class=3, mutation_rate=0.0,
                                repeats=1, permutation_pages=0, collision_pages=0))
    assert all(c.detection_rate is None and c.n == 0 for c in rep.classes)
    assert len(rep.flags) == len(CompareMode) and "degenerate" in rep.flags[0]
    assert "n/a" in rep.table()


def test_subset_and_detection():
    rep = run_bench(SMALL)
    assert rep.subset_violations == 0
    for d in SMALL.classes:
        assert rep.result(d, CompareMode.FULL_WITH_DELTA).detection_rate == 1.0
        assert rep.corpus("permutation", d, CompareMode.FULL_WITH_DELTA).detection_rate == 1.0
        assert rep.corpus("permutation", d, CompareMode.FULL).detection_rate == 0.0
        assert rep.corpus("collision", d, CompareMode.SIMPLE).detection_rate == 0.0
        assert rep.result(d, "simple").false_positives == 0


def test_config_validation():
    with pytest.raises(ValueError):
        BenchConfig(mutation_rate=1.5)
    with pytest.raises(ValueError):
        BenchConfig(repeats=0)
