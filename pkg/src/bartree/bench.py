"""Synthetic accuracy and timing benchmark over depth classes and compare modes."""
from __future__ import annotations

import gc
import random
import statistics
import time
from dataclasses import dataclass, field
from typing import Any

from .bars import BarParams
from .detect import Action, CompareMode
from .errors import Inapplicable
from .harvester import recheck
from .lexer import DEFAULT_TAG_CLASSES
from .pipeline import analyze, capture_anchors, page_fingerprint
from .records import TargetConfig, TargetRecord
from .roi import RoiSpec
from .synth import MutationKind, SyntheticPage, collision_pair, generate_template, random_mutation

CAPTURED_AT = "2000-01-01T00:00:00Z"
STRUCTURAL_KINDS = (
    MutationKind.INSERT_NODE,
    MutationKind.DELETE_NODE,
    MutationKind.SYMMETRIC_DUAL_EDIT,
)


@dataclass(frozen=True)
class BenchConfig:
    classes: tuple[int, ...] = (5, 10, 15, 20, 25)
    pages_per_class: int = 40
    mutation_rate: float = 0.75
    modes: tuple[CompareMode, ...] = tuple(CompareMode)
    seed: int = 0
    repeats: int = 5
    # extra pages per class whose only edit is a sibling move across the RoI
    permutation_pages: int = 8
    # page pairs per class with equal d_max and total area
    collision_pages: int = 8
    kinds: tuple[MutationKind, ...] = STRUCTURAL_KINDS

    def __post_init__(self) -> None:
        if not 0 <= self.mutation_rate <= 1:
            raise ValueError("mutation_rate must lie in [0, 1]")
        if self.repeats < 1 or self.pages_per_class < 0:
            raise ValueError("repeats must be >= 1 and pages_per_class >= 0")


@dataclass(frozen=True)
class ClassResult:
    d_max: int
    mode: str
    detection_rate: float | None
    mean_check_ms: float
    median_check_ms: float
    n: int
    false_positives: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "d_max": self.d_max,
            "mode": self.mode,
            "detection_rate": self.detection_rate,
            "mean_check_ms": self.mean_check_ms,
            "n": self.n,
        }


@dataclass(frozen=True)
class CorpusResult:
    corpus: str
    d_max: int
    mode: str
    detection_rate: float | None
    n: int

    def to_dict(self) -> dict[str, Any]:
        return {"corpus": self.corpus, "d_max": self.d_max, "mode": self.mode,
                "detection_rate": self.detection_rate, "n": self.n}


@dataclass(frozen=True)
class BenchReport:
    classes: tuple[ClassResult, ...]
    seed: int
    corpora: tuple[CorpusResult, ...] = ()
    flags: tuple[str, ...] = ()
    subset_violations: int = 0
    elapsed_s: float = 0.0

    def to_dict(self, timing: bool = True) -> dict[str, Any]:
        classes = [c.to_dict() for c in self.classes]
        out: dict[str, Any] = {"classes": classes, "seed": self.seed}
        if not timing:
            for c in classes:
                del c["mean_check_ms"]
        else:
            out["timing"] = [
                {"d_max": c.d_max, "mode": c.mode, "median_check_ms": c.median_check_ms}
                for c in self.classes
            ]
        out["corpora"] = [c.to_dict() for c in self.corpora]
        out["flags"] = list(self.flags)
        out["subset_violations"] = self.subset_violations
        return out

    def result(self, d_max: int, mode: CompareMode | str) -> ClassResult:
        m = CompareMode(mode).value
        return next(c for c in self.classes if c.d_max == d_max and c.mode == m)

    def corpus(self, name: str, d_max: int, mode: CompareMode | str) -> CorpusResult:
        m = CompareMode(mode).value
        return next(c for c in self.corpora
                    if c.corpus == name and c.d_max == d_max and c.mode == m)

    def table(self) -> str:
        lines = [f"{'d_max':>5}  {'mode':<10}  {'n':>4}  {'detect':>7}  {'mean ms':>8}  {'median ms':>9}"]
        for c in self.classes:
            rate = "n/a" if c.detection_rate is None else f"{c.detection_rate:.3f}"
            lines.append(f"{c.d_max:>5}  {c.mode:<10}  {c.n:>4}  {rate:>7}  "
                         f"{c.mean_check_ms:>8.3f}  {c.median_check_ms:>9.3f}")
        if self.corpora:
            lines.append("")
            lines.append(f"{'corpus':<12}  {'d_max':>5}  {'mode':<10}  {'n':>4}  {'detect':>7}")
            for c in self.corpora:
                rate = "n/a" if c.detection_rate is None else f"{c.detection_rate:.3f}"
                lines.append(f"{c.corpus:<12}  {c.d_max:>5}  {c.mode:<10}  {c.n:>4}  {rate:>7}")
        for f in self.flags:
            lines.append(f"! {f}")
        return "\n".join(lines)


def register_page(page: SyntheticPage, target_id: str = "synthetic") -> TargetRecord:
    """In-memory record for a synthetic page, as registration would store it."""
    html = page.html
    spec = RoiSpec(page.roi_text)
    analysis = analyze(html, spec, DEFAULT_TAG_CLASSES)
    params = BarParams.default_for(analysis.profile.d_max)
    fp = page_fingerprint(analysis, params, captured_at=CAPTURED_AT)
    config = TargetConfig(target_id, "http://bench.invalid/" + target_id, "roi.txt")
    return TargetRecord(config, spec.roi_text, fp, capture_anchors(analysis))


def _check(record: TargetRecord, html: str, mode: CompareMode) -> bool:
    res = recheck(record, html, mode, captured_at=CAPTURED_AT)
    # a vanished RoI would also be a detected change
    return res.report.changed or res.action is Action.DEFER_AND_WARN


def _rate(hits: int, n: int) -> float | None:
    return hits / n if n else None


@dataclass
class _Job:
    d_max: int
    record: TargetRecord
    html: str
    mutated: bool
    samples: dict[CompareMode, list[float]] = field(default_factory=dict)


def _time_jobs(jobs: list[_Job], modes: tuple[CompareMode, ...], repeats: int,
               rng: random.Random) -> None:
    """Time every (job, mode) check *repeats* times in interleaved passes.

    Each pass visits all jobs in a fresh random order, so bursts of machine
    noise land on every class alike. The collector is paused while timing,
    as ``timeit`` does.
    """
    for job in jobs:
        job.samples = {m: [] for m in modes}
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        order = list(jobs)
        for _ in range(repeats):
            gc.collect()
            rng.shuffle(order)
            for job in order:
                for mode in modes:
                    t0 = time.perf_counter()
                    recheck(job.record, job.html, mode, captured_at=CAPTURED_AT)
                    job.samples[mode].append((time.perf_counter() - t0) * 1000.0)
    finally:
        if was_enabled:
            gc.enable()


def run_bench(config: BenchConfig = BenchConfig()) -> BenchReport:
    """Generate, register, mutate and recheck synthetic pages per depth class.

    Detection rates count mutated pages only. Per-page check time is the
    fastest of ``config.repeats`` runs.
    """
    t_start = time.perf_counter()
    results: list[ClassResult] = []
    corpora: list[CorpusResult] = []
    flags: list[str] = []
    subset_violations = 0
    jobs: list[_Job] = []
    for d_max in config.classes:
        rng = random.Random(f"bench:{config.seed}:{d_max}")
        n_mut = round(config.mutation_rate * config.pages_per_class)
        mutated_idx = set(rng.sample(range(config.pages_per_class), n_mut))
        for i in range(config.pages_per_class):
            page = generate_template(d_max, rng.randrange(2**31))
            target = page
            if i in mutated_idx:
                try:
                    _, target = random_mutation(page, rng, config.kinds)
                except Inapplicable:
                    pass
            jobs.append(_Job(d_max, register_page(page), target.html, target is not page))
        perm, sv = _permutation_corpus(d_max, config, rng)
        corpora.extend(perm)
        subset_violations += sv
        coll, sv = _collision_corpus(d_max, config, rng, flags)
        corpora.extend(coll)
        subset_violations += sv
    _time_jobs(jobs, config.modes, config.repeats, random.Random(f"timing:{config.seed}"))
    for d_max in config.classes:
        cls_jobs = [j for j in jobs if j.d_max == d_max]
        n_mutated = sum(j.mutated for j in cls_jobs)
        hits = {m: 0 for m in config.modes}
        false_pos = {m: 0 for m in config.modes}
        for job in cls_jobs:
            seen = {m: _check(job.record, job.html, m) for m in config.modes}
            for m, detected in seen.items():
                if job.mutated:
                    hits[m] += detected
                else:
                    false_pos[m] += detected
            subset_violations += _subset_violation(seen)
        for mode in config.modes:
            rate = _rate(hits[mode], n_mutated)
            if rate is None:
                flags.append(f"degenerate: d_max={d_max} mode={mode.value} has no mutated pages")
            # noise only adds time, so the fastest repeat is the best estimate
            ts = [min(j.samples[mode]) for j in cls_jobs]
            results.append(ClassResult(
                d_max, mode.value, rate,
                statistics.fmean(ts) if ts else 0.0,
                statistics.median(ts) if ts else 0.0,
                n_mutated, false_pos[mode],
            ))
    return BenchReport(tuple(results), config.seed, tuple(corpora), tuple(flags),
                       subset_violations, time.perf_counter() - t_start)


def _subset_violation(seen: dict[CompareMode, bool]) -> int:
    simple = seen.get(CompareMode.SIMPLE)
    full = seen.get(CompareMode.FULL)
    return int(bool(simple) and full is False)


def _permutation_corpus(d_max: int, config: BenchConfig, rng: random.Random
                        ) -> tuple[list[CorpusResult], int]:
    hits = {m: 0 for m in config.modes}
    n = 0
    violations = 0
    for _ in range(config.permutation_pages):
        page = generate_template(d_max, rng.randrange(2**31))
        try:
            _, target = random_mutation(page, rng, (MutationKind.PERMUTE_SIBLINGS,))
        except Inapplicable:
            continue
        record = register_page(page)
        html = target.html
        n += 1
        seen = {}
        for mode in config.modes:
            seen[mode] = _check(record, html, mode)
            hits[mode] += seen[mode]
        violations += _subset_violation(seen)
    return [CorpusResult("permutation", d_max, m.value, _rate(hits[m], n), n)
            for m in config.modes], violations


def _collision_corpus(d_max: int, config: BenchConfig, rng: random.Random, flags: list[str]
                      ) -> tuple[list[CorpusResult], int]:
    hits = {m: 0 for m in config.modes}
    n = 0
    violations = 0
    for _ in range(config.collision_pages):
        try:
            page, twin = collision_pair(d_max, rng.randrange(2**31))
        except Inapplicable as exc:
            flags.append(f"collision corpus empty: {exc}")
            break
        record = register_page(page)
        html = twin.html
        n += 1
        seen = {}
        for mode in config.modes:
            seen[mode] = _check(record, html, mode)
            hits[mode] += seen[mode]
        violations += _subset_violation(seen)
    return [CorpusResult("collision", d_max, m.value, _rate(hits[m], n), n)
            for m in config.modes], violations
