"""Register targets, recheck them before recrawling, and extract records."""
from __future__ import annotations

import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Callable, Iterable

from .bars import BarParams, Fingerprint, _now, fingerprint
from .detect import (
    Action,
    ChangeReport,
    CompareMode,
    DeltaCase,
    MODE_VARIABLES,
    classify_delta,
    compare,
    decide,
)
from .errors import (
    AmbiguousRoi,
    DegenerateProfile,
    DuplicateTarget,
    FetchError,
    InvalidRatio,
    PatternStale,
    RoiNotFound,
    SubRoiNotFound,
    UnknownTarget,
)
from .fetch import FetchResult, Fetcher
from .lexer import tokenize
from .pipeline import AttributeAnchor, PageAnalysis, analyze, apply_anchors, capture_anchors
from .records import HISTORY_LIMIT, LabeledRecord, TargetConfig, TargetRecord
from .reverse import DepthProfile
from .roi import RoiSpec
from .store import Registry, store_load, store_save

log = logging.getLogger(__name__)

FetchFn = Callable[[str], FetchResult]


@dataclass(frozen=True)
class CheckResult:
    report: ChangeReport
    action: Action
    fingerprint: Fingerprint | None = None
    anchors: dict[str, AttributeAnchor] | None = None
    warning: str = ""


def _not_evaluated(mode: CompareMode, warning: str) -> CheckResult:
    return CheckResult(
        ChangeReport(frozenset(), mode, DeltaCase.NOT_EVALUATED),
        Action.DEFER_AND_WARN,
        warning=warning,
    )


def _fresh_fingerprint(analysis: PageAnalysis, record: TargetRecord,
                       captured_at: str | None) -> tuple[Fingerprint, bool]:
    """Fingerprint the fresh page with the stored params if they still apply.

    Returns the fingerprint and whether it shares the stored params.
    """
    profile = analysis.profile
    up, low = analysis.upper.sigma, analysis.lower.sigma
    text = record.roi_text
    try:
        fp = fingerprint(profile, up, low, record.fingerprint.params,
                         roi_text=text, captured_at=captured_at)
        return fp, True
    except InvalidRatio:
        fp = fingerprint(profile, up, low, None, roi_text=text, captured_at=captured_at)
        return fp, False


def _incomparable_report(old: Fingerprint, new: Fingerprint, mode: CompareMode) -> ChangeReport:
    """Report for a fresh page too deep for the stored ratio.

    Bar areas computed under different params cannot be compared, so they
    count as differing; d_max necessarily differs in this situation.
    """
    differing = set()
    for name in MODE_VARIABLES[mode]:
        if name in ("A_total", "A") or getattr(old, name) != getattr(new, name):
            differing.add(name)
    case = classify_delta(old, new) if mode is CompareMode.FULL_WITH_DELTA else DeltaCase.NOT_EVALUATED
    return ChangeReport(frozenset(differing), mode, case)


def recheck(
    record: TargetRecord,
    html: bytes | str,
    mode: CompareMode | None = None,
    *,
    captured_at: str | None = None,
) -> CheckResult:
    """Compare a freshly fetched page against the stored fingerprint.

    Pure: nothing is written. On ``ReExtractPattern`` the result carries the
    replacement fingerprint and anchors.
    """
    mode = mode or record.config.mode
    try:
        analysis = analyze(html, record.roi_spec(), record.tag_classes)
    except (RoiNotFound, AmbiguousRoi, SubRoiNotFound) as exc:
        return _not_evaluated(mode, f"RoI content missing or unusable: {exc}")
    except DegenerateProfile:
        analysis = None
    if analysis is None:
        new = fingerprint(DepthProfile(()), 0, 0, record.fingerprint.params,
                          roi_text=record.roi_text, captured_at=captured_at)
        same_params = True
        anchors: dict[str, AttributeAnchor] = {}
    else:
        new, same_params = _fresh_fingerprint(analysis, record, captured_at)
        anchors = None  # computed lazily below
    old = record.fingerprint
    report = compare(old, new, mode) if same_params else _incomparable_report(old, new, mode)
    action = decide(report, roi_present=True)
    if action is Action.RE_EXTRACT_PATTERN:
        if anchors is None:
            anchors = capture_anchors(analysis)
        return CheckResult(report, action, new, anchors)
    return CheckResult(report, action)


class Harvester:
    """Target registry bound to a store file.

    Store mutations are serialized by an internal lock; fetching and analysis
    run outside it so checks of distinct targets can proceed in parallel.
    """

    def __init__(self, store_path: str | Path, fetch: FetchFn | None = None,
                 history_limit: int = HISTORY_LIMIT):
        self.store_path = Path(store_path)
        self.fetch = fetch or Fetcher()
        self.history_limit = history_limit
        self._lock = threading.Lock()

    def registry(self) -> Registry:
        return store_load(self.store_path)

    def get(self, target_id: str) -> TargetRecord:
        try:
            return self.registry()[target_id]
        except KeyError:
            raise UnknownTarget(target_id) from None

    def register_target(self, config: TargetConfig, *, html: bytes | None = None,
                        captured_at: str | None = None) -> TargetRecord:
        """Fetch (unless *html* is given), fingerprint and store a new target.

        Nothing is stored when any step fails.
        """
        if config.target_id in self.registry():
            raise DuplicateTarget(config.target_id)
        roi_text = config.read_roi_text()
        if html is None:
            html = self.fetch(config.url).body
        spec = _spec(config, roi_text)
        analysis = analyze(html, spec, config.tag_classes)
        params = config.params or BarParams.default_for(analysis.profile.d_max)
        fp = fingerprint(analysis.profile, analysis.upper.sigma, analysis.lower.sigma, params,
                         roi_text=roi_text, captured_at=captured_at)
        record = TargetRecord(config, spec.roi_text, fp, capture_anchors(analysis))
        with self._lock:
            registry = self.registry()
            if config.target_id in registry:
                raise DuplicateTarget(config.target_id)
            registry[config.target_id] = record
            store_save(registry, self.store_path)
        log.info("registered %s (d_max=%d, A_total=%s)", config.target_id, fp.d_max, fp.A_total)
        return record

    def check_target(self, target_id: str, mode: CompareMode | None = None, *,
                     html: bytes | None = None,
                     captured_at: str | None = None) -> tuple[ChangeReport, Action]:
        record = self.get(target_id)
        mode = mode or record.config.mode
        if html is None:
            try:
                html = self.fetch(record.config.url).body
            except FetchError as exc:
                log.warning("deferring %s: fetch failed: %s", target_id, exc)
                res = _not_evaluated(mode, str(exc))
                return res.report, res.action
        res = recheck(record, html, mode, captured_at=captured_at)
        if res.action is Action.DEFER_AND_WARN:
            log.warning("deferring %s: %s; choose another RoI keyword", target_id, res.warning)
        elif res.action is Action.RE_EXTRACT_PATTERN:
            self._replace(target_id, record, res)
        return res.report, res.action

    def check_all(self, target_ids: Iterable[str] | None = None, mode: CompareMode | None = None,
                  max_workers: int = 4) -> dict[str, tuple[ChangeReport, Action]]:
        ids = list(target_ids) if target_ids is not None else sorted(self.registry())
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            results = pool.map(lambda t: self.check_target(t, mode), ids)
            return dict(zip(ids, results))

    def _replace(self, target_id: str, old: TargetRecord, res: CheckResult) -> None:
        with self._lock:
            registry = self.registry()
            current = registry.get(target_id, old)
            history = (current.history + (current.fingerprint,))[-self.history_limit:]
            registry[target_id] = replace(
                current, fingerprint=res.fingerprint, attribute_anchors=res.anchors, history=history
            )
            store_save(registry, self.store_path)
        log.warning(
            "template change on %s (%s): pattern re-extracted, old fingerprint kept in history",
            target_id, ", ".join(sorted(res.report.differing)),
        )

    def extract_record(self, target_id: str, html: bytes | None = None) -> LabeledRecord:
        record = self.get(target_id)
        url = record.config.url
        if html is None:
            result = self.fetch(url)
            html, url = result.body, result.final_url
        return extract_with(record, html, url)


def extract_with(record: TargetRecord, html: bytes | str, source_url: str = "") -> LabeledRecord:
    stream = tokenize(html, record.tag_classes)
    fields, missing = apply_anchors(stream, dict(record.attribute_anchors))
    if not fields:
        raise PatternStale(
            f"no attribute anchor of {record.config.target_id!r} matches; run a check first"
        )
    warnings = tuple(f"attribute {label!r} not found" for label in missing)
    return LabeledRecord(source_url or record.config.url, _now(), fields, warnings)


def _spec(config: TargetConfig, roi_text: str) -> RoiSpec:
    return RoiSpec(roi_text, config.attributes, config.occurrence)
