"""Template change detection by comparing stored and fresh fingerprints."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .bars import Fingerprint
from .errors import ParamMismatch


class CompareMode(enum.Enum):
    SIMPLE = "simple"
    FULL = "full"
    FULL_WITH_DELTA = "full-delta"


class DeltaCase(enum.Enum):
    NO_CHANGE = "NoChange"
    SYMMETRIC_SIMULTANEOUS = "SymmetricSimultaneous"
    UPPER_ONLY = "UpperOnly"
    LOWER_ONLY = "LowerOnly"
    BOTH_DIFFERENT = "BothDifferent"
    NOT_EVALUATED = "NotEvaluated"


class Action(enum.Enum):
    PROCEED = "Proceed"
    RE_EXTRACT_PATTERN = "ReExtractPattern"
    DEFER_AND_WARN = "DeferAndWarn"


MODE_VARIABLES: dict[CompareMode, tuple[str, ...]] = {
    CompareMode.SIMPLE: ("d_max", "A_total"),
    CompareMode.FULL: ("d_max", "A_total", "P", "A"),
    CompareMode.FULL_WITH_DELTA: ("d_max", "A_total", "P", "A", "delta", "sigma_upper", "sigma_lower"),
}


class UnreachableDeltaCase(AssertionError):
    """The fingerprints violate delta == sigma_upper - sigma_lower."""


@dataclass(frozen=True)
class ChangeReport:
    differing: frozenset[str]
    mode: CompareMode
    delta_case: DeltaCase = DeltaCase.NOT_EVALUATED
    changed: bool = field(init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "changed", bool(self.differing))

    def to_dict(self) -> dict:
        return {
            "changed": self.changed,
            "differing": sorted(self.differing),
            "delta_case": self.delta_case.value,
            "mode": self.mode.value,
        }


def classify_delta(old: Fingerprint, new: Fingerprint) -> DeltaCase:
    same_delta = old.delta == new.delta
    same_up = old.sigma_upper == new.sigma_upper
    same_low = old.sigma_lower == new.sigma_lower
    if same_delta and same_up and same_low:
        return DeltaCase.NO_CHANGE
    if same_delta and not same_up and not same_low:
        return DeltaCase.SYMMETRIC_SIMULTANEOUS
    if not same_delta and not same_up and same_low:
        return DeltaCase.UPPER_ONLY
    if not same_delta and same_up and not same_low:
        return DeltaCase.LOWER_ONLY
    if not same_delta and not same_up and not same_low:
        return DeltaCase.BOTH_DIFFERENT
    # delta equal with one sigma moved, or delta moved with both sigmas fixed
    raise UnreachableDeltaCase(
        f"inconsistent fingerprints: old (delta={old.delta}, up={old.sigma_upper}, "
        f"low={old.sigma_lower}) new (delta={new.delta}, up={new.sigma_upper}, "
        f"low={new.sigma_lower})"
    )


def compare(old: Fingerprint, new: Fingerprint, mode: CompareMode) -> ChangeReport:
    if old.params != new.params:
        raise ParamMismatch(f"stored params {old.params} != fresh params {new.params}")
    differing = frozenset(
        name for name in MODE_VARIABLES[mode] if getattr(old, name) != getattr(new, name)
    )
    case = DeltaCase.NOT_EVALUATED
    if mode is CompareMode.FULL_WITH_DELTA:
        case = classify_delta(old, new)
    return ChangeReport(differing, mode, case)


def decide(report: ChangeReport, roi_present: bool) -> Action:
    if not roi_present:
        return Action.DEFER_AND_WARN
    if report.changed:
        return Action.RE_EXTRACT_PATTERN
    return Action.PROCEED
