"""Target configuration and the persisted per-target record."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from .bars import BarParams, Fingerprint, frac_str, parse_frac, roi_digest
from .detect import CompareMode
from .errors import InvalidRoiSpec
from .fetch import valid_url
from .lexer import DEFAULT_TAG_CLASSES, TagClasses
from .pipeline import AttributeAnchor
from .roi import RoiSpec

HISTORY_LIMIT = 5


@dataclass(frozen=True)
class TargetConfig:
    target_id: str
    url: str
    roi_file: str
    attributes: tuple[tuple[str, str], ...] = ()
    params: BarParams | None = None
    tag_class_overrides: Mapping[str, tuple[str, ...]] | None = None
    mode: CompareMode = CompareMode.FULL_WITH_DELTA
    occurrence: int | None = None

    def __post_init__(self) -> None:
        if not self.target_id:
            raise InvalidRoiSpec("target_id must be non-empty")
        if not valid_url(self.url):
            raise InvalidRoiSpec(f"invalid URL {self.url!r}")

    @property
    def tag_classes(self) -> TagClasses:
        return TagClasses.from_overrides(self.tag_class_overrides)

    def read_roi_text(self) -> str:
        return Path(self.roi_file).read_text(encoding="utf-8")

    def to_dict(self) -> dict[str, Any]:
        return {
            "target_id": self.target_id,
            "url": self.url,
            "roi_file": self.roi_file,
            "attributes": [list(a) for a in self.attributes],
            "params": None
            if self.params is None
            else {"I": frac_str(self.params.I), "r": frac_str(self.params.r)},
            "tag_class_overrides": None
            if self.tag_class_overrides is None
            else {k: list(v) for k, v in self.tag_class_overrides.items()},
            "mode": self.mode.value,
            "occurrence": self.occurrence,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], base_dir: Path | None = None) -> "TargetConfig":
        roi_file = str(data["roi_file"])
        if base_dir is not None and not Path(roi_file).is_absolute():
            roi_file = str(base_dir / roi_file)
        params = data.get("params")
        overrides = data.get("tag_class_overrides")
        return cls(
            target_id=str(data["target_id"]),
            url=str(data["url"]),
            roi_file=roi_file,
            attributes=tuple((str(k), str(v)) for k, v in data.get("attributes", ())),
            params=None if params is None else BarParams(_frac(params["I"]), _frac(params["r"])),
            tag_class_overrides=None
            if overrides is None
            else {k: tuple(v) for k, v in overrides.items()},
            mode=CompareMode(data.get("mode", CompareMode.FULL_WITH_DELTA.value)),
            occurrence=data.get("occurrence"),
        )

    @classmethod
    def load(cls, path: str | Path) -> "TargetConfig":
        path = Path(path)
        return cls.from_dict(json.loads(path.read_text(encoding="utf-8")), path.parent)


def _frac(v: Any):
    return parse_frac(v) if isinstance(v, str) and "/" in v else parse_frac(f"{v}/1")


@dataclass(frozen=True)
class TargetRecord:
    config: TargetConfig
    roi_text: str
    fingerprint: Fingerprint
    attribute_anchors: Mapping[str, AttributeAnchor]
    history: tuple[Fingerprint, ...] = ()

    def roi_spec(self) -> RoiSpec:
        return RoiSpec(self.roi_text, self.config.attributes, self.config.occurrence)

    @property
    def tag_classes(self) -> TagClasses:
        if self.config.tag_class_overrides is None:
            return DEFAULT_TAG_CLASSES
        return self.config.tag_classes

    def to_dict(self) -> dict[str, Any]:
        return {
            "config": self.config.to_dict(),
            "roi_text": self.roi_text,
            "fingerprint": self.fingerprint.to_dict(),
            "attribute_anchors": {k: a.to_dict() for k, a in self.attribute_anchors.items()},
            "history": [fp.to_dict() for fp in self.history],
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "TargetRecord":
        rec = cls(
            config=TargetConfig.from_dict(data["config"]),
            roi_text=str(data["roi_text"]),
            fingerprint=Fingerprint.from_dict(data["fingerprint"]),
            attribute_anchors={
                str(k): AttributeAnchor.from_dict(v) for k, v in data["attribute_anchors"].items()
            },
            history=tuple(Fingerprint.from_dict(h) for h in data.get("history", ())),
        )
        if rec.fingerprint.roi_digest != roi_digest(rec.roi_text):
            raise ValueError("fingerprint roi_digest does not match the stored RoI text")
        return rec


@dataclass(frozen=True)
class LabeledRecord:
    source_url: str
    extracted_at: str
    fields: Mapping[str, str]
    warnings: tuple[str, ...] = field(default=())

    def to_dict(self) -> dict[str, Any]:
        return {
            "source_url": self.source_url,
            "extracted_at": self.extracted_at,
            "fields": dict(self.fields),
            "warnings": list(self.warnings),
        }
