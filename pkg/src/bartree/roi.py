"""Locate the pasted RoI display text, and its labelled sub-RoIs, in a page.

Matching runs over the entity-decoded text of the page with all whitespace
removed, so pasted text matches regardless of how the source wraps lines or
splits words across inline tags. A map from every visible character back to
its source bytes turns a match into byte spans.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import AmbiguousRoi, InvalidRoiSpec, RoiNotFound, SubRoiNotFound
from .lexer import TagStream
from .text import normalize_text, squeeze, visible_chars

__all__ = [
    "RoiSpan",
    "RoiSpec",
    "locate_roi",
    "locate_subrois",
    "normalize_text",
]


@dataclass(frozen=True)
class RoiSpec:
    roi_text: str
    attributes: tuple[tuple[str, str], ...] = ()
    occurrence: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "roi_text", normalize_text(self.roi_text))
        object.__setattr__(
            self,
            "attributes",
            tuple((label, normalize_text(text)) for label, text in self.attributes),
        )
        if not self.roi_text:
            raise InvalidRoiSpec("RoI text is empty")
        labels = [label for label, _ in self.attributes]
        if len(set(labels)) != len(labels):
            raise InvalidRoiSpec(f"duplicate attribute labels in {labels}")
        key = squeeze(self.roi_text)
        for label, text in self.attributes:
            if not text or squeeze(text) not in key:
                raise InvalidRoiSpec(f"attribute {label!r} text is not part of the RoI text")


@dataclass(frozen=True)
class RoiSpan:
    start: int
    end: int
    matched_text: str


@dataclass
class _TextIndex:
    """Whitespace-free page text with per-character provenance."""

    chars: str = ""
    run: list[int] = field(default_factory=list)
    start: list[int] = field(default_factory=list)
    end: list[int] = field(default_factory=list)

    @classmethod
    def build(cls, stream: TagStream, lo: int = 0, hi: int | None = None) -> "_TextIndex":
        idx = cls()
        buf: list[str] = []
        for i, tr in enumerate(stream.text_runs):
            if not tr.text:
                continue
            a, b = tr.span
            if b <= lo or (hi is not None and a >= hi):
                continue
            for ch, s, e in visible_chars(stream.source[a:b], a):
                if s < lo or (hi is not None and e > hi):
                    continue
                buf.append(ch)
                idx.run.append(i)
                idx.start.append(s)
                idx.end.append(e)
        idx.chars = "".join(buf)
        return idx

    def find_all(self, needle: str) -> list[int]:
        hits = []
        k = self.chars.find(needle)
        while k >= 0:
            hits.append(k)
            k = self.chars.find(needle, k + 1)
        return hits


def locate_roi(stream: TagStream, spec: RoiSpec) -> RoiSpan:
    """Span from the start of the run holding the RoI's first character to
    the end of the run holding its last one."""
    idx = _TextIndex.build(stream)
    needle = squeeze(spec.roi_text)
    hits = idx.find_all(needle)
    if not hits:
        raise RoiNotFound(f"RoI text not found: {spec.roi_text[:60]!r}")
    if spec.occurrence is None:
        if len(hits) > 1:
            raise AmbiguousRoi(len(hits))
        k = hits[0]
    else:
        if not 0 <= spec.occurrence < len(hits):
            raise RoiNotFound(
                f"occurrence {spec.occurrence} requested but RoI text occurs {len(hits)} times"
            )
        k = hits[spec.occurrence]
    first = stream.text_runs[idx.run[k]]
    last = stream.text_runs[idx.run[k + len(needle) - 1]]
    return RoiSpan(first.span[0], last.span[1], spec.roi_text)


def locate_subrois(
    stream: TagStream, roi: RoiSpan, spec: RoiSpec
) -> list[tuple[str, RoiSpan]]:
    """Match each attribute in order inside the RoI; spans are character-exact."""
    idx = _TextIndex.build(stream, roi.start, roi.end)
    out: list[tuple[str, RoiSpan]] = []
    cursor = 0
    for label, text in spec.attributes:
        needle = squeeze(text)
        k = idx.chars.find(needle, cursor)
        if k < 0:
            raise SubRoiNotFound(label)
        last = k + len(needle) - 1
        out.append((label, RoiSpan(idx.start[k], idx.end[last], text)))
        cursor = last + 1
    return out
