"""The offline setup pipeline: page bytes plus RoI in, fingerprint out."""
from __future__ import annotations

from dataclasses import dataclass

from .bars import BarParams, Fingerprint, fingerprint
from .lexer import DEFAULT_TAG_CLASSES, TagClasses, TagStream, render_text, tokenize
from .reverse import (
    DepthProfile,
    Parts,
    Side,
    SymmetryClass,
    TagCounts,
    count_tags,
    depth_profile,
    split,
    symmetry,
)
from .roi import RoiSpan, RoiSpec, locate_roi, locate_subrois
from .tree import PathStep, build_layout_tree, find_enclosing, resolve_path


@dataclass(frozen=True)
class PageAnalysis:
    stream: TagStream
    roi: RoiSpan
    subrois: tuple[tuple[str, RoiSpan], ...]
    parts: Parts
    upper: TagCounts
    lower: TagCounts
    symmetry: SymmetryClass
    profile: DepthProfile


def analyze(
    html: bytes | str, spec: RoiSpec, classes: TagClasses = DEFAULT_TAG_CLASSES
) -> PageAnalysis:
    """Run lexing, RoI location, splitting and counting on one page.

    Raises the RoI errors and :class:`DegenerateProfile` unchanged.
    """
    stream = tokenize(html, classes)
    roi = locate_roi(stream, spec)
    subrois = tuple(locate_subrois(stream, roi, spec))
    parts = split(stream, roi)
    up = count_tags(parts.upper, Side.UPPER)
    low = count_tags(parts.lower, Side.LOWER)
    return PageAnalysis(
        stream, roi, subrois, parts, up, low, symmetry(up.sigma, low.sigma), depth_profile(parts)
    )


def page_fingerprint(
    analysis: PageAnalysis,
    params: BarParams | None = None,
    *,
    captured_at: str | None = None,
) -> Fingerprint:
    return fingerprint(
        analysis.profile,
        analysis.upper.sigma,
        analysis.lower.sigma,
        params,
        roi_text=analysis.roi.matched_text,
        captured_at=captured_at,
    )


@dataclass(frozen=True)
class AttributeAnchor:
    """Where a labelled attribute sits in the layout tree of the setup page.

    ``prefix`` and ``suffix`` are the node's own text before and after the
    attribute, e.g. a ``"Title:"`` label sharing the node.
    """

    path: tuple[PathStep, ...]
    prefix: str = ""
    suffix: str = ""

    def to_dict(self) -> dict:
        return {"path": [list(step) for step in self.path], "prefix": self.prefix, "suffix": self.suffix}

    @classmethod
    def from_dict(cls, data: dict) -> "AttributeAnchor":
        path = tuple((str(n), int(d), int(i)) for n, d, i in data["path"])
        return cls(path, str(data.get("prefix", "")), str(data.get("suffix", "")))


def capture_anchors(analysis: PageAnalysis) -> dict[str, AttributeAnchor]:
    stream = analysis.stream
    root = build_layout_tree(stream)
    anchors = {}
    for label, span in analysis.subrois:
        node = find_enclosing(root, span.start, span.end)
        lo, hi = node.content
        anchors[label] = AttributeAnchor(
            node.path(),
            render_text(stream, lo, span.start),
            render_text(stream, span.end, hi),
        )
    return anchors


def apply_anchors(
    stream: TagStream, anchors: dict[str, AttributeAnchor]
) -> tuple[dict[str, str], list[str]]:
    """Extract the text of each anchored attribute from *stream*.

    Returns ``(fields, missing)``; an attribute is missing when its path does
    not resolve or the node text lacks the stored prefix/suffix.
    """
    root = build_layout_tree(stream)
    fields: dict[str, str] = {}
    missing: list[str] = []
    for label, anchor in anchors.items():
        node = resolve_path(root, anchor.path)
        if node is None:
            missing.append(label)
            continue
        text = render_text(stream, *node.content)
        if anchor.prefix:
            if not text.startswith(anchor.prefix):
                missing.append(label)
                continue
            text = text[len(anchor.prefix):].strip()
        if anchor.suffix:
            if not text.endswith(anchor.suffix):
                missing.append(label)
                continue
            text = text[: len(text) - len(anchor.suffix)].strip()
        if not text:
            missing.append(label)
            continue
        fields[label] = text
    return fields, missing
