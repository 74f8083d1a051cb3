"""Tolerant HTML tag lexer and the two cleaning passes."""
from __future__ import annotations

import enum
import html
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from . import _kernels
from .text import decode, normalize_text


class TagKind(enum.Enum):
    OPEN = "open"
    CLOSE = "close"
    VOID = "void"


class TagClass(enum.Enum):
    TEXT_FORMAT = "text-format"
    LAYOUT_FORMAT = "layout-format"
    OTHER = "other"


class CleanPolicy(enum.Enum):
    STRIP_TEXT_FORMAT = "strip-text-format"
    KEEP_LAYOUT_ONLY = "keep-layout-only"


TEXT_FORMAT_TAGS = frozenset(
    "b i em strong u small sub sup font mark s strike tt".split()
)
LAYOUT_FORMAT_TAGS = frozenset(
    "html body div table tr td th thead tbody ul ol li span p form section "
    "header footer nav h1 h2 h3 h4 h5 h6".split()
)
VOID_TAGS = frozenset("br hr img input meta link".split())


@dataclass(frozen=True)
class TagClasses:
    """The configurable tag lists. Unlisted names classify as OTHER."""

    text_format: frozenset[str] = TEXT_FORMAT_TAGS
    layout_format: frozenset[str] = LAYOUT_FORMAT_TAGS
    void: frozenset[str] = VOID_TAGS

    def classify(self, name: str) -> TagClass:
        if name in self.text_format:
            return TagClass.TEXT_FORMAT
        if name in self.layout_format:
            return TagClass.LAYOUT_FORMAT
        return TagClass.OTHER

    @classmethod
    def from_overrides(cls, overrides: Mapping[str, Iterable[str]] | None) -> "TagClasses":
        if not overrides:
            return DEFAULT_TAG_CLASSES
        base = DEFAULT_TAG_CLASSES
        return cls(
            text_format=frozenset(overrides.get("text_format", base.text_format)),
            layout_format=frozenset(overrides.get("layout_format", base.layout_format)),
            void=frozenset(overrides.get("void", base.void)),
        )

    def to_overrides(self) -> dict[str, list[str]]:
        return {
            "text_format": sorted(self.text_format),
            "layout_format": sorted(self.layout_format),
            "void": sorted(self.void),
        }


DEFAULT_TAG_CLASSES = TagClasses()


def classify_tag(name: str, classes: TagClasses = DEFAULT_TAG_CLASSES) -> TagClass:
    return classes.classify(name)


@dataclass(frozen=True, slots=True)
class TagEvent:
    name: str
    kind: TagKind
    tag_class: TagClass
    span: tuple[int, int]

    @property
    def counted(self) -> bool:
        """Whether the event takes part in open/closed tag counting."""
        return self.kind is not TagKind.VOID and self.tag_class is not TagClass.TEXT_FORMAT


@dataclass(frozen=True, slots=True)
class TextRun:
    span: tuple[int, int]
    text: str


@dataclass(frozen=True)
class TagStream:
    events: tuple[TagEvent, ...] = ()
    text_runs: tuple[TextRun, ...] = ()
    source: bytes = field(default=b"", repr=False, compare=False)

    def items(self) -> Iterator[TagEvent | TextRun]:
        """Events and text runs merged in document order."""
        ev, tr = self.events, self.text_runs
        i = j = 0
        while i < len(ev) or j < len(tr):
            if j >= len(tr) or (i < len(ev) and ev[i].span[0] < tr[j].span[0]):
                yield ev[i]
                i += 1
            else:
                yield tr[j]
                j += 1

    def window(self, start: int, end: int) -> "TagStream":
        """Sub-stream of items lying entirely inside ``[start, end)``."""
        return TagStream(
            tuple(e for e in self.events if e.span[0] >= start and e.span[1] <= end),
            tuple(t for t in self.text_runs if t.span[0] >= start and t.span[1] <= end),
            self.source,
        )


def tokenize(source: bytes | str, classes: TagClasses = DEFAULT_TAG_CLASSES) -> TagStream:
    """Lex *source* into tag events and text runs.

    Never fails: anything that does not lex as a tag stays text.
    """
    if isinstance(source, str):
        source = source.encode("utf-8", "surrogateescape")
    events: list[TagEvent] = []
    runs: list[TextRun] = []
    for kind, start, end, ns, ne in _kernels.scan_markup(source):
        if kind == _kernels.TEXT:
            runs.append(TextRun((start, end), normalize_text(decode(source[start:end]))))
            continue
        name = source[ns:ne].decode("ascii").lower()
        if name in classes.void:
            tk = TagKind.VOID
        elif kind == _kernels.OPEN:
            tk = TagKind.OPEN
        else:
            tk = TagKind.CLOSE
        events.append(TagEvent(name, tk, classes.classify(name), (start, end)))
    return TagStream(tuple(events), tuple(runs), source)


def clean(stream: TagStream, policy: CleanPolicy) -> TagStream:
    events = tuple(e for e in stream.events if e.tag_class is not TagClass.TEXT_FORMAT)
    if policy is CleanPolicy.KEEP_LAYOUT_ONLY:
        return TagStream(events, (), stream.source)
    return TagStream(events, stream.text_runs, stream.source)


def serialize(stream: TagStream) -> str:
    """Canonical markup for *stream*: bare tags and escaped normalized text."""
    parts: list[str] = []
    pending: list[TextRun] = []

    def flush() -> None:
        # runs split only by skipped markup read as one run once re-lexed
        if pending:
            raw = "".join(decode(stream.source[r.span[0]:r.span[1]]) for r in pending)
            text = normalize_text(raw) if stream.source else " ".join(r.text for r in pending)
            parts.append(html.escape(text, quote=False) if text else " ")
            pending.clear()

    for item in stream.items():
        if isinstance(item, TextRun):
            pending.append(item)
            continue
        flush()
        parts.append(f"</{item.name}>" if item.kind is TagKind.CLOSE else f"<{item.name}>")
    flush()
    return "".join(parts)


def render_text(stream: TagStream, start: int = 0, end: int | None = None) -> str:
    """Display text of the source range ``[start, end)``.

    Text runs are clipped to the range. Runs separated only by text-format
    tags are joined directly; any other tag between them becomes a space.
    """
    if end is None:
        end = len(stream.source)
    parts: list[str] = []
    gap = False
    for item in stream.items():
        a, b = item.span
        if b <= start:
            continue
        if a >= end:
            break
        if isinstance(item, TextRun):
            if gap and parts:
                parts.append(" ")
            parts.append(decode(stream.source[max(a, start):min(b, end)]))
            gap = False
        elif item.tag_class is not TagClass.TEXT_FORMAT:
            gap = True
    return normalize_text("".join(parts))
