"""Reverse-algorithm core.

The cleaned page is cut into the part above the RoI and the part below it.
Each part is scanned outward from the RoI, pairing tags that open and close
inside the part; what is left unpaired is the structure that encloses the
RoI. The tag surplus of each part (``sigma``) and its difference between
parts (``delta``) classify the template, and the two parts together give the
per-depth node counts that feed the bar-tree.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from . import _kernels
from .errors import DegenerateProfile
from .lexer import CleanPolicy, TagEvent, TagKind, TagStream, clean
from .roi import RoiSpan


class Side(enum.Enum):
    UPPER = "upper"
    LOWER = "lower"


class Symmetry(enum.Enum):
    FULLY_SYMMETRIC = "fully-symmetric"
    LOWER_ASYMMETRIC = "lower-asymmetric"
    UPPER_ASYMMETRIC = "upper-asymmetric"


@dataclass(frozen=True)
class Parts:
    """Layout-only streams above and below the RoI.

    ``inner`` keeps the layout tags inside the RoI; they never enter tag
    counting but let the depth profile nest tags that straddle the RoI
    boundary.
    """

    upper: TagStream
    lower: TagStream
    inner: TagStream = TagStream()


@dataclass(frozen=True)
class TagCounts:
    n_ot: int
    n_ct: int

    @property
    def sigma(self) -> int:
        return self.n_ot - self.n_ct


@dataclass(frozen=True)
class SymmetryClass:
    delta: int
    symmetry: Symmetry


@dataclass(frozen=True)
class DepthProfile:
    """Node counts per depth; depth 0 holds the top-level elements.

    ``roi_path[d]`` is the left-to-right position, among the nodes at depth
    ``d``, of the RoI's ancestor at that depth. It records which bar the
    next-deeper bar nests in and does not enter the bar-tree formulas.
    """

    P: tuple[int, ...]
    roi_depth: int = 0
    roi_path: tuple[int, ...] = ()

    @property
    def d_max(self) -> int:
        return len(self.P)

    def __post_init__(self) -> None:
        if any(p < 1 for p in self.P):
            raise ValueError(f"every depth needs at least one node: {self.P}")


def split(stream: TagStream, roi: RoiSpan) -> Parts:
    upper = TagStream(
        tuple(e for e in stream.events if e.span[1] <= roi.start), (), stream.source
    )
    lower = TagStream(
        tuple(e for e in stream.events if e.span[0] >= roi.end), (), stream.source
    )
    inner = TagStream(
        tuple(e for e in stream.events if e.span[0] >= roi.start and e.span[1] <= roi.end),
        (),
        stream.source,
    )
    return Parts(
        clean(upper, CleanPolicy.KEEP_LAYOUT_ONLY),
        clean(lower, CleanPolicy.KEEP_LAYOUT_ONLY),
        clean(inner, CleanPolicy.KEEP_LAYOUT_ONLY),
    )


def _counted(stream: TagStream) -> list[TagEvent]:
    return [e for e in stream.events if e.counted]


def _pairs(events: list[TagEvent], side: Side) -> list[int]:
    """Partner index of each event (-1 when unpaired), scanning from the RoI."""
    codes: dict[str, int] = {}
    names = [codes.setdefault(e.name, len(codes)) for e in events]
    if side is Side.LOWER:
        return _kernels.match_pairs(names, [e.kind is TagKind.OPEN for e in events])
    n = len(events)
    rev = _kernels.match_pairs(
        names[::-1], [e.kind is TagKind.CLOSE for e in reversed(events)]
    )
    return [-1 if p < 0 else n - 1 - p for p in reversed(rev)]


def count_tags(part: TagStream, side: Side = Side.UPPER) -> TagCounts:
    """Open-tags are the unpaired tags of the part, closed-tags the pairs.

    The upper part is scanned right to left and the lower part left to right,
    so pairing always starts at the tags nearest the RoI.
    """
    events = _counted(part)
    partner = _pairs(events, side)
    unpaired = partner.count(-1)
    return TagCounts(unpaired, (len(events) - unpaired) // 2)


def symmetry(sigma_upper: int, sigma_lower: int) -> SymmetryClass:
    delta = sigma_upper - sigma_lower
    if delta == 0:
        cls = Symmetry.FULLY_SYMMETRIC
    elif delta < 0:
        cls = Symmetry.LOWER_ASYMMETRIC
    else:
        cls = Symmetry.UPPER_ASYMMETRIC
    return SymmetryClass(delta, cls)


def depth_profile(parts: Parts) -> DepthProfile:
    """Count nodes per depth in the tree the cleaned page describes.

    Tags pair left to right across the whole page, RoI interior included, so
    an element opened above the RoI and closed inside it (or opened inside
    and closed below) nests correctly. A node counts when at least one of its
    tags lies outside the RoI; elements wholly inside the RoI are content,
    not template. Unpaired opens are leaves and stray closes are ignored.
    The nodes still open where the RoI starts form its ancestor chain.
    """
    upper, inner, lower = _counted(parts.upper), _counted(parts.inner), _counted(parts.lower)
    if not upper and not lower:
        raise DegenerateProfile("no layout tags on either side of the RoI")
    events = upper + inner + lower
    lo, hi = len(upper), len(upper) + len(inner)
    codes: dict[str, int] = {}
    partner = _kernels.match_pairs(
        [codes.setdefault(e.name, len(codes)) for e in events],
        [e.kind is TagKind.OPEN for e in events],
    )
    counts: list[int] = []
    position: dict[int, int] = {}  # open index -> left-to-right position at its depth
    stack: list[int] = []
    roi_depth, roi_path = 0, ()
    for i, e in enumerate(events):
        if i == lo:
            roi_depth = len(stack)
            roi_path = tuple(position.get(j, -1) for j in stack)
        if e.kind is TagKind.OPEN:
            j = partner[i]
            outside = not lo <= i < hi or (j >= 0 and not lo <= j < hi)
            if outside:
                depth = len(stack)
                if depth == len(counts):
                    counts.append(0)
                position[i] = counts[depth]
                counts[depth] += 1
            if j >= 0:
                stack.append(i)
        elif partner[i] >= 0:
            stack.pop()
    if lo == len(events):
        roi_depth = len(stack)
        roi_path = tuple(position.get(j, -1) for j in stack)
    if not counts:
        raise DegenerateProfile("no structural nodes around the RoI")
    return DepthProfile(tuple(counts), roi_depth, roi_path)
