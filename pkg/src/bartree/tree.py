"""Whole-page layout tree, used to anchor labelled attributes."""
from __future__ import annotations

from dataclasses import dataclass, field

from . import _kernels
from .lexer import TagKind, TagStream

PathStep = tuple[str, int, int]  # (tag name, depth, index among siblings)


@dataclass(eq=False)
class LayoutNode:
    name: str
    depth: int
    index: int
    content: tuple[int, int]
    parent: "LayoutNode | None" = field(default=None, repr=False)
    children: list["LayoutNode"] = field(default_factory=list, repr=False)

    def path(self) -> tuple[PathStep, ...]:
        steps: list[PathStep] = []
        node: LayoutNode | None = self
        while node is not None and node.depth >= 0:
            steps.append((node.name, node.depth, node.index))
            node = node.parent
        return tuple(reversed(steps))


def build_layout_tree(stream: TagStream) -> LayoutNode:
    """Tree of counted (layout and unlisted) elements under a virtual root.

    Tags pair left to right; unpaired opens become leaves and stray closes
    are dropped. An unclosed element's content runs to the end of its parent.
    """
    events = [e for e in stream.events if e.counted]
    codes: dict[str, int] = {}
    partner = _kernels.match_pairs(
        [codes.setdefault(e.name, len(codes)) for e in events],
        [e.kind is TagKind.OPEN for e in events],
    )
    root = LayoutNode("#root", -1, 0, (0, len(stream.source)))
    stack = [root]
    for i, e in enumerate(events):
        parent = stack[-1]
        if e.kind is TagKind.OPEN:
            if partner[i] >= 0:
                content = (e.span[1], events[partner[i]].span[0])
            else:
                content = (e.span[1], e.span[1])
            node = LayoutNode(e.name, parent.depth + 1, len(parent.children), content, parent)
            parent.children.append(node)
            if partner[i] >= 0:
                stack.append(node)
        elif partner[i] >= 0:
            stack.pop()
    return root


def find_enclosing(root: LayoutNode, start: int, end: int) -> LayoutNode:
    """Deepest node whose content covers ``[start, end)``; the root if none."""
    node = root
    while True:
        for child in node.children:
            a, b = child.content
            if a <= start and end <= b and a < b:
                node = child
                break
        else:
            return node


def resolve_path(root: LayoutNode, path: tuple[PathStep, ...]) -> LayoutNode | None:
    node = root
    for name, depth, index in path:
        if index >= len(node.children):
            return None
        node = node.children[index]
        if node.name != name or node.depth != depth:
            return None
    return node
