"""Synthetic template pages and structural mutations for benchmarking.

A page is a random tree of layout elements with ``P[d]`` nodes at depth
``d`` and one RoI sentence placed in a host node. Pages are rendered from
the tree model, so every mutation is an exact tree edit whose effect on the
depth profile is known in advance.
"""
from __future__ import annotations

import copy
import functools
import enum
import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .bars import BarParams, total_area
from .errors import Inapplicable
from .reverse import DepthProfile

LAYOUT_TAGS = ("div", "section", "span", "ul", "li", "td", "p", "nav", "table", "tr")
FILLER = (
    "Lorem ipsum dolor sit amet",
    "Consectetur adipiscing elit",
    "Sed do eiusmod tempor",
    "Ut enim ad minim veniam",
    "Quis nostrud exercitation",
)
MAX_DEPTH = 25


class MutationKind(enum.Enum):
    INSERT_NODE = "insert-node"
    DELETE_NODE = "delete-node"
    PERMUTE_SIBLINGS = "permute-siblings"
    SYMMETRIC_DUAL_EDIT = "symmetric-dual-edit"


class MutationSide(enum.Enum):
    UPPER = "upper"
    LOWER = "lower"
    BOTH = "both"


@dataclass(frozen=True)
class Mutation:
    kind: MutationKind
    side: MutationSide
    depth: int


@dataclass
class Node:
    tag: str
    children: list["Node"] = field(default_factory=list)
    text: str = ""
    # index among children where the RoI sentence sits; -1 when not the host
    roi_slot: int = -1


@dataclass
class SyntheticPage:
    roots: list[Node]
    roi_text: str
    seed: int

    @property
    def html(self) -> str:
        return render(self)

    @property
    def profile(self) -> DepthProfile:
        return ground_truth(self)


def _roi_sentence(seed: int, d_max: int) -> str:
    return f"Synthetic record {seed}-{d_max}: measured template stability of harvested source pages."


def _chain_to_host(roots: list[Node]) -> list[tuple[list[Node], int]]:
    """(sibling list, index) pairs from the top level down to the RoI host."""

    def search(nodes: list[Node]) -> list[tuple[list[Node], int]] | None:
        for i, n in enumerate(nodes):
            if n.roi_slot >= 0:
                return [(nodes, i)]
            sub = search(n.children)
            if sub is not None:
                return [(nodes, i)] + sub
        return None

    chain = search(roots)
    if chain is None:
        raise ValueError("page has no RoI host")
    return chain


def build_page(P: list[int] | tuple[int, ...], host_depth: int, seed: int,
               roi_text: str | None = None) -> SyntheticPage:
    """Random tree realizing exactly the depth counts *P*, RoI at *host_depth*."""
    rng = random.Random(seed)
    levels: list[list[Node]] = []
    for d, count in enumerate(P):
        nodes = [Node(rng.choice(LAYOUT_TAGS)) for _ in range(count)]
        if d > 0:
            parents = levels[d - 1]
            for n in nodes:
                parents[rng.randrange(len(parents))].children.append(n)
        levels.append(nodes)
    for nodes in levels:
        for n in nodes:
            if not n.children or rng.random() < 0.3:
                n.text = rng.choice(FILLER)
    host = rng.choice(levels[host_depth])
    host.roi_slot = rng.randint(0, len(host.children))
    return SyntheticPage(levels[0], roi_text or _roi_sentence(seed, len(P)), seed)


def generate_template(d_max: int, seed: int) -> SyntheticPage:
    """Page with *d_max* levels, random ``P[d]`` in 1..4, deterministic in *seed*."""
    if not 1 <= d_max <= MAX_DEPTH:
        raise ValueError(f"d_max must be in [1, {MAX_DEPTH}], got {d_max}")
    rng = random.Random(f"template:{d_max}:{seed}")
    # one level means one wrapper around the RoI
    P = [1] if d_max == 1 else [rng.randint(1, 4) for _ in range(d_max)]
    host_depth = rng.randrange(d_max // 2, d_max)
    return build_page(P, host_depth, rng.randrange(2**31), _roi_sentence(seed, d_max))


def chain_page(d_max: int, seed: int = 0) -> SyntheticPage:
    """One element per depth, RoI in the deepest one."""
    return build_page([1] * d_max, d_max - 1, seed, _roi_sentence(seed, d_max))


def render(page: SyntheticPage) -> str:
    rng = random.Random(f"render:{page.seed}")
    out = ["<!DOCTYPE html>\n<!-- generated template -->\n"]

    def emit(node: Node, indent: int) -> None:
        pad = "  " * indent
        cls = f' class="c{rng.randrange(100)}"' if rng.random() < 0.5 else ""
        out.append(f"{pad}<{node.tag}{cls}>")
        if node.text:
            if rng.random() < 0.3:
                head, _, tail = node.text.partition(" ")
                out.append(f"<b>{head}</b> {tail}")
            else:
                out.append(node.text)
            if rng.random() < 0.2:
                out.append("<br>")
        out.append("\n")
        for i, child in enumerate(node.children):
            if i == node.roi_slot:
                out.append(f"{pad}  {page.roi_text}\n")
            emit(child, indent + 1)
        if node.roi_slot == len(node.children):
            out.append(f"{pad}  {page.roi_text}\n")
        out.append(f"{pad}</{node.tag}>\n")

    for root in page.roots:
        emit(root, 0)
    return "".join(out)


def ground_truth(page: SyntheticPage) -> DepthProfile:
    counts: list[int] = []
    position: dict[int, int] = {}

    def walk(nodes: list[Node], depth: int) -> None:
        for n in nodes:
            if depth == len(counts):
                counts.append(0)
            position[id(n)] = counts[depth]
            counts[depth] += 1
            walk(n.children, depth + 1)

    walk(page.roots, 0)
    chain = _chain_to_host(page.roots)
    path = tuple(position[id(nodes[i])] for nodes, i in chain)
    return DepthProfile(tuple(counts), len(chain), path)


# -- mutations ---------------------------------------------------------------


def _insertion_points(page: SyntheticPage, side: MutationSide, depth: int
                      ) -> list[tuple[list[Node], int]]:
    """(children list, index) slots where a new node lands at *depth* on *side*."""
    chain = _chain_to_host(page.roots)
    on_chain = {id(nodes[i]) for nodes, i in chain}
    slots: list[tuple[list[Node], int]] = []

    def straddle(siblings: list[Node], branch: int) -> None:
        if side is MutationSide.UPPER:
            slots.extend((siblings, k) for k in range(0, branch + 1))
        else:
            slots.extend((siblings, k) for k in range(branch + 1, len(siblings) + 1))

    if depth == 0:
        straddle(page.roots, chain[0][1])
        return slots
    upper = True

    def walk(nodes: list[Node], d: int) -> None:
        nonlocal upper
        for n in nodes:
            if d == depth - 1:
                if id(n) in on_chain:
                    if n.roi_slot >= 0:
                        lo, hi = (0, n.roi_slot) if side is MutationSide.UPPER else (
                            n.roi_slot, len(n.children))
                        slots.extend((n.children, k) for k in range(lo, hi + 1))
                    else:
                        branch = next(k for k, c in enumerate(n.children) if id(c) in on_chain)
                        straddle(n.children, branch)
                elif upper == (side is MutationSide.UPPER):
                    slots.extend((n.children, k) for k in range(len(n.children) + 1))
            if n.roi_slot >= 0:
                walk(n.children[: n.roi_slot], d + 1)
                upper = False
                walk(n.children[n.roi_slot:], d + 1)
            elif d < depth - 1 or id(n) in on_chain:
                walk(n.children, d + 1)

    walk(page.roots, 0)
    return slots


def _side_nodes(page: SyntheticPage, side: MutationSide, depth: int
                ) -> list[tuple[list[Node], int]]:
    """Nodes at *depth* lying wholly on *side* of the RoI."""
    chain = _chain_to_host(page.roots)
    on_chain = {id(nodes[i]) for nodes, i in chain}
    found: list[tuple[list[Node], int]] = []
    upper = True

    def walk(nodes: list[Node], d: int, lo: int = 0, hi: int | None = None) -> None:
        nonlocal upper
        for i in range(lo, len(nodes) if hi is None else hi):
            n = nodes[i]
            if d == depth and id(n) not in on_chain and upper == (side is MutationSide.UPPER):
                found.append((nodes, i))
            if id(n) in on_chain and n.roi_slot >= 0:
                walk(n.children, d + 1, 0, n.roi_slot)
                upper = False
                walk(n.children, d + 1, n.roi_slot)
            elif d < depth or id(n) in on_chain:
                walk(n.children, d + 1)

    walk(page.roots, 0)
    return found


def _subtree_pairs(node: Node) -> int:
    return 1 + sum(_subtree_pairs(c) for c in node.children)


def _new_node(rng: random.Random) -> Node:
    return Node(rng.choice(LAYOUT_TAGS), text="Inserted banner " + rng.choice(FILLER))


def _insert(page: SyntheticPage, side: MutationSide, depth: int, rng: random.Random) -> None:
    slots = _insertion_points(page, side, depth)
    if not slots:
        raise Inapplicable(f"no slot at depth {depth} on the {side.value} side")
    siblings, k = rng.choice(slots)
    node = _new_node(rng)
    # keep the host's RoI slot pointing at the same gap
    for n in _all_nodes(page.roots):
        if n.children is siblings and n.roi_slot >= 0 and (
                k < n.roi_slot or (k == n.roi_slot and side is MutationSide.UPPER)):
            n.roi_slot += 1
            break
    siblings.insert(k, node)


def _all_nodes(nodes: list[Node]):
    for n in nodes:
        yield n
        yield from _all_nodes(n.children)


def mutate(page: SyntheticPage, mutation: Mutation, seed: int) -> SyntheticPage:
    """Apply one structural edit outside the RoI sentence; returns a new page."""
    rng = random.Random(f"mutate:{seed}")
    new = copy.deepcopy(page)
    d_max = ground_truth(page).d_max
    kind, side, depth = mutation.kind, mutation.side, mutation.depth
    if depth < 0 or depth > d_max:
        raise Inapplicable(f"depth {depth} outside 0..{d_max}")
    if kind is MutationKind.SYMMETRIC_DUAL_EDIT:
        if side is not MutationSide.BOTH:
            raise Inapplicable("a symmetric dual edit applies to both sides")
        _insert(new, MutationSide.UPPER, depth, rng)
        _insert(new, MutationSide.LOWER, depth, rng)
        return new
    if side is MutationSide.BOTH:
        raise Inapplicable(f"{kind.value} needs a single side")
    if kind is MutationKind.INSERT_NODE:
        _insert(new, side, depth, rng)
    elif kind is MutationKind.DELETE_NODE:
        victims = _side_nodes(new, side, depth)
        if not victims:
            raise Inapplicable(f"no deletable node at depth {depth} on the {side.value} side")
        siblings, i = rng.choice(victims)
        for n in _all_nodes(new.roots):
            if n.children is siblings and n.roi_slot > i:
                n.roi_slot -= 1
                break
        del siblings[i]
    elif kind is MutationKind.PERMUTE_SIBLINGS:
        _permute(new, side, depth, d_max, rng)
    return new


def _permute(page: SyntheticPage, side: MutationSide, depth: int, d_max: int,
             rng: random.Random) -> None:
    """Move a sibling at *depth* from *side* across the RoI branch.

    The depth counts are untouched; only the order of nodes at that depth
    changes relative to the RoI.
    """
    if depth >= d_max or ground_truth(page).P[depth] < 2:
        raise Inapplicable(f"permuting needs at least two nodes at depth {depth}")
    chain = _chain_to_host(page.roots)
    # sibling lists that straddle the RoI at this depth
    if depth < len(chain):
        siblings, branch = chain[depth]
        host = None
    elif depth == len(chain):
        hs, hi = chain[-1]
        host = hs[hi]
        siblings, branch = host.children, host.roi_slot
    else:
        raise Inapplicable(f"depth {depth} is below the RoI host")
    if host is None:
        upper_idx = list(range(branch))
        lower_idx = list(range(branch + 1, len(siblings)))
    else:
        upper_idx = list(range(branch))
        lower_idx = list(range(branch, len(siblings)))
    src = upper_idx if side is MutationSide.UPPER else lower_idx
    if not src:
        raise Inapplicable(f"no sibling on the {side.value} side at depth {depth}")
    i = rng.choice(src)
    node = siblings.pop(i)
    if host is None:
        if side is MutationSide.UPPER:
            branch -= 1
            siblings.insert(branch + 1 + rng.randint(0, len(siblings) - branch - 1), node)
        else:
            siblings.insert(rng.randint(0, branch), node)
    else:
        if side is MutationSide.UPPER:
            host.roi_slot -= 1
            siblings.insert(rng.randint(host.roi_slot, len(siblings)), node)
        else:
            siblings.insert(rng.randint(0, host.roi_slot), node)
            host.roi_slot += 1


def random_mutation(page: SyntheticPage, rng: random.Random,
                    kinds: tuple[MutationKind, ...] = tuple(MutationKind),
                    attempts: int = 200) -> tuple[Mutation, SyntheticPage]:
    """Draw mutations until one applies."""
    d_max = ground_truth(page).d_max
    for _ in range(attempts):
        kind = rng.choice(kinds)
        if kind is MutationKind.SYMMETRIC_DUAL_EDIT:
            side = MutationSide.BOTH
        else:
            side = rng.choice((MutationSide.UPPER, MutationSide.LOWER))
        m = Mutation(kind, side, rng.randint(0, d_max))
        try:
            return m, mutate(page, m, rng.randrange(2**31))
        except Inapplicable:
            continue
    raise Inapplicable("no applicable mutation found")


# -- Simple-mode collisions --------------------------------------------------


def _window_sum(d_max: int, start: int, counts: tuple[int, ...]) -> tuple[Fraction, Fraction]:
    """Widths of a window of levels relative to the width just above it.

    Uses the default ratio ``1/(d_max+1)``. Returns the window's summed
    widths and the width of its last level.
    """
    cur, tot = Fraction(1), Fraction(0)
    for j, p in enumerate(counts):
        cur = cur * (1 - Fraction(start + j, d_max + 1)) / p
        tot += cur
    return tot, cur


@functools.lru_cache(maxsize=None)
def collision_windows(d_max: int) -> tuple[tuple[int, tuple[int, ...], tuple[int, ...]], ...]:
    """Interchangeable count windows ``(start, counts, other)`` for *d_max*.

    Swapping ``counts`` for ``other`` at levels ``start..`` keeps the total
    area under the default params whatever the rest of the profile is. Two
    families qualify: windows whose counts have the same product (everything
    below scales identically) and equal partial sums, and windows that end
    at the deepest level with equal sums.
    """
    found = []
    for w, cap in ((3, 8), (4, 5)):
        for start in range(0, d_max - w + 1):
            seen: dict[tuple, tuple[int, ...]] = {}
            for t in itertools.product(range(1, cap + 1), repeat=w):
                tot, _ = _window_sum(d_max, start, t)
                key = (math.prod(t), tot)
                if key in seen:
                    found.append((start, seen[key], t))
                    break
                seen[key] = t
    for w, cap in ((3, 6), (4, 6)):
        if w > d_max:
            continue
        start = d_max - w
        seen = {}
        for t in itertools.product(range(1, cap + 1), repeat=w):
            key = _window_sum(d_max, start, t)[0]
            if key in seen:
                found.append((start, seen[key], t))
                break
            seen[key] = t
    return tuple(found)


def find_collision(P: tuple[int, ...]) -> tuple[int, ...] | None:
    """A different profile with the same d_max and total area, if one is known."""
    for start, a, b in collision_windows(len(P)):
        w = len(a)
        window = tuple(P[start:start + w])
        for src, dst in ((a, b), (b, a)):
            if window == src:
                return P[:start] + dst + P[start + w:]
    return None


def collision_pair(d_max: int, seed: int) -> tuple[SyntheticPage, SyntheticPage]:
    """Two pages with equal d_max and total area but different depth counts.

    The first page is a random template with a collision window planted in
    its profile; the second swaps in the window's partner. Both carry the
    same RoI sentence, so a target registered on one rechecks on the other.
    """
    windows = collision_windows(d_max)
    if not windows:
        raise Inapplicable(f"no total-area collision known for d_max={d_max}")
    rng = random.Random(f"collision:{d_max}:{seed}")
    start, a, b = rng.choice(windows)
    P = [rng.randint(1, 4) for _ in range(d_max)]
    P[start:start + len(a)] = a
    other = list(P)
    other[start:start + len(b)] = b
    host_depth = rng.randrange(d_max // 2, d_max)
    text = _roi_sentence(seed, d_max)
    page = build_page(P, host_depth, rng.randrange(2**31), text)
    twin = build_page(other, host_depth, rng.randrange(2**31), text)
    page.seed = twin.seed = seed
    return page, twin


def areas_equal(a: SyntheticPage, b: SyntheticPage) -> bool:
    pa, pb = ground_truth(a), ground_truth(b)
    params = BarParams.default_for(pa.d_max)
    return pa.d_max == pb.d_max and total_area(pa, params) == total_area(pb, params)


__all__ = [
    "areas_equal",
    "collision_windows",
    "Mutation",
    "MutationKind",
    "MutationSide",
    "SyntheticPage",
    "build_page",
    "chain_page",
    "collision_pair",
    "find_collision",
    "generate_template",
    "ground_truth",
    "mutate",
    "random_mutation",
    "render",
]
