"""Pure-Python versions of the hot kernels.

Both functions mirror ``_speedups.pyx`` exactly; the test suite runs every
kernel test against each available backend.
"""
from __future__ import annotations

TEXT = 0
OPEN = 1
CLOSE = 2

_RAWTEXT = (b"script", b"style")


def _is_alpha(c: int) -> bool:
    return 65 <= c <= 90 or 97 <= c <= 122


def _is_name(c: int) -> bool:
    return (
        65 <= c <= 90
        or 97 <= c <= 122
        or 48 <= c <= 57
        or c == 45  # -
        or c == 58  # :
        or c == 95  # _
    )


def _tag_end(src: bytes, pos: int) -> int:
    """Index just past the ``>`` closing a tag whose name ends at *pos*, or -1."""
    n = len(src)
    quote = 0
    i = pos
    while i < n:
        c = src[i]
        if quote:
            if c == quote:
                quote = 0
        elif c == 62:  # >
            return i + 1
        elif c == 34 or c == 39:
            quote = c
        i += 1
    # unterminated quote: fall back to the first '>'
    gt = src.find(b">", pos)
    return -1 if gt < 0 else gt + 1


def scan_markup(src: bytes) -> list[tuple[int, int, int, int, int]]:
    """Split *src* into raw tokens ``(kind, start, end, name_start, name_end)``.

    Comments, doctypes, processing instructions and script/style blocks are
    dropped without producing a token. Anything that is not a well-formed tag
    opener stays in the surrounding text token.
    """
    n = len(src)
    low = src.lower()
    out: list[tuple[int, int, int, int, int]] = []
    pos = 0
    text_start = 0
    while True:
        lt = src.find(b"<", pos)
        if lt < 0 or lt + 1 >= n:
            break
        nxt = src[lt + 1]
        if nxt == 33 or nxt == 63:  # ! ?
            if src.startswith(b"<!--", lt):
                e = src.find(b"-->", lt + 4)
                end = n if e < 0 else e + 3
            else:
                e = src.find(b">", lt + 2)
                end = n if e < 0 else e + 1
            if lt > text_start:
                out.append((TEXT, text_start, lt, 0, 0))
            pos = text_start = end
            continue
        closing = nxt == 47  # /
        ns = lt + 2 if closing else lt + 1
        if ns >= n or not _is_alpha(src[ns]):
            pos = lt + 1
            continue
        ne = ns + 1
        while ne < n and _is_name(src[ne]):
            ne += 1
        end = _tag_end(src, ne)
        if end < 0:
            pos = lt + 1
            continue
        if lt > text_start:
            out.append((TEXT, text_start, lt, 0, 0))
        pos = text_start = end
        name = low[ns:ne]
        if name in _RAWTEXT:
            if closing:
                continue
            close = low.find(b"</" + name, end)
            if close < 0:
                pos = text_start = n
            else:
                e = src.find(b">", close)
                pos = text_start = n if e < 0 else e + 1
            continue
        out.append((CLOSE if closing else OPEN, lt, end, ns, ne))
    if n > text_start:
        out.append((TEXT, text_start, n, 0, 0))
    return out


def match_pairs(codes: list[int], pushers: list[bool]) -> list[int]:
    """Stack-match tokens scanned in the given order.

    ``pushers[i]`` marks tokens that open a pair in scan order; the others try
    to close one. A closer pairs with the nearest stacked opener of the same
    code; openers stacked above it are abandoned unpaired. A closer with no
    same-code opener on the stack stays unpaired. Returns the partner index
    of every token, -1 when unpaired.
    """
    partner = [-1] * len(codes)
    stack: list[int] = []
    for i, code in enumerate(codes):
        if pushers[i]:
            stack.append(i)
            continue
        k = len(stack) - 1
        while k >= 0 and codes[stack[k]] != code:
            k -= 1
        if k >= 0:
            j = stack[k]
            partner[i] = j
            partner[j] = i
            del stack[k:]
    return partner
