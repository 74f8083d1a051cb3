"""Display-text helpers shared by the lexer and the RoI locator."""
from __future__ import annotations

import html
import re

_ENTITY = re.compile(r"&(?:#[0-9]+;?|#[xX][0-9a-fA-F]+;?|[A-Za-z][A-Za-z0-9]*;?)")


def decode(raw: bytes) -> str:
    return raw.decode("utf-8", "surrogateescape")


def normalize_text(raw: str | bytes) -> str:
    """Decode entities, collapse whitespace runs to one space and trim.

    >>> normalize_text("  a&amp;b \\n\\t c ")
    'a&b c'
    """
    if isinstance(raw, bytes):
        raw = decode(raw)
    return " ".join(html.unescape(raw).split())


def squeeze(text: str) -> str:
    """Drop all whitespace; the key used for whitespace-insensitive matching."""
    return "".join(text.split())


def visible_chars(raw: bytes, base: int = 0) -> list[tuple[str, int, int]]:
    """Entity-decoded non-whitespace characters of *raw* with source byte ranges.

    Each entry is ``(char, start, end)`` where the range covers the source bytes
    the character came from (the whole entity for decoded references).
    """
    s = decode(raw)
    if raw.isascii():
        offs = range(base, base + len(s) + 1)
    else:
        acc = [base]
        b = base
        for ch in s:
            b += len(ch.encode("utf-8", "surrogateescape"))
            acc.append(b)
        offs = acc
    out: list[tuple[str, int, int]] = []
    i = 0
    for m in _ENTITY.finditer(s):
        for k in range(i, m.start()):
            if not s[k].isspace():
                out.append((s[k], offs[k], offs[k + 1]))
        lo, hi = offs[m.start()], offs[m.end()]
        for ch in html.unescape(m.group()):
            if not ch.isspace():
                out.append((ch, lo, hi))
        i = m.end()
    for k in range(i, len(s)):
        if not s[k].isspace():
            out.append((s[k], offs[k], offs[k + 1]))
    return out
