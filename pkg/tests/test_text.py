from __future__ import annotations

from hypothesis import given
from hypothesis import strategies as st

from bartree.text import normalize_text, squeeze, visible_chars


def test_entity_decode():
    assert normalize_text("a&amp;b") == "a&b"


def test_whitespace_collapse():
    assert normalize_text("  x \n\t y ") == "x y"


def test_empty():
    assert normalize_text("") == ""


def test_squeeze():
    assert squeeze(" a b\nc ") == "abc"


def test_visible_chars_maps_entities_to_bytes():
    raw = b"a &amp; b"
    chars = visible_chars(raw, 10)
    assert [c for c, _, _ in chars] == ["a", "&", "b"]
    assert chars[1][1:] == (12, 17)


@given(st.text())
def test_normalize_idempotent(s):
    once = normalize_text(s)
    assert normalize_text(once.replace("&", "&amp;")) == once
    assert once == once.strip()
    assert "  " not in once
