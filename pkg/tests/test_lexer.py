from __future__ import annotations

from hypothesis import given, settings
from hypothesis import strategies as st

from bartree.lexer import (
    CleanPolicy,
    TagClass,
    TagClasses,
    TagKind,
    TagStream,
    TextRun,
    classify_tag,
    clean,
    render_text,
    serialize,
    tokenize,
)
from bartree.tree import build_layout_tree


def _events(stream):
    return [(e.kind, e.name) for e in stream.events]


def test_minimal_pair():
    s = tokenize("<b>hi</b>")
    assert _events(s) == [(TagKind.OPEN, "b"), (TagKind.CLOSE, "b")]
    assert [r.text for r in s.text_runs] == ["hi"]


def test_unclosed_tags_pass_through():
    s = tokenize("<tr><td>x</td>")
    assert _events(s) == [(TagKind.OPEN, "tr"), (TagKind.OPEN, "td"), (TagKind.CLOSE, "td")]
    assert [r.text for r in s.text_runs] == ["x"]


def test_void_and_case():
    s = tokenize("<BR><Img src=x><DIV></div>")
    assert _events(s) == [(TagKind.VOID, "br"), (TagKind.VOID, "img"),
                          (TagKind.OPEN, "div"), (TagKind.CLOSE, "div")]


def test_classification():
    assert classify_tag("b") is TagClass.TEXT_FORMAT
    assert classify_tag("span") is TagClass.LAYOUT_FORMAT
    assert classify_tag("article") is TagClass.OTHER


def test_overrides():
    classes = TagClasses.from_overrides({"layout_format": ["article"]})
    assert classify_tag("article", classes) is TagClass.LAYOUT_FORMAT
    assert classify_tag("div", classes) is TagClass.OTHER
    assert TagClasses.from_overrides(classes.to_overrides()) == classes


def test_clean_strip_text_format():
    out = clean(tokenize("<b>x</b>"), CleanPolicy.STRIP_TEXT_FORMAT)
    assert out.events == () and [r.text for r in out.text_runs] == ["x"]


def test_clean_keep_layout_only():
    out = clean(tokenize("<tr>x</tr>"), CleanPolicy.KEEP_LAYOUT_ONLY)
    assert _events(out) == [(TagKind.OPEN, "tr"), (TagKind.CLOSE, "tr")]
    assert out.text_runs == ()


def test_clean_empty():
    for policy in CleanPolicy:
        out = clean(TagStream(), policy)
        assert out.events == () and out.text_runs == ()


def test_render_text_gaps():
    s = tokenize("<p>a<b>b</b>c</p><p>d</p>")
    assert render_text(s) == "abc d"


def test_fixture_tree_levels(publication_html):
    # layout tree of the whole page, counted per level
    root = build_layout_tree(clean(tokenize(publication_html), CleanPolicy.KEEP_LAYOUT_ONLY))
    levels = []
    frontier = root.children
    while frontier:
        levels.append(len(frontier))
        frontier = [c for n in frontier for c in n.children]
    # the RoI interior holds h2, p, div and spans below depth 13
    assert levels[:6] == [1, 2, 2, 1, 3, 4]
    assert levels[9] == 3


fragments = st.lists(
    st.sampled_from(["<div>", "</div>", "<b>", "</b>", "<br>", "text", " ", "&amp;",
                     "<p class='x'>", "</p>", "<!-- c -->", "<", "a&lt;b"]),
    max_size=30,
).map("".join)


@settings(max_examples=200, deadline=None)
@given(fragments)
def test_serialize_fixed_point(src):
    once = serialize(tokenize(src))
    assert serialize(tokenize(once)) == once


@settings(max_examples=200, deadline=None)
@given(fragments, st.sampled_from(list(CleanPolicy)))
def test_clean_idempotent_and_drops_text_format(src, policy):
    s = tokenize(src)
    once = clean(s, policy)
    assert clean(once, policy) == once
    assert all(e.tag_class is not TagClass.TEXT_FORMAT for e in once.events)
    layout = [e for e in s.events if e.tag_class is not TagClass.TEXT_FORMAT]
    assert list(once.events) == layout


@given(fragments)
def test_items_in_document_order(src):
    s = tokenize(src)
    starts = [i.span[0] for i in s.items()]
    assert starts == sorted(starts)
    assert all(isinstance(i, TextRun) or i.name for i in s.items())
