from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bartree import _kernels, _pure
from bartree.synth import generate_template

BACKENDS = _kernels.available_backends()

SAMPLES = [
    b"",
    b"plain text",
    b"<b>hi</b>",
    b"<tr><td>x</td>",
    b"<a href='x>y'>link</a>",
    b'<div class="a>b">q</div>',
    b"<!-- <p>hidden</p> --><p>shown</p>",
    b"<!DOCTYPE html><?xml x?><p>",
    b"<script>if (a<b) { x = '<div>'; }</script><div>",
    b"<style>p > a {}</style></style><p>",
    b"a < b and c <3 d </ e",
    b"<p unterminated",
    b"<br/><img src=x /><BR>",
    b"<di\xc3\xa9v>caf\xc3\xa9</div>",
]


@pytest.mark.parametrize("name", sorted(BACKENDS))
@pytest.mark.parametrize("src", SAMPLES)
def test_scan_matches_reference(name, src):
    assert list(BACKENDS[name].scan_markup(src)) == list(_pure.scan_markup(src))


def test_scan_spans_tile_source():
    src = b"x<p a='>'>y<!-- c --></p>z"
    toks = _pure.scan_markup(src)
    kinds = [t[0] for t in toks]
    assert kinds == [_pure.TEXT, _pure.OPEN, _pure.TEXT, _pure.CLOSE, _pure.TEXT]
    _, s, e, ns, ne = toks[1]
    assert src[s:e] == b"<p a='>'>" and src[ns:ne] == b"p"


def test_script_content_is_skipped():
    toks = _pure.scan_markup(b"<script><p></p></script><i>")
    names = [b"<script><p></p></script><i>"[t[3]:t[4]] for t in toks if t[0]]
    # the whole block, tags included, is dropped
    assert names == [b"i"]


def test_match_pairs_stack_recovery():
    # a b /a : the closer pops through the abandoned b
    assert _pure.match_pairs([0, 1, 0], [True, True, False]) == [2, -1, 0]
    # stray closer with no opener stays unpaired
    assert _pure.match_pairs([0, 1], [True, False]) == [-1, -1]


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_kernels_agree_on_synthetic_pages(name):
    mod = BACKENDS[name]
    for seed in range(5):
        src = generate_template(12, seed).html.encode()
        assert list(mod.scan_markup(src)) == list(_pure.scan_markup(src))


markup = st.lists(
    st.sampled_from([b"<", b">", b"/", b"p", b"div", b"<!--", b"-->", b"'", b'"', b"=",
                     b" ", b"x", b"<script>", b"</script>", b"!", b"?", b"\xff"]),
    max_size=40,
).map(b"".join)


@settings(max_examples=300, deadline=None)
@given(markup)
def test_backends_agree_on_arbitrary_bytes(src):
    ref = list(_pure.scan_markup(src))
    for mod in BACKENDS.values():
        assert list(mod.scan_markup(src)) == ref
    # tokens are ordered and non-overlapping
    prev = 0
    for _, s, e, _, _ in ref:
        assert prev <= s < e <= len(src)
        prev = e


@settings(max_examples=300, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 3), st.booleans()), max_size=30))
def test_match_pairs_agree_and_symmetric(seq):
    codes = [c for c, _ in seq]
    push = [p for _, p in seq]
    ref = _pure.match_pairs(codes, push)
    for mod in BACKENDS.values():
        assert list(mod.match_pairs(codes, push)) == ref
    for i, j in enumerate(ref):
        if j >= 0:
            assert ref[j] == i and codes[i] == codes[j] and push[min(i, j)] and not push[max(i, j)]


def test_backend_flag():
    assert _kernels.BACKEND in BACKENDS
