# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the lexer scan and the tag pairing stack.

Behaviour is identical to ``bartree._pure``.
"""

cdef enum:
    TEXT = 0
    OPEN = 1
    CLOSE = 2


cdef inline bint _is_alpha(unsigned char c) nogil:
    return (65 <= c <= 90) or (97 <= c <= 122)


cdef inline bint _is_name(unsigned char c) nogil:
    return (65 <= c <= 90) or (97 <= c <= 122) or (48 <= c <= 57) \
        or c == 45 or c == 58 or c == 95


cdef Py_ssize_t _find_byte(const unsigned char* s, Py_ssize_t n,
                           unsigned char b, Py_ssize_t pos) nogil:
    cdef Py_ssize_t i = pos
    while i < n:
        if s[i] == b:
            return i
        i += 1
    return -1


cdef Py_ssize_t _tag_end(const unsigned char* s, Py_ssize_t n, Py_ssize_t pos) nogil:
    cdef Py_ssize_t i = pos
    cdef unsigned char quote = 0
    cdef unsigned char c
    while i < n:
        c = s[i]
        if quote:
            if c == quote:
                quote = 0
        elif c == 62:
            return i + 1
        elif c == 34 or c == 39:
            quote = c
        i += 1
    i = _find_byte(s, n, 62, pos)
    return -1 if i < 0 else i + 1


cdef inline bint _lower_eq(const unsigned char* s, Py_ssize_t start,
                           Py_ssize_t stop, bytes word):
    cdef Py_ssize_t k
    cdef Py_ssize_t m = len(word)
    cdef const unsigned char* w = word
    if stop - start != m:
        return False
    for k in range(m):
        if (s[start + k] | 0x20) != w[k]:
            return False
    return True


def scan_markup(bytes src):
    cdef const unsigned char* s = src
    cdef Py_ssize_t n = len(src)
    cdef Py_ssize_t pos = 0, text_start = 0, lt, ns, ne, end, e
    cdef unsigned char nxt
    cdef bint closing
    cdef list out = []
    cdef bytes low = None
    cdef bytes name
    while True:
        lt = _find_byte(s, n, 60, pos)
        if lt < 0 or lt + 1 >= n:
            break
        nxt = s[lt + 1]
        if nxt == 33 or nxt == 63:
            if nxt == 33 and lt + 3 < n and s[lt + 2] == 45 and s[lt + 3] == 45:
                e = src.find(b"-->", lt + 4)
                end = n if e < 0 else e + 3
            else:
                e = _find_byte(s, n, 62, lt + 2)
                end = n if e < 0 else e + 1
            if lt > text_start:
                out.append((TEXT, text_start, lt, 0, 0))
            pos = end
            text_start = end
            continue
        closing = nxt == 47
        ns = lt + 2 if closing else lt + 1
        if ns >= n or not _is_alpha(s[ns]):
            pos = lt + 1
            continue
        ne = ns + 1
        while ne < n and _is_name(s[ne]):
            ne += 1
        end = _tag_end(s, n, ne)
        if end < 0:
            pos = lt + 1
            continue
        if lt > text_start:
            out.append((TEXT, text_start, lt, 0, 0))
        pos = end
        text_start = end
        if _lower_eq(s, ns, ne, b"script") or _lower_eq(s, ns, ne, b"style"):
            if closing:
                continue
            if low is None:
                low = src.lower()
            name = low[ns:ne]
            e = low.find(b"</" + name, end)
            if e < 0:
                pos = n
            else:
                e = _find_byte(s, n, 62, e)
                pos = n if e < 0 else e + 1
            text_start = pos
            continue
        out.append((CLOSE if closing else OPEN, lt, end, ns, ne))
    if n > text_start:
        out.append((TEXT, text_start, n, 0, 0))
    return out


def match_pairs(list codes, list pushers):
    cdef Py_ssize_t m = len(codes)
    cdef list partner = [-1] * m
    cdef list stack = []
    cdef Py_ssize_t i, k, j
    cdef object code
    for i in range(m):
        code = codes[i]
        if pushers[i]:
            stack.append(i)
            continue
        k = len(stack) - 1
        while k >= 0 and codes[<Py_ssize_t>stack[k]] != code:
            k -= 1
        if k >= 0:
            j = stack[k]
            partner[i] = j
            partner[j] = i
            del stack[k:]
    return partner
