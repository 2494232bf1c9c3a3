# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled matching kernel: state as an array of 64-bit words."""

from cpython.mem cimport PyMem_Free, PyMem_Malloc
from libc.stdint cimport uint64_t
from libc.string cimport memcpy, memset

NAME = "compiled"

cdef object WORD_MASK = (1 << 64) - 1


cdef void _load(object value, uint64_t *out, Py_ssize_t nwords) except *:
    cdef Py_ssize_t w
    for w in range(nwords):
        out[w] = <uint64_t>((value >> (64 * w)) & WORD_MASK)


cdef object _store(const uint64_t *words, Py_ssize_t nwords):
    value = 0
    cdef Py_ssize_t w
    for w in range(nwords - 1, -1, -1):
        value = (value << 64) | words[w]
    return value


def _word_span(x):
    """Half-open range of 64-bit words holding the set bits of ``x``."""
    if not x:
        return 0, 0
    return ((x & -x).bit_length() - 1) // 64, (x.bit_length() + 63) // 64


cdef class Handle:
    """Flattened layout: group ``g`` owns words ``[g*nwords, (g+1)*nwords)``.

    ``spans[4g:4g+4]`` bound the non-zero words of the group's trigger mask
    and of its position bits.
    """

    cdef uint64_t *masks
    cdef uint64_t *bits
    cdef Py_ssize_t *spans
    cdef Py_ssize_t starts[257]
    cdef uint64_t *accept
    cdef Py_ssize_t nwords, ngroups
    cdef uint64_t start_bit

    def __cinit__(self, layout):
        cdef Py_ssize_t g = 0, b, cells
        self.nwords = max(1, (layout.width + 63) // 64)
        self.ngroups = sum(len(grp) for grp in layout.groups)
        cells = max(1, self.ngroups) * self.nwords
        self.masks = <uint64_t *>PyMem_Malloc(cells * sizeof(uint64_t))
        self.bits = <uint64_t *>PyMem_Malloc(cells * sizeof(uint64_t))
        self.spans = <Py_ssize_t *>PyMem_Malloc(4 * max(1, self.ngroups) * sizeof(Py_ssize_t))
        self.accept = <uint64_t *>PyMem_Malloc(self.nwords * sizeof(uint64_t))
        if not (self.masks and self.bits and self.spans and self.accept):
            raise MemoryError()
        self.start_bit = layout.start_bit
        _load(layout.accept_mask, self.accept, self.nwords)
        for b in range(256):
            self.starts[b] = g
            for mask, pbits in layout.groups[b]:
                _load(mask, self.masks + g * self.nwords, self.nwords)
                _load(pbits, self.bits + g * self.nwords, self.nwords)
                self.spans[4 * g], self.spans[4 * g + 1] = _word_span(mask)
                self.spans[4 * g + 2], self.spans[4 * g + 3] = _word_span(pbits)
                g += 1
        self.starts[256] = g

    def __dealloc__(self):
        PyMem_Free(self.masks)
        PyMem_Free(self.bits)
        PyMem_Free(self.spans)
        PyMem_Free(self.accept)


def prepare(layout):
    return Handle(layout)


cdef Py_ssize_t _scan_one(Handle h, uint64_t *state, const unsigned char[:] data,
                          bint track, bint stop) noexcept nogil:
    cdef Py_ssize_t n, g, hit = -1, length = data.shape[0]
    cdef uint64_t cur = state[0], nxt, acc = h.accept[0], start = h.start_bit
    cdef const uint64_t *masks = h.masks
    cdef const uint64_t *bits = h.bits
    cdef unsigned char b
    for n in range(length):
        b = data[n]
        nxt = start
        for g in range(h.starts[b], h.starts[b + 1]):
            # branch-free: random input makes the test unpredictable
            nxt |= bits[g] & (<uint64_t>0 - <uint64_t>((cur & masks[g]) != 0))
        cur = nxt
        if track and (cur & acc):
            hit = n
            track = False
            if stop:
                break
    state[0] = cur
    return hit


cdef Py_ssize_t _scan_words(Handle h, uint64_t *buf, const unsigned char[:] data,
                            bint track, bint stop) noexcept nogil:
    # buf holds two state buffers; the result is left in the first
    cdef Py_ssize_t W = h.nwords, n, g, w, hit = -1, length = data.shape[0]
    cdef uint64_t *cur = buf
    cdef uint64_t *nxt = buf + W
    cdef uint64_t *tmp
    cdef const uint64_t *mp
    cdef const uint64_t *bp
    cdef const Py_ssize_t *sp
    cdef uint64_t any_on, sel
    cdef unsigned char b
    for n in range(length):
        b = data[n]
        memset(nxt, 0, W * sizeof(uint64_t))
        for g in range(h.starts[b], h.starts[b + 1]):
            mp = h.masks + g * W
            sp = h.spans + 4 * g
            any_on = 0
            for w in range(sp[0], sp[1]):
                any_on |= cur[w] & mp[w]
            sel = <uint64_t>0 - <uint64_t>(any_on != 0)
            bp = h.bits + g * W
            for w in range(sp[2], sp[3]):
                nxt[w] |= bp[w] & sel
        nxt[0] |= h.start_bit
        tmp = cur
        cur = nxt
        nxt = tmp
        if track:
            for w in range(W):
                if cur[w] & h.accept[w]:
                    hit = n
                    track = False
                    break
            if hit >= 0 and stop:
                break
    if cur != buf:
        memcpy(buf, cur, W * sizeof(uint64_t))
    return hit


def scan(Handle handle, state, data, bint track=False, bint stop=False):
    """Advance ``state`` over ``data``; same contract as the Python kernel."""
    cdef const unsigned char[:] view = data
    cdef Py_ssize_t W = handle.nwords, hit
    cdef uint64_t one
    cdef uint64_t *buf
    if W == 1:
        one = <uint64_t>state
        with nogil:
            hit = _scan_one(handle, &one, view, track, stop)
        return one, hit
    buf = <uint64_t *>PyMem_Malloc(2 * W * sizeof(uint64_t))
    if not buf:
        raise MemoryError()
    try:
        _load(state, buf, W)
        with nogil:
            hit = _scan_words(handle, buf, view, track, stop)
        return _store(buf, W), hit
    finally:
        PyMem_Free(buf)
