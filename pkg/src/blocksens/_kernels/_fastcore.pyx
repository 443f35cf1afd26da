# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels mirroring `pure`: same contract, C-speed bit transforms.

Truth tables travel as little-endian byte buffers padded to whole 64-bit words.
Per input row the sensitive-set indicator, its upward closure, and the minimal
sensitive blocks are computed with word-parallel butterfly passes; maximum
disjoint packings use a stamped memo table so no per-row reset is needed.
"""

from libc.stdlib cimport calloc, free, malloc
from libc.string cimport memcpy, memset

ctypedef unsigned long long u64
ctypedef unsigned int u32

cdef extern from *:
    """
    #define POPCNT64(x) __builtin_popcountll(x)
    #define POPCNT32(x) __builtin_popcount(x)
    #define CTZ64(x) __builtin_ctzll(x)
    """
    int POPCNT64(u64) nogil
    int POPCNT32(u32) nogil
    int CTZ64(u64) nogil

KERNEL_NAME = "compiled"

cdef u64[6] _LO
_LO[0] = 0x5555555555555555ULL
_LO[1] = 0x3333333333333333ULL
_LO[2] = 0x0F0F0F0F0F0F0F0FULL
_LO[3] = 0x00FF00FF00FF00FFULL
_LO[4] = 0x0000FFFF0000FFFFULL
_LO[5] = 0x00000000FFFFFFFFULL


cdef inline Py_ssize_t _words(int n) nogil:
    return 1 if n < 6 else (<Py_ssize_t>1 << (n - 6))


cdef void _butterfly_swap(u64* v, int level, Py_ssize_t W) nogil:
    cdef Py_ssize_t base, w, d
    cdef int s
    cdef u64 x, tmp
    if level < 6:
        s = 1 << level
        for w in range(W):
            x = v[w]
            v[w] = ((x & _LO[level]) << s) | ((x >> s) & _LO[level])
    else:
        d = <Py_ssize_t>1 << (level - 6)
        base = 0
        while base < W:
            for w in range(base, base + d):
                tmp = v[w]
                v[w] = v[w + d]
                v[w + d] = tmp
            base += 2 * d


cdef void _up_or(u64* v, int n, Py_ssize_t W) nogil:
    cdef Py_ssize_t base, w, d
    cdef int level, s
    for level in range(n):
        if level < 6:
            s = 1 << level
            for w in range(W):
                v[w] |= (v[w] & _LO[level]) << s
        else:
            d = <Py_ssize_t>1 << (level - 6)
            base = 0
            while base < W:
                for w in range(base, base + d):
                    v[w + d] |= v[w]
                base += 2 * d


cdef void _down_or_into(u64* r, u64* q, int n, Py_ssize_t W) nogil:
    cdef Py_ssize_t base, w, d
    cdef int level, s
    memset(q, 0, W * sizeof(u64))
    for level in range(n):
        if level < 6:
            s = 1 << level
            for w in range(W):
                q[w] |= (r[w] & _LO[level]) << s
        else:
            d = <Py_ssize_t>1 << (level - 6)
            base = 0
            while base < W:
                for w in range(base, base + d):
                    q[w + d] |= r[w]
                base += 2 * d


cdef int _pack(u32 avail, u32* blocks, int nb, signed char* memo, u32* stamp, u32 cur) nogil:
    if stamp[avail] == cur:
        return memo[avail]
    cdef u32 cover = 0
    cdef u32 pivot, B
    cdef int b, res, r
    for b in range(nb):
        if (blocks[b] & ~avail) == 0:
            cover |= blocks[b]
    if cover == 0:
        res = 0
    else:
        pivot = cover & (~cover + 1)
        res = _pack(avail & ~pivot, blocks, nb, memo, stamp, cur)
        for b in range(nb):
            B = blocks[b]
            if (B & pivot) != 0 and (B & ~avail) == 0:
                r = 1 + _pack(avail & ~B, blocks, nb, memo, stamp, cur)
                if r > res:
                    res = r
    stamp[avail] = cur
    memo[avail] = <signed char>res
    return res


cdef struct _Scratch:
    u64* T
    u64* P
    u64* R
    u64* Q
    u32* blocks
    signed char* memo
    u32* stamp


cdef int _scratch_init(_Scratch* sc, const unsigned char[::1] buf, int n, bint with_pack) except -1:
    cdef Py_ssize_t W = _words(n)
    cdef Py_ssize_t rows = <Py_ssize_t>1 << n
    sc.T = <u64*>malloc(W * sizeof(u64))
    sc.P = <u64*>malloc(W * sizeof(u64))
    sc.R = <u64*>malloc(W * sizeof(u64))
    sc.Q = <u64*>malloc(W * sizeof(u64))
    sc.blocks = NULL
    sc.memo = NULL
    sc.stamp = NULL
    if with_pack:
        sc.blocks = <u32*>malloc(rows * sizeof(u32))
        sc.memo = <signed char*>malloc(rows * sizeof(signed char))
        sc.stamp = <u32*>calloc(rows, sizeof(u32))
    if sc.T == NULL or sc.P == NULL or sc.R == NULL or sc.Q == NULL or (
            with_pack and (sc.blocks == NULL or sc.memo == NULL or sc.stamp == NULL)):
        _scratch_free(sc)
        raise MemoryError()
    memcpy(sc.T, &buf[0], W * sizeof(u64))
    return 0


cdef void _scratch_free(_Scratch* sc) nogil:
    free(sc.T)
    free(sc.P)
    free(sc.R)
    free(sc.Q)
    free(sc.blocks)
    free(sc.memo)
    free(sc.stamp)


cdef int _minimal_blocks_for(
        _Scratch* sc, int n, Py_ssize_t x, int fx, int cap) nogil:
    """Fill sc.blocks with the minimal sensitive flip sets at row x; return count."""
    cdef Py_ssize_t W = _words(n)
    cdef Py_ssize_t w, rest
    cdef int i, b, nb
    cdef u64 tail, mm
    cdef u32 S
    memcpy(sc.P, sc.T, W * sizeof(u64))
    rest = x
    i = 0
    while rest:
        if rest & 1:
            _butterfly_swap(sc.P, i, W)
        rest >>= 1
        i += 1
    if fx:
        for w in range(W):
            sc.P[w] = ~sc.P[w]
        if n < 6:
            tail = (<u64>1 << (<Py_ssize_t>1 << n)) - 1
            sc.P[0] &= tail
    memcpy(sc.R, sc.P, W * sizeof(u64))
    _up_or(sc.R, n, W)
    _down_or_into(sc.R, sc.Q, n, W)
    nb = 0
    for w in range(W):
        mm = sc.P[w] & ~sc.Q[w]
        while mm:
            b = CTZ64(mm)
            mm &= mm - 1
            S = (<u32>w << 6) | <u32>b
            if POPCNT32(S) <= cap:
                sc.blocks[nb] = S
                nb += 1
    return nb


def bs_report_raw(const unsigned char[::1] buf, int n, int cap):
    cdef _Scratch sc
    _scratch_init(&sc, buf, n, True)
    cdef Py_ssize_t rows = <Py_ssize_t>1 << n
    cdef Py_ssize_t x
    cdef int fx, nb, count
    cdef u32 avail = <u32>(rows - 1)
    cdef int best0 = -1, best1 = -1
    cdef Py_ssize_t wit0 = -1, wit1 = -1
    cdef int besthere
    with nogil:
        for x in range(rows):
            fx = <int>((sc.T[x >> 6] >> (x & 63)) & 1)
            besthere = best1 if fx else best0
            nb = _minimal_blocks_for(&sc, n, x, fx, cap)
            if nb <= besthere:
                continue
            count = _pack(avail, sc.blocks, nb, sc.memo, sc.stamp, <u32>(x + 1))
            if count > besthere:
                if fx:
                    best1 = count
                    wit1 = x
                else:
                    best0 = count
                    wit0 = x
    _scratch_free(&sc)
    if best0 < 0:
        best0 = 0
    if best1 < 0:
        best1 = 0
    return best0, wit0, best1, wit1


def bs_at_raw(const unsigned char[::1] buf, int n, x, int cap):
    cdef _Scratch sc
    _scratch_init(&sc, buf, n, True)
    cdef Py_ssize_t row = <Py_ssize_t>x
    cdef int fx = <int>((sc.T[row >> 6] >> (row & 63)) & 1)
    cdef int nb = _minimal_blocks_for(&sc, n, row, fx, cap)
    cdef u32 avail = <u32>((<Py_ssize_t>1 << n) - 1)
    cdef int count = _pack(avail, sc.blocks, nb, sc.memo, sc.stamp, 1)
    cdef int b
    blocks = [sc.blocks[b] for b in range(nb)]
    _scratch_free(&sc)
    return count, blocks


def sensitivity_counts(const unsigned char[::1] buf, int n):
    cdef Py_ssize_t W = _words(n)
    cdef Py_ssize_t rows = <Py_ssize_t>1 << n
    out = bytearray(rows)
    cdef unsigned char[::1] counts = out
    cdef u64* T = <u64*>malloc(W * sizeof(u64))
    if T == NULL:
        raise MemoryError()
    memcpy(T, &buf[0], W * sizeof(u64))
    cdef Py_ssize_t w, d
    cdef int level, s, b
    cdef u64 xw, swapped, diff
    with nogil:
        for level in range(n):
            if level < 6:
                s = 1 << level
                for w in range(W):
                    xw = T[w]
                    swapped = ((xw & _LO[level]) << s) | ((xw >> s) & _LO[level])
                    diff = xw ^ swapped
                    while diff:
                        b = CTZ64(diff)
                        diff &= diff - 1
                        counts[(w << 6) | b] += 1
            else:
                d = <Py_ssize_t>1 << (level - 6)
                for w in range(W):
                    diff = T[w] ^ T[w ^ d]
                    while diff:
                        b = CTZ64(diff)
                        diff &= diff - 1
                        counts[(w << 6) | b] += 1
    free(T)
    return out


def sensitivity_report_raw(const unsigned char[::1] buf, int n):
    counts = sensitivity_counts(buf, n)
    cdef unsigned char[::1] cv = counts
    cdef Py_ssize_t W = _words(n)
    cdef Py_ssize_t rows = <Py_ssize_t>1 << n
    cdef u64* T = <u64*>malloc(W * sizeof(u64))
    if T == NULL:
        raise MemoryError()
    memcpy(T, &buf[0], W * sizeof(u64))
    cdef int best0 = -1, best1 = -1
    cdef Py_ssize_t wit0 = -1, wit1 = -1
    cdef Py_ssize_t x
    cdef int fx, c
    with nogil:
        for x in range(rows):
            fx = <int>((T[x >> 6] >> (x & 63)) & 1)
            c = cv[x]
            if fx:
                if c > best1:
                    best1 = c
                    wit1 = x
            else:
                if c > best0:
                    best0 = c
                    wit0 = x
    free(T)
    if best0 < 0:
        best0 = 0
    if best1 < 0:
        best1 = 0
    return best0, wit0, best1, wit1
