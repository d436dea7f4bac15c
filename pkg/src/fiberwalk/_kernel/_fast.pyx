# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled fiber-walk kernel; byte-for-byte the same results as `pure`.

Moves are flattened into C integer arrays at pack time; applying a move is
a short C loop over the sparse negative part, one memcpy, and a few byte
edits, so neighbor generation never touches Python integers.
"""

from cpython.bytes cimport PyBytes_FromStringAndSize
from libc.stdlib cimport free, malloc
from libc.string cimport memcpy

BACKEND = "fast"

MAX_COUNT = 255


cdef class PackedMoves:
    cdef int n_moves
    cdef int n_directed
    # per directed move: slices into the flat index/count arrays
    cdef int* sub_off
    cdef int* sub_len
    cdef int* add_off
    cdef int* add_len
    cdef int* idx
    cdef int* cnt
    cdef int* move_of
    cdef char* fwd_flag

    def __cinit__(self, moves):
        cdef list directed = []
        for k, (minus_pairs, plus_pairs) in enumerate(moves):
            directed.append((k, True, minus_pairs, plus_pairs))
            directed.append((k, False, plus_pairs, minus_pairs))
        self.n_moves = len(moves)
        self.n_directed = len(directed)
        cdef int total = 0
        for _, _, sub, add in directed:
            total += len(sub) + len(add)
        self.sub_off = <int*> malloc(self.n_directed * sizeof(int))
        self.sub_len = <int*> malloc(self.n_directed * sizeof(int))
        self.add_off = <int*> malloc(self.n_directed * sizeof(int))
        self.add_len = <int*> malloc(self.n_directed * sizeof(int))
        self.move_of = <int*> malloc(self.n_directed * sizeof(int))
        self.fwd_flag = <char*> malloc(self.n_directed * sizeof(char))
        self.idx = <int*> malloc(total * sizeof(int))
        self.cnt = <int*> malloc(total * sizeof(int))
        cdef int pos = 0
        cdef int d = 0
        for k, fwd, sub, add in directed:
            self.move_of[d] = k
            self.fwd_flag[d] = 1 if fwd else 0
            self.sub_off[d] = pos
            self.sub_len[d] = len(sub)
            for i, c in sub:
                self.idx[pos] = i
                self.cnt[pos] = c
                pos += 1
            self.add_off[d] = pos
            self.add_len[d] = len(add)
            for i, c in add:
                self.idx[pos] = i
                self.cnt[pos] = c
                pos += 1
            d += 1

    def __dealloc__(self):
        free(self.sub_off)
        free(self.sub_len)
        free(self.add_off)
        free(self.add_len)
        free(self.move_of)
        free(self.fwd_flag)
        free(self.idx)
        free(self.cnt)

    def __len__(self):
        return self.n_moves

    cdef object _apply(self, const unsigned char* t, Py_ssize_t n, int d, unsigned char* scratch):
        cdef int j, cell, need, have
        cdef int off = self.sub_off[d]
        for j in range(self.sub_len[d]):
            cell = self.idx[off + j]
            if t[cell] < self.cnt[off + j]:
                return None
        memcpy(scratch, t, n)
        for j in range(self.sub_len[d]):
            scratch[self.idx[off + j]] -= self.cnt[off + j]
        off = self.add_off[d]
        for j in range(self.add_len[d]):
            cell = self.idx[off + j]
            have = scratch[cell] + self.cnt[off + j]
            if have > 255:
                raise OverflowError(f"cell count {have} exceeds packed byte range")
            scratch[cell] = have
        return PyBytes_FromStringAndSize(<char*> scratch, n)


def pack_moves(moves):
    return PackedMoves(moves)


def neighbors(bytes t, PackedMoves pm):
    cdef const unsigned char* ts = t
    cdef Py_ssize_t n = len(t)
    cdef unsigned char* scratch = <unsigned char*> malloc(n)
    cdef list out = []
    cdef int d
    try:
        for d in range(pm.n_directed):
            nb = pm._apply(ts, n, d, scratch)
            if nb is not None:
                out.append(nb)
    finally:
        free(scratch)
    return out


def neighbors_signed(bytes t, PackedMoves pm):
    cdef const unsigned char* ts = t
    cdef Py_ssize_t n = len(t)
    cdef unsigned char* scratch = <unsigned char*> malloc(n)
    cdef list out = []
    cdef int d
    try:
        for d in range(pm.n_directed):
            nb = pm._apply(ts, n, d, scratch)
            if nb is not None:
                out.append((pm.move_of[d], pm.fwd_flag[d] != 0, nb))
    finally:
        free(scratch)
    return out


def forward_neighbors(bytes t, PackedMoves pm):
    cdef const unsigned char* ts = t
    cdef Py_ssize_t n = len(t)
    cdef unsigned char* scratch = <unsigned char*> malloc(n)
    cdef list out = []
    cdef int d
    try:
        for d in range(0, pm.n_directed, 2):
            nb = pm._apply(ts, n, d, scratch)
            if nb is not None:
                out.append(nb)
    finally:
        free(scratch)
    return out


def component(bytes start, PackedMoves pm, int cap):
    cdef set visited = {start}
    cdef list frontier = [start]
    cdef list nxt
    cdef Py_ssize_t n = len(start)
    cdef unsigned char* scratch = <unsigned char*> malloc(n)
    cdef const unsigned char* ts
    cdef int d
    try:
        while frontier:
            frontier.sort()
            nxt = []
            for t in frontier:
                ts = <bytes> t
                for d in range(pm.n_directed):
                    nb = pm._apply(ts, n, d, scratch)
                    if nb is not None and nb not in visited:
                        if len(visited) >= cap:
                            return visited, True
                        visited.add(nb)
                        nxt.append(nb)
            frontier = nxt
    finally:
        free(scratch)
    return visited, False
