# cython: boundscheck=False, wraparound=False, cdivision=True
"""Bit-packed GF(2) column reducer on 64-bit words (compiled hot kernel)."""

import numpy as np

from libc.stdint cimport int64_t, uint64_t

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


cdef class GF2ColumnReducer:
    """Incremental column reduction over GF(2), pivot = lowest nonzero row."""

    cdef readonly Py_ssize_t n_rows
    cdef Py_ssize_t n_words, _n_pivots, _capacity
    cdef uint64_t[:, ::1] _cols
    cdef int64_t[::1] _pivot_slot
    cdef uint64_t[::1] _work

    def __init__(self, Py_ssize_t n_rows):
        if n_rows <= 0:
            raise ValueError("n_rows must be positive")
        self.n_rows = n_rows
        self.n_words = (n_rows + 63) >> 6
        self._n_pivots = 0
        self._capacity = 64
        self._cols = np.zeros((self._capacity, self.n_words), dtype=np.uint64)
        self._pivot_slot = np.full(n_rows, -1, dtype=np.int64)
        self._work = np.zeros(self.n_words, dtype=np.uint64)

    @property
    def n_pivots(self):
        return self._n_pivots

    cdef int _lowest_bit(self) nogil:
        cdef Py_ssize_t w
        for w in range(self.n_words):
            if self._work[w]:
                return 64 * w + __builtin_ctzll(self._work[w])
        return -1

    cdef void _grow(self):
        cdef Py_ssize_t new_cap = self._capacity * 2
        new_cols = np.zeros((new_cap, self.n_words), dtype=np.uint64)
        new_cols[: self._capacity] = np.asarray(self._cols)
        self._cols = new_cols
        self._capacity = new_cap

    def push(self, rows):
        """Reduce a column given by its nonzero row indices.

        Returns ``(independent, used)``; ``used`` lists the pivot slots
        XOR-ed in. An independent column is installed as the newest slot.
        """
        cdef Py_ssize_t w, r, low
        cdef int64_t slot
        for w in range(self.n_words):
            self._work[w] = 0
        for ri in rows:
            r = ri
            if r < 0 or r >= self.n_rows:
                raise ValueError(f"row {r} out of range [0, {self.n_rows})")
            self._work[r >> 6] ^= (<uint64_t>1) << (r & 63)
        used = []
        while True:
            low = self._lowest_bit()
            if low < 0:
                return False, used
            slot = self._pivot_slot[low]
            if slot < 0:
                if self._n_pivots == self._capacity:
                    self._grow()
                for w in range(self.n_words):
                    self._cols[self._n_pivots, w] = self._work[w]
                self._pivot_slot[low] = self._n_pivots
                self._n_pivots += 1
                return True, used
            with nogil:
                for w in range(self.n_words):
                    self._work[w] ^= self._cols[slot, w]
            used.append(slot)
