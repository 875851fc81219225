"""Pure-Python GF(2) column reducer using int bitsets.

Fallback backend; the compiled module in ``_gf2core`` implements the same
interface on packed 64-bit words.
"""

from __future__ import annotations


class GF2ColumnReducer:
    """Incremental column reduction over GF(2), pivot = lowest nonzero row."""

    def __init__(self, n_rows: int):
        self.n_rows = int(n_rows)
        self._pivot_by_row: dict[int, int] = {}
        self._cols: list[int] = []

    @property
    def n_pivots(self) -> int:
        return len(self._cols)

    def push(self, rows) -> tuple[bool, list[int]]:
        """Reduce a column given by its nonzero row indices.

        Returns ``(independent, used)`` where ``used`` lists the slots of
        pivot columns XOR-ed in during reduction. If independent, the
        reduced column is installed as pivot slot ``n_pivots - 1``.
        """
        col = 0
        for r in rows:
            if not 0 <= r < self.n_rows:
                raise ValueError(f"row {r} out of range [0, {self.n_rows})")
            col ^= 1 << r
        used: list[int] = []
        while col:
            low = (col & -col).bit_length() - 1
            slot = self._pivot_by_row.get(low)
            if slot is None:
                self._pivot_by_row[low] = len(self._cols)
                self._cols.append(col)
                return True, used
            col ^= self._cols[slot]
            used.append(slot)
        return False, used
