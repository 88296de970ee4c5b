"""Exact incremental row reduction over F_p or Q.

Used for graded minimalization: candidate vectors are coordinates of
module elements in a fixed monomial basis of one degree slice.  Rows are
kept in reduced echelon form so each query costs one elimination sweep.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np


class RowReducer:
    """Maintains an echelonized basis of the span of added vectors."""

    __slots__ = ("width", "char", "rows", "pivots")

    def __init__(self, width: int, char: int):
        self.width = width
        self.char = char
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []

    def _residual(self, vec: np.ndarray) -> np.ndarray:
        v = vec.copy()
        for row, piv in zip(self.rows, self.pivots):
            c = v[piv]
            if c != 0:
                if self.char:
                    v = (v - int(c) * row) % self.char
                else:
                    v = v - c * row
        return v

    def contains(self, vec: np.ndarray) -> bool:
        res = self._residual(self._coerce(vec))
        return not res.any() if self.char else all(c == 0 for c in res)

    def add(self, vec: np.ndarray) -> bool:
        """Add a vector; True when it enlarged the span."""
        v = self._residual(self._coerce(vec))
        nonzero = np.flatnonzero(v != 0) if self.char else [i for i, c in enumerate(v) if c != 0]
        if len(nonzero) == 0:
            return False
        piv = int(nonzero[0])
        lead = v[piv]
        if self.char:
            v = (v * pow(int(lead), self.char - 2, self.char)) % self.char
        else:
            v = np.array([c / lead for c in v], dtype=object)
        for i, (row, p) in enumerate(zip(self.rows, self.pivots)):
            c = row[piv]
            if c != 0:
                if self.char:
                    self.rows[i] = (row - int(c) * v) % self.char
                else:
                    self.rows[i] = row - c * v
        self.rows.append(v)
        self.pivots.append(piv)
        return True

    @property
    def dim(self) -> int:
        return len(self.rows)

    def _coerce(self, vec: np.ndarray) -> np.ndarray:
        if self.char:
            return np.asarray(vec, dtype=np.int64) % self.char
        out = np.empty(len(vec), dtype=object)
        for i, c in enumerate(vec):
            out[i] = c if isinstance(c, Fraction) else Fraction(c)
        return out


def zero_vector(width: int, char: int) -> np.ndarray:
    if char:
        return np.zeros(width, dtype=np.int64)
    out = np.empty(width, dtype=object)
    for i in range(width):
        out[i] = Fraction(0)
    return out
