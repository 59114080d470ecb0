"""GF(2) linear algebra on int bitsets.

A vector over GF(2)^n is a Python int whose bit ``i`` is coordinate ``i``.
Pivots are always the lowest set bit, so results do not depend on anything
but the input order.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

import numpy as np


def to_bits(values: Iterable[int]) -> int:
    out = 0
    for i, v in enumerate(values):
        if v & 1:
            out |= 1 << i
    return out


def from_bits(bits: int, n: int) -> np.ndarray:
    arr = np.zeros(n, dtype=np.uint8)
    i = 0
    while bits:
        if bits & 1:
            arr[i] = 1
        bits >>= 1
        i += 1
    if i > n:
        raise ValueError(f"bitset has bits beyond length {n}")
    return arr


def low_bit(v: int) -> int:
    return (v & -v).bit_length() - 1


def parity(v: int) -> int:
    return v.bit_count() & 1


class Echelon:
    """Incrementally built row echelon basis.

    Each stored row may carry a *tag*: a bitset recording which inserted
    vectors it is a combination of.  ``reduce`` then also reports the
    combination that was subtracted.
    """

    def __init__(self):
        self._rows: dict[int, tuple[int, int]] = {}  # pivot -> (row, tag)
        self._count = 0

    def __len__(self) -> int:
        return len(self._rows)

    def reduce(self, v: int, tag: int = 0) -> tuple[int, int]:
        """Fully reduce ``v``; returns ``(remainder, tag of what was subtracted)``."""
        rows = self._rows
        out = 0
        while v:
            p = low_bit(v)
            hit = rows.get(p)
            if hit is None:
                out |= 1 << p
                v &= v - 1
            else:
                v ^= hit[0]
                tag ^= hit[1]
        return out, tag

    def add(self, v: int, tag: Optional[int] = None) -> bool:
        """Insert ``v``; returns False if it was already in the span."""
        if tag is None:
            tag = 1 << self._count
        self._count += 1
        r, t = self.reduce(v, tag)
        if not r:
            return False
        self._rows[low_bit(r)] = (r, t)
        return True

    def contains(self, v: int) -> bool:
        return self.reduce(v)[0] == 0


def rank(rows: Sequence[int]) -> int:
    ech = Echelon()
    return sum(ech.add(r, 0) for r in rows)


def rref(rows: Sequence[int]) -> dict[int, int]:
    """Reduced row echelon form as ``{pivot column: row}``."""
    piv: dict[int, int] = {}
    for v in rows:
        while v:
            p = low_bit(v)
            if p in piv:
                v ^= piv[p]
            else:
                piv[p] = v
                break
    order = sorted(piv)
    for i in range(len(order) - 1, -1, -1):
        p = order[i]
        bit = 1 << p
        row_p = piv[p]
        for q in order[:i]:
            if piv[q] & bit:
                piv[q] ^= row_p
    return piv


def nullspace(rows: Sequence[int], n_cols: int) -> list[int]:
    """Basis of ``{x : row . x = 0 for all rows}``, one vector per free column."""
    piv = rref(rows)
    basis = []
    for f in range(n_cols):
        if f in piv:
            continue
        v = 1 << f
        bit = 1 << f
        for p, row in piv.items():
            if row & bit:
                v |= 1 << p
        basis.append(v)
    return basis


def solve(columns: Sequence[int], target: int) -> Optional[int]:
    """Find ``c`` with ``sum_i c_i columns[i] == target``; bit i of c is c_i."""
    ech = Echelon()
    for i, col in enumerate(columns):
        ech.add(col, 1 << i)
    r, tag = ech.reduce(target, 0)
    return tag if r == 0 else None


def matrix_to_rows(M: np.ndarray) -> list[int]:
    return [to_bits(row) for row in np.asarray(M) % 2]
