"""Smith normal form over the integers.

All arithmetic runs on Python ints; the arrays handed back are ``int64``
and conversion refuses any entry that would not fit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_INT64_MAX = np.iinfo(np.int64).max


def _to_array(rows: list[list[int]], n_rows: int, n_cols: int) -> np.ndarray:
    for row in rows:
        for x in row:
            if abs(x) > _INT64_MAX:
                raise OverflowError(f"SNF entry {x} does not fit in int64")
    return np.array(rows, dtype=np.int64).reshape(n_rows, n_cols)


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _snf(R, n: int) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return ``(D, P, Q)`` as nested lists with ``D == P @ R @ Q``."""
    A = [[int(x) for x in row] for row in R]
    m = len(A)
    P = _identity(m)
    Q = _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        P[i], P[j] = P[j], P[i]

    def swap_cols(i, j):
        for M in (A, Q):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):  # row dst += c * row src
        A[dst] = [a + c * b for a, b in zip(A[dst], A[src])]
        P[dst] = [a + c * b for a, b in zip(P[dst], P[src])]

    def add_col(src, dst, c):  # col dst += c * col src
        for M in (A, Q):
            for row in M:
                row[dst] += c * row[src]

    t = 0
    while t < min(m, n):
        # smallest |entry| in the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(t, i, -(A[i][t] // p))
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(t, j, -(A[t][j] // p))
                    if A[t][j]:
                        dirty = True
            if not dirty:
                # pivot must divide the whole trailing block
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if A[i][j] % p), None)
                if bad is None:
                    break
                add_row(bad[0], t, 1)
                continue
            # move the smallest nonzero remainder in row/column t to the pivot
            cands = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
            cands += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
            _, i, j = min(cands)
            swap_rows(t, i)
            swap_cols(t, j)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            P[t] = [-x for x in P[t]]
        t += 1
    return A, P, Q


def smith_normal_form(R) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Smith normal form ``D = P @ R @ Q`` with ``P``, ``Q`` unimodular.

    Nonzero diagonal entries of ``D`` are positive and each divides the next.

    >>> D, P, Q = smith_normal_form([[2, 4], [0, 3]])
    >>> D.tolist()
    [[1, 0], [0, 6]]
    """
    R = np.asarray(R, dtype=object)
    if R.ndim != 2:
        R = R.reshape(0, 0)
    m, n = R.shape
    D, P, Q = _snf(R.tolist() if m else [], n)
    return _to_array(D, m, n), _to_array(P, m, m), _to_array(Q, n, n)


@dataclass(frozen=True)
class AbelianizationData:
    """Abelian invariants of a presentation: ``Z^rank + sum Z/t``."""

    rank: int
    torsion: tuple[int, ...]
    snf: np.ndarray
    P: np.ndarray
    Q: np.ndarray

    @property
    def n_gens(self) -> int:
        return self.Q.shape[0]

    def diagonal(self) -> list[int]:
        """Diagonal of ``snf`` padded with zeros to one entry per generator."""
        k = min(self.snf.shape)
        diag = [int(self.snf[i, i]) for i in range(k)]
        return diag + [0] * (self.n_gens - k)

    def coordinates(self, exponents) -> tuple[int, ...]:
        """Image of an exponent-sum vector in ``Z/t_1 + ... + Z^rank``.

        Unit factors are dropped, so equal tuples mean equal elements of H_1.
        A row vector ``x`` is a relation iff ``(x @ Q)[j]`` is a multiple of
        the j-th diagonal entry.
        """
        y = [sum(int(exponents[i]) * int(self.Q[i, j]) for i in range(self.n_gens))
             for j in range(self.n_gens)]
        out = []
        for yi, d in zip(y, self.diagonal()):
            if d == 1:
                continue
            out.append(yi % d if d else yi)
        return tuple(out)

    def __str__(self):
        parts = [f"Z/{t}" for t in self.torsion] + ["Z"] * self.rank
        return " + ".join(parts) if parts else "0"


def abelian_invariants(R, n_gens: int) -> AbelianizationData:
    """Abelian invariants of ``Z^n_gens / rowspace(R)``."""
    m = len(R)
    D, P, Q = _snf([list(r) for r in R], n_gens)
    diag = [D[i][i] for i in range(min(m, n_gens))]
    diag += [0] * (n_gens - len(diag))
    torsion = tuple(d for d in diag if d > 1)
    rank = sum(1 for d in diag if d == 0)
    return AbelianizationData(
        rank=rank,
        torsion=torsion,
        snf=_to_array(D, m, n_gens),
        P=_to_array(P, m, m),
        Q=_to_array(Q, n_gens, n_gens),
    )
