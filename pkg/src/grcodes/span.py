"""Howell normal form for submodules of (Z/p^a)^k.

This is the exact membership / equality backend for ideals: it treats an
ideal purely as an additive group spanned by x^t y^u g and shares no code
with the Groebner machinery it is used to check.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np


def _val(c: int, p: int, a: int) -> int:
    if c == 0:
        return a
    v = 0
    while c % p == 0:
        c //= p
        v += 1
    return v


class SpanBasis:
    """Row span of integer vectors modulo q = p^a in canonical Howell form.

    ``rows`` is a tuple of tuples with strictly increasing pivot columns;
    each pivot is exactly p^v, entries above a pivot are reduced into
    [0, p^v), and the Howell property holds: the rows whose pivot lies at
    or after column c span every element vanishing before c.  Two spans are
    equal iff their ``rows`` are equal.
    """

    __slots__ = ("p", "a", "q", "ncols", "rows", "pivots", "_hash")

    def __init__(self, p: int, a: int, ncols: int, vectors: Iterable[Sequence[int]] = ()):
        self.p, self.a, self.q, self.ncols = p, a, p**a, ncols
        self.rows, self.pivots = self._howell([list(map(int, v)) for v in vectors])
        self._hash = hash((self.q, self.ncols, self.rows))

    def _howell(self, pending: list[list[int]]):
        p, a, q, k = self.p, self.a, self.q, self.ncols
        pending = [[c % q for c in v] for v in pending]
        pending = [v for v in pending if any(v)]
        basis: list[list[int]] = []
        pivots: list[tuple[int, int]] = []  # (column, valuation)
        for col in range(k):
            best, best_v = None, a
            for idx, v in enumerate(pending):
                if v[col]:
                    vv = _val(v[col], p, a)
                    if vv < best_v:
                        best, best_v = idx, vv
            if best is None:
                continue
            row = pending.pop(best)
            pv = p**best_v
            unit = (row[col] // pv) % (q // pv)
            inv = pow(unit, -1, q // pv) if q // pv > 1 else 1
            row = [(c * inv) % q for c in row]
            # the pivot entry is now p^v modulo q
            for idx, v in enumerate(pending):
                if v[col]:
                    f = v[col] // pv
                    pending[idx] = [(c - f * r) % q for c, r in zip(v, row)]
            if best_v > 0:
                sat = [(c * p ** (a - best_v)) % q for c in row]
                if any(sat):
                    pending.append(sat)
            pending = [v for v in pending if any(v)]
            basis.append(row)
            pivots.append((col, best_v))
        # reduce entries above pivots, left to right
        for i, (col, v) in enumerate(pivots):
            pv = p**v
            for j in range(i):
                f = basis[j][col] // pv
                if f:
                    basis[j] = [(c - f * r) % q for c, r in zip(basis[j], basis[i])]
        return tuple(tuple(r) for r in basis), tuple(pivots)

    # comparison ----------------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, SpanBasis) and (self.q, self.ncols, self.rows) == (other.q, other.ncols, other.rows)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"SpanBasis(q={self.q}, rank={len(self.rows)}, order={self.cardinality})"

    @property
    def key(self):
        return self.rows

    @property
    def cardinality(self) -> int:
        return int(np.prod([self.p ** (self.a - v) for _, v in self.pivots], dtype=object)) if self.pivots else 1

    def contains(self, vector: Sequence[int]) -> bool:
        q = self.q
        v = [int(c) % q for c in vector]
        for row, (col, val) in zip(self.rows, self.pivots):
            if any(v[:col]):
                return False
            c = v[col]
            if c:
                pv = self.p**val
                if c % pv:
                    return False
                f = c // pv
                v = [(x - f * r) % q for x, r in zip(v, row)]
        return not any(v)

    def issubset(self, other: "SpanBasis") -> bool:
        return all(other.contains(r) for r in self.rows)

    def __le__(self, other: "SpanBasis") -> bool:
        return self.issubset(other)

    def __add__(self, other: "SpanBasis") -> "SpanBasis":
        return SpanBasis(self.p, self.a, self.ncols, self.rows + other.rows)

    def elements(self) -> np.ndarray:
        """Every element of the span, as an (N, ncols) int64 array without repeats."""
        out = np.zeros((1, self.ncols), dtype=np.int64)
        for row, (_, v) in zip(self.rows, self.pivots):
            order = self.p ** (self.a - v)
            r = np.array(row, dtype=np.int64)
            mult = (np.arange(order, dtype=np.int64)[:, None] * r) % self.q
            out = ((out[:, None, :] + mult[None, :, :]) % self.q).reshape(-1, self.ncols)
        return out
