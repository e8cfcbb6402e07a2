"""Sparse exact linear algebra over a field (rows are dicts col -> value)."""
from __future__ import annotations

from typing import Iterable


class Echelon:
    """Incrementally maintained semi-echelon basis of a row space.

    Column 0 is treated as the most significant column.
    """

    def __init__(self):
        self.pivots: dict[int, dict] = {}

    def __len__(self):
        return len(self.pivots)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict) -> dict:
        row = dict(row)
        pivots = self.pivots
        while row:
            c = min((k for k in row if k in pivots), default=None)
            if c is None:
                return row
            p = pivots[c]
            f = row[c]
            for k, v in p.items():
                nv = row.get(k)
                nv = -f * v if nv is None else nv - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        return row

    def add(self, row: dict) -> bool:
        """Insert ``row``; True iff it was independent of the current span."""
        row = self.reduce(row)
        if not row:
            return False
        c = min(row)
        inv = 1 / row[c]
        self.pivots[c] = {k: v * inv for k, v in row.items()}
        return True

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)


def rank(rows: Iterable[dict]) -> int:
    ech = Echelon()
    for r in rows:
        ech.add(r)
    return ech.rank


def nullspace(rows: Iterable[dict], ncols: int) -> list[dict]:
    """Basis of {v : row . v = 0 for all rows}, one vector per free column.

    The basis is the canonical one read off the reduced row echelon form,
    so it depends only on the row space.
    """
    ech = Echelon()
    for r in rows:
        ech.add(r)
    # back-substitute to reduced form
    piv = dict(sorted(ech.pivots.items()))
    order = sorted(piv, reverse=True)
    reduced: dict[int, dict] = {}
    for c in order:
        row = dict(piv[c])
        for k in [k for k in row if k != c and k in reduced]:
            f = row.get(k)
            if not f:
                continue
            for kk, v in reduced[k].items():
                nv = row.get(kk)
                nv = -f * v if nv is None else nv - f * v
                if nv:
                    row[kk] = nv
                else:
                    row.pop(kk, None)
        reduced[c] = row
    free = [c for c in range(ncols) if c not in reduced]
    basis = []
    for fc in free:
        vec = {fc: 1}
        for c, row in reduced.items():
            v = row.get(fc)
            if v:
                vec[c] = -v
        basis.append(vec)
    return basis
