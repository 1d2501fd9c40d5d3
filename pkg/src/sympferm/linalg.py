"""Exact sparse linear algebra over the rationals.

Vectors are dicts mapping a hashable key to a nonzero ``Fraction``.  Only what
the invariant computations need is provided: echelon reduction, rank, kernel
and solving a (possibly redundant) system.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

SparseVec = dict


def _axpy(y: dict, a: Fraction, x: Mapping) -> None:
    """In place ``y += a*x``, dropping zeros."""
    for k, v in x.items():
        nv = y.get(k, 0) + a * v
        if nv:
            y[k] = nv
        else:
            y.pop(k, None)


class Echelon:
    """Incrementally maintained reduced basis of a span of sparse vectors.

    Each stored row has a pivot key with coefficient 1 that appears in no other
    stored row.  Optionally tracks how each stored row is expressed in terms of
    the inserted vectors (``track=True``), which is what :func:`solve` uses.
    """

    def __init__(self, order: Sequence[Hashable] | None = None, track: bool = False):
        self.rows: dict[Hashable, dict] = {}
        self.combos: dict[Hashable, dict] = {}
        self.track = track
        self._rank = {k: i for i, k in enumerate(order)} if order is not None else None
        self._count = 0

    def _pick_pivot(self, vec: Mapping):
        if self._rank is None:
            return next(iter(vec))
        return min(vec, key=self._rank.__getitem__)

    def reduce(self, vec: Mapping, combo: dict | None = None) -> dict:
        """Return the residual of ``vec`` after eliminating all stored pivots."""
        v = dict(vec)
        for p in [p for p in v if p in self.rows]:
            a = v.get(p)
            if a:
                _axpy(v, -a, self.rows[p])
                if combo is not None:
                    _axpy(combo, -a, self.combos[p])
        return v

    def add(self, vec: Mapping, label: Hashable | None = None) -> bool:
        """Insert a vector; return True if it enlarged the span."""
        combo = None
        if self.track:
            combo = {label if label is not None else self._count: Fraction(1)}
        self._count += 1
        v = self.reduce(vec, combo)
        if not v:
            return False
        p = self._pick_pivot(v)
        inv = 1 / Fraction(v[p])
        v = {k: c * inv for k, c in v.items()}
        if combo is not None:
            combo = {k: c * inv for k, c in combo.items()}
        # keep the basis fully reduced
        for q, row in self.rows.items():
            a = row.get(p)
            if a:
                _axpy(row, -a, v)
                if combo is not None:
                    _axpy(self.combos[q], -a, combo)
        self.rows[p] = v
        if combo is not None:
            self.combos[p] = combo
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


def rank(vectors: Iterable[Mapping]) -> int:
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return ech.rank


def solve(columns: Mapping[Hashable, Mapping] | Sequence[Mapping], target: Mapping) -> dict | None:
    """Find coefficients ``c`` with ``sum_j c_j * columns[j] == target`` exactly.

    ``columns`` may be redundant.  Returns a dict label -> Fraction (zero
    coefficients omitted) for one solution, or None if ``target`` is outside
    the span.
    """
    if not isinstance(columns, Mapping):
        columns = dict(enumerate(columns))
    ech = Echelon(track=True)
    for label, col in columns.items():
        ech.add(col, label)
    combo: dict = {}
    resid = ech.reduce(target, combo)
    if resid:
        return None
    # target - sum(stored rows coefficients) == 0, and combo holds -coeffs
    return {k: -c for k, c in combo.items() if c}


def nullspace(rows: Sequence[Mapping], ncols: Sequence[Hashable]) -> list[dict]:
    """Basis of ``{x : row . x = 0 for every row}`` over the given column keys."""
    ech = Echelon(order=list(ncols))
    for r in rows:
        ech.add(r)
    pivots = set(ech.rows)
    basis = []
    for free in ncols:
        if free in pivots:
            continue
        x = {free: Fraction(1)}
        for p, row in ech.rows.items():
            a = row.get(free)
            if a:
                x[p] = -a
        basis.append(x)
    return basis


def kernel_dimension(rows: Iterable[Mapping], ncols: int) -> int:
    return ncols - rank(rows)
