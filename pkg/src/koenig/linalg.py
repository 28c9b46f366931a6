"""Exact dense linear algebra over a :mod:`koenig.field` field.

Row reduction is delegated to the compiled ``_kernels`` extension when it
is importable, and to ``_kernels_py`` otherwise.  Set ``KOENIG_PURE_PYTHON=1``
to force the fallback.
"""
from __future__ import annotations

import os

from .field import PrimeField

if os.environ.get("KOENIG_PURE_PYTHON"):
    from . import _kernels_py as _kernels
    BACKEND = "python"
else:
    try:
        from . import _kernels  # type: ignore[attr-defined]
        BACKEND = "compiled"
    except ImportError:  # pragma: no cover - depends on the build
        from . import _kernels_py as _kernels
        BACKEND = "python"


def rref(rows, ncols, field):
    """Reduced echelon form of ``rows``; returns ``(rows, pivots)``.

    The input is not modified.  Zero rows are dropped and pivots are monic.
    """
    if isinstance(field, PrimeField):
        p = field.characteristic
        work = [[int(x) for x in row] for row in rows]
        piv = _kernels.rref_modp(work, ncols, p)
        from .field import Fp
        return [[Fp(x, p) for x in row] for row in work], piv
    work = [list(row) for row in rows]
    piv = _kernels.rref_inplace(work, ncols)
    return work, piv


def nullspace(rows, ncols, field):
    """Basis of ``{v : row . v = 0 for every row}``."""
    red, piv = rref(rows, ncols, field)
    pivset = set(piv)
    zero = field.zero
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [zero] * ncols
        v[f] = field.one
        for row, p in zip(red, piv):
            if row[f]:
                v[p] = -row[f]
        basis.append(v)
    return basis


def rank(rows, ncols, field) -> int:
    return len(rref(rows, ncols, field)[1])


def transpose(m, ncols=None):
    if not m:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*m)]


def mat_vec(m, v, field):
    out = []
    for row in m:
        s = field.zero
        for a, b in zip(row, v):
            if a and b:
                s = s + a * b
        out.append(s)
    return out


def vec_mat(v, m, field):
    """Row vector times matrix."""
    ncols = len(m[0]) if m else 0
    out = [field.zero] * ncols
    for a, row in zip(v, m):
        if a:
            for j, b in enumerate(row):
                if b:
                    out[j] = out[j] + a * b
    return out


def mat_mul(a, b, field):
    return [vec_mat(row, b, field) for row in a]


def identity(n, field):
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]


def is_zero_vec(v) -> bool:
    return not any(v)


class Echelon:
    """A subspace of ``field^ncols`` held in reduced echelon form."""

    __slots__ = ("rows", "pivots", "ncols", "field", "_pivpos")

    def __init__(self, vectors, ncols, field, reduced=False):
        if reduced:
            self.rows, self.pivots = [list(r) for r in vectors[0]], list(vectors[1])
        else:
            self.rows, self.pivots = rref(vectors, ncols, field)
        self.ncols = ncols
        self.field = field
        self._pivpos = {p: i for i, p in enumerate(self.pivots)}

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, v):
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            f = v[p]
            if f:
                for j in range(p, self.ncols):
                    if row[j]:
                        v[j] = v[j] - f * row[j]
        return v

    def __contains__(self, v) -> bool:
        return is_zero_vec(self.reduce(v))

    def coords(self, v):
        """Coordinates of ``v`` in the echelon basis, or ``None`` if outside."""
        if not is_zero_vec(self.reduce(v)):
            return None
        return [v[p] for p in self.pivots]

    def add(self, v) -> bool:
        """Insert ``v`` keeping reduced form; returns False if already inside."""
        v = self.reduce(v)
        p = next((j for j, x in enumerate(v) if x), None)
        if p is None:
            return False
        inv = self.field.one / v[p]
        v = [x * inv if x else x for x in v]
        for row in self.rows:
            f = row[p]
            if f:
                for j in range(p, self.ncols):
                    if v[j]:
                        row[j] = row[j] - f * v[j]
        k = 0
        while k < len(self.pivots) and self.pivots[k] < p:
            k += 1
        self.rows.insert(k, v)
        self.pivots.insert(k, p)
        self._pivpos = {q: i for i, q in enumerate(self.pivots)}
        return True

    def contains_space(self, other: "Echelon") -> bool:
        return all(r in self for r in other.rows)

    def complement_columns(self):
        pv = set(self.pivots)
        return [j for j in range(self.ncols) if j not in pv]

    def __eq__(self, other):
        return (
            isinstance(other, Echelon)
            and self.ncols == other.ncols
            and self.pivots == other.pivots
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.ncols, tuple(self.pivots), tuple(tuple(r) for r in self.rows)))

    def sum(self, other: "Echelon") -> "Echelon":
        return Echelon(self.rows + other.rows, self.ncols, self.field)

    def intersect(self, other: "Echelon") -> "Echelon":
        # Zassenhaus: rows (u, u) for u in self, (w, 0) for w in other
        n = self.ncols
        zero = [self.field.zero] * n
        rows = [list(u) + list(u) for u in self.rows] + [list(w) + zero for w in other.rows]
        red, piv = rref(rows, 2 * n, self.field)
        inter = [row[n:] for row, p in zip(red, piv) if p >= n]
        return Echelon(inter, n, self.field)


class CoordBasis:
    """Exact coordinates with respect to a fixed list of independent vectors."""

    def __init__(self, vectors, ncols, field):
        k = len(vectors)
        zero, one = field.zero, field.one
        rows = []
        for i, v in enumerate(vectors):
            tag = [zero] * k
            tag[i] = one
            rows.append(list(v) + tag)
        red, piv = rref(rows, ncols + k, field)
        if any(p >= ncols for p in piv):
            raise ValueError("vectors are linearly dependent")
        self.rows, self.pivots = red, piv
        self.ncols, self.k, self.field = ncols, k, field

    def coords(self, v):
        """Coefficients ``c`` with ``v = sum c_i vectors[i]``, or ``None``."""
        n = self.ncols
        w = list(v) + [self.field.zero] * self.k
        for row, p in zip(self.rows, self.pivots):
            f = w[p]
            if f:
                for j in range(p, n + self.k):
                    if row[j]:
                        w[j] = w[j] - f * row[j]
        if any(w[:n]):
            return None
        return [-x for x in w[n:]]
