"""Truncated multi-branch power series and lattices (fractional ideals) in
K = k((t))^r.

A nonzero :class:`FractionalIdeal` is always full rank: it lies between
``t^hi * Otilde`` and ``t^lo * Otilde`` where ``Otilde = k[[t]]^r``.  It is stored as
the subspace ``M / t^hi Otilde`` of ``t^lo Otilde / t^hi Otilde`` in reduced echelon
form, with coordinates ordered by ``(degree, branch)``.  Since the tail
``t^hi Otilde`` is part of the representation, every operation below is exact;
the truncation ``N`` only matters when a ring is first built from generators.

Elements of K handled by the lattice operations are finite Laurent
polynomial vectors: dicts ``{(degree, branch): coefficient}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .field import QQ
from .linalg import Echelon, nullspace


class LatticeError(ValueError):
    pass


class ShapeError(LatticeError):
    pass


class DomainError(LatticeError):
    pass


class ContainmentError(LatticeError):
    pass


class PrecisionError(LatticeError):
    """The truncation window is too small; ``advice`` suggests a larger one."""

    def __init__(self, msg, advice=None):
        super().__init__(msg if advice is None else "%s (try truncation >= %d)" % (msg, advice))
        self.advice = advice


INF = float("inf")


# --------------------------------------------------------------------------
# Truncated series


@dataclass(frozen=True)
class SeriesVec:
    """``r`` power series truncated at degree ``N`` (one per branch)."""

    coeffs: tuple  # r tuples of length N
    field: object = QQ

    @property
    def r(self) -> int:
        return len(self.coeffs)

    @property
    def N(self) -> int:
        return len(self.coeffs[0])

    @classmethod
    def zero(cls, r, N, field=QQ):
        return cls(tuple((field.zero,) * N for _ in range(r)), field)

    @classmethod
    def unit(cls, r, N, field=QQ):
        row = (field.one,) + (field.zero,) * (N - 1)
        return cls(tuple(row for _ in range(r)), field)

    @classmethod
    def from_terms(cls, terms, r, N, field=QQ):
        """Build from ``{(degree, branch): c}``; degrees >= N are dropped."""
        rows = [[field.zero] * N for _ in range(r)]
        for (d, b), c in terms.items():
            if d < 0:
                raise ShapeError("negative degree %d in a series" % d)
            if d < N:
                rows[b][d] = rows[b][d] + field(c)
        return cls(tuple(tuple(row) for row in rows), field)

    @classmethod
    def monomial(cls, d, b, r, N, field=QQ):
        return cls.from_terms({(d, b): 1}, r, N, field)

    def terms(self) -> dict:
        return {(d, b): c for b, row in enumerate(self.coeffs) for d, c in enumerate(row) if c}

    def __add__(self, other):
        _check_shape(self, other)
        return SeriesVec(
            tuple(tuple(x + y for x, y in zip(r1, r2)) for r1, r2 in zip(self.coeffs, other.coeffs)),
            self.field,
        )

    def __mul__(self, other):
        return series_mul(self, other)


def _check_shape(a: SeriesVec, b: SeriesVec):
    if (a.r, a.N) != (b.r, b.N):
        raise ShapeError("series shapes differ: (r, N) = %s vs %s" % ((a.r, a.N), (b.r, b.N)))


def series_mul(a: SeriesVec, b: SeriesVec) -> SeriesVec:
    """Branchwise product, truncated at degree N."""
    _check_shape(a, b)
    N = a.N
    zero = a.field.zero
    out = []
    for ra, rb in zip(a.coeffs, b.coeffs):
        row = [zero] * N
        for i, x in enumerate(ra):
            if x:
                for j in range(N - i):
                    y = rb[j]
                    if y:
                        row[i + j] = row[i + j] + x * y
        out.append(tuple(row))
    return SeriesVec(tuple(out), a.field)


def series_val(a: SeriesVec) -> tuple:
    """Per-branch valuation; ``INF`` for a branch that vanishes up to N."""
    out = []
    for row in a.coeffs:
        v = next((d for d, c in enumerate(row) if c), INF)
        out.append(v)
    return tuple(out)


# --------------------------------------------------------------------------
# Laurent polynomial vectors (finite, exact)


def pmul(x: dict, y: dict) -> dict:
    out: dict = {}
    for (d1, b1), c1 in x.items():
        for (d2, b2), c2 in y.items():
            if b1 == b2:
                k = (d1 + d2, b1)
                v = out.get(k)
                out[k] = c1 * c2 if v is None else v + c1 * c2
    return {k: v for k, v in out.items() if v}


def padd(x: dict, y: dict, scale=1) -> dict:
    out = dict(x)
    for k, c in y.items():
        v = out.get(k)
        out[k] = c * scale if v is None else v + c * scale
    return {k: v for k, v in out.items() if v}


def pscale(x: dict, c) -> dict:
    if not c:
        return {}
    return {k: v * c for k, v in x.items()}


def pshift(x: dict, e: int) -> dict:
    return {(d + e, b): c for (d, b), c in x.items()}


def pval(x: dict, r: int) -> tuple:
    v = [INF] * r
    for (d, b) in x:
        if d < v[b]:
            v[b] = d
    return tuple(v)


def unit_poly(r, field) -> dict:
    return {(0, b): field.one for b in range(r)}


def indicator(branches: Iterable[int], field) -> dict:
    return {(0, b): field.one for b in branches}


# --------------------------------------------------------------------------
# Fractional ideals


class FractionalIdeal:
    """A full-rank lattice in K (or the zero ideal); see module docstring."""

    __slots__ = ("r", "N", "field", "lo", "hi", "ech", "is_zero")

    def __init__(self, r, N, field, lo, hi, ech, is_zero=False):
        self.r = r
        self.N = N
        self.field = field
        self.lo = lo
        self.hi = hi
        self.ech = ech
        self.is_zero = is_zero

    # -- construction ------------------------------------------------------

    @classmethod
    def zero_ideal(cls, r, N, field=QQ):
        return cls(r, N, field, 0, 0, Echelon([], 0, field), is_zero=True)

    @classmethod
    def from_generators(cls, gens, lo, hi, r, N, field=QQ):
        """Lattice spanned by polynomial vectors ``gens`` plus ``t^hi Otilde``.

        Every generator must have valuation >= ``lo`` on every branch.
        """
        if hi < lo:
            hi = lo
        width = hi - lo
        ncols = width * r
        rows = []
        for g in gens:
            row = [field.zero] * ncols
            nz = False
            for (d, b), c in g.items():
                if d < lo:
                    raise ShapeError("generator has degree %d below window start %d" % (d, lo))
                if d < hi and c:
                    i = (d - lo) * r + b
                    row[i] = row[i] + c
                    nz = True
            if nz:
                rows.append(row)
        ech = Echelon(rows, ncols, field)
        return cls._canonical(r, N, field, lo, hi, ech)

    @classmethod
    def _canonical(cls, r, N, field, lo, hi, ech):
        rows, piv = ech.rows, ech.pivots
        # drop trailing degrees that are fully contained
        while hi > lo:
            last = {(hi - 1 - lo) * r + b for b in range(r)}
            if not last.issubset(piv):
                break
            keep = [(row, p) for row, p in zip(rows, piv) if p not in last]
            ncols = (hi - 1 - lo) * r
            rows = [row[:ncols] for row, _ in keep]
            piv = [p for _, p in keep]
            hi -= 1
        # drop leading degrees where every element vanishes
        while hi > lo and not any(any(row[:r]) for row in rows):
            rows = [row[r:] for row in rows]
            piv = [p - r for p in piv]
            lo += 1
        if hi == lo:
            lo = hi
            rows, piv = [], []
        ech = Echelon((rows, piv), (hi - lo) * r, field, reduced=True)
        return cls(r, N, field, lo, hi, ech)

    @classmethod
    def full(cls, r, N, field=QQ, shift=0):
        """``t^shift * Otilde``."""
        return cls(r, N, field, shift, shift, Echelon([], 0, field))

    # -- views ---------------------------------------------------------------

    def _vec(self, x: dict, lo=None, hi=None):
        """Coordinates of ``x`` on window [lo, hi) (defaults: own window).

        Returns ``None`` if ``x`` has a nonzero term below ``lo``.
        """
        lo = self.lo if lo is None else lo
        hi = self.hi if hi is None else hi
        r = self.r
        v = [self.field.zero] * ((hi - lo) * r)
        for (d, b), c in x.items():
            if d < lo:
                if c:
                    return None
                continue
            if d < hi:
                i = (d - lo) * r + b
                v[i] = v[i] + c
        return v

    def _poly(self, row, lo=None) -> dict:
        lo = self.lo if lo is None else lo
        r = self.r
        return {(lo + i // r, i % r): c for i, c in enumerate(row) if c}

    def basis_polys(self) -> list:
        """Reduced echelon basis of ``M / t^hi Otilde`` as polynomial vectors."""
        return [self._poly(row) for row in self.ech.rows]

    def generators(self, upto=None) -> list:
        """Basis rows plus the monomials ``t^d e_b`` for ``hi <= d < upto``."""
        gens = self.basis_polys()
        if upto is not None:
            one = self.field.one
            for d in range(self.hi, upto):
                for b in range(self.r):
                    gens.append({(d, b): one})
        return gens

    @property
    def shift(self) -> int:
        return max(0, -self.lo) if not self.is_zero else 0

    @property
    def conductor_exponent(self) -> int:
        return self.hi

    def pivots(self) -> list:
        """Pivot positions ``(degree, branch)`` of the window basis."""
        r = self.r
        return [(self.lo + p // r, p % r) for p in self.ech.pivots]

    def valuation_set(self, branch=None) -> list:
        """Pivot degrees inside the window (the tail ``[hi, oo)`` is implied).

        For a single branch lattice this is the set of valuations below ``hi``.
        """
        ps = self.pivots()
        if branch is not None:
            return sorted(d for d, b in ps if b == branch)
        return sorted(ps)

    def min_valuation(self, b) -> int:
        best = self.hi
        r = self.r
        for row in self.ech.rows:
            for i in range(b, len(row), r):
                if row[i]:
                    best = min(best, self.lo + i // r)
                    break
        return best

    def dim_window(self) -> int:
        return self.ech.dim

    def basis_series(self):
        """The lattice as ``(shift, [SeriesVec])``: basis of ``t^shift M`` modulo ``t^N``."""
        s = self.shift
        out = []
        for g in self.generators(upto=self.N - s):
            out.append(SeriesVec.from_terms(pshift(g, s), self.r, self.N, self.field))
        return s, out

    def __contains__(self, x: dict) -> bool:
        if self.is_zero:
            return not any(x.values())
        v = self._vec(x)
        if v is None:
            return False
        return v in self.ech

    def contains_lattice(self, other: "FractionalIdeal") -> bool:
        _check_compat(self, other)
        if other.is_zero:
            return True
        if self.is_zero:
            return False
        if other.lo < self.lo and other.hi > other.lo:
            pass  # membership test below catches it
        return all(g in self for g in other.generators(upto=max(self.hi, other.hi)))

    def key(self):
        return (self.r, self.is_zero, self.lo, self.hi, tuple(self.ech.pivots),
                tuple(tuple(row) for row in self.ech.rows))

    def __eq__(self, other):
        return isinstance(other, FractionalIdeal) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if self.is_zero:
            return "FractionalIdeal(0)"
        return "FractionalIdeal(r=%d, window=[%d,%d), dim=%d)" % (self.r, self.lo, self.hi, self.ech.dim)

    def describe(self) -> dict:
        """JSON-friendly summary: shift, window and pivot valuation data."""
        if self.is_zero:
            return {"zero": True}
        return {
            "shift": self.shift,
            "lo": self.lo,
            "conductor": self.hi,
            "pivots": [[d, b] for d, b in self.pivots()],
        }


def _check_compat(a: FractionalIdeal, b: FractionalIdeal):
    if a.r != b.r or a.field != b.field:
        raise ShapeError("lattices live in different ambient spaces")


def lat_span(vectors, shift=0, r=None, N=None, field=None) -> FractionalIdeal:
    """The lattice ``t^-shift * (span(vectors) + t^N Otilde)``.

    ``vectors`` are :class:`SeriesVec`; an empty list gives the zero ideal.
    """
    if not vectors:
        if r is None or N is None:
            raise ShapeError("empty span needs explicit r and N")
        return FractionalIdeal.zero_ideal(r, N, field or QQ)
    r0, N0, f0 = vectors[0].r, vectors[0].N, vectors[0].field
    for v in vectors:
        if (v.r, v.N) != (r0, N0):
            raise ShapeError("series shapes differ")
    gens = [pshift(v.terms(), -shift) for v in vectors]
    return FractionalIdeal.from_generators(gens, -shift, N0 - shift, r0, N0, f0)


def lat_from_polys(polys, lo, hi, r, N, field=QQ) -> FractionalIdeal:
    return FractionalIdeal.from_generators(polys, lo, hi, r, N, field)


def lat_sum(M: FractionalIdeal, L: FractionalIdeal) -> FractionalIdeal:
    _check_compat(M, L)
    if M.is_zero:
        return L
    if L.is_zero:
        return M
    lo, hi = min(M.lo, L.lo), max(M.hi, L.hi)
    gens = M.generators(upto=hi) + L.generators(upto=hi)
    return FractionalIdeal.from_generators(gens, lo, hi, M.r, M.N, M.field)


def lat_intersect(M: FractionalIdeal, L: FractionalIdeal) -> FractionalIdeal:
    _check_compat(M, L)
    if M.is_zero or L.is_zero:
        return FractionalIdeal.zero_ideal(M.r, M.N, M.field)
    lo, hi = min(M.lo, L.lo), max(M.hi, L.hi)
    ncols = (hi - lo) * M.r

    def ech(X):
        return Echelon([X._vec(g, lo, hi) for g in X.generators(upto=hi)], ncols, X.field)

    inter = ech(M).intersect(ech(L))
    polys = [M._poly(row, lo) for row in inter.rows]
    return FractionalIdeal.from_generators(polys, lo, hi, M.r, M.N, M.field)


def lat_mul(M: FractionalIdeal, L: FractionalIdeal) -> FractionalIdeal:
    """k-span of all products ``x*y`` with ``x`` in M, ``y`` in L."""
    _check_compat(M, L)
    if M.is_zero or L.is_zero:
        return FractionalIdeal.zero_ideal(M.r, M.N, M.field)
    r = M.r
    vM = max(M.min_valuation(b) for b in range(r))
    vL = max(L.min_valuation(b) for b in range(r))
    H = min(M.hi + vL, L.hi + vM)
    lo = M.lo + L.lo
    gM = M.generators(upto=max(M.hi, H - L.lo))
    gL = L.generators(upto=max(L.hi, H - M.lo))
    ncols = (H - lo) * r
    field = M.field
    probe = FractionalIdeal(r, M.N, field, lo, H, None)
    ech = Echelon([], ncols, field)
    rows = []
    for x in gM:
        for y in gL:
            if _minval(x) + _minval(y) >= H:
                continue
            v = probe._vec(pmul(x, y))
            if any(v):
                rows.append(v)
        if len(rows) > 4 * ncols:
            ech = Echelon(ech.rows + rows, ncols, field)
            rows = []
    ech = Echelon(ech.rows + rows, ncols, field)
    return FractionalIdeal._canonical(r, M.N, field, lo, H, ech)


def _minval(x: dict):
    return min((d for d, _ in x), default=INF)


def lat_colon(M: FractionalIdeal, L: FractionalIdeal) -> FractionalIdeal:
    """``(M : L) = {x in K : x L subset M}``."""
    _check_compat(M, L)
    if L.is_zero:
        raise DomainError("colon by the zero ideal")
    r, field = M.r, M.field
    if M.is_zero:
        return FractionalIdeal.zero_ideal(r, M.N, field)
    wlo = M.lo - L.hi
    whi = M.hi - L.lo
    if whi <= wlo:
        return FractionalIdeal.full(r, M.N, field, shift=whi)
    gens = L.generators(upto=max(L.hi, M.hi - wlo))
    low = min(M.lo, wlo + L.lo)
    ncols = (M.hi - low) * r
    Mext = Echelon([M._vec(g, low, M.hi) for g in M.basis_polys()], ncols, field)
    free = Mext.complement_columns()
    probe = FractionalIdeal(r, M.N, field, low, M.hi, None)
    unknowns = [(d, b) for d in range(wlo, whi) for b in range(r)]
    one = field.one
    # conditions[g][j] = residual coordinate j of (unknown . g), as a column per unknown
    cond_rows = []
    for g in gens:
        cols = []
        for (d, b) in unknowns:
            prod = {(d + e, bb): c for (e, bb), c in g.items() if bb == b}
            v = probe._vec(prod)
            res = Mext.reduce(v)
            cols.append([res[j] for j in free])
        for j in range(len(free)):
            row = [col[j] for col in cols]
            if any(row):
                cond_rows.append(row)
    sols = nullspace(cond_rows, len(unknowns), field)
    polys = [{unknowns[i]: c for i, c in enumerate(s) if c} for s in sols]
    del one
    return FractionalIdeal.from_generators(polys, wlo, whi, r, M.N, field)


class LatticeQuotient:
    """The finite-dimensional space ``M / L`` for ``L subset M``."""

    def __init__(self, M: FractionalIdeal, L: FractionalIdeal):
        _check_compat(M, L)
        if L.is_zero and not M.is_zero:
            raise DomainError("quotient by the zero ideal is infinite dimensional")
        if not M.contains_lattice(L):
            raise ContainmentError("denominator is not contained in numerator")
        self.M, self.L = M, L
        field = M.field
        if M.is_zero:
            self.lo = self.hi = 0
            self.reps = []
            self._den = self._ech = None
            return
        lo, hi = M.lo, max(M.hi, L.hi)
        self.lo, self.hi = lo, hi
        ncols = (hi - lo) * M.r
        self._den = Echelon([L._vec(g, lo, hi) for g in L.generators(upto=hi)], ncols, field)
        res = [self._den.reduce(M._vec(g, lo, hi)) for g in M.generators(upto=hi)]
        self._ech = Echelon(res, ncols, field)
        self.reps = [M._poly(row, lo) for row in self._ech.rows]

    @property
    def dim(self) -> int:
        return len(self.reps)

    def coords(self, x: dict):
        """Coordinates of the class of ``x`` (which must lie in M)."""
        if self._ech is None:
            return []
        v = self.M._vec(x, self.lo, self.hi)
        if v is None:
            raise ContainmentError("element is not in the numerator lattice")
        res = self._den.reduce(v)
        c = self._ech.coords(res)
        if c is None:
            raise ContainmentError("element is not in the numerator lattice")
        return c

    def is_zero_class(self, x: dict) -> bool:
        return not any(self.coords(x))

    def lift(self, coords) -> dict:
        out: dict = {}
        for c, rep in zip(coords, self.reps):
            if c:
                out = padd(out, rep, c)
        return out


def lat_quotient(M: FractionalIdeal, L: FractionalIdeal):
    """``(dim M/L, coset representatives)``."""
    q = LatticeQuotient(M, L)
    return q.dim, q.reps


def algebra_closure(generators, N=None, r=None, field=None, require_conductor=True) -> FractionalIdeal:
    """Smallest unital subalgebra of ``Otilde / t^N`` containing ``generators``.

    ``generators`` are :class:`SeriesVec` (or polynomial dicts, in which case
    ``r``, ``N`` and ``field`` are required).  With ``require_conductor`` the
    result must contain ``t^c Otilde`` for some ``2c <= N``; the returned lattice
    is then exact.  Without it, the span modulo ``t^N`` is returned with
    the tail ``t^N Otilde`` attached.
    """
    polys = []
    for g in generators:
        if isinstance(g, SeriesVec):
            r, N, field = g.r, g.N, g.field
            polys.append(g.terms())
        else:
            polys.append(dict(g))
    if r is None or N is None:
        raise ShapeError("algebra_closure needs r and N when no generator is given")
    field = field or QQ
    for p in polys:
        if any(d < 0 for d, _ in p):
            raise ShapeError("generators must lie in Otilde")
    probe = FractionalIdeal(r, N, field, 0, N, None)
    ncols = N * r

    def trunc(x):
        return {k: v for k, v in x.items() if k[0] < N}

    one = unit_poly(r, field)
    ech = Echelon([probe._vec(one)], ncols, field)
    queue = [one]
    while queue:
        v = queue.pop()
        for g in polys:
            w = trunc(pmul(v, g))
            vec = probe._vec(w)
            if ech.add(vec):
                queue.append(w)
    c = N
    for d in range(N - 1, -1, -1):
        if all(probe._vec({(d, b): field.one}) in ech for b in range(r)):
            c = d
        else:
            break
    if require_conductor and (c >= N or 2 * c > N):
        raise PrecisionError("closure has no conductor inside the truncation window", advice=2 * N)
    polys_basis = [probe._poly(row, 0) for row in ech.rows]
    hi = c if require_conductor else N
    return FractionalIdeal.from_generators(polys_basis, 0, hi, r, N, field)
