"""The König order of a normalization chain as a matrix of fractional ideals.

Entry ``(i, j)`` (0-based here) is ``O_j`` for ``i <= j`` and the colon ideal
``I_{i,j} = (O_j : O_i)`` for ``i > j``.  Products are ordinary matrix
products, so ``A[i][k] * A[k][j]`` must lie in ``A[i][j]``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .chain import ConsistencyError, LocalRing, normalization_chain, NormalizationChain
from .lattice import FractionalIdeal, LatticeError, lat_colon, lat_mul


@dataclass
class OrderMatrix:
    entries: list  # (n+1) x (n+1) FractionalIdeal

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def diagonal(self):
        return [self.entries[i][i] for i in range(self.size)]

    def describe(self):
        return [[e.describe() for e in row] for row in self.entries]


def build_order(chain: NormalizationChain, verify=True) -> OrderMatrix:
    rings = chain.rings
    m = len(rings)
    entries = [[None] * m for _ in range(m)]
    for i in range(m):
        for j in range(m):
            entries[i][j] = rings[j] if i <= j else lat_colon(rings[j], rings[i])
    A = OrderMatrix(entries)
    if verify:
        bad = closure_violations(A)
        if bad:
            raise ConsistencyError("order matrix is not closed under multiplication at %s" % bad[:3])
    return A


def closure_violations(A: OrderMatrix) -> list:
    """All triples ``(i, k, j)`` with ``A_ik * A_kj`` not inside ``A_ij``."""
    m = A.size
    bad = []
    for i in range(m):
        for k in range(m):
            for j in range(m):
                if not A[i, j].contains_lattice(lat_mul(A[i, k], A[k, j])):
                    bad.append((i, k, j))
    return bad


def hierarchy_check(A: OrderMatrix) -> dict:
    """Row entries grow to the right; column entries shrink below the diagonal."""
    m = A.size
    failures = []
    for i in range(m):
        for j in range(m - 1):
            if not A[i, j + 1].contains_lattice(A[i, j]):
                failures.append({"kind": "row", "row": i + 1, "cols": [j + 1, j + 2]})
    for j in range(m):
        for i in range(j, m - 1):
            if not A[i, j].contains_lattice(A[i + 1, j]):
                failures.append({"kind": "column", "col": j + 1, "rows": [i + 1, i + 2]})
    return {"ok": not failures, "failures": failures}


def diagonal_lattice(exponents, N, field) -> FractionalIdeal:
    """``prod_b t^{a_b} k[[t]]``."""
    r = len(exponents)
    lo = min(exponents)
    hi = max(exponents)
    gens = [{(d, b): field.one} for b, a in enumerate(exponents) for d in range(a, hi)]
    return FractionalIdeal.from_generators(gens, lo, hi, r, N, field)


def top_row_projectivity(A: OrderMatrix) -> dict:
    """Every entry of the last row is a diagonal lattice over Otilde."""
    m = A.size
    rows = []
    ok = True
    for k in range(m):
        M = A[m - 1, k]
        exps = [M.min_valuation(b) for b in range(M.r)]
        diag = M == diagonal_lattice(exps, M.N, M.field)
        ok = ok and diag
        rows.append({"col": k + 1, "exponents": exps, "diagonal": diag})
    if not ok:
        raise ConsistencyError("bottom row entry is not a projective Otilde-lattice")
    return {"ok": ok, "entries": rows}


def auslander_compare(O: LocalRing, chain: NormalizationChain | None = None) -> dict:
    """For level 1 the order is ``[[O, Otilde], [C, Otilde]]`` with C the conductor."""
    chain = chain or normalization_chain(O)
    if chain.level != 1:
        raise LatticeError("Auslander comparison needs level 1, got %d" % chain.level)
    A = build_order(chain)
    L = O.lattice
    full = FractionalIdeal.full(L.r, L.N, L.field)
    C = lat_colon(L, full)
    expected = [[L, full], [C, full]]
    ok = all(A[i, j] == expected[i][j] for i in range(2) for j in range(2))
    return {"ok": ok, "conductor": C.describe()}
