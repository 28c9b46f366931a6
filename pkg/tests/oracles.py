"""Independent oracles over integer exponent sets.

A monomial lattice on one branch is determined by its set of valuations
``S`` (closed under adding large integers).  We store the finite part below
a cutoff ``T`` together with the promise that every integer ``>= T`` lies in
``S``.  Everything here is plain integer set arithmetic, independent of the
linear algebra used by the package.
"""
from __future__ import annotations

from math import gcd
from functools import reduce


class ExpSet:
    """``{s in Z : s in finite or s >= T}`` with ``finite`` a subset of ``[lo, T)``."""

    def __init__(self, finite, T):
        self.T = T
        self.finite = frozenset(s for s in finite if s < T)

    def __contains__(self, s):
        return s >= self.T or s in self.finite

    @property
    def lo(self):
        return min(self.finite) if self.finite else self.T

    def canonical(self):
        T = self.T
        while T - 1 in self.finite:
            T -= 1
        return ExpSet(self.finite, T)

    def key(self):
        c = self.canonical()
        return (c.T, tuple(sorted(c.finite)))

    def __eq__(self, other):
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __le__(self, other):
        lo = self.lo
        return all(s in other for s in range(lo, max(self.T, other.T) + 1) if s in self)

    def __repr__(self):
        return "ExpSet(%s, T=%d)" % (sorted(self.finite), self.T)


def e_sum(a: ExpSet, b: ExpSet) -> ExpSet:
    T = min(a.T, b.T)
    return ExpSet({s for s in range(min(a.lo, b.lo), T) if s in a or s in b}, T)


def e_intersect(a: ExpSet, b: ExpSet) -> ExpSet:
    T = max(a.T, b.T)
    return ExpSet({s for s in range(max(a.lo, b.lo), T) if s in a and s in b}, T)


def e_mul(a: ExpSet, b: ExpSet) -> ExpSet:
    T = min(a.T + b.lo, b.T + a.lo)
    pts = {x + y for x in list(a.finite) + [a.T] for y in list(b.finite) + [b.T]}
    return ExpSet({s for s in pts if s < T}, T)


def e_colon(a: ExpSet, b: ExpSet) -> ExpSet:
    """``{x : x + b subset a}``."""
    lo = a.lo - b.lo
    T = a.T - b.lo
    out = set()
    for x in range(lo, T):
        # finite part of b, then the tail [b.T, oo) which needs [x + b.T, oo) in a
        head = all(x + y in a for y in range(b.lo, b.T) if y in b)
        tail = all(z in a for z in range(x + b.T, a.T + 1))
        if head and tail:
            out.add(x)
    return ExpSet(out, T)


def semigroup(gens) -> ExpSet:
    """Numerical semigroup generated by ``gens`` (gcd 1)."""
    g = reduce(gcd, gens)
    if g != 1:
        raise ValueError("generators must have gcd 1")
    m = min(gens)
    bound = max(gens) * m + 1
    reach = [False] * (bound + 1)
    reach[0] = True
    for s in range(1, bound + 1):
        reach[s] = any(s >= a and reach[s - a] for a in gens)
    # conductor: first run of m consecutive elements
    run = 0
    for s in range(bound + 1):
        run = run + 1 if reach[s] else 0
        if run == m:
            T = s - m + 1
            return ExpSet({x for x in range(T) if reach[x]}, T).canonical()
    raise AssertionError("bound too small")


def full(shift=0) -> ExpSet:
    return ExpSet(set(), shift)


def semigroup_chain(S: ExpSet) -> list:
    """``O_1 = S``, ``O_{i+1} = (m_i : m_i)`` with ``m_i`` the maximal ideal."""
    rings = [S]
    while rings[-1] != full(0):
        R = rings[-1]
        m = ExpSet(R.finite - {0}, R.T) if R.T > 0 else ExpSet(set(), 1)
        rings.append(e_colon(m, m))
    return rings


def semigroup_level(gens) -> int:
    return len(semigroup_chain(semigroup(gens))) - 1


def semigroup_dim_Q(gens) -> int:
    """Dimension of Q from the matrix description, by counting gaps."""
    rings = semigroup_chain(semigroup(gens))
    n = len(rings) - 1

    def entry(i, j):
        return rings[j] if i <= j else e_colon(rings[j], rings[i])

    total = 0
    for i in range(n):
        for j in range(n):
            M, L = entry(i, j), entry(n, j)
            total += sum(1 for s in range(M.lo, max(M.T, L.T)) if s in M and s not in L)
    return total
