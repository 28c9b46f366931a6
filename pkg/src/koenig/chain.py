"""Local curve singularities given by branch parametrizations, and their
normalization chains ``O = O_1 < O_2 < ... < O_{n+1} = Otilde``.

Each step replaces a ring R by ``End_R(I_Z) = (I_Z : I_Z)``, where ``I_Z``
is the ideal of elements vanishing at every singular local factor of R.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .field import QQ
from .lattice import (
    FractionalIdeal,
    LatticeError,
    PrecisionError,
    algebra_closure,
    lat_colon,
    lat_intersect,
    lat_mul,
    unit_poly,
)


class RingError(LatticeError):
    """Input does not describe a (local) ring lattice."""


class ConsistencyError(LatticeError):
    """An identity that must hold exactly failed; usually a precision issue."""


MAX_TRUNCATION = 1024


@dataclass(frozen=True)
class LocalRing:
    lattice: FractionalIdeal
    generators: tuple = ()  # polynomial dicts; kept so the ring can be rebuilt
    truncation: int = 0
    name: str = ""

    @property
    def r(self) -> int:
        return self.lattice.r

    @property
    def conductor(self) -> int:
        return self.lattice.hi

    @property
    def field(self):
        return self.lattice.field


def _closure_at(gens, r, N, field):
    return algebra_closure(gens, N=N, r=r, field=field)


def choose_truncation(gens, r, field=QQ, start=None) -> int:
    """Smallest safe truncation for the ring generated by ``gens``.

    Doubles the window until the closure shows a conductor ``c`` with
    ``2c <= N``, then settles on ``3c + 3``.
    """
    maxdeg = max((d for g in gens for d, _ in g), default=0)
    N = start or max(8, 2 * (maxdeg + 1))
    while N <= MAX_TRUNCATION:
        try:
            L = _closure_at(gens, r, N, field)
        except PrecisionError:
            N *= 2
            continue
        return max(3 * L.hi + 3, 8)
    raise PrecisionError("no conductor found below truncation %d" % MAX_TRUNCATION, advice=None)


def local_ring(gens, r, field=QQ, truncation=None, name="", check=True) -> LocalRing:
    """Complete local ring topologically generated by ``gens`` inside Otilde."""
    gens = tuple(dict(g) for g in gens)
    for g in gens:
        for (d, b) in g:
            if d < 0 or not 0 <= b < r:
                raise RingError("generator term (%d, %d) outside Otilde with r = %d" % (d, b, r))
    if truncation is None:
        truncation = choose_truncation(gens, r, field)
    L = _closure_at(gens, r, truncation, field)
    R = LocalRing(L, gens, truncation, name)
    if check:
        validate_ring(R)
    return R


def ring_from_lattice(L: FractionalIdeal, name="") -> LocalRing:
    R = LocalRing(L, (), L.N, name)
    validate_ring(R)
    return R


def is_ring(L: FractionalIdeal) -> bool:
    if L.is_zero or L.lo != 0:
        return False
    if unit_poly(L.r, L.field) not in L:
        return False
    return L.contains_lattice(lat_mul(L, L))


def validate_ring(R: LocalRing):
    L = R.lattice
    if not is_ring(L):
        raise RingError("lattice is not a unital subring of Otilde")
    if len(branch_blocks(L)) != 1:
        raise RingError("ring is not local (branches split into several local factors)")


def branch_blocks(R: FractionalIdeal) -> list:
    """Branches grouped by the local factors of the ring lattice ``R``.

    The residue map ``R -> k^r`` has image a unital subalgebra of ``k^r``,
    which is spanned by the indicator vectors of a partition; that partition
    is returned (blocks sorted by smallest branch).
    """
    r = R.r
    if R.hi <= 0:
        return [[b] for b in range(r)]
    images = [[row[b] for b in range(r)] for row in R.ech.rows] if R.lo == 0 else []
    blocks: list = []
    for b in range(r):
        for blk in blocks:
            a = blk[0]
            if all(v[a] == v[b] for v in images):
                blk.append(b)
                break
        else:
            blocks.append([b])
    one = R.field.one
    for blk in blocks:
        if {(0, b): one for b in blk} not in R:
            raise ConsistencyError("block idempotent missing from ring lattice")
    return blocks


def block_is_regular(R: FractionalIdeal, block) -> bool:
    if len(block) != 1:
        return False
    return {(1, block[0]): R.field.one} in R


@dataclass
class SingularIdeal:
    ideal: FractionalIdeal
    regular: bool
    blocks: list
    singular_blocks: list


def singular_ideal(R: FractionalIdeal) -> SingularIdeal:
    """``I_Z``: elements of R vanishing at every singular local factor."""
    blocks = branch_blocks(R)
    sing = [blk for blk in blocks if not block_is_regular(R, blk)]
    if not sing:
        return SingularIdeal(R, True, blocks, [])
    one = R.field.one
    r = R.r
    sb = {b for blk in sing for b in blk}
    gens = [{(1 if b in sb else 0, b): one} for b in range(r)]
    lo = 0
    D = FractionalIdeal.from_generators(gens, lo, 1, r, R.N, R.field)
    return SingularIdeal(lat_intersect(R, D), False, blocks, sing)


def is_regular(R: FractionalIdeal) -> bool:
    return singular_ideal(R).regular


def full_lattice(R: FractionalIdeal) -> FractionalIdeal:
    return FractionalIdeal.full(R.r, R.N, R.field)


def sharp(R: FractionalIdeal) -> FractionalIdeal:
    """``R# = (I_Z : I_Z)``."""
    si = singular_ideal(R)
    if si.regular:
        raise LatticeError("sharp of a regular ring is undefined")
    S = lat_colon(si.ideal, si.ideal)
    if not (S.contains_lattice(R) and full_lattice(R).contains_lattice(S)):
        raise ConsistencyError("R# is not between R and Otilde")
    if S == R:
        raise ConsistencyError("R# = R for a non-regular ring")
    return S


def duality_check(R: FractionalIdeal) -> dict:
    """``(R : R#) = I_Z`` and ``(R : I_Z) = R#``."""
    si = singular_ideal(R)
    if si.regular:
        raise LatticeError("duality check needs a non-regular ring")
    S = lat_colon(si.ideal, si.ideal)
    a = lat_colon(R, S) == si.ideal
    b = lat_colon(R, si.ideal) == S
    return {"conductor_is_IZ": a, "dual_of_IZ_is_sharp": b, "ok": a and b}


@dataclass
class NormalizationChain:
    rings: list
    ideals: list = dc_field(default_factory=list)  # I_Z of O_1..O_n
    blocks: list = dc_field(default_factory=list)  # branch blocks of O_1..O_{n+1}
    truncation: int = 0

    @property
    def level(self) -> int:
        return len(self.rings) - 1

    @property
    def r(self) -> int:
        return self.rings[0].r


def _chain_from(L: FractionalIdeal) -> NormalizationChain:
    rings = [L]
    ideals, blocks = [], []
    r = L.r
    guard = max(1, r * max(L.hi, 1))
    while True:
        R = rings[-1]
        si = singular_ideal(R)
        blocks.append(si.blocks)
        if si.regular:
            break
        if len(rings) > guard:
            raise PrecisionError("normalization chain does not terminate within r*c steps")
        S = lat_colon(si.ideal, si.ideal)
        if not (S.contains_lattice(R) and full_lattice(R).contains_lattice(S)) or S == R:
            raise ConsistencyError("endomorphism ring step is not a strict overring")
        ideals.append(si.ideal)
        rings.append(S)
    if rings[-1] != full_lattice(L):
        raise ConsistencyError("chain stops before the normalization")
    return NormalizationChain(rings, ideals, blocks, L.N)


def normalization_chain(O: LocalRing, verify=True) -> NormalizationChain:
    ch = _chain_from(O.lattice)
    if verify and O.generators:
        O2 = local_ring(O.generators, O.r, O.field, truncation=O.truncation + 4, check=False)
        ch2 = _chain_from(O2.lattice)
        if [R.key()[1:] for R in ch.rings] != [R.key()[1:] for R in ch2.rings]:
            raise PrecisionError("chain changes when the truncation grows", advice=2 * O.truncation)
    return ch
