"""Built-in corpus of simple (ADE) plane curve singularities.

Each germ ``f(u, v) = 0`` is given by a rational branch parametrization; the
ring is generated by the u- and v-vectors.  ``check_equation`` confirms the
parametrization satisfies ``f`` up to the truncation.

Expected invariants (level, global dimension of Q) and the quiver with
relations of Q are recorded alongside for comparison.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from importlib import resources

from .chain import local_ring
from .field import QQ
from .lattice import padd, pmul, pscale


@dataclass
class Fixture:
    name: str
    family: str
    m: int
    branches: int
    u: dict  # {(degree, branch): Fraction}
    v: dict
    equation: list  # [(coef, i, j)] meaning sum coef * u^i v^j
    level: int
    gl_dim: int
    presentation: dict = dc_field(default_factory=dict)

    @property
    def generators(self):
        return [self.u, self.v]

    def ring(self, field=QQ, truncation=None):
        gens = [{k: field(c) for k, c in g.items()} for g in self.generators]
        return local_ring(gens, self.branches, field, truncation=truncation, name=self.name)


def _poly_power(x, e, one):
    out = one
    for _ in range(e):
        out = pmul(out, x)
    return out


def equation_residual(u, v, equation, r, N) -> dict:
    """``f(u, v)`` truncated below degree ``N`` (empty when satisfied)."""
    one = {(0, b): Fraction(1) for b in range(r)}
    total: dict = {}
    for coef, i, j in equation:
        term = pmul(_poly_power(u, i, one), _poly_power(v, j, one))
        total = padd(total, pscale(term, Fraction(coef)))
    return {k: c for k, c in total.items() if k[0] < N and c}


def check_equation(fx: Fixture, N=64) -> bool:
    return not equation_residual(fx.u, fx.v, fx.equation, fx.branches, N)


def _mono(d, b, c=1):
    return {(d, b): Fraction(c)}


def _sum(*ps):
    out: dict = {}
    for p in ps:
        out = padd(out, p)
    return out


# --------------------------------------------------------------------------
# Quiver presentations of Q.  Vertices 1..n; a path is a tuple of arrow
# labels composed right to left, so ("b1", "a1") means a1 first.


def _a_presentation(n, extra=False):
    arrows = []
    rels = []
    for k in range(1, n):
        arrows.append(("a%d" % k, k + 1, k))  # alpha_k : k+1 -> k
        arrows.append(("b%d" % k, k, k + 1))  # beta_k  : k -> k+1
    for k in range(1, n - 1):
        rels.append([(1, ("b%d" % k, "a%d" % k)), (-1, ("a%d" % (k + 1), "b%d" % (k + 1)))])
    if n >= 2:
        rels.append([(1, ("b%d" % (n - 1), "a%d" % (n - 1)))])
    if extra and n >= 2:
        arrows.append(("bp", 1, 2))  # beta' : 1 -> 2
        rels.append([(1, ("bp", "a1"))])
        if n >= 3:
            rels.append([(1, ("b2", "bp"))])
    return {
        "vertices": list(range(1, n + 1)),
        "arrows": [{"label": a, "source": s, "target": t} for a, s, t in arrows],
        "relations": [[[c, list(p)] for c, p in rel] for rel in rels],
    }


def a_fixture(m: int) -> Fixture:
    n = (m + 1) // 2
    eq = [(1, 2, 0), (-1, 0, m + 1)]  # u^2 - v^(m+1)
    if m % 2 == 0:
        u, v, r = _mono(m + 1, 0), _mono(2, 0), 1
    else:
        r = 2
        v = _sum(_mono(1, 0), _mono(1, 1))
        u = _sum(_mono(n, 0), _mono(n, 1, -1))
    gl = 0 if m <= 2 else 2
    return Fixture("A%d" % m, "A", m, r, u, v, eq, n, gl, _a_presentation(n))


def d_fixture(m: int) -> Fixture:
    # v (u^2 - v^(m-2)); branch 0 is the line v = 0
    n = m // 2
    eq = [(1, 2, 1), (-1, 0, m - 1)]
    if m % 2 == 1:
        r = 2
        u = _sum(_mono(1, 0), _mono(m - 2, 1))
        v = _mono(2, 1)
    else:
        r = 3
        h = (m - 2) // 2
        u = _sum(_mono(1, 0), _mono(h, 1), _mono(h, 2, -1))
        v = _sum(_mono(1, 1), _mono(1, 2))
    gl = 2 if m <= 5 else 3
    return Fixture("D%d" % m, "D", m, r, u, v, eq, n, gl, _a_presentation(n, extra=True))


def e_fixture(m: int) -> Fixture:
    if m == 6:  # u^3 + v^4
        return Fixture("E6", "E", 6, 1, _mono(4, 0, -1), _mono(3, 0), [(1, 3, 0), (1, 0, 4)],
                       2, 2, _a_presentation(2, extra=True))
    if m == 7:  # u^3 + u v^3 ; line u = 0 then u^2 + v^3 = 0
        u = _mono(3, 1)
        v = _sum(_mono(1, 0), _mono(2, 1, -1))
        return Fixture("E7", "E", 7, 2, u, v, [(1, 3, 0), (1, 1, 3)],
                       3, 3, _a_presentation(3, extra=True))
    if m == 8:  # u^3 + v^5
        return Fixture("E8", "E", 8, 1, _mono(5, 0, -1), _mono(3, 0), [(1, 3, 0), (1, 0, 5)],
                       3, 3, _a_presentation(3, extra=True))
    raise ValueError("no E_%d singularity" % m)


def all_fixtures() -> list:
    out = [a_fixture(m) for m in range(1, 9)]
    out += [d_fixture(m) for m in range(4, 9)]
    out += [e_fixture(m) for m in (6, 7, 8)]
    return out


def get_fixture(name: str) -> Fixture:
    for fx in all_fixtures():
        if fx.name.lower() == name.lower():
            return fx
    raise KeyError("unknown fixture %r" % name)


def fixture_file(name: str):
    """Path of the shipped input file of a fixture (``data/<name>.toml``)."""
    fx = get_fixture(name)
    return resources.files("koenig") / "data" / ("%s.toml" % fx.name)
