"""Finite-dimensional algebras given by structure constants.

Everything downstream of :func:`basic_data` assumes the algebra is split
basic: ``A / rad A = k^s``.  Such an algebra is generated by a complete set
of primitive orthogonal idempotents ``e_1..e_s`` and lifts of a basis of
``e_j (rad/rad^2) e_i`` (the arrows ``i -> j``).  Modules are then stored as
quiver representations: one vector space per vertex and one matrix per
arrow.  Paths compose right to left, so an arrow ``i -> j`` lies in
``e_j A e_i``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .linalg import CoordBasis, Echelon, _kernels, identity, mat_vec, nullspace, rref


class FindimError(ValueError):
    pass


class SplitFieldError(FindimError):
    """``A / rad A`` is not a product of copies of the ground field."""


class NotBasicError(FindimError):
    pass


class RadicalError(FindimError):
    pass


class BoundError(FindimError):
    pass


class Exceeded:
    """Marker returned by :func:`gl_dim` when the cutoff is exceeded."""

    def __init__(self, cutoff):
        self.cutoff = cutoff

    def __repr__(self):
        return ">%d" % self.cutoff

    def __eq__(self, other):
        return isinstance(other, Exceeded) and other.cutoff == self.cutoff

    def __hash__(self):
        return hash(("exceeded", self.cutoff))


# --------------------------------------------------------------------------
# Algebras


class StructAlgebra:
    """Associative unital algebra with basis ``b_0..b_{d-1}``.

    ``table[(i, j)]`` is a dict ``{k: c}`` giving ``b_i b_j = sum c b_k``;
    missing pairs multiply to zero.  ``idempotents`` (optional) is a
    complete list of primitive orthogonal idempotents, as coordinate vectors.
    """

    def __init__(self, field, dim, table, unit, labels=None, idempotents=None,
                 idem_labels=None, verify=True, verify_bound=24, seed=0):
        self.field = field
        self.dim = dim
        self.table = {k: v for k, v in table.items() if v}
        self.unit = list(unit)
        self.labels = list(labels) if labels else ["b%d" % i for i in range(dim)]
        self.idempotents = [list(e) for e in idempotents] if idempotents is not None else None
        self.idem_labels = list(idem_labels) if idem_labels else None
        self.seed = seed
        self._basic = None
        self._rows = None
        self._left: dict = {}
        if verify:
            self.verify(verify_bound)

    # -- arithmetic --------------------------------------------------------

    def zero(self):
        return [self.field.zero] * self.dim

    def basis_vec(self, i):
        v = self.zero()
        v[i] = self.field.one
        return v

    @property
    def rows(self) -> dict:
        """``rows[i][j]`` = list of ``(k, c)``; the layout used by the kernels."""
        if self._rows is None:
            rows: dict = {}
            for (i, j), t in self.table.items():
                rows.setdefault(i, {})[j] = [(k, c) for k, c in sorted(t.items()) if c]
            self._rows = rows
        return self._rows

    def mul(self, x, y):
        xs = [(i, a) for i, a in enumerate(x) if a]
        ys = [(j, b) for j, b in enumerate(y) if b]
        return _kernels.struct_mul(xs, ys, self.rows, self.zero())

    def smul(self, xs, ys) -> dict:
        """Product of sparse vectors given as ``{index: coefficient}``."""
        out: dict = {}
        rows = self.rows
        for i, a in xs.items():
            row = rows.get(i)
            if not row:
                continue
            for j, b in ys.items():
                t = row.get(j)
                if t:
                    ab = a * b
                    for k, c in t:
                        out[k] = out.get(k, self.field.zero) + ab * c
        return {k: v for k, v in out.items() if v}

    def add(self, x, y, scale=1):
        return [a + scale * b for a, b in zip(x, y)]

    def power(self, x, e):
        out = list(self.unit)
        base = list(x)
        while e:
            if e & 1:
                out = self.mul(out, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return out

    def left_matrix(self, x):
        """Matrix of ``y -> x y`` (columns indexed by basis of y)."""
        cols = [self.mul(x, self.basis_vec(j)) for j in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    # -- checks ------------------------------------------------------------

    def verify(self, bound=24, samples=300):
        d = self.dim
        for i in range(d):
            b = self.basis_vec(i)
            if self.mul(self.unit, b) != b or self.mul(b, self.unit) != b:
                raise FindimError("unit law fails at basis element %s" % self.labels[i])
        if d <= bound:
            triples = [(i, j, k) for i in range(d) for j in range(d) for k in range(d)]
        else:
            rng = random.Random(self.seed)
            triples = [(rng.randrange(d), rng.randrange(d), rng.randrange(d)) for _ in range(samples)]
        one = self.field.one
        prod = {ij: {k: c for k, c in t.items() if c} for ij, t in self.table.items()}
        for i, j, k in triples:
            lhs = self.smul(prod.get((i, j), {}), {k: one})
            rhs = self.smul({i: one}, prod.get((j, k), {}))
            if lhs != rhs:
                raise FindimError("associativity fails at %s" % ((i, j, k),))
        if self.idempotents is not None:
            es = self.idempotents
            total = self.zero()
            for a, e in enumerate(es):
                total = self.add(total, e)
                for b, f in enumerate(es):
                    want = e if a == b else self.zero()
                    if self.mul(e, f) != want:
                        raise FindimError("idempotents are not orthogonal")
            if total != self.unit:
                raise FindimError("idempotents do not sum to 1")

    def opposite(self) -> "StructAlgebra":
        table = {(j, i): v for (i, j), v in self.table.items()}
        return StructAlgebra(self.field, self.dim, table, self.unit, self.labels,
                             self.idempotents, self.idem_labels, verify=False, seed=self.seed)

    def basic(self) -> "BasicData":
        if self._basic is None:
            self._basic = basic_data(self)
        return self._basic


# --------------------------------------------------------------------------
# Radical


def _trace_radical(A: StructAlgebra) -> Echelon:
    d, f = A.dim, A.field
    tau = [f.zero] * d
    for (i, j), t in A.table.items():
        c = t.get(j)
        if c:
            tau[i] = tau[i] + c
    form = [[f.zero] * d for _ in range(d)]
    for (i, j), t in A.table.items():
        s = f.zero
        for k, c in t.items():
            if tau[k]:
                s = s + c * tau[k]
        form[i][j] = s
    return Echelon(nullspace(form, d, f), d, f)


def _local_character(A: StructAlgebra, e, x):
    """Scalar ``l`` with ``x - l e`` nilpotent, for ``x`` in the local ``eAe`` (char p)."""
    p = A.field.characteristic
    q = p
    while q < A.dim + 1:
        q *= p
    y = A.power(x, q)
    # y = l^q e = l e over F_p
    idx = next(i for i, c in enumerate(e) if c)
    lam = y[idx] / e[idx]
    if y != [lam * c for c in e]:
        raise SplitFieldError("corner algebra is not split local over F_%d" % p)
    return lam


def _idempotent_radical(A: StructAlgebra, idem) -> Echelon:
    d = A.dim
    vecs = []
    for b in range(d):
        x = A.basis_vec(b)
        for i, ei in enumerate(idem):
            xi = A.mul(ei, x)
            for j, ej in enumerate(idem):
                y = A.mul(xi, ej)
                if not any(y):
                    continue
                if i != j:
                    vecs.append(y)
                else:
                    lam = _local_character(A, ei, y)
                    vecs.append([a - lam * c for a, c in zip(y, ei)])
    return Echelon(vecs, d, A.field)


def radical(A: StructAlgebra, check=True) -> Echelon:
    """Jacobson radical: kernel of the trace form in characteristic 0.

    In characteristic p the distinguished idempotents are required: the
    radical is then the off-diagonal corners plus the kernels of the
    characters of the local corner algebras ``e_i A e_i``.
    """
    if A.field.characteristic == 0:
        rad = _trace_radical(A)
    else:
        if A.idempotents is None:
            raise FindimError("positive characteristic needs distinguished idempotents")
        rad = _idempotent_radical(A, A.idempotents)
    if check:
        _check_nilpotent(A, rad)
    return rad


def _products(A, X: Echelon, Y: Echelon) -> Echelon:
    ech = Echelon([], A.dim, A.field)
    for x in X.rows:
        for y in Y.rows:
            ech.add(A.mul(x, y))
    return ech


def _check_nilpotent(A, rad):
    P = rad
    for _ in range(A.dim + 1):
        if P.dim == 0:
            return
        Q = _products(A, P, rad)
        if Q.dim >= P.dim:
            raise RadicalError("radical is not nilpotent; the structure constants are inconsistent")
        P = Q
    raise RadicalError("radical is not nilpotent")


# --------------------------------------------------------------------------
# Idempotents for algebras without a distinguished set


def _min_poly(A, y):
    """Coefficients (low to high, monic) of the minimal polynomial of ``y``."""
    powers = [list(A.unit)]
    while True:
        basis = CoordBasis(powers, A.dim, A.field)
        nxt = A.mul(powers[-1], y)
        c = basis.coords(nxt)
        if c is not None:
            return [-x for x in c] + [A.field.one]
        powers.append(nxt)


def _to_sympy_poly(coeffs, field):
    import sympy
    X = sympy.Symbol("X")
    conv = [sympy.Rational(*_frac(field, c)) for c in coeffs]
    expr = sum(c * X ** i for i, c in enumerate(conv))
    if field.characteristic:
        return sympy.Poly(expr, X, modulus=field.characteristic), X
    return sympy.Poly(expr, X, domain="QQ"), X


def _frac(field, c):
    fr = field.to_fraction(c)
    return fr.numerator, fr.denominator


def _eval_poly(A, poly, y):
    coeffs = [A.field(Fraction(str(c))) for c in reversed(poly.all_coeffs())]
    out = A.zero()
    for c in reversed(coeffs):
        out = A.mul(out, y)
        out = A.add(out, A.unit, c)
    return out


def find_idempotents(A: StructAlgebra, rad: Echelon, tries=12):
    """Primitive orthogonal idempotents of a split basic algebra.

    Uses a random element ``y``: the primary decomposition of its minimal
    polynomial gives orthogonal idempotents of ``k[y]`` summing to 1, which are
    primitive as soon as ``y`` separates the simple modules.
    """
    import sympy
    s = A.dim - rad.dim
    rng = random.Random(A.seed)
    best = None
    for _ in range(tries):
        y = [A.field(rng.randint(-9, 9)) for _ in range(A.dim)]
        coeffs = _min_poly(A, y)
        poly, X = _to_sympy_poly(coeffs, A.field)
        _, factors = poly.factor_list()
        if any(f.degree() > 1 for f, _ in factors):
            best = "split"
            continue
        if len(factors) < s:
            best = best or "few"
            continue
        roots = []
        for f, m in factors:
            a, b = f.all_coeffs()
            roots.append((-b / a, f, m))
        roots.sort(key=lambda t: _sort_key(t[0]))
        idem = []
        for k, (_, f, m) in enumerate(roots):
            fk = f ** m
            others = sympy.Poly(1, X, **_dom(A.field))
            for j, (_, g, n) in enumerate(roots):
                if j != k:
                    others = others * g ** n
            sg, _, _ = others.gcdex(fk)
            e = (sg * others).rem(poly)
            idem.append(_eval_poly(A, e, y))
        return idem
    # a split basic algebra has commutative semisimple quotient k^s
    if not _quotient_commutative(A, rad):
        raise NotBasicError("the algebra is not basic")
    if best == "split":
        raise SplitFieldError("the semisimple quotient does not split over %s; extend the field" % A.field.name)
    raise SplitFieldError("could not separate the simple modules over %s" % A.field.name)


def _dom(field):
    return {"modulus": field.characteristic} if field.characteristic else {"domain": "QQ"}


def _sort_key(r):
    return Fraction(str(r))


def _quotient_commutative(A, rad):
    for i in range(A.dim):
        for j in range(i + 1, A.dim):
            bi, bj = A.basis_vec(i), A.basis_vec(j)
            diff = A.add(A.mul(bi, bj), A.mul(bj, bi), -1)
            if diff not in rad:
                return False
    return True


# --------------------------------------------------------------------------
# Quiver data of a split basic algebra


@dataclass
class BasicData:
    idempotents: list
    labels: list
    rad: Echelon
    rad2: Echelon
    arrows: list  # (source, target, element)
    words: list  # per vertex: list of (parent, arrow, target)
    word_vecs: list  # per vertex: list of algebra vectors
    coords: list  # per vertex: CoordBasis of its words
    projectives: list = dc_field(default_factory=list)

    @property
    def s(self):
        return len(self.idempotents)


def _corner(A, x, ei, ej):
    return A.mul(A.mul(ej, x), ei)


def _corner_spaces(A, rad, idem):
    """``R[j][i] = e_j rad e_i`` as echelon subspaces."""
    s = len(idem)
    left = [[A.mul(e, x) for x in rad.rows] for e in idem]
    R = [[None] * s for _ in range(s)]
    for j in range(s):
        for i in range(s):
            R[j][i] = Echelon([A.mul(y, idem[i]) for y in left[j]], A.dim, A.field)
    return R


def _corner_products(A, P, R):
    s = len(P)
    out = [[None] * s for _ in range(s)]
    for l in range(s):
        for i in range(s):
            ech = Echelon([], A.dim, A.field)
            for j in range(s):
                for x in P[l][j].rows:
                    for y in R[j][i].rows:
                        ech.add(A.mul(x, y))
            out[l][i] = ech
    return out


def _corner_dim(P):
    return sum(e.dim for row in P for e in row)


def basic_data(A: StructAlgebra) -> BasicData:
    rad = radical(A, check=False)
    idem = A.idempotents
    if idem is None:
        idem = find_idempotents(A, rad)
    s = len(idem)
    if A.dim - rad.dim != s:
        if A.dim - rad.dim > s:
            raise NotBasicError("semisimple quotient has dimension %d but only %d idempotents"
                                % (A.dim - rad.dim, s))
        raise FindimError("idempotents are not primitive")
    labels = A.idem_labels or [str(i + 1) for i in range(s)]
    R = _corner_spaces(A, rad, idem)
    if _corner_dim(R) != rad.dim:
        raise RadicalError("radical is not compatible with the idempotents")
    R2 = _corner_products(A, R, R)
    # nilpotency: powers of the radical must reach zero
    P, prev = R2, _corner_dim(R)
    while _corner_dim(P):
        if _corner_dim(P) >= prev:
            raise RadicalError("radical is not nilpotent; the structure constants are inconsistent")
        prev = _corner_dim(P)
        P = _corner_products(A, P, R)
    rad2 = Echelon([x for row in R2 for e in row for x in e.rows], A.dim, A.field)
    arrows = []
    for i in range(s):
        for j in range(s):
            low = Echelon([list(x) for x in R2[j][i].rows], A.dim, A.field, )
            for y in R[j][i].rows:
                if low.add(list(y)):
                    arrows.append((i, j, list(y)))
    words, vecs, coords = [], [], []
    total = 0
    for i in range(s):
        w = [(None, None, i)]
        v = [idem[i]]
        ech = Echelon([idem[i]], A.dim, A.field)
        k = 0
        while k < len(w):
            tgt = w[k][2]
            for a, (src, dst, elt) in enumerate(arrows):
                if src != tgt:
                    continue
                z = A.mul(elt, v[k])
                if ech.add(z):
                    w.append((k, a, dst))
                    v.append(z)
            k += 1
        words.append(w)
        vecs.append(v)
        coords.append(CoordBasis(v, A.dim, A.field))
        total += len(v)
    if total != A.dim:
        raise FindimError("idempotents and arrows do not generate the algebra")
    bd = BasicData(idem, labels, rad, rad2, arrows, words, vecs, coords)
    bd.projectives = [_projective(A, bd, i) for i in range(s)]
    return bd


# --------------------------------------------------------------------------
# Modules as quiver representations


def _mm(a, b, ncols, f):
    """``a @ b`` where ``b`` has ``ncols`` columns (explicit for empty shapes)."""
    out = []
    for row in a:
        acc = [f.zero] * ncols
        for x, brow in zip(row, b):
            if x:
                for j, y in enumerate(brow):
                    if y:
                        acc[j] = acc[j] + x * y
        out.append(acc)
    return out


class AlgModule:
    """Left module over a split basic algebra as a quiver representation.

    ``dims[i] = dim e_i M``; ``mats[a]`` is the matrix of arrow ``a`` from the
    source space to the target space (rows = target basis).
    """

    def __init__(self, A: StructAlgebra, dims, mats, name=""):
        self.A = A
        self.dims = list(dims)
        self.mats = [[list(r) for r in m] for m in mats]
        self.name = name

    @property
    def dim(self):
        return sum(self.dims)

    def dim_vector(self):
        return list(self.dims)

    def offsets(self):
        out, o = [], 0
        for d in self.dims:
            out.append(o)
            o += d
        return out

    def word_mats(self, i):
        """Matrices of the words of vertex ``i`` acting on ``e_i M``."""
        bd = self.A.basic()
        f = self.A.field
        out = []
        for parent, a, _ in bd.words[i]:
            if parent is None:
                out.append(identity(self.dims[i], f))
            else:
                out.append(_mm(self.mats[a], out[parent], self.dims[i], f))
        return out

    def action(self, x):
        """Full matrix of an arbitrary algebra element."""
        A = self.A
        bd = A.basic()
        f = A.field
        n = self.dim
        off = self.offsets()
        M = [[f.zero] * n for _ in range(n)]
        for i, ei in enumerate(bd.idempotents):
            if not self.dims[i]:
                continue
            c = bd.coords[i].coords(A.mul(x, ei))
            wm = self.word_mats(i)
            for k, (_, _, tgt) in enumerate(bd.words[i]):
                if not c[k]:
                    continue
                blk = wm[k]
                for r, row in enumerate(blk):
                    for col, val in enumerate(row):
                        if val:
                            M[off[tgt] + r][off[i] + col] += c[k] * val
        return M

    def is_zero(self):
        return self.dim == 0


def module_from_action(A: StructAlgebra, n, act, name="") -> AlgModule:
    """Module on ``k^n`` where ``act(x)`` is the matrix of the algebra element ``x``."""
    bd = A.basic()
    f = A.field
    blocks = []
    for e in bd.idempotents:
        E = act(e)
        cols = [[E[r][c] for r in range(n)] for c in range(n)]
        blocks.append(Echelon(cols, n, f).rows)
    basis = [v for blk in blocks for v in blk]
    if len(basis) != n:
        raise FindimError("idempotents do not act as a complete set on the module")
    cb = CoordBasis(basis, n, f)
    dims = [len(b) for b in blocks]
    off = [sum(dims[:i]) for i in range(len(dims))]
    mats = []
    for src, dst, elt in bd.arrows:
        M = act(elt)
        m = []
        for v in blocks[src]:
            c = cb.coords(mat_vec(M, v, f))
            m.append(c[off[dst]:off[dst] + dims[dst]])
        mats.append([[m[j][i] for j in range(len(m))] for i in range(dims[dst])])
    return AlgModule(A, dims, mats, name)


def _projective(A, bd, i) -> AlgModule:
    """``A e_i`` with its word basis, grouped by target vertex."""
    words = bd.words[i]
    s = bd.s
    order = sorted(range(len(words)), key=lambda k: (words[k][2], k))
    pos = {k: p for p, k in enumerate(order)}
    dims = [sum(1 for w in words if w[2] == j) for j in range(s)]
    off = [sum(dims[:j]) for j in range(s)]
    f = A.field
    mats = []
    for src, dst, elt in bd.arrows:
        m = [[f.zero] * dims[src] for _ in range(dims[dst])]
        for k, w in enumerate(words):
            if w[2] != src:
                continue
            c = bd.coords[i].coords(A.mul(elt, bd.word_vecs[i][k]))
            col = pos[k] - off[src]
            for k2, val in enumerate(c):
                if val:
                    m[pos[k2] - off[dst]][col] = val
        mats.append(m)
    mod = AlgModule(A, dims, mats, "P%s" % bd.labels[i])
    mod.word_pos = pos  # word index -> basis position
    return mod


def simple_module(A, i) -> AlgModule:
    bd = A.basic()
    dims = [1 if j == i else 0 for j in range(bd.s)]
    mats = [[[A.field.zero] * dims[src] for _ in range(dims[dst])] for src, dst, _ in bd.arrows]
    return AlgModule(A, dims, mats, "S%s" % bd.labels[i])


def projective_module(A, i) -> AlgModule:
    return A.basic().projectives[i]


def simples_and_projectives(A: StructAlgebra):
    bd = A.basic()
    return [
        {"label": bd.labels[i], "simple": simple_module(A, i),
         "projective": bd.projectives[i], "idempotent": bd.idempotents[i]}
        for i in range(bd.s)
    ]


def cartan_matrix(A: StructAlgebra):
    """``C[i][j] = dim e_j A e_i`` (multiplicity of simple j in ``P_i``)."""
    bd = A.basic()
    return [list(P.dims) for P in bd.projectives]


# --------------------------------------------------------------------------
# Quivers and presentations


@dataclass
class QuiverPresentation:
    vertices: list
    arrows: list  # (label, source, target) with vertex labels
    relations: list = dc_field(default_factory=list)  # [[(coef, (labels...))]]

    def arrow_counts(self) -> dict:
        out: dict = {}
        for _, s, t in self.arrows:
            out[(s, t)] = out.get((s, t), 0) + 1
        return out

    @classmethod
    def from_dict(cls, d):
        arrows = [(a["label"], a["source"], a["target"]) for a in d["arrows"]]
        rels = [[(c, tuple(p)) for c, p in rel] for rel in d.get("relations", [])]
        return cls(list(d["vertices"]), arrows, rels)

    def to_dict(self):
        return {
            "vertices": [str(v) for v in self.vertices],
            "arrows": [{"label": a, "source": str(s), "target": str(t)} for a, s, t in self.arrows],
        }


def quiver(A: StructAlgebra) -> QuiverPresentation:
    bd = A.basic()
    arrows = []
    for k, (s, t, _) in enumerate(bd.arrows):
        arrows.append(("x%d" % (k + 1), bd.labels[s], bd.labels[t]))
    return QuiverPresentation(list(bd.labels), arrows)


def to_dot(Q: QuiverPresentation, name="Q") -> str:
    lines = ["digraph %s {" % name]
    for v in Q.vertices:
        lines.append('  "%s";' % v)
    for label, s, t in Q.arrows:
        lines.append('  "%s" -> "%s" [label="%s"];' % (s, t, label))
    lines.append("}")
    return "\n".join(lines) + "\n"


def presented_algebra(P: QuiverPresentation, field, bound=12) -> StructAlgebra:
    """Path algebra of ``P`` modulo its relations, as structure constants.

    The quotient of paths of length < l by the truncated ideal is computed for
    growing l until its dimension stops growing; ``bound`` caps l.
    """
    src = {a: s for a, s, _ in P.arrows}
    tgt = {a: t for a, _, t in P.arrows}
    verts = list(P.vertices)

    def p_src(p):
        return p[1] if p[0] == "e" else src[p[-1]]

    def p_tgt(p):
        return p[1] if p[0] == "e" else tgt[p[0]]

    def concat(p, q):
        if p_src(p) != p_tgt(q):
            return None
        if p[0] == "e":
            return q
        if q[0] == "e":
            return p
        return p + q

    def paths_upto(n):
        out = [("e", v) for v in verts]
        layer = [(a,) for a, _, _ in P.arrows]
        length = 1
        while layer and length < n:
            out.extend(layer)
            nxt = []
            for p in layer:
                for a, _, _ in P.arrows:
                    if tgt[a] == p_src(p):
                        nxt.append(p + (a,))
            layer = nxt
            length += 1
        return out

    def plen(p):
        return 0 if p[0] == "e" else len(p)

    rels = [[(field(c), tuple(p)) for c, p in rel] for rel in P.relations]
    prev = None
    for ell in range(2, bound + 1):
        paths = paths_upto(ell)
        # longest paths first so that short paths survive as the quotient basis
        paths.sort(key=lambda p: (-plen(p), str(p)))
        index = {p: i for i, p in enumerate(paths)}
        n = len(paths)
        ideal = Echelon([], n, field)
        for rel in rels:
            r0 = rel[0][1]
            rlen = min(plen(r) for _, r in rel)
            qs = [q for q in paths if p_tgt(q) == p_src(r0) and plen(q) + rlen < ell]
            ps = [p for p in paths if p_src(p) == p_tgt(r0) and plen(p) + rlen < ell]
            for p in ps:
                for q in qs:
                    if plen(p) + plen(q) + rlen >= ell:
                        continue
                    v = [field.zero] * n
                    for c, r in rel:
                        x = concat(r, q)
                        x = concat(p, x) if x is not None else None
                        if x is not None and plen(x) < ell:
                            v[index[x]] = v[index[x]] + c
                    if any(v):
                        ideal.add(v)
        dim = n - ideal.dim
        if prev is not None and prev[0] == dim:
            return _presented_struct(field, *prev[1:], concat, plen, verts)
        prev = (dim, paths, index, ideal, ell)
    raise BoundError("presented algebra did not stabilize below path length %d" % bound)


def _presented_struct(field, paths, index, ideal, ell, concat, plen, verts):
    free = ideal.complement_columns()
    basis = [paths[j] for j in free]
    n = len(paths)

    def coords(p):
        v = [field.zero] * n
        if p is not None and plen(p) < ell:
            v[index[p]] = field.one
        v = ideal.reduce(v)
        return [v[j] for j in free]

    d = len(basis)
    table = {}
    for i, p in enumerate(basis):
        for j, q in enumerate(basis):
            c = coords(concat(p, q))
            nz = {k: x for k, x in enumerate(c) if x}
            if nz:
                table[(i, j)] = nz
    idem = []
    unit = [field.zero] * d
    for v in verts:
        e = coords(("e", v))
        idem.append(e)
        unit = [a + b for a, b in zip(unit, e)]
    labels = ["e%s" % p[1] if p[0] == "e" else "".join(p) for p in basis]
    return StructAlgebra(field, d, table, unit, labels, idem, [str(v) for v in verts])


# --------------------------------------------------------------------------
# Resolutions, Ext, global dimension


@dataclass
class ResolutionStep:
    gens: list  # vertex of each generator of P_p
    layout: list  # per vertex j: list of (generator, word index) spanning (P_p)_j
    images: list = dc_field(default_factory=list)  # per generator of P_p: its image in P_{p-1}, per-vertex coords


def _top_generators(M: AlgModule, bd):
    f = M.A.field
    gens = []
    for i in range(bd.s):
        if not M.dims[i]:
            continue
        cols = []
        for a, (s, t, _) in enumerate(bd.arrows):
            if t == i and M.dims[s]:
                m = M.mats[a]
                cols.extend([[m[r][c] for r in range(M.dims[i])] for c in range(M.dims[s])])
        ech = Echelon(cols, M.dims[i], f)
        for c in ech.complement_columns():
            v = [f.zero] * M.dims[i]
            v[c] = f.one
            gens.append((i, v))
    return gens


def _cover_kernel(M: AlgModule):
    """Projective cover ``P -> M`` and the kernel module.

    Returns ``(step, kernel_module, kernel_vectors)`` where kernel vectors are
    given per vertex in the layout coordinates of P.
    """
    A = M.A
    bd = A.basic()
    f = A.field
    s = bd.s
    gens = _top_generators(M, bd)
    layout = [[] for _ in range(s)]
    for g, (i, _) in enumerate(gens):
        for k, w in enumerate(bd.words[i]):
            layout[w[2]].append((g, k))
    pos = [{gk: p for p, gk in enumerate(layout[j])} for j in range(s)]
    # images of all words applied to the generators
    img = []
    for i, v in gens:
        wm = M.word_mats(i)
        img.append([mat_vec(m, v, f) for m in wm])
    kernels, frees = [], []
    for j in range(s):
        ncols = len(layout[j])
        rows = [[img[g][k][r] for (g, k) in layout[j]] for r in range(M.dims[j])]
        red, piv = rref(rows, ncols, f)
        pivset = set(piv)
        free = [c for c in range(ncols) if c not in pivset]
        vecs = []
        for fc in free:
            v = [f.zero] * ncols
            v[fc] = f.one
            for row, p in zip(red, piv):
                if row[fc]:
                    v[p] = -row[fc]
            vecs.append(v)
        kernels.append(vecs)
        frees.append(free)
    # arrow action on P, restricted to the kernel
    mats = []
    for a, (src, dst, _) in enumerate(bd.arrows):
        m = [[f.zero] * len(kernels[src]) for _ in range(len(kernels[dst]))]
        for col, v in enumerate(kernels[src]):
            out = [f.zero] * len(layout[dst])
            for p, x in enumerate(v):
                if not x:
                    continue
                g, k = layout[src][p]
                i = gens[g][0]
                P = bd.projectives[i]
                wp = P.word_pos
                src_off = sum(P.dims[:src])
                dst_off = sum(P.dims[:dst])
                local = wp[k] - src_off
                words = bd.words[i]
                for k2, w in enumerate(words):
                    if w[2] != dst:
                        continue
                    val = P.mats[a][wp[k2] - dst_off][local]
                    if val:
                        q = pos[dst][(g, k2)]
                        out[q] = out[q] + x * val
            fr = frees[dst]
            for r, fc in enumerate(fr):
                m[r][col] = out[fc]
        mats.append(m)
    K = AlgModule(A, [len(k) for k in kernels], mats, "syz")
    step = ResolutionStep([i for i, _ in gens], layout)
    return step, K, kernels


def projective_resolution(M: AlgModule, length: int):
    """Minimal projective resolution ``P_0 <- P_1 <- ...`` up to ``P_length``.

    Returns the list of steps; stops early if a syzygy vanishes.
    """
    steps = []
    cur = M
    prev_kernels = None
    for p in range(length + 1):
        if cur.dim == 0:
            break
        step, K, kernels = _cover_kernel(cur)
        if prev_kernels is not None:
            # generators of cur (a syzygy) re-expressed inside the previous P
            gens = _top_generators(cur, cur.A.basic())
            for i, v in gens:
                vec = [cur.A.field.zero] * len(prev_kernels[i][0]) if prev_kernels[i] else []
                for c, kv in zip(v, prev_kernels[i]):
                    if c:
                        vec = [a + c * b for a, b in zip(vec, kv)]
                step.images.append(vec)
        steps.append(step)
        prev_kernels = kernels
        cur = K
    return steps


def proj_dim(M: AlgModule, cutoff: int):
    steps = projective_resolution(M, cutoff + 1)
    if len(steps) > cutoff + 1:
        return Exceeded(cutoff)
    return len(steps) - 1


def gl_dim(A: StructAlgebra, cutoff: int = 12):
    bd = A.basic()
    best = 0
    for i in range(bd.s):
        d = proj_dim(simple_module(A, i), cutoff)
        if isinstance(d, Exceeded):
            return d
        best = max(best, d)
    return best


def _hom_differential(steps, p, N: AlgModule):
    """Matrix of ``Hom(P_p, N) -> Hom(P_{p+1}, N)``; shape (rows, cols)."""
    A = N.A
    bd = A.basic()
    f = A.field
    src_gens = steps[p].gens if p < len(steps) else []
    nxt = steps[p + 1] if p + 1 < len(steps) else None
    col_off, c = [], 0
    for i in src_gens:
        col_off.append(c)
        c += N.dims[i]
    ncols = c
    if nxt is None:
        return [], ncols
    wms = {i: N.word_mats(i) for i in set(src_gens)}
    rows = []
    layout = steps[p].layout
    for g2, j in enumerate(nxt.gens):
        u = nxt.images[g2]
        block = [[f.zero] * ncols for _ in range(N.dims[j])]
        for q, x in enumerate(u):
            if not x:
                continue
            g, k = layout[j][q]
            i = src_gens[g]
            W = wms[i][k]
            for r in range(N.dims[j]):
                row = W[r]
                for cc, val in enumerate(row):
                    if val:
                        block[r][col_off[g] + cc] += x * val
        rows.extend(block)
    return rows, ncols


def ext_dim(A: StructAlgebra, M: AlgModule, N: AlgModule, p: int, steps=None) -> int:
    """``dim Ext^p_A(M, N)`` from a minimal projective resolution of M."""
    if steps is None:
        steps = projective_resolution(M, p + 1)
    if p >= len(steps):
        return 0
    f = A.field
    rows, ncols = _hom_differential(steps, p, N)
    ker = ncols - (len(rref(rows, ncols, f)[1]) if rows else 0)
    if p == 0:
        return ker
    prows, pcols = _hom_differential(steps, p - 1, N)
    im = len(rref(prows, pcols, f)[1]) if prows else 0
    return ker - im


def ext_dims(A, M, N, pmax):
    steps = projective_resolution(M, pmax + 1)
    return [ext_dim(A, M, N, p, steps) for p in range(pmax + 1)]
