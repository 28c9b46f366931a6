"""The quasi-hereditary algebra Q of a curve singularity and the algebra
Lambda of a rational projective curve.

``Q_k`` (``1 <= k <= n``) is the k x k matrix algebra with entries
``A_ij / A_kj`` (0-based ``i, j < k``), i.e. ``O_j / I_{k+1,j}`` on and above
the diagonal and ``I_ij / I_{k+1,j}`` below it; ``Q = Q_n``.  Its vertices are
the singular branch blocks of each ring ``O_j``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .field import QQ
from .chain import NormalizationChain, ConsistencyError, LocalRing, normalization_chain, singular_ideal
from .findim import (
    AlgModule,
    Exceeded,
    FindimError,
    StructAlgebra,
    ext_dims,
    gl_dim,
    module_from_action,
    quiver,
    cartan_matrix,
)
from .lattice import FractionalIdeal, LatticeQuotient, padd, pmul, pscale, lat_colon
from .linalg import Echelon, mat_mul, rank
from .order import OrderMatrix, build_order


class HeredityError(FindimError):
    pass


# --------------------------------------------------------------------------
# Layers Q_k


@dataclass
class QLayer:
    k: int
    algebra: StructAlgebra
    basis: list  # (i, j, representative polynomial)
    quotients: dict  # (i, j) -> LatticeQuotient
    offsets: dict  # (i, j) -> first basis index
    vertices: list  # (j, block)
    labels: list
    layer_idempotents: list  # one vector per layer j < k

    @property
    def dim(self):
        return self.algebra.dim

    def element(self, i, j, poly):
        """Coordinates of the class of ``poly`` (in ``A_ij``) in entry ``(i, j)``."""
        v = self.algebra.zero()
        q = self.quotients[(i, j)]
        o = self.offsets[(i, j)]
        for c, x in enumerate(q.coords(poly)):
            v[o + c] = x
        return v

    def entry_indices(self, i, j):
        o = self.offsets[(i, j)]
        return list(range(o, o + self.quotients[(i, j)].dim))


def _vertex_label(j, blocks_j, idx, suffix=""):
    base = str(j + 1) if len(blocks_j) == 1 else "%d%s" % (j + 1, "abcdefghij"[idx])
    return base + suffix


def build_Q(chain: NormalizationChain, A: OrderMatrix, k: int, suffix="") -> QLayer:
    n = chain.level
    if not 1 <= k <= n:
        raise ValueError("layer index %d outside 1..%d" % (k, n))
    field = chain.rings[0].field
    quotients, offsets, basis = {}, {}, []
    for i in range(k):
        for j in range(k):
            q = LatticeQuotient(A[i, j], A[k, j])
            quotients[(i, j)] = q
            offsets[(i, j)] = len(basis)
            basis.extend((i, j, rep) for rep in q.reps)
    d = len(basis)

    def coords(i, j, poly):
        q = quotients[(i, j)]
        return q.coords(poly)

    table = {}
    for a, (i, j, x) in enumerate(basis):
        for b, (j2, l, y) in enumerate(basis):
            if j != j2:
                continue
            c = coords(i, l, pmul(x, y))
            o = offsets[(i, l)]
            nz = {o + t: v for t, v in enumerate(c) if v}
            if nz:
                table[(a, b)] = nz
    # vertices: singular blocks of each ring O_j, j < k
    vertices, labels, idem = [], [], []
    unit = [field.zero] * d
    layer_idem = []
    for j in range(k):
        si = singular_ideal(chain.rings[j])
        lay = [field.zero] * d
        for idx, blk in enumerate(si.singular_blocks):
            e = [field.zero] * d
            o = offsets[(j, j)]
            poly = {(0, b): field.one for b in blk}
            for t, v in enumerate(coords(j, j, poly)):
                e[o + t] = v
            vertices.append((j, blk))
            labels.append(_vertex_label(j, si.singular_blocks, idx, suffix))
            idem.append(e)
            lay = [x + y for x, y in zip(lay, e)]
        layer_idem.append(lay)
        unit = [x + y for x, y in zip(unit, lay)]
    blabels = ["%d%d:%s" % (i + 1, j + 1, _poly_str(x)) for i, j, x in basis]
    alg = StructAlgebra(field, d, table, unit, blabels, idem, labels)
    return QLayer(k, alg, basis, quotients, offsets, vertices, labels, layer_idem)


def _poly_str(x):
    return "+".join("%s*t^%d[%d]" % (c, d, b) for (d, b), c in sorted(x.items())) or "0"


def build_layers(chain, A=None) -> list:
    A = A or build_order(chain)
    return [build_Q(chain, A, k) for k in range(1, chain.level + 1)]


def layer_projection(Qf: QLayer, Qt: QLayer) -> list:
    """Images of the basis of ``Q_f`` in ``Q_t`` (``t <= f``) as vectors."""
    out = []
    for i, j, x in Qf.basis:
        if i < Qt.k and j < Qt.k:
            out.append(Qt.element(i, j, x))
        else:
            out.append(Qt.algebra.zero())
    return out


def _apply(proj, v, field, dim):
    out = [field.zero] * dim
    for c, img in zip(v, proj):
        if c:
            for t, y in enumerate(img):
                if y:
                    out[t] = out[t] + c * y
    return out


# --------------------------------------------------------------------------
# Heredity chain


def heredity_check(layers: list, raise_on_failure=True) -> dict:
    rows = []
    ok = True
    for L in layers:
        Q = L.algebra
        f = Q.field
        top = [e for e, (j, _) in zip(Q.idempotents, L.vertices) if j == L.k - 1]
        # (a) the corner algebra e Q e is semisimple
        ebar = L.layer_idempotents[L.k - 1]
        corner = Echelon([Q.mul(Q.mul(ebar, Q.basis_vec(b)), ebar) for b in range(Q.dim)], Q.dim, f)
        corner_rad = _subalgebra_radical_dim(Q, corner)
        semisimple = corner_rad == 0
        row = {"k": L.k, "corner_dim": corner.dim, "corner_semisimple": semisimple}
        if L.k >= 2:
            # (b) Q e (x)_{eQe} e Q -> Q e Q is bijective
            tensor = 0
            ideal = Echelon([], Q.dim, f)
            for e in top:
                Qe = Echelon([Q.mul(Q.basis_vec(b), e) for b in range(Q.dim)], Q.dim, f)
                eQ = Echelon([Q.mul(e, Q.basis_vec(b)) for b in range(Q.dim)], Q.dim, f)
                tensor += Qe.dim * eQ.dim
                for x in Qe.rows:
                    for y in eQ.rows:
                        ideal.add(Q.mul(x, y))
            bij = ideal.dim == tensor
            # (c) Q_k / L_k = Q_{k-1}
            prev = layers[L.k - 2]
            proj = layer_projection(L, prev)
            ker = Echelon(_kernel_vectors(proj, Q.dim, prev.dim, f), Q.dim, f)
            same_kernel = ker == ideal
            surj = rank(proj, prev.dim, f) == prev.dim if proj else prev.dim == 0
            hom = _is_homomorphism(Q, prev.algebra, proj)
            row.update({"tensor_dim": tensor, "ideal_dim": ideal.dim, "bijective": bij,
                        "quotient_dim": Q.dim - ideal.dim, "previous_dim": prev.dim,
                        "kernel_is_ideal": same_kernel, "surjective": surj, "homomorphism": hom})
            good = semisimple and bij and same_kernel and surj and hom
        else:
            good = semisimple
        row["ok"] = good
        ok = ok and good
        rows.append(row)
    report = {"ok": ok, "layers": rows}
    if raise_on_failure and not ok:
        raise HeredityError("heredity chain check failed: %s" % rows)
    return report


def _kernel_vectors(proj, dfrom, dto, f):
    from .linalg import nullspace
    # proj[b] is the image of basis b; kernel of the map v -> sum v_b proj[b]
    rows = [[proj[b][t] for b in range(dfrom)] for t in range(dto)]
    return nullspace(rows, dfrom, f)


def _is_homomorphism(Q, P, proj):
    f = Q.field
    for a in range(Q.dim):
        for b in range(Q.dim):
            lhs = _apply(proj, Q.mul(Q.basis_vec(a), Q.basis_vec(b)), f, P.dim)
            rhs = P.mul(proj[a], proj[b])
            if lhs != rhs:
                return False
    return True


def _subalgebra_radical_dim(Q, sub: Echelon) -> int:
    """Radical dimension of a subalgebra spanned by ``sub`` (trace form)."""
    f = Q.field
    vecs = sub.rows
    m = len(vecs)
    if m == 0:
        return 0
    from .linalg import CoordBasis, nullspace
    cb = CoordBasis(vecs, Q.dim, f)
    mult = [[cb.coords(Q.mul(x, y)) for y in vecs] for x in vecs]
    if f.characteristic:
        # commutative corner of a basic algebra: radical = nilpotent elements
        return _nilpotent_dim(mult, m, f)
    tau = [sum((mult[i][j][j] for j in range(m)), f.zero) for i in range(m)]
    form = [[sum((c * t for c, t in zip(mult[i][j], tau)), f.zero) for j in range(m)] for i in range(m)]
    return len(nullspace(form, m, f))


def _nilpotent_dim(mult, m, f):
    # dimension of rad of a commutative algebra via powers of the span of products
    from .linalg import Echelon as E
    span = E([[f.one if t == i else f.zero for t in range(m)] for i in range(m)], m, f)
    # a commutative split algebra is semisimple iff x^2 = 0 only for x = 0; test products
    sq = E([mult[i][j] for i in range(m) for j in range(m)], m, f)
    return span.dim - sq.dim


# --------------------------------------------------------------------------
# Standard and costandard modules


def standard_modules(layers: list):
    """``Delta_k = Q_k e_k`` and ``Nabla_k = D(e_k Q_k)``, inflated to Q."""
    Qtop = layers[-1]
    Q = Qtop.algebra
    f = Q.field
    deltas, nablas = [], []
    for L in layers:
        proj = layer_projection(Qtop, L)
        col = [b for b, (i, j, _) in enumerate(L.basis) if j == L.k - 1]
        row = [b for b, (i, j, _) in enumerate(L.basis) if i == L.k - 1]
        P = L.algebra

        def act_left(x, L=L, proj=proj, col=col, P=P):
            y = _apply(proj, x, f, P.dim)
            cols = [P.mul(y, P.basis_vec(b)) for b in col]
            return [[c[r] for c in cols] for r in col]

        def act_dual(x, L=L, proj=proj, row=row, P=P):
            y = _apply(proj, x, f, P.dim)
            cols = [P.mul(P.basis_vec(b), y) for b in row]
            R = [[c[r] for c in cols] for r in row]  # right multiplication on e_k Q_k
            return [[R[j][i] for j in range(len(row))] for i in range(len(row))]

        deltas.append(module_from_action(Q, len(col), act_left, "Delta%d" % L.k))
        nablas.append(module_from_action(Q, len(row), act_dual, "Nabla%d" % L.k))
    return deltas, nablas


def ext_orthogonality(layers, deltas, nablas, pmax) -> dict:
    """Ext vanishing between standards (and costandards) in the order
    compatible with the heredity chain, plus ``End(Delta_k) = O_k bar``.

    With layers numbered by the chain, ``Ext^p(Delta_j, Delta_i) = 0`` and
    ``Ext^p(Nabla_i, Nabla_j) = 0`` for ``i < j``; self-extensions vanish in
    positive degree.
    """
    Q = layers[-1].algebra
    n = len(layers)
    failures = []
    checks = 0
    for j in range(n):
        dd = [ext_dims(Q, deltas[j], deltas[i], pmax) for i in range(n)]
        nn = [ext_dims(Q, nablas[i], nablas[j], pmax) for i in range(n)]
        for i in range(n):
            if i < j:
                checks += 2
                if any(dd[i]):
                    failures.append({"kind": "Delta", "from": j + 1, "to": i + 1, "dims": dd[i]})
                if any(nn[i]):
                    failures.append({"kind": "Nabla", "from": i + 1, "to": j + 1, "dims": nn[i]})
        end_expected = layers[j].quotients[(j, j)].dim
        checks += 3
        if dd[j][0] != end_expected or any(dd[j][1:]):
            failures.append({"kind": "Delta-self", "k": j + 1, "dims": dd[j], "expected_end": end_expected})
        if any(nn[j][1:]) or nn[j][0] != end_expected:
            failures.append({"kind": "Nabla-self", "k": j + 1, "dims": nn[j], "expected_end": end_expected})
    return {"ok": not failures, "checks": checks, "failures": failures, "pmax": pmax}


def first_column_identities(chain, layers, deltas) -> dict:
    """Dimension identities of the first-column functor.

    ``dim e_1 Delta_k = dim O_k bar`` and ``dim e_1 Q = sum_k dim O_k / C_k``.
    """
    first = [v for v, (j, _) in enumerate(layers[-1].vertices) if j == 0]
    rings = chain.rings
    n = chain.level
    full = FractionalIdeal.full(rings[0].r, rings[0].N, rings[0].field)
    rows = []
    ok = True
    for k, D in enumerate(deltas):
        lhs = sum(D.dims[v] for v in first)
        Ik = lat_colon(rings[k], rings[k + 1])
        rhs = LatticeQuotient(rings[k], Ik).dim
        rows.append({"k": k + 1, "e1_dim": lhs, "Obar_dim": rhs})
        ok = ok and lhs == rhs
    Q = layers[-1]
    e1 = sum(Q.quotients[(0, j)].dim for j in range(n))
    total = 0
    for j in range(n):
        C = lat_colon(rings[j], full)
        total += LatticeQuotient(rings[j], C).dim
    ok = ok and e1 == total
    return {"ok": ok, "layers": rows, "e1_Q": e1, "sum_O_over_C": total}


# --------------------------------------------------------------------------
# The bimodule W


@dataclass
class BimoduleW:
    layer: QLayer
    blocks: list  # LatticeQuotient (Otilde : C_k) / Otilde per k
    offsets: list
    branch: list  # branch of each basis vector
    left: list  # matrix per Q basis element
    right_t: list
    right_branch: list  # matrix per branch idempotent
    colengths: list

    @property
    def dim(self):
        return sum(q.dim for q in self.blocks)

    def dims(self):
        return [q.dim for q in self.blocks]

    def vector(self, k, poly):
        v = [self.layer.algebra.field.zero] * self.dim
        for c, x in enumerate(self.blocks[k].coords(poly)):
            v[self.offsets[k] + c] = x
        return v

    def left_action(self, x):
        f = self.layer.algebra.field
        n = self.dim
        M = [[f.zero] * n for _ in range(n)]
        for b, c in enumerate(x):
            if c:
                for r in range(n):
                    row = self.left[b][r]
                    for s in range(n):
                        if row[s]:
                            M[r][s] = M[r][s] + c * row[s]
        return M

    def module(self) -> AlgModule:
        return module_from_action(self.layer.algebra, self.dim, self.left_action, "W")


def bimodule_W(chain: NormalizationChain, A: OrderMatrix, layer: QLayer | None = None) -> BimoduleW:
    n = chain.level
    if n < 1:
        raise ValueError("W needs a singular ring")
    layer = layer or build_Q(chain, A, n)
    L0 = chain.rings[0]
    field, r = L0.field, L0.r
    full = FractionalIdeal.full(r, L0.N, field)
    blocks, offsets, branch, colengths = [], [], [], []
    o = 0
    for k in range(n):
        C = A[n, k]
        q = LatticeQuotient(lat_colon(full, C), full)
        colengths.append(LatticeQuotient(full, C).dim)
        blocks.append(q)
        offsets.append(o)
        for rep in q.reps:
            bs = {b for (_, b) in rep}
            if len(bs) != 1:
                raise ConsistencyError("W basis vector is not branch homogeneous")
            branch.append(bs.pop())
        o += q.dim
    dim = o
    zero = field.zero

    def blank():
        return [[zero] * dim for _ in range(dim)]

    left = []
    for (i, j, a) in layer.basis:
        M = blank()
        alt = padd(a, A[n, j].generators(upto=A[n, j].hi + 1)[0]) if not A[n, j].is_zero else a
        for c, rep in enumerate(blocks[j].reps):
            img = blocks[i].coords(pmul(rep, a))
            img2 = blocks[i].coords(pmul(rep, alt))
            if img != img2:
                raise ConsistencyError("left action on W depends on the lift")
            for t, v in enumerate(img):
                M[offsets[i] + t][offsets[j] + c] = v
        left.append(M)
    tpoly = {(1, b): field.one for b in range(r)}
    right_t = blank()
    right_branch = [blank() for _ in range(r)]
    for k in range(n):
        for c, rep in enumerate(blocks[k].reps):
            for t, v in enumerate(blocks[k].coords(pmul(rep, tpoly))):
                right_t[offsets[k] + t][offsets[k] + c] = v
            for b in range(r):
                for t, v in enumerate(blocks[k].coords(pmul(rep, {(0, b): field.one}))):
                    right_branch[b][offsets[k] + t][offsets[k] + c] = v
    W = BimoduleW(layer, blocks, offsets, branch, left, right_t, right_branch, colengths)
    if not commutes(W):
        raise ConsistencyError("left and right actions on W do not commute")
    return W


def commutes(W: BimoduleW) -> bool:
    f = W.layer.algebra.field
    rights = [W.right_t] + W.right_branch
    for M in W.left:
        for R in rights:
            if mat_mul(M, R, f) != mat_mul(R, M, f):
                return False
    return True


def w_relations(chain, A, layer, W) -> dict:
    """Generators ``g1, g2 = g1 t`` of ``W_1`` and the relation ``g2 t = (a1 b1) g1``.

    ``g1`` is the class of lowest valuation; ``a1 b1`` is the loop at vertex 1
    through vertex 2 (zero when the level is 1).
    """
    f = layer.algebra.field
    q = W.blocks[0]
    g1 = W.vector(0, min(q.reps, key=lambda p: min(d for d, _ in p)))
    g2 = _matvec(W.right_t, g1, f)
    lhs = _matvec(W.right_t, g2, f)
    if chain.level >= 2:
        one = {(0, b): f.one for b in range(chain.r)}
        alpha = layer.element(0, 1, one)
        I21 = A[1, 0]
        beta_poly = min(I21.basis_polys() or [{(I21.hi, 0): f.one}], key=lambda p: min(d for d, _ in p))
        beta = layer.element(1, 0, beta_poly)
        loop = layer.algebra.mul(alpha, beta)
        rhs = _matvec(W.left_action(loop), g1, f)
    else:
        rhs = [f.zero] * W.dim
    return {"g2_is_g1_t": any(g2), "relation": lhs == rhs, "ok": any(g2) and lhs == rhs}


def _matvec(M, v, f):
    return [sum((a * b for a, b in zip(row, v) if a and b), f.zero) for row in M]


# --------------------------------------------------------------------------
# Curve configurations and Lambda


@dataclass
class PointSpec:
    name: str
    ring: LocalRing
    attachments: list  # per branch: (component index, lambda or None for infinity)


@dataclass
class CurveConfig:
    components: list
    points: list = dc_field(default_factory=list)

    def validate(self):
        seen = {}
        for p in self.points:
            if len(p.attachments) != p.ring.r:
                raise ValueError("point %s: %d branches but %d attachments"
                                 % (p.name, p.ring.r, len(p.attachments)))
            for b, (comp, lam) in enumerate(p.attachments):
                if not 0 <= comp < len(self.components):
                    raise ValueError("point %s: unknown component %r" % (p.name, comp))
                key = (comp, lam)
                if key in seen:
                    raise ValueError("parameter %s on component %s used twice (%s and %s branch %d)"
                                     % (_lam_str(lam), self.components[comp], seen[key], p.name, b + 1))
                seen[key] = "%s branch %d" % (p.name, b + 1)


def _lam_str(lam):
    return "inf" if lam is None else str(lam)


@dataclass
class PointData:
    spec: PointSpec
    chain: NormalizationChain
    order: OrderMatrix
    layers: list
    W: BimoduleW | None


@dataclass
class LambdaResult:
    algebra: StructAlgebra
    Q: StructAlgebra
    points: list
    index: dict  # name -> basis index for distinguished elements
    gl_dim: object
    gl_dim_Q: object

    def quiver(self):
        return quiver(self.algebra)

    def cartan(self):
        return cartan_matrix(self.algebra)


def point_data(spec: PointSpec) -> PointData:
    ch = normalization_chain(spec.ring)
    A = build_order(ch)
    if ch.level == 0:
        return PointData(spec, ch, A, [], None)
    layers = build_layers(ch, A)
    W = bimodule_W(ch, A, layers[-1])
    return PointData(spec, ch, A, layers, W)


def product_algebra(field, parts) -> tuple:
    """Direct product of algebras: ``(table, unit, labels, idempotents, idem_labels, offsets)``."""
    total = sum(P.dim for P in parts)
    table, unit, labels, idem, ilabels, offs = {}, [field.zero] * total, [], [], [], []
    o = 0
    for P in parts:
        offs.append(o)
        for (a, b), t in P.table.items():
            table[(a + o, b + o)] = {k + o: c for k, c in t.items()}
        for i, c in enumerate(P.unit):
            unit[i + o] = c
        labels.extend(P.labels)
        for e in P.idempotents:
            v = [field.zero] * total
            v[o:o + P.dim] = e
            idem.append(v)
        ilabels.extend(P.idem_labels)
        o += P.dim
    return table, unit, labels, idem, ilabels, offs


def build_Lambda(config: CurveConfig, field=None, cutoff=12) -> LambdaResult:
    config.validate()
    pts = [point_data(p) for p in config.points]
    if field is None:
        field = pts[0].chain.rings[0].field if pts else QQ
    singular = [pd for pd in pts if pd.chain.level >= 1]
    # global Q: product of the local ones, vertices relabelled per point
    qparts = []
    for pn, pd in enumerate(singular):
        Q = pd.layers[-1].algebra
        lab = ["%s_%d" % (l, pn + 1) for l in Q.idem_labels]
        qparts.append(StructAlgebra(field, Q.dim, Q.table, Q.unit, Q.labels, Q.idempotents, lab, verify=False))
    qtable, qunit, qlabels, qidem, qil, qoffs = product_algebra(field, qparts) if qparts else ({}, [], [], [], [], [])
    dQ = len(qunit)
    # W basis (global), branch attachments
    wvec = []  # (point index, local index, component, lambda)
    woffs = []
    for pn, pd in enumerate(singular):
        woffs.append(len(wvec))
        for c, b in enumerate(pd.W.branch):
            comp, lam = pd.spec.attachments[b]
            wvec.append((pn, c, comp, lam))
    dW = len(wvec)
    t = len(config.components)
    D = dQ + 2 * dW + 4 * t
    W0, W1, E0 = dQ, dQ + dW, dQ + 2 * dW

    def em1(i):
        return E0 + 4 * i

    def e0(i):
        return E0 + 4 * i + 1

    def z0(i):
        return E0 + 4 * i + 2

    def zinf(i):
        return E0 + 4 * i + 3

    table = dict(qtable)
    one = field.one

    def put(a, b, vec):
        nz = {k: v for k, v in vec.items() if v}
        if nz:
            table[(a, b)] = nz

    # Q acting on W (both copies)
    for pn, pd in enumerate(singular):
        W = pd.W
        for qb in range(W.layer.algebra.dim):
            M = W.left[qb]
            ga = qoffs[pn] + qb
            for c in range(W.dim):
                col = {woffs[pn] + r: M[r][c] for r in range(W.dim) if M[r][c]}
                put(ga, W0 + woffs[pn] + c, {W0 + k: v for k, v in col.items()})
                put(ga, W1 + woffs[pn] + c, {W1 + k: v for k, v in col.items()})
    # W times E
    for g, (pn, c, comp, lam) in enumerate(wvec):
        W = singular[pn].W
        put(W0 + g, e0(comp), {W0 + g: one})
        put(W1 + g, em1(comp), {W1 + g: one})
        tcol = {woffs[pn] + r: W.right_t[r][c] for r in range(W.dim) if W.right_t[r][c]}
        ident = {g: one}
        if lam is None:
            img_z0, img_zi = ident, tcol
        else:
            lam_f = field(lam)
            img_z0 = dict(tcol)
            img_z0[g] = img_z0.get(g, field.zero) + lam_f
            img_zi = ident
        put(W0 + g, z0(comp), {W1 + k: v for k, v in img_z0.items()})
        put(W0 + g, zinf(comp), {W1 + k: v for k, v in img_zi.items()})
    # Kronecker algebras
    for i in range(t):
        put(em1(i), em1(i), {em1(i): one})
        put(e0(i), e0(i), {e0(i): one})
        for z in (z0(i), zinf(i)):
            put(e0(i), z, {z: one})
            put(z, em1(i), {z: one})
    unit = [field.zero] * D
    for k, v in enumerate(qunit):
        unit[k] = v
    idem, ilabels = [], []
    for e, lab in zip(qidem, qil):
        idem.append(e + [field.zero] * (D - dQ))
        ilabels.append(lab)
    for i in range(t):
        for idx, lab in ((em1(i), "-1_%d" % (i + 1)), (e0(i), "0_%d" % (i + 1))):
            v = [field.zero] * D
            v[idx] = one
            idem.append(v)
            ilabels.append(lab)
            unit[idx] = one
    labels = qlabels + ["w%d.e0" % g for g in range(dW)] + ["w%d.e-1" % g for g in range(dW)]
    for i in range(t):
        labels += ["e-1_%d" % (i + 1), "e0_%d" % (i + 1), "z0_%d" % (i + 1), "zinf_%d" % (i + 1)]
    Lam = StructAlgebra(field, D, table, unit, labels, idem, ilabels)
    Qglob = StructAlgebra(field, dQ, qtable, qunit, qlabels, qidem, qil, verify=False) if dQ else None
    gQ = gl_dim(Qglob, cutoff) if Qglob is not None else 0
    gL = gl_dim(Lam, cutoff)
    index = {"W0": W0, "W1": W1, "E0": E0, "woffs": woffs, "qoffs": qoffs}
    return LambdaResult(Lam, Qglob, pts, index, gL, gQ)


def lambda_relations(res: LambdaResult, point=0) -> dict:
    """``g1 z0 = g2 zinf`` and ``g2 z0 = (a1 b1) g1 zinf`` at a singular point.

    ``g1`` is the lowest-valuation class of ``W_1`` placed at the 0-vertex of
    its component, ``g2 = g1 t``; for level one the loop ``a1 b1`` is zero.
    For a branch at ``lam != 0`` the pair ``(z0, zinf)`` is replaced by the
    local coordinate ``(z0 - lam zinf, zinf)``, and by ``(zinf, z0)`` at infinity.
    """
    singular = [pd for pd in res.points if pd.chain.level >= 1]
    pd = singular[point]
    W = pd.W
    Lam = res.algebra
    f = Lam.field
    idx = res.index
    q = W.blocks[0]
    rep = min(q.reps, key=lambda p: min(d for d, _ in p))
    g1_local = W.vector(0, rep)
    g2_local = _matvec(W.right_t, g1_local, f)
    comp, lam = pd.spec.attachments[W.branch[q.reps.index(rep)]]

    def embed(v):
        x = Lam.zero()
        for c, val in enumerate(v):
            x[idx["W0"] + idx["woffs"][point] + c] = val
        return x

    g1, g2 = embed(g1_local), embed(g2_local)
    z0 = Lam.basis_vec(idx["E0"] + 4 * comp + 2)
    zi = Lam.basis_vec(idx["E0"] + 4 * comp + 3)
    # local coordinate at the attachment: (z0 - lam zinf, zinf), or (zinf, z0) at infinity
    if lam is None:
        z0, zi = zi, z0
    elif lam:
        z0 = Lam.add(z0, zi, -f(lam))
    r1 = Lam.mul(g1, z0) == Lam.mul(g2, zi)
    rhs = Lam.zero()
    if pd.chain.level >= 2:
        layer = pd.layers[-1]
        one = {(0, b): f.one for b in range(pd.chain.r)}
        alpha = layer.element(0, 1, one)
        I21 = pd.order[1, 0]
        beta = layer.element(1, 0, min(I21.basis_polys(), key=lambda p: min(d for d, _ in p)))
        loop = layer.algebra.mul(alpha, beta)
        gl = Lam.zero()
        o = idx["qoffs"][point]
        gl[o:o + len(loop)] = loop
        rhs = Lam.mul(Lam.mul(gl, g1), zi)
    r2 = Lam.mul(g2, z0) == rhs
    return {"g1z0_eq_g2zinf": r1, "g2z0_relation": r2, "ok": r1 and r2}
