"""Analysis pipeline and deterministic JSON reports.

A report never mentions the working truncation, so reports computed at two
admissible truncations of the same input are byte-identical.
"""
from __future__ import annotations

import json

from sympy import Matrix

from .chain import ConsistencyError, duality_check, normalization_chain, singular_ideal
from .findim import Exceeded, FindimError, QuiverPresentation, cartan_matrix, gl_dim, presented_algebra, quiver, to_dot
from .lattice import LatticeError
from .order import build_order, hierarchy_check, top_row_projectivity
from .qha import (
    CurveConfig,
    HeredityError,
    bimodule_W,
    build_Lambda,
    build_layers,
    first_column_identities,
    ext_orthogonality,
    heredity_check,
    lambda_relations,
    standard_modules,
    w_relations,
)

SCHEMA_VERSION = "1.0"
GL_CUTOFF = 12


def _gl(d):
    return str(d) if isinstance(d, Exceeded) else d


def cartan_det(C) -> int:
    return int(Matrix(C).det()) if C else 1


def quiver_dict(Qv: QuiverPresentation) -> dict:
    counts = Qv.arrow_counts()
    return {
        "vertices": [str(v) for v in Qv.vertices],
        "arrows": [[str(s), str(t), n] for (s, t), n in sorted(counts.items(), key=lambda x: (str(x[0][0]), str(x[0][1])))],
    }


def _guard(fn):
    """Run a check; mathematical failures become a failed verdict."""
    try:
        return fn()
    except (ConsistencyError, HeredityError, FindimError, LatticeError) as exc:
        return {"ok": False, "error": "%s: %s" % (type(exc).__name__, exc)}


def is_a_even(R) -> bool:
    """Unibranch double point, i.e. a ring of type A_{2n}."""
    L = R.lattice
    if L.r != 1:
        return False
    vals = [d for d in L.valuation_set(0) if d > 0] + [L.hi]
    return min(vals) == 2


def order_table(A) -> list:
    """Per entry: minimal valuation on each branch and the conductor exponent."""
    return [[{"min_valuation": [e.min_valuation(b) for b in range(e.r)], "conductor": e.hi}
             for e in row] for row in A.entries]


def analyze_ring(R, presentation=None, cutoff=GL_CUTOFF, with_ext=True) -> dict:
    ch = normalization_chain(R)
    A = build_order(ch)
    n = ch.level
    checks: dict = {}
    out = {
        "name": R.name,
        "branches": R.r,
        "level": n,
        "conductor": R.conductor,
        "chain": [
            {"ring": O.describe(), "blocks": [list(b) for b in singular_ideal(O).blocks],
             "singular_blocks": [list(b) for b in singular_ideal(O).singular_blocks]}
            for O in ch.rings
        ],
        "order": A.describe(),
        "order_valuations": order_table(A),
    }
    checks["duality"] = all(duality_check(O)["ok"] for O in ch.rings[:-1])
    checks["hierarchy"] = hierarchy_check(A)["ok"]
    checks["top_row_projectivity"] = _guard(lambda: top_row_projectivity(A))["ok"]
    if n == 0:
        out["Q"] = None
        out["W"] = {"dims": [], "colengths": []}
        out["checks"] = checks
        out["ok"] = all(checks.values())
        return out
    layers = build_layers(ch, A)
    Q = layers[-1].algebra
    her = _guard(lambda: heredity_check(layers))
    checks["heredity"] = her["ok"]
    C = cartan_matrix(Q)
    g = gl_dim(Q, cutoff)
    Qv = quiver(Q)
    out["Q"] = {
        "dim": Q.dim,
        "layer_dims": [L.dim for L in layers],
        "quiver": quiver_dict(Qv),
        "cartan": C,
        "cartan_det": cartan_det(C),
        "gl_dim": _gl(g),
        "heredity": her,
    }
    checks["cartan_det_one"] = out["Q"]["cartan_det"] == 1
    checks["gl_dim_bound"] = not isinstance(g, Exceeded) and g <= 2 * (n - 1)
    if with_ext:
        D, Nb = standard_modules(layers)
        pmax = max(2 * (n - 1), g if isinstance(g, int) else 0, 1)
        eo = ext_orthogonality(layers, D, Nb, pmax)
        cl = first_column_identities(ch, layers, D)
        out["Q"]["standard_dims"] = [M.dim for M in D]
        out["Q"]["costandard_dims"] = [M.dim for M in Nb]
        out["Q"]["ext_orthogonality"] = eo
        out["Q"]["first_column"] = cl
        checks["ext_orthogonality"] = eo["ok"]
        checks["first_column"] = cl["ok"]
    try:
        W = bimodule_W(ch, A, layers[-1])
        out["W"] = {"dims": W.dims(), "colengths": W.colengths}
        checks["W_bimodule"] = W.dims() == W.colengths
        if is_a_even(R):
            rel = w_relations(ch, A, layers[-1], W)
            out["W"]["relations"] = rel
            checks["W_relations"] = rel["ok"]
    except ConsistencyError as exc:
        out["W"] = {"error": str(exc)}
        checks["W_bimodule"] = False
    if presentation is not None:
        P = presented_algebra(QuiverPresentation.from_dict(presentation), R.field)
        gp = gl_dim(P, cutoff)
        same = (P.dim == Q.dim and cartan_matrix(P) == C and
                quiver(P).arrow_counts() == Qv.arrow_counts() and gp == g)
        out["presented"] = {"dim": P.dim, "cartan": cartan_matrix(P), "gl_dim": _gl(gp), "matches": same}
        checks["presented_match"] = same
    out["checks"] = checks
    out["ok"] = all(checks.values())
    return out


def analyze_curve(config: CurveConfig, cutoff=GL_CUTOFF) -> dict:
    res = build_Lambda(config, cutoff=cutoff)
    Qv = res.quiver()
    C = res.cartan()
    checks = {}
    gL, gQ = res.gl_dim, res.gl_dim_Q
    checks["gl_dim_bound"] = (not isinstance(gL, Exceeded) and not isinstance(gQ, Exceeded)
                              and gL <= gQ + 2)
    checks["cartan_det_one"] = cartan_det(C) == 1
    rels = {}
    singular = [pd for pd in res.points if pd.chain.level >= 1]
    for k, pd in enumerate(singular):
        if is_a_even(pd.spec.ring):
            rels[pd.spec.name] = lambda_relations(res, k)
    if rels:
        checks["lambda_relations"] = all(v["ok"] for v in rels.values())
    return {
        "components": list(config.components),
        "dim": res.algebra.dim,
        "quiver": quiver_dict(Qv),
        "dot": to_dot(Qv, "Lambda"),
        "cartan": C,
        "cartan_det": cartan_det(C),
        "gl_dim": _gl(gL),
        "gl_dim_Q": _gl(gQ),
        "relations": rels,
        "checks": checks,
        "ok": all(checks.values()),
    }


def analyze_spec(spec, truncation=None, presentations=None, with_ext=True) -> dict:
    presentations = presentations or {}
    rings = spec.rings(truncation)
    pts = [analyze_ring(R, presentations.get(R.name), with_ext=with_ext) for R in rings]
    report = {"schema_version": SCHEMA_VERSION, "field": spec.field, "points": pts}
    ok = all(p["ok"] for p in pts)
    if spec.components:
        report["curve"] = analyze_curve(spec.curve_config(rings))
        ok = ok and report["curve"]["ok"]
    report["ok"] = ok
    return report


def failed_checks(report) -> list:
    bad = []
    for p in report.get("points", []):
        bad += ["%s:%s" % (p["name"], k) for k, v in sorted(p["checks"].items()) if not v]
    if "curve" in report:
        bad += ["curve:%s" % k for k, v in sorted(report["curve"]["checks"].items()) if not v]
    return bad


def dumps(report) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"
