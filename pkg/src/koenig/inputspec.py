"""Text input format (TOML subset) for singular points and curve configurations.

Grammar::

    field = "rational"            # or "prime:p"
    truncation = 40               # optional

    [[points]]
    name = "cusp"
    branches = 1
    # one entry per generator; each generator is a list of `branches`
    # polynomials; a polynomial is a list of terms [exponent, num, den]
    # (or [exponent, "num/den"])
    generators = [
      [ [[2, 1, 1]] ],
      [ [[3, 1, 1]] ],
    ]

    [[components]]
    name = "X1"

    [[attachments]]
    point = "cusp"
    branch = 1                    # 1-based
    component = "X1"
    lambda = "0"                  # a fraction "p/q", an integer, or "inf"

Floats are rejected: every coefficient must be exact.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import json

import tomli

from .chain import local_ring
from .field import FieldError, field_from_descriptor


class InputError(ValueError):
    def __init__(self, msg, line=None, col=None):
        self.line, self.col = line, col
        loc = "" if line is None else " (line %d, column %d)" % (line, col or 1)
        super().__init__(msg + loc)


@dataclass
class PointInput:
    name: str
    branches: int
    generators: list  # list of {(deg, branch): Fraction}


@dataclass
class Attachment:
    point: str
    branch: int  # 0-based
    component: str
    lam: Fraction | None  # None is infinity


@dataclass
class InputSpec:
    field: str = "rational"
    truncation: int | None = None
    points: list = dc_field(default_factory=list)
    components: list = dc_field(default_factory=list)
    attachments: list = dc_field(default_factory=list)

    def field_object(self):
        return field_from_descriptor(self.field)

    def rings(self, truncation=None):
        """LocalRing per point (in input order)."""
        F = self.field_object()
        N = truncation if truncation is not None else self.truncation
        out = []
        for p in self.points:
            gens = [{k: F(c) for k, c in g.items()} for g in p.generators]
            out.append(local_ring(gens, p.branches, F, truncation=N, name=p.name))
        return out

    def curve_config(self, rings=None):
        from .qha import CurveConfig, PointSpec
        rings = rings or self.rings()
        comps = list(self.components)
        att = {p.name: [None] * p.branches for p in self.points}
        for a in self.attachments:
            att[a.point][a.branch] = (comps.index(a.component), a.lam)
        pts = []
        for p, R in zip(self.points, rings):
            if any(x is None for x in att[p.name]):
                raise InputError("point %s has unattached branches" % p.name)
            pts.append(PointSpec(p.name, R, att[p.name]))
        return CurveConfig(comps, pts)


# --------------------------------------------------------------------------


def _locate(text, pattern, nth=0):
    if text is None:
        return None, None
    ms = list(re.finditer(pattern, text, re.M))
    if len(ms) <= nth:
        return None, None
    start = ms[nth].start()
    # patterns may begin with whitespace that spans blank lines
    while start < len(text) and text[start].isspace():
        start += 1
    line = text.count("\n", 0, start) + 1
    col = start - (text.rfind("\n", 0, start) + 1) + 1
    return line, col


def _fail(msg, text=None, pattern=None, nth=0):
    line, col = _locate(text, pattern, nth) if pattern else (None, None)
    raise InputError(msg, line, col)


def _fraction(x, where, text):
    if isinstance(x, bool) or isinstance(x, float):
        _fail("%s: coefficient %r is not exact" % (where, x), text, re.escape(repr(x)))
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        if not re.fullmatch(r"\s*[+-]?\d+\s*(/\s*\d+\s*)?", x):
            _fail("%s: cannot read %r as an exact fraction" % (where, x), text, re.escape(x))
        try:
            return Fraction(x.replace(" ", ""))
        except ZeroDivisionError:
            _fail("%s: zero denominator in %r" % (where, x), text, re.escape(x))
    _fail("%s: unexpected coefficient %r" % (where, x))


def _term(t, where, text):
    if not isinstance(t, list) or len(t) not in (2, 3):
        _fail("%s: a term is [exponent, num, den] or [exponent, \"p/q\"]" % where)
    e = t[0]
    if isinstance(e, bool) or not isinstance(e, int) or e < 0:
        _fail("%s: exponent %r must be a non-negative integer" % (where, e))
    if len(t) == 3:
        num, den = t[1], t[2]
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in (num, den)):
            _fail("%s: numerator and denominator must be integers, got %r" % (where, t[1:]))
        if den == 0:
            _fail("%s: zero denominator" % where)
        c = Fraction(num, den)
    else:
        c = _fraction(t[1], where, text)
    return e, c


def _lambda(x, where, text):
    if isinstance(x, str) and x.strip().lower() in ("inf", "infinity", "oo"):
        return None
    return _fraction(x, where, text)


def parse(text: str) -> InputSpec:
    try:
        data = tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        m = re.search(r"line (\d+), column (\d+)", str(exc))
        if m:
            line, col = int(m.group(1)), int(m.group(2))
        else:  # error at end of document
            line, col = text.count("\n") + 1, len(text) - text.rfind("\n")
        raise InputError("malformed input: %s" % str(exc).split(" (at")[0], line, col) from None
    return from_dict(data, text)


def from_dict(data: dict, text: str | None = None) -> InputSpec:
    known = {"field", "truncation", "points", "components", "attachments"}
    for k in data:
        if k not in known:
            _fail("unknown key %r" % k, text, r"^\s*\[*%s\b" % re.escape(k))
    fd = data.get("field", "rational")
    try:
        field_from_descriptor(fd)
    except (FieldError, ValueError) as exc:
        _fail("bad field descriptor %r: %s" % (fd, exc), text, r"^\s*field\s*=")
    trunc = data.get("truncation")
    if trunc is not None and (isinstance(trunc, bool) or not isinstance(trunc, int) or trunc < 2):
        _fail("truncation must be an integer >= 2", text, r"^\s*truncation\s*=")
    points, names = [], set()
    for p in data.get("points", []):
        name = p.get("name")
        if not isinstance(name, str) or not name:
            _fail("every point needs a name", text, r"^\s*\[\[points\]\]")
        pat = r"name\s*=\s*\"%s\"" % re.escape(name)
        if name in names:
            _fail("duplicate point name %r" % name, text, pat)
        names.add(name)
        r = p.get("branches")
        if isinstance(r, bool) or not isinstance(r, int) or r < 1:
            _fail("point %s: branches must be a positive integer" % name, text, pat)
        gens_raw = p.get("generators")
        if not isinstance(gens_raw, list) or not gens_raw:
            _fail("point %s: generators missing" % name, text, pat)
        gens = []
        for gi, g in enumerate(gens_raw):
            where = "point %s, generator %d" % (name, gi + 1)
            if not isinstance(g, list) or len(g) != r:
                _fail("%s: expected %d branch polynomials" % (where, r), text, pat)
            poly = {}
            for b, terms in enumerate(g):
                if not isinstance(terms, list):
                    _fail("%s: branch %d is not a list of terms" % (where, b + 1), text, pat)
                for t in terms:
                    e, c = _term(t, "%s, branch %d" % (where, b + 1), text)
                    if trunc is not None and e >= trunc:
                        _fail("%s: exponent %d outside truncation %d" % (where, e, trunc), text, pat)
                    if c:
                        poly[(e, b)] = poly.get((e, b), Fraction(0)) + c
            gens.append({k: v for k, v in poly.items() if v})
        for k in p:
            if k not in ("name", "branches", "generators"):
                _fail("point %s: unknown key %r" % (name, k), text, pat)
        points.append(PointInput(name, r, gens))
    comps = []
    for c in data.get("components", []):
        cn = c.get("name") if isinstance(c, dict) else c
        if not isinstance(cn, str) or not cn:
            _fail("every component needs a name", text, r"^\s*\[\[components\]\]")
        if cn in comps:
            _fail("duplicate component %r" % cn, text, r"name\s*=\s*\"%s\"" % re.escape(cn))
        comps.append(cn)
    atts, seen, done = [], {}, set()
    bypoint = {p.name: p for p in points}
    for ai, a in enumerate(data.get("attachments", [])):
        pn, b, cn = a.get("point"), a.get("branch", 1), a.get("component")
        pat = r"^\s*\[\[attachments\]\]"
        if pn not in bypoint:
            _fail("attachment refers to unknown point %r" % pn, text, pat, ai)
        if isinstance(b, bool) or not isinstance(b, int) or not 1 <= b <= bypoint[pn].branches:
            _fail("attachment of %s: branch %r out of range" % (pn, b), text, pat, ai)
        if cn not in comps:
            _fail("attachment of %s: unknown component %r" % (pn, cn), text, pat, ai)
        if "lambda" not in a:
            _fail("attachment of %s: lambda missing" % pn, text, pat, ai)
        lam = _lambda(a["lambda"], "attachment of %s" % pn, text)
        if (pn, b) in done:
            _fail("branch %d of %s attached twice" % (b, pn), text, pat, ai)
        done.add((pn, b))
        if (cn, lam) in seen:
            _fail("duplicate lambda %s on component %s" % ("inf" if lam is None else lam, cn), text, pat, ai)
        seen[(cn, lam)] = pn
        atts.append(Attachment(pn, b - 1, cn, lam))
    if atts or comps:
        for p in points:
            for b in range(p.branches):
                if (p.name, b + 1) not in done:
                    _fail("branch %d of %s is not attached to a component" % (b + 1, p.name), text,
                          r"name\s*=\s*\"%s\"" % re.escape(p.name))
    return InputSpec(fd, trunc, points, comps, atts)


def _coef_out(c: Fraction):
    return [c.numerator, c.denominator]


def to_dict(spec: InputSpec) -> dict:
    d: dict = {"field": spec.field}
    if spec.truncation is not None:
        d["truncation"] = spec.truncation
    pts = []
    for p in spec.points:
        gens = []
        for g in p.generators:
            gens.append([[[e] + _coef_out(c) for (e, b), c in sorted(g.items()) if b == br]
                         for br in range(p.branches)])
        pts.append({"name": p.name, "branches": p.branches, "generators": gens})
    if pts:
        d["points"] = pts
    if spec.components:
        d["components"] = [{"name": c} for c in spec.components]
    if spec.attachments:
        d["attachments"] = [
            {"point": a.point, "branch": a.branch + 1, "component": a.component,
             "lambda": "inf" if a.lam is None else str(a.lam)}
            for a in spec.attachments
        ]
    return d


def _q(s):
    return json.dumps(s, ensure_ascii=False)


def serialize(spec: InputSpec) -> str:
    """Canonical text form; ``parse(serialize(s)) == s``."""
    d = to_dict(spec)
    out = ["field = %s" % _q(d["field"])]
    if "truncation" in d:
        out.append("truncation = %d" % d["truncation"])
    for p in d.get("points", []):
        out += ["", "[[points]]", "name = %s" % _q(p["name"]), "branches = %d" % p["branches"], "generators = ["]
        for g in p["generators"]:
            out.append("  %s," % json.dumps(g))
        out.append("]")
    for c in d.get("components", []):
        out += ["", "[[components]]", "name = %s" % _q(c["name"])]
    for a in d.get("attachments", []):
        out += ["", "[[attachments]]", "point = %s" % _q(a["point"]), "branch = %d" % a["branch"],
                "component = %s" % _q(a["component"]), "lambda = %s" % _q(a["lambda"])]
    return "\n".join(out) + "\n"


def load(path) -> InputSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())


def from_fixture(fx, truncation=None) -> InputSpec:
    def conv(g):
        return {k: Fraction(c) for k, c in g.items()}
    return InputSpec("rational", truncation, [PointInput(fx.name, fx.branches, [conv(fx.u), conv(fx.v)])])
