from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from koenig.fixtures import all_fixtures, fixture_file
from koenig.inputspec import (
    Attachment,
    InputError,
    InputSpec,
    PointInput,
    from_fixture,
    load,
    parse,
    serialize,
)

INPUTS = Path(__file__).resolve().parents[1] / "inputs"

CUSP = """\
field = "rational"

[[points]]
name = "cusp"
branches = 1
generators = [
  [[[2, 1, 1]]],
  [[[3, "1"]]],
]
"""


def test_parse_cusp():
    spec = parse(CUSP)
    assert spec.field == "rational" and spec.truncation is None
    (p,) = spec.points
    assert p.name == "cusp" and p.branches == 1
    assert p.generators == [{(2, 0): Fraction(1)}, {(3, 0): Fraction(1)}]
    (R,) = spec.rings()
    assert R.lattice.valuation_set(0) == [0] and R.lattice.hi == 2


def test_fixture_file_a4():
    spec = load(fixture_file("A4"))
    gens = spec.points[0].generators
    assert {(5, 0): Fraction(1)} in gens and {(2, 0): Fraction(1)} in gens


@pytest.mark.parametrize("fx", all_fixtures(), ids=lambda f: f.name)
def test_fixture_files_match_builtin(fx):
    spec = load(fixture_file(fx.name))
    built = from_fixture(fx)
    assert spec.points[0].branches == fx.branches
    assert sorted(map(sorted, (g.items() for g in spec.points[0].generators))) == \
        sorted(map(sorted, (g.items() for g in built.points[0].generators)))


@pytest.mark.parametrize("path", sorted(INPUTS.glob("*.toml")), ids=lambda p: p.name)
def test_example_inputs_round_trip(path):
    spec = load(path)
    assert parse(serialize(spec)) == spec


def _err(text):
    with pytest.raises(InputError) as exc:
        parse(text)
    return exc.value


def test_duplicate_lambda_located():
    text = CUSP.replace('branches = 1', 'branches = 2').replace(
        '[[[2, 1, 1]]],', '[[[2, 1, 1]], [[1, 1, 1]]],').replace(
        '[[[3, "1"]]],', '[[[3, "1"]], []],') + """
[[components]]
name = "X"

[[attachments]]
point = "cusp"
branch = 1
component = "X"
lambda = "1/2"

[[attachments]]
point = "cusp"
branch = 2
component = "X"
lambda = "1/2"
"""
    e = _err(text)
    assert "duplicate lambda" in str(e)
    assert e.line == text.splitlines().index("[[attachments]]", text.splitlines().index("[[attachments]]") + 1) + 1


def test_malformed_toml_has_position():
    e = _err('field = "rational"\n[[points]\n')
    assert e.line == 2


def test_float_coefficient_rejected():
    e = _err(CUSP.replace('[[[2, 1, 1]]]', '[[[2, 0.5]]]'))
    assert "not exact" in str(e) and e.line is not None


@pytest.mark.parametrize("bad, msg", [
    ('field = "prime:9"', "bad field"),
    ('field = "complex"', "bad field"),
    ('colour = "blue"\nfield = "rational"', "unknown key"),
])
def test_header_errors(bad, msg):
    assert msg in str(_err(CUSP.replace('field = "rational"', bad)))


def test_unattached_branch():
    text = CUSP + '\n[[components]]\nname = "X"\n'
    assert "not attached" in str(_err(text))


def test_branch_count_mismatch():
    assert "expected 1 branch" in str(_err(CUSP.replace("[[[2, 1, 1]]]", "[[[2, 1, 1]], []]")))


def test_zero_denominator():
    assert "zero denominator" in str(_err(CUSP.replace("[[[2, 1, 1]]]", "[[[2, 1, 0]]]")))


# -- round trip ----------------------------------------------------------------

fractions = st.fractions(max_denominator=7).filter(lambda x: x != 0).map(lambda x: Fraction(x).limit_denominator(50))


@st.composite
def specs(draw):
    npts = draw(st.integers(1, 3))
    points = []
    for k in range(npts):
        r = draw(st.integers(1, 3))
        gens = []
        for _ in range(draw(st.integers(1, 3))):
            terms = draw(st.dictionaries(st.tuples(st.integers(0, 9), st.integers(0, r - 1)), fractions, max_size=4))
            gens.append(terms)
        points.append(PointInput("p%d" % k, r, gens))
    comps = ["C%d" % i for i in range(draw(st.integers(0, 2)))]
    atts = []
    if comps:
        lams = iter(range(100))
        for p in points:
            for b in range(p.branches):
                c = draw(st.sampled_from(comps))
                lam = None if draw(st.booleans()) and not any(a.component == c and a.lam is None for a in atts) \
                    else Fraction(next(lams), draw(st.integers(1, 4)))
                if any(a.component == c and a.lam == lam for a in atts):
                    lam = Fraction(1000 + next(lams))
                atts.append(Attachment(p.name, b, c, lam))
    field = draw(st.sampled_from(["rational", "prime:5", "prime:101"]))
    trunc = draw(st.one_of(st.none(), st.integers(10, 40)))
    return InputSpec(field, trunc, points, comps, atts)


@settings(max_examples=150, deadline=None)
@given(specs())
def test_serialize_round_trip(spec):
    text = serialize(spec)
    assert parse(text) == spec
    assert serialize(parse(text)) == text
