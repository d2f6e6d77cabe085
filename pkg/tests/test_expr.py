import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qpd import randgen
from qpd.errors import EvaluationError, ParseError, UnknownGeneratorError
from qpd.expr import BinOp, Call, Indexed, Neg, Num, Pow, Sym, evaluate, normalize, parse, to_text
from qpd.ncalgebra import U2_EXT, gl
from qpd.suites import SUITES, Fixture

FIXTURE_SYMBOLS = ("b", "a0", "a1", "a2", "a3", "A", "B", "C", "I")


def _leaf():
    return st.one_of(
        st.builds(Num, st.integers(0, 30)),
        st.sampled_from([Sym(s) for s in ("t", "x", "y", "z", "rho", "hb", "i")]),
        st.builds(Indexed, st.just("l"), st.integers(1, 3), st.integers(1, 3)),
    )


def _extend(children):
    return st.one_of(
        st.builds(BinOp, st.sampled_from("+-*/"), children, children),
        st.builds(Neg, children),
        st.builds(Pow, children, st.integers(0, 4)),
        st.builds(Pow, st.sampled_from([Sym("rho"), Sym("hb")]), st.integers(-3, -1)),
        st.builds(Call, st.sampled_from(["dx", "dt0", "lim", "H23"]), children),
        st.builds(Call, st.sampled_from(["d", "dh"]), children,
                  st.tuples(st.integers(1, 3), st.integers(1, 3))),
    )


ASTS = st.recursive(_leaf(), _extend, max_leaves=12)


@settings(max_examples=300, deadline=None)
@given(ASTS)
def test_print_parse_roundtrip(node):
    assert parse(to_text(node)) == node


# these two suites hold signed operator names, not expressions
TABLE_SUITES = ("leibniz-table", "quaternions")


def _fixture_exprs():
    for name in SUITES:
        if name in TABLE_SUITES:
            continue
        for e in Fixture.default(name).entries:
            yield name, e.key, e.value
            if "(" in e.key:
                yield name, e.key, e.key


@pytest.mark.parametrize("suite,key,src", list(_fixture_exprs()))
def test_fixture_corpus_roundtrips(suite, key, src):
    node = parse(src, FIXTURE_SYMBOLS)
    assert parse(to_text(node), FIXTURE_SYMBOLS) == node


@pytest.mark.parametrize("src", ["x*y - y*x", "rho^-1 * rho", "x^2", "dt(rho)", "dt0(rho)"])
def test_cli_examples_roundtrip(src):
    assert parse(to_text(parse(src))) == parse(src)


def test_canonical_forms_reparse():
    r = randgen.rng(11)
    for alg in (U2_EXT, gl(2), gl(3)):
        for _ in range(40):
            p = randgen.poly(r, alg, max_deg=3, nterms=4)
            if alg.has_rho:
                p = p * alg.rho(r.randint(-2, 3))
            text = str(p)
            assert str(evaluate(parse(text))) == text


def test_spec_examples():
    assert str(normalize("x*y - y*x")) == "2*i*hb*z"
    assert str(normalize("rho^-1 * rho")) == "1"
    assert str(normalize("  x\n * y ")) == "x*y"


@pytest.mark.parametrize("src,line,col", [
    ("x + * y", 1, 5),
    ("x +", 1, 4),
    ("(x", 1, 3),
    ("l[1,]", 1, 5),
    ("x $ y", 1, 3),
    ("x*y\n + * z", 2, 4),
    ("x^-1", 1, 3),
])
def test_syntax_errors_have_positions(src, line, col):
    with pytest.raises(ParseError) as ei:
        parse(src)
    assert (ei.value.line, ei.value.column) == (line, col)


def test_expected_set_reported():
    with pytest.raises(ParseError) as ei:
        parse("x + * y")
    assert set(ei.value.expected) == {"(", "-", "INT", "NAME"}


def test_unknown_generator():
    with pytest.raises(UnknownGeneratorError):
        parse("foo*x")
    assert parse("b*x", ["b"]) == BinOp("*", Sym("b"), Sym("x"))


def test_evaluation_errors():
    with pytest.raises(EvaluationError):
        normalize("1/x")
    assert str(normalize("x/2")) == "1/2*x"
    assert str(normalize("hb^-2*hb")) == "hb^-1"
