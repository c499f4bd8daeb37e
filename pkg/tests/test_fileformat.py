import pathlib

import pytest

from qpbcalc.comodule import tau_identity_suite
from qpbcalc.examples import EXAMPLE_NAMES, build_example, oracle_crosscheck
from qpbcalc.fileformat import ParseError, parse, serialize
from qpbcalc.ncalg import NCPoly
from qpbcalc.scalars import Scalar

DATA = pathlib.Path(__file__).resolve().parents[1] / "src/qpbcalc/data"


def read(name):
    return (DATA / f"{name}.qpb").read_text()


@pytest.mark.parametrize("name", EXAMPLE_NAMES)
def test_shipped_files_parse(name):
    bundle = parse(read(name))
    assert bundle.name == name


def test_roundtrip_identity_podles():
    text = read("podles")
    bundle = parse(text)
    again = serialize(bundle)
    assert again == text
    assert serialize(parse(again)) == again


def test_shipped_equals_programmatic():
    for name in EXAMPLE_NAMES:
        assert serialize(build_example(name)) == read(name), name


def test_parsed_bundle_runs_suites():
    bundle = parse(read("torus"))
    assert tau_identity_suite(bundle.ca, bundle.td, 3, "torus-file").ok()
    assert oracle_crosscheck(bundle).ok()
    assert bundle.cc.connection_check(bundle.connection, 2).ok()


def test_parsed_strong_forms():
    for name in ("torus", "podles", "crossed_demo"):
        bundle = parse(read(name))
        assert bundle.ell is not None
        assert bundle.cc.strong_connection_check(bundle.ell, 2).ok(), name


def test_undeclared_generator_has_line_number():
    text = read("torus")
    broken = text.replace("v*u = L*u*v", "v*w = L*u*v")
    lineno = next(i for i, line in enumerate(text.splitlines(), 1)
                  if "v*u = L*u*v" in line)
    with pytest.raises(ParseError) as err:
        parse(broken)
    assert str(lineno) in str(err.value)


def test_syntax_error_has_line_number():
    text = read("torus")
    broken = text.replace("v*u = L*u*v", "v*u = L*)u*v")
    with pytest.raises(ParseError) as err:
        parse(broken)
    assert "line" in str(err.value)


def test_missing_sections_reported():
    with pytest.raises(ParseError):
        parse("[params]\nq = invertible\n")


def test_invariant_violation_reported():
    # flipping an epsilon entry breaks the counit axiom at validation
    text = read("torus").replace("[hopf.epsilon]\nt = 1", "[hopf.epsilon]\nt = 0")
    with pytest.raises(ParseError) as err:
        parse(text)
    assert "validation" in str(err.value)


def test_scalar_literal_grammar():
    # the torus file exercises integers, parameters, powers, and signs;
    # a denominator round-trips too
    from qpbcalc.exprs import eval_scalar
    from qpbcalc.scalars import Parameter

    params = {"q": Parameter("q", True)}
    s = eval_scalar("(q^2 - 1)/(q - 1) - q", params)
    assert s == Scalar.one()
