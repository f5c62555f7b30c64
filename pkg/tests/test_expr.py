import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ep_atlas import expr as dsl
from ep_atlas.expr import (
    BinOp,
    Call,
    EvaluationError,
    ExpressionSyntaxError,
    Literal,
    Name,
    Neg,
    Power,
    UnboundIdentifierError,
    UnknownFunctionError,
    evaluate,
    parse,
    to_source,
)


def ev(src, **b):
    return evaluate(parse(src), b)


def test_zero_literal():
    assert parse("0") == Literal(0j)
    assert ev("0") == 0j


def test_sin_at_half_pi():
    v = ev("0.3 + i*sin(k_x)", k_x=math.pi / 2)
    assert v == pytest.approx(0.3 + 1j, abs=1e-15)


def test_euler_identity():
    v = ev("exp(i*theta)*k_x", theta=math.pi / 2, k_x=2)
    assert abs(v - 2j) < 1e-15


def test_identity_and_power():
    assert ev("k_x", k_x=1.5) == 1.5 + 0j
    assert ev("2^3") == 8 + 0j
    assert ev("2^-1") == 0.5


def test_fractional_exponent_rejected():
    with pytest.raises(ExpressionSyntaxError):
        parse("(-2)^0.5")


def test_precedence_rules():
    b = dict(a=1.3 - 0.2j, b=0.7 + 2j, c=-1.1 + 0.4j)
    assert ev("a+b*c", **b) == ev("a+(b*c)", **b)
    assert ev("-a^2", **b) == ev("-(a^2)", **b)
    assert ev("2^3^2") == 2**9
    assert ev("a-b-c", **b) == ev("(a-b)-c", **b)
    assert ev("a/b/c", **b) == ev("(a/b)/c", **b)


def test_syntax_error_reports_offset_and_expected():
    with pytest.raises(ExpressionSyntaxError) as err:
        parse("1 + * 2")
    assert err.value.offset == 4
    assert "number" in err.value.expected


def test_offset_counts_utf8_bytes():
    with pytest.raises(ExpressionSyntaxError) as err:
        parse("α + 1")
    assert err.value.offset == 0
    with pytest.raises(ExpressionSyntaxError) as err:
        parse("1 + )")
    assert err.value.offset == 4


def test_unknown_function():
    with pytest.raises(UnknownFunctionError) as err:
        parse("tan(k_x)")
    assert err.value.name == "tan"


def test_unbound_identifiers_listed():
    with pytest.raises(UnboundIdentifierError) as err:
        ev("a*k_x + b")
    assert err.value.missing == ("a", "b", "k_x")


def test_nan_and_division_by_zero_are_errors():
    with pytest.raises(EvaluationError):
        ev("1/0")
    with pytest.raises(EvaluationError):
        ev("exp(1000)")
    assert ev("sqrt(0)") == 0


def test_functions():
    z = 0.4 - 1.2j
    assert ev("conj(z)", z=z) == z.conjugate()
    assert ev("re(z)", z=z) == 0.4
    assert ev("im(z)", z=z) == -1.2
    assert ev("sqrt(z)", z=z) == cmath.sqrt(z)
    assert ev("cos(z)", z=z) == cmath.cos(z)


def test_compile_matches_evaluate():
    e = parse("alpha + i*sin(k_x) - 2*cos(k_y)^2")
    f = dsl.compile_expr(e)
    b = {"alpha": 0.3, "k_x": 0.2, "k_y": -0.7}
    assert f(b) == evaluate(e, b)


# ------------------------------------------------------------- round trip

NAMES = ["k_x", "k_y", "a", "b_2"]
finite = st.floats(-5, 5, allow_nan=False, allow_infinity=False)
leaves = st.one_of(
    st.builds(lambda r, im: Literal(complex(r, im)), finite, finite),
    st.sampled_from(NAMES).map(Name),
)


def _extend(children):
    return st.one_of(
        st.builds(Neg, children),
        st.builds(BinOp, st.sampled_from("+-*/"), children, children),
        st.builds(Power, children, st.integers(-3, 4)),
        st.builds(Call, st.sampled_from(sorted(dsl.FUNCTIONS)), children),
    )


def _depth(e) -> int:
    if isinstance(e, (Literal, Name)):
        return 1
    if isinstance(e, BinOp):
        return 1 + max(_depth(e.left), _depth(e.right))
    return 1 + _depth(e.operand if isinstance(e, Neg) else e.base if isinstance(e, Power) else e.arg)


asts = st.recursive(leaves, _extend, max_leaves=24).filter(lambda e: _depth(e) <= 6)
binding = st.fixed_dictionaries({n: st.builds(complex, finite, finite) for n in NAMES})


def _value(e, b):
    try:
        return evaluate(e, b)
    except EvaluationError:
        return "error"


@settings(max_examples=1000, deadline=None)
@given(asts, st.lists(binding, min_size=10, max_size=10))
def test_print_parse_round_trip(e, bindings):
    back = parse(to_source(e))
    for b in bindings:
        v1, v2 = _value(e, b), _value(back, b)
        if v1 == "error" or v2 == "error":
            assert v1 == v2
        else:
            assert abs(v1 - v2) <= 1e-15 * max(1.0, abs(v1))


@settings(max_examples=200, deadline=None)
@given(binding)
def test_precedence_property(b):
    assert ev("a+k_x*k_y", **b) == ev("a+(k_x*k_y)", **b)
    assert ev("a*k_x^2", **b) == ev("a*(k_x^2)", **b)
