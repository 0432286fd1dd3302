import pytest

from scx.errors import DivideByZero, DivisionUnsupported, RingMismatch, SchemaError
from scx.rings import (
    FRAC_LAURENT_Q,
    LAURENT_Z,
    Q,
    Ring,
    RingMap,
    Z,
    Zp,
    eval_t_at_one,
    parse_element,
    ring_arith,
)


def L(s):
    return parse_element(LAURENT_Z, s)


def test_laurent_product_difference_of_squares():
    assert L("T - T^-1") * L("T + T^-1") == L("T^2 - T^-2")


def test_eval_at_one_kills_t2_minus_tm2():
    f = eval_t_at_one()
    assert f(L("T^2 - T^-2")) == Z.zero()


def test_integer_addition():
    assert ring_arith(Z.from_int(2), Z.from_int(3), "add") == Z.from_int(5)


def test_division_rules():
    with pytest.raises(DivisionUnsupported):
        ring_arith(Z.from_int(4), Z.from_int(2), "div")
    with pytest.raises(DivideByZero):
        ring_arith(Q.from_int(1), Q.from_int(0), "div")
    assert ring_arith(Q.from_int(3), Q.from_int(4), "div") == parse_element(Q, "3/4")


def test_ring_mismatch():
    with pytest.raises(RingMismatch):
        Z.from_int(1) + Q.from_int(1)


def test_prime_field_validation():
    Zp(7)
    with pytest.raises(Exception):
        Ring(Ring.MODP, 6)


def test_mod_p_arithmetic():
    five = Zp(5)
    assert five.from_int(3) * five.from_int(4) == five.from_int(2)
    assert five.from_int(2).inverse() == five.from_int(3)


def test_canonical_fraction_field():
    f = parse_element(FRAC_LAURENT_Q, "T^2 - T^-2")
    g = parse_element(FRAC_LAURENT_Q, "T - 1")
    h = f / g
    assert h * g == f
    assert str(h) == "T + 1 + T^-1 + T^-2"


def test_parse_examples_from_grammar():
    assert str(L("T^2 - T^-2")) == "T^2 - T^-2"
    assert L("-3*T^0 + 1") == L("-2")
    assert parse_element(Q, "3/4") + parse_element(Q, "1/4") == Q.one()
    with pytest.raises(SchemaError):
        parse_element(Z, "3/4")
    with pytest.raises(SchemaError):
        parse_element(Q, "T^2")


def test_roundtrip_format_parse():
    for s in ("T^2 - T^-2", "-3 + 1", "5", "2*T^3 + T - 4"):
        x = L(s)
        assert parse_element(LAURENT_Z, str(x)) == x
    y = parse_element(FRAC_LAURENT_Q, "1/2*T^2 - 3/4")
    assert parse_element(FRAC_LAURENT_Q, str(y)) == y
    z = parse_element(FRAC_LAURENT_Q, "(T^2 - T^-2)/(T^4 + 1)")
    assert parse_element(FRAC_LAURENT_Q, str(z)) == z


def test_laurent_units():
    assert LAURENT_Z.monomial(-3, -1).is_unit
    assert not L("T + 1").is_unit
    assert LAURENT_Z.monomial(2).inverse() == LAURENT_Z.monomial(-2)


def test_ring_map_validation():
    with pytest.raises(RingMismatch):
        RingMap(RingMap.MOD_P, Q, Zp(3))
    with pytest.raises(Exception):
        RingMap(RingMap.EVAL_T, LAURENT_Z, Z, unit=Z.from_int(2))
    m = RingMap(RingMap.EVAL_T, LAURENT_Z, Zp(5), unit=Zp(5).from_int(2))
    assert m(L("T^2 + T^-2")) == Zp(5).from_int(4 + 4)  # 4 + inverse(4)=4


def test_include_laurent_in_fraction_field():
    m = RingMap(RingMap.LAURENT_TO_FRAC, LAURENT_Z, FRAC_LAURENT_Q)
    x = m(L("T^2 - T^-2"))
    assert x == parse_element(FRAC_LAURENT_Q, "T^2 - T^-2")
