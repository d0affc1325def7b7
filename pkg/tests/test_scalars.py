import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from wallcross.scalars import (
    LaurentPoly,
    Monomial,
    Scalar,
    change_coordinates,
    laurent_gcd,
    monomial,
    one,
    q,
    q1,
    q2,
    rational,
    t,
    zero,
)

# ---------------------------------------------------------------------------
# strategies: small exact scalars.  Exponents mix integers and halves/thirds
# because renormalization factors downstream genuinely produce them.
# ---------------------------------------------------------------------------

exponents = st.sampled_from(
    [Fraction(k) for k in range(-3, 4)]
    + [Fraction(1, 2), Fraction(-1, 2), Fraction(3, 2), Fraction(1, 3)]
)
coeffs = st.sampled_from([Fraction(n) for n in (-3, -2, -1, 1, 2, 3)] + [Fraction(1, 2)])


@st.composite
def laurent_polys(draw, max_terms=4, allow_zero=True):
    n = draw(st.integers(0 if allow_zero else 1, max_terms))
    p = LaurentPoly()
    for _ in range(n):
        p = p + LaurentPoly.term(draw(coeffs), draw(exponents), draw(exponents))
    if not allow_zero and p.is_zero():
        p = LaurentPoly.one()
    return p


@st.composite
def scalars(draw):
    num = draw(laurent_polys())
    den = draw(laurent_polys(max_terms=2, allow_zero=False))
    return Scalar(num, den)


# ---------------------------------------------------------------------------
# ring axioms and canonical form
# ---------------------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(scalars(), scalars(), scalars())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == zero()
    assert a * one() == a
    assert a + zero() == a


@settings(max_examples=60, deadline=None)
@given(scalars(), scalars())
def test_division_inverts_multiplication(a, b):
    if b:
        assert (a * b) / b == a
        assert b * b.inverse() == one()


@settings(max_examples=60, deadline=None)
@given(scalars(), laurent_polys(max_terms=2, allow_zero=False))
def test_canonical_form_is_representation_independent(a, junk):
    # multiplying num and den by a common factor must normalize away
    blown = Scalar(a.num * junk, a.den * junk)
    assert blown == a
    assert blown.dumps() == a.dumps()


@settings(max_examples=40, deadline=None)
@given(scalars())
def test_denominator_normalization(a):
    if a:
        m, c = a.den.leading()
        assert c == 1 and m == Monomial(Fraction(0), Fraction(0))
        assert laurent_gcd(a.num, a.den).is_one() or a.den.is_one()
    else:
        assert a.den.is_one()


def test_single_term_denominator_folds_in():
    x = (one() + q()) / (q(2) * t(-1) * rational(3))
    assert x.is_laurent()
    assert x == rational(Fraction(1, 3)) * (q(-2) * t() + q(-1) * t())


# ---------------------------------------------------------------------------
# oracle: sympy agrees on integer-exponent arithmetic
# ---------------------------------------------------------------------------


def _to_sympy(x, qs, ts):
    import sympy

    def poly(p):
        acc = sympy.Integer(0)
        for m, c in p.terms().items():
            acc += sympy.Rational(c.numerator, c.denominator) * qs ** int(m.exp_q) * ts ** int(m.exp_t)
        return acc

    return poly(x.num) / poly(x.den)


def test_arithmetic_against_sympy():
    import sympy

    qs, ts = sympy.symbols("q t")
    rng = random.Random(7)

    def rand_poly():
        p = LaurentPoly()
        for _ in range(rng.randint(1, 3)):
            p = p + LaurentPoly.term(
                Fraction(rng.choice([-2, -1, 1, 2, 3])),
                Fraction(rng.randint(-2, 2)),
                Fraction(rng.randint(-2, 2)),
            )
        return p if p else LaurentPoly.one()

    for _ in range(25):
        a = Scalar(rand_poly(), rand_poly())
        b = Scalar(rand_poly(), rand_poly())
        for mine, theirs in [
            (a + b, _to_sympy(a, qs, ts) + _to_sympy(b, qs, ts)),
            (a * b, _to_sympy(a, qs, ts) * _to_sympy(b, qs, ts)),
            (a - b, _to_sympy(a, qs, ts) - _to_sympy(b, qs, ts)),
        ]:
            assert sympy.simplify(_to_sympy(mine, qs, ts) - theirs) == 0


# ---------------------------------------------------------------------------
# coordinate frames
# ---------------------------------------------------------------------------


def test_frame_constructors():
    assert q1() == q() * t()
    assert q2() == q() / t()
    assert q1() * q2() == q(2)
    assert q1() / q2() == t(2)
    assert q1(Fraction(1, 2)) * q2(Fraction(1, 2)) == q()


def test_change_coordinates_worked_example():
    # stored pairs read as q1^a q2^b: q2 - q1^(-1) becomes t^(-1) (q - q^(-1))
    stored = monomial(1, 0, 1) - monomial(1, -1, 0)
    out = change_coordinates(stored, "q1q2_to_qt")
    assert out == t(-1) * (q() - q(-1))


@settings(max_examples=50, deadline=None)
@given(scalars(), scalars())
def test_change_coordinates_is_ring_iso(a, b):
    for d in ("q1q2_to_qt", "qt_to_q1q2"):
        assert change_coordinates(a + b, d) == change_coordinates(a, d) + change_coordinates(b, d)
        assert change_coordinates(a * b, d) == change_coordinates(a, d) * change_coordinates(b, d)
    assert change_coordinates(change_coordinates(a, "qt_to_q1q2"), "q1q2_to_qt") == a
    assert change_coordinates(change_coordinates(a, "q1q2_to_qt"), "qt_to_q1q2") == a


def test_change_coordinates_rejects_unknown_direction():
    with pytest.raises(ValueError):
        change_coordinates(one(), "sideways")


# ---------------------------------------------------------------------------
# bar substitution
# ---------------------------------------------------------------------------


@settings(max_examples=50, deadline=None)
@given(scalars())
def test_bar_substitute_involution(a):
    assert a.bar_substitute("q").bar_substitute("q") == a
    assert a.bar_substitute("t").bar_substitute("t") == a


def test_bar_substitute_example():
    x = (q() + t(2)) / (one() - q() * t())
    assert x.bar_substitute("q") == (q(-1) + t(2)) / (one() - q(-1) * t())
    with pytest.raises(ValueError):
        x.bar_substitute("u")


# ---------------------------------------------------------------------------
# series expansion
# ---------------------------------------------------------------------------


def test_series_geometric():
    s = (one() / (one() - q(2) * t(-2))).series_expand(5)
    assert s == (one() + q(2) * t(-2) + q(4) * t(-4)).num


def test_series_laurent_truncation():
    s = (q(-1) + q(3) + q(7)).series_expand(4)
    assert s == (q(-1) + q(3)).num


def test_series_with_numerator_shift():
    # q^(-2)/(1-q) to order 0 needs series terms past the naive order
    s = (q(-2) / (one() - q())).series_expand(0)
    assert s == (q(-2) + q(-1) + one()).num


def test_series_matches_sympy():
    import sympy

    qs = sympy.symbols("q")
    x = (one() + q()) / (one() - q() - q(2))
    got = x.series_expand(6)
    ref = sympy.series((1 + qs) / (1 - qs - qs**2), qs, 0, 7).removeO().expand()
    mine = sum(
        sympy.Rational(c.numerator, c.denominator) * qs ** int(m.exp_q)
        for m, c in got.terms().items()
    )
    assert sympy.expand(mine - ref) == 0


def test_series_rejects_tied_minimal_q_exponent():
    x = one() / (one() + t() + q())
    with pytest.raises(ValueError, match="minimal q-exponent"):
        x.series_expand(3)


# ---------------------------------------------------------------------------
# degree ranges
# ---------------------------------------------------------------------------


def test_degree_ranges():
    x = q(2) * t(-3) + q(-1) * t(Fraction(1, 2))
    assert x.t_degree_range() == (Fraction(-3), Fraction(1, 2))
    assert x.q_degree_range() == (Fraction(-1), Fraction(2))


def test_degree_range_requires_laurent():
    x = one() / (one() + q() + t(2) * q(2))
    with pytest.raises(ValueError):
        x.t_degree_range()
    with pytest.raises(ValueError):
        zero().t_degree_range()


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def test_dumps_format_frozen():
    x = rational(Fraction(-3, 2)) + q() * t(Fraction(1, 2)) * rational(2)
    assert x.dumps() == "2*q^(1)*t^(1/2) - 3/2*q^(0)*t^(0)"
    assert zero().dumps() == "0"
    # the denominator's lex-leading term is normalized to 1*q^(0)*t^(0)
    y = (one() - q()) / (one() - q() + q(2))
    assert y.dumps() == "(-1*q^(-1)*t^(0) + 1*q^(-2)*t^(0))/(1*q^(0)*t^(0) - 1*q^(-1)*t^(0) + 1*q^(-2)*t^(0))"


@settings(max_examples=80, deadline=None)
@given(scalars())
def test_serialization_round_trip(a):
    assert Scalar.loads(a.dumps()) == a


@settings(max_examples=40, deadline=None)
@given(scalars(), scalars())
def test_string_equality_is_value_equality(a, b):
    assert (a.dumps() == b.dumps()) == (a == b)


def test_loads_rejects_garbage():
    for bad in ["q + 1", "1*q^(1)", "(1*q^(0)*t^(0)", "2*q^1*t^(0)"]:
        with pytest.raises(ValueError):
            Scalar.loads(bad)


# ---------------------------------------------------------------------------
# errors and edge cases
# ---------------------------------------------------------------------------


def test_zero_division():
    with pytest.raises(ZeroDivisionError):
        one() / zero()
    with pytest.raises(ZeroDivisionError):
        zero().inverse()
    with pytest.raises(ZeroDivisionError):
        Scalar(LaurentPoly.one(), LaurentPoly.zero())


def test_negative_powers():
    x = one() - q()
    assert x**-2 == one() / (x * x)
    assert x**0 == one()
    assert (q() * t(-1)) ** -3 == q(-3) * t(3)


def test_exact_div_guard():
    with pytest.raises(ArithmeticError):
        (one() - q(2)).num.exact_div((one() + q() + t()).num)


def test_gcd_of_coprime_is_one():
    assert laurent_gcd((one() + q()).num, (one() + t()).num).is_one()


def test_gcd_with_fractional_exponents():
    a = (one() - q(Fraction(1, 2))) * (one() + t())
    b = (one() - q(Fraction(1, 2))) * (one() - t())
    g = laurent_gcd(a.num, b.num)
    # canonical associate: min exponents 0, leading (lex-max) coefficient 1
    assert g == (q(Fraction(1, 2)) - one()).num
    assert a.num.exact_div(g) * g == a.num


def test_doctests():
    import doctest

    import wallcross.scalars as mod

    results = doctest.testmod(mod)
    assert results.failed == 0
