import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reeskit.algebra import (
    ModulusMismatch,
    MonomialOrder,
    PolyRing,
    Polynomial,
    PolynomialSyntaxError,
    RegistryMismatch,
    VarRegistry,
    format_polynomial,
    is_t_homogeneous,
    t_components,
    t_degree,
)

P = 32003


def test_registry_rejects_duplicates():
    with pytest.raises(ValueError):
        VarRegistry.of(["a", "a"])


def test_ring_rejects_composite_modulus():
    with pytest.raises(ValueError):
        PolyRing(["x"], modulus=32004)


def test_arithmetic_small(ring_ab):
    a, b = ring_ab.gens()
    f = (a + b) ** 2
    assert f == a * a + 2 * a * b + b * b
    assert (f - f).is_zero()
    assert f.total_degree() == 2


def test_coefficients_reduced_mod_p(ring_ab):
    a, _ = ring_ab.gens()
    assert a.scale(P).is_zero()
    assert (a * (P + 3)) == a * 3


def test_mixing_rings_raises():
    R = PolyRing(["a", "b"])
    S = PolyRing(["a", "c"])
    with pytest.raises(RegistryMismatch):
        R.var("a") + S.var("a")
    with pytest.raises(ModulusMismatch):
        R.var("a") + R.with_modulus(101).var("a")


def test_lex_and_degrevlex_leading_terms(ring_ab):
    f = ring_ab.parse("a*b^3 + a^2")
    assert format_polynomial(ring_ab.monomial(f.leading(ring_ab.lex())[0])) == "a^2"
    assert format_polynomial(ring_ab.monomial(f.leading(ring_ab.degrevlex())[0])) == "a*b^3"


def test_degrevlex_tie_break():
    R = PolyRing(["x", "y", "z"])
    order = R.degrevlex()
    # x*z vs y^2: degrevlex puts y^2 first (smaller power of the last variable)
    f = R.parse("x*z + y^2")
    assert f.leading(order)[0] == (0, 2, 0)


def test_block_order_eliminates_first_block():
    order = MonomialOrder.block(3, [([0], "lex"), ([1, 2], "degrevlex")])
    assert order.eliminates([0])
    assert not MonomialOrder.degrevlex(3).eliminates([0])


def test_parse_and_format_round_trip(ring_ab):
    for text in ["a^3 - b^3", "2*a*b - 1", "-a^2*b + 5", "0", "1"]:
        f = ring_ab.parse(text)
        assert ring_ab.parse(format_polynomial(f)) == f


def test_parse_parentheses_and_powers(ring_ab):
    assert ring_ab.parse("(a - b)^2") == ring_ab.parse("a^2 - 2*a*b + b^2")


@pytest.mark.parametrize(
    "text, column",
    [("a b", 3), ("a^", 3), ("a + c", 5), ("a**2", 3), ("(a + b", 7)],
)
def test_parse_errors_carry_columns(ring_ab, text, column):
    with pytest.raises(PolynomialSyntaxError) as info:
        ring_ab.parse(text)
    assert info.value.column == column


def test_negative_coefficients_print_symmetric(ring_ab):
    assert format_polynomial(ring_ab.parse("a - b")) == "a - b"
    assert format_polynomial(ring_ab.parse("-a")) == "-a"


def test_t_degree_helpers():
    R = PolyRing(["z", "T1", "T2"], ["base", "rees", "rees"])
    f = R.parse("z*T1 + T1*T2 + z")
    comps = t_components(f)
    assert sorted(t_degree(c) for c in comps) == [0, 1, 2]
    assert not is_t_homogeneous(f)
    assert is_t_homogeneous(R.parse("T1*T2 - z^3*T2^2"))


def test_convert_by_name():
    R = PolyRing(["a", "b"])
    S = PolyRing(["u", "a", "b"])
    f = R.parse("a^2 - b")
    assert f.convert(S).convert(R) == f
    with pytest.raises(ValueError):
        S.parse("u*a").convert(R)


# -- properties --------------------------------------------------------------

RING = PolyRing(["x", "y", "z"])
terms = st.dictionaries(
    st.tuples(*[st.integers(0, 3)] * 3), st.integers(0, P - 1), max_size=5
)
polys = terms.map(lambda d: Polynomial(RING, d))


@settings(max_examples=100, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == RING.zero()


@settings(max_examples=100, deadline=None)
@given(polys)
def test_format_parse_round_trip(f):
    assert RING.parse(format_polynomial(f)) == f


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_degree_of_product(f, g):
    if f and g:
        assert (f * g).total_degree() == f.total_degree() + g.total_degree()


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(*[st.integers(0, 4)] * 3), min_size=2, max_size=6, unique=True))
def test_orders_are_total_and_multiplicative(exps):
    for order in (RING.lex(), RING.degrevlex()):
        keys = [order.key(e) for e in exps]
        assert len(set(keys)) == len(exps)
        shift = (1, 0, 2)
        a, b = exps[0], exps[1]
        moved = [tuple(x + s for x, s in zip(e, shift)) for e in (a, b)]
        assert (order.key(a) < order.key(b)) == (order.key(moved[0]) < order.key(moved[1]))
