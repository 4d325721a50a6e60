import numpy as np
import pytest
from hypothesis import given, strategies as st

from grcodes.ambient import (
    EnumerationLimitError,
    Kind,
    ambient_from_params,
    canonical_form,
    from_xplus1,
    inverse,
    make_ambient,
    negacyclic_cyclic_map,
    nilpotency_by_powering,
    nilpotency_index,
    reduce_mod_p,
    residue_to_torsion,
    torsion_to_residue,
    weight,
    xplus1_coefficients,
    xplus1_expansion,
    xplus1_valuation,
)
from grcodes.galois_ring import RingError, make_ring

from conftest import naive_mul, naive_pow

AMBIENTS = [
    (3, 2, 1, 1, Kind.NEGACYCLIC),
    (3, 2, 1, 2, Kind.NEGACYCLIC),
    (2, 2, 1, 2, Kind.CYCLIC),
    (2, 3, 1, 1, Kind.NEGACYCLIC),
    (3, 2, 1, 1, Kind.CYCLIC),
    (5, 1, 1, 1, Kind.NEGACYCLIC),
    (2, 2, 2, 1, Kind.CYCLIC),
    (3, 2, 2, 1, Kind.NEGACYCLIC),
]


def amb_of(params):
    p, a, m, s, kind = params
    return ambient_from_params(p, a, m, s, kind)


def elements_of(amb):
    coord = st.tuples(*[st.integers(0, amb.q - 1)] * amb.m)
    return st.lists(coord, min_size=amb.n, max_size=amb.n).map(lambda cs: amb.from_array(np.array(cs)))


def test_construction(z9, z9_27):
    assert z9.size == 729 == 9**3
    assert z9_27.n == 27
    c = make_ambient(make_ring(2, 2, 1), 2, Kind.CYCLIC)
    assert c.n == 4 and c.wrap == 1
    with pytest.raises(RingError):
        make_ambient(make_ring(3, 2, 1), 0)
    with pytest.raises(EnumerationLimitError):
        make_ambient(make_ring(3, 2, 1), 3, exhaustive=True)


def test_multiplication_examples(z9, z4_cyc4):
    x = z9.x
    assert x * x**2 == z9.scalar(8)
    assert z4_cyc4.x**3 * z4_cyc4.x == z4_cyc4.one
    cube = (x + 1) ** 3
    assert cube == z9.from_int_poly(naive_pow([1, 1], 3, 3, 9, -1))
    assert cube == z9.parse("3*x^2+3*x")


@pytest.mark.parametrize("params", AMBIENTS[:6])
def test_product_matches_schoolbook(params):
    amb = amb_of(params)
    if amb.m != 1:
        pytest.skip("schoolbook helper is for m = 1")
    rng = np.random.default_rng(7)
    for _ in range(20):
        f, g = (rng.integers(0, amb.q, amb.n).tolist() for _ in range(2))
        expected = naive_mul(f, g, amb.n, amb.q, amb.wrap)
        assert (amb.from_int_poly(f) * amb.from_int_poly(g)).arr[:, 0].tolist() == expected


def test_xplus1_examples(z9):
    x = z9.x
    R = z9.ring
    e = xplus1_expansion(x)
    assert e[0] == R.element(-1) and e[1] == R.one and not any(e[2:])
    e = xplus1_expansion(z9.one)
    assert e[0] == R.one and not any(e[1:])
    # x^2 = (x+1)^2 - 2(x+1) + 1
    assert [c.coeffs[0] for c in xplus1_expansion(x**2)] == [1, 7, 1]


def test_canonical_examples(z9):
    f = z9.parse("(x+1)^2+3*(x+1)")
    cf = canonical_form(f)
    assert [(t.level, t.exponent) for t in cf.terms] == [(0, 2), (1, 1)]
    assert all(t.beta == z9.ring.one and t.alpha == z9.one for t in cf.terms)

    g = z9.parse("3*(x+1)^2+(x+1)")
    cf = canonical_form(g)
    assert len(cf.terms) == 1
    t = cf.terms[0]
    assert (t.level, t.exponent, t.beta) == (0, 1, z9.ring.one)
    # independent: (x+1)(1 + 3(x+1)) expands to g, and 1 + 3(x+1) evaluates to a unit at -1
    assert t.alpha == z9.parse("1+3*(x+1)")
    assert cf.reassemble() == g
    assert canonical_form(z9.zero).is_zero()


def test_weight_examples(z9):
    assert weight(z9.zero) == 0
    assert z9.parse("3*(x+1)^2") == z9.from_int_poly([3, 6, 3])
    assert weight(z9.parse("3*(x+1)^2")) == 3
    big = make_ambient(make_ring(3, 2, 1), 3)
    assert weight(big.parse("x^5+2")) == 2


@pytest.mark.parametrize("params, expected", [
    ((3, 2, 1, 1, Kind.NEGACYCLIC), 5),
    ((2, 2, 1, 2, Kind.CYCLIC), 6),
    ((3, 1, 1, 2, Kind.NEGACYCLIC), 9),
])
def test_nilpotency_examples(params, expected):
    amb = amb_of(params)
    assert nilpotency_index(amb) == expected == nilpotency_by_powering(amb.radical_generator)


@pytest.mark.parametrize("params", AMBIENTS)
def test_nilpotency_by_powering_matches(params):
    amb = amb_of(params)
    z = amb.radical_generator
    N = nilpotency_index(amb)
    assert not z**N and z ** (N - 1)


def test_odd_cyclic_radical_generator():
    amb = ambient_from_params(3, 2, 1, 1, Kind.CYCLIC)
    assert amb.xplus1.is_unit()
    assert not amb.radical_generator.is_unit()


def test_conjugation_examples():
    neg = ambient_from_params(3, 2, 1, 1, Kind.NEGACYCLIC)
    cyc = neg.partner()
    assert negacyclic_cyclic_map(neg.x) == -cyc.x
    assert negacyclic_cyclic_map(neg.one) == cyc.one
    assert negacyclic_cyclic_map(neg.parse("x^2+x+1")) == cyc.parse("x^2-x+1")
    with pytest.raises(RingError):
        negacyclic_cyclic_map(ambient_from_params(2, 2, 1, 1).x)


def test_reduce_mod_p_examples(z9):
    res = z9.residue_ambient()
    assert reduce_mod_p(z9.parse("3*x+6")) == res.zero
    assert torsion_to_residue(z9.parse("3*x+6")) == res.parse("x+2")
    assert reduce_mod_p(z9.parse("x+8")) == res.parse("x+2")
    assert reduce_mod_p(z9.zero) == res.zero
    assert residue_to_torsion(res.parse("x+2"), z9) == z9.parse("3*x+6")


def test_prop_nilp_content():
    for params in AMBIENTS:
        amb = amb_of(params)
        assert (amb.radical_generator ** amb.n).p_content() >= 1


def test_inverse(z9):
    f = z9.parse("x^2+x+2")  # f(-1) = 2, a unit
    assert f.is_unit() and f * inverse(f) == z9.one
    assert not z9.parse("x+1").is_unit()
    with pytest.raises(ZeroDivisionError):
        inverse(z9.parse("x+4"))  # value 3 at x = -1


@pytest.mark.parametrize("params", AMBIENTS)
def test_properties_random(params):
    amb = amb_of(params)

    @given(elements_of(amb), elements_of(amb), st.sampled_from(amb.ring.teichmuller))
    def check(f, g, u):
        # (x+1)-basis round trip
        assert from_xplus1(amb, xplus1_coefficients(f)) == f
        # canonical form round trip and shape
        cf = canonical_form(f)
        assert cf.reassemble() == f
        levels = [t.level for t in cf.terms]
        exps = [t.exponent for t in cf.terms]
        assert levels == sorted(set(levels)) and exps == sorted(set(exps), reverse=True)
        assert all(t.beta in amb.ring.teichmuller and t.beta and t.alpha.is_unit() for t in cf.terms)
        # weights
        if u:
            assert weight(f * u) == weight(f)
        assert weight(f.shift(1)) == weight(f)
        # units agree with the residue test
        assert f.is_unit() == bool(reduce_mod_p(f).evaluate(amb.root))
        if amb.p != 2:
            phi = negacyclic_cyclic_map
            assert phi(f + g) == phi(f) + phi(g)
            assert phi(f * g) == phi(f) * phi(g)
            assert weight(phi(f)) == weight(f)
            assert phi(phi(f)) == f

    check()


def test_xplus1_roundtrip_exhaustive(z4_cyc4):
    amb = z4_cyc4
    for arr in amb.all_elements():
        f = amb._wrap(arr)
        assert from_xplus1(amb, xplus1_coefficients(f)) == f


def test_xplus1_valuation(z9):
    assert xplus1_valuation(z9.parse("(x+1)^2")) == 2
    assert xplus1_valuation(z9.zero) == 3
