import itertools

from hypothesis import given, settings
from hypothesis import strategies as st
import pytest

from gl2modrep import brauer
from gl2modrep.field import PrimePower
from gl2modrep.k0 import (ProductTerm, RawTerm, VirtualRep, dim,
                          frobenius_twist, mul, normalize, normalize_products,
                          sym, sym_sigma_route, verify_identity)

PP32 = PrimePower(3, 2)
PP31 = PrimePower(3, 1)


def test_sym_of_p_splits_for_g_above_one():
    # for g > 1 the weight-p module has exactly the two constituents
    # M_1^[1] and e * M_{p-2}
    for p, g in [(3, 2), (5, 2), (3, 3), (5, 3)]:
        pp = PrimePower(p, g)
        expect = (VirtualRep.label(pp, 0, (0, 1) + (0,) * (g - 2))
                  + VirtualRep.label(pp, 1, (p - 2,) + (0,) * (g - 1)))
        assert sym(pp, p) == expect


def test_sym_negative_weights():
    assert sym(PP32, -1).is_zero()
    assert sym(PP32, -2).sorted_terms() == [((PP32.q - 2, (0, 0)), -1)]
    assert dim(sym(PP32, -2)) == -1


def test_sym_dimensions():
    for k in range(0, 31):
        assert dim(sym(PP32, k)) == k + 1
        assert dim(sym(PrimePower(5, 1), k)) == k + 1


def test_sym_5_against_character_oracle():
    pp = PrimePower(5, 1)
    assert brauer.char_equal(pp, sym(pp, 5), [ProductTerm(1, 0, ((5, 0),))])


def test_product_formula_small():
    m1 = sym(PP31, 1)
    assert mul(m1, m1) == sym(PP31, 2) + VirtualRep.det_power(PP31, 1)


def test_mul_against_character_oracle():
    # M_1 * M_2 = M_3 + e M_1 with M_3 renormalized
    v = mul(sym(PP31, 1), sym(PP31, 2))
    expect = [ProductTerm(1, 0, ((1, 0), (2, 0)))]
    assert brauer.char_equal(PP31, v, expect)
    assert dim(v) == 6


def test_mul_unit_and_context_mismatch():
    v = sym(PP32, 4)
    assert mul(v, VirtualRep.unit(PP32)) == v
    with pytest.raises(ValueError):
        mul(v, VirtualRep.unit(PP31))


def test_product_of_twisted_weight_p_modules():
    v = mul(sym(PP32, 3), frobenius_twist(sym(PP32, 3), 1))
    assert dim(v) == 16
    assert brauer.char_equal(PP32, v, [ProductTerm(1, 0, ((3, 0), (3, 1)))])


def test_normalize_idempotent():
    raw = [RawTerm(2, 1, (4, 7)), RawTerm(-1, 3, (-5, 2))]
    v = normalize(PP32, raw)
    again = normalize(PP32, [RawTerm(c, m, ks) for (m, ks), c in v.sorted_terms()])
    assert again == v


def test_normalize_in_range_term_is_itself():
    v = normalize(PP32, [RawTerm(1, 5, (2, 1))])
    assert v.sorted_terms() == [((5, (2, 1)), 1)]


def test_normalize_additive():
    a = [RawTerm(1, 0, (5, 2))]
    b = [RawTerm(-2, 3, (1, 7))]
    assert normalize(PP32, a + b) == normalize(PP32, a) + normalize(PP32, b)


@given(st.integers(-9, 12), st.integers(-9, 12), st.integers(0, 7), st.integers(0, 7))
@settings(max_examples=40, deadline=None)
def test_mul_commutative(k1, k2, m1, m2):
    a = sym(PP32, k1) + VirtualRep.det_power(PP32, m1)
    b = sym(PP32, k2) - VirtualRep.det_power(PP32, m2)
    assert mul(a, b) == mul(b, a)


def test_dim_multiplicative_under_mul():
    for k1, k2 in itertools.product(range(0, 9), repeat=2):
        a, b = sym(PP32, k1), frobenius_twist(sym(PP32, k2), 1)
        assert dim(mul(a, b)) == dim(a) * dim(b)


def test_frobenius_twist_rules():
    v = sym(PP32, 7) + VirtualRep.label(PP32, 3, (1, 2))
    assert frobenius_twist(v, 0) == v
    assert frobenius_twist(v, PP32.g) == v
    lab = VirtualRep.label(PP32, 3, (1, 2))
    tw = frobenius_twist(lab, 1)
    assert tw.sorted_terms() == [(((3 * PP32.p) % (PP32.q - 1), (2, 1)), 1)]


def test_twist_by_g_is_identity_on_random_normal_forms():
    for k in range(-6, 14):
        v = sym(PP32, k)
        assert frobenius_twist(frobenius_twist(v, 1), 1) == v


def test_confluence_of_the_two_g1_routes():
    # the general route never uses the four-term relation; the g=1 route
    # uses only it (plus reflection); both must agree
    for p in (3, 5):
        pp = PrimePower(p, 1)
        for k in range(-3 * p, 3 * p + 1):
            assert sym(pp, k) == sym_sigma_route(pp, k)


def test_serialization_golden_and_roundtrip():
    v = sym(PP32, 3)
    assert v.to_json() == ('{"g":2,"p":3,"terms":[{"coeff":1,"ks":[0,1],"m":0},'
                           '{"coeff":1,"ks":[1,0],"m":1}]}')
    assert VirtualRep.from_json_obj(v.to_json_obj()) == v


def test_verify_identity_examples():
    assert verify_identity(PrimePower(5, 1), "sigma", k=7)
    assert verify_identity(PP32, "phi", k=3)
    lhs, rhs = (normalize_products(PP32, t) for t in
                ([ProductTerm(1, 0, ((3, 0),))],
                 [ProductTerm(1, 0, ((0, 0), (1, 1))), ProductTerm(-1, 3, ((-3, 0),))]))
    assert lhs == rhs == sym(PP32, 3)
    # n = 0 product identity degenerates through M_{-1} = 0
    assert verify_identity(PP32, "pi", n=0, m=4)


def test_verify_identity_rejects_unknown():
    with pytest.raises(ValueError):
        verify_identity(PP32, "nonsense", k=1)


def test_label_bounds_checked():
    with pytest.raises(ValueError):
        VirtualRep.label(PP32, 0, (3, 0))
    with pytest.raises(ValueError):
        VirtualRep.from_json_obj({"p": 3, "g": 2, "terms": [{"coeff": 1, "m": 0, "ks": [5, 0]}]})
