import itertools

import pytest

from gl2modrep import cyclo
from gl2modrep.brauer import (ConjClass, char_equal, char_expr, char_sym,
                              char_term, char_vrep, class_representative,
                              induced_char, regular_classes)
from gl2modrep.cyclo import CycloInt
from gl2modrep.field import PrimePower, build_field
from gl2modrep.k0 import ProductTerm, RawTerm, VirtualRep, normalize_products, sym

PP31 = PrimePower(3, 1)
PP32 = PrimePower(3, 2)


@pytest.mark.parametrize("p,g,total", [(3, 1, 6), (5, 1, 20), (3, 2, 72)])
def test_class_counts(p, g, total):
    pp = PrimePower(p, g)
    classes = regular_classes(pp)
    assert len(classes) == total
    q = pp.q
    kinds = {k: sum(1 for c in classes if c.kind == k) for k in ("central", "split", "nonsplit")}
    assert kinds == {"central": q - 1, "split": (q - 1) * (q - 2) // 2,
                     "nonsplit": q * (q - 1) // 2}


def test_class_representatives_are_regular():
    ctx = build_field(3, 2)
    seen = set()
    for cls in regular_classes(ctx.ppow):
        m = class_representative(ctx, cls)
        assert ctx.mat_det(m) != 0
        seen.add(m)
    assert len(seen) == 72


def test_char_at_identity_is_dimension():
    cls = ConjClass("central", 0)
    for k in range(0, 9):
        assert char_sym(PP32, k, cls) == CycloInt.integer(PP32.M, k + 1)


def test_char_split_degree_one():
    cls = ConjClass("split", 0, 1)
    q = PP32.q
    assert char_sym(PP32, 1, cls) == cyclo.zeta_pow(PP32.M, 0) + cyclo.zeta_pow(PP32.M, q + 1)


def test_char_nonsplit_degree_one():
    cls = ConjClass("nonsplit", 1)
    assert char_sym(PP32, 1, cls) == cyclo.zeta_pow(PP32.M, 1) + cyclo.zeta_pow(PP32.M, PP32.q)


def test_char_negative_weights_follow_reflection():
    for cls in regular_classes(PP31):
        assert char_sym(PP31, -1, cls).is_zero()
        # M_{-2} = -e^{-1} M_0
        got = char_sym(PP31, -2, cls)
        det = char_term(PP31, ProductTerm(-1, -1, ()), cls)
        assert got == det


def test_char_term_trivial_and_det():
    for cls in regular_classes(PP32):
        assert char_term(PP32, RawTerm(1, 0, (0, 0)), cls) == CycloInt.integer(PP32.M, 1)
    cls = ConjClass("split", 0, 1)
    q = PP32.q
    # det character on diag(a, b) lifts to zeta^((q+1)(da+db))
    assert char_term(PP32, RawTerm(1, 1, (0, 0)), cls) == cyclo.zeta_pow(PP32.M, (q + 1) * 1)


def test_char_term_twisted_factor_on_nonsplit():
    cls = ConjClass("nonsplit", 1)
    p, q = PP32.p, PP32.q
    got = char_term(PP32, RawTerm(1, 0, (0, 1)), cls)
    assert got == cyclo.zeta_pow(PP32.M, p) + cyclo.zeta_pow(PP32.M, p * q)


def test_char_vrep_linear_and_zero():
    assert all(v.is_zero() for v in char_vrep(PP32, VirtualRep.zero(PP32)).values())
    v = sym(PP32, 3)
    table = char_vrep(PP32, v)
    assert table[ConjClass("central", 0)] == CycloInt.integer(PP32.M, 4)


def test_char_equal_basic():
    v = sym(PP32, 5)
    assert char_equal(PP32, v, v)
    assert not char_equal(PP32, VirtualRep.unit(PP32), VirtualRep.det_power(PP32, 1))


def test_char_equal_detects_mismatch_on_terms():
    lhs = [ProductTerm(1, 0, ((4, 0),))]
    rhs = [ProductTerm(1, 0, ((4, 1),))]
    assert not char_equal(PP32, lhs, rhs)
    rhs2 = [ProductTerm(1, 0, ((4, 0),)), ProductTerm(1, 3, ())]
    assert not char_equal(PP32, lhs, rhs2)


def test_char_fidelity_under_normalize():
    for k, h in itertools.product(range(0, 7), repeat=2):
        expr = [ProductTerm(1, 0, ((k, 0), (h, 1)))]
        assert char_equal(PP32, normalize_products(PP32, expr), expr)


def test_label_separation_p3():
    # distinct basis labels have distinct character vectors (exhaustive q=3)
    pp = PP31
    classes = regular_classes(pp)
    vectors = {}
    for m in range(pp.q - 1):
        for k in range(pp.p):
            key = tuple(char_term(pp, RawTerm(1, m, (k,)), cls).coeffs for cls in classes)
            assert key not in vectors, (m, k, vectors[key])
            vectors[key] = (m, k)
    assert len(vectors) == (pp.q - 1) * pp.p


def test_induced_char_dimension_and_split_values():
    ctx = build_field(5, 1)
    pp = ctx.ppow
    assert induced_char(ctx, 3, ConjClass("central", 0)) == CycloInt.integer(pp.M, pp.q + 1)
    cls = ConjClass("split", 1, 2)
    got = induced_char(ctx, 2, cls)
    expect = (cyclo.zeta_pow(pp.M, (pp.q + 1) * 1 * 2)
              + cyclo.zeta_pow(pp.M, (pp.q + 1) * 2 * 2))
    assert got == expect


def test_induced_char_vanishes_on_nonsplit():
    ctx = build_field(3, 1)
    for cls in regular_classes(ctx.ppow):
        if cls.kind == "nonsplit":
            for k in range(0, 6):
                assert induced_char(ctx, k, cls).is_zero()


def test_dickson_cokernel_character_law():
    # char(M_k) - char(det (x) M_{k-(q+1)}) = induced character, k > q
    for p in (3, 5):
        ctx = build_field(p, 1)
        pp = ctx.ppow
        q = pp.q
        for k in range(q + 1, q + p + 1):
            for cls in regular_classes(pp):
                lhs = (char_sym(pp, k, cls)
                       - char_term(pp, RawTerm(1, 1, (k - (q + 1),)), cls))
                assert lhs == induced_char(ctx, k, cls), (p, k, cls)


def test_char_expr_context_mismatch():
    with pytest.raises(ValueError):
        char_equal(PP32, VirtualRep.unit(PP31), VirtualRep.unit(PP31))
