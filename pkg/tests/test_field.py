import itertools

import pytest

from gl2modrep.field import PrimePower, build_field, is_prime


@pytest.mark.parametrize("p,g,q,M", [(3, 1, 3, 8), (3, 2, 9, 80), (2, 1, 2, 3), (5, 2, 25, 624)])
def test_build_field_sizes(p, g, q, M):
    ctx = build_field(p, g)
    assert ctx.q == q and ctx.M == M


def test_bad_parameters():
    with pytest.raises(ValueError):
        PrimePower(4, 1)
    with pytest.raises(ValueError):
        PrimePower(3, 0)
    with pytest.raises(ValueError):
        PrimePower(2, 12)  # q^2 past the supported size


def test_generator_order_and_dlog_group_iso():
    for p, g in [(3, 1), (3, 2), (5, 1)]:
        ctx = build_field(p, g)
        assert len(set(ctx.exp2)) == ctx.M
        for i in range(0, ctx.M, 3):
            for j in range(0, ctx.M, 5):
                x, y = ctx.exp2[i], ctx.exp2[j]
                assert ctx.dlog2[ctx.mul2(x, y)] == (i + j) % ctx.M


def test_fq_units_are_powers_of_gamma2_to_q_plus_1():
    ctx = build_field(3, 2)
    units = {ctx.exp2[(ctx.q + 1) * d] for d in range(ctx.q - 1)}
    assert units == set(range(1, ctx.q))


def test_frobenius_examples():
    ctx = build_field(3, 2)
    g = ctx.g
    for x in range(1, ctx.q * ctx.q):
        assert ctx.frobenius(x, 0) == x
        assert ctx.frobenius(x, 2 * g) == x
    assert ctx.frobenius(ctx.gamma2, 1) == ctx.exp2[ctx.p % ctx.M]
    assert all(ctx.frobenius(x, g) == x for x in range(ctx.q))


@pytest.mark.parametrize("p,g", [(3, 1), (3, 2), (2, 1)])
def test_iota_is_a_ring_embedding(p, g):
    ctx = build_field(p, g)
    q = ctx.q
    for c, d in itertools.product(range(1, q * q), repeat=2):
        assert ctx.mat_mul(ctx.embed_iota(c), ctx.embed_iota(d)) == ctx.embed_iota(ctx.mul2(c, d))


def test_iota_determinant_and_trace_laws():
    ctx = build_field(3, 2)
    q = ctx.q
    assert ctx.embed_iota(1) == (1, 0, 0, 1)
    for c in range(1, q * q):
        m = ctx.embed_iota(c)
        assert ctx.mat_det(m) == ctx.pow2(c, 1 + q)
        assert ctx.add(m[0], m[3]) == ctx.add2(c, ctx.frobenius(c, ctx.g))
    with pytest.raises(ValueError):
        ctx.embed_iota(0)


def test_matrix_helpers():
    ctx = build_field(5, 1)
    m = (2, 1, 4, 3)
    assert ctx.mat_det(m) == ctx.sub(ctx.mul(2, 3), ctx.mul(1, 4))
    assert ctx.mat_mul(m, ctx.mat_inv(m)) == (1, 0, 0, 1)
    with pytest.raises(ValueError):
        ctx.mat_inv((1, 2, 2, 4))


def test_generators_generate_gl2_small_q():
    # explicit closure check for q <= 9 backs the generating-set assumption
    for p, g in [(2, 1), (3, 1), (5, 1), (3, 2)]:
        ctx = build_field(p, g)
        q = ctx.q
        order = (q * q - 1) * (q * q - q)
        seen = set(ctx.gl2_generators())
        frontier = list(seen)
        while frontier:
            nxt = []
            for a in frontier:
                for b in ctx.gl2_generators():
                    c = ctx.mat_mul(a, b)
                    if c not in seen:
                        seen.add(c)
                        nxt.append(c)
            frontier = nxt
        assert len(seen) == order


def test_is_prime():
    assert [n for n in range(2, 30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
