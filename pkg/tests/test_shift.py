import pytest

from gl2modrep.shift import (D, THETA, OpStep, PrimeSplit, Rejection,
                             ShiftChoice, ShiftPlan, WeightParams,
                             check_c_nonzero, compile_block, compile_lambda,
                             plan_f2, plan_general, poly_in_p_eval,
                             poly_in_p_str, shift_vector_tables,
                             validate_holomorphic)

PS32 = PrimeSplit(3, (2,))


def test_validate_holomorphic():
    # parity-agnostic: an even common weight is accepted here
    assert validate_holomorphic([(3, 3)], [(1, 1)]) == 4
    assert validate_holomorphic([(4, 4)], [(1, 1)]) == 5
    with pytest.raises(ValueError):
        validate_holomorphic([(3, 4)], [(1, 1)])
    with pytest.raises(ValueError):
        validate_holomorphic([(1, 3)], [(2, 1)])


def test_prime_split_validation():
    with pytest.raises(ValueError):
        PrimeSplit(2, (1,))
    with pytest.raises(ValueError):
        PrimeSplit(3, ())
    assert PrimeSplit(3, (2, 1)).g == 3


def test_plan_all_theta_accepted_via_star():
    plan = plan_general(PS32, WeightParams(((4, 4),), 5), ShiftChoice(1, ((THETA, THETA),)))
    assert isinstance(plan, ShiftPlan)
    assert plan.condition == "(*)"  # vacuous on the empty derivation set
    assert plan.target_k == ((8, 8),) and plan.target_w == 7
    assert [s.name() for s in plan.recipe[0]] == ["Theta_1", "Theta_1^[1]"]


def test_plan_parity_rejection():
    res = plan_general(PS32, WeightParams(((3, 4),), 5), ShiftChoice(1, ((THETA, THETA),)))
    assert isinstance(res, Rejection) and res.clause == "parity"
    res2 = plan_general(PS32, WeightParams(((4, 4),), 4), ShiftChoice(1, ((THETA, THETA),)))
    assert res2.clause == "parity"


def test_plan_both_d_falls_back_to_bulk_condition():
    # linked derivation embeddings defeat (*); the p-small generic
    # condition still accepts, with target (6, 6) and w' = 7
    plan = plan_general(PS32, WeightParams(((4, 4),), 5), ShiftChoice(1, ((D, D),)))
    assert isinstance(plan, ShiftPlan)
    assert plan.condition == "(**)"
    assert plan.target_k == ((6, 6),) and plan.target_w == 7


def test_plan_rejected_when_both_conditions_fail():
    # k = p+3 = 6 is outside (2, p+1] for p = 3, and a d-selection needs it
    res = plan_general(PS32, WeightParams(((6, 6),), 5), ShiftChoice(1, ((D, D),)))
    assert isinstance(res, Rejection)
    assert res.clause == "(*)"


def test_star_linkage_rejection_always_covered_by_bulk():
    # whenever (*) dies only of the linkage clause and all entries are in
    # (2, p+1], the plan is still accepted, tagged (**)
    for p in (3, 5):
        for f in (2, 3):
            ps = PrimeSplit(p, (f,))
            kv = tuple([4] * f)
            sels = [tuple(D if i in (0, (0 + f - 1) % f) else THETA for i in range(f))]
            res = plan_general(ps, WeightParams((kv,), 5), ShiftChoice(1, tuple(sels)))
            assert isinstance(res, ShiftPlan) and res.condition in ("(*)", "(**)")


def test_plan_beta_range():
    res = plan_general(PS32, WeightParams(((4, 4),), 5), ShiftChoice(3, ((THETA, THETA),)))
    assert isinstance(res, Rejection) and res.clause == "range"


def test_plan_multi_block():
    ps = PrimeSplit(3, (2, 1))
    wp = WeightParams(((4, 4), (4,)), 5)
    plan = plan_general(ps, wp, ShiftChoice(1, ((THETA, D), (THETA,))))
    assert isinstance(plan, ShiftPlan)
    # block 2 has f_j = beta = 1: classical operator
    assert [s.name() for s in plan.recipe[1]] == ["Theta"]
    assert plan.target_k == ((8, 6), (8,))


def test_plan_f2_examples():
    res = plan_f2(3, 4, 4, 5, n=1, m=1, r=0, s=0, t=0, u=0, v=0, z=0)
    assert res.accepted and res.condition == "(*)" and res.target == (8, 8, 7)
    res2 = plan_f2(3, 4, 4, 5, n=1, m=0, r=0, s=0, t=0, u=0, v=0, z=0)
    assert not res2.accepted and res2.rejection.startswith("(S)")
    res3 = plan_f2(3, 4, 4, 5, n=0, m=0, r=1, s=1, t=0, u=0, v=0, z=0)
    assert res3.accepted and res3.condition == "(**)" and res3.target == (6, 6, 7)


def test_plan_f2_parity_and_alpha():
    assert not plan_f2(3, 4, 4, 4, 0, 0, 0, 0, 0, 0, 0, 0).accepted
    # alpha shifts w' by 2*alpha*(p-1)(1+p)
    base = plan_f2(3, 4, 4, 5, 1, 1, 0, 0, 0, 0, 0, 0, alpha=0).target[2]
    moved = plan_f2(3, 4, 4, 5, 1, 1, 0, 0, 0, 0, 0, 0, alpha=1).target[2]
    assert moved - base == 2 * (3 - 1) * (1 + 3)


def test_plan_f2_agrees_with_general_on_overlap():
    for p in (3, 5):
        ps = PrimeSplit(p, (2,))
        for k in (4, 6) if p == 5 else (4,):
            gen = plan_general(ps, WeightParams(((k, k),), 5),
                               ShiftChoice(1, ((THETA, THETA),)))
            f2 = plan_f2(p, k, k, 5, n=1, m=1, r=0, s=0, t=0, u=0, v=0, z=0)
            assert gen.target_k[0] == f2.target[:2] and gen.target_w == f2.target[2]
            gen2 = plan_general(ps, WeightParams(((k, k),), 5),
                                ShiftChoice(2, ((THETA, THETA),)))
            f22 = plan_f2(p, k, k, 5, n=0, m=0, r=0, s=0, t=1, u=1, v=0, z=0)
            assert gen2.target_k[0] == f22.target[:2] and gen2.target_w == f22.target[2]


def test_check_c_nonzero_examples():
    assert check_c_nonzero(0, 0, 0, 0, 0, 0, 3)
    # 2! / 1! * 5! / 4! = 10 = 1 mod 3
    assert check_c_nonzero(2, 2, 1, 1, 0, 0, 3)
    with pytest.raises(ValueError):
        check_c_nonzero(1, 1, 2, 0, 0, 0, 3)


def test_check_c_nonzero_exhaustive_within_bounds():
    for p in (3, 5):
        for a in range(1, p):
            for b in range(1, p):
                for r in range(0, a + 1):
                    for v in range(0, a - r + 1):
                        for s in range(0, b + 1):
                            for z in range(0, b - s + 1):
                                assert check_c_nonzero(a, b, r, s, v, z, p), \
                                    (p, a, b, r, s, v, z)


def test_shift_tables_g1():
    th, d = shift_vector_tables(1)
    assert th == [("Theta", ({1: 1, 0: 1},))]
    assert d == [("D", ({1: 1, 0: -1},))]


def test_shift_tables_g3_rows():
    th, d = shift_vector_tables(3)
    rows = dict(th + d)
    assert rows["Theta_2^[1]"] == ({1: 1}, {0: 1}, {})  # (p, 1, 0): the bump wraps
    assert rows["D_1"] == ({0: -1}, {2: 1}, {})         # (-1, p^2, 0)
    assert rows["Theta^[2]"] == ({}, {}, {3: 1, 0: 1})  # (0, 0, q+1)


def test_shift_tables_numeric_eval():
    th, _ = shift_vector_tables(2, p=3)
    assert dict(th)["Theta_1"] == (1, 3)
    assert dict(th)["Theta"] == (10, 0)
    assert poly_in_p_eval({2: 1, 0: -1}, 5) == 24
    assert poly_in_p_str({2: 1, 0: 1}) == "p^2+1"
    assert poly_in_p_str({}) == "0"


def test_tables_sum_to_plan_shift_vectors():
    # one operator per embedding: the chosen table rows sum to the a-vector
    for p in (3, 5):
        for f in (1, 2, 3):
            ps = PrimeSplit(p, (f,))
            for beta in range(1, f + 1):
                for mask in range(2 ** f):
                    sels = tuple(THETA if (mask >> i) & 1 else D for i in range(f))
                    wp = WeightParams((tuple([4] * f),), 5)
                    res = plan_general(ps, wp, ShiftChoice(beta, (sels,)))
                    if not isinstance(res, ShiftPlan):
                        continue
                    th, d = shift_vector_tables(f, p=p)
                    rows = dict(th + d)
                    total = [0] * f
                    for step in res.recipe[0]:
                        for i, e in enumerate(rows[step.name()]):
                            total[i] += e
                    expect = [res.target_k[0][i] - 4 for i in range(f)]
                    assert total == expect, (p, f, beta, sels)


def test_compile_all_theta_is_injective():
    plan = plan_general(PS32, WeightParams(((4, 4),), 5), ShiftChoice(1, ((THETA, THETA),)))
    blk = compile_lambda(plan, 0)
    assert blk.injective and blk.equivariant
    assert blk.dst_degrees == (6, 6)


def test_compile_d_at_weight_two_is_zero_map():
    blk = compile_block(3, 2, (2, 4), [OpStep(D, False, 0, 1)])
    assert blk.rank == 0 and not blk.injective
    assert blk.equivariant


def test_compile_bulk_condition_plans_are_injective():
    plan = plan_general(PS32, WeightParams(((4, 4),), 5), ShiftChoice(1, ((D, D),)))
    blk = compile_lambda(plan, 0)
    assert blk.injective and blk.equivariant


def test_compile_classical_block():
    plan = plan_general(PrimeSplit(3, (1,)), WeightParams(((4,),), 5),
                        ShiftChoice(1, ((D,),)))
    blk = compile_lambda(plan, 0)
    assert blk.steps == ("D",) and blk.injective and blk.equivariant
