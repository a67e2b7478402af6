import pytest

from dhwp.digraph import complete_symmetric, wreath_with_empty
from dhwp.errors import (
    InfeasibleParametersError,
    InvalidParameterError,
    UnsupportedByAtlasError,
    UnsupportedShapeError,
)
from dhwp.model import (
    Factorization,
    ProblemSpec,
    verify_factorization,
    verify_undirected,
)
from dhwp.constructions import (
    blowup_cycle_factorization,
    check_necessary,
    composite_16_8_16,
    double_factorization,
    equipartite_cycle_factorization,
    even_hwp,
    gamma_factorization,
    kirkman_resolution,
    kotzig_one_factorization,
    odd_hwp,
    pair_blowup_k2_factors,
    solve,
    walecki_hamilton,
)
from dhwp.constructions.assemble import plan_even, plan_odd
from dhwp.constructions.gadgets import blowup_cycle_factorization_shifted


# -- feasibility --------------------------------------------------------------


def test_check_necessary_examples():
    assert check_necessary(ProblemSpec(8, 4, 8, 3, 4)).met
    assert not check_necessary(ProblemSpec(10, 4, 8, 5, 4)).met
    assert not check_necessary(ProblemSpec(8, 4, 8, 3, 3)).met


# -- one-factorizations and resolutions ---------------------------------------


def test_kotzig_k4_is_the_unique_one_factorization():
    u = kotzig_one_factorization(4)
    assert verify_undirected(u).valid
    flat = [set(map(frozenset, f)) for f in u.factors]
    assert flat[0] == {frozenset({0, 1}), frozenset({2, 3})}
    assert {frozenset({0, 2}), frozenset({1, 3})} in flat
    assert {frozenset({0, 3}), frozenset({1, 2})} in flat


def test_kotzig_k2():
    u = kotzig_one_factorization(2)
    assert len(u.factors) == 1 and verify_undirected(u).valid


def test_kotzig_pairing_factor_first():
    for n in (6, 10, 16):
        u = kotzig_one_factorization(n)
        assert set(map(frozenset, u.factors[0])) == {
            frozenset({2 * t, 2 * t + 1}) for t in range(n // 2)
        }


def test_kotzig_rejects_odd():
    with pytest.raises(InvalidParameterError):
        kotzig_one_factorization(7)


def test_walecki_hamilton_fifteen():
    u = walecki_hamilton(15)
    verdict = verify_undirected(u)
    assert verdict.valid and verdict.counts == {15: 7}


def test_kirkman_small_orders():
    assert verify_undirected(kirkman_resolution(3)).valid
    nine = kirkman_resolution(9)
    verdict = verify_undirected(nine)
    assert verdict.valid and verdict.counts == {3: 4}
    with pytest.raises(InvalidParameterError):
        kirkman_resolution(7)


def test_kirkman_fifteen():
    verdict = verify_undirected(kirkman_resolution(15))
    assert verdict.valid and verdict.counts == {3: 7}


# -- doubling -----------------------------------------------------------------


def test_double_single_triangle():
    fac = double_factorization(kirkman_resolution(3))
    verdict = verify_factorization(fac.host, fac)
    assert verdict.valid and verdict.counts == {3: 2}


def test_double_kirkman_nine():
    fac = double_factorization(kirkman_resolution(9))
    verdict = verify_factorization(fac.host, fac, ProblemSpec(9, 3, 9, 8, 0))
    assert verdict.valid


def test_double_matchings_become_digon_factors():
    fac = double_factorization(kotzig_one_factorization(4))
    verdict = verify_factorization(fac.host, fac)
    assert verdict.valid and verdict.counts == {2: 3}


def test_double_reversing_orientations_gives_same_factor_sets():
    u = kirkman_resolution(9)
    reversed_u = type(u).of(
        u.host, [[tuple(reversed(c)) for c in factor] for factor in u.factors]
    )
    a = double_factorization(u)
    b = double_factorization(reversed_u)
    arcs = lambda fac: {frozenset(f.arc_set()) for f in fac.factors}
    assert arcs(a) == arcs(b)


def test_double_rejects_invalid_input():
    from dhwp.model import UndirectedTwoFactorization, complete_graph

    broken = UndirectedTwoFactorization.of(complete_graph(3), [[(0, 1, 2)], [(0, 1, 2)]])
    with pytest.raises(ValueError):
        double_factorization(broken)


# -- gadgets -------------------------------------------------------------------


def test_pair_blowup_smallest():
    factors = pair_blowup_k2_factors(2)
    assert len(factors) == 2
    host = wreath_with_empty(complete_symmetric(2), 2)
    verdict = verify_factorization(host, Factorization(host, tuple(factors)))
    assert verdict.valid and verdict.counts == {2: 2}


@pytest.mark.parametrize("x,count,arcs", [(3, 4, 24), (6, 10, 120)])
def test_pair_blowup_counts(x, count, arcs):
    factors = pair_blowup_k2_factors(x)
    assert len(factors) == count
    host = wreath_with_empty(complete_symmetric(x), 2)
    assert host.arc_count == arcs
    assert verify_factorization(host, Factorization(host, tuple(factors))).valid


def test_blowup_cycle_m4_target4():
    fac = blowup_cycle_factorization(4, 4)
    verdict = verify_factorization(fac.host, fac)
    assert verdict.valid and verdict.counts == {4: 2}
    assert fac.host.arc_count == 16
    for factor in fac.factors:
        assert len(factor.cycles) == 2


def test_blowup_cycle_m8_target16():
    fac = blowup_cycle_factorization(8, 16)
    verdict = verify_factorization(fac.host, fac)
    assert verdict.valid and verdict.counts == {16: 2}


def test_blowup_cycle_m2():
    fac = blowup_cycle_factorization(2, 2)
    verdict = verify_factorization(fac.host, fac)
    assert verdict.valid and verdict.counts == {2: 2}


def test_blowup_cycle_rejects_odd_m_and_bad_target():
    with pytest.raises(InvalidParameterError):
        blowup_cycle_factorization(5, 5)
    with pytest.raises(InvalidParameterError):
        blowup_cycle_factorization(4, 6)


@pytest.mark.parametrize("m", [2, 4, 6, 8])
def test_blowup_shifted_variant_is_invalid(m):
    fac = blowup_cycle_factorization_shifted(m)
    verdict = verify_factorization(fac.host, fac)
    assert not verdict.valid
    assert verdict.first_failure.reason == "duplicate-arc"


def test_gamma_counts():
    for m, expected in [(8, {8: 1, 16: 2}), (2, {2: 1, 4: 2}), (3, {3: 1, 6: 2})]:
        fac = gamma_factorization(m)
        verdict = verify_factorization(fac.host, fac)
        assert verdict.valid and verdict.counts == expected
        assert fac.host.arc_count == 6 * m


# -- equipartite factorizations -------------------------------------------------


def test_equipartite_two_part_c4():
    fac = equipartite_cycle_factorization(4, 2, 4, directed=True)
    verdict = verify_factorization(fac.host, fac)
    assert verdict.valid and verdict.counts == {4: 4}


def test_equipartite_two_part_c6_exception_shape():
    # no undirected solution exists on this shape; the directed one does
    fac = equipartite_cycle_factorization(6, 2, 6, directed=True)
    verdict = verify_factorization(fac.host, fac)
    assert verdict.valid and verdict.counts == {6: 6}


def test_equipartite_three_part_c5_undirected():
    u = equipartite_cycle_factorization(5, 3, 5, directed=False)
    verdict = verify_undirected(u)
    assert verdict.valid and verdict.counts == {5: 5}


def test_equipartite_three_part_triangles_direct():
    u = equipartite_cycle_factorization(5, 3, 3, directed=False)
    verdict = verify_undirected(u)
    assert verdict.valid and verdict.counts == {3: 5}


def test_equipartite_rejects_unsupported_shapes():
    with pytest.raises(UnsupportedShapeError):
        equipartite_cycle_factorization(4, 2, 3, directed=True)  # odd m, two parts
    with pytest.raises(UnsupportedShapeError):
        equipartite_cycle_factorization(4, 4, 4, directed=True)  # four parts
    with pytest.raises(UnsupportedShapeError):
        equipartite_cycle_factorization(5, 3, 4, directed=True)  # 4 does not divide 15


# -- composite and assemblies ---------------------------------------------------


@pytest.mark.parametrize("r", [1, 7, 13])
def test_composite_16_8_16(r, atlas):
    fac = composite_16_8_16(r, atlas=atlas)
    verdict = verify_factorization(fac.host, fac, ProblemSpec(16, 8, 16, r, 15 - r))
    assert verdict.valid


def test_composite_rejects_even_r(atlas):
    with pytest.raises(InvalidParameterError):
        composite_16_8_16(4, atlas=atlas)


def test_even_hwp_plan_example(atlas):
    # v=16, r=9: two blow-up pieces take length four, base entry r'=1
    plan = plan_even(8, 2, 9)
    assert (plan.base_r, plan.pieces_m, plan.piece_count, plan.step) == (1, 2, 2, 4)
    fac = even_hwp(4, 8, 2, 9, 6, atlas=atlas)
    verdict = verify_factorization(fac.host, fac, ProblemSpec(16, 4, 8, 9, 6))
    assert verdict.valid and verdict.counts == {4: 9, 8: 6}


def test_even_hwp_all_n_side(atlas):
    fac = even_hwp(4, 6, 2, 0, 23, atlas=atlas)
    verdict = verify_factorization(fac.host, fac, ProblemSpec(24, 4, 6, 0, 23))
    assert verdict.valid


def test_even_hwp_x1_passthrough_and_composite(atlas):
    fac = even_hwp(8, 16, 1, 5, 10, atlas=atlas)
    verdict = verify_factorization(fac.host, fac, ProblemSpec(16, 8, 16, 5, 10))
    assert verdict.valid


def test_even_hwp_rejects_infeasible(atlas):
    with pytest.raises(InfeasibleParametersError):
        even_hwp(4, 8, 2, 9, 5, atlas=atlas)


def test_even_plan_arithmetic_totality():
    # the plan rule stays within base range for every r
    for h in (8, 12, 16):
        for x in (1, 2, 3, 4):
            for r in range(h * x):
                plan = plan_even(h, x, r)
                assert 0 <= plan.base_r <= h - 1, (h, x, r)
                assert plan.base_r + plan.step * plan.pieces_m == r


def test_odd_plan_arithmetic_totality():
    h = 15
    for x in (1, 3, 5):
        for r in range(h * x):
            plan = plan_odd(h, x, r, set())
            assert 0 <= plan.base_r <= h - 1, (x, r)
            assert plan.base_r + plan.step * plan.pieces_m == r


def test_odd_plan_open_base_wall():
    # an uncapped plan never lands on the recorded-open residuals (they all
    # exceed step-1), and a capped plan has no piece budget left to shift,
    # so every decomposition of those counts runs through an open base
    plan = plan_odd(15, 5, 21, {11})
    assert plan.base_r == 1 and plan.pieces_m == 2
    with pytest.raises(UnsupportedByAtlasError):
        plan_odd(15, 3, 41, {11, 12, 13})
    with pytest.raises(UnsupportedByAtlasError):
        plan_odd(15, 5, 71, {11, 12, 13})


def test_odd_hwp_plan_example(atlas):
    # v=45, r=23: two pieces take length three, base entry r'=3
    plan = plan_odd(15, 3, 23, set())
    assert (plan.base_r, plan.pieces_m, plan.piece_count, plan.step) == (3, 2, 3, 10)
    fac = odd_hwp(3, 5, 3, 23, 21, atlas=atlas)
    verdict = verify_factorization(fac.host, fac, ProblemSpec(45, 3, 5, 23, 21))
    assert verdict.valid and verdict.counts == {3: 23, 5: 21}


def test_odd_hwp_exception_squeeze(atlas):
    with pytest.raises(UnsupportedByAtlasError):
        odd_hwp(3, 5, 3, 41, 3, atlas=atlas)


def test_odd_hwp_rejects_even_x(atlas):
    with pytest.raises(InvalidParameterError):
        odd_hwp(3, 5, 2, 10, 19, atlas=atlas)


# -- solve ----------------------------------------------------------------------


def test_solve_via_composite(atlas):
    res = solve(ProblemSpec(16, 8, 16, 5, 10), atlas=atlas)
    assert res.status == "found"


def test_solve_even_assembly(atlas):
    res = solve(ProblemSpec(24, 4, 12, 13, 10), atlas=atlas)
    assert res.status == "found"
    verdict = verify_factorization(
        res.factorization.host, res.factorization, ProblemSpec(24, 4, 12, 13, 10)
    )
    assert verdict.valid


def test_solve_infeasible_reports_condition(atlas):
    res = solve(ProblemSpec(8, 4, 8, 3, 3), atlas=atlas)
    assert res.status == "infeasible" and "r + s" in res.detail


def test_solve_unknown_open(atlas):
    res = solve(ProblemSpec(15, 3, 5, 12, 2), atlas=atlas)
    assert res.status == "unknown-open"


def test_solve_oracle_fallback_proves_nonexistence(atlas):
    res = solve(ProblemSpec(6, 3, 6, 5, 0), atlas=atlas, time_limit=60)
    assert res.status == "infeasible"
    assert "exhaustive" in res.detail


def test_solve_pure_profile_rerouted_through_partner_pair(atlas):
    # all-C_4 on 24 vertices declared under (4,16): lcm 16 does not divide 24,
    # but the (4,6) and (4,8) bases cover the pure profile
    spec = ProblemSpec(24, 4, 16, 23, 0)
    res = solve(spec, atlas=atlas)
    assert res.status == "found"
    assert verify_factorization(res.factorization.host, res.factorization, spec).valid


def test_odd_assembly_with_larger_blowup(atlas):
    # x = 5 exercises the order-15 triangle resolution inside the assembly
    spec = ProblemSpec(75, 3, 15, 30, 44)
    res = solve(spec, atlas=atlas)
    assert res.status == "found"
    assert verify_factorization(res.factorization.host, res.factorization, spec).valid


def test_solve_normalizes_orientation_of_pair(atlas):
    res = solve(ProblemSpec(16, 8, 4, 6, 9), atlas=atlas)
    assert res.status == "found"
    verdict = verify_factorization(
        res.factorization.host, res.factorization, ProblemSpec(16, 4, 8, 9, 6)
    )
    assert verdict.valid
