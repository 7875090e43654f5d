"""Coset large sets, juxtaposition, Kronecker pairing, and recipe plans."""

import numpy as np
import pytest

from oaforge.arrays import (
    LargeSet,
    LevelProfile,
    SymbolMatrix,
    verify_large_set,
    verify_strength,
)
from oaforge.compose import (
    THEOREM_IDS,
    cosets_strength1,
    execute_plan,
    juxtapose,
    kronecker,
    plan_theorem,
    zero_sum_large_set,
    zero_sum_oa,
)
from oaforge.errors import ConstraintError, VerificationError
from oaforge.expand import expand_shift
from oaforge.fixtures import fixture_loa


def test_cosets_examples():
    ls = cosets_strength1(LevelProfile([2, 3]))
    assert (ls.n, ls.m) == (6, 1)
    ls = cosets_strength1(LevelProfile([2, 2]))
    assert (ls.n, ls.m) == (2, 2)
    # diagonal and antidiagonal
    assert {tuple(r) for r in ls.members[0].cells.tolist()} == {(0, 0), (1, 1)}
    assert {tuple(r) for r in ls.members[1].cells.tolist()} == {(0, 1), (1, 0)}


def test_cosets_4_6():
    # independent oracle: group the 24 pairs into cosets of the cyclic
    # subgroup generated by (1, 1)
    base = {(i % 4, i % 6) for i in range(12)}
    cosets = set()
    for a in range(4):
        for b in range(6):
            cosets.add(frozenset(((a + x) % 4, (b + y) % 6) for x, y in base))
    assert len(cosets) == 2
    ls = cosets_strength1(LevelProfile([4, 6]))
    assert (ls.n, ls.m) == (12, 2)
    got = {frozenset(map(tuple, m.cells.tolist())) for m in ls.members}
    assert got == cosets


def test_cosets_member_order_by_smallest_row():
    ls = cosets_strength1(LevelProfile([2, 2, 2]))
    firsts = [min(map(tuple, m.cells.tolist())) for m in ls.members]
    assert firsts == sorted(firsts)
    assert firsts[0] == (0, 0, 0)


def test_zero_sum_oa():
    a, proj = zero_sum_oa(3, 2)
    assert (a.n, a.k) == (9, 3)
    assert proj.columns == (0, 1)
    assert verify_strength(a, 2).ok
    rows = {tuple(r) for r in a.cells.tolist()}
    assert rows == {(x, y, (-x - y) % 3) for x in range(3) for y in range(3)}
    ls = zero_sum_large_set(2, 3)
    assert (ls.n, ls.m) == (8, 2)
    assert verify_large_set(ls, 3).ok


def test_juxtapose_strength1_toy():
    # two halves of the 2x2 coset set on a widened first column
    left = cosets_strength1(LevelProfile([2, 2]))
    right = cosets_strength1(LevelProfile([2, 2]))
    ls = juxtapose(left, right)
    assert ls.profile.levels == (4, 2)
    assert (ls.n, ls.m) == (4, 2)
    assert verify_large_set(ls, 1).ok


def test_juxtapose_seven_level_result():
    from oaforge.algebraic import sylvester_oa3

    a, proj = sylvester_oa3(3, 7)
    l16 = expand_shift(a, proj)
    l40 = fixture_loa("oa40_5e1_2e6")
    ls = juxtapose(l16, l40)
    assert ls.profile.levels == (7,) + (2,) * 6
    assert (ls.n, ls.m) == (56, 8)
    report = verify_large_set(ls, 3)
    assert report.ok and report.universe == 448


def test_juxtapose_table3_row():
    l20 = fixture_loa("oa20_2e8_5e1", lead_level=5)
    l28 = fixture_loa("oa28_2e12_7e1", lead_level=7, width=9)
    ls = juxtapose(l20, l28)
    assert ls.profile.levels == (12,) + (2,) * 8
    assert (ls.n, ls.m) == (48, 64)
    assert verify_large_set(ls, 2).ok


def test_juxtapose_errors():
    l22 = cosets_strength1(LevelProfile([2, 2]))
    l23 = cosets_strength1(LevelProfile([2, 3]))
    with pytest.raises(ValueError, match="beyond column 0"):
        juxtapose(l22, l23)
    l33 = cosets_strength1(LevelProfile([3, 2]))
    with pytest.raises(ValueError, match="ratio"):
        juxtapose(l22, l33)
    # member-count mismatch with matching ratio needs doctored inputs
    profile = LevelProfile([2, 2])
    half = LargeSet(profile, [l22.members[0]], t=1)
    with pytest.raises(ValueError, match="member counts"):
        juxtapose(half, l22)


def test_kronecker_toy_and_strengths():
    c22 = cosets_strength1(LevelProfile([2, 2]))
    out = kronecker(c22, c22)
    assert (out.n, out.k, out.t) == (8, 4, 3)
    assert verify_strength(out, 3).ok

    from oaforge.algebraic import sylvester_oa2

    a, proj = sylvester_oa2(2, 3)
    l4 = expand_shift(a, proj)
    out = kronecker(l4, l4)
    assert (out.n, out.k, out.t) == (32, 6, 5)
    assert verify_strength(out, 5).lambda_by_subset[(0, 1, 2, 3, 4)] == 1


from hypothesis import given, settings
from hypothesis import strategies as st


@settings(max_examples=20, deadline=None)
@given(
    st.lists(st.integers(2, 4), min_size=1, max_size=3),
    st.lists(st.integers(2, 4), min_size=1, max_size=3),
)
def test_kronecker_adds_strengths_on_coset_sets(levels1, levels2):
    # pairing two strength-1 coset sets must yield a verified strength-3
    # array of exactly lcm(M1, M2) * N1 * N2 rows; kronecker itself raises
    # if the composition law ever failed
    l1 = cosets_strength1(LevelProfile(levels1))
    l2 = cosets_strength1(LevelProfile(levels2))
    if len(levels1) + len(levels2) < 3:
        return  # strength 3 needs at least 3 columns
    out = kronecker(l1, l2)
    from math import lcm

    assert out.n == lcm(l1.m, l2.m) * l1.n * l2.n
    assert out.t == 3


def test_kronecker_block_structure():
    c22 = cosets_strength1(LevelProfile([2, 2]))
    out = kronecker(c22, c22)
    # h = lcm(2,2) = 2 blocks of N1*N2 = 4 rows: (s mod 2, s mod 2) pairing
    first_block = out.cells[:4]
    a = c22.members[0].cells
    expected = np.hstack([np.repeat(a, 2, axis=0), np.tile(a, (2, 1))])
    assert np.array_equal(first_block, expected)


def test_kronecker_with_full_factorial_singleton():
    # pairing with a one-member full factorial adds its column count to the
    # effective balance; on toy sizes the output is itself a full factorial
    from oaforge.algebraic import sylvester_oa2
    from oaforge.arrays import full_factorial

    a, proj = sylvester_oa2(2, 3)
    l4 = expand_shift(a, proj)
    ff = full_factorial(LevelProfile([2, 2]))
    singleton = LargeSet(ff.profile, [ff], t=2)
    out = kronecker(l4, singleton)
    assert (out.n, out.k, out.t) == (32, 5, 5)
    assert len({tuple(r) for r in out.cells.tolist()}) == 32


def test_kronecker_rejects_unverified_input():
    profile = LevelProfile([2, 2])
    bad_member = SymbolMatrix(profile, [[0, 0], [1, 0]], t=1)
    ok_member = SymbolMatrix(profile, [[0, 1], [1, 1]], t=1)
    bad = LargeSet(profile, [bad_member, ok_member], t=1)
    with pytest.raises(VerificationError):
        kronecker(bad, bad)


def test_kronecker_table4_row():
    l2 = cosets_strength1(LevelProfile([2, 2, 2]))
    l44 = fixture_loa("oa44_2e16_11e1", lead_level=11, width=5)
    out = kronecker(l2, l44)
    assert out.n == 352 and out.t == 4
    assert sorted(out.profile.levels) == sorted((2,) * 7 + (11,))


def test_plan_claims_match_spec_examples():
    plan = plan_theorem("doublev3-2", {"v": 4, "k": 5})
    assert plan.claim.n == 4**8
    assert plan.claim.profile_counts == ((4, 10),)
    assert plan.claim.t == 5

    plan = plan_theorem("qt2n2-3", {"q": 3, "t": 2, "k1": 3, "n": 2, "k2": 3})
    assert plan.claim.n == 2**2 * 3**2 * 6
    assert plan.claim.profile_counts == ((2, 3), (3, 3))
    assert plan.claim.t == 5

    plan = plan_theorem("v1+q4-3", {"v": 2, "k1": 3, "q": 3, "k2": 4})
    assert plan.claim.n == 2 * 81  # h = lcm(v^0, q^0) = 1
    assert plan.claim.t == 5


def test_plan_constraint_errors():
    with pytest.raises(ConstraintError):
        plan_theorem("nope", {})
    with pytest.raises(ConstraintError):
        plan_theorem("doublev3-2", {"v": 6, "k": 5})  # v = 2 (mod 4)
    with pytest.raises(ConstraintError):
        plan_theorem("doublev3-2", {"v": 4, "k": 30})
    with pytest.raises(ConstraintError):
        plan_theorem("doublev3-2", {"v": 4})
    with pytest.raises(ConstraintError):
        plan_theorem("v1+q4-3", {"v": 2, "k1": 3, "q": 6, "k2": 4})
    with pytest.raises(ConstraintError):
        plan_theorem("qt2n2-3", {"q": 3, "t": 2, "k1": 3, "n": 2, "k2": 9})


def test_execute_small_recipes():
    art = execute_plan(plan_theorem("v12n-4", {"v": 2, "k1": 4, "n": 2, "k2": 3}))
    assert (art.n, art.t) == (16, 4)
    art = execute_plan(plan_theorem("tt-1n2-3", {"s": 2, "t": 2, "n": 2, "k1": 3}))
    assert (art.n, art.t) == (16, 4)
    art = execute_plan(plan_theorem("qtp43", {"p": 3, "k1": 4, "q": 3, "t": 2, "k2": 2}))
    assert (art.n, art.t) == (729, 6)
    art = execute_plan(plan_theorem("q3323=7", {"q": 2, "k1": 3, "n": 2, "k2": 3}))
    assert (art.n, art.t) == (64, 6)


def test_execute_b3_branches():
    art = execute_plan(
        plan_theorem("v12n-4", {"v": 2, "k1": 4, "n": 2, "k2": 4, "b": 3}))
    assert (art.n, art.t) == (32, 5)
    art = execute_plan(
        plan_theorem("qn2n-com", {"q": 2, "m": 2, "k1": 3, "n": 2, "k2": 4, "b": 3}))
    assert (art.n, art.t) == (64, 6)


def test_qt2n2_t1_branch_uses_cosets():
    art = execute_plan(
        plan_theorem("qt2n2-3", {"q": 3, "t": 1, "k1": 2, "n": 2, "k2": 3}))
    # LOA(3, 2, 3, 1) x LOA(4, 3, 2, 2): h = lcm(3, 2) = 6 -> 72 runs
    assert (art.n, art.t) == (72, 4)
    assert sorted(art.profile.levels) == [2, 2, 2, 3, 3]


def test_execute_degenerate_full_factorial_leaf():
    from oaforge.compose import Claim, ConstructionPlan, leaf

    plan = ConstructionPlan(leaf("fullfact", v=2, k=3), Claim(8, ((2, 3),), 3))
    art = execute_plan(plan)
    assert (art.n, art.k) == (8, 3)
    assert len({tuple(r) for r in art.cells.tolist()}) == 8


def test_execute_plan_rejects_wrong_claims():
    from oaforge.compose import Claim, ConstructionPlan, Expand, leaf

    node = Expand(leaf("sylvester2", n=2, k=3))
    with pytest.raises(VerificationError, match="claimed N"):
        execute_plan(ConstructionPlan(node, Claim(5, ((2, 3),), 2)))
    with pytest.raises(VerificationError, match="profile"):
        execute_plan(ConstructionPlan(node, Claim(4, ((2, 4),), 2)))
    with pytest.raises(VerificationError, match="strength"):
        execute_plan(ConstructionPlan(node, Claim(4, ((2, 3),), 3)))


def test_all_theorem_ids_have_runnable_smallest_instance():
    smallest = {
        "v1+v3-2": {"v": 4, "k": 5},
        "doublev3-2": {"v": 4, "k": 5},
        "v1+q4-3": {"v": 2, "k1": 3, "q": 3, "k2": 4},
        "v12n-4": {"v": 2, "k1": 4, "n": 2, "k2": 3},
        "qn2n-com": {"q": 2, "m": 2, "k1": 3, "n": 2, "k2": 3},
        "qn2v32=5": {"q": 3, "m": 2, "k1": 4, "v": 4, "k2": 4},
        "qn2q43=6": {"p": 3, "k1": 4, "q": 3, "n": 2, "k2": 2},
        "qn3q43=7": {"p": 3, "k1": 4, "q": 3, "k2": 3},
        "q3323=7": {"q": 2, "k1": 3, "n": 2, "k2": 3},
        "t-1q43=t+3": {"s": 2, "t": 2, "q": 3, "k": 4},
        "qt2n2-3": {"q": 3, "t": 2, "k1": 3, "n": 2, "k2": 3},
        "tt-1n2-3": {"s": 2, "t": 2, "n": 2, "k1": 3},
        "qtp43": {"p": 3, "k1": 4, "q": 3, "t": 2, "k2": 2},
    }
    assert set(smallest) == set(THEOREM_IDS)
    for tid, params in smallest.items():
        plan = plan_theorem(tid, params)
        assert plan.claim.n >= 1
