import itertools
import math

import pytest

from poikm.blocks import BlockSpec, abc_generators, generator_set, x_generators
from poikm.enumeration import (
    BudgetExceeded,
    EnumerationOverflow,
    enumerate_monoid,
    green_summary,
    j_class_size,
    membership_filter,
    minimal_generating_size,
    multiplication_table,
    rank_lower_bound_check,
    read_table,
    size_formula,
    write_table,
)
from poikm.pperm import PartialPerm, compose, identity, make_pperm


def closure(spec, gens):
    return enumerate_monoid(spec.n, list(generator_set(spec, gens).values()))


def test_size_formula_examples():
    assert size_formula(2, 2) == 13
    assert size_formula(3, 2) == 63
    assert size_formula(1, 5) == 121
    # one block: S_m plus the empty map
    assert size_formula(1, 3) == 7


@pytest.mark.parametrize("k, m", [(2, 2), (3, 2), (2, 3), (1, 4)])
def test_size_formula_matches_filter(k, m):
    assert len(membership_filter(BlockSpec(k, m))) == size_formula(k, m)


def test_j_class_sizes_sum():
    for k, m in [(2, 2), (3, 3), (4, 2)]:
        sizes = [j_class_size(k, m, t) for t in range(k + 1)]
        assert sum(sizes) == size_formula(k, m)
        assert sizes[k] == math.factorial(m) ** k


@pytest.mark.parametrize("k, m", [(2, 2), (3, 2), (2, 3)])
@pytest.mark.parametrize("gens", ["abx", "bcx", "dx"])
def test_closure_equals_filter(k, m, gens):
    spec = BlockSpec(k, m)
    table = closure(spec, gens)
    assert table.element_set() == set(membership_filter(spec))


def test_closure_words_evaluate():
    table = closure(BlockSpec(2, 2), "abx")
    assert table.elements[0] == identity(4)
    assert table.words[0] == ()
    for e, w in zip(table.elements, table.words):
        assert table.evaluate(w) == e
    # shortlex: lengths never decrease along the list
    lengths = [len(w) for w in table.words]
    assert lengths == sorted(lengths)


def test_right_table_consistent():
    table = closure(BlockSpec(2, 2), "dx")
    for i, row in enumerate(table.right_table):
        for j, target in enumerate(row):
            assert table.elements[target] == compose(table.elements[i], table.generators[j])


def test_x_alone_is_smaller():
    spec = BlockSpec(3, 2)
    table = enumerate_monoid(spec.n, x_generators(spec).members)
    assert len(table) < size_formula(3, 2)


def test_overflow():
    with pytest.raises(EnumerationOverflow):
        enumerate_monoid(6, list(generator_set(BlockSpec(3, 2), "abx").values()), limit=10)


def test_empty_generators_gives_identity():
    table = enumerate_monoid(3, [])
    assert table.elements == (identity(3),)


def test_table_roundtrip():
    table = closure(BlockSpec(2, 2), "bcx")
    again = read_table(write_table(table))
    assert again.elements == table.elements
    assert again.words == table.words
    assert again.right_table == table.right_table
    assert again.generators == table.generators


def test_table_rejects_truncated():
    text = write_table(closure(BlockSpec(2, 2), "dx"))
    with pytest.raises(ValueError):
        read_table("\n".join(text.splitlines()[:-1]))


@pytest.mark.parametrize("k, m", [(2, 2), (3, 2), (2, 3)])
def test_green_summary(k, m):
    spec = BlockSpec(k, m)
    summary = green_summary(spec, closure(spec, "abx"))
    assert summary.passed, summary.lines()
    assert summary.j_sizes == summary.expected_j_sizes
    assert summary.h_identity_size == math.factorial(m) ** k
    for t in range(k + 1):
        assert summary.r_classes_per_j[t] == math.comb(k, t)
        assert summary.l_classes_per_j[t] == math.comb(k, t)


def test_green_sizes_22():
    spec = BlockSpec(2, 2)
    summary = green_summary(spec, closure(spec, "dx"))
    assert [summary.j_sizes[t] for t in range(3)] == [1, 8, 4]


def test_green_detects_wrong_table():
    # S_2^2 alone: only the top J-class, so the sizes disagree
    spec = BlockSpec(2, 2)
    A, B, _ = abc_generators(spec)
    table = enumerate_monoid(4, list(A) + list(B))
    with pytest.raises(ValueError):
        green_summary(spec, table)


def test_rank_exhaustive_22():
    spec = BlockSpec(2, 2)
    table = closure(spec, "abx")
    result = minimal_generating_size(table, search_cap=4, spec=spec)
    assert result.size == 4
    witness = [table.elements[i] for i in result.witness]
    assert len(enumerate_monoid(4, witness)) == 13
    # same answer without pruning
    assert minimal_generating_size(table, search_cap=4).size == 4


def test_rank_search_cap_too_small():
    spec = BlockSpec(2, 2)
    result = minimal_generating_size(closure(spec, "abx"), search_cap=3, spec=spec)
    assert result.size is None


def test_rank_budget():
    table = closure(BlockSpec(2, 2), "abx")
    with pytest.raises(BudgetExceeded):
        minimal_generating_size(table, search_cap=4, budget=5)


def test_rank_cyclic_group():
    b = make_pperm(4, [(1, 2), (2, 3), (3, 4), (4, 1)])
    table = enumerate_monoid(4, [b])
    assert minimal_generating_size(table, search_cap=3).size == 1


def test_rank_certificate():
    spec = BlockSpec(2, 2)
    table = closure(spec, "abx")
    gens = generator_set(spec, "abx")
    cand = [gens[x] for x in ("a1", "a2", "x0", "x1")]
    verdict = rank_lower_bound_check(spec, table, cand)
    assert verdict.certifies_rank, verdict.lines()
    assert verdict.unit_group_order == 4 and verdict.unit_group_rank == 2
    assert verdict.lower_bound == 4


@pytest.mark.parametrize("k, m, unit_rank", [(3, 2, 3), (2, 3, 2)])
def test_rank_lower_bound_values(k, m, unit_rank):
    spec = BlockSpec(k, m)
    table = closure(spec, "dx")
    verdict = rank_lower_bound_check(spec, table, list(generator_set(spec, "dx").values()))
    assert verdict.unit_group_rank == unit_rank
    assert verdict.lower_bound == k + unit_rank
    assert verdict.generates and verdict.condition_i and verdict.condition_ii
    assert verdict.certifies_rank == (verdict.candidate_size == k + unit_rank)


def test_rank_missing_block_image():
    spec = BlockSpec(2, 2)
    table = closure(spec, "abx")
    gens = generator_set(spec, "abx")
    verdict = rank_lower_bound_check(spec, table, [gens[x] for x in ("a1", "a2", "b1", "x1")])
    assert not verdict.condition_i
    assert verdict.missing_images == [2]
    assert not verdict.certifies_rank
    assert any("condition (i)" in line for line in verdict.failing)


def test_rank_missing_units():
    spec = BlockSpec(2, 2)
    table = closure(spec, "abx")
    gens = generator_set(spec, "abx")
    verdict = rank_lower_bound_check(spec, table, [gens[x] for x in ("a1", "x0", "x1")])
    assert verdict.condition_i and not verdict.condition_ii and not verdict.generates


def test_rank_rejects_foreign_element():
    spec = BlockSpec(2, 2)
    table = closure(spec, "abx")
    swap = make_pperm(4, [(1, 3), (2, 4), (3, 1), (4, 2)])
    with pytest.raises(ValueError):
        rank_lower_bound_check(spec, table, [swap])


def test_multiplication_table():
    table = closure(BlockSpec(2, 2), "dx")
    mult = multiplication_table(table)
    els = table.elements
    for i, j in itertools.product(range(len(els)), repeat=2):
        assert els[mult[i][j]] == compose(els[i], els[j])
    assert all(mult[0][j] == j for j in range(len(els)))


def test_member_table_contains():
    table = closure(BlockSpec(2, 2), "abx")
    assert PartialPerm((0, 0, 1, 2)) in table
    assert make_pperm(4, [(1, 3)]) not in table
