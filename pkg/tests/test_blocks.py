import itertools
import random

import pytest

from poikm.blocks import (
    BlockSpec,
    NotAMember,
    UnsupportedParameters,
    abc_generators,
    bar_embed,
    block_of,
    canonical_sigma,
    d_generators,
    decompose,
    generator_set,
    is_member,
    is_member_for,
    is_p_order_preserving,
    is_p_stable,
    parse_spec,
    psi_embed,
    random_member,
    rebase,
    source_partition,
    x_generators,
)
from poikm.enumeration import membership_filter
from poikm.pperm import (
    PartialPerm,
    PartialPermError,
    PointRangeError,
    all_partial_perms,
    compose,
    empty,
    identity,
    inverse,
    make_pperm,
)

S22 = BlockSpec(2, 2)
SWAP = make_pperm(4, [(1, 3), (2, 4), (3, 1), (4, 2)])


def perm(*images):
    return PartialPerm(tuple(images))


@pytest.mark.parametrize("k, m, x, expected", [(2, 2, 3, 2), (3, 2, 1, 1), (2, 3, 4, 2)])
def test_block_of(k, m, x, expected):
    assert block_of(BlockSpec(k, m), x) == expected


def test_block_of_range():
    with pytest.raises(PointRangeError):
        block_of(S22, 5)


def test_blocks():
    assert [list(b) for b in BlockSpec(2, 3).blocks()] == [[1, 2, 3], [4, 5, 6]]


def test_parse_spec():
    assert parse_spec("3x2") == BlockSpec(3, 2)
    assert parse_spec(" 2 x 4 ") == BlockSpec(2, 4)
    with pytest.raises(ValueError):
        parse_spec("3,2")
    with pytest.raises(UnsupportedParameters):
        parse_spec("0x2")


def test_p_stable_examples():
    assert is_p_stable(S22, make_pperm(4, [(3, 1), (4, 2)]))
    assert not is_p_stable(S22, make_pperm(4, [(1, 1)]))
    assert is_p_stable(S22, empty(4))


def test_p_order_preserving_examples():
    assert not is_p_order_preserving(S22, SWAP)
    assert is_p_order_preserving(S22, identity(4))
    assert is_p_order_preserving(S22, make_pperm(4, [(1, 4), (2, 3)]))


def test_membership_examples():
    assert is_member(S22, empty(4))
    assert not is_member(S22, SWAP)
    inner_reversal = make_pperm(4, [(1, 4), (2, 3)])
    assert is_member(S22, inner_reversal)
    assert not inner_reversal.is_order_preserving()


def test_degree_mismatch():
    with pytest.raises(PartialPermError):
        is_member(S22, identity(3))
    with pytest.raises(PartialPermError):
        is_p_stable(S22, identity(6))


def test_psi_examples():
    assert psi_embed(S22, make_pperm(2, [(2, 1)])) == make_pperm(4, [(3, 1), (4, 2)])
    assert psi_embed(BlockSpec(3, 2), identity(3)) == identity(6)
    assert psi_embed(BlockSpec(3, 2), empty(3)) == empty(6)


def test_psi_rejects_non_order_preserving():
    with pytest.raises(ValueError):
        psi_embed(S22, make_pperm(2, [(1, 2), (2, 1)]))


def test_psi_image_is_order_preserving_members():
    ops = [t for t in all_partial_perms(2) if t.is_order_preserving()]
    image = {psi_embed(S22, t) for t in ops}
    assert len(image) == len(ops)
    assert image == {a for a in membership_filter(S22) if a.is_order_preserving()}


@pytest.mark.parametrize("k", [1, 2, 3])
def test_psi_homomorphism_exhaustive(k):
    spec = BlockSpec(k, 2)
    ops = [t for t in all_partial_perms(k) if t.is_order_preserving()]
    for t1, t2 in itertools.product(ops, repeat=2):
        assert psi_embed(spec, compose(t1, t2)) == compose(psi_embed(spec, t1), psi_embed(spec, t2))
    assert all(is_member(spec, psi_embed(spec, t)) for t in ops)


def test_bar_examples():
    t2 = perm(2, 1)
    assert bar_embed(S22, [t2, identity(2)]) == perm(2, 1, 3, 4)
    assert bar_embed(BlockSpec(3, 2), [identity(2)] * 3) == identity(6)
    assert bar_embed(S22, [t2, t2]) == perm(2, 1, 4, 3)


def test_bar_rejects_non_permutation():
    with pytest.raises(ValueError):
        bar_embed(S22, [make_pperm(2, [(1, 1)]), identity(2)])


def test_bar_exhaustive_22():
    s2 = [identity(2), perm(2, 1)]
    pairs = list(itertools.product(s2, repeat=2))
    images = [bar_embed(S22, z) for z in pairs]
    assert len(set(images)) == 4
    assert set(images) == {a for a in membership_filter(S22) if a.rank == 4}
    for z, w in itertools.product(pairs, repeat=2):
        zw = [compose(a, b) for a, b in zip(z, w)]
        assert bar_embed(S22, zw) == compose(bar_embed(S22, z), bar_embed(S22, w))


def test_x_generators_22():
    x0, x1 = x_generators(S22).members
    assert x0 == make_pperm(4, [(3, 1), (4, 2)])
    assert x1 == make_pperm(4, [(1, 3), (2, 4)])


@pytest.mark.parametrize("k, m", [(2, 2), (3, 2), (2, 3), (4, 3), (5, 2)])
def test_families_shape(k, m):
    spec = BlockSpec(k, m)
    X = x_generators(spec)
    A, B, C = abc_generators(spec)
    D = d_generators(spec)
    assert [len(f) for f in (X, A, B, C, D)] == [k] * 5
    assert all(x.rank == m * (k - 1) for x in X)
    assert all(g.rank == k * m for f in (A, B, C, D) for g in f)
    assert all(is_member(spec, g) for f in (X, A, B, C, D) for g in f)
    assert X.names()[0] == "x0" and D.names()[-1] == f"d{k}"
    # Im(x_i) misses exactly block k - i (block k for x_0)
    full = set(range(1, spec.n + 1))
    for i, x in enumerate(X):
        missing = k if i == 0 else k - i
        assert x.image == full - set(spec.block(missing))


def test_x_rejects_k1():
    with pytest.raises(UnsupportedParameters):
        x_generators(BlockSpec(1, 3))
    with pytest.raises(UnsupportedParameters):
        abc_generators(BlockSpec(2, 1))
    with pytest.raises(UnsupportedParameters):
        d_generators(BlockSpec(1, 2))


def test_abc_examples():
    A, B, C = abc_generators(BlockSpec(2, 3))
    assert A.members[0] == perm(2, 1, 3, 4, 5, 6)
    assert C.members[0] == perm(3, 2, 1, 4, 5, 6)
    _, _, C22 = abc_generators(S22)
    assert all(c == identity(4) for c in C22)


def test_d_equals_b_at_m2():
    _, B, _ = abc_generators(BlockSpec(3, 2))
    assert d_generators(BlockSpec(3, 2)).members == B.members


@pytest.mark.parametrize("k, m", [(2, 2), (3, 2), (2, 3), (3, 4), (2, 5)])
def test_d_recovery(k, m):
    spec = BlockSpec(k, m)
    _, B, C = abc_generators(spec)
    D = d_generators(spec).members
    assert D[k - 1] ** m == C.members[0]
    for i in range(k - 1):
        assert D[i] ** m == C.members[i + 1]
    for i in range(k):
        assert D[i] ** ((m - 1) ** 2) == B.members[i]
        assert B.members[i] ** (m - 1) == D[i] ** (m - 1)
        assert D[i] ** (m * (m - 1)) == identity(spec.n)


def test_d_order_23():
    d1 = d_generators(BlockSpec(2, 3)).members[0]
    assert d1 ** 6 == identity(6)
    assert d1 ** 3 != identity(6) and d1 ** 2 != identity(6)


def test_generator_set_order():
    assert list(generator_set(S22, "abx")) == ["a1", "a2", "b1", "b2", "x0", "x1"]
    assert list(generator_set(S22, "dx")) == ["d1", "d2", "x0", "x1"]


def test_decompose_example():
    alpha = make_pperm(4, [(1, 4), (2, 3)])
    theta, gamma = decompose(S22, alpha)
    assert theta == make_pperm(2, [(1, 2)])
    assert gamma == perm(1, 2, 4, 3)


def test_decompose_unit_and_empty():
    unit = perm(2, 1, 4, 3)
    assert decompose(S22, unit) == (identity(2), unit)
    assert decompose(S22, empty(4)) == (empty(2), identity(4))


def test_decompose_rejects_non_member():
    with pytest.raises(NotAMember):
        decompose(S22, SWAP)


@pytest.mark.parametrize("k, m", [(2, 2), (3, 2), (2, 3)])
def test_decompose_roundtrip_exhaustive(k, m):
    spec = BlockSpec(k, m)
    for alpha in membership_filter(spec):
        theta, gamma = decompose(spec, alpha)
        blown = psi_embed(spec, theta)
        assert compose(blown, gamma) == alpha
        assert gamma.is_full() and is_member(spec, gamma)
        assert all(gamma(x) == x for x in set(range(1, spec.n + 1)) - blown.image)


def test_membership_closure_exhaustive_22():
    members = membership_filter(S22)
    as_set = set(members)
    for a, b in itertools.product(members, repeat=2):
        assert compose(a, b) in as_set
    assert all(inverse(a) in as_set for a in members)


@pytest.mark.parametrize("k, m", [(3, 2), (2, 3), (4, 2), (3, 3)])
def test_membership_closure_random(k, m):
    spec = BlockSpec(k, m)
    rng = random.Random(7)
    for _ in range(1000):
        a, b = random_member(spec, rng), random_member(spec, rng)
        assert is_member(spec, a)
        assert is_member(spec, compose(a, b)) and is_member(spec, inverse(a))


def test_empty_map_member_for_k1():
    # with a single block the monoid is S_m plus the empty map
    spec = BlockSpec(1, 3)
    assert len(membership_filter(spec)) == 6 + 1


def test_rebase_identity_sigma():
    alpha = make_pperm(4, [(1, 2), (3, 4)])
    assert rebase(4, [2, 2], identity(4), alpha) == alpha


def test_rebase_example():
    classes = [{1, 3}, {2, 4}]
    sigma = make_pperm(4, [(1, 1), (3, 2), (2, 3), (4, 4)])
    assert canonical_sigma(4, classes) == sigma
    alpha = make_pperm(4, [(1, 2), (3, 4)])
    assert is_member_for(classes, alpha)
    out = rebase(4, [2, 2], sigma, alpha)
    assert out == make_pperm(4, [(1, 3), (2, 4)])
    assert is_member(S22, out)


def test_rebase_errors():
    with pytest.raises(ValueError):
        rebase(4, [2, 1], identity(4), identity(4))
    with pytest.raises(ValueError):
        rebase(4, [2, 2], make_pperm(4, [(1, 1)]), identity(4))


def test_source_partition():
    sigma = make_pperm(4, [(1, 1), (3, 2), (2, 3), (4, 4)])
    assert source_partition(4, [2, 2], sigma) == [{1, 3}, {2, 4}]


def test_rebase_homomorphism_and_membership():
    classes = [{4, 1}, {6, 3}, {2, 5}]
    sigma = canonical_sigma(6, classes)
    spec = BlockSpec(3, 2)
    source = [a for a in all_partial_perms(6) if is_member_for(classes, a)]
    rebased = {rebase(6, [2, 2, 2], sigma, a) for a in source}
    assert rebased == set(membership_filter(spec))
    rng = random.Random(3)
    for _ in range(1000):
        a, b = rng.choice(source), rng.choice(source)
        assert rebase(6, [2] * 3, sigma, compose(a, b)) == compose(
            rebase(6, [2] * 3, sigma, a), rebase(6, [2] * 3, sigma, b))
