import pytest
from hypothesis import given

from poikm.pperm import (
    InjectivityError,
    PartialPermError,
    PointRangeError,
    all_partial_perms,
    compose,
    empty,
    from_text,
    identity,
    image_size,
    inverse,
    make_pperm,
    to_text,
)

from conftest import partial_perms, same_degree


def test_make_pperm():
    alpha = make_pperm(4, {(1, 3), (2, 4)})
    assert alpha.domain == {1, 2}
    assert alpha.image == {3, 4}
    assert alpha(1) == 3 and alpha(3) is None


def test_make_pperm_errors():
    with pytest.raises(InjectivityError):
        make_pperm(4, {(1, 3), (2, 3)})
    with pytest.raises(InjectivityError):
        make_pperm(4, [(1, 3), (1, 4)])
    with pytest.raises(PointRangeError):
        make_pperm(4, [(1, 5)])
    with pytest.raises(PartialPermError):
        make_pperm(0, [])


def test_identity_and_empty():
    assert all(identity(3)(x) == x for x in (1, 2, 3))
    assert empty(3).domain == frozenset()


def test_compose_left_to_right():
    # (1 2) then (1 2 3): 1 -> 2 -> 3, 2 -> 1 -> 2, 3 -> 3 -> 1
    a = make_pperm(3, [(1, 2), (2, 1), (3, 3)])
    b = make_pperm(3, [(1, 2), (2, 3), (3, 1)])
    assert compose(a, b) == make_pperm(3, [(1, 3), (2, 2), (3, 1)])


def test_compose_chained_points():
    out = compose(make_pperm(2, {(1, 2)}), make_pperm(2, {(2, 1)}))
    assert out == make_pperm(2, {(1, 1)})
    assert out.domain == {1}


def test_compose_errors():
    with pytest.raises(PartialPermError):
        compose(identity(2), identity(3))


def test_inverse_examples():
    assert inverse(make_pperm(4, [(1, 3), (2, 4)])) == make_pperm(4, [(3, 1), (4, 2)])
    assert inverse(empty(4)) == empty(4)


def test_image_size():
    assert image_size(identity(4)) == 4
    assert image_size(empty(4)) == 0
    assert image_size(make_pperm(4, [(1, 3), (2, 4)])) == 2


def test_different_degrees_never_equal():
    assert empty(2) != empty(3)
    assert identity(1) != identity(2)


def test_canonical_order_undefined_below_one():
    assert make_pperm(2, [(2, 1)]) < make_pperm(2, [(1, 1)])
    assert empty(2) < identity(2)


def test_all_partial_perms_count():
    # sum_r C(n,r)^2 r!
    assert [sum(1 for _ in all_partial_perms(n)) for n in range(1, 5)] == [2, 7, 34, 209]


@pytest.mark.parametrize("text, pairs", [
    ("4;1>3,2>4", [(1, 3), (2, 4)]),
    ("4;", []),
])
def test_text_roundtrip(text, pairs):
    alpha = make_pperm(4, pairs)
    assert to_text(alpha) == text
    assert from_text(text) == alpha


def test_text_identity_shorthand():
    assert from_text("4;id") == identity(4)


@pytest.mark.parametrize("bad", ["4", "x;1>2", "4;1-2", "4;1>2,2>2", "3;1>4"])
def test_text_rejects(bad):
    with pytest.raises(PartialPermError):
        from_text(bad)


@given(partial_perms())
def test_inverse_axioms(alpha):
    inv = inverse(alpha)
    assert compose(alpha, compose(inv, alpha)) == alpha
    assert compose(inv, compose(alpha, inv)) == inv
    assert inverse(inv) == alpha
    assert inv.domain == alpha.image


@given(same_degree(3))
def test_associative(triple):
    a, b, c = triple
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


@given(same_degree(2))
def test_rank_does_not_grow(pair):
    a, b = pair
    assert image_size(compose(a, b)) <= min(image_size(a), image_size(b))


@given(same_degree(2))
def test_idempotents_are_partial_identities_and_commute(pair):
    e, f = (compose(a, inverse(a)) for a in pair)
    assert compose(e, e) == e and e.is_idempotent()
    assert compose(e, f) == compose(f, e)


def test_idempotents_exhaustive_degree_3():
    idem = [a for a in all_partial_perms(3) if compose(a, a) == a]
    assert len(idem) == 8
    assert all(a.is_idempotent() for a in idem)


@given(partial_perms())
def test_text_roundtrip_property(alpha):
    assert from_text(to_text(alpha)) == alpha


def test_power():
    b = make_pperm(3, [(1, 2), (2, 3), (3, 1)])
    assert b ** 3 == identity(3)
    assert b ** 0 == identity(3)
