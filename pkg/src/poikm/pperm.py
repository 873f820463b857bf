"""Partial permutations of {1, ..., n}.

Composition is LEFT-TO-RIGHT: ``compose(a, b)`` first applies ``a`` and then
``b``, i.e. x(ab) = (xa)b.  Many libraries (sympy, GAP for right actions
aside) use the opposite convention; everything in this package relies on
this one.

A map is stored as a tuple of images, position ``x - 1`` holding the image
of ``x`` or ``0`` when ``x`` is outside the domain.  Points are 1-based in
every public interface.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce


class PartialPermError(ValueError):
    """Raised for malformed partial permutations or incompatible operands."""


class InjectivityError(PartialPermError):
    pass


class PointRangeError(PartialPermError):
    pass


UNDEFINED = 0


@dataclass(frozen=True, order=True, slots=True)
class PartialPerm:
    """An injective partial self-map of {1, ..., degree}.

    Ordering is lexicographic on ``images`` with the undefined marker (0)
    below every point, which is the canonical order used for sorted output.
    Maps of different degree never compare equal.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if n < 1:
            raise PartialPermError("degree must be at least 1")
        seen = set()
        for y in self.images:
            if y == UNDEFINED:
                continue
            if not 1 <= y <= n:
                raise PointRangeError(f"image {y} outside 1..{n}")
            if y in seen:
                raise InjectivityError(f"image {y} repeated")
            seen.add(y)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int | None:
        """Image of ``x``, or None when ``x`` is outside the domain."""
        if not 1 <= x <= len(self.images):
            raise PointRangeError(f"point {x} outside 1..{len(self.images)}")
        y = self.images[x - 1]
        return None if y == UNDEFINED else y

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(x for x, y in enumerate(self.images, 1) if y)

    @property
    def image(self) -> frozenset[int]:
        return frozenset(y for y in self.images if y)

    def pairs(self) -> list[tuple[int, int]]:
        return [(x, y) for x, y in enumerate(self.images, 1) if y]

    @property
    def rank(self) -> int:
        return sum(1 for y in self.images if y)

    def is_full(self) -> bool:
        return UNDEFINED not in self.images

    def is_idempotent(self) -> bool:
        return all(y in (UNDEFINED, x) for x, y in enumerate(self.images, 1))

    def is_order_preserving(self) -> bool:
        ys = [y for y in self.images if y]
        return all(a < b for a, b in zip(ys, ys[1:]))

    def __mul__(self, other: PartialPerm) -> PartialPerm:
        return compose(self, other)

    def __pow__(self, e: int) -> PartialPerm:
        if e < 0:
            raise PartialPermError("negative powers are not defined")
        result = identity(self.degree)
        base = self
        while e:
            if e & 1:
                result = compose(result, base)
            base = compose(base, base)
            e >>= 1
        return result

    def __str__(self) -> str:
        return to_text(self)


def make_pperm(n: int, pairs) -> PartialPerm:
    """Build the map of degree ``n`` sending each ``source`` to ``target``."""
    if n < 1:
        raise PartialPermError("degree must be at least 1")
    images = [UNDEFINED] * n
    targets = set()
    for x, y in pairs:
        if not (1 <= x <= n and 1 <= y <= n):
            raise PointRangeError(f"pair {x}>{y} outside 1..{n}")
        if images[x - 1] != UNDEFINED:
            raise InjectivityError(f"source {x} repeated")
        if y in targets:
            raise InjectivityError(f"target {y} repeated")
        images[x - 1] = y
        targets.add(y)
    return PartialPerm(tuple(images))


def from_images(images) -> PartialPerm:
    """Build from an image sequence where ``None`` or 0 means undefined."""
    return PartialPerm(tuple(UNDEFINED if y is None else int(y) for y in images))


def identity(n: int) -> PartialPerm:
    return PartialPerm(tuple(range(1, n + 1)))


def empty(n: int) -> PartialPerm:
    return PartialPerm((UNDEFINED,) * n)


def compose(alpha: PartialPerm, beta: PartialPerm) -> PartialPerm:
    """Left-to-right product: x(alpha beta) = (x alpha) beta."""
    if alpha.degree != beta.degree:
        raise PartialPermError(
            f"degree mismatch: {alpha.degree} vs {beta.degree}")
    b = beta.images
    # bypass validation: a product of partial permutations is one
    out = tuple(b[y - 1] if y else UNDEFINED for y in alpha.images)
    obj = object.__new__(PartialPerm)
    object.__setattr__(obj, "images", out)
    return obj


def compose_all(maps, n: int) -> PartialPerm:
    return reduce(compose, maps, identity(n))


def inverse(alpha: PartialPerm) -> PartialPerm:
    images = [UNDEFINED] * alpha.degree
    for x, y in enumerate(alpha.images, 1):
        if y:
            images[y - 1] = x
    return PartialPerm(tuple(images))


def image_size(alpha: PartialPerm) -> int:
    return alpha.rank


def restriction_of_identity(n: int, points) -> PartialPerm:
    return make_pperm(n, [(x, x) for x in points])


def to_text(alpha: PartialPerm) -> str:
    """Text form ``<n>;<src>><dst>,...``, e.g. ``4;1>3,2>4``."""
    body = ",".join(f"{x}>{y}" for x, y in alpha.pairs())
    return f"{alpha.degree};{body}"


def from_text(text: str) -> PartialPerm:
    """Parse the text form; ``4;`` is the empty map, ``4;id`` the identity."""
    head, sep, body = text.strip().partition(";")
    if not sep:
        raise PartialPermError(f"missing ';' in {text!r}")
    try:
        n = int(head)
    except ValueError:
        raise PartialPermError(f"bad degree in {text!r}") from None
    body = body.strip()
    if body == "id":
        return identity(n)
    pairs = []
    if body:
        for item in body.split(","):
            src, arrow, dst = item.partition(">")
            if not arrow:
                raise PartialPermError(f"bad pair {item!r} in {text!r}")
            try:
                pairs.append((int(src), int(dst)))
            except ValueError:
                raise PartialPermError(f"bad pair {item!r} in {text!r}") from None
    return make_pperm(n, pairs)


def all_partial_perms(n: int):
    """Every partial permutation of degree ``n`` (sum_r C(n,r)^2 r! of them)."""
    images = [UNDEFINED] * n
    used = [False] * (n + 1)

    def rec(x):
        if x == n:
            yield PartialPerm(tuple(images))
            return
        images[x] = UNDEFINED
        yield from rec(x + 1)
        for y in range(1, n + 1):
            if not used[y]:
                used[y] = True
                images[x] = y
                yield from rec(x + 1)
                used[y] = False
        images[x] = UNDEFINED

    yield from rec(0)
