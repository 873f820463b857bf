"""The uniform interval partition of {1, ..., km} and the monoid POI_{k x m}.

``BlockSpec(k, m)`` describes blocks I_i = {(i-1)m + 1, ..., im}.  A partial
permutation is a member of POI_{k x m} when it is stable (each domain block
is mapped onto a whole block) and block-order preserving (the induced map on
block indices is monotone).  The generator families X, A, B, C, D, the
embeddings psi (POI_k -> POI_{k x m}) and bar (S_m^k -> units), and the
block-by-unit factorisation of a member live here too.
"""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass

from .pperm import (
    PartialPerm,
    PartialPermError,
    PointRangeError,
    compose,
    identity,
    inverse,
    make_pperm,
)


class UnsupportedParameters(ValueError):
    """Raised when an operation needs k, m >= 2 (or similar) and is not given it."""


class NotAMember(ValueError):
    pass


@dataclass(frozen=True)
class BlockSpec:
    k: int
    m: int

    def __post_init__(self):
        if self.k < 1 or self.m < 1:
            raise UnsupportedParameters(f"need k, m >= 1, got {self.k}x{self.m}")

    @property
    def n(self) -> int:
        return self.k * self.m

    def block(self, i: int) -> range:
        """Points of block I_i as a range."""
        if not 1 <= i <= self.k:
            raise PointRangeError(f"block {i} outside 1..{self.k}")
        return range((i - 1) * self.m + 1, i * self.m + 1)

    def blocks(self) -> list[range]:
        return [self.block(i) for i in range(1, self.k + 1)]

    def require_presentable(self):
        if self.k < 2 or self.m < 2:
            raise UnsupportedParameters(
                f"operation requires k, m >= 2, got {self.k}x{self.m}")

    def __str__(self) -> str:
        return f"{self.k}x{self.m}"


def parse_spec(text: str) -> BlockSpec:
    """Parse ``"3x2"`` (spaces allowed) into BlockSpec(3, 2)."""
    match = re.fullmatch(r"\s*(\d+)\s*[xX×]\s*(\d+)\s*", text)
    if not match:
        raise ValueError(f"expected <k>x<m>, got {text!r}")
    return BlockSpec(int(match.group(1)), int(match.group(2)))


def _check_degree(spec: BlockSpec, alpha: PartialPerm):
    if alpha.degree != spec.n:
        raise PartialPermError(
            f"degree {alpha.degree} does not match {spec} (n = {spec.n})")


def block_of(spec: BlockSpec, x: int) -> int:
    if not 1 <= x <= spec.n:
        raise PointRangeError(f"point {x} outside 1..{spec.n}")
    return (x - 1) // spec.m + 1


# General ordered partitions.  ``blocks`` is a list of point collections in
# chain order; the uniform interval case is just one instance.

def _block_index(blocks) -> dict[int, int]:
    return {x: i for i, block in enumerate(blocks, 1) for x in block}


def is_stable_for(blocks, alpha: PartialPerm) -> bool:
    where = _block_index(blocks)
    sets = [frozenset(b) for b in blocks]
    dom = alpha.domain
    for x in dom:
        block = sets[where[x] - 1]
        if not block <= dom:
            return False
        target = sets[where[alpha(x)] - 1]
        if frozenset(alpha(y) for y in block) != target:
            return False
    return True


def is_order_preserving_for(blocks, alpha: PartialPerm) -> bool:
    where = _block_index(blocks)
    induced = sorted((where[x], where[y]) for x, y in alpha.pairs())
    return all(b1 <= b2 for (_, b1), (_, b2) in zip(induced, induced[1:]))


def is_member_for(blocks, alpha: PartialPerm) -> bool:
    return is_stable_for(blocks, alpha) and is_order_preserving_for(blocks, alpha)


def is_p_stable(spec: BlockSpec, alpha: PartialPerm) -> bool:
    _check_degree(spec, alpha)
    return is_stable_for(spec.blocks(), alpha)


def is_p_order_preserving(spec: BlockSpec, alpha: PartialPerm) -> bool:
    _check_degree(spec, alpha)
    return is_order_preserving_for(spec.blocks(), alpha)


def is_member(spec: BlockSpec, alpha: PartialPerm) -> bool:
    _check_degree(spec, alpha)
    blocks = spec.blocks()
    return is_stable_for(blocks, alpha) and is_order_preserving_for(blocks, alpha)


def block_map(spec: BlockSpec, alpha: PartialPerm) -> PartialPerm:
    """The partial map on block indices induced by a stable ``alpha``."""
    pairs = {}
    for x, y in alpha.pairs():
        pairs[block_of(spec, x)] = block_of(spec, y)
    return make_pperm(spec.k, pairs.items())


def psi_embed(spec: BlockSpec, theta: PartialPerm) -> PartialPerm:
    """Blow up an order-preserving theta on {1..k} to one on {1..km}.

    Block I_i is sent onto I_{i theta} by the monotone bijection, i.e. by a
    shift of (i theta - i) m.
    """
    if theta.degree != spec.k:
        raise PartialPermError(f"theta has degree {theta.degree}, need {spec.k}")
    if not theta.is_order_preserving():
        raise ValueError("psi is only defined on order-preserving maps")
    m = spec.m
    pairs = []
    for i, j in theta.pairs():
        shift = (j - i) * m
        pairs.extend((x, x + shift) for x in spec.block(i))
    return make_pperm(spec.n, pairs)


def bar_embed(spec: BlockSpec, z) -> PartialPerm:
    """Act by the permutation z[i-1] of {1..m} inside block I_i."""
    z = list(z)
    if len(z) != spec.k:
        raise ValueError(f"need {spec.k} permutations, got {len(z)}")
    m = spec.m
    images = []
    for i, zi in enumerate(z):
        if zi.degree != m or not zi.is_full():
            raise ValueError(f"coordinate {i + 1} is not a permutation of 1..{m}")
        offset = i * m
        images.extend(y + offset for y in zi.images)
    return PartialPerm(tuple(images))


def _cycle(m: int) -> PartialPerm:
    return PartialPerm(tuple(list(range(2, m + 1)) + [1]))


def _transposition(m: int) -> PartialPerm:
    return make_pperm(m, [(1, 2), (2, 1)] + [(x, x) for x in range(3, m + 1)])


def sm_generators(m: int) -> dict[str, PartialPerm]:
    """a = (1 2), b = (1 2 ... m) and c = ab = (1 3 4 ... m) in S_m."""
    if m < 2:
        raise UnsupportedParameters(f"need m >= 2, got {m}")
    a = _transposition(m)
    b = _cycle(m)
    return {"a": a, "b": b, "c": compose(a, b)}


# Generator families, in index order.  Labels are the letter names used by
# the presentations: x0..x{k-1}, a1..ak, b1..bk, c1..ck, d1..dk.

@dataclass(frozen=True)
class GeneratorFamily:
    spec: BlockSpec
    label: str
    members: tuple[PartialPerm, ...]

    def names(self) -> list[str]:
        start = 0 if self.label == "X" else 1
        return [f"{self.label.lower()}{i}" for i in range(start, start + len(self.members))]

    def as_dict(self) -> dict[str, PartialPerm]:
        return dict(zip(self.names(), self.members))

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def poi_generators(k: int) -> list[PartialPerm]:
    """x_0, ..., x_{k-1} in POI_k."""
    x0 = make_pperm(k, [(i, i - 1) for i in range(2, k + 1)])
    xs = [x0]
    for i in range(1, k):
        pairs = [(j, j) for j in range(1, k - i)]
        pairs.append((k - i, k - i + 1))
        pairs.extend((j, j) for j in range(k - i + 2, k + 1))
        xs.append(make_pperm(k, pairs))
    return xs


def x_generators(spec: BlockSpec) -> GeneratorFamily:
    if spec.k < 2:
        raise UnsupportedParameters(f"X needs k >= 2, got {spec}")
    members = tuple(psi_embed(spec, x) for x in poi_generators(spec.k))
    return GeneratorFamily(spec, "X", members)


def _coordinate_family(spec: BlockSpec, perm: PartialPerm, label: str) -> GeneratorFamily:
    one = identity(spec.m)
    members = []
    for i in range(spec.k):
        z = [one] * spec.k
        z[i] = perm
        members.append(bar_embed(spec, z))
    return GeneratorFamily(spec, label, tuple(members))


def abc_generators(spec: BlockSpec):
    if spec.m < 2:
        raise UnsupportedParameters(f"A, B, C need m >= 2, got {spec}")
    gens = sm_generators(spec.m)
    return tuple(_coordinate_family(spec, gens[s], s.upper()) for s in "abc")


def d_generators(spec: BlockSpec) -> GeneratorFamily:
    """d_i = b_i c_{i+1} for i < k and d_k = b_k c_1."""
    spec.require_presentable()
    _, B, C = abc_generators(spec)
    k = spec.k
    members = tuple(compose(B.members[i], C.members[(i + 1) % k]) for i in range(k))
    return GeneratorFamily(spec, "D", members)


def generator_set(spec: BlockSpec, choice: str) -> dict[str, PartialPerm]:
    """Named generators for ``choice`` in {"abx", "bcx", "dx"}, in letter order."""
    choice = choice.lower()
    spec.require_presentable()
    X = x_generators(spec)
    if choice == "dx":
        families = [d_generators(spec), X]
    elif choice in ("abx", "bcx"):
        A, B, C = abc_generators(spec)
        families = [A, B, X] if choice == "abx" else [B, C, X]
    else:
        raise ValueError(f"unknown generator choice {choice!r}")
    out = {}
    for fam in families:
        out.update(fam.as_dict())
    return out


def all_families(spec: BlockSpec) -> list[GeneratorFamily]:
    spec.require_presentable()
    A, B, C = abc_generators(spec)
    return [x_generators(spec), A, B, C, d_generators(spec)]


def decompose(spec: BlockSpec, alpha: PartialPerm):
    """Split a member into (theta, gamma) with psi(theta) * gamma == alpha.

    theta is the induced block map (in POI_k), gamma a unit that undoes the
    block shift on each image block and fixes every point outside Im(alpha).
    """
    if not is_member(spec, alpha):
        raise NotAMember(f"{alpha} is not in POI_{{{spec}}}")
    theta = block_map(spec, alpha)
    m = spec.m
    images = list(range(1, spec.n + 1))
    for i, j in theta.pairs():
        for x in spec.block(j):
            images[x - 1] = alpha(x + (i - j) * m)
    return theta, PartialPerm(tuple(images))


# Rebasing a partition-respecting monoid onto interval form.

def interval_partition(sizes) -> list[range]:
    """Consecutive intervals of {1..sum(sizes)} with the given lengths."""
    blocks, start = [], 1
    for c in sizes:
        if c < 1:
            raise ValueError("class sizes must be positive")
        blocks.append(range(start, start + c))
        start += c
    return blocks


def canonical_sigma(n: int, classes) -> PartialPerm:
    """The bijection sending the i-th class onto the i-th interval, monotone on each class."""
    classes = [sorted(c) for c in classes]
    targets = interval_partition([len(c) for c in classes])
    pairs = [(x, y) for c, t in zip(classes, targets) for x, y in zip(c, t)]
    if sorted(x for x, _ in pairs) != list(range(1, n + 1)):
        raise ValueError("classes must partition 1..n")
    return make_pperm(n, pairs)


def source_partition(n: int, sizes, sigma: PartialPerm) -> list[frozenset[int]]:
    """The classes carried onto consecutive intervals by ``sigma``."""
    sizes = list(sizes)
    if sum(sizes) != n:
        raise ValueError(f"class sizes {sizes} do not sum to {n}")
    if sigma.degree != n or not sigma.is_full():
        raise ValueError("sigma must be a permutation of 1..n")
    back = inverse(sigma)
    return [frozenset(back(y) for y in block) for block in interval_partition(sizes)]


def rebase(n: int, sizes, sigma: PartialPerm, alpha: PartialPerm) -> PartialPerm:
    """Conjugate: alpha -> sigma^-1 alpha sigma."""
    source_partition(n, sizes, sigma)
    if alpha.degree != n:
        raise PartialPermError(f"alpha has degree {alpha.degree}, need {n}")
    return compose(compose(inverse(sigma), alpha), sigma)


def random_member(spec: BlockSpec, rng: random.Random) -> PartialPerm:
    """A member drawn with J-class weights proportional to |J_t|."""
    k, m = spec.k, spec.m
    weights = [math.comb(k, t) ** 2 * math.factorial(m) ** t for t in range(k + 1)]
    t = rng.choices(range(k + 1), weights=weights)[0]
    dom = sorted(rng.sample(range(1, k + 1), t))
    img = sorted(rng.sample(range(1, k + 1), t))
    pairs = []
    for i, j in zip(dom, img):
        targets = list(spec.block(j))
        rng.shuffle(targets)
        pairs.extend(zip(spec.block(i), targets))
    return make_pperm(spec.n, pairs)


def random_unit(spec: BlockSpec, rng: random.Random) -> PartialPerm:
    images = []
    for block in spec.blocks():
        pts = list(block)
        rng.shuffle(pts)
        images.extend(pts)
    return PartialPerm(tuple(images))
