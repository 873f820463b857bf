"""Closure of generated submonoids of partial permutations, counting and rank.

``enumerate_monoid`` is a breadth-first (Froidure-Pin style, without the
rewriting bookkeeping) closure: elements come out in shortlex order of
their least word over the generator indices, the identity first.
"""

from __future__ import annotations

import itertools
import math
import re
from collections import Counter, deque
from dataclasses import dataclass, field

import networkx as nx

from .blocks import BlockSpec, is_member
from .pperm import (
    PartialPerm,
    PartialPermError,
    all_partial_perms,
    compose,
    from_text,
    identity,
    to_text,
)

DEFAULT_LIMIT = 10**7


class EnumerationOverflow(RuntimeError):
    pass


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class MonoidTable:
    degree: int
    generators: tuple[PartialPerm, ...]
    elements: tuple[PartialPerm, ...]
    words: tuple[tuple[int, ...], ...]
    right_table: tuple[tuple[int, ...], ...]
    _index: dict = field(default=None, repr=False)

    def __len__(self):
        return len(self.elements)

    def index(self, alpha: PartialPerm) -> int:
        return self._index[alpha]

    def __contains__(self, alpha) -> bool:
        return alpha in self._index

    def element_set(self) -> frozenset[PartialPerm]:
        return frozenset(self.elements)

    def evaluate(self, word) -> PartialPerm:
        out = identity(self.degree)
        for g in word:
            out = compose(out, self.generators[g])
        return out


def enumerate_monoid(n: int, generators, limit: int = DEFAULT_LIMIT) -> MonoidTable:
    """Submonoid of partial permutations of degree ``n`` generated by ``generators``."""
    gens = tuple(generators)
    for g in gens:
        if g.degree != n:
            raise PartialPermError(f"generator {g} has degree {g.degree}, need {n}")
    one = identity(n)
    elements = [one]
    words = [()]
    index = {one: 0}
    table = []
    i = 0
    while i < len(elements):
        alpha = elements[i]
        row = []
        for g_idx, g in enumerate(gens):
            beta = compose(alpha, g)
            j = index.get(beta)
            if j is None:
                j = len(elements)
                if j >= limit:
                    raise EnumerationOverflow(f"more than {limit} elements")
                index[beta] = j
                elements.append(beta)
                words.append(words[i] + (g_idx,))
            row.append(j)
        table.append(tuple(row))
        i += 1
    return MonoidTable(n, gens, tuple(elements), tuple(words), tuple(table), index)


def membership_filter(spec: BlockSpec) -> list[PartialPerm]:
    """Brute-force POI_{k x m}: every partial permutation of degree n that is a member."""
    return sorted(p for p in all_partial_perms(spec.n) if is_member(spec, p))


def size_formula(k: int, m: int) -> int:
    """sum_t C(k,t)^2 (m!)^t."""
    if k < 1 or m < 1:
        raise ValueError("need k, m >= 1")
    f = math.factorial(m)
    return sum(math.comb(k, t) ** 2 * f**t for t in range(k + 1))


def j_class_size(k: int, m: int, t: int) -> int:
    if not 0 <= t <= k:
        raise ValueError(f"t = {t} outside 0..{k}")
    return math.comb(k, t) ** 2 * math.factorial(m) ** t


# Table export.

def _word_text(word) -> str:
    return "".join(f"g{g}" for g in word) or "1"


def write_table(table: MonoidTable) -> str:
    lines = [f"degree={table.degree} size={len(table)} gens={len(table.generators)}"]
    for i, (e, w) in enumerate(zip(table.elements, table.words)):
        lines.append(f"{i} {_word_text(w)} {to_text(e)}")
    for row in table.right_table:
        lines.append(" ".join(map(str, row)))
    return "\n".join(lines) + "\n"


def read_table(text: str) -> MonoidTable:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    header = dict(item.split("=") for item in lines[0].split())
    n, size, g = int(header["degree"]), int(header["size"]), int(header["gens"])
    elements, words = [], []
    for ln in lines[1:1 + size]:
        _, word, perm = ln.split()
        words.append(() if word == "1" else tuple(int(x) for x in re.findall(r"g(\d+)", word)))
        elements.append(from_text(perm))
    rows = tuple(tuple(int(x) for x in ln.split()) for ln in lines[1 + size:1 + 2 * size])
    if len(rows) != size or any(len(r) != g for r in rows):
        raise ValueError("malformed right multiplication table")
    # generator j is the element reached from the identity by letter j
    gens = tuple(elements[rows[0][j]] for j in range(g))
    index = {e: i for i, e in enumerate(elements)}
    return MonoidTable(n, gens, tuple(elements), tuple(words), rows, index)


# Green's relations.

def _left_table(table: MonoidTable) -> list[list[int]]:
    return [[table.index(compose(g, e)) for g in table.generators] for e in table.elements]


def _partition_from(keys) -> frozenset[frozenset[int]]:
    groups = {}
    for i, key in enumerate(keys):
        groups.setdefault(key, set()).add(i)
    return frozenset(frozenset(g) for g in groups.values())


def _scc_partition(graph: nx.DiGraph) -> frozenset[frozenset[int]]:
    return frozenset(frozenset(c) for c in nx.strongly_connected_components(graph))


@dataclass
class GreenSummary:
    spec: BlockSpec
    size: int
    j_sizes: dict[int, int]
    expected_j_sizes: dict[int, int]
    r_classes_per_j: dict[int, int]
    l_classes_per_j: dict[int, int]
    h_identity_size: int
    checks: dict[str, bool]

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def lines(self) -> list[str]:
        out = [f"spec={self.spec} size={self.size}"]
        for t in sorted(self.j_sizes):
            out.append(
                f"J{t} size={self.j_sizes[t]} expected={self.expected_j_sizes[t]} "
                f"r_classes={self.r_classes_per_j[t]} l_classes={self.l_classes_per_j[t]}")
        out.append(f"H_identity size={self.h_identity_size}")
        for name, ok in self.checks.items():
            out.append(f"{'PASS' if ok else 'FAIL'} {name}")
        return out


def green_summary(spec: BlockSpec, table: MonoidTable, definitional: bool = True) -> GreenSummary:
    """Compare Green's relations of an enumerated POI_{k x m} with their characterisations.

    R, L, H, J fingerprints are equal domain, equal image, both, and equal
    image size.  With ``definitional`` the classes are also computed as
    strongly connected components of the right, left and two-sided Cayley
    graphs and compared with the fingerprints; the J-order is read off the
    condensation of the two-sided graph.
    """
    k, m = spec.k, spec.m
    if table.degree != spec.n:
        raise ValueError(f"table degree {table.degree} does not match {spec}")
    if len(table) != size_formula(k, m) or not all(is_member(spec, e) for e in table.elements):
        raise ValueError(f"table does not enumerate POI_{{{spec}}}")
    els = table.elements
    ranks = [e.rank for e in els]
    j_sizes = Counter(r // m for r in ranks)
    checks = {
        "image sizes are multiples of m": all(r % m == 0 for r in ranks),
        "k+1 J-classes": sorted(j_sizes) == list(range(k + 1)),
    }
    expected = {t: j_class_size(k, m, t) for t in range(k + 1)}
    checks["|J_t| matches formula"] = all(j_sizes.get(t, 0) == expected[t] for t in expected)

    r_per_j = {t: len({e.domain for e in els if e.rank == t * m}) for t in range(k + 1)}
    l_per_j = {t: len({e.image for e in els if e.rank == t * m}) for t in range(k + 1)}
    checks["R-classes in J_t = C(k,t)"] = all(r_per_j[t] == math.comb(k, t) for t in r_per_j)
    checks["L-classes in J_t = C(k,t)"] = all(l_per_j[t] == math.comb(k, t) for t in l_per_j)

    one = identity(spec.n)
    h_one = [e for e in els if e.domain == one.domain and e.image == one.image]
    units = [e for e in els if e.rank == spec.n]
    checks["H-class of identity is the unit group"] = (
        set(h_one) == set(units) and len(units) == math.factorial(m) ** k)

    if definitional:
        n_el = len(els)
        right = nx.DiGraph()
        right.add_nodes_from(range(n_el))
        left = nx.DiGraph()
        left.add_nodes_from(range(n_el))
        for i, row in enumerate(table.right_table):
            right.add_edges_from((i, j) for j in row)
        for i, row in enumerate(_left_table(table)):
            left.add_edges_from((i, j) for j in row)
        both = nx.compose(right, left)
        r_cls = _scc_partition(right)
        l_cls = _scc_partition(left)
        j_cls = _scc_partition(both)
        h_cls = frozenset(
            frozenset(a & b) for a in r_cls for b in l_cls if a & b)
        checks["R <=> equal domain"] = r_cls == _partition_from(e.domain for e in els)
        checks["L <=> equal image"] = l_cls == _partition_from(e.image for e in els)
        checks["H <=> equal domain and image"] = h_cls == _partition_from(
            (e.domain, e.image) for e in els)
        checks["J <=> equal image size"] = j_cls == _partition_from(ranks)
        checks["J-classes form the chain J_0 < ... < J_k"] = _is_rank_chain(both, ranks, m)
    return GreenSummary(spec, len(els), dict(sorted(j_sizes.items())), expected,
                        r_per_j, l_per_j, len(h_one), checks)


def _is_rank_chain(graph: nx.DiGraph, ranks, m) -> bool:
    # u <=_J v iff u is reachable from v by left/right multiplications
    cond = nx.condensation(graph)
    level = {c: ranks[next(iter(cond.nodes[c]["members"]))] // m for c in cond}
    closure = {c: nx.descendants(cond, c) for c in cond}
    for c in cond:
        below = {level[d] for d in closure[c]}
        if below != set(range(level[c])):
            return False
    return True


# Rank.

@dataclass
class GeneratingSearch:
    size: int | None
    witness: tuple[int, ...] | None
    subsets_checked: int


def _generates(mult, subset, n_el: int) -> bool:
    seen = {0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        row = mult[i]
        for s in subset:
            j = row[s]
            if j not in seen:
                seen.add(j)
                queue.append(j)
    return len(seen) == n_el


def multiplication_table(table: MonoidTable) -> list[list[int]]:
    els = table.elements
    return [[table.index(compose(a, b)) for b in els] for a in els]


def minimal_generating_size(table: MonoidTable, search_cap: int, budget: int = 10**6,
                            spec: BlockSpec | None = None) -> GeneratingSearch:
    """Smallest number of elements generating ``table`` as a monoid, by exhaustive search.

    The identity is never needed, so only non-identity elements are tried.
    Passing the ``spec`` of a POI_{k x m} table enables the sound pruning that
    every generating set holds, for each block j, an element with image
    {1..n} minus I_j.  Returns size None when nothing up to ``search_cap`` works.
    """
    pool = list(range(1, len(table)))
    if len(table) == 1:
        return GeneratingSearch(0, (), 1)
    mult = multiplication_table(table)
    required = []
    if spec is not None:
        full = frozenset(range(1, spec.n + 1))
        required = [full - frozenset(spec.block(j)) for j in range(1, spec.k + 1)]
    checked = 0
    spent = 0
    for s in range(0, min(search_cap, len(pool)) + 1):
        spent += math.comb(len(pool), s)
        if spent > budget:
            raise BudgetExceeded(
                f"searching subsets of size <= {s} out of {len(pool)} exceeds "
                f"budget {budget}; use rank_lower_bound_check instead")
        for subset in itertools.combinations(pool, s):
            if required:
                images = {table.elements[i].image for i in subset}
                if not all(r in images for r in required):
                    continue
            checked += 1
            if _generates(mult, subset, len(table)):
                return GeneratingSearch(s, subset, checked)
    return GeneratingSearch(None, None, checked)


@dataclass
class RankVerdict:
    spec: BlockSpec
    candidate_size: int
    generates: bool
    condition_i: bool
    missing_images: list[int]
    condition_ii: bool
    unit_group_order: int
    unit_group_rank: int | None
    lower_bound: int | None

    @property
    def certifies_rank(self) -> bool:
        return (self.generates and self.condition_i and self.condition_ii
                and self.lower_bound is not None
                and self.candidate_size == self.lower_bound)

    @property
    def failing(self) -> list[str]:
        out = []
        if not self.condition_i:
            out.append("condition (i): missing image-deficient elements for blocks "
                       + ",".join(map(str, self.missing_images)))
        if not self.condition_ii:
            out.append("condition (ii): units do not generate the unit group")
        if not self.generates:
            out.append("candidate does not generate the monoid")
        return out

    def lines(self) -> list[str]:
        return [
            f"spec={self.spec} candidate={self.candidate_size} generates={self.generates}",
            f"condition_i={'PASS' if self.condition_i else 'FAIL'}",
            f"condition_ii={'PASS' if self.condition_ii else 'FAIL'} "
            f"unit_order={self.unit_group_order} unit_rank={self.unit_group_rank}",
            f"lower_bound={self.lower_bound} certifies_rank={self.certifies_rank}",
        ]


def _closure_size(n: int, gens) -> int:
    return len(enumerate_monoid(n, gens))


def rank_lower_bound_check(spec: BlockSpec, table: MonoidTable, candidate,
                           unit_search_budget: int = 10**6) -> RankVerdict:
    """Check the two necessary conditions every generating set of POI_{k x m} meets.

    (i) for each block j some candidate has image {1..n} minus I_j;
    (ii) the candidate units generate the unit group.  The unit group rank
    is found by exhaustive search, so the lower bound k + rank(units) is
    computed rather than assumed.
    """
    candidate = list(dict.fromkeys(candidate))
    for c in candidate:
        if c not in table:
            raise ValueError(f"{c} is not an element of the table")
    n = spec.n
    full = frozenset(range(1, n + 1))
    images = {c.image for c in candidate}
    missing = [j for j in range(1, spec.k + 1) if full - frozenset(spec.block(j)) not in images]

    units = [e for e in table.elements if e.rank == n]
    cand_units = [c for c in candidate if c.rank == n]
    cond_ii = _closure_size(n, cand_units) == len(units)

    unit_table = enumerate_monoid(n, units)
    if cond_ii:
        # the candidate units already generate, so only smaller sets need ruling out
        known = len([u for u in cand_units if u != identity(n)])
        search = minimal_generating_size(unit_table, search_cap=known - 1,
                                         budget=unit_search_budget)
        unit_rank = known if search.size is None else search.size
    else:
        search = minimal_generating_size(unit_table, search_cap=len(units),
                                         budget=unit_search_budget)
        unit_rank = search.size
    lower = None if unit_rank is None else spec.k + unit_rank
    generates = _closure_size(n, candidate) == len(table)
    return RankVerdict(spec, len(candidate), generates, not missing, missing, cond_ii,
                       len(units), unit_rank, lower)
