"""The desk-scale acceptance checks, runnable from the CLI (``poikm selftest``)."""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass

from .blocks import (
    BlockSpec,
    abc_generators,
    bar_embed,
    canonical_sigma,
    d_generators,
    decompose,
    generator_set,
    interval_partition,
    is_member,
    is_member_for,
    psi_embed,
    random_member,
    rebase,
)
from .congruence import quotient_enumerate
from .enumeration import (
    enumerate_monoid,
    green_summary,
    j_class_size,
    membership_filter,
    minimal_generating_size,
    rank_lower_bound_check,
    size_formula,
)
from .pperm import (
    PartialPerm,
    all_partial_perms,
    compose,
    empty,
    identity,
    inverse,
)
from .presentations import (
    FAMILIES,
    PRESETS,
    build_family,
    build_preset,
    check_relations,
    nominal_family_count,
    nominal_total,
    preset_families,
    product_presentation,
    sm_presentation,
)
from .verify import verify_presentation

SIZE_SPECS = [(2, 2), (3, 2), (2, 3), (4, 2), (2, 4), (3, 3)]
SMALL_SPECS = [(2, 2), (3, 2), (2, 3)]
SEED = 20190529
RANDOM_CASES = 1000


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} criterion={self.number} {self.title}: {self.detail} ({self.seconds:.2f}s)"


def _timed(number, title):
    def wrap(fn):
        def run() -> CriterionResult:
            start = time.perf_counter()
            passed, detail = fn()
            return CriterionResult(number, title, passed, detail, time.perf_counter() - start)
        run.number = number
        run.title = title
        return run
    return wrap


@_timed(1, "size formula")
def criterion_1():
    start = time.perf_counter()
    notes, ok = [], True
    for k, m in SIZE_SPECS:
        spec = BlockSpec(k, m)
        table = enumerate_monoid(spec.n, generator_set(spec, "dx").values())
        target = size_formula(k, m)
        good = len(table) == target
        if spec.n <= 6:
            good &= sorted(table.elements) == membership_filter(spec)
        ok &= good
        notes.append(f"{spec}:{len(table)}/{target}")
    elapsed = time.perf_counter() - start
    ok &= elapsed < 60
    return ok, " ".join(notes)


@_timed(2, "generating sets coincide")
def criterion_2():
    ok, notes = True, []
    for k, m in SIZE_SPECS:
        spec = BlockSpec(k, m)
        sets = [enumerate_monoid(spec.n, generator_set(spec, g).values()).element_set()
                for g in ("abx", "bcx", "dx")]
        good = sets[0] == sets[1] == sets[2]
        ok &= good
        notes.append(f"{spec}:{'=' if good else '!='}")
    return ok, " ".join(notes)


@_timed(3, "J-classes and Green's relations")
def criterion_3():
    ok, notes = True, []
    for k, m in SMALL_SPECS:
        spec = BlockSpec(k, m)
        table = enumerate_monoid(spec.n, generator_set(spec, "dx").values())
        summary = green_summary(spec, table, definitional=(k, m) == (2, 2))
        good = summary.passed and summary.j_sizes == {
            t: j_class_size(k, m, t) for t in range(k + 1)}
        ok &= good
        sizes = ",".join(str(summary.j_sizes[t]) for t in sorted(summary.j_sizes))
        notes.append(f"{spec}:[{sizes}]")
    return ok, " ".join(notes)


@_timed(4, "rank 2k")
def criterion_4():
    start = time.perf_counter()
    spec = BlockSpec(2, 2)
    table = enumerate_monoid(spec.n, generator_set(spec, "dx").values())
    search = minimal_generating_size(table, search_cap=2 * spec.k, spec=spec)
    ok = search.size == 4
    notes = [f"2x2 exhaustive={search.size}"]
    for (k, m), unit_rank in [((3, 2), 3), ((2, 3), 2)]:
        spec = BlockSpec(k, m)
        gens = list(generator_set(spec, "dx").values())
        table = enumerate_monoid(spec.n, gens)
        verdict = rank_lower_bound_check(spec, table, gens)
        good = (verdict.certifies_rank and verdict.unit_group_rank == unit_rank
                and verdict.candidate_size == 2 * k)
        ok &= good
        notes.append(f"{spec} bound={verdict.lower_bound} unit_rank={verdict.unit_group_rank}")
    ok &= time.perf_counter() - start < 60
    return ok, " ".join(notes)


@_timed(5, "relations hold under phi")
def criterion_5():
    failures, instances, relations = 0, 0, 0
    for k in range(2, 5):
        for m in range(2, 5):
            for preset in PRESETS:
                pres, phi = build_preset(k, m, preset)
                report = check_relations(pres, phi)
                failures += len(report.failures)
                instances += 1
                relations += report.total
    return failures == 0, f"{instances} instances, {relations} relations, {failures} failures"


@_timed(6, "relation counts")
def criterion_6():
    bad = []
    for k in range(2, 7):
        for m in range(3, 7):
            for fam in FAMILIES:
                if len(build_family(k, m, fam)) != nominal_family_count(k, m, fam):
                    bad.append(f"{fam}@{k}x{m}")
            for preset in PRESETS:
                total = sum(len(build_family(k, m, f)) for f in preset_families(preset))
                if total != nominal_total(k, m, preset):
                    bad.append(f"{preset}@{k}x{m}")
        for preset in PRESETS:
            total = sum(len(build_family(k, 2, f)) for f in preset_families(preset))
            if total != nominal_total(k, 2, preset) + k:
                bad.append(f"{preset}@{k}x2 (m=2 deviation)")
    return not bad, "all closed forms match" if not bad else "mismatch: " + " ".join(bad)


@_timed(7, "presentations define POI_{k x m}")
def criterion_7():
    ok, notes = True, []
    for k, m in SMALL_SPECS:
        spec = BlockSpec(k, m)
        for preset in PRESETS:
            start = time.perf_counter()
            verdict = verify_presentation(spec, preset, bound=10**4)
            good = verdict.passed and verdict.quotient == size_formula(k, m)
            good &= time.perf_counter() - start < 60
            ok &= good
            notes.append(f"{preset}@{spec}:{verdict.quotient}")
    return ok, " ".join(notes)


@_timed(8, "S_m presentations")
def criterion_8():
    ok, notes = True, []
    for m in (2, 3, 4):
        for variant in ("ab", "bc"):
            size = quotient_enumerate(sm_presentation(m, variant), 1000).size
            ok &= size == math.factorial(m)
            notes.append(f"S{m}/{variant}:{size}")
    for m in (2, 3):
        for variant in ("ab", "bc"):
            p = sm_presentation(m, variant)
            size = quotient_enumerate(product_presentation(p, p), 1000).size
            ok &= size == math.factorial(m) ** 2
            notes.append(f"S{m}^2/{variant}:{size}")
    return ok, " ".join(notes)


@_timed(9, "decomposition alpha = psi(theta) gamma")
def criterion_9():
    checked, bad = 0, 0
    for k, m in [(2, 2), (3, 2)]:
        spec = BlockSpec(k, m)
        for alpha in enumerate_monoid(spec.n, generator_set(spec, "dx").values()).elements:
            theta, gamma = decompose(spec, alpha)
            blown = psi_embed(spec, theta)
            outside = set(range(1, spec.n + 1)) - blown.image
            good = (compose(blown, gamma) == alpha and gamma.is_full()
                    and is_member(spec, gamma) and all(gamma(x) == x for x in outside))
            bad += not good
            checked += 1
    return bad == 0, f"{checked} members, {bad} failures"


def order_preserving_maps(k: int) -> list[PartialPerm]:
    return [p for p in all_partial_perms(k) if p.is_order_preserving()]


def _pperm_axioms(alpha, beta, gamma) -> bool:
    inv = inverse(alpha)
    return (compose(alpha, compose(inv, alpha)) == alpha
            and compose(inv, compose(alpha, inv)) == inv
            and inverse(inv) == alpha
            and compose(compose(alpha, beta), gamma) == compose(alpha, compose(beta, gamma))
            and compose(alpha, beta).rank <= min(alpha.rank, beta.rank))


def property_failures(spec: BlockSpec, members, pairs) -> list[str]:
    """Object-level properties over ``members`` and (alpha, beta, gamma) triples."""
    failed = []
    for alpha, beta, gamma in pairs:
        if not _pperm_axioms(alpha, beta, gamma):
            failed.append("inverse-monoid axioms")
        if not (is_member(spec, compose(alpha, beta)) and is_member(spec, inverse(alpha))):
            failed.append("membership closure")
    idempotents = [e for e in members if compose(e, e) == e]
    for e in idempotents:
        if not e.is_idempotent():
            failed.append("idempotent is a partial identity")
    for e, f in itertools.islice(itertools.combinations(idempotents, 2), 5000):
        if compose(e, f) != compose(f, e):
            failed.append("idempotents commute")
    return sorted(set(failed))


def _recovery_ok(spec: BlockSpec) -> bool:
    _, B, C = abc_generators(spec)
    D = d_generators(spec).members
    k, m = spec.k, spec.m
    ok = D[k - 1] ** m == C.members[0]
    for i in range(k):
        if i < k - 1:
            ok &= D[i] ** m == C.members[i + 1]
        ok &= D[i] ** ((m - 1) ** 2) == B.members[i]
        ok &= B.members[i] ** (m - 1) == D[i] ** (m - 1)
        ok &= D[i] ** (m * (m - 1)) == identity(spec.n)
    return ok


def _bar_checks(spec: BlockSpec, rng, exhaustive: bool) -> list[str]:
    failed = []
    sm = [p for p in all_partial_perms(spec.m) if p.is_full()]
    tuples = list(itertools.product(sm, repeat=spec.k))
    images = {}
    for z in tuples:
        images[bar_embed(spec, z)] = z
    units = [e for e in membership_filter(spec)] if spec.n <= 6 else None
    if len(images) != len(tuples):
        failed.append("bar injective")
    if units is not None and set(images) != {u for u in units if u.rank == spec.n}:
        failed.append("bar onto units")
    if len(images) != math.factorial(spec.m) ** spec.k:
        failed.append("|units| = (m!)^k")
    if exhaustive:
        pairs = itertools.product(tuples, repeat=2)
    else:
        pairs = ((rng.choice(tuples), rng.choice(tuples)) for _ in range(RANDOM_CASES))
    for z, w in pairs:
        zw = [compose(a, b) for a, b in zip(z, w)]
        if bar_embed(spec, zw) != compose(bar_embed(spec, z), bar_embed(spec, w)):
            failed.append("bar homomorphism")
            break
    return failed


def _psi_checks(spec: BlockSpec) -> list[str]:
    failed = []
    ops = order_preserving_maps(spec.k)
    blown = {psi_embed(spec, t): t for t in ops}
    if len(blown) != len(ops):
        failed.append("psi injective")
    for t1, t2 in itertools.product(ops, repeat=2):
        if psi_embed(spec, compose(t1, t2)) != compose(psi_embed(spec, t1), psi_embed(spec, t2)):
            failed.append("psi homomorphism")
            break
    if spec.n <= 6:
        target = {a for a in membership_filter(spec) if a.is_order_preserving()}
        if set(blown) != target:
            failed.append("Im(psi) = order-preserving members")
    return failed


def _rebase_checks(rng) -> list[str]:
    failed = []
    # a non-uniform ordered partition, exhaustively: sizes (1, 2, 2) on 5 points
    classes = [{3}, {1, 5}, {2, 4}]
    sizes = [len(c) for c in classes]
    sigma = canonical_sigma(5, classes)
    target = interval_partition(sizes)
    everything = list(all_partial_perms(5))
    source = [a for a in everything if is_member_for(classes, a)]
    rebased = [rebase(5, sizes, sigma, a) for a in source]
    interval_members = {a for a in everything if is_member_for(target, a)}
    if set(rebased) != interval_members or len(set(rebased)) != len(source):
        failed.append("rebase bijective onto interval monoid")
    for _ in range(RANDOM_CASES):
        a, b = rng.choice(source), rng.choice(source)
        if rebase(5, sizes, sigma, compose(a, b)) != compose(
                rebase(5, sizes, sigma, a), rebase(5, sizes, sigma, b)):
            failed.append("rebase homomorphism")
            break
    # uniform partitions scrambled by a random permutation
    for k, m in [(2, 2), (3, 2), (2, 3), (3, 3)]:
        spec = BlockSpec(k, m)
        n = spec.n
        scramble = list(range(1, n + 1))
        rng.shuffle(scramble)
        perm = PartialPerm(tuple(scramble))
        # tau carries the interval partition onto the scrambled classes
        classes = [{perm(x) for x in block} for block in spec.blocks()]
        sigma = canonical_sigma(n, classes)
        sizes = [m] * k
        for _ in range(RANDOM_CASES):
            # a source member is sigma beta sigma^-1 for an interval member beta
            beta = random_member(spec, rng)
            alpha = compose(compose(sigma, beta), inverse(sigma))
            if not is_member_for(classes, alpha):
                failed.append("conjugated member is source member")
                break
            if not is_member(spec, rebase(n, sizes, sigma, alpha)):
                failed.append("rebase lands in POI_{k x m}")
                break
            gamma = compose(compose(sigma, random_member(spec, rng)), inverse(sigma))
            if rebase(n, sizes, sigma, compose(alpha, gamma)) != compose(
                    rebase(n, sizes, sigma, alpha), rebase(n, sizes, sigma, gamma)):
                failed.append("rebase homomorphism")
                break
    return failed


@_timed(10, "property suites")
def criterion_10():
    rng = random.Random(SEED)
    failed = []
    spec = BlockSpec(2, 2)
    members = membership_filter(spec)
    triples = itertools.product(members, repeat=3)
    failed += [f"2x2 {f}" for f in property_failures(spec, members, triples)]
    failed += [f"2x2 {f}" for f in _bar_checks(spec, rng, exhaustive=True)]
    for k in (1, 2, 3):
        failed += [f"psi k={k} {f}" for f in _psi_checks(BlockSpec(k, 2))]
    for k, m in [(3, 2), (2, 3), (4, 2), (3, 3)]:
        spec = BlockSpec(k, m)
        sample = [random_member(spec, rng) for _ in range(3 * RANDOM_CASES)]
        triples = zip(sample[0::3], sample[1::3], sample[2::3])
        failed += [f"{spec} {f}" for f in property_failures(spec, sample, triples)]
        failed += [f"{spec} {f}" for f in _bar_checks(spec, rng, exhaustive=False)]
        if not is_member(spec, empty(spec.n)):
            failed.append(f"{spec} empty map is a member")
    for k, m in [(2, 2), (3, 2), (2, 3), (4, 2), (3, 3), (2, 4)]:
        if not _recovery_ok(BlockSpec(k, m)):
            failed.append(f"{k}x{m} d-to-b/c recovery")
    failed += _rebase_checks(rng)
    detail = "all properties hold" if not failed else "failed: " + "; ".join(failed)
    return not failed, detail


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def run_all(only=None) -> list[CriterionResult]:
    return [c() for c in CRITERIA if only is None or c.number in only]
