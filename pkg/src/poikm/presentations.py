"""Monoid presentations for S_m, S_m^k, POI_k and POI_{k x m}.

Letters are plain strings (``"a1"``, ``"x0"``, or any name for ad-hoc
presentations) and words are tuples of letters; the empty tuple is the
identity word.  Relation families follow the displayed lists literally,
including their index ranges, so at m = 2 the families R5, U5, V5 are
empty and the totals exceed the closed-form counts by k.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .blocks import BlockSpec, UnsupportedParameters, generator_set
from .pperm import PartialPerm, compose, from_text, identity, to_text

Word = tuple

PRESETS = ("ABX", "BCX", "DX")
FAMILIES = ("R", "W", "R'", "U", "U'", "V", "V'")


class UnassignedLetter(KeyError):
    pass


@dataclass(frozen=True)
class Relation:
    lhs: Word
    rhs: Word
    tag: str = ""

    def letters(self) -> set[str]:
        return set(self.lhs) | set(self.rhs)

    def __str__(self) -> str:
        return f"{self.tag}: {word_text(self.lhs)} = {word_text(self.rhs)}"


@dataclass(frozen=True)
class Presentation:
    alphabet: tuple[str, ...]
    relations: tuple[Relation, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "relations", tuple(self.relations))
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("repeated letter in alphabet")
        known = set(self.alphabet)
        for rel in self.relations:
            stray = rel.letters() - known
            if stray:
                raise ValueError(f"relation {rel} uses letters {sorted(stray)} outside the alphabet")

    def with_relations(self, relations) -> Presentation:
        return Presentation(self.alphabet, tuple(relations))


def word(*parts) -> Word:
    """Concatenate letters and words: ``word("a", ("b", "b"))``."""
    out = []
    for p in parts:
        if isinstance(p, str):
            out.append(p)
        else:
            out.extend(p)
    return tuple(out)


def power(w, e: int) -> Word:
    return word(w) * e


def word_text(w: Word) -> str:
    return " ".join(w) if w else "1"


# S_m.

def sm_presentation(m: int, variant: str = "ab", letters=None) -> Presentation:
    """The two-generator presentations of S_m on (a, b) or (b, c).

    ``letters`` renames the two generators, in the order of ``variant``.
    """
    if m < 2:
        raise UnsupportedParameters(f"need m >= 2, got {m}")
    variant = variant.lower()
    if variant not in ("ab", "bc"):
        raise ValueError(f"unknown variant {variant!r}")
    first, second = letters or tuple(variant)
    one = ()
    rels = []
    if variant == "ab":
        a, b = first, second
        rels.append(Relation(power(a, 2), one, "S1"))
        rels.append(Relation(power(b, m), one, "S2"))
        rels.append(Relation(power((b, a), m - 1), one, "S3"))
        rels.append(Relation(power(word(a, power(b, m - 1), a, b), 3), one, "S4"))
        for j in range(2, m - 1):
            rels.append(Relation(power(word(a, power(b, m - j), a, power(b, j)), 2), one, "S5"))
        return Presentation((a, b), rels)
    b, c = first, second
    rels.append(Relation(power(word(c, power(b, m - 1)), 2), one, "S1"))
    rels.append(Relation(power(b, m), one, "S2"))
    rels.append(Relation(power(word(b, c, power(b, m - 1)), m - 1), one, "S3"))
    rels.append(Relation(power(word(c, power(b, m - 2), c), 3), one, "S4"))
    for j in range(2, m - 1):
        rels.append(Relation(
            power(word(c, power(b, m - j - 1), c, power(b, j - 1)), 2), one, "S5"))
    return Presentation((b, c), rels)


def product_presentation(p1: Presentation, p2: Presentation, tag: str = "C") -> Presentation:
    """Presentation of the direct product: both relation sets plus cross commutations.

    Letters of ``p2`` clashing with ``p1`` get a ``'`` appended until unique.
    """
    taken = set(p1.alphabet)
    rename = {}
    for x in p2.alphabet:
        y = x
        while y in taken:
            y += "'"
        rename[x] = y
        taken.add(y)
    rels2 = [Relation(tuple(rename[x] for x in r.lhs), tuple(rename[x] for x in r.rhs), r.tag)
             for r in p2.relations]
    alpha2 = tuple(rename[x] for x in p2.alphabet)
    cross = [Relation((a, b), (b, a), tag) for a in p1.alphabet for b in alpha2]
    return Presentation(p1.alphabet + alpha2, list(p1.relations) + rels2 + cross)


# The relation families for POI_{k x m}.

def _a(i):
    return f"a{i}"


def _b(i):
    return f"b{i}"


def _c(i):
    return f"c{i}"


def _d(i):
    return f"d{i}"


def _x(i):
    return f"x{i}"


def _family_R(k, m):
    one = ()
    rels = []
    for i in range(1, k + 1):
        rels.append(Relation(power(_a(i), 2), one, "R1"))
    for i in range(1, k + 1):
        rels.append(Relation(power(_b(i), m), one, "R2"))
    for i in range(1, k + 1):
        rels.append(Relation(power((_b(i), _a(i)), m - 1), one, "R3"))
    for i in range(1, k + 1):
        rels.append(Relation(
            power(word(_a(i), power(_b(i), m - 1), _a(i), _b(i)), 3), one, "R4"))
    for i in range(1, k + 1):
        for j in range(2, m - 1):
            rels.append(Relation(
                power(word(_a(i), power(_b(i), m - j), _a(i), power(_b(i), j)), 2), one, "R5"))
    rels.extend(_commutations(k, _a, _b, "R6"))
    return rels


def _commutations(k, first, second, tag):
    rels = []
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            rels.append(Relation((first(i), first(j)), (first(j), first(i)), tag))
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            rels.append(Relation((second(i), second(j)), (second(j), second(i)), tag))
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            if i != j:
                rels.append(Relation((first(i), second(j)), (second(j), first(i)), tag))
    return rels


def _family_U(k, m):
    one = ()
    rels = []
    for i in range(1, k + 1):
        rels.append(Relation(power(word(_c(i), power(_b(i), m - 1)), 2), one, "U1"))
    for i in range(1, k + 1):
        rels.append(Relation(power(_b(i), m), one, "U2"))
    for i in range(1, k + 1):
        rels.append(Relation(
            power(word(_b(i), _c(i), power(_b(i), m - 1)), m - 1), one, "U3"))
    for i in range(1, k + 1):
        rels.append(Relation(power(word(_c(i), power(_b(i), m - 2), _c(i)), 3), one, "U4"))
    for i in range(1, k + 1):
        for j in range(2, m - 1):
            rels.append(Relation(
                power(word(_c(i), power(_b(i), m - j - 1), _c(i), power(_b(i), j - 1)), 2),
                one, "U5"))
    rels.extend(_commutations(k, _b, _c, "U6"))
    return rels


def _family_V(k, m):
    """The S_m^k relations over d_1..d_k, where c_1 = d_k^m, c_{i+1} = d_i^m, b_i = d_i^{(m-1)^2}."""
    one = ()
    sq = (m - 1) ** 2

    def dp(i, e):
        return power(_d(i), e)

    def cw(i):
        return dp(k, m) if i == 1 else dp(i - 1, m)

    rels = []
    # j runs over coordinates: the c_1 instance first, then c_{i+1} for 1 <= i <= k-1
    for j in range(1, k + 1):
        rels.append(Relation(power(word(cw(j), dp(j, m - 1)), 2), one, "V1"))
    for i in range(1, k + 1):
        rels.append(Relation(dp(i, m * (m - 1)), one, "V2"))
    for j in range(1, k + 1):
        rels.append(Relation(power(word(dp(j, sq), cw(j), dp(j, m - 1)), m - 1), one, "V3"))
    for j in range(1, k + 1):
        rels.append(Relation(power(word(cw(j), dp(j, sq * (m - 2)), cw(j)), 3), one, "V4"))
    for j in range(1, k + 1):
        for t in range(2, m - 1):
            rels.append(Relation(
                power(word(cw(j), dp(j, sq * (m - t - 1)), cw(j), dp(j, sq * (t - 1))), 2),
                one, "V5"))
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            rels.append(Relation(word(dp(i, m), dp(j, m)), word(dp(j, m), dp(i, m)), "V6"))
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            rels.append(Relation(word(dp(i, sq), dp(j, sq)), word(dp(j, sq), dp(i, sq)), "V6"))
    for i in range(2, k):
        rels.append(Relation(word(dp(i, sq), dp(k, m)), word(dp(k, m), dp(i, sq)), "V6"))
    for i in range(1, k + 1):
        for j in range(1, k):
            if i not in (j, j + 1):
                rels.append(Relation(word(dp(i, sq), dp(j, m)), word(dp(j, m), dp(i, sq)), "V6"))
    return rels


def _family_W(k):
    x = _x
    rels = []
    for i in range(1, k - 1):
        rels.append(Relation((x(i), x(0)), (x(0), x(i + 1)), "W1"))
    for i in range(1, k):
        for j in range(i + 2, k):
            rels.append(Relation((x(j), x(i)), (x(i), x(j)), "W2"))
    rels.append(Relation((x(0), x(0), x(1)), (x(0), x(0)), "W3"))
    rels.append(Relation((x(0), x(0)), (x(k - 1), x(0), x(0)), "W3"))
    for i in range(1, k - 1):
        rels.append(Relation((x(i + 1), x(i), x(i + 1)), (x(i + 1), x(i)), "W4"))
    for i in range(1, k - 1):
        rels.append(Relation((x(i + 1), x(i)), (x(i), x(i + 1), x(i)), "W4"))
    for i in range(k):
        cycle = tuple(x(j % k) for j in range(i, i + k))
        rels.append(Relation(cycle + (x(i),), (x(i),), "W5"))
    for i in range(1, k):
        rest = tuple(x(j % k) for j in range(i + 1, i + k))
        rels.append(Relation(rest + (x(i), x(i)), (x(i), x(i)), "W6"))
    return rels


def _family_prime(k, aw, bw, tag):
    """R', U', V' share one shape; ``aw(i)``/``bw(i)`` give the words standing for a_i, b_i."""
    x = _x
    t1, t2, t3, t4, t5, t6 = (f"{tag}{s}" for s in range(1, 7))
    rels = []
    for gw in (aw, bw):
        rels.append(Relation(word(gw(1), x(0)), (x(0),), t1))
    for gw in (aw, bw):
        for i in range(1, k):
            rels.append(Relation(word(x(0), gw(i)), word(gw(i + 1), x(0)), t2))
    for gw in (aw, bw):
        for i in range(0, k):
            rels.append(Relation(word(x(i), gw(k - i)), (x(i),), t3))
    for gw in (aw, bw):
        for i in range(2, k + 1):
            rels.append(Relation(word(gw(i), x(k - i + 1)), (x(k - i + 1),), t4))
    for gw in (aw, bw):
        for i in range(1, k):
            rels.append(Relation(word(x(i), gw(k - i + 1)), word(gw(k - i), x(i)), t5))
    for gw in (aw, bw):
        for i in range(1, k):
            for j in range(1, k + 1):
                if j not in (k - i, k - i + 1):
                    rels.append(Relation(word(x(i), gw(j)), word(gw(j), x(i)), t6))
    return rels


def build_family(k: int, m: int, family: str) -> list[Relation]:
    if family == "W":
        if k < 2:
            raise UnsupportedParameters(f"W needs k >= 2, got k = {k}")
        return _family_W(k)
    if k < 2 or m < 2:
        raise UnsupportedParameters(f"family {family} needs k, m >= 2, got {k}x{m}")
    if family == "R":
        return _family_R(k, m)
    if family == "U":
        return _family_U(k, m)
    if family == "V":
        return _family_V(k, m)
    if family == "R'":
        return _family_prime(k, lambda i: (_a(i),), lambda i: (_b(i),), "R'")
    if family == "U'":
        return _family_prime(
            k, lambda i: word(_c(i), power(_b(i), m - 1)), lambda i: (_b(i),), "U'")
    if family == "V'":
        sq = (m - 1) ** 2

        def aw(i):
            c = power(_d(k), m) if i == 1 else power(_d(i - 1), m)
            return word(c, power(_d(i), m - 1))

        return _family_prime(k, aw, lambda i: power(_d(i), sq), "V'")
    raise ValueError(f"unknown family {family!r}")


# Closed-form relation counts (valid for m >= 3).

def nominal_family_count(k: int, m: int, family: str) -> int:
    if family in ("R", "U"):
        return 2 * k * k + (m - 1) * k
    if family == "V":
        return 2 * k * k + (m - 2) * k
    if family in ("R'", "U'", "V'"):
        return 2 * k * k + 2 * k
    if family == "W":
        return (k * k + 5 * k - 4) // 2
    raise ValueError(f"unknown family {family!r}")


def nominal_total(k: int, m: int, preset: str) -> int:
    preset = preset.upper()
    if preset in ("ABX", "BCX"):
        return (9 * k * k + (2 * m + 7) * k - 4) // 2
    if preset == "DX":
        return (9 * k * k + (2 * m + 5) * k - 4) // 2
    raise ValueError(f"unknown preset {preset!r}")


_PRESET_PARTS = {
    "ABX": (("a", "b", "x"), ("R", "W", "R'"), "abx"),
    "BCX": (("b", "c", "x"), ("U", "W", "U'"), "bcx"),
    "DX": (("d", "x"), ("V", "W", "V'"), "dx"),
}


def preset_families(preset: str) -> tuple[str, ...]:
    return _PRESET_PARTS[preset.upper()][1]


@dataclass(frozen=True)
class InterpretationMap:
    """Letter -> partial permutation, all of one degree."""

    images: dict = field(default_factory=dict)
    degree: int | None = None

    def __post_init__(self):
        degrees = {p.degree for p in self.images.values()}
        if self.degree is not None:
            degrees.add(self.degree)
        if len(degrees) > 1:
            raise ValueError(f"mixed degrees {sorted(degrees)}")
        if self.degree is None:
            if not degrees:
                raise ValueError("degree needed for an empty assignment")
            object.__setattr__(self, "degree", degrees.pop())

    def __getitem__(self, letter: str) -> PartialPerm:
        try:
            return self.images[letter]
        except KeyError:
            raise UnassignedLetter(letter) from None

    def __contains__(self, letter) -> bool:
        return letter in self.images

    def replace(self, letter: str, value: PartialPerm) -> InterpretationMap:
        images = dict(self.images)
        images[letter] = value
        return InterpretationMap(images, self.degree)


def build_preset(k: int, m: int, preset: str):
    """(Presentation, InterpretationMap) for ABX, BCX or DX."""
    preset = preset.upper()
    if preset not in _PRESET_PARTS:
        raise ValueError(f"unknown preset {preset!r}")
    spec = BlockSpec(k, m)
    spec.require_presentable()
    _, families, gens = _PRESET_PARTS[preset]
    images = generator_set(spec, gens)
    relations = [r for fam in families for r in build_family(k, m, fam)]
    return Presentation(tuple(images), relations), InterpretationMap(images, spec.n)


def interpret(w: Word, phi: InterpretationMap) -> PartialPerm:
    out = identity(phi.degree)
    for letter in w:
        out = compose(out, phi[letter])
    return out


@dataclass
class RelationReport:
    total: int
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def failing_tags(self) -> list[str]:
        return sorted({rel.tag for rel, _ in self.failures})

    def lines(self) -> list[str]:
        out = [f"{'PASS' if self.passed else 'FAIL'} relations={self.total} "
               f"failures={len(self.failures)}"]
        out.extend(f"FAILED {rel} ({why})" for rel, why in self.failures)
        return out


def check_relations(presentation: Presentation, phi: InterpretationMap) -> RelationReport:
    """Evaluate both sides of every relation under ``phi``; failures are data."""
    report = RelationReport(len(presentation.relations))
    for rel in presentation.relations:
        try:
            left, right = interpret(rel.lhs, phi), interpret(rel.rhs, phi)
        except UnassignedLetter as exc:
            report.failures.append((rel, f"unassigned letter {exc.args[0]}"))
            continue
        if left != right:
            report.failures.append((rel, f"lhs -> {to_text(left)}, rhs -> {to_text(right)}"))
    return report


# File formats.

def write_presentation(p: Presentation) -> str:
    lines = [f"letters: {' '.join(p.alphabet)}"]
    for rel in p.relations:
        lines.append(f"rel {rel.tag}: {word_text(rel.lhs)} = {word_text(rel.rhs)}")
    return "\n".join(lines) + "\n"


def _parse_word(text: str) -> Word:
    parts = text.split()
    if parts == ["1"]:
        return ()
    return tuple(parts)


def read_presentation(text: str) -> Presentation:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("letters:"):
        raise ValueError("first line must be 'letters: ...'")
    alphabet = tuple(lines[0][len("letters:"):].split())
    rels = []
    for ln in lines[1:]:
        if not ln.startswith(("rel ", "rel:")):
            raise ValueError(f"bad relation line {ln!r}")
        tag, colon, body = ln[3:].partition(":")
        lhs, eq, rhs = body.partition("=")
        if not colon or not eq:
            raise ValueError(f"bad relation line {ln!r}")
        rels.append(Relation(_parse_word(lhs), _parse_word(rhs), tag.strip()))
    return Presentation(alphabet, rels)


def write_interpretation(phi: InterpretationMap) -> str:
    return "".join(f"{letter} := {to_text(p)}\n" for letter, p in phi.images.items())


def read_interpretation(text: str) -> InterpretationMap:
    images = {}
    for ln in text.splitlines():
        if not ln.strip():
            continue
        letter, sep, perm = ln.partition(":=")
        if not sep:
            raise ValueError(f"bad interpretation line {ln!r}")
        images[letter.strip()] = from_text(perm)
    return InterpretationMap(images)
