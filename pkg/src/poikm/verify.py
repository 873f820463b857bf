"""End-to-end check that a preset presentation defines POI_{k x m}.

Two conditions: every relation holds under phi (so phi factors through the
quotient, onto POI_{k x m} because the letter images generate it), and the
quotient has exactly as many classes as POI_{k x m} has elements.  A
surjection between finite sets of equal size is a bijection.
"""

from __future__ import annotations

from dataclasses import dataclass

from .blocks import BlockSpec
from .congruence import QuotientOverflow, quotient_enumerate
from .enumeration import size_formula
from .presentations import InterpretationMap, Presentation, RelationReport, build_preset, check_relations


@dataclass
class Verdict:
    label: str
    k: int
    m: int
    relations: int
    report: RelationReport
    quotient: int | None
    target: int

    @property
    def relations_hold(self) -> bool:
        return self.report.passed

    @property
    def sizes_agree(self) -> bool:
        return self.quotient == self.target

    @property
    def passed(self) -> bool:
        return self.relations_hold and self.sizes_agree

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        q = "overflow" if self.quotient is None else self.quotient
        return (f"{status} preset={self.label} k={self.k} m={self.m} "
                f"relations={self.relations} quotient={q} target={self.target}")

    def lines(self) -> list[str]:
        out = [self.summary()]
        out.extend(f"FAILED {rel} ({why})" for rel, why in self.report.failures)
        if not self.relations_hold:
            out.append("condition (1) failed: relations do not hold under phi")
        elif not self.sizes_agree:
            out.append("condition (2) failed: quotient size differs from |POI|")
        return out


def verify_instance(presentation: Presentation, phi: InterpretationMap, spec: BlockSpec,
                    bound: int, label: str = "custom") -> Verdict:
    report = check_relations(presentation, phi)
    try:
        quotient = quotient_enumerate(presentation, bound).size
    except QuotientOverflow:
        if report.passed:
            raise
        # already failed on condition (1); an overflowing quotient adds nothing
        quotient = None
    return Verdict(label, spec.k, spec.m, len(presentation.relations), report, quotient,
                   size_formula(spec.k, spec.m))


def verify_presentation(spec: BlockSpec, preset: str, bound: int) -> Verdict:
    presentation, phi = build_preset(spec.k, spec.m, preset)
    return verify_instance(presentation, phi, spec, bound, label=preset.upper())
