"""One test per acceptance criterion; the PASS/FAIL lines are repeated in the terminal summary."""

import pytest

from poikm.blocks import BlockSpec, generator_set
from poikm.enumeration import enumerate_monoid, membership_filter
from poikm.selftest import CRITERIA
from poikm.verify import verify_presentation

# hand-checked values of sum_t C(k,t)^2 (m!)^t
EXPECTED_SIZES = {(2, 2): 13, (3, 2): 63, (2, 3): 61, (4, 2): 321, (2, 4): 673, (3, 3): 595}


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda c: f"criterion_{c.number}")
def test_criterion(criterion, acceptance_log):
    result = criterion()
    line = result.line()
    acceptance_log.append(line)
    print(line)
    assert result.passed, line


@pytest.mark.parametrize("k, m", sorted(EXPECTED_SIZES))
def test_literal_sizes(k, m):
    spec = BlockSpec(k, m)
    table = enumerate_monoid(spec.n, generator_set(spec, "dx").values())
    assert len(table) == EXPECTED_SIZES[k, m]
    if spec.n <= 6:
        assert len(membership_filter(spec)) == EXPECTED_SIZES[k, m]


@pytest.mark.parametrize("k, m", [(2, 2), (3, 2), (2, 3)])
def test_literal_quotient_sizes(k, m):
    for preset in ("ABX", "BCX", "DX"):
        assert verify_presentation(BlockSpec(k, m), preset, 10**4).quotient == EXPECTED_SIZES[k, m]
