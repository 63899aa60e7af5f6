"""The acceptance gate: every criterion runs at its exact expectation and
prints one pass/fail line.  All comparisons are exact; there are no
tolerances anywhere in this suite.
"""

import pytest

from latcat.selftest import CRITERIA


@pytest.mark.parametrize("cid,name,fn", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(cid, name, fn):
    ok, detail = fn()
    print(f"[{cid}] {'pass' if ok else 'FAIL'} {name}: {detail}")
    assert ok, f"{cid} {name}: {detail}"
