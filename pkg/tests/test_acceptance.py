"""Acceptance suite: one test per criterion, with an explicit
"criterion N: PASS/FAIL" line emitted for each."""

import pytest

from lmsb.acceptance import CRITERIA, DEFAULT_ORDER


@pytest.mark.parametrize(
    "num,title,fn", CRITERIA,
    ids=["criterion_%02d" % num for num, _, _ in CRITERIA])
def test_criterion(num, title, fn, capsys):
    ok, detail = fn(order=DEFAULT_ORDER)
    line = "criterion %d: %s -- %s (%s)" % (
        num, "PASS" if ok else "FAIL", title, detail)
    with capsys.disabled():
        print(line)
    assert ok, line
