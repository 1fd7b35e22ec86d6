"""The acceptance criteria, one test each; a PASS/FAIL line per criterion."""
import time

import pytest

from cremona.acceptance import CRITERIA

from conftest import ACCEPTANCE_LINES


@pytest.mark.parametrize("name", list(CRITERIA))
def test_criterion(name):
    t = time.perf_counter()
    try:
        ok, detail = CRITERIA[name]()
    except Exception as exc:
        ok, detail = False, f"error: {exc!r}"
    num = list(CRITERIA).index(name) + 1
    dt = time.perf_counter() - t
    line = f"{'PASS' if ok else 'FAIL'}  {num:>2}. {name:<12} {detail}  ({dt:.2f} s)"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, detail
