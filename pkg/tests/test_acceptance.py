"""Acceptance suite: every registered verification check at default
parameters, one test per check, with the coarse runtime budgets the checks
are designed to meet."""

import time

import pytest

from mukailat.verify import VerifyConfig, CHECKS


CFG = VerifyConfig()

# seconds; generous per-check ceilings so a pathological regression fails
# loudly rather than hanging the suite
BUDGET = {
    "index-formula": 2.0,
    "character-table": 5.0,
    "involution-identity": 2.0,
    "fm-orientation": 10.0,
    "elliptic-constraints": 2.0,
    "propdual-certificate": 5.0,
    "nikulin-suite": 30.0,
    "lemsimo-pipeline": 60.0,
    "similitude": 5.0,
    "vperp-structure": 5.0,
}


@pytest.mark.parametrize("name,fn", CHECKS, ids=[n for n, _ in CHECKS])
def test_acceptance(name, fn):
    t0 = time.time()
    status, witness = fn(CFG)
    elapsed = time.time() - t0
    assert status == "pass", "%s failed: %r" % (name, witness)
    assert elapsed < BUDGET[name], \
        "%s exceeded budget: %.1fs" % (name, elapsed)
