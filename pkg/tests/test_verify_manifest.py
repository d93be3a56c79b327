"""Every verification entry cites exactly one in-scope lemma label."""

from __future__ import annotations

import pytest

from freeplate.verify import IN_SCOPE, LEMMA_OF, SUITES, verify_suite

REQUIRED = {
    "fact1", "fact2", "fact3", "fact4", "ijbounds", "propLS", "recurrences", "thm2-ordering", "wbounds",
    "wbounds2", "scaling", "fefo", "negclass-degenerate", "zeroclass", "crossings", "hyperbolic-exclusion",
    "poly1", "poly2", "derivs", "ptwise", "mondenom", "monnum", "gppneg", "inner-identity",
    "lemmaboundRC-equality", "monint", "inertiabound",
}


@pytest.fixture(scope="module")
def full_report():
    return verify_suite("all", seed=0)


def test_manifest_maps_into_scope():
    for check_id, (label, text) in LEMMA_OF.items():
        assert label in IN_SCOPE, check_id
        assert text


def test_full_report_covers_and_passes(full_report):
    ids = [e.check_id for e in full_report.entries]
    assert len(ids) == len(set(ids))
    assert REQUIRED <= set(ids)
    assert set(ids) <= set(LEMMA_OF)
    assert full_report.passed, [e.check_id for e in full_report.entries if e.status != "pass"]
    for e in full_report.entries:
        assert e.reference.split(":")[0] == LEMMA_OF[e.check_id][0]


def test_special_functions_suite_size():
    rep = verify_suite("special_functions")
    assert len(rep.entries) >= 6 and rep.passed


def test_unknown_suite_rejected():
    from freeplate.errors import DomainError

    with pytest.raises(DomainError):
        verify_suite("nope")
    assert set(SUITES) == {"special_functions", "ball_spectrum", "rod_spectrum", "isoperimetric"}


def test_overall_flag_follows_entries(full_report):
    from freeplate.verify import ReportEntry, VerificationReport

    bad = VerificationReport("all", 0, full_report.entries + [ReportEntry("poly2", "poly2: x", "fail", 0, 0)])
    assert not bad.passed
    inconclusive = VerificationReport("all", 0, [ReportEntry("poly2", "poly2: x", "inconclusive", 0, 0)])
    assert inconclusive.passed
