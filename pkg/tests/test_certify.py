import json

import pytest

from qunroll.certify import (
    SUITES,
    CertConfig,
    CertReport,
    _Runner,
    canonical_suite,
    default_configs,
    run_config,
    verify_hopf_axioms,
    verify_hybrid_sl2,
    verify_limits,
    verify_theorem_main,
)
from qunroll.rootdata import InadmissibleEll


def test_suite_names():
    assert canonical_suite("hybrid") == "hybrid-sl2"
    assert canonical_suite("hopf") == "hopf-axioms"
    assert canonical_suite("limits") == "limits"
    assert set(SUITES) == {"thm-main", "hybrid-sl2", "hopf-axioms", "limits"}
    with pytest.raises(ValueError):
        canonical_suite("nope")


def test_validation():
    with pytest.raises(InadmissibleEll):
        CertConfig("A", 1, 2).validate()
    with pytest.raises(InadmissibleEll):
        CertConfig("G", 2, 6).validate()
    with pytest.raises(ValueError):
        CertConfig("A", 2, 6, ("hybrid-sl2",)).validate()
    assert CertConfig("B", 2, 8).validate().rank == 2


@pytest.mark.parametrize("letter,rank,ell", [("A", 1, 4), ("G", 2, 12)])
def test_theorem_main_passes(letter, rank, ell):
    rep = verify_theorem_main(CertConfig(letter, rank, ell))
    assert rep.passed, rep.text(False)
    assert rep.results


def test_g2_covers_both_root_lengths():
    rep = verify_theorem_main(CertConfig("G", 2, 12))
    names = " ".join(r.name for r in rep.results)
    for root in ("(1,0)", "(0,1)", "(3,2)"):
        assert root in names


def test_limits_pass():
    rep = verify_limits(CertConfig("A", 2, 6))
    assert rep.passed, rep.text(False)


def test_hybrid_report_records_findings():
    rep = verify_hybrid_sl2(4)
    assert rep.passed, rep.text(False)
    notes = [r.note for r in rep.results if r.note]
    assert any("[2]!" in n for n in notes)
    assert any("reproduced" in n for n in notes)


def test_hopf_suite_passes():
    rep = verify_hopf_axioms(n=20)
    assert rep.passed and len(rep.results) == 3


def test_failure_carries_witness():
    run = _Runner("demo")
    run.check("equal", lambda: (False, "lhs = 1; rhs = 2"))
    run.check("raises", lambda: 1 // 0)
    run.check("fine", lambda: True)
    rep = run.report
    assert not rep.passed and len(rep.failures) == 2
    text = rep.text(False)
    assert "witness: lhs = 1; rhs = 2" in text
    assert "ZeroDivisionError" in text
    assert text.endswith("3 checks, 2 failures")
    data = json.loads(rep.json(False))
    assert data["failures"] == 2 and "seconds" not in data["results"][0]
    assert "seconds" in rep.to_json(True)["results"][0]


def test_reports_are_deterministic():
    cfg = CertConfig("B", 2, 8, ("thm-main", "limits"))
    a, b = run_config(cfg), run_config(cfg)
    assert a.text(False) == b.text(False)
    assert a.json(False) == b.json(False)


def test_report_extend():
    a, b = CertReport(), CertReport()
    b.errors.append("boom")
    a.extend(b)
    assert not a.passed and a.text(False).startswith("ERROR boom")


def test_default_matrix():
    cfgs = default_configs()
    names = {(c.letter, c.rank, c.ell) for c in cfgs if "thm-main" in c.suites}
    assert names == {("A", 1, 4), ("A", 1, 8), ("A", 2, 6), ("A", 2, 12), ("B", 2, 8), ("G", 2, 12)}
    assert {c.ell for c in cfgs if "hybrid-sl2" in c.suites} == {4, 8}
    for c in cfgs:
        c.validate()
