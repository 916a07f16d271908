import json

import pytest

from normlab import harness
from normlab.classes import ABELIAN, ALL_PRIMES, NILPOTENT, ONE, SUPERSOLVABLE, Gpi, Npi, PrimeSet
from normlab.corpus import builtin_corpus, builtin_group
from normlab.harness import (
    COUNTEREXAMPLE,
    ESTABLISHED,
    EVIDENCE,
    REGISTRY,
    BoundaryConditionLedger,
    Context,
    LedgerStatus,
    UnknownProposition,
    check_boundary_evidence,
    check_corollary_3_2,
    check_corollary_3_4,
    check_corollary_4_5,
    check_lemma,
    check_remark_1_4,
    check_remark_1_5,
    check_section4,
    check_theorem_a,
    check_theorem_b1,
    check_theorem_c,
    check_theorem_d,
    check_theorem_e,
    established,
    run_verification,
    select,
    summarize,
)
from normlab.reports import BASIS_ESTABLISHED, BASIS_EVIDENCE, FAIL, PASS, SKIP

P = ALL_PRIMES
S3, S4, A5 = (builtin_group(n) for n in ("S3", "S4", "A5"))


# -- theorem examples ---------------------------------------------------------------------


def test_theorem_a_on_s4_all_true():
    r = check_theorem_a(S4, ONE, SUPERSOLVABLE, P)
    assert r.outcome == PASS and set(r.detail["statements"].values()) == {True}


def test_theorem_a_on_a5_all_false_via_ledger():
    r = check_theorem_a(A5, ONE, SUPERSOLVABLE, P)
    assert r.outcome == PASS and r.basis == BASIS_ESTABLISHED
    assert set(r.detail["statements"].values()) == {False}


def test_theorem_a_skips_when_h_too_small():
    r = check_theorem_a(S4, ONE, SUPERSOLVABLE, PrimeSet.of(2))
    assert r.outcome == SKIP and r.reason.startswith("hypothesis: G_{pi'}")


def test_corollary_3_2_examples():
    assert check_corollary_3_2(S4, SUPERSOLVABLE, P).outcome == PASS
    assert check_corollary_3_2(S4, ABELIAN, PrimeSet.of(2)).outcome == PASS
    assert check_corollary_3_2(A5, SUPERSOLVABLE, P).outcome == PASS


def test_theorem_d_examples():
    assert check_theorem_d(S4, SUPERSOLVABLE, P).outcome == PASS
    assert check_theorem_d(S3, ABELIAN, PrimeSet.of(3)).outcome == PASS
    r = check_theorem_d(A5, SUPERSOLVABLE, P)
    assert r.outcome == SKIP and r.reason == "hypothesis: G in S_pi*F"


def test_boundary_theorems_examples():
    r = check_theorem_c(S4, NILPOTENT, P)
    assert r.outcome == PASS and r.basis == BASIS_ESTABLISHED
    assert check_theorem_e(S4, NILPOTENT, P).outcome == PASS
    r = check_theorem_b1(S3, Gpi(PrimeSet.of(2).complement()), P)
    assert r.outcome == PASS and r.basis == BASIS_ESTABLISHED
    r = check_theorem_c(S4, Gpi({3}), P)
    assert r.outcome == SKIP and r.reason.startswith("ledger")


def test_corollary_3_4_examples():
    assert check_corollary_3_4(S4, SUPERSOLVABLE, P).outcome == PASS
    assert check_corollary_3_4(builtin_group("D8"), NILPOTENT, P).outcome == PASS


def test_lemma_examples():
    assert check_lemma(S4, "Lem2.12", {"F": ABELIAN, "pi": P}).outcome == PASS
    assert check_lemma(builtin_group("Q8"), "Lem4.1", {"p": 2}).outcome == PASS
    r = check_lemma(builtin_group("S3xC5"), "Lem2.6", {"H": ONE, "F": ABELIAN})
    assert r.outcome == PASS
    with pytest.raises(UnknownProposition):
        check_lemma(S4, "Lem9.9")


def test_section4_examples():
    reports = check_section4(S3, ABELIAN, PrimeSet.of(3))
    assert reports[0].prop_id == "Thm4.3" and reports[0].outcome == PASS
    assert all(r.outcome != FAIL for r in reports)
    assert all(r.outcome != FAIL for r in check_section4(builtin_group("D8"), SUPERSOLVABLE, P))
    # N_inf_U(S4) = S4, so the element hypothesis holds; for A5 it is trivial
    assert check_corollary_4_5(S4, SUPERSOLVABLE).outcome == PASS
    r = check_corollary_4_5(A5, SUPERSOLVABLE)
    assert r.outcome == SKIP and r.reason.startswith("hypothesis")


def test_remarks_reproduced():
    r4, r5 = check_remark_1_4(), check_remark_1_5()
    assert r4.outcome == PASS and r4.detail["crit"] and not r4.detail["member"]
    assert r5.outcome == PASS and r5.detail["crit"] and not r5.detail["member"]


# -- ledger -----------------------------------------------------------------------------------


def test_established_table():
    assert established(SUPERSOLVABLE, P, "I")
    assert established(NILPOTENT, P, "III")
    assert established(NILPOTENT, PrimeSet.of(2), "I")  # III => I and P => pi
    assert established(Gpi({3}), P, "III") is None


def test_fixed_counterexamples_override():
    ledger = BoundaryConditionLedger()
    assert ledger.lookup(Npi({3}), P, "II").kind == COUNTEREXAMPLE
    assert ledger.lookup(Gpi({3}), P, "III").kind == COUNTEREXAMPLE
    assert ledger.lookup(Gpi({3}), P, "II").kind == ESTABLISHED


def test_evidence_is_never_established():
    ledger = BoundaryConditionLedger()
    with pytest.raises(ValueError):
        ledger.record(ABELIAN, P, "III", LedgerStatus(ESTABLISHED, "made up"))
    ledger.record(Gpi({5}), P, "III", LedgerStatus(EVIDENCE, counts={"critical": 3}))
    assert ledger.lookup(Gpi({5}), P, "III").kind == EVIDENCE
    assert ledger.holds(Gpi({5}), P, "III") is None
    assert ledger.holds(Gpi({5}), P, "III", allow_evidence=True) == BASIS_EVIDENCE


def test_evidence_pass_is_labelled_conditional():
    ctx = Context(allow_evidence=True)
    F = Gpi({5})
    check_boundary_evidence([builtin_group("C5"), builtin_group("C7")], F, P, "III", ctx.ledger)
    r = check_theorem_c(builtin_group("C5"), F, P, ctx)
    assert r.basis == BASIS_EVIDENCE
    assert check_theorem_c(builtin_group("C5"), F, P).outcome == SKIP


def test_boundary_evidence_examples():
    st = check_boundary_evidence([S3, A5, S4], Npi({3}), P, "II")
    assert st.kind == COUNTEREXAMPLE and st.witness["group"] == "A5" and st.witness["p"] == 3
    st = check_boundary_evidence([S3, builtin_group("C4")], Gpi({3}), P, "III")
    assert st.kind == COUNTEREXAMPLE and st.witness["group"] == "S3" and st.witness["p"] == 2
    st = check_boundary_evidence([builtin_group("C1")], NILPOTENT, P, "I")
    assert st.kind == EVIDENCE and st.counts["critical"] == 0


def test_boundary_evidence_over_corpus_agrees_with_table():
    corpus = builtin_corpus()
    for F in (NILPOTENT, SUPERSOLVABLE, Gpi(PrimeSet.of(2).complement())):
        for cond in ("I", "II", "III"):
            if established(F, P, cond):
                assert check_boundary_evidence(corpus, F, P, cond).kind == EVIDENCE, (str(F), cond)


# -- reports -----------------------------------------------------------------------------------


def test_fail_carries_recheckable_witness(monkeypatch):
    monkeypatch.setattr(harness, "hypercentre", lambda G, pi, F: G.trivial)
    r = check_theorem_d(S4, SUPERSOLVABLE, P)
    assert r.outcome == FAIL and r.witness["failures"][0]["clause"] == "N_inf = Z"
    json.dumps(r.to_dict())
    monkeypatch.undo()
    assert check_theorem_d(S4, SUPERSOLVABLE, P).outcome == PASS


def test_skip_reasons_are_keyed():
    reports = run_verification([A5, S3], "ThmD,ThmE,ThmC")
    for r in reports:
        if r.outcome == SKIP:
            assert r.reason.split(":")[0] in ("hypothesis", "ledger")


def test_select():
    assert select("all") == list(REGISTRY)
    assert select("") == []
    assert select("ThmD, ThmD,Rem1.4") == ["ThmD", "Rem1.4"]
    with pytest.raises(UnknownProposition):
        select("ThmZ")


def test_registry_ids():
    for pid in ("ThmA", "ThmB1", "ThmC", "ThmD", "ThmE", "Cor3.2", "Cor3.4", "Lem2.7", "Lem2.12",
                "Lem3.1", "Lem3.5", "Prop3.6", "Prop3.7", "Prop3.8", "Thm4.3", "Cor4.4", "Cor4.5",
                "Rem1.4", "Rem1.5"):
        assert pid in REGISTRY


def test_small_corpus_all_props_no_failures():
    groups = [G for G in builtin_corpus() if G.order <= 24]
    reports = run_verification(groups, "all")
    s = summarize(reports)
    assert s["fail"] == 0 and s["pass"] > 0
    assert [r.sort_key() for r in reports] == sorted(r.sort_key() for r in reports)
