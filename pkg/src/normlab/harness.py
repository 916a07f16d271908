"""Executable statements about norms and hypercentres, checked group by group.

Every check returns a PropositionReport.  Hypothesis failures become Skips
with a machine-readable reason; disagreements become Fails carrying the
subgroups or truth values that differ.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable

from normlab.classes import (
    ABELIAN,
    ALL,
    ALL_PRIMES,
    NILPOTENT,
    ONE,
    SOLVABLE,
    SUPERSOLVABLE,
    ClassExpr,
    FittingProduct,
    FormationProduct,
    Gpi,
    Ldec,
    Npi,
    Nr,
    PrimeSet,
    Spi,
    canonical_local,
    class_primes,
    contains_gpi,
    flags,
    is_member,
    is_shemetkov,
    is_solvable,
    is_subgroup_member,
    o_pi,
    radical,
    radical_of,
    residual,
    residual_of,
    sylow_tower_type,
    within_2_closed,
    within_2_nilpotent,
    within_nilpotent,
    within_odd,
    within_solvable,
    within_supersolvable,
)
from normlab.group import FiniteGroup, Subgroup, prime_divisors
from normlab.lattice import enumerate_lattice, normal_subgroups
from normlab.norms import crit_s, hf_norm, int_x, norm_infinity
from normlab.reports import (
    BASIS_ESTABLISHED,
    BASIS_EVIDENCE,
    BASIS_INSTANCE,
    FAIL,
    PASS,
    SKIP,
    PropositionReport,
    subgroup_summary,
)
from normlab.series import (
    chief_series,
    factor_centralizer,
    fitting_length,
    hypercentre,
    is_F_central,
    p_length,
    psi_p_of,
)

# -- parameter grids ----------------------------------------------------------------

P = ALL_PRIMES
F_GRID: tuple[ClassExpr, ...] = (ABELIAN, NILPOTENT, SUPERSOLVABLE, Gpi({3}), Npi({2}))
PI_GRID: tuple[PrimeSet, ...] = (P, PrimeSet.of(2), PrimeSet.of(3), PrimeSet.of(2, 3))
F_EXTRA_III_S: tuple[ClassExpr, ...] = (
    FormationProduct(Nr(1), Ldec(2)),
    FormationProduct(Nr(1), NILPOTENT),
    FormationProduct(Nr(1), ABELIAN),
    FormationProduct(Nr(2), ABELIAN),
)
LEM21_F = F_GRID + (SOLVABLE, Nr(2))
LEM22_H: tuple[ClassExpr, ...] = (ONE, NILPOTENT, SOLVABLE, Gpi({2}), Gpi({3}), Npi({2}), Nr(2))
LEM23_H: tuple[ClassExpr, ...] = (ONE, NILPOTENT, Gpi({2}))
LEM23_F: tuple[ClassExpr, ...] = (ABELIAN, NILPOTENT, SUPERSOLVABLE)
LEM28_F: tuple[ClassExpr, ...] = (NILPOTENT, SUPERSOLVABLE, Gpi({3}), Npi({2}))
LEM210_F: tuple[ClassExpr, ...] = (NILPOTENT, SUPERSOLVABLE, Npi({2}), Nr(2))
COR44_F: tuple[ClassExpr, ...] = (ABELIAN, NILPOTENT, SUPERSOLVABLE, Gpi({3}))
PSI_PRIMES = (2, 3, 5, 7)


def comp_class(pi: PrimeSet) -> ClassExpr:
    """G_{pi'} as an atom (the class 1 when pi is every prime)."""
    return ONE if pi.is_all else Gpi(pi.complement())


def npi_class(pi: PrimeSet) -> ClassExpr:
    return NILPOTENT if pi.is_all else Npi(pi)


def spi_class(pi: PrimeSet) -> ClassExpr:
    return SOLVABLE if pi.is_all else Spi(pi)


def n_star(F: ClassExpr) -> ClassExpr:
    return FormationProduct(NILPOTENT, F)


# -- boundary-condition ledger ------------------------------------------------------

CONDITIONS = ("I", "II", "III", "III-S")
ESTABLISHED = "EstablishedByPaper"
EVIDENCE = "CorpusEvidence"
COUNTEREXAMPLE = "CounterexampleFound"


@dataclass(frozen=True)
class LedgerStatus:
    kind: str
    citation: str | None = None
    counts: dict | None = None
    witness: dict | None = None

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"status": self.kind}
        if self.citation:
            out["citation"] = self.citation
        if self.counts is not None:
            out["counts"] = self.counts
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _pi_F_all(F: ClassExpr) -> bool:
    return class_primes(F).is_all


def _nr_product_base(F: ClassExpr) -> bool:
    """F = N^r * L_p or N^r * F' with F' nilpotent-contained and pi(F') = P."""
    if not isinstance(F, FormationProduct):
        return False
    X, B = F.X, F.F
    if not (X == NILPOTENT or (hasattr(X, "name") and getattr(X, "name") == "Nr")):
        return False
    if hasattr(B, "name") and getattr(B, "name") == "Ldec":
        return True
    return within_nilpotent(B) and _pi_F_all(B)


def _base_fact(F: ClassExpr, cond: str) -> str | None:
    """Citation for a P-level boundary fact, or None."""
    if cond == "I":
        if F == SUPERSOLVABLE:
            return "Remark 1.6 (Doerk): U satisfies P-(I)"
        if F == Npi({3}):
            return "Remark 1.4 (Huppert IV.5.4): Crit_S(N_3) in N*N_3"
        if sylow_tower_type(F) is not None:
            return "Prop 3.6(1): F in T_sigma"
        if is_shemetkov(F):
            return "Prop 3.6(2): S-check formation"
        if within_2_closed(F):
            return "Prop 3.6(3): F in C_2"
        if within_2_nilpotent(F):
            return "Prop 3.6(4): F in N_2"
    elif cond == "II":
        if within_nilpotent(F):
            return "Prop 3.7(1): F in N"
        if within_odd(F):
            return "Prop 3.7(2): F in G_2'"
        if F == Gpi({3}):
            return "Remark 1.5: G_3 satisfies P-(II)"
    elif cond == "III":
        if within_nilpotent(F) and _pi_F_all(F):
            return "Prop 3.8(1): F in N with pi(F) = P"
    elif cond == "III-S":
        if _nr_product_base(F):
            return "Prop 3.8(2)/(3): N^r * L or N^r * F"
    return None


_IMPLIED_BY = {"I": ("II", "III"), "II": ("III",), "III": (), "III-S": ("III",)}

# counterexamples reproduced from the two computed remarks
_FIXED_COUNTEREXAMPLES = {
    (str(Npi({3})), "II"): ("Remark 1.4", "A5", "Crit_S(G_3 * N_3) member outside S * N_3"),
    (str(Gpi({3})), "III"): ("Remark 1.5", "S3", "Crit_S(G_2 * G_3) member outside N * G_3"),
}


def established(F: ClassExpr, pi: PrimeSet, cond: str) -> str | None:
    """Static table lookup, closed under III => II => I, III => III-S and P => pi."""
    for c in (cond,) + _IMPLIED_BY[cond]:
        cite = _base_fact(F, c)
        if cite is not None:
            via = "" if c == cond else f" via ({c})"
            mono = "" if pi.is_all else " via P => pi"
            return cite + via + mono
    return None


class BoundaryConditionLedger:
    """(F, pi, condition) -> status; established entries come only from the static table."""

    def __init__(self):
        self.evidence: dict[tuple[str, str, str], LedgerStatus] = {}

    def lookup(self, F: ClassExpr, pi: PrimeSet, cond: str) -> LedgerStatus | None:
        key = (str(F), str(pi), cond)
        if key in self.evidence and self.evidence[key].kind == COUNTEREXAMPLE:
            return self.evidence[key]
        if pi.is_all and (str(F), cond) in _FIXED_COUNTEREXAMPLES:
            src, g, what = _FIXED_COUNTEREXAMPLES[(str(F), cond)]
            return LedgerStatus(COUNTEREXAMPLE, src, witness={"group": g, "fact": what})
        cite = established(F, pi, cond)
        if cite is not None:
            return LedgerStatus(ESTABLISHED, cite)
        return self.evidence.get(key)

    def record(self, F: ClassExpr, pi: PrimeSet, cond: str, status: LedgerStatus) -> None:
        if status.kind == ESTABLISHED:
            raise ValueError("corpus runs never produce established entries")
        self.evidence[(str(F), str(pi), cond)] = status

    def holds(self, F: ClassExpr, pi: PrimeSet, cond: str, allow_evidence: bool = False) -> str | None:
        """Basis string when the condition may be used, else None."""
        st = self.lookup(F, pi, cond)
        if st is None:
            return None
        if st.kind == ESTABLISHED:
            return BASIS_ESTABLISHED
        if st.kind == EVIDENCE and allow_evidence:
            return BASIS_EVIDENCE
        return None


# -- report helpers -----------------------------------------------------------------


@dataclass
class Context:
    ledger: BoundaryConditionLedger = field(default_factory=BoundaryConditionLedger)
    allow_evidence: bool = False


def _params(**kw) -> dict[str, str]:
    return {k: str(v) for k, v in kw.items() if v is not None}


def _rep(prop: str, G: FiniteGroup, params: dict, outcome: str, *, reason: str | None = None,
         witness: dict | None = None, basis: str = BASIS_INSTANCE, detail: dict | None = None) -> PropositionReport:
    return PropositionReport(prop, G.name, G.id, params, outcome, reason, witness or {}, basis, detail or {})


def _skip(prop, G, params, reason):
    return _rep(prop, G, params, SKIP, reason=reason)


def _sub(H: Subgroup) -> dict:
    return subgroup_summary(H)


class _Checker:
    """Collects clause failures for one report."""

    def __init__(self):
        self.failures: list[dict] = []
        self.checked = 0

    def expect(self, ok: bool, clause: str, **witness) -> None:
        self.checked += 1
        if not ok:
            self.failures.append({"clause": clause, **{k: _jsonable(v) for k, v in witness.items()}})

    def report(self, prop, G, params, basis=BASIS_INSTANCE, detail=None) -> PropositionReport:
        detail = dict(detail or {})
        detail["clauses_checked"] = self.checked
        if self.failures:
            return _rep(prop, G, params, FAIL, witness={"failures": self.failures[:5]}, basis=basis, detail=detail)
        return _rep(prop, G, params, PASS, basis=basis, detail=detail)


def _jsonable(v):
    if isinstance(v, Subgroup):
        return _sub(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (PrimeSet, ClassExpr)):
        return str(v)
    return v


# -- subgroup plumbing ----------------------------------------------------------------


def _as_group(G: FiniteGroup, H: Subgroup) -> FiniteGroup:
    return G.subgroup_as_group(H)[0]


def _lift(G: FiniteGroup, H: Subgroup, K: Subgroup) -> Subgroup:
    emb = G.subgroup_as_group(H)[1]
    mask = 0
    for x in K.members:
        mask |= 1 << int(emb[x])
    return Subgroup(G, mask)


def _in_sub(G: FiniteGroup, H: Subgroup, fn: Callable[[FiniteGroup], Subgroup]) -> Subgroup:
    """Evaluate a subgroup-valued function on H (as a group) and map it back into G."""
    if H.is_whole:
        return fn(G)
    return _lift(G, H, fn(_as_group(G, H)))


def _quot(G: FiniteGroup, N: Subgroup):
    return G.quotient(N)


def _norm_inf(G: FiniteGroup, pi_comp: PrimeSet, F: ClassExpr) -> Subgroup:
    """N^inf built on O_{pi'}: the caller passes pi and this applies the complement."""
    return norm_infinity(G, comp_class(pi_comp), F)


def _norm(G: FiniteGroup, pi: PrimeSet, F: ClassExpr) -> Subgroup:
    return hf_norm(G, comp_class(pi), F)


def _proper_normals(G: FiniteGroup) -> list[Subgroup]:
    return [N for N in normal_subgroups(G) if not N.is_whole]


def _nontrivial_normals(G: FiniteGroup) -> list[Subgroup]:
    return [N for N in normal_subgroups(G) if not N.is_trivial]


def _hyp_zn(G: FiniteGroup, pi: PrimeSet, F: ClassExpr) -> Subgroup:
    """Z_{pi N}(G^F), as a subgroup of G."""
    R = residual(G, F)
    return _in_sub(G, R, lambda K: hypercentre(K, pi, NILPOTENT))


# -- ThmA and Cor3.2 ------------------------------------------------------------------


def _five_statements(G: FiniteGroup, H: ClassExpr, F: ClassExpr, C: ClassExpr) -> dict[str, bool]:
    n1 = hf_norm(G, H, F)
    ninf = norm_infinity(G, H, F)
    s1 = is_member(G, C)
    s2 = is_member(_quot(G, n1)[0], C)
    s3 = is_member(_quot(G, ninf)[0], C)
    s4 = all(not hf_norm(_quot(G, N)[0], H, F).is_trivial for N in _proper_normals(G))
    s5 = ninf.is_whole
    return {"1": s1, "2": s2, "3": s3, "4": s4, "5": s5}


def _agreement(prop, G, params, stmts, basis, extra=None) -> PropositionReport:
    values = set(stmts.values())
    detail = {"statements": stmts, **(extra or {})}
    if len(values) == 1:
        return _rep(prop, G, params, PASS, basis=basis, detail=detail)
    first = next(iter(stmts))
    other = next(k for k, v in stmts.items() if v != stmts[first])
    witness = {"disagreeing": [first, other], "values": [stmts[first], stmts[other]], "statements": stmts}
    return _rep(prop, G, params, FAIL, witness=witness, basis=basis, detail=detail)


def _theorem_a_hypotheses(H: ClassExpr, F: ClassExpr, pi: PrimeSet) -> str | None:
    fh = flags(H)
    if not (fh.fitting and fh.formation):
        return "hypothesis: H is a Fitting formation"
    if not fh.saturated:
        return "hypothesis: H saturated"
    if not fh.e_closed:
        return "hypothesis: H = EH"
    if not contains_gpi(H, pi.complement()):
        return "hypothesis: G_{pi'} in H"
    fF = flags(F)
    if not (fF.formation and fF.s_closed):
        return "hypothesis: F = SF formation"
    return None


def check_theorem_a(G: FiniteGroup, H: ClassExpr, F: ClassExpr, pi: PrimeSet,
                    ctx: Context | None = None) -> PropositionReport:
    ctx = ctx or Context()
    params = _params(H=H, F=F, pi=pi)
    why = _theorem_a_hypotheses(H, F, pi)
    if why:
        return _skip("ThmA", G, params, why)
    C = FittingProduct(H, n_star(F))
    R = residual(G, C)
    if is_subgroup_member(G, R, spi_class(pi)):
        basis = BASIS_INSTANCE
    else:
        basis = ctx.ledger.holds(F, pi, "I", ctx.allow_evidence)
        if basis is None:
            return _skip("ThmA", G, params, "condition: neither (i) residual in S_pi nor (ii) boundary (I)")
    return _agreement("ThmA", G, params, _five_statements(G, H, F, C), basis)


def check_corollary_3_2(G: FiniteGroup, F: ClassExpr, pi: PrimeSet,
                        ctx: Context | None = None) -> PropositionReport:
    ctx = ctx or Context()
    params = _params(F=F, pi=pi)
    fF = flags(F)
    if not (fF.formation and fF.s_closed):
        return _skip("Cor3.2", G, params, "hypothesis: F = SF formation")
    if is_member(G, FormationProduct(spi_class(pi), F)):
        basis = BASIS_INSTANCE
    else:
        basis = ctx.ledger.holds(F, pi, "I", ctx.allow_evidence)
        if basis is None:
            return _skip("Cor3.2", G, params, "condition: neither (i) G in S_pi*F nor (ii) boundary (I)")
    C = FormationProduct(npi_class(pi), F)
    return _agreement("Cor3.2", G, params, _five_statements(G, comp_class(pi), F, C), basis)


# -- ThmB1, ThmC, ThmD, ThmE and Cor3.4 -----------------------------------------------


def _s_closed_formation(F: ClassExpr) -> bool:
    fF = flags(F)
    return fF.formation and fF.s_closed


def _equal(chk: _Checker, clause: str, **subs: Subgroup) -> None:
    vals = list(subs.values())
    chk.expect(all(v == vals[0] for v in vals), clause, **subs)


def check_theorem_d(G: FiniteGroup, F: ClassExpr, pi: PrimeSet, ctx: Context | None = None) -> PropositionReport:
    params = _params(F=F, pi=pi)
    if not _s_closed_formation(F):
        return _skip("ThmD", G, params, "hypothesis: F = SF formation")
    if not is_member(G, FormationProduct(spi_class(pi), F)):
        return _skip("ThmD", G, params, "hypothesis: G in S_pi*F")
    chk = _Checker()
    _equal(chk, "N_inf = Z", N_inf=_norm_inf(G, pi, F), Z=hypercentre(G, pi, n_star(F)))
    return chk.report("ThmD", G, params)


def check_theorem_b1(G: FiniteGroup, F: ClassExpr, pi: PrimeSet, ctx: Context | None = None) -> PropositionReport:
    ctx = ctx or Context()
    params = _params(F=F, pi=pi)
    if not _s_closed_formation(F):
        return _skip("ThmB1", G, params, "hypothesis: F = SF formation")
    basis = ctx.ledger.holds(F, pi, "II", ctx.allow_evidence)
    if basis is None:
        return _skip("ThmB1", G, params, "ledger: boundary (II) not available")
    chk = _Checker()
    _equal(chk, "N_inf = Z", N_inf=_norm_inf(G, pi, F), Z=hypercentre(G, pi, n_star(F)))
    return chk.report("ThmB1", G, params, basis)


def _three_way(prop, G, F, pi, basis) -> PropositionReport:
    chk = _Checker()
    n = _norm_inf(G, pi, F)
    z = hypercentre(G, pi, n_star(F))
    i = int_x(G, FormationProduct(npi_class(pi), F))
    _equal(chk, "N_inf = Int", N_inf=n, Int=i)
    _equal(chk, "Z = Int", Z=z, Int=i)
    return chk.report(prop, G, _params(F=F, pi=pi), basis, detail={"order": n.order})


def check_theorem_c(G: FiniteGroup, F: ClassExpr, pi: PrimeSet, ctx: Context | None = None) -> PropositionReport:
    ctx = ctx or Context()
    params = _params(F=F, pi=pi)
    if not _s_closed_formation(F):
        return _skip("ThmC", G, params, "hypothesis: F = SF formation")
    basis = ctx.ledger.holds(F, pi, "III", ctx.allow_evidence)
    if basis is None:
        return _skip("ThmC", G, params, "ledger: boundary (III) not available")
    return _three_way("ThmC", G, F, pi, basis)


def check_theorem_e(G: FiniteGroup, F: ClassExpr, pi: PrimeSet, ctx: Context | None = None) -> PropositionReport:
    ctx = ctx or Context()
    params = _params(F=F, pi=pi)
    if not _s_closed_formation(F):
        return _skip("ThmE", G, params, "hypothesis: F = SF formation")
    basis = ctx.ledger.holds(F, pi, "III-S", ctx.allow_evidence)
    if basis is None:
        return _skip("ThmE", G, params, "ledger: boundary (III) in S not available")
    if not is_solvable(G):
        return _skip("ThmE", G, params, "hypothesis: G solvable")
    return _three_way("ThmE", G, F, pi, basis)


def check_corollary_3_4(G: FiniteGroup, F: ClassExpr, pi: PrimeSet, ctx: Context | None = None) -> PropositionReport:
    ctx = ctx or Context()
    params = _params(F=F, pi=pi)
    if not _s_closed_formation(F):
        return _skip("Cor3.4", G, params, "hypothesis: F = SF formation")
    if is_member(G, FormationProduct(spi_class(pi), F)):
        basis = BASIS_INSTANCE
    else:
        basis = ctx.ledger.holds(F, pi, "II", ctx.allow_evidence)
        if basis is None:
            return _skip("Cor3.4", G, params, "condition: neither (i) G in S_pi*F nor (ii) boundary (II)")
    chk = _Checker()
    zn = _hyp_zn(G, pi, F)
    n = _norm_inf(G, pi, F)
    z = hypercentre(G, pi, n_star(F))
    chk.expect(zn <= n and zn <= z, "Z_piN(G^F) below both", Zn=zn, N_inf=n, Z=z)
    Q, proj = _quot(G, zn)
    _equal(chk, "N_inf/Zn = norm(G/Zn) = Z/Zn",
           N_inf=proj.image(n), norm=_norm(Q, pi, F), Z=proj.image(z))
    if flags(F).saturated:
        _equal(chk, "Z/Zn = Z_piF(G/Zn)", Z=proj.image(z), ZF=hypercentre(Q, pi, F))
    return chk.report("Cor3.4", G, params, basis)


# -- lemma checks ----------------------------------------------------------------------


def check_lemma_2_1(G: FiniteGroup, F: ClassExpr, ctx=None) -> PropositionReport:
    params = _params(F=F)
    fF = flags(F)
    if not fF.formation:
        return _skip("Lem2.1", G, params, "hypothesis: F formation")
    chk = _Checker()
    R = residual(G, F)
    for N in normal_subgroups(G):
        Q, proj = _quot(G, N)
        chk.expect(proj.image(R) == residual(Q, F), "(1) G^F N/N = (G/N)^F", N=N)
        if fF.sn_closed:
            chk.expect(residual_of(G, N, F) <= (R & N), "(2) N^F <= G^F & N", N=N)
    if fF.s_closed:
        for H in enumerate_lattice(G).subgroups:
            chk.expect(residual_of(G, H, F) <= (R & H), "(2) H^F <= G^F & H", H=H)
    return chk.report("Lem2.1", G, params)


def check_lemma_2_2(G: FiniteGroup, H: ClassExpr, ctx=None) -> PropositionReport:
    params = _params(H=H)
    fH = flags(H)
    if not fH.fitting:
        return _skip("Lem2.2", G, params, "hypothesis: H Fitting class")
    chk = _Checker()
    R = radical(G, H)
    for N in normal_subgroups(G):
        chk.expect((R & N) == radical_of(G, N, H), "(1) G_H & N = N_H", N=N)
        if fH.q_closed or (fH.e_closed and N <= R):
            Q, proj = _quot(G, N)
            RQ = radical(Q, H)
            if fH.q_closed:
                chk.expect(proj.image(R) <= RQ, "(3) G_H N/N <= (G/N)_H", N=N)
            if fH.e_closed and N <= R:
                chk.expect(proj.preimage(RQ) <= R, "(4) (G/N)_H <= G_H/N", N=N)
    if fH.s_closed:
        for K in enumerate_lattice(G).subgroups:
            chk.expect((R & K) <= radical_of(G, K, H), "(2) G_H & K <= K_H", K=K)
    return chk.report("Lem2.2", G, params)


def check_lemma_2_3(G: FiniteGroup, H: ClassExpr, F: ClassExpr, ctx=None) -> PropositionReport:
    params = _params(H=H, F=F)
    fH, fF = flags(H), flags(F)
    if not (fH.fitting and fF.formation):
        return _skip("Lem2.3", G, params, "hypothesis: H Fitting class, F formation")
    chk = _Checker()
    n = hf_norm(G, H, F)
    for N in normal_subgroups(G):
        chk.expect((n & N) <= _in_sub(G, N, lambda K: hf_norm(K, H, F)), "(1) norm(G) & N <= norm(N)", N=N)
        if fH.q_closed:
            Q, proj = _quot(G, N)
            chk.expect(proj.image(n) <= hf_norm(Q, H, F), "(3) norm(G)N/N <= norm(G/N)", N=N)
    if fH.s_closed:
        for K in enumerate_lattice(G).representatives:
            chk.expect((n & K) <= _in_sub(G, K, lambda X: hf_norm(X, H, F)), "(2) norm(G) & K <= norm(K)", K=K)
    if fF.s_closed and G.order > 1 and is_member(G, FittingProduct(H, n_star(F))):
        chk.expect(not n.is_trivial, "(4) norm(G) > 1", norm=n)
    return chk.report("Lem2.3", G, params)


def check_lemma_2_5(G: FiniteGroup, H: ClassExpr, F: ClassExpr, ctx=None) -> PropositionReport:
    params = _params(H=H, F=F)
    fH, fF = flags(H), flags(F)
    if not (fH.fitting and fF.formation):
        return _skip("Lem2.5", G, params, "hypothesis: H Fitting class, F formation")
    if not fH.q_closed:
        return _skip("Lem2.5", G, params, "hypothesis: H = QH")
    chk = _Checker()
    ninf = norm_infinity(G, H, F)
    meet = G.all_mask
    for N in normal_subgroups(G):
        Q, proj = _quot(G, N)
        chk.expect((ninf & N) <= _in_sub(G, N, lambda K: norm_infinity(K, H, F)), "(1) N_inf(G) & N <= N_inf(N)", N=N)
        qinf = norm_infinity(Q, H, F)
        chk.expect(proj.image(ninf) <= qinf, "(3) N_inf(G)N/N <= N_inf(G/N)", N=N)
        if N <= ninf:
            chk.expect(proj.preimage(qinf) == ninf, "(4) N_inf(G/N) = N_inf(G)/N", N=N)
        if hf_norm(Q, H, F).is_trivial:
            meet &= N.mask
    chk.expect(Subgroup(G, meet) == ninf, "(5) N_inf = meet of N with norm(G/N) = 1",
               N_inf=ninf, meet=Subgroup(G, meet))
    if fH.formation and fH.s_closed:
        for K in enumerate_lattice(G).representatives:
            chk.expect((ninf & K) <= _in_sub(G, K, lambda X: norm_infinity(X, H, F)),
                       "(2) N_inf(G) & K <= N_inf(K)", K=K)
    return chk.report("Lem2.5", G, params)


def check_lemma_2_6(G: FiniteGroup, H: ClassExpr, F: ClassExpr, ctx=None) -> PropositionReport:
    params = _params(H=H, F=F)
    if not within_solvable(F):
        return _skip("Lem2.6", G, params, "hypothesis: F in S")
    comps = G.components
    if not comps or len(comps) != 2 or _gcd(comps[0][0].order, comps[1][0].order) != 1:
        return _skip("Lem2.6", G, params, "hypothesis: G = G1 x G2 with coprime orders")
    (G1, e1), (G2, e2) = comps
    chk = _Checker()
    for label, fn in (("norm", hf_norm), ("N_inf", norm_infinity)):
        a = fn(G1, H, F)
        b = fn(G2, H, F)
        mask = 0
        for x in a.members:
            for y in b.members:
                mask |= 1 << int(G.table[e1[x], e2[y]])
        chk.expect(fn(G, H, F) == Subgroup(G, mask), f"{label}(G1 x G2) = {label}(G1) x {label}(G2)",
                   whole=fn(G, H, F), product=Subgroup(G, mask))
    return chk.report("Lem2.6", G, params)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _fixes_pi_comp(F: ClassExpr, pi: PrimeSet) -> bool:
    """G_{pi'} * F = F, decided only where it is plainly true."""
    return pi.is_all or F == ALL


def check_lemma_2_8(G: FiniteGroup, F: ClassExpr, pi: PrimeSet, ctx=None) -> PropositionReport:
    params = _params(F=F, pi=pi)
    fF = flags(F)
    if not (fF.formation and fF.saturated):
        return _skip("Lem2.8", G, params, "hypothesis: F saturated formation")
    if not pi.issubset(class_primes(F)):
        return _skip("Lem2.8", G, params, "hypothesis: pi in pi(F)")
    chk = _Checker()
    Z = hypercentre(G, pi, F)
    gf = FormationProduct(comp_class(pi), F)
    for N in normal_subgroups(G):
        Q, proj = _quot(G, N)
        ZQ = hypercentre(Q, pi, F)
        chk.expect(proj.image(Z) <= ZQ, "(2) Z(G)N/N <= Z(G/N)", N=N)
        if N <= Z:
            chk.expect(proj.preimage(ZQ) == Z, "(1) Z(G/N) = Z(G)/N", N=N)
        if fF.sn_closed and not fF.s_closed:
            chk.expect((Z & N) <= _in_sub(G, N, lambda K: hypercentre(K, pi, F)), "(3) Z(G) & N <= Z(N)", N=N)
    fix = _fixes_pi_comp(F, pi)
    reps = enumerate_lattice(G).representatives
    if fF.s_closed:
        for K in reps:
            chk.expect((Z & K) <= _in_sub(G, K, lambda X: hypercentre(X, pi, F)), "(3) Z(G) & K <= Z(K)", K=K)
    if fix:
        if is_member(_quot(G, Z)[0], F):
            chk.expect(is_member(G, F), "(4) G/Z in F => G in F", Z=Z)
        if fF.s_closed:
            for K in reps:
                if is_subgroup_member(G, K, F):
                    chk.expect(is_subgroup_member(G, G.join(K, Z), F), "(5) K in F => KZ in F", K=K, Z=Z)
    if not pi.is_all:
        chk.expect(Z == hypercentre(G, pi, gf), "(6) Z_piF = Z_pi(G_pi' * F)", Z=Z, Z_gf=hypercentre(G, pi, gf))
    if fF.sn_closed:
        chk.expect(is_subgroup_member(G, Z, gf), "(7) Z in G_pi' * F", Z=Z)
    return chk.report("Lem2.8", G, params, detail={"clauses_4_5": fix})


def check_lemma_2_10(G: FiniteGroup, F: ClassExpr, ctx=None) -> PropositionReport:
    params = _params(F=F)
    fF = flags(F)
    if not (fF.formation and fF.saturated):
        return _skip("Lem2.10", G, params, "hypothesis: F saturated formation")
    chk = _Checker()
    Z = hypercentre(G, P, F)
    for E in _nontrivial_normals(G):
        ps = prime_divisors(E.order)
        if len(ps) != 1 or not E <= Z:
            continue
        p = ps[0]
        loc = canonical_local(F, p)
        if loc is None:
            return _skip("Lem2.10", G, params, f"no canonical local definition registered at p={p}")
        C = G.centralizer(E)
        ok = loc is not False and is_member(_quot(G, C)[0], loc)
        chk.expect(ok, "G/C_G(E) in F(p)", E=E, p=p, local=str(loc))
    return chk.report("Lem2.10", G, params)


def _b_route(G: FiniteGroup, L: Subgroup, K: Subgroup, F: ClassExpr, pi: PrimeSet, canonical: bool) -> bool:
    B = FormationProduct(npi_class(pi), F)
    Q = _quot(G, factor_centralizer(G, L, K))[0]
    for p in prime_divisors(L.order // K.order):
        if p in pi:
            val = FormationProduct(Gpi({p}), F) if canonical else F
        else:
            val = B
        if not is_member(Q, val):
            return False
    return True


def check_lemma_2_11(G: FiniteGroup, F: ClassExpr, pi: PrimeSet, ctx=None) -> PropositionReport:
    params = _params(F=F, pi=pi)
    if not flags(F).formation:
        return _skip("Lem2.11", G, params, "hypothesis: F formation")
    chk = _Checker()
    B = FormationProduct(npi_class(pi), F)
    for f in chief_series(G).factors:
        sd = is_F_central(G, f.upper, f.lower, B).semidirect_result
        b = _b_route(G, f.upper, f.lower, F, pi, canonical=False)
        bc = _b_route(G, f.upper, f.lower, F, pi, canonical=True)
        chk.expect(sd == b == bc, "semidirect = b-central = B-central", L=f.upper, K=f.lower,
                   semidirect=sd, b=b, canonical=bc)
    return chk.report("Lem2.11", G, params)


def check_lemma_2_12(G: FiniteGroup, F: ClassExpr, pi: PrimeSet, ctx=None) -> PropositionReport:
    params = _params(F=F, pi=pi)
    if not flags(F).formation:
        return _skip("Lem2.12", G, params, "hypothesis: F formation")
    chk = _Checker()
    Z = hypercentre(G, pi, n_star(F))
    R = residual(G, F)
    lhs = Z.is_trivial
    rhs = G.centralizer(R).is_trivial and o_pi(G, pi.complement()).is_trivial
    chk.expect(lhs == rhs, "(1) Z = 1 iff C_G(G^F) = 1 and O_pi'(G) = 1", Z=Z, iff=[lhs, rhs])
    zn = _hyp_zn(G, pi, F)
    chk.expect((Z & R) == zn, "(2) Z & G^F = Z_piN(G^F)", meet=Z & R, Zn=zn)
    if flags(F).saturated:
        Q, proj = _quot(G, zn)
        if zn <= Z:
            chk.expect(proj.image(Z) == hypercentre(Q, pi, F), "(3) Z/Zn = Z_piF(G/Zn)",
                       Z=Z, Zn=zn)
        else:
            chk.expect(False, "(3) Zn <= Z", Z=Z, Zn=zn)
    return chk.report("Lem2.12", G, params)


def check_lemma_3_1(G: FiniteGroup, H: ClassExpr, F: ClassExpr, pi: PrimeSet,
                    ctx: Context | None = None) -> PropositionReport:
    ctx = ctx or Context()
    params = _params(H=H, F=F, pi=pi)
    fh = flags(H)
    if not (fh.fitting and fh.formation and fh.saturated and fh.e_closed and contains_gpi(H, pi.complement())):
        return _skip("Lem3.1", G, params, "hypothesis: H saturated Fitting formation, G_{pi'} in H = EH")
    if not flags(F).formation:
        return _skip("Lem3.1", G, params, "hypothesis: F formation")
    C = FittingProduct(H, n_star(F))
    if flags(F).sn_closed and is_subgroup_member(G, residual(G, C), spi_class(pi)):
        basis = BASIS_INSTANCE
    else:
        basis = ctx.ledger.holds(F, pi, "I", ctx.allow_evidence)
        if basis is None:
            return _skip("Lem3.1", G, params, "condition: neither (i) nor (ii)")
    chk = _Checker()
    ninf = norm_infinity(G, H, F)
    chk.expect(is_subgroup_member(G, ninf, C), "N_inf in H.(N*F)", N_inf=ninf)
    return chk.report("Lem3.1", G, params, basis)


def check_lemma_3_3(G: FiniteGroup, F: ClassExpr, pi: PrimeSet, ctx=None) -> PropositionReport:
    params = _params(F=F, pi=pi)
    if not _s_closed_formation(F):
        return _skip("Lem3.3", G, params, "hypothesis: F = SF formation")
    chk = _Checker()
    z = hypercentre(G, pi, n_star(F))
    n = _norm_inf(G, pi, F)
    chk.expect(z <= n, "Z <= N_inf", Z=z, N_inf=n)
    return chk.report("Lem3.3", G, params)


def check_lemma_3_5(G: FiniteGroup, F: ClassExpr, pi: PrimeSet, ctx: Context | None = None) -> PropositionReport:
    ctx = ctx or Context()
    params = _params(F=F, pi=pi)
    if not _s_closed_formation(F):
        return _skip("Lem3.5", G, params, "hypothesis: F = SF formation")
    if is_member(G, FormationProduct(spi_class(pi), F)):
        basis = BASIS_INSTANCE
    else:
        basis = ctx.ledger.holds(F, pi, "I", ctx.allow_evidence)
        if basis is None:
            return _skip("Lem3.5", G, params, "condition: neither (i) nor (ii)")
    chk = _Checker()
    n = _norm_inf(G, pi, F)
    i = int_x(G, FormationProduct(npi_class(pi), F))
    chk.expect(n <= i, "N_inf <= Int", N_inf=n, Int=i)
    return chk.report("Lem3.5", G, params, basis)


def _primes_in(G: FiniteGroup, pi: PrimeSet) -> tuple[int, ...]:
    return tuple(p for p in G.primes if p in pi)


def check_lemma_4_1(G: FiniteGroup, p: int, ctx=None) -> PropositionReport:
    params = _params(p=p)
    Np = Npi({p})
    psi = _in_sub(G, residual(G, Np), lambda K: _psi(K, p))
    if not psi <= hypercentre(G, P, Np):
        return _skip("Lem4.1", G, params, "hypothesis: Psi_p(G^Np) <= Z_Np(G) fails")
    chk = _Checker()
    chk.expect(is_member(G, Np), "G in N_p", psi=psi)
    return chk.report("Lem4.1", G, params)


def _psi(K: FiniteGroup, p: int) -> Subgroup:
    from normlab.series import psi_p
    return psi_p(K, p)


def check_lemma_4_2(G: FiniteGroup, F: ClassExpr, pi: PrimeSet, ctx=None) -> PropositionReport:
    params = _params(F=F, pi=pi)
    fF = flags(F)
    if not (fF.formation and fF.saturated and fF.s_closed):
        return _skip("Lem4.2", G, params, "hypothesis: F saturated, F = SF")
    if not pi.issubset(class_primes(F)):
        return _skip("Lem4.2", G, params, "hypothesis: pi in pi(F)")
    R = residual(G, F)
    Z = hypercentre(G, pi, F)
    for p in _primes_in(G, pi):
        if not psi_p_of(G, R, p) <= Z:
            return _skip("Lem4.2", G, params, f"hypothesis: Psi_{p}(G^F) <= Z_piF(G) fails")
    chk = _Checker()
    chk.expect(is_member(G, FormationProduct(comp_class(pi), F)), "G in G_pi' * F", Z=Z)
    return chk.report("Lem4.2", G, params)


def check_theorem_4_3(G: FiniteGroup, F: ClassExpr, pi: PrimeSet, ctx: Context | None = None) -> PropositionReport:
    ctx = ctx or Context()
    params = _params(F=F, pi=pi)
    if not _s_closed_formation(F):
        return _skip("Thm4.3", G, params, "hypothesis: F = SF formation")
    C = FormationProduct(npi_class(pi), F)
    R = residual(G, C)
    n = _norm_inf(G, pi, F)
    for p in _primes_in(G, pi):
        if not psi_p_of(G, R, p) <= n:
            return _skip("Thm4.3", G, params, f"hypothesis: Psi_{p}(G^(N_pi*F)) <= N_inf fails")
    if is_member(G, FormationProduct(spi_class(pi), F)):
        basis, route = BASIS_INSTANCE, "(i)"
    else:
        basis, route = None, None
        options = [("(ii)", pi)]
        if 2 in pi:
            options.append(("(iii)", PrimeSet.of(2)))
        if pi.cofinite:
            for q in (3, 5, 7):
                sigma = PrimeSet.of(2, q).complement()
                if sigma.issubset(pi):
                    options.append(("(iv)", sigma))
        for label, sigma in options:
            b = ctx.ledger.holds(F, sigma, "II", ctx.allow_evidence)
            if b is not None:
                basis, route = b, label
                break
        if basis is None:
            return _skip("Thm4.3", G, params, "condition: none of (i)-(iv)")
    chk = _Checker()
    chk.expect(is_member(G, C), "G in N_pi * F", N_inf=n)
    return chk.report("Thm4.3", G, params, basis, detail={"route": route})


def _elements_inside(G: FiniteGroup, N: Subgroup, pred) -> bool:
    orders = G.element_orders
    return all(x in N for x in range(G.order) if pred(int(orders[x])))


def _is_prime_order(n: int) -> bool:
    return n > 1 and prime_divisors(n) == (n,)


def _cor_4(prop: str, G: FiniteGroup, F: ClassExpr, pred, odd_only: bool, fl_bounds) -> PropositionReport:
    params = _params(F=F)
    if not _s_closed_formation(F) or not within_supersolvable(F):
        return _skip(prop, G, params, "hypothesis: F = SF formation inside U")
    n = norm_infinity(G, ONE, F)
    if not _elements_inside(G, n, pred):
        return _skip(prop, G, params, "hypothesis: element containment in N_inf_F fails")
    chk = _Checker()
    solv = is_solvable(G)
    chk.expect(solv, "(1) G solvable")
    if not solv:
        return chk.report(prop, G, params)
    nil = within_nilpotent(F)
    pl_bound = 1 if nil else 2
    lengths = {}
    for p in G.primes:
        if odd_only and p == 2:
            continue
        lengths[p] = p_length(G, p)
        chk.expect(lengths[p] <= pl_bound, f"(2) p-length <= {pl_bound}", p=p, length=lengths[p])
    fl = fitting_length(G)
    bound = fl_bounds[1] if nil else fl_bounds[0]
    chk.expect(fl <= bound, f"(3) Fitting length <= {bound}", length=fl)
    return chk.report(prop, G, params, detail={"p_lengths": {str(k): v for k, v in lengths.items()},
                                               "fitting_length": fl})


def check_corollary_4_4(G: FiniteGroup, F: ClassExpr, ctx=None) -> PropositionReport:
    return _cor_4("Cor4.4", G, F, lambda o: _is_prime_order(o) and o % 2 == 1, True, (4, 3))


def check_corollary_4_5(G: FiniteGroup, F: ClassExpr, ctx=None) -> PropositionReport:
    return _cor_4("Cor4.5", G, F, lambda o: _is_prime_order(o) or o == 4, False, (3, 2))


# -- the two computed remarks ----------------------------------------------------------


def _remark(prop: str, G: FiniteGroup, X: ClassExpr, Y: ClassExpr) -> PropositionReport:
    chk = _Checker()
    crit = crit_s(G, X)
    inside = is_member(G, Y)
    chk.expect(crit, f"G in Crit_S({X})")
    chk.expect(not inside, f"G not in {Y}")
    return chk.report(prop, G, _params(X=X, Y=Y), detail={"crit": crit, "member": inside})


def check_remark_1_4(G: FiniteGroup | None = None, ctx=None) -> PropositionReport:
    from normlab.corpus import builtin_group
    G = G or builtin_group("A5")
    return _remark("Rem1.4", G, FormationProduct(Gpi({3}), Npi({3})), FormationProduct(SOLVABLE, Npi({3})))


def check_remark_1_5(G: FiniteGroup | None = None, ctx=None) -> PropositionReport:
    from normlab.corpus import builtin_group
    G = G or builtin_group("S3")
    return _remark("Rem1.5", G, FormationProduct(Gpi({2}), Gpi({3})), FormationProduct(NILPOTENT, Gpi({3})))


# -- corpus-level boundary evidence ------------------------------------------------------


def _corpus_id(groups: list[FiniteGroup]) -> str:
    h = hashlib.sha256()
    for G in groups:
        h.update(G.id.encode())
    return h.hexdigest()[:16]


def check_boundary_evidence(groups: list[FiniteGroup], F: ClassExpr, pi: PrimeSet, cond: str,
                            ledger: BoundaryConditionLedger | None = None) -> LedgerStatus:
    """Scan the corpus for critical groups violating the condition; never upgrades to established."""
    if cond not in CONDITIONS:
        raise ValueError(f"unknown condition {cond}")
    counts = {"critical": 0, "checked_primes": []}
    if cond == "I":
        tests = [(None, F, FormationProduct(npi_class(pi), F))]
    else:
        primes = sorted({p for G in groups for p in G.primes if p in pi})
        counts["checked_primes"] = primes
        target = FormationProduct(spi_class(pi) if cond == "II" else npi_class(pi), F)
        tests = [(p, FormationProduct(Gpi({p}), F), target) for p in primes]
    status = None
    for p, X, target in tests:
        for G in groups:
            if not crit_s(G, X):
                continue
            if cond == "III-S" and not is_solvable(G):
                continue
            counts["critical"] += 1
            if not is_member(G, target):
                status = LedgerStatus(COUNTEREXAMPLE, witness={
                    "group": G.name, "group_id": G.id, "p": p, "critical_for": str(X), "outside": str(target)})
                break
        if status:
            break
    if status is None:
        status = LedgerStatus(EVIDENCE, counts=counts)
    if ledger is not None:
        ledger.record(F, pi, cond, status)
    return status


def _corpus_report(prop: str, groups, F, pi, cond, cite_prefix: str) -> PropositionReport | None:
    cite = _base_fact(F, cond)
    if cite is None or not cite.startswith(cite_prefix):
        return None
    st = check_boundary_evidence(groups, F, pi, cond)
    params = _params(F=F, pi=pi, condition=cond)
    outcome = FAIL if st.kind == COUNTEREXAMPLE else PASS
    return PropositionReport(prop, "corpus", _corpus_id(groups), params, outcome,
                             None, st.witness or {}, BASIS_EVIDENCE, {"ledger": st.to_dict(), "citation": cite})


def corpus_prop_3_6(groups, F_grid=None) -> list[PropositionReport]:
    out = []
    for F in F_grid or F_GRID:
        r = _corpus_report("Prop3.6", groups, F, P, "I", "Prop 3.6")
        if r:
            out.append(r)
    return out


def corpus_prop_3_7(groups, F_grid=None) -> list[PropositionReport]:
    out = []
    for F in F_grid or F_GRID:
        r = _corpus_report("Prop3.7", groups, F, P, "II", "Prop 3.7")
        if r:
            out.append(r)
    return out


def corpus_prop_3_8(groups, F_grid=None) -> list[PropositionReport]:
    out = []
    for F in (F_grid or F_GRID + F_EXTRA_III_S):
        for cond in ("III", "III-S"):
            r = _corpus_report("Prop3.8", groups, F, P, cond, "Prop 3.8")
            if r:
                out.append(r)
    return out


def corpus_lemma_2_7(groups, F_grid=None, pi_grid=None) -> list[PropositionReport]:
    """Per critical group: G in S_pi*F implies G in N_pi*F."""
    out = []
    for F in F_grid or F_GRID:
        for pi in pi_grid or PI_GRID:
            failures = []
            crit = 0
            for G in groups:
                if not crit_s(G, F):
                    continue
                crit += 1
                if is_member(G, FormationProduct(spi_class(pi), F)) and not is_member(
                        G, FormationProduct(npi_class(pi), F)):
                    failures.append({"group": G.name, "group_id": G.id})
            params = _params(F=F, pi=pi)
            out.append(PropositionReport(
                "Lem2.7", "corpus", _corpus_id(groups), params, FAIL if failures else PASS, None,
                {"failures": failures} if failures else {}, BASIS_EVIDENCE, {"critical": crit}))
    return out


def ledger_fixed_remarks(groups, F_grid=None, pi_grid=None) -> list[PropositionReport]:
    """Corpus reproduction of the two remark counterexamples (boundary evidence scans)."""
    out = []
    for prop, F, cond in (("Rem1.4", Npi({3}), "II"), ("Rem1.5", Gpi({3}), "III")):
        st = check_boundary_evidence(groups, F, P, cond)
        found = st.kind == COUNTEREXAMPLE
        out.append(PropositionReport(
            prop + "-corpus", "corpus", _corpus_id(groups), _params(F=F, pi=P, condition=cond),
            PASS if found else SKIP, None if found else "no counterexample in this corpus",
            {}, BASIS_EVIDENCE, {"ledger": st.to_dict()}))
    return out


# -- registry ------------------------------------------------------------------------


@dataclass(frozen=True)
class Proposition:
    prop_id: str
    summary: str
    scope: str  # "group", "instance" (fixed group) or "corpus"
    grid: Callable[[dict], list[dict]] | None
    check: Callable


def _grid(**axes):
    """Cartesian grid builder; overrides in ``opts`` replace an axis wholesale."""

    def build(opts: dict) -> list[dict]:
        combos = [{}]
        for name, default in axes.items():
            values = opts.get(name) or default
            combos = [dict(c, **{name: v}) for c in combos for v in values]
        return combos

    return build


def _theorem_a_grid(opts: dict) -> list[dict]:
    out = []
    for F in opts.get("F") or F_GRID:
        for pi in opts.get("pi") or PI_GRID:
            if opts.get("H"):
                Hs = list(opts["H"])
            else:
                Hs = [ONE] if pi.is_all else [comp_class(pi)]
                if contains_gpi(SOLVABLE, pi.complement()):
                    Hs.append(SOLVABLE)
            for H in Hs:
                out.append({"H": H, "F": F, "pi": pi})
    return out


REGISTRY: dict[str, Proposition] = {}


def _register(prop_id, summary, scope, grid, check):
    REGISTRY[prop_id] = Proposition(prop_id, summary, scope, grid, check)


_FP = _grid(F=F_GRID, pi=PI_GRID)
_register("ThmA", "five-way equivalence for H.(N*F)", "group", _theorem_a_grid, check_theorem_a)
_register("Cor3.2", "five-way equivalence for N_pi*F", "group", _FP, check_corollary_3_2)
_register("ThmB1", "N_inf_{pi'F} = Z_{pi(N*F)} under boundary (II)", "group", _FP, check_theorem_b1)
_register("ThmC", "N_inf = Z = Int under boundary (III)", "group",
          _grid(F=F_GRID + F_EXTRA_III_S, pi=PI_GRID), check_theorem_c)
_register("ThmD", "N_inf_{pi'F} = Z_{pi(N*F)} for G in S_pi*F", "group", _FP, check_theorem_d)
_register("ThmE", "N_inf = Z = Int for solvable G under (III) in S", "group",
          _grid(F=F_GRID + F_EXTRA_III_S, pi=PI_GRID), check_theorem_e)
_register("Cor3.4", "quotient by Z_piN(G^F) identities", "group", _FP, check_corollary_3_4)
_register("Lem2.1", "residuals under quotients and subgroups", "group", _grid(F=LEM21_F), check_lemma_2_1)
_register("Lem2.2", "radicals under normal subgroups, subgroups, quotients", "group",
          _grid(H=LEM22_H), check_lemma_2_2)
_register("Lem2.3", "norm inclusions and non-triviality", "group", _grid(H=LEM23_H, F=LEM23_F), check_lemma_2_3)
_register("Lem2.5", "terminal norm inclusions and meet formula", "group",
          _grid(H=LEM23_H, F=LEM23_F), check_lemma_2_5)
_register("Lem2.6", "norms split over coprime direct factors", "group",
          _grid(H=LEM23_H, F=LEM23_F), check_lemma_2_6)
_register("Lem2.7", "critical groups in S_pi*F lie in N_pi*F", "corpus", None, corpus_lemma_2_7)
_register("Lem2.8", "hypercentre identities for saturated F", "group", _grid(F=LEM28_F, pi=PI_GRID),
          check_lemma_2_8)
_register("Lem2.10", "G/C_G(E) in F(p) for hypercentral p-subgroups", "group", _grid(F=LEM210_F),
          check_lemma_2_10)
_register("Lem2.11", "centrality routes agree for N_pi*F", "group", _FP, check_lemma_2_11)
_register("Lem2.12", "hypercentre of N*F versus G^F", "group", _FP, check_lemma_2_12)
_register("Lem3.1", "N_inf_{H,F} lies in H.(N*F)", "group", _theorem_a_grid, check_lemma_3_1)
_register("Lem3.3", "Z_{pi(N*F)} <= N_inf_{pi'F}", "group", _FP, check_lemma_3_3)
_register("Lem3.5", "N_inf_{pi'F} <= Int_{N_pi*F}", "group", _FP, check_lemma_3_5)
_register("Lem4.1", "Psi_p criterion for p-nilpotence", "group", _grid(p=PSI_PRIMES), check_lemma_4_1)
_register("Lem4.2", "Psi_p criterion for G_pi'*F", "group", _grid(F=LEM28_F, pi=PI_GRID), check_lemma_4_2)
_register("Thm4.3", "Psi_p criterion for N_pi*F", "group", _FP, check_theorem_4_3)
_register("Cor4.4", "p-length and Fitting length, odd prime orders", "group", _grid(F=COR44_F),
          check_corollary_4_4)
_register("Cor4.5", "p-length and Fitting length, prime orders and 4", "group", _grid(F=COR44_F),
          check_corollary_4_5)
_register("Rem1.4", "A5 is S-critical for G_3*N_3 and outside S*N_3", "instance", None, check_remark_1_4)
_register("Rem1.5", "S3 is S-critical for G_2*G_3 and outside N*G_3", "instance", None, check_remark_1_5)
_register("Prop3.6", "corpus evidence for boundary (I)", "corpus", None, corpus_prop_3_6)
_register("Prop3.7", "corpus evidence for boundary (II)", "corpus", None, corpus_prop_3_7)
_register("Prop3.8", "corpus evidence for boundary (III) and (III) in S", "corpus", None, corpus_prop_3_8)

PROPOSITION_IDS = tuple(REGISTRY)


class UnknownProposition(KeyError):
    pass


def select(ids: str | Iterable[str] | None) -> list[str]:
    """Resolve a selection: 'all', a comma list, or an iterable. Empty means none."""
    if ids is None:
        return []
    if isinstance(ids, str):
        if ids.strip() == "all":
            return list(PROPOSITION_IDS)
        ids = [s.strip() for s in ids.split(",") if s.strip()]
    out = []
    for i in ids:
        if i not in REGISTRY:
            raise UnknownProposition(i)
        if i not in out:
            out.append(i)
    return out


def _timed(fn, *args, **kwargs) -> PropositionReport:
    t = time.perf_counter()
    r = fn(*args, **kwargs)
    r.timing = time.perf_counter() - t
    return r


def run_group(G: FiniteGroup, prop_ids: list[str], opts: dict | None = None,
              ctx: Context | None = None) -> list[PropositionReport]:
    """All group-scope checks for one group."""
    opts = opts or {}
    ctx = ctx or Context()
    out = []
    for pid in prop_ids:
        prop = REGISTRY[pid]
        if prop.scope != "group":
            continue
        for params in prop.grid(opts):
            out.append(_timed(prop.check, G, ctx=ctx, **params))
    return out


_POOL_STATE = None


def _run_index(i: int) -> list[PropositionReport]:
    # workers are forked, so they see the parent's groups without pickling them
    groups, prop_ids, opts, ctx = _POOL_STATE
    return run_group(groups[i], prop_ids, opts, ctx)


def run_verification(groups: list[FiniteGroup], prop_ids: Iterable[str], opts: dict | None = None,
                     ctx: Context | None = None, jobs: int = 1) -> list[PropositionReport]:
    """Every selected proposition over the corpus, sorted deterministically."""
    prop_ids = select(list(prop_ids)) if not isinstance(prop_ids, str) else select(prop_ids)
    opts = opts or {}
    ctx = ctx or Context()
    reports: list[PropositionReport] = []
    if jobs > 1 and len(groups) > 1:
        import multiprocessing as mp
        from concurrent.futures import ProcessPoolExecutor

        global _POOL_STATE
        _POOL_STATE = (groups, prop_ids, opts, ctx)
        try:
            with ProcessPoolExecutor(max_workers=jobs, mp_context=mp.get_context("fork")) as pool:
                for part in pool.map(_run_index, range(len(groups))):
                    reports.extend(part)
        finally:
            _POOL_STATE = None
    else:
        for G in groups:
            reports.extend(run_group(G, prop_ids, opts, ctx))
    for pid in prop_ids:
        prop = REGISTRY[pid]
        if prop.scope == "instance":
            reports.append(_timed(prop.check))
        elif prop.scope == "corpus":
            kw = {}
            if opts.get("F"):
                kw["F_grid"] = tuple(opts["F"])
            if pid == "Lem2.7" and opts.get("pi"):
                kw["pi_grid"] = tuple(opts["pi"])
            reports.extend(prop.check(groups, **kw))
    reports.sort(key=lambda r: r.sort_key())
    return reports


def summarize(reports: list[PropositionReport]) -> dict:
    out = {"total": len(reports), "pass": 0, "skip": 0, "fail": 0, "by_proposition": {}}
    for r in reports:
        out[r.outcome] += 1
        bp = out["by_proposition"].setdefault(r.prop_id, {"pass": 0, "skip": 0, "fail": 0})
        bp[r.outcome] += 1
    out["by_proposition"] = dict(sorted(out["by_proposition"].items()))
    return out


# names used by external callers
check_theorem_A = check_theorem_a
check_theorem_D = check_theorem_d
check_theorem_C_instance = check_theorem_c
check_theorem_E_instance = check_theorem_e

_LEMMAS = {
    "Lem2.1": check_lemma_2_1, "Lem2.2": check_lemma_2_2, "Lem2.3": check_lemma_2_3,
    "Lem2.5": check_lemma_2_5, "Lem2.6": check_lemma_2_6, "Lem2.8": check_lemma_2_8,
    "Lem2.10": check_lemma_2_10, "Lem2.11": check_lemma_2_11, "Lem2.12": check_lemma_2_12,
    "Lem3.1": check_lemma_3_1, "Lem3.3": check_lemma_3_3, "Lem3.5": check_lemma_3_5,
    "Lem4.1": check_lemma_4_1, "Lem4.2": check_lemma_4_2,
}


def check_lemma(G: FiniteGroup, lemma_id: str, params: dict | None = None,
                ctx: Context | None = None) -> PropositionReport:
    if lemma_id not in _LEMMAS:
        raise UnknownProposition(lemma_id)
    return _LEMMAS[lemma_id](G, ctx=ctx, **(params or {}))


def check_section4(G: FiniteGroup, F: ClassExpr, pi: PrimeSet | None = None,
                   ctx: Context | None = None) -> list[PropositionReport]:
    """Thm4.3 (when pi is given) plus Cor4.4 and Cor4.5."""
    out = [check_theorem_4_3(G, F, pi, ctx)] if pi is not None else []
    return out + [check_corollary_4_4(G, F), check_corollary_4_5(G, F)]


__all__ = [
    "BoundaryConditionLedger", "CONDITIONS", "Context", "F_GRID", "LedgerStatus", "PI_GRID",
    "PROPOSITION_IDS", "Proposition", "REGISTRY", "UnknownProposition", "check_boundary_evidence",
    "check_corollary_3_2", "check_corollary_3_4", "check_corollary_4_4", "check_corollary_4_5",
    "check_lemma_2_1", "check_lemma_2_2", "check_lemma_2_3", "check_lemma_2_5", "check_lemma_2_6",
    "check_lemma_2_8", "check_lemma_2_10", "check_lemma_2_11", "check_lemma_2_12", "check_lemma_3_1",
    "check_lemma_3_3", "check_lemma_3_5", "check_lemma_4_1", "check_lemma_4_2", "check_remark_1_4",
    "check_remark_1_5", "check_theorem_4_3", "check_theorem_a", "check_theorem_b1", "check_theorem_c",
    "check_theorem_d", "check_theorem_e", "check_theorem_A", "check_theorem_D",
    "check_theorem_C_instance", "check_theorem_E_instance", "check_lemma", "check_section4", "established", "run_group", "run_verification", "select",
    "summarize",
]
