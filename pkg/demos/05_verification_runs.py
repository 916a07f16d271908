"""
Running the verification harness
================================

Each registered proposition is checked per group and parameter choice.
Outcomes are pass, skip (with a keyed reason) or fail (with a witness).
"""

from collections import Counter

from normlab import builtin_corpus
from normlab.harness import REGISTRY, Context, check_boundary_evidence, run_verification, summarize
from normlab.classes import ALL_PRIMES, parse_class

print(len(REGISTRY), "registered propositions")

groups = builtin_corpus(max_order=24)
reports = run_verification(groups, "ThmD,ThmC,Lem2.1")
s = summarize(reports)
print("small corpus:", s["total"], "reports,", s["pass"], "pass,", s["skip"], "skip,", s["fail"], "fail")
print("skip reasons:", Counter(r.reason for r in reports if r.reason).most_common(3))

# boundary conditions: established entries come from a static table;
# corpus scans only ever add evidence or counterexamples
ctx = Context()
for F, cond in (("N", "III"), ("Npi({3})", "II"), ("Gpi({3})", "III")):
    st = check_boundary_evidence(builtin_corpus(), parse_class(F), ALL_PRIMES, cond, ctx.ledger)
    print(f"F={F} condition {cond}: {st.kind}", st.witness or st.counts)
