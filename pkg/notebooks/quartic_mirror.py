"""
The quartic mirror lattice
==========================

<-4> + U + E8(-1)^2 is the Picard lattice attached to the quartic threefold.
The Vinberg run never certifies it; a budget-limited run shows how the
walls pile up level after level.
"""

from k3cone import Budget, aut_finiteness_report, run_vinberg
from k3cone.catalog import load_catalog
from k3cone.lattice import determinant, signature

entry = load_catalog().get("X4 in P4")
L = entry.lattice
print(entry.label, entry.status.value)
print("rank", L.rank, "signature", tuple(signature(L)), "det", determinant(L))

# a small budget keeps this quick; the default budget stops at level 3
res = run_vinberg(L, budget=Budget(max_candidates=100_000))
for rec in res.transcript:
    print(f"level {rec.level}: {rec.candidates} candidates, {len(rec.accepted)} accepted")
print(res.verdict.value, "-", res.stop_reason)
print(aut_finiteness_report(L, res).summary)
