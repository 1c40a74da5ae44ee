"""The deficient collections in low degree, and how a rank experiment reads.

Run: python demos/02_exceptions_and_low_degree.py
"""

from maxrank.harness import run_suite
from maxrank.schemes import Cusp, Tacnode, assemble_and_rank, verify_general

# Two double points in degree 2: the doubled line through them is always there.
rep = assemble_and_rank([Tacnode(1)] * 2, 2, seed=0)
print(f"2 nodes, d=2: rank {rep.rank} of {rep.expected}, system dimension {rep.dimension}")

# Eleven ordinary cusps impose 55 conditions, as many as curves of degree 9 have.
print("11 cusps, d=9:", verify_general([Cusp(2)] * 11, 9))

# Every collection of A_k schemes whose length fits in degree <= 4.
low = run_suite("low-degree")
deficient = [c["case"] for c in low.cases if c["verdict"] == "ProbablyDeficient"]
print(f"\n{len(low.cases)} collections in degrees 1..4; deficient ones:")
for name in deficient:
    print("  ", name)
print("suite pass:", low.passed)
