"""Staircases, the block specialization and the chain for a 2-curvilinear class.

Run: python demos/01_staircases_and_chains.py
"""

from maxrank.staircase import (Staircase, corollary_staircase, espbloc_step, heights,
                               mainthm_check, scheme_length, sigma, specialization_chain,
                               wins_check)

E = Staircase((5, 2))
print("E =", E, "heights", heights(E), "complement", sum(E.stairs))
for p in (1, 4):
    print(f"  deleting slice {p} leaves {sigma(E, p)}")

# A class with N = 100, ell = 60 sits inside the region of the main inequality.
N, ell = 100, 60
print(f"\n({N}, {ell}): main inequality {mainthm_check(N, ell)}")
rep = specialization_chain(N, ell)
for st in rep.stages:
    print(f"  {st.label}: H_{{{st.m},{st.E},{st.s}}}  length {scheme_length(st.m, st.E)}")
print("  certified:", rep.certified)

# Slightly larger N - ell triggers one block specialization.
rep = specialization_chain(200, 140)
for st in rep.stages:
    print(f"  (200, 140) {st.label}: H_{{{st.m},{st.E},{st.s}}}")
print("  certified:", rep.certified)

# The table row (78, 47) is outside the inequality: the chain stops early.
E78 = corollary_staircase(78, 47, 5)
print(f"\n(78, 47) lands on H_{{10,{E78},5}} of length {scheme_length(10, E78)}; "
      f"wins_check {wins_check(E78, 10, 5)}")
step = espbloc_step(E78, 5)
print(f"one more block step would give branch {step.branch}: H_{{{step.m},{step.E},{step.s}}}")

# How much of the (N, ell) plane does the chain certify?
count = sum(specialization_chain(n, l).certified
            for n in range(2, 301) for l in range(2, n - 1) if mainthm_check(n, l))
print(f"\ncertified pairs with N <= 300: {count}")
