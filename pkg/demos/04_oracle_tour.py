"""The local algebra behind the specializations, checked on truncated jets.

Run: python demos/04_oracle_tour.py
"""

import numpy as np

from maxrank import ideal_oracle as oracle
from maxrank.staircase import Staircase, sigma

E = Staircase((5, 2))
print("E =", E)
for p in (1, 2, 4):
    d = oracle.flatstairs_data(E, p)
    print(f"  p={p}: trace {d['trace']} (h={d['trace_expected']}), residual is "
          f"I_{sigma(E, p)}: {d['residual_is_sigma']}, conservation {d['conservation']}")

print("t is a non-zero-divisor:", oracle.verify_t_flat(E))
print("fiber colengths constant:", oracle.fiber_lengths_constant(E, [0, 1, 2, 3]))

# A member of H_{10,(17,6),5} imposes 78 independent local conditions.
print("codimension of H_{10,(17,6),5}:", oracle.verify_codimform(Staircase((17, 6)), 5, 10))

# The block specialization, seen as a flat limit of condition rows.
for stairs, s in [((5, 2), 1), ((6, 3), 1), ((9, 3), 2)]:
    o = oracle.verify_espbloc_limit(Staircase(stairs), s)
    m, Ei, si = o.target
    print(f"  H_{{{2 * s},{Staircase(stairs)},{s}}} -> H_{{{m},{Ei},{si}}} "
          f"(branch {o.branch}): rows match {o.rows_match}, staircase read back {o.limit_staircase}")

# The differential Horace inclusion on a random space V.
rng = np.random.default_rng(0)
while True:
    V = oracle.horace_instance(E, 3, rng)
    try:
        out = oracle.verify_diff_horace(E, 3, V)
        break
    except oracle.InstanceSkipped:
        pass
print(f"differential Horace on dim V = {len(V)}: kernel {out.kernel_dim}, holds {out.ok}")
