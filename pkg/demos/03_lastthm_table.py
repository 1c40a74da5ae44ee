"""The low-degree table: every row certified in its degree.

For each row all collections of A_k schemes and simple points with the given
invariants are listed and each is checked in general position.  The
H-scheme routes are checked as well.

Run: python demos/03_lastthm_table.py
"""

from maxrank.harness.realizations import enumerate_realizations
from maxrank.harness.suites import H_ROUTES, LASTTHM_ROWS
from maxrank.harness.typespec import parse_types
from maxrank.schemes import verify_general
from maxrank.staircase import specialization_chain

print(f"{'d':>3} {'N':>3} {'ell':>4} {'realizations':>13} {'all maximal':>12}  route")
for d, N, ell in LASTTHM_ROWS:
    reals = enumerate_realizations(N, ell)
    ok = all(verify_general(r, d, seed=i).certified for i, r in enumerate(reals))
    route = H_ROUTES.get((d, N, ell))
    rv = str(verify_general(parse_types(route), d)) if route else "-"
    print(f"{d:>3} {N:>3} {ell:>4} {len(reals):>13} {str(ok):>12}  {route or '-'} {rv}")

t = specialization_chain(78, 47).terminal
print(f"\nthe chain for (78, 47) ends at H_{{{t.m},{t.E},{t.s}}}")
