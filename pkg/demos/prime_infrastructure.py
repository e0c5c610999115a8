"""Tour of the exact prime infrastructure.

Builds a ten-million table, queries the counting functions, and runs the
two scan-style checks (prime gaps against 1 + (log p)^2, and the explicit
pi/theta bounds).
"""

import math
import time

from grimmsmooth import build_table, check_dusart, gap_check, gap_scan

t0 = time.time()
table = build_table(10_000_000)
print(f"built table to 1e7 in {time.time() - t0:.2f}s")

# point queries are exact
print(f"pi(1e7)    = {table.pi(10_000_000):,}")
print(f"theta(1e7) = {table.theta(10_000_000):,.3f}   (PNT says ~1e7)")
print(f"p_100000   = {table.nth_prime(100_000):,}")
print(f"pi(p_t) == t round trip: {table.pi(table.nth_prime(100_000)) == 100_000}")

# the first few prime gaps, with the Cramer-style comparison bound
print("\nfirst gaps vs 1 + (log p)^2:")
for rec in list(gap_scan(30, table)):
    print(f"  p={rec.p:<3} next={rec.next_p:<3} gap={rec.gap}  "
          f"bound={rec.cramer_bound:6.2f}  ok={not rec.violates}")

# the full scan to 1e7: the bound holds with room to spare
s = gap_check(10_000_000, table)
worst = 1 + math.log(s.max_gap_p) ** 2
print(f"\ngaps to 1e7: {s.pairs:,} pairs, 0 violations expected "
      f"-> got {len(s.violations)}")
print(f"largest gap {s.max_gap} after p={s.max_gap_p:,} "
      f"(bound there {worst:.1f})")

# explicit bounds: pi(x) < (x/log x)(1 + 1.2762/log x), theta(x) <= 1.00008 x
rep = check_dusart(1_000_000, table)
print(f"\nexplicit bounds to 1e6: ok={rep.ok}")
print(f"  pi bound:    {rep.pi_points_checked:,} integers checked, "
      f"min slack {rep.pi_min_slack:.4f}")
print(f"  theta bound: {rep.theta_primes_checked:,} primes checked, "
      f"min slack {rep.theta_min_slack:.4f}")
