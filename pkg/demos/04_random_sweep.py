"""
Checking identities on random configurations
============================================

`sweep_cases` draws skew-symmetrizable matrices with |b_ij| <= 3, degrees
r_i <= 3 and reduced walks of up to six steps.  A walk stops early once a
d-vector entry would exceed 10, which keeps the expressions small enough for
desk-scale runs.
"""

import time
from collections import Counter

from gencluster.verify import IDENTITIES, sweep_cases

cases = sweep_cases(seed=7, count=40)
print("ranks:", dict(Counter(len(c.R) for c in cases)))
print("walk lengths:", dict(sorted(Counter(len(c.walk) for c in cases).items())))

for name, check in IDENTITIES.items():
    t0 = time.perf_counter()
    failures = [c.describe() for c in cases if not check(c.pattern(), c.walk)]
    print(f"{name:16s} {len(cases) - len(failures)}/{len(cases)} pass  ({time.perf_counter() - t0:.2f}s)")
    for f in failures:
        print("   failed:", f)
