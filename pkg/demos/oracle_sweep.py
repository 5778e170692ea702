"""Run the finite-oracle conformance sweep and print a summary.

Usage: python demos/oracle_sweep.py [bound]   (default 64; the acceptance bound is 256)
"""

import sys

from moorecell.oracle import sweep

bound = int(sys.argv[1]) if len(sys.argv) > 1 else 64
r = sweep(bound)
print(f"groups of order <= {bound}: {r['groups']}")
print(f"pairs: {r['pairs']}, checks: {r['checks']}, mismatches: {len(r['mismatches'])}")
print(f"time: {r['seconds']}s")
for m in r["mismatches"][:10]:
    print("  mismatch:", m)
