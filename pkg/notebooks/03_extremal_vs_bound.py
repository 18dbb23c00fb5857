"""
Exact extremal sizes against the bound
======================================

gamma is the largest F-difference-free set in F_q[x] of degree < n,
found by exact search; the sweep also records the rank bound 2T.
"""

from fqsarkozy.pipeline import sweep

for q, nmax in ((2, 8), (3, 4)):
    result = sweep([q], [2], range(1, nmax + 1))
    print(f"q={q} F=b^2")
    print("  n  gamma  2T   c t^n")
    for row in result.rows:
        print(f"{row['n']:3d} {row['gamma']:6d} {row['two_T']:4d} {row['bound_paper']:9.2f}")
