"""
The exponential base t_{q,k}
============================

For each q and k the bound c * t^n comes from minimising
(1 + x + ... + x^(q-1)) / x^s over 0 < x < 1.
"""

from fqsarkozy.bounds import minimize, table

# q = 2 has a closed form: x* = s / (1 - s)
r = minimize(2, 2, "paper")
print(f"q=2 k=2: s={r.s:.4f} x*={r.x_star:.12f} closed form={r.s / (1 - r.s):.12f}")
print(f"t={r.t:.6f} c={r.c:.6f}")

# the integer digit-sum d gives a smaller exponent base
print(f"exact d: t={minimize(2, 2, 'exact').t:.6f}")

# t stays below q everywhere on the table
print(" q  k  t(paper)  t(exact)")
exact = {(row["q"], row["k"]): row["t"] for row in table(9, 6, "exact")}
for row in table(9, 6, "paper"):
    print(f"{row['q']:2d} {row['k']:2d}  {row['t']:.5f}   {exact[row['q'], row['k']]:.5f}")
