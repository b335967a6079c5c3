"""
Arithmetic degrees of the monomials x^^k on the complete flag variety F_3.

The engine only knows the Schubert calculus and the invariant form algebra,
so the table below is computed from scratch. The linear relation
e_1(x^) = 0 is then checked directly against it.

Run with:  python3 demos/degree_table.py
"""

from fractions import Fraction

from flagchow import FlagType
from flagchow.chow import degree_table, height_by_multinomial, height_pluriplucker
from flagchow.perm import iter_exponents

n = 3
table = dict(degree_table(n))
print(f"4 * deg(x^^k) on F_{n}:")
for k, value in table.items():
    print(f"  {''.join(map(str, k))}  {4 * value}")

# x^_1 + x^_2 + x^_3 = 0, so each row of degree dim collapses to zero
dim = FlagType.complete(n).dim
worst = Fraction(0)
for base in iter_exponents(n, dim):
    s = sum(table[tuple(b + (i == j) for i, b in enumerate(base))] for j in range(n))
    worst = max(worst, abs(s))
print(f"largest |deg(e_1 x^^k)| over |k| = {dim}: {worst}")

print(f"height of F_{n}: {height_pluriplucker(FlagType.complete(n))}  (multinomial sum {height_by_multinomial(n)})")
