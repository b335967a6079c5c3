"""
Heights of flag varieties in their pluri-Pluecker embeddings.

Projective spaces are a sanity check, since their height is known in closed
form: h(P^m) = 1/2 sum_{k=1}^m sum_{j=1}^k 1/j. Dual flag types give the same
height.

Run with:  python3 demos/heights.py
"""

from fractions import Fraction

from flagchow import FlagType
from flagchow.chow import height_pluriplucker


def projective_height(m: int) -> Fraction:
    return Fraction(1, 2) * sum(Fraction(1, j) for k in range(1, m + 1) for j in range(1, k + 1))


for n in (2, 3, 4):
    r = FlagType((1, n))
    print(f"P^{n - 1}: engine {height_pluriplucker(r)}, closed form {projective_height(n - 1)}")

for ranks in [(2, 4), (1, 3, 4), (1, 2, 4), (2, 3, 4), (1, 2, 3)]:
    print(f"F{ranks}: {height_pluriplucker(FlagType(ranks))}")
