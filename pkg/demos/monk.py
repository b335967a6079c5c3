"""
The arithmetic Monk rule on F_3.

Multiplying a Schubert class by S^_{s_k} with the general product agrees with
the closed Monk formula, which adds boundary terms from the stable range.

Run with:  python3 demos/monk.py
"""

from flagchow import FlagType, Permutation
from flagchow.chow import ArithmeticClass, arithmetic_monk, multiply
from flagchow.perm import all_permutations

r = FlagType.complete(3)
for k in (1, 2):
    for w in all_permutations(3):
        formula = arithmetic_monk(k, w, r)
        product = multiply(ArithmeticClass(r, {Permutation.simple(k): 1}), ArithmeticClass(r, {w: 1}))
        mark = "ok" if formula == product else "MISMATCH"
        print(f"s_{k} * [{w}] = {formula}   {mark}")
