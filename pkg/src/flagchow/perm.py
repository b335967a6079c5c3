"""
Permutations of the stable symmetric group and the index sets used for
Schubert classes on (partial) flag varieties.

A permutation is stored in one-line notation with its fixed tail trimmed, so
the inclusion of S_n in S_{n+1} is the identity on representations:

>>> Permutation((2, 1, 3)) == Permutation((2, 1))
True
>>> Permutation.parse("3,1,2").length()
2
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import permutations
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Permutation",
    "FlagType",
    "IndexSets",
    "length",
    "longest_element",
    "enumerate_index_sets",
    "monk_indices",
    "code_and_dominance",
    "all_permutations",
    "r_permutations",
    "s_upper",
    "iter_exponents",
]


def _trim(window: Sequence[int]) -> tuple[int, ...]:
    w = list(window)
    while w and w[-1] == len(w):
        w.pop()
    return tuple(w)


@dataclass(frozen=True, order=True)
class Permutation:
    """A finitary permutation of the positive integers, in one-line notation."""

    window: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        w = tuple(int(v) for v in self.window)
        if sorted(w) != list(range(1, len(w) + 1)):
            raise ValueError(f"not a permutation window: {self.window!r}")
        object.__setattr__(self, "window", _trim(w))

    # -- construction -----------------------------------------------------

    @classmethod
    def identity(cls) -> Permutation:
        return cls(())

    @classmethod
    def simple(cls, i: int) -> Permutation:
        """The simple transposition s_i = (i, i+1)."""
        return cls.transposition(i, i + 1)

    @classmethod
    def transposition(cls, i: int, j: int) -> Permutation:
        if i == j or min(i, j) < 1:
            raise ValueError(f"bad transposition ({i},{j})")
        m = max(i, j)
        w = list(range(1, m + 1))
        w[i - 1], w[j - 1] = w[j - 1], w[i - 1]
        return cls(tuple(w))

    @classmethod
    def from_code(cls, code: Sequence[int]) -> Permutation:
        """Inverse of :meth:`code`; any finite sequence of nonnegative integers."""
        code = list(code)
        if any(c < 0 for c in code):
            raise ValueError(f"negative code entry in {code}")
        size = len(code) + (max(code) if code else 0) + 1
        free = list(range(1, size + 1))
        window = [free.pop(c) for c in code]
        return cls(tuple(window + free))

    @classmethod
    def parse(cls, text: str) -> Permutation:
        text = text.strip()
        if not text:
            return cls(())
        return cls(tuple(int(t) for t in text.split(",")))

    # -- basic data -------------------------------------------------------

    def __call__(self, i: int) -> int:
        if i < 1:
            raise ValueError(i)
        return self.window[i - 1] if i <= len(self.window) else i

    def __len__(self) -> int:
        return len(self.window)

    def __str__(self) -> str:
        return ",".join(map(str, self.window)) if self.window else "1"

    def __repr__(self) -> str:
        return f"Permutation({list(self.window)})"

    def one_line(self, m: int) -> tuple[int, ...]:
        """The values w(1), ..., w(m), with m at least the window size."""
        return tuple(self(i) for i in range(1, max(m, len(self)) + 1))

    def is_identity(self) -> bool:
        return not self.window

    def fits_in(self, n: int) -> bool:
        """True if the permutation lies in S_n."""
        return len(self.window) <= n

    @cached_property
    def _length(self) -> int:
        w = self.window
        return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])

    def length(self) -> int:
        return self._length

    def inverse(self) -> Permutation:
        inv = [0] * len(self.window)
        for i, v in enumerate(self.window, start=1):
            inv[v - 1] = i
        return Permutation(tuple(inv))

    def __mul__(self, other: Permutation) -> Permutation:
        """Composition: (u * v)(i) = u(v(i))."""
        m = max(len(self), len(other))
        return Permutation(tuple(self(other(i)) for i in range(1, m + 1)))

    def swap_positions(self, i: int, j: int) -> Permutation:
        """Right multiplication by the transposition (i, j)."""
        w = list(self.one_line(max(i, j)))
        w[i - 1], w[j - 1] = w[j - 1], w[i - 1]
        return Permutation(tuple(w))

    def descents(self) -> list[int]:
        """Positions i with w(i) > w(i+1)."""
        w = self.window
        return [i + 1 for i in range(len(w) - 1) if w[i] > w[i + 1]]

    def last_descent(self) -> int:
        d = self.descents()
        return d[-1] if d else 0

    def code(self) -> tuple[int, ...]:
        w = self.window
        return tuple(sum(1 for j in range(i + 1, len(w)) if w[j] < w[i]) for i in range(len(w)))

    def is_dominant(self) -> bool:
        c = self.code()
        return all(c[i] >= c[i + 1] for i in range(len(c) - 1))

    def reduced_word(self) -> tuple[int, ...]:
        """
        A reduced word (i_1, ..., i_l) with w = s_{i_1} ... s_{i_l}.

        Built by repeatedly peeling the leftmost right descent.

        >>> Permutation((3, 2, 1)).reduced_word()
        (1, 2, 1)
        """
        word: list[int] = []
        w = self
        while not w.is_identity():
            i = w.descents()[0]
            word.append(i)
            w = w.swap_positions(i, i + 1)
        return tuple(reversed(word))

    def is_r_permutation(self, r: FlagType, allow_last: bool = False) -> bool:
        """Descents only at r_1..r_{m-1} (and also at r_m = n if allow_last)."""
        allowed = set(r.ranks if allow_last else r.ranks[:-1])
        return all(d in allowed for d in self.descents())


def length(w: Permutation) -> int:
    """Number of inversions of w."""
    return w.length()


def longest_element(n: int) -> Permutation:
    if n < 1:
        raise ValueError("n must be positive")
    return Permutation(tuple(range(n, 0, -1)))


def code_and_dominance(w: Permutation) -> tuple[tuple[int, ...], bool]:
    return w.code(), w.is_dominant()


def all_permutations(n: int) -> list[Permutation]:
    """S_n sorted by length, then lexicographically."""
    perms = [Permutation(p) for p in permutations(range(1, n + 1))]
    return sorted(perms, key=lambda w: (w.length(), w.one_line(n)))


@dataclass(frozen=True)
class FlagType:
    """Ranks 0 < r_1 < ... < r_m = n of a flag; (1, 2, ..., n) is the complete flag."""

    ranks: tuple[int, ...]

    def __post_init__(self) -> None:
        r = tuple(int(x) for x in self.ranks)
        if len(r) < 2:
            raise ValueError("a flag type needs at least two ranks")
        if r[0] < 1 or any(a >= b for a, b in zip(r, r[1:])):
            raise ValueError(f"ranks must be positive and strictly increasing: {r}")
        object.__setattr__(self, "ranks", r)

    @classmethod
    def complete(cls, n: int) -> FlagType:
        if n < 2:
            raise ValueError("the complete flag needs n >= 2")
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def parse(cls, text: str) -> FlagType:
        return cls(tuple(int(t) for t in text.split(",")))

    def __str__(self) -> str:
        return ",".join(map(str, self.ranks))

    @property
    def n(self) -> int:
        return self.ranks[-1]

    @property
    def is_complete(self) -> bool:
        return self.ranks == tuple(range(1, self.n + 1))

    @property
    def bounds(self) -> tuple[int, ...]:
        """(0, r_1, ..., r_m)."""
        return (0,) + self.ranks

    def blocks(self) -> list[tuple[int, ...]]:
        """Index groups r_{i-1}+1 .. r_i."""
        b = self.bounds
        return [tuple(range(b[i] + 1, b[i + 1] + 1)) for i in range(len(self.ranks))]

    def block_of(self, i: int) -> int:
        for k, blk in enumerate(self.blocks()):
            if i in blk:
                return k
        raise ValueError(i)

    @property
    def dim(self) -> int:
        """Complex dimension of F(r)."""
        n = self.n
        return (n * n - sum(len(b) ** 2 for b in self.blocks())) // 2

    def cross_pairs(self) -> list[tuple[int, int]]:
        """Pairs i < j lying in different blocks (the cotangent directions of F(r))."""
        n = self.n
        return [
            (i, j)
            for i in range(1, n + 1)
            for j in range(i + 1, n + 1)
            if self.block_of(i) != self.block_of(j)
        ]

    def longest_permutation(self) -> Permutation:
        """The r-permutation of maximal length in S_n (the point class)."""
        values: list[int] = []
        top = self.n
        for blk in self.blocks():
            d = len(blk)
            values.extend(range(top - d + 1, top + 1))
            top -= d
        return Permutation(tuple(values))


@dataclass(frozen=True)
class IndexSets:
    """S_n, and the members of S^(n) and T_n = S^(n) minus S_n up to a length cap."""

    n: int
    degree_cap: int
    s_n: tuple[Permutation, ...]
    s_upper: tuple[Permutation, ...]
    t_n: tuple[Permutation, ...]


def _codes(n: int, total: int) -> Iterator[tuple[int, ...]]:
    """Compositions of `total` into n nonnegative parts."""
    if n == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _codes(n - 1, total - first):
            yield (first,) + rest


def s_upper(n: int, length_: int) -> list[Permutation]:
    """
    Members of S^(n) of the given length.

    w lies in S^(n) exactly when its code vanishes beyond position n, so these
    are enumerated by codes of weight `length_` on n slots.
    """
    return [Permutation.from_code(c) for c in _codes(n, length_)]


def enumerate_index_sets(n: int, degree_cap: int, r: FlagType | None = None) -> IndexSets:
    if n < 1:
        raise ValueError("n must be positive")
    if r is not None and r.n != n:
        raise ValueError(f"flag type {r} does not end at n={n}")
    sn = all_permutations(n)
    upper: list[Permutation] = []
    for ell in range(degree_cap + 1):
        upper.extend(sorted(s_upper(n, ell), key=lambda w: w.one_line(n)))
    if r is not None:
        sn = [w for w in sn if w.is_r_permutation(r)]
        # members of T_n always descend at n, which the r-filter must allow
        upper = [w for w in upper if w.is_r_permutation(r, allow_last=True)]
    tn = [w for w in upper if not w.fits_in(n)]
    return IndexSets(
        n=n,
        degree_cap=degree_cap,
        s_n=tuple(sn),
        s_upper=tuple(upper),
        t_n=tuple(tn),
    )


def monk_indices(
    w: Permutation, k: int, n: int
) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """
    Transpositions in the (arithmetic) Monk formula for S_{s_k} * S_w, w in S_n.

    Returns (classical, boundary): classical pairs (i, j) with i <= k < j <= n
    and l(wt) = l(w) + 1; boundary pairs (i, n+1) with i <= k and w(i) > w(j)
    for every i < j <= n.
    """
    if not 1 <= k <= n - 1:
        raise ValueError(f"k={k} outside [1, {n - 1}]")
    if not w.fits_in(n):
        raise ValueError(f"{w!r} is not in S_{n}")
    ell = w.length()
    classical = [
        (i, j)
        for i in range(1, k + 1)
        for j in range(k + 1, n + 1)
        if w.swap_positions(i, j).length() == ell + 1
    ]
    boundary = [
        (i, n + 1)
        for i in range(1, k + 1)
        if all(w(i) > w(j) for j in range(i + 1, n + 1))
    ]
    return classical, boundary


def r_permutations(n: int, r: FlagType) -> list[Permutation]:
    return [w for w in all_permutations(n) if w.is_r_permutation(r)]


def iter_exponents(n: int, total: int) -> Iterable[tuple[int, ...]]:
    """Exponent vectors of length n summing to total, reverse-lexicographic."""
    return _codes(n, total)
