"""
Exact sparse polynomials over Q, divided differences and Schubert calculus.

Polynomials live in Q[X_1, X_2, ...]; the variable count grows when an
operation needs a new variable (the divided difference d_n of a polynomial in
X_1..X_n involves X_{n+1}).

>>> x1, x2 = variable(1), variable(2)
>>> str(divided_difference(1, x1 * x1))
'X1 + X2'
>>> str(schubert(Permutation((1, 3, 2))))
'X1 + X2'
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence, TypeVar, Union

from .perm import Permutation, all_permutations, longest_element

__all__ = [
    "SparsePolynomial",
    "EngineFault",
    "variable",
    "constant",
    "symmetric_generators",
    "divided_difference",
    "divided_difference_word",
    "schubert",
    "dual_schubert",
    "scalar_product",
    "schubert_expand",
    "ideal_decompose",
    "elementary_split",
    "to_elementary",
    "to_block_elementary",
    "structure_constants",
    "newton_chern",
    "evaluate",
    "monomial",
    "elementary",
    "staircase",
    "reassemble",
    "apply_word",
    "reverse_variables",
]

Scalar = Union[int, Fraction]
Exponent = tuple[int, ...]


class EngineFault(RuntimeError):
    """An internal consistency check failed; this indicates a bug, not bad input."""


def _pad(e: Exponent, m: int) -> Exponent:
    return e + (0,) * (m - len(e)) if len(e) < m else e


class SparsePolynomial:
    """
    A polynomial with exact rational coefficients.

    ``terms`` maps exponent tuples (one slot per variable) to nonzero
    Fractions. Instances are treated as immutable.
    """

    __slots__ = ("_terms", "_nvars", "_hash")

    def __init__(self, terms: Mapping[Exponent, Scalar] | None = None, nvars: int = 0):
        terms = terms or {}
        m = max([nvars] + [len(e) for e in terms])
        clean: dict[Exponent, Fraction] = {}
        for e, c in terms.items():
            if any(a < 0 for a in e):
                raise ValueError(f"negative exponent {e}")
            c = Fraction(c)
            if c:
                key = _pad(tuple(e), m)
                clean[key] = clean.get(key, Fraction(0)) + c
                if not clean[key]:
                    del clean[key]
        self._terms = clean
        self._nvars = m
        self._hash: int | None = None

    @classmethod
    def _raw(cls, terms: dict[Exponent, Fraction], nvars: int) -> SparsePolynomial:
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._nvars = nvars
        obj._hash = None
        return obj

    # -- accessors -------------------------------------------------------

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    @property
    def variable_count(self) -> int:
        return self._nvars

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def padded(self, m: int) -> SparsePolynomial:
        if m <= self._nvars:
            return self
        return SparsePolynomial._raw({_pad(e, m): c for e, c in self._terms.items()}, m)

    def trimmed_nvars(self) -> int:
        """Index of the last variable that actually occurs."""
        last = 0
        for e in self._terms:
            for i in range(len(e) - 1, -1, -1):
                if e[i]:
                    last = max(last, i + 1)
                    break
        return last

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def homogeneous_part(self, d: int) -> SparsePolynomial:
        return SparsePolynomial._raw(
            {e: c for e, c in self._terms.items() if sum(e) == d}, self._nvars
        )

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self._nvars, Fraction(0))

    def coefficient(self, exponent: Sequence[int]) -> Fraction:
        e = tuple(exponent)
        if len(e) > self._nvars:
            if any(e[self._nvars:]):
                return Fraction(0)
            e = e[: self._nvars]
        return self._terms.get(_pad(e, self._nvars), Fraction(0))

    # -- arithmetic -----------------------------------------------------

    @staticmethod
    def _coerce(other) -> SparsePolynomial | None:
        if isinstance(other, SparsePolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return constant(other)
        return None

    def __add__(self, other) -> SparsePolynomial:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        m = max(self._nvars, o._nvars)
        out = dict(self.padded(m)._terms)
        for e, c in o.padded(m)._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return SparsePolynomial._raw(out, m)

    __radd__ = __add__

    def __neg__(self) -> SparsePolynomial:
        return SparsePolynomial._raw({e: -c for e, c in self._terms.items()}, self._nvars)

    def __sub__(self, other) -> SparsePolynomial:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> SparsePolynomial:
        return (-self) + other

    def scale(self, c: Scalar) -> SparsePolynomial:
        c = Fraction(c)
        if not c:
            return SparsePolynomial._raw({}, self._nvars)
        return SparsePolynomial._raw({e: c * v for e, v in self._terms.items()}, self._nvars)

    def __mul__(self, other) -> SparsePolynomial:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, SparsePolynomial):
            return NotImplemented
        m = max(self._nvars, other._nvars)
        a, b = self.padded(m)._terms, other.padded(m)._terms
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return SparsePolynomial._raw({e: c for e, c in out.items() if c}, m)

    def __rmul__(self, other) -> SparsePolynomial:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> SparsePolynomial:
        if k < 0:
            raise ValueError("negative power")
        result = constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        m = max(self._nvars, o._nvars)
        return self.padded(m)._terms == o.padded(m)._terms

    def __hash__(self) -> int:
        if self._hash is None:
            m = self.trimmed_nvars()
            self._hash = hash(frozenset((e[:m], c) for e, c in self._terms.items()))
        return self._hash

    # -- variable actions ------------------------------------------------

    def permute_variables(self, sigma: Sequence[int]) -> SparsePolynomial:
        """Substitute X_i -> X_{sigma[i-1]} for i = 1..len(sigma)."""
        m = max(self._nvars, len(sigma), max(sigma, default=0))
        out: dict[Exponent, Fraction] = {}
        for e, c in self.padded(m)._terms.items():
            new = [0] * m
            for i, a in enumerate(e):
                target = sigma[i] - 1 if i < len(sigma) else i
                new[target] += a
            out[tuple(new)] = c
        return SparsePolynomial._raw(out, m)

    def swap(self, i: int) -> SparsePolynomial:
        """The action of s_i, exchanging X_i and X_{i+1}."""
        m = max(self._nvars, i + 1)
        out: dict[Exponent, Fraction] = {}
        for e, c in self.padded(m)._terms.items():
            lst = list(e)
            lst[i - 1], lst[i] = lst[i], lst[i - 1]
            out[tuple(lst)] = c
        return SparsePolynomial._raw(out, m)

    def negate_variables(self) -> SparsePolynomial:
        """f(X) -> f(-X)."""
        return SparsePolynomial._raw(
            {e: (-c if sum(e) % 2 else c) for e, c in self._terms.items()}, self._nvars
        )

    def is_symmetric(self, n: int | None = None) -> bool:
        n = self._nvars if n is None else n
        return all(self.swap(i) == self for i in range(1, n))

    # -- text -------------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: (-sum(t[0]), tuple(-a for a in t[0])))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"X{i + 1}" if a == 1 else f"X{i + 1}^{a}" for i, a in enumerate(e) if a
            )
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"SparsePolynomial({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> SparsePolynomial:
        """Inverse of ``str`` for the canonical text form."""
        text = text.replace(" ", "")
        if text in ("", "0"):
            return cls()
        if text[0] not in "+-":
            text = "+" + text
        result = cls()
        i = 0
        while i < len(text):
            sign = -1 if text[i] == "-" else 1
            j = i + 1
            while j < len(text) and text[j] not in "+-":
                j += 1
            chunk = text[i + 1 : j]
            i = j
            coeff = Fraction(sign)
            exps: dict[int, int] = {}
            for factor in chunk.split("*"):
                if factor.startswith("X"):
                    name, _, power = factor[1:].partition("^")
                    idx = int(name)
                    exps[idx] = exps.get(idx, 0) + (int(power) if power else 1)
                else:
                    coeff *= Fraction(factor)
            m = max(exps, default=0)
            e = tuple(exps.get(k, 0) for k in range(1, m + 1))
            result = result + cls({e: coeff}, m)
        return result


def constant(c: Scalar, nvars: int = 0) -> SparsePolynomial:
    return SparsePolynomial({(0,) * nvars: c}, nvars)


def variable(i: int, nvars: int = 0) -> SparsePolynomial:
    if i < 1:
        raise ValueError("variables are indexed from 1")
    m = max(i, nvars)
    e = [0] * m
    e[i - 1] = 1
    return SparsePolynomial({tuple(e): 1}, m)


def monomial(exponents: Sequence[int], c: Scalar = 1) -> SparsePolynomial:
    return SparsePolynomial({tuple(exponents): c}, len(exponents))


def _elementary_in(indices: Sequence[int], k: int, nvars: int) -> SparsePolynomial:
    from itertools import combinations

    terms = {}
    for subset in combinations(indices, k):
        e = [0] * nvars
        for i in subset:
            e[i - 1] = 1
        terms[tuple(e)] = Fraction(1)
    return SparsePolynomial(terms, nvars)


def symmetric_generators(kind: str, k: int, m: int) -> SparsePolynomial:
    """
    e_k or p_k in X_1..X_m.

    >>> str(symmetric_generators("elementary", 2, 3))
    'X1*X2 + X1*X3 + X2*X3'
    >>> symmetric_generators("elementary", 4, 3).is_zero()
    True
    """
    if k < 1 or m < 1:
        raise ValueError("k and m must be positive")
    if kind == "elementary":
        if k > m:
            return SparsePolynomial(nvars=m)
        return _elementary_in(range(1, m + 1), k, m)
    if kind == "power_sum":
        terms = {}
        for i in range(m):
            e = [0] * m
            e[i] = k
            terms[tuple(e)] = 1
        return SparsePolynomial(terms, m)
    raise ValueError(f"unknown kind {kind!r}")


def elementary(k: int, m: int) -> SparsePolynomial:
    if k == 0:
        return constant(1, m)
    return symmetric_generators("elementary", k, m)


# -- divided differences --------------------------------------------------


def divided_difference(i: int, f: SparsePolynomial) -> SparsePolynomial:
    """(f - s_i f) / (X_i - X_{i+1}), computed monomial by monomial."""
    if i < 1:
        raise ValueError("i must be positive")
    m = max(f.variable_count, i + 1)
    out: dict[Exponent, Fraction] = {}
    for e, c in f.padded(m).items():
        p, q = e[i - 1], e[i]
        if p == q:
            continue
        lo, hi = min(p, q), max(p, q)
        sign = c if p > q else -c
        # X^lo Y^lo (X^{hi-lo} - Y^{hi-lo}) / (X - Y)
        for t in range(hi - lo):
            lst = list(e)
            lst[i - 1] = lo + (hi - lo - 1 - t)
            lst[i] = lo + t
            key = tuple(lst)
            v = out.get(key, 0) + sign
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return SparsePolynomial._raw(out, m)


def divided_difference_word(w: Permutation, f: SparsePolynomial) -> SparsePolynomial:
    """d_w = d_{i_1} ... d_{i_l} for a reduced word of w (rightmost applied first)."""
    g = f
    for i in reversed(w.reduced_word()):
        if g.is_zero():
            break
        g = divided_difference(i, g)
    return g


def apply_word(word: Iterable[int], f: SparsePolynomial) -> SparsePolynomial:
    """Apply d_{i_1} ... d_{i_l} to f, rightmost letter first."""
    g = f
    for i in reversed(list(word)):
        g = divided_difference(i, g)
    return g


def staircase(n: int) -> SparsePolynomial:
    return monomial(tuple(range(n - 1, -1, -1)))


@lru_cache(maxsize=None)
def schubert(w: Permutation) -> SparsePolynomial:
    """
    The Schubert polynomial S_w.

    >>> str(schubert(Permutation((3, 2, 1))))
    'X1^2*X2'
    """
    if w.is_dominant():
        return monomial(w.code()) if w.code() else constant(1)
    m = len(w)
    for i in range(1, m):
        if w(i) < w(i + 1):
            return divided_difference(i, schubert(w.swap_positions(i, i + 1)))
    raise EngineFault(f"no ascent found for non-dominant {w!r}")


def reverse_variables(f: SparsePolynomial, n: int) -> SparsePolynomial:
    """The action of w_0 in S_n: X_i -> X_{n+1-i}."""
    if f.trimmed_nvars() > n:
        raise ValueError(f"polynomial involves variables beyond X_{n}")
    return f.padded(n).permute_variables(list(range(n, 0, -1)))


def dual_schubert(w: Permutation, n: int) -> SparsePolynomial:
    """
    S^w(X) = w_0 S_{w w_0}(-X), the dual basis element under the scalar product.

    >>> str(dual_schubert(Permutation(()), 2))
    '-X2'
    """
    if not w.fits_in(n):
        raise ValueError(f"{w!r} is not in S_{n}")
    w0 = longest_element(n)
    return reverse_variables(schubert(w * w0).negate_variables(), n)


def scalar_product(f: SparsePolynomial, g: SparsePolynomial, n: int) -> SparsePolynomial:
    """<f, g> = d_{w_0}(f g) for w_0 in S_n."""
    return divided_difference_word(longest_element(n), f * g)


def schubert_expand(f: SparsePolynomial, n: int) -> dict[Permutation, Fraction]:
    """
    Coefficients a_w of f = sum a_w S_w over w in S^(n).

    a_w is the constant term of d_w f. The search walks w -> s_i w along
    length-increasing steps, so d_{s_i w} f = d_i (d_w f), and prunes branches
    where the derivative vanishes.

    >>> schubert_expand(variable(1) * variable(1), 2)
    {Permutation([3, 1, 2]): Fraction(1, 1)}
    """
    if f.trimmed_nvars() > n:
        raise ValueError(f"polynomial involves variables beyond X_{n}")
    result: dict[Permutation, Fraction] = {}
    seen: set[Permutation] = set()
    frontier: list[tuple[Permutation, SparsePolynomial]] = [(Permutation(()), f)]
    while frontier:
        nxt: dict[Permutation, SparsePolynomial] = {}
        for w, g in frontier:
            c = g.constant_term()
            if c:
                result[w] = c
            if g.degree() <= 0:
                continue
            winv = w.inverse()
            for i in range(1, max(g.trimmed_nvars(), 1) + 1):
                # l(s_i w) > l(w) iff w^{-1}(i) < w^{-1}(i+1)
                if winv(i) > winv(i + 1):
                    continue
                u = Permutation.simple(i) * w
                if u in seen or u in nxt:
                    continue
                h = divided_difference(i, g)
                if not h.is_zero():
                    nxt[u] = h
        seen.update(nxt)
        frontier = list(nxt.items())
    return dict(sorted(result.items(), key=lambda t: (t[0].length(), t[0].window)))


def reassemble(coeffs: Mapping[Permutation, Scalar]) -> SparsePolynomial:
    total = SparsePolynomial()
    for w, c in coeffs.items():
        total = total + schubert(w).scale(c)
    return total


def ideal_decompose(h: SparsePolynomial, n: int) -> dict[Permutation, SparsePolynomial]:
    """
    For h in I_n, the symmetric coefficients g_w = <h, S^w> with h = sum g_w S_w.

    Raises ValueError when h is not in I_n.
    """
    expansion = schubert_expand(h, n)
    bad = [w for w in expansion if w.fits_in(n)]
    if bad:
        raise ValueError(f"polynomial is not in I_{n}: Schubert support meets S_{n} at {bad[0]}")
    out: dict[Permutation, SparsePolynomial] = {}
    for w in all_permutations(n):
        g = scalar_product(h, dual_schubert(w, n), n)
        if not g.is_zero():
            out[w] = g
    return out


# -- symmetric functions ----------------------------------------------------


def to_elementary(f: SparsePolynomial, n: int) -> dict[Exponent, Fraction]:
    """
    Write a symmetric f in X_1..X_n as a polynomial in e_1..e_n.

    Returns a mapping from exponent vectors (k_1..k_n) of e_1^{k_1}...e_n^{k_n}
    to coefficients.

    >>> to_elementary(symmetric_generators("power_sum", 2, 2), 2)
    {(2, 0): Fraction(1, 1), (0, 1): Fraction(-2, 1)}
    """
    blocks = [tuple(range(1, n + 1))]
    return {k[0]: c for k, c in to_block_elementary(f, blocks).items()}


def to_block_elementary(
    f: SparsePolynomial, blocks: Sequence[Sequence[int]]
) -> dict[tuple[Exponent, ...], Fraction]:
    """
    Write f, symmetric within each block of variables, in the elementary
    polynomials of the blocks.

    Keys are tuples (one per block) of exponent vectors (k_1..k_d) for
    e_1..e_d of that block. Uses the lex leading-term algorithm.
    """
    nvars = max((max(b) for b in blocks if b), default=0)
    if f.trimmed_nvars() > nvars:
        raise ValueError("polynomial involves variables outside the blocks")
    positions = [[i - 1 for i in b] for b in blocks]
    order = [i for b in positions for i in b]
    gens: dict[tuple[int, int], SparsePolynomial] = {}

    def gen(bi: int, k: int) -> SparsePolynomial:
        if (bi, k) not in gens:
            gens[(bi, k)] = _elementary_in(blocks[bi], k, nvars)
        return gens[(bi, k)]

    rest = f.padded(nvars)
    out: dict[tuple[Exponent, ...], Fraction] = {}
    guard = 0
    while not rest.is_zero():
        guard += 1
        if guard > 100000:
            raise EngineFault("elementary conversion did not terminate")
        lead = max(rest._terms, key=lambda e: tuple(e[i] for i in order))
        c = rest._terms[lead]
        key: list[Exponent] = []
        term = constant(c, nvars)
        for bi, pos in enumerate(positions):
            lam = [lead[i] for i in pos]
            if any(lam[j] < lam[j + 1] for j in range(len(lam) - 1)):
                raise ValueError("polynomial is not symmetric within blocks")
            ks = tuple(lam[j] - (lam[j + 1] if j + 1 < len(lam) else 0) for j in range(len(lam)))
            key.append(ks)
            for k, mult in enumerate(ks, start=1):
                if mult:
                    term = term * gen(bi, k) ** mult
        out[tuple(key)] = out.get(tuple(key), Fraction(0)) + c
        rest = rest - term
    return {k: v for k, v in out.items() if v}


def elementary_split(h: SparsePolynomial, n: int) -> list[SparsePolynomial]:
    """
    For h in I_n, polynomials f_1..f_n with h = sum_i e_i(X) f_i.

    Built from the symmetric coefficients of :func:`ideal_decompose`: each is
    written in e_1..e_n and every elementary monomial is charged to its
    smallest-index factor.

    >>> [str(f) for f in elementary_split(variable(1) ** 4, 3)]
    ['X1^3', '-X1^2', 'X1']
    """
    fs = [SparsePolynomial(nvars=n) for _ in range(n)]
    es = [elementary(k, n) for k in range(n + 1)]
    for w, g in ideal_decompose(h, n).items():
        sw = schubert(w)
        for ks, c in to_elementary(g, n).items():
            if not any(ks):
                raise EngineFault(f"symmetric coefficient of {w} has a constant term")
            i = next(j for j, k in enumerate(ks) if k)
            rest = list(ks)
            rest[i] -= 1
            term = constant(c, n)
            for k, mult in enumerate(rest, start=1):
                if mult:
                    term = term * es[k] ** mult
            fs[i] = fs[i] + term * sw
    return fs


def structure_constants(
    u: Permutation, v: Permutation, length_cap: int | None = None
) -> dict[Permutation, int]:
    """
    The c_uv^w with S_u S_v = sum c_uv^w S_w.

    >>> structure_constants(Permutation.simple(1), Permutation.simple(1))
    {Permutation([3, 1, 2]): 1}
    """
    product = schubert(u) * schubert(v)
    n = max(product.trimmed_nvars(), 1)
    out: dict[Permutation, int] = {}
    for w, c in schubert_expand(product, n).items():
        if length_cap is not None and w.length() > length_cap:
            continue
        if c.denominator != 1:
            raise EngineFault(f"non-integral structure constant at {w}")
        out[w] = int(c)
    return out


T = TypeVar("T")


def newton_chern(power_sums: Sequence[T], k: int) -> list[T]:
    """
    c_1..c_k from p_1..p_k via i c_i = sum_{j=1}^{i} (-1)^{j-1} c_{i-j} p_j.

    Works in any commutative carrier supporting +, * and scaling by Fraction.

    >>> ps = [symmetric_generators("power_sum", i, 2) for i in (1, 2)]
    >>> str(newton_chern(ps, 2)[1])
    'X1*X2'
    """
    if len(power_sums) < k:
        raise ValueError(f"need {k} power sums, got {len(power_sums)}")
    cs: list[T] = []
    for i in range(1, k + 1):
        acc = power_sums[i - 1] * Fraction((-1) ** (i - 1))
        for j in range(1, i):
            acc = acc + cs[i - j - 1] * power_sums[j - 1] * Fraction((-1) ** (j - 1))
        cs.append(acc * Fraction(1, i))
    return cs


def evaluate(
    f: SparsePolynomial,
    values: Sequence[T],
    one: T,
    zero: T,
    scale: Callable[[T, Fraction], T] = lambda x, c: x * c,
) -> T:
    """Ring-homomorphic evaluation X_i -> values[i-1] into a commutative algebra."""
    m = f.trimmed_nvars()
    if m > len(values):
        raise ValueError(f"need {m} values, got {len(values)}")
    powers: dict[tuple[int, int], T] = {}

    def power(i: int, a: int) -> T:
        if (i, a) not in powers:
            powers[(i, a)] = values[i] if a == 1 else power(i, a - 1) * values[i]
        return powers[(i, a)]

    total = zero
    for e, c in f.sorted_terms():
        term = one
        for i, a in enumerate(e[:m]):
            if a:
                term = term * power(i, a)
        total = total + scale(term, c)
    return total
