"""
The invariant arithmetic Chow ring of a flag variety, in its split model.

A class is a pair (classical part, form part): rational coefficients on the
lifted Schubert classes S^_w, w an r-permutation in S_n, together with an
invariant form eta standing for a(eta). Products follow

    S^_u * S^_v = sum over S_n of c S^_w + a(sum over T_n of c S~_w),
    S^_u * a(eta) = a(S_u(x) ^ eta),
    a(eta) * a(eta') = a(dd^c eta ^ eta'),

and the arithmetic degree of a(eta) in top degree is half its integral.

>>> r = FlagType.complete(2)
>>> x1 = monomial_class((1, 0), r)
>>> arithmetic_degree(multiply(x1, x1))
Fraction(1, 2)
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, Sequence, Union

from .bcform import FiltrationSpec, bc_chern, bc_symmetric
from .forms import (
    InvariantForm,
    ddc,
    integral_top,
    substitute_flag,
    unit,
    zero,
)
from .perm import FlagType, Permutation, iter_exponents, monk_indices, r_permutations
from .poly import (
    EngineFault,
    SparsePolynomial,
    constant,
    dual_schubert,
    elementary_split,
    monomial,
    scalar_product,
    schubert,
    schubert_expand,
    symmetric_generators,
)

__all__ = [
    "ArithmeticClass",
    "lift",
    "include_form",
    "omega_map",
    "multiply",
    "tilde_schubert",
    "polynomial_class",
    "monomial_class",
    "arithmetic_degree",
    "height_pluriplucker",
    "arithmetic_monk",
    "quotient_chern_class",
    "quotient_chern_number",
    "pullback_to_complete",
    "classes_equivalent",
    "degree_table",
    "unit_class",
    "fiber_point_class",
    "pluriplucker_class",
    "height_by_multinomial",
]

Scalar = Union[int, Fraction]


class ArithmeticClass:
    """An element S^-part + a(form) of the invariant arithmetic Chow ring of F(r)."""

    __slots__ = ("flag", "schubert", "form")

    def __init__(
        self,
        flag: FlagType,
        schubert: Mapping[Permutation, Scalar] | None = None,
        form: InvariantForm | None = None,
    ):
        self.flag = flag
        coeffs = {w: Fraction(c) for w, c in (schubert or {}).items() if c}
        for w in coeffs:
            if not (w.fits_in(flag.n) and w.is_r_permutation(flag)):
                raise ValueError(f"{w} is not an {flag}-permutation in S_{flag.n}")
        self.schubert = dict(sorted(coeffs.items(), key=lambda t: (t[0].length(), t[0].window)))
        self.form = form if form is not None else zero(flag.n)
        if self.form.n != flag.n:
            raise ValueError("form ambient does not match flag")
        bad = [bd for bd in self.form.bidegrees() if bd[0] != bd[1]]
        if bad:
            raise ValueError(f"form part must be of type (p,p), found {bad[0]}")

    def _check(self, other: ArithmeticClass) -> None:
        if other.flag != self.flag:
            raise ValueError(f"flag type mismatch: {self.flag} vs {other.flag}")

    def __add__(self, other: ArithmeticClass) -> ArithmeticClass:
        self._check(other)
        s = dict(self.schubert)
        for w, c in other.schubert.items():
            s[w] = s.get(w, 0) + c
        return ArithmeticClass(self.flag, s, self.form + other.form)

    def __neg__(self) -> ArithmeticClass:
        return self.scale(-1)

    def __sub__(self, other: ArithmeticClass) -> ArithmeticClass:
        return self + (-other)

    def scale(self, c: Scalar) -> ArithmeticClass:
        return ArithmeticClass(
            self.flag, {w: c * v for w, v in self.schubert.items()}, self.form.scale(c)
        )

    def __mul__(self, other) -> ArithmeticClass:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return multiply(self, other)

    def __rmul__(self, other) -> ArithmeticClass:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> ArithmeticClass:
        acc = unit_class(self.flag)
        for _ in range(k):
            acc = multiply(acc, self)
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, ArithmeticClass):
            return NotImplemented
        return self.flag == other.flag and self.schubert == other.schubert and self.form == other.form

    def __hash__(self) -> int:
        return hash((self.flag, frozenset(self.schubert.items()), self.form))

    def is_zero(self) -> bool:
        return not self.schubert and self.form.is_zero()

    def degrees(self) -> set[int]:
        """Arithmetic degrees present: l(w) for S^_w, p+1 for a (p,p)-form."""
        ds = {w.length() for w in self.schubert}
        ds |= {p + 1 for p, _ in self.form.bidegrees()}
        return ds

    def to_json(self) -> dict:
        return {
            "schubert": {str(w) if not w.is_identity() else "1": _q(c) for w, c in self.schubert.items()},
            "form": self.form.to_text(),
            "flag": str(self.flag),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> ArithmeticClass:
        r = FlagType.parse(data["flag"])
        s = {
            (Permutation(()) if k == "1" else Permutation.parse(k)): Fraction(v)
            for k, v in data.get("schubert", {}).items()
        }
        return cls(r, s, InvariantForm.parse(data.get("form", "0"), r.n))

    def __repr__(self) -> str:
        return f"ArithmeticClass({self.to_json()!r})"


def _q(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def unit_class(r: FlagType) -> ArithmeticClass:
    return ArithmeticClass(r, {Permutation(()): 1})


def _spec(r: FlagType) -> FiltrationSpec:
    return FiltrationSpec.from_flag(r)


def lift(f: SparsePolynomial, r: FlagType) -> ArithmeticClass:
    """
    The lift of a reduced polynomial: its Schubert expansion must lie on S_n.

    >>> str(lift(monomial((1, 1, 0)), FlagType.complete(3)).schubert)
    '{Permutation([2, 3, 1]): Fraction(1, 1)}'
    """
    n = r.n
    expansion = schubert_expand(f, n)
    outside = [w for w in expansion if not w.fits_in(n)]
    if outside:
        raise ValueError(f"polynomial is not reduced: its Schubert expansion meets T_{n} at {outside[0]}")
    return ArithmeticClass(r, expansion)


def include_form(eta: InvariantForm, r: FlagType) -> ArithmeticClass:
    """The class a(eta)."""
    return ArithmeticClass(r, {}, eta)


@lru_cache(maxsize=None)
def _schubert_form(w: Permutation, r: FlagType) -> InvariantForm:
    return substitute_flag(schubert(w), r)


def omega_map(c: ArithmeticClass) -> InvariantForm:
    """omega(sum a_w S^_w + a(eta)) = sum a_w S_w(x) + dd^c eta."""
    out = zero(c.flag.n)
    for w, a in c.schubert.items():
        out = out + _schubert_form(w, c.flag).scale(a)
    if not c.form.is_zero():
        out = out + ddc(c.form)
    return out


def _check_tilde_index(w: Permutation, r: FlagType) -> None:
    n = r.n
    if w.fits_in(n):
        raise ValueError(f"{w} lies in S_{n}, not T_{n}")
    if any(d > n for d in w.descents()):
        raise ValueError(f"{w} is not in S^({n})")
    if not w.is_r_permutation(r, allow_last=True):
        raise ValueError(f"{w} is not in T_{{{n},{r}}}")


@lru_cache(maxsize=None)
def _symmetric_tilde(g: SparsePolynomial, r: FlagType) -> InvariantForm:
    return bc_symmetric(_spec(r), g.padded(r.n))


@lru_cache(maxsize=None)
def tilde_schubert(w: Permutation, r: FlagType) -> InvariantForm:
    """
    S~_w = sum_{v} (-1)^{l(v)+l(w)} <S_w, S^v>~ ^ S_v(x), v over the
    r-permutations of S_n, for w in T_{n,r}.

    >>> str(tilde_schubert(Permutation((3, 1, 2)), FlagType.complete(2)))
    '+ O12'
    """
    _check_tilde_index(w, r)
    n = r.n
    sw = schubert(w)
    total = zero(n)
    for v in r_permutations(n, r):
        g = scalar_product(sw, dual_schubert(v, n), n)
        if g.is_zero():
            continue
        term = _symmetric_tilde(g, r) * _schubert_form(v, r)
        total = total + (term if (v.length() + w.length()) % 2 == 0 else -term)
    return total


def _split_route_form(h: SparsePolynomial, r: FlagType) -> InvariantForm:
    """h(x^) for h in I_n, via h = sum e_i f_i and e_i(x^) = (-1)^i a(c_i~)."""
    n = r.n
    spec = _spec(r)
    total = zero(n)
    for i, f in enumerate(elementary_split(h, n), start=1):
        if f.is_zero():
            continue
        term = bc_chern(spec, i) * substitute_flag(f, r)
        total = total + (term if i % 2 == 0 else -term)
    return total


def polynomial_class(f: SparsePolynomial, r: FlagType, route: str = "canonical") -> ArithmeticClass:
    """
    The class f(x^) of an arbitrary polynomial (block-symmetric for partial r).

    The S_n part of the Schubert expansion is lifted; the part in I_n becomes a
    form, either through tilde Schubert forms ("canonical") or through an
    elementary split h = sum e_i f_i ("split", complete flags only).
    """
    n = r.n
    if f.trimmed_nvars() > n:
        raise ValueError(f"polynomial involves variables beyond X_{n}")
    expansion = schubert_expand(f, n)
    classical = {w: c for w, c in expansion.items() if w.fits_in(n)}
    tail = {w: c for w, c in expansion.items() if not w.fits_in(n)}
    if route == "canonical":
        form = zero(n)
        for w, c in tail.items():
            form = form + tilde_schubert(w, r).scale(c)
    elif route == "split":
        if not r.is_complete:
            raise ValueError("the elementary split route needs a complete flag")
        h = f
        for w, c in classical.items():
            h = h - schubert(w).scale(c)
        form = _split_route_form(h, r) if tail else zero(n)
    else:
        raise ValueError(f"unknown route {route!r}")
    return ArithmeticClass(r, classical, form)


@lru_cache(maxsize=None)
def _schubert_product(u: Permutation, v: Permutation, r: FlagType) -> ArithmeticClass:
    return polynomial_class(schubert(u) * schubert(v), r, "canonical")


def multiply(c1: ArithmeticClass, c2: ArithmeticClass) -> ArithmeticClass:
    """The product in the split model."""
    c1._check(c2)
    r = c1.flag
    n = r.n
    s: dict[Permutation, Fraction] = {}
    form = zero(n)
    for u, a in c1.schubert.items():
        for v, b in c2.schubert.items():
            p = _schubert_product(u, v, r)
            for w, c in p.schubert.items():
                s[w] = s.get(w, 0) + a * b * c
            form = form + p.form.scale(a * b)
    for u, a in c1.schubert.items():
        if not c2.form.is_zero():
            form = form + (_schubert_form(u, r) * c2.form).scale(a)
    for v, b in c2.schubert.items():
        if not c1.form.is_zero():
            form = form + (_schubert_form(v, r) * c1.form).scale(b)
    if not c1.form.is_zero() and not c2.form.is_zero():
        form = form + ddc(c1.form) * c2.form
    return ArithmeticClass(r, s, form)


def _is_reduced(exponents: Sequence[int]) -> bool:
    n = len(exponents)
    return all(k <= n - i for i, k in enumerate(exponents, start=1))


@lru_cache(maxsize=None)
def _monomial_class(exponents: tuple[int, ...], r: FlagType) -> ArithmeticClass:
    f = monomial(exponents)
    if _is_reduced(exponents):
        return lift(f, r)
    return polynomial_class(f, r, "split")


def monomial_class(exponents: Sequence[int], r: FlagType) -> ArithmeticClass:
    """
    x^_1^{k_1} ... x^_n^{k_n} on the complete flag.

    >>> str(monomial_class((0, 4, 0), FlagType.complete(3)).form)
    '+ 2 * O12^O13^O23'
    """
    if not r.is_complete:
        raise ValueError("monomial classes are defined on complete flags")
    exponents = tuple(int(k) for k in exponents)
    if len(exponents) != r.n or any(k < 0 for k in exponents):
        raise ValueError(f"need {r.n} nonnegative exponents")
    return _monomial_class(exponents, r)


def arithmetic_degree(c: ArithmeticClass) -> Fraction:
    """Degree of a class of arithmetic codimension dim F(r) + 1: half the integral."""
    r = c.flag
    if c.schubert:
        raise ValueError("class has a classical part; expected codimension dim F + 1")
    if c.form.is_zero():
        return Fraction(0)
    top = r.dim
    if c.form.bidegrees() != {(top, top)}:
        raise ValueError(f"form part is not of type ({top},{top})")
    return integral_top(c.form, r) / 2


def degree_table(n: int) -> list[tuple[tuple[int, ...], Fraction]]:
    """deg(x^^k) for every exponent vector k with |k| = dim F + 1."""
    r = FlagType.complete(n)
    return [
        (k, arithmetic_degree(monomial_class(k, r))) for k in iter_exponents(n, r.dim + 1)
    ]


def pluriplucker_class(r: FlagType) -> ArithmeticClass:
    """sum_{i<m} S^_{s_{r_i}}; on the complete flag this is sum (n-i) x^_i."""
    return ArithmeticClass(r, {Permutation.simple(k): 1 for k in r.ranks[:-1]})


def height_pluriplucker(r: FlagType) -> Fraction:
    """
    Height of F(r) in its pluri-Pluecker embedding: deg(L^{dim+1}).

    >>> height_pluriplucker(FlagType((1, 3)))
    Fraction(5, 4)
    """
    return arithmetic_degree(pluriplucker_class(r) ** (r.dim + 1))


def height_by_multinomial(n: int) -> Fraction:
    """deg((sum (n-i) x^_i)^{dim+1}) from the monomial degree table."""
    r = FlagType.complete(n)
    d = r.dim + 1
    weights = [n - i for i in range(1, n + 1)]
    total = Fraction(0)
    for k, deg in degree_table(n):
        coef = 1
        rest = d
        for ki, wi in zip(k, weights):
            coef *= comb(rest, ki) * wi**ki
            rest -= ki
        total += coef * deg
    return total


def arithmetic_monk(k: int, w: Permutation, r: FlagType) -> ArithmeticClass:
    """S^_{s_k} * S^_w = sum S^_{wt} + a(sum S~_{wt}) from the Monk transpositions."""
    if not r.is_complete:
        raise ValueError("arithmetic Monk formula is stated for complete flags")
    classical, boundary = monk_indices(w, k, r.n)
    s = {w.swap_positions(i, j): 1 for i, j in classical}
    form = zero(r.n)
    for i, j in boundary:
        form = form + tilde_schubert(w.swap_positions(i, j), r)
    return ArithmeticClass(r, s, form)


# -- Chern classes of the quotient bundles -----------------------------------


@lru_cache(maxsize=None)
def quotient_chern_class(a: int, b: int, m: int, r: FlagType) -> ArithmeticClass:
    """
    c^_m(Q_{b,a}) on the complete flag of type r, from the filtration of
    Q_{b,a} by the line bundles L_{a+1}, ..., L_b:

        c^_m(Q_{b,a}) = (-1)^m e_m(x^_{a+1..b}) - a(c_m~).
    """
    if not r.is_complete:
        raise ValueError("quotient Chern classes are computed on complete flags")
    n = r.n
    if not 0 <= a < b <= n:
        raise ValueError(f"need 0 <= a < b <= n, got a={a}, b={b}")
    if m < 0:
        raise ValueError("m must be nonnegative")
    if m == 0:
        return unit_class(r)
    if m > b - a:
        return ArithmeticClass(r)
    from itertools import combinations

    terms = {}
    for subset in combinations(range(a + 1, b + 1), m):
        e = [0] * n
        for i in subset:
            e[i - 1] = 1
        terms[tuple(e)] = (-1) ** m
    poly = SparsePolynomial(terms, n)
    cls = polynomial_class(poly, r, "canonical")
    correction = bc_chern(FiltrationSpec(n, tuple(range(a, b + 1))), m)
    return cls - include_form(correction, r)


def quotient_chern_number(spec: Iterable[tuple[int, int, int, int]], n: int) -> Fraction:
    """
    deg prod_i c^_{m_i}(Q_{b_i a_i})^{k_i} on the complete flag of C^n.

    Requires sum k_i m_i = dim F + 1.
    """
    r = FlagType.complete(n)
    spec = [tuple(int(v) for v in item) for item in spec]
    total_degree = sum(k * m for _, _, m, k in spec)
    if total_degree != r.dim + 1:
        raise ValueError(f"total codimension {total_degree} != dim F + 1 = {r.dim + 1}")
    acc = unit_class(r)
    for a, b, m, k in spec:
        c = quotient_chern_class(a, b, m, r)
        for _ in range(k):
            acc = multiply(acc, c)
    return arithmetic_degree(acc)


# -- partial flags ------------------------------------------------------------


@lru_cache(maxsize=None)
def _pullback_schubert(u: Permutation, r: FlagType) -> ArithmeticClass:
    """p^* S^_{u} for an r-permutation u, as a class on the complete flag."""
    from .poly import to_block_elementary

    full = FlagType.complete(r.n)
    b = r.bounds
    total = ArithmeticClass(full)
    for key, c in to_block_elementary(schubert(u), r.blocks()).items():
        term = unit_class(full).scale(c)
        for bi, ks in enumerate(key):
            for k, mult in enumerate(ks, start=1):
                # e_k of a block corresponds to (-1)^k c_k of its quotient
                ck = quotient_chern_class(b[bi], b[bi + 1], k, full).scale((-1) ** k)
                for _ in range(mult):
                    term = multiply(term, ck)
        total = total + term
    return total


def pullback_to_complete(c: ArithmeticClass) -> ArithmeticClass:
    """Pull a class on F(r) back along the projection from the complete flag."""
    r = c.flag
    full = FlagType.complete(r.n)
    if r == full:
        return c
    total = include_form(c.form, full)
    for u, a in c.schubert.items():
        total = total + _pullback_schubert(u, r).scale(a)
    return total


def fiber_point_class(r: FlagType) -> Permutation:
    """The longest element of the Young subgroup of r (its blocks reversed)."""
    window: list[int] = []
    for blk in r.blocks():
        window.extend(reversed(blk))
    return Permutation(tuple(window))


# -- class-level comparison --------------------------------------------------


def classes_equivalent(c1: ArithmeticClass, c2: ArithmeticClass) -> bool:
    """
    Equality detected by every degree pairing: equal classical parts, and the
    form difference is dd^c-closed and integrates to zero against every
    complementary Schubert form.
    """
    c1._check(c2)
    if c1.schubert != c2.schubert:
        return False
    diff = c1.form - c2.form
    if diff.is_zero():
        return True
    if not ddc(diff).is_zero():
        return False
    r = c1.flag
    top = r.dim
    for p, _ in diff.bidegrees():
        piece = diff.degree_part(p)
        for z in r_permutations(r.n, r):
            if z.length() != top - p:
                continue
            if integral_top(piece * _schubert_form(z, r), r):
                return False
    return True
