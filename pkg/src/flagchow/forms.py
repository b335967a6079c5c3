"""
The algebra of invariant differential forms on the flag manifold of C^n.

Generators are the scaled 1-forms A_ij = w_ij (type (1,0)) and
B_ij = wb_ij (type (0,1)) for 1 <= i < j <= n. A word is a set of generators
stored as an integer bitmask; pair number p (pairs in lexicographic order)
owns bit 2p for A and bit 2p+1 for B, so the (1,1)-form
Omega_ij = A_ij ^ B_ij is a contiguous, positively signed word.

Auxiliary Cartan 1-forms H_1..H_n occupy the bits after all pairs. They only
appear inside the invariant exterior derivative and must cancel there.

>>> n = 3
>>> str(omega(1, 2, n) * omega(1, 3, n))
'+ O12^O13'
>>> (gen_a(1, 2, n) * gen_a(1, 2, n)).is_zero()
True
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from typing import Iterable, Mapping, Sequence, Union

from .perm import FlagType, Permutation
from .poly import EngineFault, SparsePolynomial, evaluate, schubert, to_block_elementary

__all__ = [
    "InvariantForm",
    "FormMatrix",
    "FormCapExceeded",
    "gen_a",
    "gen_b",
    "omega",
    "unit",
    "zero",
    "wedge",
    "curvature_quotient",
    "x_forms",
    "block_values",
    "chern_forms",
    "substitute",
    "substitute_flag",
    "integral_top",
    "calibration",
    "ddc",
    "exterior_derivative",
    "volume_word",
    "set_form_cap",
]

Scalar = Union[int, Fraction]

FORM_N_CAP = 8


class FormCapExceeded(ValueError):
    """Raised when n exceeds the configured cap on the form algebra."""


def set_form_cap(n: int) -> int:
    """Set the largest ambient n accepted by the form algebra; returns the old cap."""
    global FORM_N_CAP
    old, FORM_N_CAP = FORM_N_CAP, n
    return old


def _check_cap(n: int) -> None:
    if n < 1:
        raise ValueError("n must be positive")
    if n > FORM_N_CAP:
        raise FormCapExceeded(f"n={n} exceeds the form-algebra cap {FORM_N_CAP}")


@lru_cache(maxsize=None)
def _layout(n: int) -> tuple[dict[tuple[int, int], int], int, int, int]:
    """(pair -> index, number of pairs, A mask, B mask)."""
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    index = {p: k for k, p in enumerate(pairs)}
    amask = sum(1 << (2 * k) for k in range(len(pairs)))
    return index, len(pairs), amask, amask << 1


def _pair_bit(i: int, j: int, n: int) -> int:
    index = _layout(n)[0]
    if (i, j) not in index:
        raise ValueError(f"no generator for pair ({i},{j}) with n={n}")
    return 2 * index[(i, j)]


def _h_bit(c: int, n: int) -> int:
    return 2 * _layout(n)[1] + (c - 1)


def _wedge_sign(a: int, b: int) -> int:
    """Sign of concatenating ordered words a then b into normal order."""
    parity = 0
    y = b
    while y:
        low = y & -y
        parity ^= bin(a >> low.bit_length()).count("1") & 1
        y ^= low
    return -1 if parity else 1


class InvariantForm:
    """A finite Q-linear combination of normal-ordered generator words."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[int, Scalar] | None = None):
        _check_cap(n)
        self.n = n
        self._terms: dict[int, Fraction] = {}
        for w, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                self._terms[w] = self._terms.get(w, Fraction(0)) + c
                if not self._terms[w]:
                    del self._terms[w]

    @classmethod
    def _raw(cls, n: int, terms: dict[int, Fraction]) -> InvariantForm:
        obj = cls.__new__(cls)
        obj.n = n
        obj._terms = terms
        return obj

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, word: int) -> Fraction:
        return self._terms.get(word, Fraction(0))

    def constant_term(self) -> Fraction:
        return self._terms.get(0, Fraction(0))

    def _same(self, other: InvariantForm) -> None:
        if other.n != self.n:
            raise ValueError(f"ambient mismatch: n={self.n} vs n={other.n}")

    def _coerce(self, other) -> InvariantForm | None:
        if isinstance(other, InvariantForm):
            self._same(other)
            return other
        if isinstance(other, (int, Fraction)):
            return InvariantForm(self.n, {0: other})
        return None

    def __add__(self, other) -> InvariantForm:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for w, c in o._terms.items():
            v = out.get(w, 0) + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return InvariantForm._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self) -> InvariantForm:
        return InvariantForm._raw(self.n, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other) -> InvariantForm:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> InvariantForm:
        return (-self) + other

    def scale(self, c: Scalar) -> InvariantForm:
        c = Fraction(c)
        if not c:
            return InvariantForm._raw(self.n, {})
        return InvariantForm._raw(self.n, {w: c * v for w, v in self._terms.items()})

    def __mul__(self, other) -> InvariantForm:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, InvariantForm):
            return NotImplemented
        return wedge(self, other)

    def __rmul__(self, other) -> InvariantForm:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> InvariantForm:
        result = unit(self.n)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = InvariantForm(self.n, {0: other})
        if not isinstance(other, InvariantForm):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self._terms.items())))

    # -- grading --------------------------------------------------------

    def bidegrees(self) -> set[tuple[int, int]]:
        _, _, am, bm = _layout(self.n)
        return {(bin(w & am).count("1"), bin(w & bm).count("1")) for w in self._terms}

    def bidegree(self) -> tuple[int, int]:
        """The bidegree of a homogeneous form; (0, 0) for zero."""
        bd = self.bidegrees()
        if not bd:
            return (0, 0)
        if len(bd) > 1:
            raise ValueError("form is not bihomogeneous")
        return bd.pop()

    def part(self, p: int, q: int) -> InvariantForm:
        _, _, am, bm = _layout(self.n)
        return InvariantForm._raw(
            self.n,
            {
                w: c
                for w, c in self._terms.items()
                if bin(w & am).count("1") == p and bin(w & bm).count("1") == q
            },
        )

    def degree_part(self, p: int) -> InvariantForm:
        """The (p, p) component."""
        return self.part(p, p)

    def max_degree(self) -> int:
        return max((bin(w).count("1") for w in self._terms), default=0)

    def has_auxiliary(self) -> bool:
        pairs = _layout(self.n)[1]
        return any(w >> (2 * pairs) for w in self._terms)

    def uses_only(self, pairs: Iterable[tuple[int, int]]) -> bool:
        allowed = 0
        for i, j in pairs:
            allowed |= 3 << _pair_bit(i, j, self.n)
        return all(not (w & ~allowed) for w in self._terms)

    # -- text ------------------------------------------------------------

    def _word_text(self, w: int, contract: bool) -> str:
        index, npairs, _, _ = _layout(self.n)
        names = {}
        for (i, j), k in index.items():
            names[2 * k] = f"w{i}{j}"
            names[2 * k + 1] = f"wb{i}{j}"
        for c in range(1, self.n + 1):
            names[2 * npairs + c - 1] = f"h{c}"
        bits = [b for b in range(w.bit_length()) if w >> b & 1]
        out: list[str] = []
        k = 0
        while k < len(bits):
            b = bits[k]
            if contract and b < 2 * npairs and b % 2 == 0 and k + 1 < len(bits) and bits[k + 1] == b + 1:
                i, j = next(p for p, idx in index.items() if idx == b // 2)
                out.append(f"O{i}{j}")
                k += 2
            else:
                out.append(names[b])
                k += 1
        return "^".join(out)

    def sorted_words(self) -> list[int]:
        return sorted(self._terms, key=lambda w: (bin(w).count("1"), [b for b in range(w.bit_length()) if w >> b & 1]))

    def to_text(self, contract: bool = True) -> str:
        """
        Render as "+ c * word ..." with Omega_ij contracted to O{i}{j}.

        >>> str(omega(1, 2, 2).scale(Fraction(-1, 2)))
        '- 1/2 * O12'
        """
        if not self._terms:
            return "0"
        parts = []
        for w in self.sorted_words():
            c = self._terms[w]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if w == 0:
                parts.append(f"{sign} {mag}")
            elif mag == 1:
                parts.append(f"{sign} {self._word_text(w, contract)}")
            else:
                parts.append(f"{sign} {mag} * {self._word_text(w, contract)}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"InvariantForm(n={self.n}, {self.to_text()!r})"

    @classmethod
    def parse(cls, text: str, n: int) -> InvariantForm:
        """Inverse of :meth:`to_text` (either rendering)."""
        tokens = text.split()
        if tokens in ([], ["0"]):
            return zero(n)
        if tokens[0] not in "+-":
            tokens = ["+"] + tokens
        total = zero(n)
        k = 0
        while k < len(tokens):
            sign = -1 if tokens[k] == "-" else 1
            k += 1
            body: list[str] = []
            while k < len(tokens) and tokens[k] not in ("+", "-"):
                body.append(tokens[k])
                k += 1
            coeff = Fraction(sign)
            word_text = None
            if len(body) == 3 and body[1] == "*":
                coeff *= Fraction(body[0])
                word_text = body[2]
            elif len(body) == 1:
                if body[0][0].isdigit():
                    coeff *= Fraction(body[0])
                else:
                    word_text = body[0]
            else:
                raise ValueError(f"cannot parse form term {' '.join(body)!r}")
            term = unit(n).scale(coeff)
            if word_text:
                for g in word_text.split("^"):
                    term = term * _parse_generator(g, n)
            total = total + term
        return total


def _parse_generator(g: str, n: int) -> InvariantForm:
    if g.startswith("O"):
        return omega(int(g[1]), int(g[2:]), n) if len(g) == 3 else _two_index(g[1:], n, omega)
    if g.startswith("wb"):
        return _two_index(g[2:], n, gen_b)
    if g.startswith("w"):
        return _two_index(g[1:], n, gen_a)
    if g.startswith("h"):
        return InvariantForm(n, {1 << _h_bit(int(g[1:]), n): 1})
    raise ValueError(f"unknown generator {g!r}")


def _two_index(digits: str, n: int, ctor):
    if len(digits) != 2:
        raise ValueError(f"generator indices must be single digits, got {digits!r}")
    return ctor(int(digits[0]), int(digits[1]), n)


def unit(n: int) -> InvariantForm:
    return InvariantForm(n, {0: 1})


def zero(n: int) -> InvariantForm:
    return InvariantForm(n, {})


def gen_a(i: int, j: int, n: int) -> InvariantForm:
    return InvariantForm(n, {1 << _pair_bit(i, j, n): 1})


def gen_b(i: int, j: int, n: int) -> InvariantForm:
    return InvariantForm(n, {1 << (_pair_bit(i, j, n) + 1): 1})


def omega(i: int, j: int, n: int) -> InvariantForm:
    """Omega_ij = A_ij ^ B_ij."""
    if i > j:
        i, j = j, i
    return InvariantForm(n, {3 << _pair_bit(i, j, n): 1})


def wedge(f: InvariantForm, g: InvariantForm) -> InvariantForm:
    """Graded-commutative product with Koszul signs."""
    if f.n != g.n:
        raise ValueError(f"ambient mismatch: n={f.n} vs n={g.n}")
    out: dict[int, Fraction] = {}
    for a, ca in f._terms.items():
        for b, cb in g._terms.items():
            if a & b:
                continue
            w = a | b
            v = out.get(w, 0) + (ca * cb if _wedge_sign(a, b) > 0 else -ca * cb)
            if v:
                out[w] = v
            else:
                out.pop(w, None)
    return InvariantForm._raw(f.n, out)


# -- matrices of (1,1)-forms --------------------------------------------------


@dataclass(frozen=True)
class FormMatrix:
    """A square matrix of even forms, rows and columns labelled by frame indices."""

    entries: tuple[tuple[InvariantForm, ...], ...]
    labels: tuple[int, ...]

    def __post_init__(self) -> None:
        k = len(self.entries)
        if any(len(row) != k for row in self.entries):
            raise ValueError("form matrix must be square")
        if len(self.labels) != k:
            raise ValueError("label count does not match matrix size")

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def n(self) -> int:
        return self.entries[0][0].n

    def __getitem__(self, ij: tuple[int, int]) -> InvariantForm:
        i, j = ij
        return self.entries[i][j]

    def trace(self) -> InvariantForm:
        total = zero(self.n)
        for k in range(self.size):
            total = total + self.entries[k][k]
        return total

    def __matmul__(self, other: FormMatrix) -> FormMatrix:
        k = self.size
        rows = []
        for i in range(k):
            row = []
            for j in range(k):
                acc = zero(self.n)
                for m in range(k):
                    acc = acc + self.entries[i][m] * other.entries[m][j]
                row.append(acc)
            rows.append(tuple(row))
        return FormMatrix(tuple(rows), self.labels)

    def __add__(self, other: FormMatrix) -> FormMatrix:
        return FormMatrix(
            tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)),
            self.labels,
        )

    def __sub__(self, other: FormMatrix) -> FormMatrix:
        return self + other.scale(-1)

    def scale(self, c: Scalar) -> FormMatrix:
        return FormMatrix(tuple(tuple(a.scale(c) for a in row) for row in self.entries), self.labels)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> tuple[tuple[InvariantForm, ...], ...]:
        return tuple(tuple(self.entries[i][j] for j in cols) for i in rows)

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.entries for e in row)


def curvature_quotient(k: int, l: int, n: int) -> FormMatrix:
    """
    Scaled curvature of Q_{l,k} = E_l / E_k with the metric induced from C^n.

    Entry (a, b), for k < a, b <= l, is
    sum_{i<=k} A_ib ^ B_ia  -  sum_{j>l} A_aj ^ B_bj,

    so that every term of an entry carries the same torus weight.
    """
    if not 0 <= k < l <= n:
        raise ValueError(f"need 0 <= k < l <= n, got k={k}, l={l}, n={n}")
    _check_cap(n)
    labels = tuple(range(k + 1, l + 1))
    rows = []
    for a in labels:
        row = []
        for b in labels:
            acc = zero(n)
            for i in range(1, k + 1):
                acc = acc + gen_a(i, b, n) * gen_b(i, a, n)
            for j in range(l + 1, n + 1):
                acc = acc - gen_a(a, j, n) * gen_b(b, j, n)
            row.append(acc)
        rows.append(tuple(row))
    return FormMatrix(tuple(rows), labels)


def _det(block: Sequence[Sequence[InvariantForm]], n: int) -> InvariantForm:
    size = len(block)
    total = zero(n)
    for perm in permutations(range(size)):
        inv = sum(1 for a in range(size) for b in range(a + 1, size) if perm[a] > perm[b])
        term = unit(n)
        for r, c in enumerate(perm):
            term = term * block[r][c]
            if term.is_zero():
                break
        total = total + (term if inv % 2 == 0 else -term)
    return total


def chern_forms(m: FormMatrix) -> list[InvariantForm]:
    """
    c_1..c_rank with det(Id + t M) = 1 + sum c_k t^k, via principal minors.

    >>> n = 3
    >>> c = chern_forms(curvature_quotient(0, 2, n))
    >>> str(c[0])
    '- O13 - O23'
    """
    n = m.n
    out = []
    for k in range(1, m.size + 1):
        acc = zero(n)
        for subset in combinations(range(m.size), k):
            acc = acc + _det(m.submatrix(subset, subset), n)
        out.append(acc)
    return out


def x_forms(r: FlagType) -> list:
    """
    Complete flag: the forms x_k = -c_1(L_k), k = 1..n.

    Partial flag: for each block of r, the list [c_1(Q_i), ..., c_d(Q_i)] of
    Chern forms of the tautological quotient Q_i.

    >>> [str(x) for x in x_forms(FlagType.complete(3))]
    ['+ O12 + O13', '- O12 + O23', '- O13 - O23']
    """
    n = r.n
    if r.is_complete:
        out = []
        for k in range(1, n + 1):
            acc = zero(n)
            for i in range(1, k):
                acc = acc - omega(i, k, n)
            for j in range(k + 1, n + 1):
                acc = acc + omega(k, j, n)
            out.append(acc)
        return out
    b = r.bounds
    return [chern_forms(curvature_quotient(b[i], b[i + 1], n)) for i in range(len(r.ranks))]


@lru_cache(maxsize=None)
def block_values(r: FlagType) -> tuple[tuple[InvariantForm, ...], ...]:
    """Per block i, the values of e_1, e_2, ... of that block: (-1)^k c_k(Q_i)."""
    if r.is_complete:
        return tuple((x,) for x in x_forms(r))
    return tuple(
        tuple(c.scale((-1) ** k) for k, c in enumerate(cs, start=1)) for cs in x_forms(r)
    )


def substitute(f: SparsePolynomial, values: Sequence[InvariantForm]) -> InvariantForm:
    """
    Evaluate f at X_i = values[i-1].

    >>> n = 3
    >>> str(substitute(schubert(Permutation((3, 2, 1))), x_forms(FlagType.complete(n))))
    '+ 2 * O12^O13^O23'
    """
    if not values:
        raise ValueError("no values supplied")
    n = values[0].n
    if f.trimmed_nvars() > len(values):
        raise ValueError(f"polynomial has {f.trimmed_nvars()} variables, got {len(values)} values")
    return evaluate(f, values, unit(n), zero(n), lambda x, c: x.scale(c))


def substitute_flag(f: SparsePolynomial, r: FlagType) -> InvariantForm:
    """
    Evaluate a polynomial symmetric within the blocks of r as a form on F(r).

    For the complete flag this is substitution of the x-forms; otherwise the
    block elementary polynomials are replaced by signed Chern forms of the
    tautological quotients.
    """
    if r.is_complete:
        return substitute(f, x_forms(r))
    n = r.n
    vals = block_values(r)
    blocks = r.blocks()
    total = zero(n)
    for key, c in to_block_elementary(f, blocks).items():
        term = unit(n).scale(c)
        for bi, ks in enumerate(key):
            for k, mult in enumerate(ks, start=1):
                for _ in range(mult):
                    term = term * vals[bi][k - 1]
        total = total + term
    return total


def volume_word(r: FlagType) -> int:
    """Bitmask of the wedge of Omega_ij over the cross-block pairs of r."""
    w = 0
    for i, j in r.cross_pairs():
        w |= 3 << _pair_bit(i, j, r.n)
    return w


@lru_cache(maxsize=None)
def calibration(r: FlagType) -> Fraction:
    """
    mu_r = 1 / (coefficient of the volume word in the point class as a form).

    >>> calibration(FlagType.complete(3))
    Fraction(1, 2)
    """
    point = schubert(r.longest_permutation())
    form = substitute_flag(point, r)
    coef = form.coefficient(volume_word(r))
    if not coef or len(form) != 1:
        raise EngineFault(f"point class of F({r}) is not a multiple of the volume form")
    return 1 / coef


def integral_top(f: InvariantForm, r: FlagType) -> Fraction:
    """Integral over F(r) of a top-degree invariant form."""
    if f.n != r.n:
        raise ValueError("ambient mismatch")
    vol = volume_word(r)
    extra = [w for w in f._terms if w != vol]
    if extra:
        raise ValueError(f"form is not a top-degree form on F({r})")
    return f.coefficient(vol) * calibration(r)


# -- the invariant exterior derivative ------------------------------------------


def _cartan_entry(a: int, b: int, n: int) -> tuple[int, int]:
    """(bit, sign) of the scaled Maurer-Cartan component in row a, column b."""
    if a > b:
        return _pair_bit(b, a, n), 1
    if a < b:
        return _pair_bit(a, b, n) + 1, -1
    return _h_bit(a, n), 1


@lru_cache(maxsize=None)
def _generator_derivatives(n: int) -> dict[int, InvariantForm]:
    """d of each generator bit, from the Maurer-Cartan equation d(theta) = -theta ^ theta."""

    def g(a: int, b: int) -> InvariantForm:
        bit, s = _cartan_entry(a, b, n)
        return InvariantForm._raw(n, {1 << bit: Fraction(s)})

    table: dict[int, InvariantForm] = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            da = zero(n)
            db = zero(n)
            for c in range(1, n + 1):
                da = da - g(j, c) * g(c, i)
                db = db + g(i, c) * g(c, j)
            table[_pair_bit(i, j, n)] = da
            table[_pair_bit(i, j, n) + 1] = db
    return table


def exterior_derivative(f: InvariantForm) -> InvariantForm:
    """d of a form in the public alphabet; Cartan directions must cancel."""
    n = f.n
    table = _generator_derivatives(n)
    if f.has_auxiliary():
        raise ValueError("input contains auxiliary generators")
    out: dict[int, Fraction] = {}
    for w, c in f._terms.items():
        bits = [b for b in range(w.bit_length()) if w >> b & 1]
        for pos, b in enumerate(bits):
            rest = w & ~(1 << b)
            # moving the generator to the front costs (-1)^pos
            before = bin(w & ((1 << b) - 1)).count("1")
            s = -c if before % 2 else c
            for dw, dc in table[b]._terms.items():
                if dw & rest:
                    continue
                v = s * dc * _wedge_sign(dw, rest)
                key = dw | rest
                nv = out.get(key, 0) + v
                if nv:
                    out[key] = nv
                else:
                    out.pop(key, None)
    result = InvariantForm._raw(n, out)
    if result.has_auxiliary():
        raise EngineFault("Cartan directions survived the invariant exterior derivative")
    return result


def ddc(f: InvariantForm) -> InvariantForm:
    """
    dd^c of an invariant form of type (p, p), or a sum of such, as the
    (1,0)-part of d applied to the (0,1)-part of d.

    >>> n = 2
    >>> ddc(omega(1, 2, n)).is_zero()
    True
    """
    total = zero(f.n)
    for p, q in sorted(f.bidegrees()):
        if p != q:
            raise ValueError(f"ddc needs (p,p)-forms, got bidegree ({p},{q})")
        dbar = exterior_derivative(f.part(p, p)).part(p, p + 1)
        total = total + exterior_derivative(dbar).part(p + 1, p + 1)
    return total
