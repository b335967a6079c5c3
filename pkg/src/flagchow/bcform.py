"""
Bott-Chern forms of the tautological hermitian filtrations on flag manifolds.

All metrics are induced from the standard metric on the trivial bundle C^n.
A filtration is described by breakpoints a = t_0 < t_1 < ... < t_m = b: its
bundles are E_i = Q_{t_i, a} with quotients Q_{t_i, t_{i-1}}, inside the
ambient bundle Q_{b, a}. The tautological filtration of the trivial bundle on
F(r) has breakpoints (0, r_1, ..., r_m).

Sign convention: dd^c phi~ = phi(sum of quotients) - phi(E).

>>> spec = FiltrationSpec.from_flag(FlagType.complete(2))
>>> str(bc_total_chern(spec))
'- O12'
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .forms import (
    FormMatrix,
    InvariantForm,
    chern_forms,
    curvature_quotient,
    substitute,
    unit,
    zero,
)
from .perm import FlagType
from .poly import (
    SparsePolynomial,
    newton_chern,
    to_elementary,
    variable,
)

__all__ = [
    "FiltrationSpec",
    "harmonic",
    "bc_powersum_step",
    "bc_powersum_filtration",
    "bc_total_chern",
    "bc_chern",
    "bc_symmetric",
    "bc_flat_reference",
    "quotient_curvatures",
    "split_value",
    "ambient_value",
]


def harmonic(k: int) -> Fraction:
    """H_k = 1 + 1/2 + ... + 1/k, with H_0 = 0."""
    return sum((Fraction(1, i) for i in range(1, k + 1)), Fraction(0))


@dataclass(frozen=True)
class FiltrationSpec:
    """A hermitian filtration 0 = E_0 < E_1 < ... < E_m = Q_{b,a} with induced metrics."""

    n: int
    breakpoints: tuple[int, ...]

    def __post_init__(self) -> None:
        t = tuple(self.breakpoints)
        if len(t) < 2 or any(x >= y for x, y in zip(t, t[1:])) or t[0] < 0 or t[-1] > self.n:
            raise ValueError(f"bad filtration breakpoints {t} for n={self.n}")
        object.__setattr__(self, "breakpoints", t)

    @classmethod
    def from_flag(cls, r: FlagType) -> FiltrationSpec:
        return cls(r.n, (0,) + r.ranks)

    @property
    def rank(self) -> int:
        return self.breakpoints[-1] - self.breakpoints[0]

    @property
    def length(self) -> int:
        return len(self.breakpoints) - 1

    def quotient_ranks(self) -> list[int]:
        t = self.breakpoints
        return [t[i + 1] - t[i] for i in range(self.length)]


def _split_model(k_e: FormMatrix, k_s: FormMatrix, k_q: FormMatrix) -> FormMatrix:
    """[[K_S, 0], [K_21, K_Q]] with K_21 the lower-left block of K_E."""
    r = k_s.size
    size = k_e.size
    n = k_e.n
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            if i < r and j < r:
                row.append(k_s[i, j])
            elif i < r:
                row.append(zero(n))
            elif j < r:
                row.append(k_e[i, j])
            else:
                row.append(k_q[i - r, j - r])
        rows.append(tuple(row))
    return FormMatrix(tuple(rows), k_e.labels)


def _poly_matmul(p: list[FormMatrix], q: list[FormMatrix]) -> list[FormMatrix]:
    out: list[FormMatrix | None] = [None] * (len(p) + len(q) - 1)
    for a, pa in enumerate(p):
        for b, qb in enumerate(q):
            prod = pa @ qb
            out[a + b] = prod if out[a + b] is None else out[a + b] + prod
    return out  # type: ignore[return-value]


def _identity(labels: Sequence[int], n: int) -> FormMatrix:
    rows = tuple(
        tuple(unit(n) if i == j else zero(n) for j in range(len(labels))) for i in range(len(labels))
    )
    return FormMatrix(rows, tuple(labels))


def bc_powersum_step(k: int, sub_rank: int, k_e: FormMatrix, k_0: FormMatrix) -> InvariantForm:
    """
    p_k~ of 0 -> S -> E -> Q -> 0 from the integral formula

        p_k~ = k * int_0^1 (1/u) Tr((K(u)^{k-1} - K(0)^{k-1}) J) du,

    with K(u) = K_0 + u (K_E - K_0) and J the projection onto S.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if not 0 < sub_rank <= k_e.size:
        raise ValueError(f"sub_rank {sub_rank} out of range for rank {k_e.size}")
    n = k_e.n
    if k == 1:
        return zero(n)
    ku = [k_0, k_e - k_0]
    power = [_identity(k_e.labels, n)]
    for _ in range(k - 1):
        power = _poly_matmul(power, ku)
    total = zero(n)
    for m, mat in enumerate(power):
        tr = zero(n)
        for i in range(sub_rank):
            tr = tr + mat[i, i]
        if m == 0:
            continue
        total = total + tr.scale(Fraction(k, m))
    return total


@lru_cache(maxsize=None)
def _curv(k: int, l: int, n: int) -> FormMatrix:
    return curvature_quotient(k, l, n)


def quotient_curvatures(spec: FiltrationSpec) -> list[FormMatrix]:
    t = spec.breakpoints
    return [_curv(t[i], t[i + 1], spec.n) for i in range(spec.length)]


@dataclass(frozen=True)
class _Step:
    """Data of 0 -> E_{i-1} -> E_i -> Q_i -> 0."""

    k_e: FormMatrix
    k_s: FormMatrix
    k_q: FormMatrix
    k_0: FormMatrix


def _steps(spec: FiltrationSpec) -> list[_Step]:
    t, n = spec.breakpoints, spec.n
    a = t[0]
    out = []
    for i in range(2, len(t)):
        k_e = _curv(a, t[i], n)
        k_s = _curv(a, t[i - 1], n)
        k_q = _curv(t[i - 1], t[i], n)
        out.append(_Step(k_e, k_s, k_q, _split_model(k_e, k_s, k_q)))
    return out


def _trace_power(m: FormMatrix, j: int) -> InvariantForm:
    acc = m
    for _ in range(j - 1):
        acc = acc @ m
    return acc.trace()


@lru_cache(maxsize=None)
def bc_powersum_filtration(spec: FiltrationSpec, k: int) -> InvariantForm:
    """p_k~ of the filtration: the sum of the p_k~ of its short exact steps."""
    total = zero(spec.n)
    for st in _steps(spec):
        total = total + bc_powersum_step(k, st.k_s.size, st.k_e, st.k_0)
    return total


def _step_chern_tilde(st: _Step) -> list[InvariantForm]:
    """[c_1~, ..., c_rank~] of one short exact sequence, by Newton's identity."""
    n = st.k_e.n
    rank = st.k_e.size
    p_e = [_trace_power(st.k_e, j) for j in range(1, rank + 1)]
    p_split = [_trace_power(st.k_s, j) + _trace_power(st.k_q, j) for j in range(1, rank + 1)]
    p_tilde = [bc_powersum_step(j, st.k_s.size, st.k_e, st.k_0) for j in range(1, rank + 1)]
    c_e = [unit(n)] + chern_forms(st.k_e)
    c_tilde = [zero(n)]
    for k in range(1, rank + 1):
        acc = zero(n)
        for j in range(1, k + 1):
            term = c_tilde[k - j] * p_split[j - 1] + c_e[k - j] * p_tilde[j - 1]
            acc = acc + (term if j % 2 else -term)
        c_tilde.append(acc.scale(Fraction(1, k)))
    return c_tilde[1:]


def _total(cs: Sequence[InvariantForm], n: int) -> InvariantForm:
    acc = unit(n)
    for c in cs:
        acc = acc + c
    return acc


@lru_cache(maxsize=None)
def bc_total_chern(spec: FiltrationSpec) -> InvariantForm:
    """
    The total Bott-Chern form c~(E) = sum_i c~(E_i) ^ prod_{j>i} c(Q_j).

    Its (k-1, k-1) component is c_k~.
    """
    n = spec.n
    quotients = quotient_curvatures(spec)
    total = zero(n)
    for idx, st in enumerate(_steps(spec)):
        term = zero(n)
        for c in _step_chern_tilde(st):
            term = term + c
        # step idx produces E_{idx+2}; quotients beyond it are idx+2 .. m-1
        for q in quotients[idx + 2 :]:
            term = term * _total(chern_forms(q), n)
        total = total + term
    return total


def bc_chern(spec: FiltrationSpec, k: int) -> InvariantForm:
    """c_k~ of the filtration, the (k-1, k-1) part of the total form."""
    if k < 1:
        raise ValueError("k must be positive")
    return bc_total_chern(spec).degree_part(k - 1)


# -- arbitrary symmetric polynomials -----------------------------------------


def _elementary_in_power_sums(rank: int) -> list[SparsePolynomial]:
    """e_1..e_rank as polynomials in the symbols P_j standing for p_j."""
    return newton_chern([variable(j) for j in range(1, rank + 1)], rank)


def _power_sum_expansion(phi: SparsePolynomial, rank: int) -> SparsePolynomial:
    es = _elementary_in_power_sums(rank)
    out = SparsePolynomial()
    for ks, c in to_elementary(phi, rank).items():
        term = SparsePolynomial({(): c})
        for k, mult in enumerate(ks, start=1):
            if mult:
                term = term * es[k - 1] ** mult
        out = out + term
    return out


def bc_symmetric(spec: FiltrationSpec, phi: SparsePolynomial) -> InvariantForm:
    """
    phi~ of the filtration for a symmetric phi in rank(E) variables.

    phi is rewritten in power sums and the products are resolved by
    (p_a R)~ = p_a~ R(split) + p_a(E) R~, with p_a~ from the filtration.
    """
    rank = spec.rank
    if phi.trimmed_nvars() > rank:
        raise ValueError(f"phi involves more than {rank} variables")
    phi = phi.padded(rank)
    if not phi.is_symmetric(rank):
        raise ValueError("phi is not symmetric")
    n = spec.n
    t = spec.breakpoints
    k_e = _curv(t[0], t[-1], n)
    quotients = quotient_curvatures(spec)
    cache_e: dict[int, InvariantForm] = {}
    cache_split: dict[int, InvariantForm] = {}

    def p_e(j: int) -> InvariantForm:
        if j not in cache_e:
            cache_e[j] = _trace_power(k_e, j)
        return cache_e[j]

    def p_split(j: int) -> InvariantForm:
        if j not in cache_split:
            acc = zero(n)
            for q in quotients:
                acc = acc + _trace_power(q, j)
            cache_split[j] = acc
        return cache_split[j]

    total = zero(n)
    for e, c in _power_sum_expansion(phi, rank).items():
        parts = [j for j, mult in enumerate(e, start=1) for _ in range(mult)]
        if not parts:
            continue
        # right-to-left: tilde and split values of the product of parts[i:]
        tilde = zero(n)
        split = unit(n)
        for j in reversed(parts):
            tilde = bc_powersum_filtration(spec, j) * split + p_e(j) * tilde
            split = p_split(j) * split
        total = total + tilde.scale(c)
    return total


def bc_flat_reference(
    rank_s: int,
    rank_q: int,
    k: int,
    c_s: Sequence[InvariantForm],
    c_q: Sequence[InvariantForm],
) -> InvariantForm:
    """
    c_k~ of 0 -> S -> E -> Q -> 0 for flat E:
    H_{k-1} * sum_{i=0}^{k-1} i c_i(S) c_{k-1-i}(Q).

    ``c_s`` and ``c_q`` list c_1, c_2, ...; missing entries count as zero.
    """
    if k < 1:
        raise ValueError("k must be positive")
    n = (c_s[0] if c_s else c_q[0]).n

    def get(cs: Sequence[InvariantForm], i: int, rank: int) -> InvariantForm:
        if i == 0:
            return unit(n)
        if i > rank or i > len(cs):
            return zero(n)
        return cs[i - 1]

    acc = zero(n)
    for i in range(k):
        acc = acc + (get(c_s, i, rank_s) * get(c_q, k - 1 - i, rank_q)).scale(i)
    return acc.scale(harmonic(k - 1))


def split_value(spec: FiltrationSpec, phi: SparsePolynomial) -> InvariantForm:
    """phi evaluated on the direct sum of the quotient bundles."""
    quotients = quotient_curvatures(spec)
    roots: list[InvariantForm] = []
    for q in quotients:
        if q.size != 1:
            return _split_value_general(spec, phi)
        roots.append(q[0, 0])
    return substitute(phi, roots)


def _split_value_general(spec: FiltrationSpec, phi: SparsePolynomial) -> InvariantForm:
    n = spec.n
    rank = spec.rank
    ps = []
    for j in range(1, rank + 1):
        acc = zero(n)
        for q in quotient_curvatures(spec):
            acc = acc + _trace_power(q, j)
        ps.append(acc)
    return _from_power_sums(phi, ps, n)


def ambient_value(spec: FiltrationSpec, phi: SparsePolynomial) -> InvariantForm:
    """phi evaluated on the Chern forms of the ambient bundle Q_{b,a}."""
    n = spec.n
    t = spec.breakpoints
    k_e = _curv(t[0], t[-1], n)
    ps = [_trace_power(k_e, j) for j in range(1, spec.rank + 1)]
    return _from_power_sums(phi, ps, n)


def _from_power_sums(phi: SparsePolynomial, ps: Sequence[InvariantForm], n: int) -> InvariantForm:
    expansion = _power_sum_expansion(phi.padded(len(ps)), len(ps))
    total = zero(n)
    for e, c in expansion.items():
        term = unit(n).scale(c)
        for j, mult in enumerate(e, start=1):
            for _ in range(mult):
                term = term * ps[j - 1]
        total = total + term
    return total

