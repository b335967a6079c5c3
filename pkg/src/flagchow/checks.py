"""
Property suites behind ``flagchow verify``.

Each check sweeps a family of inputs and records the counterexamples it
meets. Random inputs come from a fixed seed, so runs are reproducible.

>>> results = run_suite("perm", 3)
>>> all(r.passed for r in results)
True
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Iterator

from .bcform import (
    FiltrationSpec,
    ambient_value,
    bc_chern,
    bc_flat_reference,
    bc_symmetric,
    bc_total_chern,
    split_value,
)
from .chow import (
    ArithmeticClass,
    arithmetic_degree,
    arithmetic_monk,
    classes_equivalent,
    degree_table,
    fiber_point_class,
    height_by_multinomial,
    height_pluriplucker,
    include_form,
    monomial_class,
    multiply,
    pullback_to_complete,
    tilde_schubert,
    unit_class,
)
from .forms import (
    InvariantForm,
    calibration,
    chern_forms,
    curvature_quotient,
    ddc,
    gen_a,
    gen_b,
    integral_top,
    substitute_flag,
    unit,
    x_forms,
    zero,
)
from .perm import (
    FlagType,
    Permutation,
    all_permutations,
    enumerate_index_sets,
    iter_exponents,
    longest_element,
    monk_indices,
    r_permutations,
    s_upper,
)
from .poly import (
    SparsePolynomial,
    apply_word,
    divided_difference_word,
    dual_schubert,
    monomial,
    scalar_product,
    schubert,
    schubert_expand,
    structure_constants,
    symmetric_generators,
)

__all__ = ["CheckResult", "SUITES", "run_suite", "PUBLISHED_TABLE_N3"]

SEED = 20240601
MAX_COUNTEREXAMPLES = 20

# 4 * deg(x^_1^k1 x^_2^k2 x^_3^k3) as published for the complete flag of C^3
PUBLISHED_TABLE_N3 = {
    (4, 0, 0): 0, (3, 1, 0): 5, (3, 0, 1): -5, (2, 2, 0): -1, (2, 1, 1): -4,
    (1, 3, 0): -1, (0, 0, 4): 0, (0, 1, 3): 5, (1, 0, 3): -5, (0, 2, 2): -1,
    (1, 1, 2): -4, (0, 3, 1): -1, (0, 4, 0): 2, (1, 2, 1): 2, (2, 0, 2): 9,
}


@dataclass
class CheckResult:
    suite: str
    name: str
    passed: bool = True
    cases: int = 0
    counterexamples: list[str] = field(default_factory=list)

    def record(self, ok: bool, detail: Callable[[], str]) -> None:
        self.cases += 1
        if not ok:
            self.passed = False
            if len(self.counterexamples) < MAX_COUNTEREXAMPLES:
                self.counterexamples.append(detail())

    def to_json(self) -> dict:
        out = {"suite": self.suite, "name": self.name, "passed": self.passed, "cases": self.cases}
        if self.counterexamples:
            out["counterexamples"] = list(self.counterexamples)
        return out


@dataclass
class _Suite:
    name: str
    results: list[CheckResult] = field(default_factory=list)

    def check(self, name: str) -> CheckResult:
        res = CheckResult(self.name, name)
        self.results.append(res)
        return res


def _random_poly(rng: random.Random, nvars: int, max_degree: int, terms: int = 4) -> SparsePolynomial:
    out: dict[tuple[int, ...], Fraction] = {}
    for _ in range(terms):
        d = rng.randint(0, max_degree)
        e = [0] * nvars
        for _ in range(d):
            e[rng.randrange(nvars)] += 1
        out[tuple(e)] = out.get(tuple(e), 0) + Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return SparsePolynomial(out, nvars)


def _rightmost_word(w: Permutation) -> tuple[int, ...]:
    """A reduced word built from the rightmost descent, for comparison with the default."""
    word: list[int] = []
    while not w.is_identity():
        i = w.descents()[-1]
        word.append(i)
        w = w.swap_positions(i, i + 1)
    return tuple(reversed(word))


def _ns(lo: int, hi: int) -> range:
    return range(lo, hi + 1)


# -- perm ------------------------------------------------------------------


def _perm_suite(n_max: int) -> list[CheckResult]:
    s = _Suite("perm")
    top = min(n_max, 5)
    inv = s.check("length is invariant under inversion")
    code = s.check("code sums to length")
    for n in _ns(1, top):
        for w in all_permutations(n):
            inv.record(w.length() == w.inverse().length(), lambda: f"w={w}")
            code.record(sum(w.code()) == w.length(), lambda: f"w={w}, code={w.code()}")
    monk = s.check("Monk transpositions raise length by one")
    for n in _ns(2, top):
        for w in all_permutations(n):
            for k in range(1, n):
                for i, j in monk_indices(w, k, n)[0]:
                    monk.record(
                        w.swap_positions(i, j).length() == w.length() + 1,
                        lambda: f"w={w}, k={k}, t=({i},{j})",
                    )
    part = s.check("index sets partition S^(n) up to the cap")
    for n in _ns(1, min(n_max, 4)):
        cap = 4
        sets = enumerate_index_sets(n, cap)
        upper = sets.s_upper
        finite = [w for w in upper if w.fits_in(n)]
        ok = (
            len(set(upper)) == len(upper)
            and set(finite) == {w for w in sets.s_n if w.length() <= cap}
            and set(finite).isdisjoint(sets.t_n)
            and set(finite) | set(sets.t_n) == set(upper)
        )
        part.record(ok, lambda: f"n={n}, cap={cap}")
    return s.results


# -- poly ------------------------------------------------------------------


def _poly_suite(n_max: int) -> list[CheckResult]:
    s = _Suite("poly")
    rng = random.Random(SEED)
    top = min(n_max, 4)
    nil = s.check("d_i d_i = 0")
    braid = s.check("braid relation d_i d_{i+1} d_i = d_{i+1} d_i d_{i+1}")
    commute = s.check("d_i d_j = d_j d_i for |i-j| > 1")
    for n in _ns(2, top):
        for _ in range(10):
            f = _random_poly(rng, n, 6)
            for i in range(1, n):
                nil.record(apply_word((i, i), f).is_zero(), lambda: f"f={f}, i={i}")
                if i + 1 < n:
                    braid.record(
                        apply_word((i, i + 1, i), f) == apply_word((i + 1, i, i + 1), f),
                        lambda: f"f={f}, i={i}",
                    )
                for j in range(i + 2, n):
                    commute.record(
                        apply_word((i, j), f) == apply_word((j, i), f), lambda: f"f={f}, i={i}, j={j}"
                    )
    words = s.check("d_w is independent of the reduced word")
    for w in all_permutations(top):
        other = _rightmost_word(w)
        for d in range(w.length(), 7):
            for e in iter_exponents(top, d):
                f = monomial(e)
                words.record(
                    divided_difference_word(w, f) == apply_word(other, f),
                    lambda: f"w={w}, words {w.reduced_word()} vs {other}, f={f}",
                )
    basis = s.check("reduced monomials expand integrally over S_n")
    for n in _ns(1, top):
        for w in all_permutations(n):
            # exponents a_i <= n - i, one per permutation via its code
            e = w.code() + (0,) * (n - len(w.code()))
            f = monomial(e)
            ex = schubert_expand(f, n)
            ok = all(v.fits_in(n) and c.denominator == 1 for v, c in ex.items())
            basis.record(ok, lambda: f"X^{e} -> {ex}")
    lemma = s.check("S_w = sum <S_w, S^v> S_v for w in T_n")
    for n in _ns(1, min(n_max, 3)):
        tn = [w for d in range(1, 7) for w in s_upper(n, d) if not w.fits_in(n)]
        for w in tn:
            sw = schubert(w)
            total = SparsePolynomial()
            for v in all_permutations(n):
                total = total + scalar_product(sw, dual_schubert(v, n), n) * schubert(v)
            lemma.record(total == sw, lambda: f"n={n}, w={w}")
    sc = s.check("structure constants are symmetric, nonnegative and length-graded")
    monk = s.check("structure constants follow Monk's rule")
    sn = all_permutations(top)
    for u in sn:
        for v in sn:
            c = structure_constants(u, v)
            ok = (
                c == structure_constants(v, u)
                and all(x >= 0 for x in c.values())
                and all(w.length() == u.length() + v.length() for w in c)
            )
            sc.record(ok, lambda: f"u={u}, v={v}, c={c}")
            if u.length() == 1:
                k = u.descents()[0]
                m = max(top, len(v))
                cls, bnd = monk_indices(v, k, m)
                expected = {v.swap_positions(i, j): 1 for i, j in cls + bnd}
                monk.record(c == expected, lambda: f"k={k}, w={v}")
    dual = s.check("d_{w0}(S_u S^v) = delta_uv")
    for n in _ns(1, min(n_max, 3)):
        sn3 = all_permutations(n)
        for u in sn3:
            for v in sn3:
                g = scalar_product(schubert(u), dual_schubert(v, n), n)
                target = SparsePolynomial({(): 1}) if u == v else SparsePolynomial()
                dual.record(g == target, lambda: f"n={n}, u={u}, v={v}, got {g}")
    return s.results


# -- forms -----------------------------------------------------------------


def _random_word_form(rng: random.Random, n: int, size: int) -> InvariantForm:
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    f = unit(n)
    for _ in range(size):
        i, j = rng.choice(pairs)
        f = f * (gen_a(i, j, n) if rng.random() < 0.5 else gen_b(i, j, n))
    return f


def _random_pp_form(rng: random.Random, n: int, p: int) -> InvariantForm:
    """A random rational combination of products of O_ij."""
    from .forms import omega

    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    total = zero(n)
    for combo in combinations(pairs, p):
        c = rng.randint(-3, 3)
        if c:
            term = unit(n)
            for i, j in combo:
                term = term * omega(i, j, n)
            total = total + term.scale(c)
    return total


def _forms_suite(n_max: int) -> list[CheckResult]:
    s = _Suite("forms")
    rng = random.Random(SEED + 1)
    bideg = s.check("bidegree is additive under wedge")
    koszul = s.check("wedge is graded commutative")
    for n in _ns(2, min(n_max, 5)):
        for _ in range(20):
            f = _random_word_form(rng, n, rng.randint(0, 3))
            g = _random_word_form(rng, n, rng.randint(0, 3))
            fg = f * g
            if f.is_zero() or g.is_zero():
                continue
            if not fg.is_zero():
                a, b = f.bidegree(), g.bidegree()
                bideg.record(fg.bidegree() == (a[0] + b[0], a[1] + b[1]), lambda: f"f={f}, g={g}")
            deg = sum(f.bidegree()) * sum(g.bidegree())
            koszul.record(fg == (g * f).scale((-1) ** deg), lambda: f"f={f}, g={g}")
    sumx = s.check("sum of x_k vanishes")
    for n in _ns(2, min(n_max, 6)):
        xs = x_forms(FlagType.complete(n))
        total = zero(n)
        for x in xs:
            total = total + x
        sumx.record(total.is_zero(), lambda: f"n={n}: {total}")
    flat = s.check("the trivial bundle has Chern forms (1, 0, ...)")
    for n in _ns(2, min(n_max, 4)):
        cs = chern_forms(curvature_quotient(0, n, n))
        flat.record(all(c.is_zero() for c in cs), lambda: f"n={n}: {[str(c) for c in cs]}")
    parts = s.check("ddc is symmetric under integration")
    if n_max >= 3:
        n = 3
        r = FlagType.complete(n)
        for p in (0, 1):
            for _ in range(5):
                f = _random_pp_form(rng, n, p)
                g = _random_pp_form(rng, n, r.dim - 1 - p)
                lhs = ddc(f) * g - f * ddc(g)
                parts.record(integral_top(lhs, r) == 0, lambda: f"f={f}, g={g}")
    cal = s.check("volume of the complete flag is prod 1/k!")
    for n in _ns(2, min(max(n_max, 2), 5)):
        expected = Fraction(1)
        for k in range(1, n):
            fact = 1
            for t in range(2, k + 1):
                fact *= t
            expected /= fact
        got = calibration(FlagType.complete(n))
        cal.record(got == expected, lambda: f"n={n}: got {got}, expected {expected}")
    duality = s.check("Schubert forms pair to delta_{u, w0 v}")
    if n_max >= 3:
        n = 3
        r = FlagType.complete(n)
        w0 = longest_element(n)
        for u in all_permutations(n):
            for v in all_permutations(n):
                if u.length() + v.length() != r.dim:
                    continue
                val = integral_top(substitute_flag(schubert(u), r) * substitute_flag(schubert(v), r), r)
                exp = 1 if u == w0 * v else 0
                duality.record(val == exp, lambda: f"u={u}, v={v}: {val}")
    return s.results


# -- bcform ----------------------------------------------------------------


def _phis(n: int) -> Iterator[tuple[str, SparsePolynomial]]:
    for name, kind in (("e", "elementary"), ("p", "power_sum")):
        for k in (2, 3):
            yield f"{name}{k}", symmetric_generators(kind, k, n)


def _bcform_suite(n_max: int) -> list[CheckResult]:
    s = _Suite("bcform")
    ident = s.check("ddc of the Bott-Chern form is split minus ambient")
    rational = s.check("coefficients are exact rationals")
    for n in _ns(2, min(n_max, 3)):
        spec = FiltrationSpec.from_flag(FlagType.complete(n))
        for name, phi in _phis(n):
            bc = bc_symmetric(spec, phi)
            lhs = ddc(bc)
            rhs = split_value(spec, phi) - ambient_value(spec, phi)
            ident.record(lhs == rhs, lambda: f"n={n}, phi={name}: {lhs} vs {rhs}")
            rational.record(
                all(isinstance(c, Fraction) for _, c in bc.items()), lambda: f"n={n}, phi={name}"
            )
    routes = s.check("c_k~ agrees between total Chern and power-sum routes")
    for n in _ns(2, min(n_max, 3)):
        r = FlagType.complete(n)
        spec = FiltrationSpec.from_flag(r)
        for k in range(1, n + 1):
            a = bc_chern(spec, k)
            b = bc_symmetric(spec, symmetric_generators("elementary", k, n))
            routes.record(_same_secondary_class(a - b, r), lambda: f"n={n}, k={k}: {a} vs {b}")
    oracle = s.check("flat-case closed formula matches")
    for n in _ns(2, min(n_max, 4)):
        for j in range(1, n):
            cs = chern_forms(curvature_quotient(0, j, n))
            cq = chern_forms(curvature_quotient(j, n, n))
            for k in range(1, 5):
                got = bc_chern(FiltrationSpec(n, (0, j, n)), k)
                ref = bc_flat_reference(j, n - j, k, cs, cq)
                oracle.record(got == ref, lambda: f"n={n}, j={j}, k={k}: {got} vs {ref}")
    total = s.check("total Bott-Chern form splits into its degree pieces")
    for n in _ns(2, min(n_max, 3)):
        spec = FiltrationSpec.from_flag(FlagType.complete(n))
        acc = zero(n)
        for k in range(1, n + 1):
            acc = acc + bc_chern(spec, k)
        tot = bc_total_chern(spec)
        total.record(acc == tot, lambda: f"n={n}")
    return s.results


def _same_secondary_class(diff: InvariantForm, r: FlagType) -> bool:
    """diff vanishes in every degree pairing and is ddc-closed."""
    if diff.is_zero():
        return True
    if not ddc(diff).is_zero():
        return False
    return classes_equivalent(include_form(diff, r), ArithmeticClass(r))


# -- chow ------------------------------------------------------------------


def _chow_suite(n_max: int) -> list[CheckResult]:
    s = _Suite("chow")
    rng = random.Random(SEED + 2)
    p1 = s.check("deg(x^_1^2) = 1/2 on P^1, directly and as a height")
    r2 = FlagType.complete(2)
    direct = arithmetic_degree(monomial_class((2, 0), r2))
    height = height_pluriplucker(r2)
    p1.record(direct == height == Fraction(1, 2), lambda: f"direct {direct}, height {height}")

    vanish = s.check("x^_1^{n+1} and x^_n^{n+1} vanish")
    for n in _ns(2, min(n_max, 4)):
        r = FlagType.complete(n)
        for k in ((n + 1,) + (0,) * (n - 1), (0,) * (n - 1) + (n + 1,)):
            c = monomial_class(k, r)
            vanish.record(classes_equivalent(c, ArithmeticClass(r)), lambda: f"n={n}, k={k}: {c}")

    sym = s.check("involution symmetry deg(x^^k) = (-1)^|k| deg(mirror)")
    for n in _ns(2, min(n_max, 4)):
        r = FlagType.complete(n)
        exps = list(iter_exponents(n, r.dim + 1))
        if n == 4:
            exps = rng.sample(exps, 20)
        for k in exps:
            a = arithmetic_degree(monomial_class(k, r))
            b = arithmetic_degree(monomial_class(tuple(reversed(k)), r))
            sym.record(a == (-1) ** sum(k) * b, lambda: f"k={k}: {a} vs {b}")

    monk = s.check("multiply agrees with the arithmetic Monk formula")
    for n in _ns(2, min(n_max, 3)):
        r = FlagType.complete(n)
        for w in all_permutations(n):
            for k in range(1, n):
                got = multiply(ArithmeticClass(r, {Permutation.simple(k): 1}), ArithmeticClass(r, {w: 1}))
                exp = arithmetic_monk(k, w, r)
                monk.record(classes_equivalent(got, exp), lambda: f"k={k}, w={w}: {got} vs {exp}")

    if n_max >= 3:
        r3 = FlagType.complete(3)
        table = s.check("degree table for n = 3 matches the published values")
        for k, d in degree_table(3):
            table.record(4 * d == PUBLISHED_TABLE_N3[k], lambda: f"k={k}: 4deg = {4 * d}, published {PUBLISHED_TABLE_N3[k]}")

        heights = s.check("height equals the multinomial sum over the table")
        h1, h2 = height_pluriplucker(r3), height_by_multinomial(3)
        heights.record(h1 == h2, lambda: f"{h1} vs {h2}")

        proj = s.check("heights of projective spaces are (1/2) sum_k sum_{m<=k} 1/m")
        for n in _ns(2, min(n_max, 4)):
            got = height_pluriplucker(FlagType((1, n)))
            exp = Fraction(1, 2) * sum(Fraction(1, m) for k in range(1, n) for m in range(1, k + 1))
            proj.record(got == exp, lambda: f"P^{n - 1}: {got} vs {exp}")

        tp = s.check("ddc(S~_u) ^ S~_v = sum c_uv^w S~_w")
        tn = [w for d in (1, 2, 3) for w in s_upper(3, d) if not w.fits_in(3)]
        for u in tn:
            for v in tn:
                if u.length() + v.length() > r3.dim + 1:
                    continue
                lhs = ddc(tilde_schubert(u, r3)) * tilde_schubert(v, r3)
                rhs = zero(3)
                for w, c in schubert_expand(schubert(u) * schubert(v), 3).items():
                    rhs = rhs + tilde_schubert(w, r3).scale(c)
                tp.record(
                    classes_equivalent(include_form(lhs, r3), include_form(rhs, r3)),
                    lambda: f"u={u}, v={v}",
                )

        assoc = s.check("products are associative at the degree level")
        for _ in range(30):
            ws = [rng.choice(all_permutations(3)) for _ in range(2)]
            rest = r3.dim + 1 - sum(w.length() for w in ws)
            cands = [w for w in all_permutations(3) if w.length() == rest]
            if not cands:
                ws = [Permutation.simple(1), Permutation.simple(2)]
                cands = [w for w in all_permutations(3) if w.length() == 2]
            triple = [ArithmeticClass(r3, {w: 1}) for w in ws + [rng.choice(cands)]]
            a, b, c = triple
            left = arithmetic_degree(multiply(multiply(a, b), c))
            right = arithmetic_degree(multiply(a, multiply(b, c)))
            assoc.record(left == right, lambda: f"{a}, {b}, {c}: {left} vs {right}")

        coh = s.check("partial-flag products agree with the complete flag")
        for ranks in ((1, 3), (2, 3)):
            r = FlagType(ranks)
            u0 = ArithmeticClass(r3, {fiber_point_class(r): 1})
            perms = r_permutations(3, r)
            for combo in _combos(perms, r.dim + 1):
                acc, acc2 = unit_class(r), u0
                for p in combo:
                    acc = multiply(acc, ArithmeticClass(r, {p: 1}))
                    acc2 = multiply(acc2, pullback_to_complete(ArithmeticClass(r, {p: 1})))
                d1, d2 = arithmetic_degree(acc), arithmetic_degree(acc2)
                coh.record(d1 == d2, lambda: f"r={r}, classes {[str(p) for p in combo]}: {d1} vs {d2}")
    return s.results


def _combos(perms: list[Permutation], total: int) -> Iterable[tuple[Permutation, ...]]:
    """Multisets of nontrivial classes with lengths summing to total."""
    nontrivial = [p for p in perms if not p.is_identity()]
    out = []

    def rec(start: int, left: int, acc: list[Permutation]) -> None:
        if left == 0:
            out.append(tuple(acc))
            return
        for i in range(start, len(nontrivial)):
            p = nontrivial[i]
            if p.length() <= left:
                rec(i, left - p.length(), acc + [p])

    rec(0, total, [])
    return out


SUITES: dict[str, Callable[[int], list[CheckResult]]] = {
    "perm": _perm_suite,
    "poly": _poly_suite,
    "forms": _forms_suite,
    "bcform": _bcform_suite,
    "chow": _chow_suite,
}


def run_suite(name: str, n_max: int) -> list[CheckResult]:
    """Run one suite, or every suite for name 'all'."""
    if n_max < 1 or n_max > 5:
        raise ValueError("n_max must lie between 1 and 5")
    if name == "all":
        out: list[CheckResult] = []
        for fn in SUITES.values():
            out.extend(fn(n_max))
        return out
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    return SUITES[name](n_max)
