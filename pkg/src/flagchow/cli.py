"""
Command-line interface.

Every command prints a report; JSON reports have the shape

    {"status": "ok" | "verification-failure" | "usage-error",
     "payload": {...},
     "meta": {"command": str, "seconds": float}}

and the exit code is 0, 1 or 2 to match the status. Rationals are written as
"p/q" strings. ``table`` defaults to TSV output, every other command to JSON.

>>> main(["degree", "--n", "3", "--exponents", "0,4,0"], out=_Sink())
0
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from typing import Any, Sequence, TextIO

from .bcform import FiltrationSpec, bc_chern, bc_total_chern
from .checks import run_suite
from .chow import (
    ArithmeticClass,
    arithmetic_degree,
    arithmetic_monk,
    classes_equivalent,
    degree_table,
    height_by_multinomial,
    height_pluriplucker,
    monomial_class,
    multiply,
)
from .forms import FORM_N_CAP, set_form_cap
from .perm import FlagType, Permutation
from .poly import EngineFault, schubert

__all__ = ["main", "dispatch", "Report", "UsageError", "validate_report", "STATUSES"]

STATUSES = {"ok": 0, "verification-failure": 1, "usage-error": 2}
DEFAULT_CAPS = {"table": 6}
DEFAULT_CAP = 8
SUITE_NAMES = ("perm", "poly", "forms", "bcform", "chow", "all")


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


class _Sink:
    def write(self, _text: str) -> int:
        return 0


class Report:
    def __init__(self, command: str, status: str, payload: dict, rows: list[list[str]] | None = None):
        self.command = command
        self.status = status
        self.payload = payload
        self.rows = rows
        self.seconds = 0.0

    @property
    def exit_code(self) -> int:
        return STATUSES[self.status]

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "payload": self.payload,
            "meta": {"command": self.command, "seconds": round(self.seconds, 6)},
        }

    def render(self, fmt: str) -> str:
        if fmt == "tsv" and self.rows is not None:
            return "\n".join("\t".join(row) for row in self.rows) + "\n"
        return json.dumps(self.to_json(), indent=2) + "\n"


def q(c: Fraction) -> str:
    """A rational as a "p/q" string."""
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def _plain(c: Fraction) -> str:
    return str(Fraction(c))


# -- argument handling -------------------------------------------------------


def _cap(command: str) -> int:
    env = os.environ.get("FLAGCHOW_NMAX")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"FLAGCHOW_NMAX must be an integer, got {env!r}") from None
    return DEFAULT_CAPS.get(command, DEFAULT_CAP)


def _check_n(command: str, n: int) -> None:
    if n < 2:
        raise UsageError(f"n must be at least 2, got {n}")
    cap = _cap(command)
    if n > cap:
        raise UsageError(f"n={n} exceeds the cap {cap} for {command} (set FLAGCHOW_NMAX to raise it)")
    if n > FORM_N_CAP:
        set_form_cap(n)


def _ints(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"{what} must be comma-separated integers, got {text!r}") from None


def _perm(text: str) -> Permutation:
    try:
        return Permutation(_ints(text, "--perm"))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _flag(text: str) -> FlagType:
    try:
        return FlagType(_ints(text, "--flag"))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="flagchow", description="Arithmetic intersection numbers on flag varieties.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, help_: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--format", choices=("json", "tsv"), default=None)
        return sp

    sp = add("schubert", "Schubert polynomial of a permutation")
    sp.add_argument("--perm", required=True)

    sp = add("bott-chern", "Bott-Chern forms of the tautological filtration")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--flag")

    sp = add("degree", "arithmetic degree of a monomial in the x^_i")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--exponents", required=True)

    sp = add("table", "all top-degree monomial degrees")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--times4", action="store_true")

    sp = add("height", "height in the pluri-Pluecker embedding")
    sp.add_argument("--flag", required=True)

    sp = add("monk", "arithmetic product S^_{s_k} * S^_w")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--perm", required=True)
    sp.add_argument("--n", type=int, required=True)

    sp = add("verify", "run property suites")
    sp.add_argument("--suite", choices=SUITE_NAMES, default="all")
    sp.add_argument("--n-max", type=int, default=3)
    return p


# -- commands ----------------------------------------------------------------


def _cmd_schubert(a: argparse.Namespace) -> Report:
    w = _perm(a.perm)
    text = str(schubert(w))
    return Report("schubert", "ok", {"perm": a.perm, "polynomial": text}, [["perm", "polynomial"], [a.perm, text]])


def _cmd_bott_chern(a: argparse.Namespace) -> Report:
    _check_n("bott-chern", a.n)
    r = _flag(a.flag) if a.flag else FlagType.complete(a.n)
    if r.n != a.n:
        raise UsageError(f"flag {r} does not end at n={a.n}")
    spec = FiltrationSpec.from_flag(r)
    comps = {str(k): bc_chern(spec, k).to_text() for k in range(1, a.n + 1)}
    total = bc_total_chern(spec).to_text()
    rows = [["k", "form"]] + [[k, v] for k, v in comps.items()] + [["total", total]]
    return Report("bott-chern", "ok", {"flag": str(r), "components": comps, "total": total}, rows)


def _cmd_degree(a: argparse.Namespace) -> Report:
    _check_n("degree", a.n)
    k = _ints(a.exponents, "--exponents")
    r = FlagType.complete(a.n)
    if len(k) != a.n or any(x < 0 for x in k):
        raise UsageError(f"need {a.n} nonnegative exponents, got {a.exponents}")
    if sum(k) != r.dim + 1:
        raise UsageError(f"exponents must sum to dim F + 1 = {r.dim + 1}")
    d = arithmetic_degree(monomial_class(k, r))
    return Report("degree", "ok", {"exponents": a.exponents, "degree": q(d)}, [["exponents", "degree"], [a.exponents, q(d)]])


def _cmd_table(a: argparse.Namespace) -> Report:
    _check_n("table", a.n)
    entries = []
    header = ["exponents", "degree"] + (["times4"] if a.times4 else [])
    rows = [header]
    for k, d in degree_table(a.n):
        key = ",".join(map(str, k))
        item = {"exponents": key, "degree": q(d)}
        row = [key, q(d)]
        if a.times4:
            item["times4"] = _plain(4 * d)
            row.append(_plain(4 * d))
        entries.append(item)
        rows.append(row)
    return Report("table", "ok", {"n": a.n, "entries": entries}, rows)


def _cmd_height(a: argparse.Namespace) -> Report:
    r = _flag(a.flag)
    _check_n("height", r.n)
    h = height_pluriplucker(r)
    payload: dict[str, Any] = {"flag": str(r), "height": q(h)}
    rows = [["flag", "height"], [str(r), q(h)]]
    if r.is_complete:
        m = height_by_multinomial(r.n)
        payload["multinomial"] = q(m)
        rows[0].append("multinomial")
        rows[1].append(q(m))
        if m != h:
            return Report("height", "verification-failure", payload, rows)
    return Report("height", "ok", payload, rows)


def _cmd_monk(a: argparse.Namespace) -> Report:
    _check_n("monk", a.n)
    w = _perm(a.perm)
    r = FlagType.complete(a.n)
    if not w.fits_in(a.n):
        raise UsageError(f"{w} is not in S_{a.n}")
    if not 1 <= a.k < a.n:
        raise UsageError(f"k must lie in [1, {a.n - 1}]")
    prod = multiply(ArithmeticClass(r, {Permutation.simple(a.k): 1}), ArithmeticClass(r, {w: 1}))
    formula = arithmetic_monk(a.k, w, r)
    agrees = classes_equivalent(prod, formula)
    payload = {"k": a.k, "perm": a.perm, "product": prod.to_json(), "agrees_with_formula": agrees}
    rows = [["term", "coefficient"]]
    rows += [[k, v] for k, v in prod.to_json()["schubert"].items()]
    rows.append(["form", prod.form.to_text()])
    return Report("monk", "ok" if agrees else "verification-failure", payload, rows)


def _cmd_verify(a: argparse.Namespace) -> Report:
    if not 1 <= a.n_max <= 5:
        raise UsageError("--n-max must lie between 1 and 5")
    results = run_suite(a.suite, a.n_max)
    checks = [r.to_json() for r in results]
    ok = all(r.passed for r in results)
    rows = [["suite", "check", "passed", "cases"]]
    rows += [[r.suite, r.name, "pass" if r.passed else "FAIL", str(r.cases)] for r in results]
    payload = {"suite": a.suite, "n_max": a.n_max, "checks": checks}
    return Report("verify", "ok" if ok else "verification-failure", payload, rows)


COMMANDS = {
    "schubert": _cmd_schubert,
    "bott-chern": _cmd_bott_chern,
    "degree": _cmd_degree,
    "table": _cmd_table,
    "height": _cmd_height,
    "monk": _cmd_monk,
    "verify": _cmd_verify,
}


def dispatch(argv: Sequence[str]) -> tuple[Report, str]:
    """Parse and run one request, returning the report and its output format."""
    start = time.perf_counter()
    fmt = "json"
    command = argv[0] if argv else ""
    try:
        args = build_parser().parse_args(list(argv))
        command = args.command
        fmt = args.format or ("tsv" if command == "table" else "json")
        report = COMMANDS[command](args)
    except UsageError as exc:
        report = Report(command, "usage-error", {"error": str(exc)})
        fmt = "json"
    except EngineFault as exc:
        report = Report(command, "verification-failure", {"error": f"engine fault: {exc}"})
        fmt = "json"
    except ValueError as exc:
        report = Report(command, "usage-error", {"error": str(exc)})
        fmt = "json"
    report.seconds = time.perf_counter() - start
    return report, fmt


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    report, fmt = dispatch(argv)
    stream = out if out is not None else sys.stdout
    stream.write(report.render(fmt))
    if report.status == "usage-error" and out is None:
        print(f"flagchow: {report.payload['error']}", file=sys.stderr)
    return report.exit_code


def validate_report(data: Any) -> list[str]:
    """Problems with a decoded JSON report; empty when it matches the shape above."""
    problems: list[str] = []
    if not isinstance(data, dict):
        return ["report is not an object"]
    if set(data) != {"status", "payload", "meta"}:
        problems.append(f"unexpected keys {sorted(data)}")
    if data.get("status") not in STATUSES:
        problems.append(f"bad status {data.get('status')!r}")
    if not isinstance(data.get("payload"), dict):
        problems.append("payload is not an object")
    meta = data.get("meta")
    if not isinstance(meta, dict) or not isinstance(meta.get("command"), str) or not isinstance(
        meta.get("seconds"), (int, float)
    ):
        problems.append("meta needs a command string and a seconds number")

    def walk(v: Any, path: str) -> None:
        if isinstance(v, float):
            problems.append(f"float at {path}")
        elif isinstance(v, dict):
            for k, x in v.items():
                walk(x, f"{path}.{k}")
        elif isinstance(v, list):
            for i, x in enumerate(v):
                walk(x, f"{path}[{i}]")

    walk(data.get("payload"), "payload")
    return problems


if __name__ == "__main__":
    sys.exit(main())
