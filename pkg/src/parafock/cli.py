"""Command-line entry point: ``parafock verify | tableaux | state | cosmo``.

Exit codes: 0 every check passed, 1 some check failed, 2 usage or
configuration error.  Output is deterministic for fixed arguments; wall-clock
timing is only included with ``--timing``.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

from . import conformal, cosmo, fock, states, young
from .report import Report

SCHEMA = 1
EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
TENSOR_LISTING_MAX_N = 4

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


class UsageError(Exception):
    pass


def parse_rational(text: str) -> Fraction:
    """``"a/b"`` or ``"a"``; decimal points are rejected to keep the path exact."""
    if not _RATIONAL.match(text.strip()):
        raise UsageError(f"expected a rational 'a/b', got {text!r}")
    try:
        return Fraction(text.strip())
    except ZeroDivisionError as exc:
        raise UsageError(f"zero denominator in {text!r}") from exc


def _config(R: int, p: int, n_max: int) -> fock.ModeConfig:
    try:
        cfg = fock.ModeConfig(R, p, n_max)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    limit = fock.max_basis_size()
    if cfg.basis_size() > limit:
        raise UsageError(str(fock.BasisTooLarge(cfg.basis_size(), limit)))
    return cfg


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> tuple[dict[str, Any], bool, str]:
    suites = ["green", "closure", "jacobi"] if args.suite == "all" else [args.suite]
    cfg = _config(args.R, args.p, args.nmax)
    needs_r4 = [s for s in suites if s != "green"]
    if needs_r4 and cfg.R != 4:
        raise UsageError(f"suite {args.suite} needs --R 4 (the SU(2,2) generators act on four ur sorts)")
    depth = {"green": 4, "closure": 4, "jacobi": 6}
    if args.depth is not None:
        depth = {"green": args.depth, "closure": args.depth, "jacobi": args.depth + 2}
    if depth["closure"] < 4 and "closure" in suites:
        raise UsageError("closure needs --depth >= 4")
    if depth["jacobi"] < 6 and "jacobi" in suites:
        raise UsageError("jacobi needs depth >= 6")
    for s in suites:
        if depth[s] >= cfg.n_max:
            raise UsageError(f"{s}: interior({depth[s]}) is empty for n_max={cfg.n_max}")

    basis = fock.build_basis(cfg)
    reports: list[Report] = []
    table = None
    for s in suites:
        if s == "green":
            reports.append(fock.verify_green_relations(basis, depth["green"]))
        elif s == "closure":
            table = conformal.closure_table(conformal.build_generators(basis), depth["closure"])
            rep = conformal.closure_report(table)
            rep.extra["span_rank"] = table.span_rank
            rep.extra["depth"] = depth["closure"]
            reports.append(rep)
        else:
            triples = "sample" if args.sample else "all"
            reports.append(conformal.jacobi_check(conformal.build_generators(basis), depth["jacobi"], triples))
    if table is not None and args.table:
        Path(args.table).write_text(table.to_json(), encoding="utf-8")

    passed = all(r.passed for r in reports)
    doc = {
        "schema": SCHEMA,
        "command": "verify",
        "config": {"suite": args.suite, "R": cfg.R, "p": cfg.p, "n_max": cfg.n_max, "basis_size": basis.size},
        "passed": passed,
        "suites": [r.to_dict() for r in reports],
    }
    if table is not None:
        doc["closure_table"] = table.to_dict()

    lines = [f"verify {args.suite}: R={cfg.R} p={cfg.p} n_max={cfg.n_max} ({basis.size} states)"]
    for r in reports:
        fails = r.failures()
        lines.append(f"  {r.name}: {len(r.records) - len(fails)}/{len(r.records)} pass")
        for f in sorted(fails, key=lambda x: x.id)[:20]:
            lines.append(f"    FAIL {f.id} {f.detail}".rstrip())
    if table is not None:
        lines.append(f"  closure span rank {table.span_rank}, closed={table.closed}")
        for (a, b), row in sorted(table.rows.items(), key=lambda kv: table._order(kv[0])):
            if row is None:
                lines.append(f"    [{a},{b}] = NOT_IN_SPAN")
                continue
            terms = " + ".join(f"({v})*{c}" for c, v in zip(table.columns, row) if v) or "0"
            lines.append(f"    [{a},{b}] = {terms}")
    lines.append("PASS" if passed else "FAIL")
    return doc, passed, "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# tableaux


def _filling_str(f) -> str:
    return "/".join("".join(str(x) for x in row) for row in f)


def cmd_tableaux(args) -> tuple[dict[str, Any], bool, str]:
    n, R = args.n, args.R
    if not (1 <= n <= young.MAX_N):
        raise UsageError(f"--n must lie in 1..{young.MAX_N}")
    if R < 1:
        raise UsageError("--r must be >= 1")
    diagrams = []
    total = 0
    checks = Report(f"tableaux n={n} R={R}")
    for d in young.enumerate_diagrams(n):
        tabs = young.standard_tableaux(d)
        f = len(tabs)
        total += f * f
        checks.add(f"hook{tuple(d)}", f == young.hook_length_count(d), f"f={f}")
        schemes = young.enumerate_schemes(d, R)
        dim = young.gl_dimension(d, R)
        checks.add(f"schemes{tuple(d)}", len(schemes) == dim, f"{len(schemes)} schemes, dimension {dim}")
        entry: dict[str, Any] = {
            "rows": list(d),
            "f": f,
            "schemes": [_filling_str(s) for s in schemes],
            "gl_dimension": dim,
        }
        if n <= TENSOR_LISTING_MAX_N:
            entry["tableaux"] = [_filling_str(t) for t in tabs]
            entry["tensors"] = [
                {"tableau": _filling_str(t), "scheme": _filling_str(s), "tensor": str(young.scheme_tensor(d, t, s))}
                for t in tabs
                for s in schemes
            ]
        diagrams.append(entry)
    checks.add("sum_f_squared", total == math.factorial(n), f"{total} vs {math.factorial(n)}")
    if n == 3 and R == 2:
        checks.extend(young.worked_tensor_report(), "worked:")
        checks.extend(young.formal_dependence_check(), "formal:")

    doc = {
        "schema": SCHEMA,
        "command": "tableaux",
        "config": {"n": n, "R": R},
        "passed": checks.passed,
        "diagrams": diagrams,
        "f": [e["f"] for e in diagrams],
        "sum_f_squared": total,
        "n_factorial": math.factorial(n),
        "checks": checks.to_dict(),
    }
    lines = [f"tableaux n={n} R={R}"]
    for e in diagrams:
        lines.append(f"  diagram {tuple(e['rows'])}: f={e['f']}, {len(e['schemes'])} schemes (dim {e['gl_dimension']})")
        for t in e.get("tensors", []):
            lines.append(f"    T[{t['tableau']}] S[{t['scheme']}]: {t['tensor']}")
    lines.append(f"  f = {tuple(doc['f'])}")
    lines.append(f"  sum f^2 = {total} (n! = {math.factorial(n)})")
    for r in sorted(checks.records, key=lambda x: x.id):
        if r.id.startswith(("worked:", "formal:")):
            lines.append(f"  {r.status.upper()} {r.id}")
    lines.append("PASS" if checks.passed else "FAIL")
    return doc, checks.passed, "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# state


def cmd_state(args) -> tuple[dict[str, Any], bool, str]:
    K = args.K
    Kp = args.Kprime if args.Kprime is not None else K
    eps = parse_rational(args.epsilon)
    if K < 0 or Kp < 0:
        raise UsageError("--K and --Kprime must be >= 0")
    if args.boundary_width < 2:
        raise UsageError("--boundary-width must be >= 2")
    if args.kind == "vacuum":
        needed, exact = 2 * K, 2 * K
    else:
        needed, exact = 2 * (K + Kp), 2 * min(K, Kp)
        if args.kind == "neutrino":
            exact -= 1
    n_max = args.nmax if args.nmax is not None else needed
    if needed > n_max:
        raise UsageError(f"series cutoff {needed} exceeds --nmax {n_max}")
    if exact - args.boundary_width < 0:
        hint = f"use --boundary-width between 2 and {exact}" if exact >= 2 else "raise --K"
        raise UsageError(
            f"no interior shells: state is exact through shell {exact}, boundary width {args.boundary_width}; {hint}"
        )
    if args.kind != "vacuum" and args.p != 1:
        raise UsageError("zeron and neutrino states are defined for --p 1")
    cfg = _config(4, args.p, n_max)

    basis = fock.build_basis(cfg)
    ops = conformal.build_poincare(conformal.build_generators(basis))
    omega = states.lorentz_vacuum(basis, K)
    state = omega
    if args.kind in ("zeron", "neutrino"):
        state = states.zeron(basis, omega, eps, Kp)
        if args.kind == "neutrino":
            state = states.neutrino(basis, state)
    report = states.check_invariance(state, ops, args.boundary_width)
    passed = report.interior_clean
    doc = {
        "schema": SCHEMA,
        "command": "state",
        "config": {
            "kind": args.kind,
            "K": K,
            "K_prime": None if args.kind == "vacuum" else Kp,
            "epsilon": None if args.kind == "vacuum" else str(eps),
            "R": 4,
            "p": cfg.p,
            "n_max": n_max,
            "boundary_width": args.boundary_width,
        },
        "passed": passed,
        "report": report.to_dict(),
    }
    lines = [
        f"state {args.kind}: K={K}" + ("" if args.kind == "vacuum" else f" K'={Kp} eps={eps}") + f" n_max={n_max}",
        f"  exact through shell {report.exact_through}, boundary width {report.boundary_width}",
    ]
    for r in report.results:
        const = "" if r.recorded_constant is None else f" constant={r.recorded_constant}"
        lines.append(f"  {r.condition}: {r.mode}{const} interior_clean={r.interior_clean}")
        dirty = [s for s in r.shell_counts() if s["residual_component_count"]]
        for s in dirty:
            lines.append(f"    shell {s['n']}: {s['residual_component_count']} residual components")
    lines.append("PASS" if passed else "FAIL")
    return doc, passed, "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# cosmo


def cmd_cosmo(args) -> tuple[dict[str, Any], bool, str]:
    try:
        consts = cosmo.CosmoConstants.load(args.constants)
    except cosmo.ConstantsError as exc:
        raise UsageError(str(exc)) from exc
    rows = cosmo.cosmo_table(consts)
    passed = cosmo.table_passed(rows)
    doc = {
        "schema": SCHEMA,
        "command": "cosmo",
        "constants": {k: v.to_json() for k, v in sorted(consts.values.items())},
        "passed": passed,
        "rows": [r.to_dict() for r in rows],
    }
    head = f"{'quantity':<22}{'computed':<20}{'stated':<10}{'decades':>8}{'log10 gap':>11}  status"
    lines = [head]
    for r in rows:
        d = r.to_dict()
        gap = d["log10_gap"] if d["log10_gap"] is not None else "-"
        lines.append(
            f"{r.quantity:<22}{str(r.computed):<20}{d['paper_value'] or '-':<10}"
            f"{d['decade_difference']:>8}{gap:>11}  {r.status}"
        )
    lines.append("PASS" if passed else "FAIL")
    return doc, passed, "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="parafock", description="Exact checks for parabose ur quantization.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser):
        p.add_argument("--json", action="store_true", help="emit JSON instead of text")
        p.add_argument("--output", "-o", help="write the report to this file instead of stdout")
        p.add_argument("--timing", action="store_true", help="include wall-clock seconds (breaks byte determinism)")

    v = sub.add_parser("verify", help="Green relations, generator closure, Jacobi identity")
    v.add_argument("--suite", choices=["green", "closure", "jacobi", "all"], default="all")
    v.add_argument("--R", type=int, default=4)
    v.add_argument("--p", type=int, default=1)
    v.add_argument("--nmax", type=int, default=8)
    v.add_argument("--depth", type=int, default=None, help="interior depth (jacobi uses depth+2)")
    v.add_argument("--table", help="write the closure coefficient table (JSON) here")
    v.add_argument("--sample", action="store_true", help="jacobi: every 7th triple instead of all")
    common(v)

    t = sub.add_parser("tableaux", help="Young diagrams, tableaux, schemes and tensors")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--r", "--R", dest="R", type=int, default=2, help="number of letters (GL(R))")
    common(t)

    s = sub.add_parser("state", help="Lorentz vacuum, zeron or neutrino residual report")
    s.add_argument("--kind", choices=["vacuum", "zeron", "neutrino"], required=True)
    s.add_argument("--K", type=int, default=3)
    s.add_argument("--Kprime", type=int, default=None)
    s.add_argument("--epsilon", default="1/1")
    s.add_argument("--p", type=int, default=1)
    s.add_argument("--nmax", type=int, default=None)
    s.add_argument("--boundary-width", type=int, default=4)
    common(s)

    c = sub.add_parser("cosmo", help="order-of-magnitude table")
    c.add_argument("--constants", help="JSON constants file (defaults built in)")
    common(c)
    return parser


COMMANDS: dict[str, Callable] = {
    "verify": cmd_verify,
    "tableaux": cmd_tableaux,
    "state": cmd_state,
    "cosmo": cmd_cosmo,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    start = time.perf_counter()
    try:
        doc, passed, text = COMMANDS[args.command](args)
    except (UsageError, fock.BasisTooLarge) as exc:
        print(f"parafock: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.timing:
        elapsed = round(time.perf_counter() - start, 3)
        doc["timing_seconds"] = elapsed
        text += f"time {elapsed} s\n"
    out = json.dumps(doc, indent=2, ensure_ascii=False) + "\n" if args.json else text
    if args.output:
        Path(args.output).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)
    return EXIT_PASS if passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
