"""Command-line front end.

Every subcommand prints an aligned text table (basis listings capped at 50
rows) or, with ``--json``, the complete machine-readable report.  With
``--plot`` the report is also written to ``--out`` as a tab-delimited table
and a PNG figure.  Exit status: 0 success, 2 invalid input, 1 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from . import arith, ssengine, stablering
from .linalg import CapExceeded
from .oracle import (
    build_rep,
    gram_semisimple,
    invariants_dim,
    regular_check,
    specht_invariants,
    standard_recipe,
)
from .symcore import as_partition

TEXT_ROW_CAP = 50
SUBCOMMANDS = (
    "ext-basis", "theorem-b", "lambda-cohomology", "d2-check", "koszul", "oracle",
    "brauer-ss", "bernoulli", "exceptions", "congruence-ring", "verify",
)


class ValidationError(ValueError):
    """Bad flags or violated preconditions (exit status 2)."""


@dataclass
class Report:
    """What a subcommand produced: JSON payload, text table and optional figure."""

    payload: dict
    headers: list[str] = field(default_factory=list)
    rows: list[list] = field(default_factory=list)
    summary: list[str] = field(default_factory=list)
    figure: str = "none"
    figure_kw: dict = field(default_factory=dict)
    ok: bool = True


@dataclass
class CommandRequest:
    name: str
    args: argparse.Namespace


def _partition(text: str):
    text = (text or "").strip()
    if text in ("", "0", "-", "()"):
        return ()
    try:
        return as_partition([int(x) for x in text.replace(" ", "").split(",") if x])
    except ValueError as exc:
        raise ValidationError(f"bad partition {text!r}: {exc}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ValidationError(f"bad integer list {text!r}") from None


def _prime(p: int) -> int:
    if p < 2 or not arith.is_prime(p):
        raise ValidationError(f"{p} is not a prime")
    return p


def format_table(headers: list[str], rows: list[list], cap: int = TEXT_ROW_CAP) -> str:
    shown = rows[:cap]
    cells = [[str(h) for h in headers]] + [[str(c) for c in r] for r in shown]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    if len(rows) > cap:
        lines.append(f"... truncated: {len(rows) - cap} more rows (use --json for the full list)")
    return "\n".join(lines)


# -- subcommands -------------------------------------------------------------

def cmd_ext_basis(a) -> Report:
    if a.reduced:
        basis = stablering.reduced_basis(a.ns, a.nt, a.degree, a.p)
    elif a.p is not None:
        basis = stablering.xmod_basis(a.ns, a.nt, a.degree, a.p)
    else:
        basis = stablering.ext_basis(a.ns, a.nt, a.degree)
    rows = [[i, list(e.labels), list(e.sigma)] for i, e in enumerate(basis.elements)]
    return Report(basis.to_dict(), ["#", "labels", "sigma"], rows, [f"dim: {basis.dim}"])


def cmd_theorem_b(a) -> Report:
    _prime(a.p)
    if a.table:
        degrees = _int_list(a.degrees)
        table = stablering.multiplicity_table(a.max_size, degrees, a.p)
        rows = table.rows()
        keys = sorted({(tuple(r["lambda"]), tuple(r["mu"])) for r in rows}, key=lambda k: (sum(k[0]), k))
        labels = [f"{_fmt(lam)}|{_fmt(mu)}" for lam, mu in keys]
        grid = [[table.entries[(lam, mu, deg)] for deg in degrees] for lam, mu in keys]
        return Report(
            table.to_dict(), ["lambda", "mu", "degree", "multiplicity"],
            [[_fmt(r["lambda"]), _fmt(r["mu"]), r["degree"], r["multiplicity"]] for r in rows],
            figure="table",
            figure_kw={"values": grid, "row_labels": labels, "col_labels": [str(d) for d in degrees],
                       "title": f"multiplicities, p = {a.p}"},
        )
    lam, mu = _partition(a.lam), _partition(a.mu)
    value = stablering.multiplicity(lam, mu, a.degree, a.p)
    payload = {"p": a.p, "lambda": list(lam), "mu": list(mu), "degree": a.degree, "multiplicity": value}
    summary = [str(value)]
    if a.oracle_d is not None:
        got = specht_invariants(lam, mu, a.degree, a.oracle_d, a.p, a.group)
        payload["oracle"] = {"d": a.oracle_d, "group": a.group, "invariants": got, "agrees": got == value}
        summary.append(f"oracle at d={a.oracle_d} ({a.group}): {got} ({'agrees' if got == value else 'DISAGREES'})")
    return Report(payload, summary=summary, ok=payload.get("oracle", {}).get("agrees", True))


def _fmt(parts) -> str:
    return "(" + ",".join(str(x) for x in parts) + ")"


def cmd_lambda(a) -> Report:
    _prime(a.p)
    ts = [a.t] if a.t is not None else list(range(a.p))
    rows, out = [], []
    for t in ts:
        basis = stablering.lambda_cohomology(a.q, t, a.p)
        out.append(basis.to_dict())
        rows.append([t, basis.dim, "; ".join(str(e) for e in basis.elements)])
    return Report(
        {"q": a.q, "p": a.p, "pieces": out}, ["t", "dim", "basis"], rows,
        figure="series", figure_kw={"title": f"H^{a.q}, p = {a.p}", "rows": [{"t": r[0], "dim": r[1]} for r in rows]},
    )


def cmd_d2(a) -> Report:
    rep = ssengine.d2_injectivity(_prime(a.p))
    rows = [[r["t"], r["source_dim"], r["target_dim"], r["rank"]] for r in rep.degree_dims]
    return Report(rep.to_dict(), ["t", "source", "target", "rank"], rows,
                  [f"injective: {str(rep.injective).lower()}"], ok=rep.injective)


def cmd_koszul(a) -> Report:
    res = ssengine.run_koszul(ssengine.regular_prime_family(a.bound), _prime(a.p), a.bound)
    want = ssengine.exterior_series(range(5, a.bound + 2, 4), a.bound)
    rows = [[k, res.e2[k], res.e_infinity[k], res.homology[k], want[k]] for k in range(a.bound + 1)]
    payload = res.to_dict()
    payload["expected_exterior"] = want
    payload["matches"] = res.e_infinity == want
    return Report(
        payload, ["degree", "E2", "E_inf", "homology", "exterior"], rows,
        [f"matches exterior algebra: {str(payload['matches']).lower()}"],
        figure="series",
        figure_kw={"title": f"E_infinity, p = {a.p}", "value": "E_inf",
                   "rows": [{"degree": r[0], "E_inf": r[2]} for r in rows]},
    )


def cmd_oracle(a) -> Report:
    _prime(a.p)
    if a.kind == "regular":
        v = regular_check(a.k, a.rmax, a.d, a.p)
        rows = [list(c) for c in v.checks]
        return Report(v.to_dict(), ["i", "s", "source", "image"], rows, [f"regular: {str(v.regular).lower()}"])
    if a.recipe:
        recipe = json.loads(Path(a.recipe).read_text()) if Path(a.recipe).exists() else json.loads(a.recipe)
        rep = build_rep(recipe, a.d, a.p, a.group)
        dim = invariants_dim(rep)[0]
        payload = {"engine": "dense", "d": a.d, "p": a.p, "group": a.group, "module_dim": rep.dim, "invariants": dim}
        return Report(payload, summary=[f"module dim: {rep.dim}", f"invariants: {dim}"])
    lam, mu = _partition(a.lam), _partition(a.mu)
    engine = a.engine
    if engine == "auto":
        engine = "dense" if a.d <= 4 and a.degree <= 4 and sum(lam) + sum(mu) <= 2 else "symmetric"
    if engine == "dense":
        rep = build_rep(standard_recipe(lam, mu, a.degree), a.d, a.p, a.group)
        dim = invariants_dim(rep)[0]
    else:
        dim = specht_invariants(lam, mu, a.degree, a.d, a.p, a.group)
    stable = stablering.multiplicity(lam, mu, a.degree, a.p)
    payload = {"engine": engine, "d": a.d, "p": a.p, "group": a.group, "lambda": list(lam), "mu": list(mu),
               "degree": a.degree, "invariants": dim, "stable_multiplicity": stable}
    return Report(payload, summary=[f"invariants: {dim}", f"stable multiplicity: {stable}"])


def cmd_brauer(a) -> Report:
    v = gram_semisimple(a.n, a.m, a.delta, _prime(a.p))
    return Report(v.to_dict(), summary=[f"dim: {v.dim}", f"semisimple: {str(v.semisimple).lower()}",
                                        f"radical dim: {v.radical_dim}"])


def cmd_bernoulli(a) -> Report:
    _prime(a.p)
    ms = [a.m] if a.m is not None else list(range(2, a.p - 2, 2))
    rows = [[m, arith.bernoulli_mod(m, a.p)] for m in ms]
    payload = {"p": a.p, "values": [{"m": m, "B_m_mod_p": v} for m, v in rows]}
    return Report(payload, ["m", "B_m mod p"], rows)


def cmd_exceptions(a) -> Report:
    cache = arith.BernoulliCache(Path(a.cache) / "bernoulli.json") if a.cache else None
    cands = _int_list(a.candidates) if a.candidates else None
    rep = arith.exceptions(a.p, a.mode, cands, scan_cap=a.scan_cap, cache=cache, workers=a.workers, seed=a.seed)
    if cache is not None:
        cache.save()
    rows = [[v, a.p - v] for v in rep.exceptional_k]
    return Report(rep.to_dict(), ["1+2k", "irregular index"], rows,
                  [f"exceptions: {list(rep.exceptional_k)}", f"checked indices: {rep.checked}"])


def cmd_congruence(a) -> Report:
    pres = arith.congruence_ring(_prime(a.p), a.n, a.level, a.bound)
    rows = [[name, deg, kind] for name, deg, kind in pres.generators]
    terms = min(pres.degree_bound - 1, 63)
    series = arith.poincare(pres, terms) if terms >= 0 else []
    return Report(
        pres.to_dict(), ["generator", "degree", "kind"], rows,
        [f"poincare: {series[:16]}"],
        figure="series",
        figure_kw={"title": f"Poincare series, p = {a.p}, n = {a.n}",
                   "rows": [{"degree": k, "dim": v} for k, v in enumerate(series)]},
    )


def cmd_verify(a) -> Report:
    from .verify import verify_suite

    def progress(res):
        if not a.json:
            print(f"{'PASS' if res.passed else 'FAIL'}  {res.name}  ({res.seconds:.2f} s)  {res.detail}", flush=True)

    rep = verify_suite(a.level, progress)
    rows = [[r.name, "PASS" if r.passed else "FAIL", f"{r.seconds:.2f}"] for r in rep.results]
    return Report(
        rep.to_dict(), ["check", "result", "seconds"], rows if a.json else [],
        [f"overall: {'PASS' if rep.passed else 'FAIL'}"], ok=rep.passed,
        figure="timings",
        figure_kw={"title": f"verify ({a.level})",
                   "rows": [{"name": r.name, "passed": r.passed, "seconds": round(r.seconds, 3)} for r in rep.results]},
    )


HANDLERS: dict[str, Callable[[argparse.Namespace], Report]] = {
    "ext-basis": cmd_ext_basis,
    "theorem-b": cmd_theorem_b,
    "lambda-cohomology": cmd_lambda,
    "d2-check": cmd_d2,
    "koszul": cmd_koszul,
    "oracle": cmd_oracle,
    "brauer-ss": cmd_brauer,
    "bernoulli": cmd_bernoulli,
    "exceptions": cmd_exceptions,
    "congruence-ring": cmd_congruence,
    "verify": cmd_verify,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the full JSON report")
    common.add_argument("--plot", action="store_true", help="write a figure and a delimited table")
    common.add_argument("--out", default="stabcoh-report", help="directory for --plot output")

    parser = _Parser(prog="stabcoh", description="Stable cohomology calculus over finite fields.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("ext-basis", parents=[common], help="labeled basis of an Ext group")
    s.add_argument("--ns", type=int, required=True)
    s.add_argument("--nt", type=int, required=True)
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--reduced", action="store_true", help="labels at least one (quotient V_[n,m])")
    s.add_argument("--p", type=int, help="prime; enforces degree/2 < p")

    s = sub.add_parser("theorem-b", parents=[common], help="multiplicity of S_{lambda,mu} in cohomology")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--lambda", dest="lam", default="")
    s.add_argument("--mu", default="")
    s.add_argument("--degree", type=int, default=0)
    s.add_argument("--table", action="store_true", help="tabulate all shapes up to --max-size")
    s.add_argument("--max-size", type=int, default=4)
    s.add_argument("--degrees", default="0,2,4,6")
    s.add_argument("--oracle-d", type=int, help="also compute finite-field invariants at this d")
    s.add_argument("--group", choices=("GL", "SL"), default="SL")

    s = sub.add_parser("lambda-cohomology", parents=[common], help="H^q(SL; Lambda^t sl^v) bases")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--t", type=int)
    s.add_argument("--p", type=int, required=True)

    s = sub.add_parser("d2-check", parents=[common], help="injectivity of d_2 on the first column")
    s.add_argument("--p", type=int, required=True)

    s = sub.add_parser("koszul", parents=[common], help="regular-prime spectral sequence")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--bound", type=int, default=20)

    s = sub.add_parser("oracle", parents=[common], help="finite-field invariants and regularity checks")
    s.add_argument("--kind", choices=("invariants", "regular"), default="invariants")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--lambda", dest="lam", default="")
    s.add_argument("--mu", default="")
    s.add_argument("--degree", type=int, default=0)
    s.add_argument("--group", choices=("GL", "SL"), default="SL")
    s.add_argument("--engine", choices=("auto", "dense", "symmetric"), default="auto")
    s.add_argument("--recipe", help="JSON recipe (inline or file) for the dense engine")
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--rmax", type=int, default=3)

    s = sub.add_parser("brauer-ss", parents=[common], help="semisimplicity of B_{n,m}(delta)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--delta", type=int, required=True)
    s.add_argument("--p", type=int, required=True)

    s = sub.add_parser("bernoulli", parents=[common], help="Bernoulli numbers mod p")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--m", type=int)

    s = sub.add_parser("exceptions", parents=[common], help="irregular pairs of p")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--mode", choices=("full", "targeted"), default="full")
    s.add_argument("--candidates", help="comma-separated odd values 1+2k to test")
    s.add_argument("--scan-cap", type=int, default=arith.DEFAULT_SCAN_CAP)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--seed", type=int)
    s.add_argument("--cache", help=f"cache directory (default ${arith.CACHE_ENV} when set)")

    s = sub.add_parser("congruence-ring", parents=[common], help="stable cohomology of a congruence subgroup")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--level", type=int, default=1)
    s.add_argument("--bound", type=int)

    s = sub.add_parser("verify", parents=[common], help="run the acceptance battery")
    s.add_argument("--level", choices=("fast", "full"), default="fast")
    return parser


def dispatch(req: CommandRequest) -> int:
    args = req.args
    if req.name == "exceptions" and not args.cache:
        import os

        args.cache = os.environ.get(arith.CACHE_ENV)
    report = HANDLERS[req.name](args)
    if args.json:
        print(json.dumps(report.payload, sort_keys=True, indent=2))
    else:
        for line in report.summary:
            print(line)
        if report.rows:
            print(format_table(report.headers, report.rows))
    if args.plot:
        from . import report as rpt

        kw = dict(report.figure_kw)
        rows = kw.pop("rows", None)
        if rows is None:
            rows = [dict(zip(report.headers, r)) for r in report.rows] or [_flatten(report.payload)]
        written = rpt.render(req.name, rows, Path(args.out), report.figure, **kw)
        print("wrote: " + ", ".join(str(w) for w in written), file=sys.stderr)
    return 0 if report.ok else 1


def _flatten(payload: dict) -> dict:
    return {k: (json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v) for k, v in payload.items()}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return dispatch(CommandRequest(args.command, args))
    except (ValidationError, CapExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # anything else is a bug
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
