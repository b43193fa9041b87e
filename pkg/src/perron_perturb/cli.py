"""Command-line front end: analyze, trace, search, paper-example."""

from __future__ import annotations

import argparse
import json
import re
import sys

import numpy as np

from . import perturb, poly, search
from .exceptions import (
    ConvergenceFailure,
    DimensionMismatch,
    GenerationFailure,
    IllConditioned,
    NotSimple,
    ParseError,
    PerronPerturbError,
    UnknownSelector,
)
from .perturb import PerturbationProblem, Stability, make_problem

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_NUMERIC = 3

_NUMERIC_ERRORS = (ConvergenceFailure, NotSimple, IllConditioned, GenerationFailure)


def load_problem_file(path: str) -> PerturbationProblem:
    """Read a {"H": [[...]], "v": [...], "w": [...]} JSON problem file."""
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read problem file {path}: {exc}") from exc
    if not isinstance(doc, dict) or not all(k in doc for k in ("H", "v", "w")):
        raise ParseError("problem file must contain keys 'H', 'v', 'w'")
    try:
        H = np.asarray(doc["H"], dtype=float)
        v = np.asarray(doc["v"], dtype=float)
        w = np.asarray(doc["w"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"non-numeric data in problem file: {exc}") from exc
    try:
        return make_problem(H, v, w)
    except (ValueError, DimensionMismatch) as exc:
        raise ParseError(f"invalid problem data: {exc}") from exc


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _complex_pairs(values) -> list[list[float]]:
    return [[z.real, z.imag] for z in values]


def analyze_report(prob: PerturbationProblem) -> dict:
    """All analysis results for one problem as a JSON-serializable dict."""
    pvw = perturb.p_vw_lemma16(prob)
    pvw_roots = poly.roots(pvw) if pvw.degree >= 1 else None
    hurwitz = poly.routh_hurwitz(pvw) if pvw.degree >= 1 else None
    verdict = perturb.classify(prob, with_threshold=True)
    asym = perturb.asymptotics(prob) if prob.simple else None
    report = {
        "n": prob.n,
        "rho": prob.rho,
        "rho_simple": prob.simple,
        "irreducible": prob.irreducible,
        "nzp": {"lv": prob.nzp.lv, "wr": prob.nzp.wr, "holds": prob.nzp.holds},
        "wv": prob.wv,
        "pvw_coeffs": list(pvw.coeffs),
        "pvw_roots": _complex_pairs(pvw_roots.values) if pvw_roots else [],
        "hurwitz": hurwitz.status.value if hurwitz else None,
        "classification": {
            "status": verdict.status.value,
            "reason": verdict.reason,
            "t1_estimate": verdict.t1_estimate,
            "witness_roots": _complex_pairs(verdict.witness_roots.values)
            if verdict.witness_roots else [],
        },
    }
    if asym is not None:
        report["asymptotics"] = {
            "case": asym.case.value,
            "n_divergent": asym.n_divergent,
            "branches": [b.description for b in asym.divergent_branches],
            "finite_limits": _complex_pairs(asym.finite_limits.values),
        }
    return report


def _print_report(report: dict) -> None:
    print(f"n = {report['n']}")
    print(f"rho(H) = {report['rho']:.10g}  (simple: {report['rho_simple']})")
    print(f"irreducible: {report['irreducible']}")
    nzp = report["nzp"]
    print(f"NZP: z_l^T v = {nzp['lv']:.10g}, w^T z_r = {nzp['wr']:.10g}, "
          f"holds: {nzp['holds']}")
    print(f"w^T v = {report['wv']:.10g}")
    print(f"p_vw coefficients (ascending): "
          f"{', '.join(f'{c:.6g}' for c in report['pvw_coeffs'])}")
    if report["pvw_roots"]:
        roots_s = ", ".join(f"{re:.6g}{im:+.6g}i" for re, im in report["pvw_roots"])
        print(f"p_vw roots: {roots_s}")
    print(f"Routh-Hurwitz on p_vw: {report['hurwitz']}")
    cls = report["classification"]
    print(f"verdict: {cls['status']}" +
          (f"  ({cls['reason']})" if cls["reason"] else ""))
    if cls["t1_estimate"] is not None:
        print(f"estimated stability threshold t1 ~= {cls['t1_estimate']:.6g}")
    if "asymptotics" in report:
        asym = report["asymptotics"]
        print(f"large-t case: {asym['case']} "
              f"({asym['n_divergent']} divergent branch(es))")
        for b in asym["branches"]:
            print(f"  branch: {b}")
        if asym["finite_limits"]:
            lims = ", ".join(f"{re:.6g}{im:+.6g}i" for re, im in asym["finite_limits"])
            print(f"  finite limits: {lims}")


def cmd_analyze(args) -> int:
    prob = load_problem_file(args.input)
    report = analyze_report(prob)
    if args.json:
        json.dump(report, sys.stdout, indent=2)
        print()
    else:
        _print_report(report)
    return EXIT_OK


def write_trace_csv(curves: perturb.EigenCurveSet, path: str) -> None:
    n = len(curves.paths)
    header = "t," + ",".join(f"re_{i + 1},im_{i + 1}" for i in range(n))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(header + "\n")
        for j, t in enumerate(curves.t_grid):
            cells = [_fmt(t)]
            for i in range(n):
                z = curves.paths[i][j]
                cells.append(_fmt(z.real))
                cells.append(_fmt(z.imag))
            fh.write(",".join(cells) + "\n")


def cmd_trace(args) -> int:
    prob = load_problem_file(args.input)
    curves = perturb.trace_eigenvalues(prob, args.t_min, args.t_max, args.points)
    write_trace_csv(curves, args.out)
    print(f"wrote {len(curves.t_grid)} rows to {args.out}")
    if args.svg:
        from .plotting import render_eigencurves

        render_eigencurves(curves, args.svg, title="Eigenvalue curves of B(t)")
        print(f"wrote figure to {args.svg}")
    return EXIT_OK


def cmd_search(args) -> int:
    config = search.SearchConfig(
        n=args.n, samples=args.samples, seed=args.seed,
        entry_scale=args.entry_scale, sparsity=args.sparsity,
        wv_mode=args.wv_mode, inject_paper=args.inject_paper,
    )
    records = search.falsify(config)
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        for rec in records:
            fh.write(json.dumps(rec.to_dict()) + "\n")
    print(f"{len(records)} counterexample(s) out of {config.samples} samples "
          f"(n={config.n}, seed={config.seed}) -> {args.out}")
    return EXIT_OK


_BUILTINS = {
    "cx4": search.paper_counterexample_4,
    "ex33": search.example_small_3,
    "ex34": search.example_circulant_3,
    "ex34b": lambda: search.example_circulant_3(variant=True),
}


def builtin_problem(which: str) -> tuple[dict, str]:
    """Resolve a built-in example selector to a problem-file document."""
    m = re.fullmatch(r"family[:(](\d+)\)?", which)
    if m:
        n = int(m.group(1))
        H = search.paper_family(n)
        return {
            "H": H.entries.tolist(),
            "v": [1.0] * n,
            "w": [1.0] * n,
            "label": f"dimension-{n} counterexample family (v = w = ones)",
        }, which
    if which not in _BUILTINS:
        raise UnknownSelector(
            f"unknown selector {which!r}; choose from cx4, ex33, ex34, ex34b, family:N"
        )
    prob = _BUILTINS[which]()
    return {
        "H": prob.H.entries.tolist(),
        "v": prob.v.tolist(),
        "w": prob.w.tolist(),
        "label": which,
    }, which


def cmd_paper_example(args) -> int:
    doc, _ = builtin_problem(args.which)
    text = json.dumps(doc, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        print(f"wrote {args.which} to {args.out}")
    else:
        print(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="perron-perturb",
        description="Eigenvalue analysis of rank-one perturbations "
                    "B(t) = A + t v w^T of singular M-matrices A = rho(H) I - H",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full analysis of one problem file")
    p.add_argument("input", help="JSON problem file with keys H, v, w")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("trace", help="trace eigenvalue curves over a t-grid")
    p.add_argument("input")
    p.add_argument("--t-min", type=float, default=1e-3)
    p.add_argument("--t-max", type=float, default=1e3)
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--svg", help="optional figure path (svg, png, ...)")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("search", help="random search for conjecture violations")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--entry-scale", type=float, default=1.0)
    p.add_argument("--sparsity", type=float, default=0.0)
    p.add_argument("--wv-mode", choices=("any", "positive", "zero"), default="any")
    p.add_argument("--inject-paper", action="store_true",
                   help="include the known 4x4 counterexample (n = 4 only)")
    p.add_argument("--out", required=True, help="output JSON-lines path")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("paper-example", help="emit a built-in example problem file")
    p.add_argument("which", help="cx4 | ex33 | ex34 | ex34b | family:N")
    p.add_argument("--out", help="output path (stdout if omitted)")
    p.set_defaults(func=cmd_paper_example)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UnknownSelector, DimensionMismatch, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (_NUMERIC_ERRORS + (PerronPerturbError,)) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
