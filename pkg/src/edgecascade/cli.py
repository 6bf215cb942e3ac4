"""``edgecascade`` command line.

Exit codes: 0 success, 1 verification failure, 2 numeric precision failure, 64 usage.
"""
from __future__ import annotations

import argparse
import re
import hashlib
import json
import os
import platform
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Callable

from . import __version__
from . import opcatalog as oc

EXIT_OK, EXIT_FAIL, EXIT_PRECISION, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # y grids such as -2:2:0.5 or -1,0,1 are values, not options
        self._negative_number_matcher = re.compile(r"^-\d[\d.eE]*([:,][-+\d.eE]+)*$")

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _frac(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def _dumps(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# --- verification suites ------------------------------------------------------------

def identity_checks() -> list[tuple[str, Callable[[], bool]]]:
    from .cascade import get_table
    checks = []
    cases = [oc.GUE_SOFT, oc.GOE_SOFT, oc.GSE_SOFT, oc.LUE_SOFT, oc.LUE_SOFT_RIGHT, oc.LUE_SOFT_LEFT, oc.LUE_HARD,
             oc.EdgeCase(oc.LAGUERRE, 1, oc.HARD), oc.EdgeCase(oc.LAGUERRE, 4, oc.HARD),
             oc.EdgeCase(oc.LAGUERRE, 1, oc.SOFT_RIGHT), oc.EdgeCase(oc.LAGUERRE, 4, oc.SOFT_RIGHT)]
    for case in cases:
        table = get_table(case)
        for j in sorted(table.rows):
            checks.append((f"{case.label} beta={case.beta} r{j} ({table.sources[j]})",
                           lambda t=table, j=j: t.residual(j).is_zero()))
    return checks


def relation_checks() -> list[tuple[str, Callable[[], bool]]]:
    from .cascade import RELATIONS, check_relation
    return [(f"{rid}: {rel.description}", lambda r=rid: check_relation(r)[0]) for rid, rel in RELATIONS.items()]


def catalog_checks(catalog_file: str | None = None) -> list[tuple[str, Callable[[], bool], Callable[[], str]]]:
    from .basisalg import euler_normalize
    out: list = []
    for case in (oc.GUE_SOFT, oc.LUE_SOFT, oc.LUE_SOFT_RIGHT, oc.LUE_SOFT_LEFT, oc.LUE_HARD):
        res: dict = {}

        def run(case=case, res=res):
            res["issues"] = oc.check_grading(case)
            return not res["issues"]
        out.append((f"grading {case.label}", run, lambda res=res: "; ".join(res.get("issues", []))))
    for case in oc.ALL_CASES:
        if case.edge == oc.HARD:
            def euler(case=case):
                for op in oc.cascade_operators(case):
                    euler_normalize(op)
                return True
            out.append((f"euler-compatible {case.label} beta={case.beta}", euler, lambda: ""))
    for edge in (oc.SOFT, oc.SOFT_RIGHT):
        def indep(edge=edge):
            a = oc.scale_beta(oc.EdgeCase(oc.GAUSSIAN if edge == oc.SOFT else oc.LAGUERRE, 1, edge))
            b = oc.scale_beta(oc.EdgeCase(oc.GAUSSIAN if edge == oc.SOFT else oc.LAGUERRE, 4, edge))
            return a == b
        out.append((f"beta-independence {edge.lower()}", indep, lambda: ""))
    out.append(("tau -> 0 of Laguerre beta operators equals Gaussian beta operators", _tau0_check, lambda: ""))
    if catalog_file:
        diffs: list[str] = []

        def cmp():
            data = json.loads(Path(catalog_file).read_text())
            diffs.extend(oc.compare_catalog(data))
            return not diffs
        out.append((f"catalog file {catalog_file}", cmp, lambda: "\n    ".join(diffs)))
    return out


def _tau0_check() -> bool:
    lag = oc.normalise_leading(oc.scale_beta(oc.EdgeCase(oc.LAGUERRE, 1, oc.SOFT_RIGHT)))
    gau = oc.normalise_leading(oc.scale_beta(oc.GOE_SOFT))
    return all(l.subs_param("T", 0) == g for l, g in zip(lag, gau))


def cmd_verify(args) -> tuple[int, dict, str]:
    scopes = ["identities", "relations", "catalog"] if args.scope == "all" else [args.scope]
    lines, results, ok = [], [], True
    for scope in scopes:
        if scope == "identities":
            items = [(n, f, lambda: "") for n, f in identity_checks()]
        elif scope == "relations":
            items = [(n, f, lambda: "") for n, f in relation_checks()]
        else:
            items = catalog_checks(args.catalog_file)
        for name, fn, detail in items:
            try:
                passed = bool(fn())
                info = "" if passed else detail()
            except Exception as exc:  # a crashing check is a failure, reported as such
                passed, info = False, f"{type(exc).__name__}: {exc}"
            ok &= passed
            results.append({"scope": scope, "check": name, "pass": passed, "detail": info})
            lines.append(f"{'PASS' if passed else 'FAIL'}  [{scope}] {name}" + (f"\n    {info}" if info else ""))
    lines.append(f"{sum(r['pass'] for r in results)}/{len(results)} checks passed")
    return (EXIT_OK if ok else EXIT_FAIL), {"scope": args.scope, "results": results}, "\n".join(lines)


# --- solvers and expansions -----------------------------------------------------------

def _parse_bounds(text: str | None):
    if not text:
        return None
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"bad --bounds {text!r}; expected comma-separated integers") from None


def cmd_solve(args) -> tuple[int, dict, str]:
    from .cascade import AnsatzSpec, default_ansatz, get_table, solve_next
    case, _ = oc.parse_case(args.case)
    if args.j < 1:
        raise UsageError("j must be at least 1")
    table = dict(get_table(case).rows)
    for k in range(1, args.j):
        if k not in table:
            table[k] = solve_next(case, table, k).particular
    spec = default_ansatz(case, args.j)
    bounds = _parse_bounds(args.bounds)
    if bounds:
        if len(bounds) != len(spec.bounds):
            raise UsageError(f"--bounds needs {len(spec.bounds)} entries")
        spec = AnsatzSpec(bounds, spec.min_degree, spec.residues, spec.step)
    res = solve_next(case, table, args.j, spec)
    data = {
        "case": case.label, "beta": case.beta, "j": args.j, "nullspace_dim": res.nullspace_dim,
        "particular": res.particular.to_json(), "nullspace": [e.to_json() for e in res.nullspace],
        "bounds": list(res.ansatz.bounds), "escalations": res.escalations,
    }
    stored = get_table(case).rows.get(args.j)
    if stored is not None:
        data["matches_stored"] = stored == res.particular
    text = [f"NULLSPACE DIMENSION: {res.nullspace_dim}", f"{case.label} r{args.j} particular solution:"]
    for name, p in zip(res.particular.family.names, res.particular.coeffs):
        text.append(f"  {name}: {p}")
    for n, e in enumerate(res.nullspace):
        text.append(f"  nullspace[{n}]: " + ", ".join(f"{nm}: {p}" for nm, p in zip(e.family.names, e.coeffs)
                                                     if not p.is_zero()))
    if "matches_stored" in data:
        text.append(f"matches stored r{args.j}: {data['matches_stored']}")
    return EXIT_OK, data, "\n".join(text)


def cmd_laplace(args) -> tuple[int, dict, str]:
    from .cascade import get_table
    from .transforms import laplace as lp
    from .transforms.saddle import constant_b, saddle_expand
    case, _ = oc.parse_case(args.case)
    if case.ensemble != oc.GAUSSIAN:
        raise UsageError("Laplace recursion is available for gue-soft, goe-soft, gse-soft")
    if not 0 <= args.j <= 4:
        raise UsageError("j must lie in 0..4")
    lines, out = [], {}
    if case.beta == 2:
        u = {0: lp.transform_element(get_table(case)[0])}
        b = None
        for j in range(1, args.j + 1):
            r = lp.recursion_step(2, u, j)
            out[f"u{j}_free_parameters"] = r.free_parameters
            if r.free_parameters:
                b = constant_b(saddle_expand(6))
                u[j] = r.particular + lp.u_gue(0).scale(-64 * b * 2)
                lines.append(f"u{j}: {r.free_parameters} free parameter(s); fixed by the saddle expansion, b = {b}")
            else:
                u[j] = r.particular
        if b is not None:
            out["b"] = _frac(b)
    else:
        nu = args.nu if args.nu is not None else (1 if case.beta == 1 else 0)
        u = {j: lp.transform_element(get_table(case)[j], nu) for j in range(min(args.j, 2) + 1)}
        for j in range(3, args.j + 1):
            r = lp.recursion_step(case.beta, u, j)
            out[f"u{j}_free_parameters"] = r.free_parameters
            u[j] = r.particular
        out["nu"] = nu
    for j, e in sorted(u.items()):
        lines.append(f"u{j} = {e}")
    out.update({"case": case.label, "j": args.j, "u": {str(j): e.to_json() for j, e in sorted(u.items())}})
    return EXIT_OK, out, "\n".join(lines)


def cmd_saddle(args) -> tuple[int, dict, str]:
    from .transforms.saddle import constant_b, saddle_expand
    if not 0 <= args.K <= 12:
        raise UsageError("K must lie in 0..12")
    terms = saddle_expand(args.K)
    data = {"K": args.K, "terms": {str(k): t.to_json() for k, t in enumerate(terms)}}
    lines = [f"eps^{k} (N^-{Fraction(k, 3)}): {t}" for k, t in enumerate(terms)]
    if args.K >= 6:
        b = constant_b(terms)
        data["b"] = _frac(b)
        lines.append(f"b = {b}")
    return EXIT_OK, data, "\n".join(lines)


def cmd_hyper(args) -> tuple[int, dict, str]:
    from .transforms.hypergeom import hypergeom_ops
    if args.shift not in (0, 1):
        raise UsageError("shift must be 0 or 1")
    if not 0 <= args.K <= 6:
        raise UsageError("K must lie in 0..6")
    table = hypergeom_ops(args.shift, args.K)
    return EXIT_OK, table.to_json(), table.text()


def _parse_nlist(text: str) -> list[int]:
    items = [t for t in text.replace(" ", "").split(",") if t]
    if not items:
        raise UsageError("empty N list")
    try:
        Ns = [int(t) for t in items]
    except ValueError:
        raise UsageError(f"bad N list {text!r}") from None
    if len(Ns) < 2 or min(Ns) < 1:
        raise UsageError("need at least two positive N values")
    return Ns


def _parse_grid(text: str) -> list[float]:
    text = text.replace("−", "-").replace(" ", "")
    if not text:
        raise UsageError("empty y grid")
    try:
        if ":" in text:
            lo, hi, step = (float(v) for v in text.split(":"))
            if step <= 0 or hi < lo:
                raise UsageError(f"bad y grid {text!r}")
            n = int(round((hi - lo) / step))
            return [round(lo + i * step, 12) for i in range(n + 1)]
        return [float(v) for v in text.split(",") if v]
    except ValueError:
        raise UsageError(f"bad y grid {text!r}") from None


def cmd_converge(args) -> tuple[int, dict, str]:
    from .numerics import PrecisionContext
    from .numerics.convergence import NUMERIC_CASES, convergence_study
    case, opts = oc.parse_case(args.case)
    if case not in NUMERIC_CASES:
        raise UsageError(f"{case.label} has no finite-N numerics")
    Ns = _parse_nlist(args.N)
    ys = _parse_grid(args.y)
    gamma = args.gamma if args.gamma is not None else opts.get("gamma")
    if case.edge in (oc.SOFT_RIGHT, oc.SOFT_LEFT) and gamma is None:
        raise UsageError("the right/left soft edge needs --gamma")
    a = args.a if args.a is not None else float(opts.get("a", 0))
    ctx = PrecisionContext(args.precision) if args.precision else None
    rep = convergence_study(case, args.j, Ns, ys, a=a, gamma=None if gamma is None else float(gamma), ctx=ctx)
    data = json.loads(rep.to_json())
    summary = (f"{case.label} j={args.j}: predicted order {rep.predicted}; fitted min {rep.fmt(rep.min_order)} "
               f"max {rep.fmt(rep.max_order)}, aggregate {rep.fmt(rep.aggregate)}")
    return EXIT_OK, data, summary, {"csv": rep.to_csv(), "plot": rep.plot_data()}


# --- driver ---------------------------------------------------------------------------------

def _manifest(command: str, args, started: float, outputs: dict[str, str]) -> dict:
    params = {k: v for k, v in vars(args).items() if k not in ("func", "out", "format")}
    return {
        "command": command,
        "case": params.get("case"),
        "parameters": {k: (str(v) if isinstance(v, Fraction) else v) for k, v in sorted(params.items())},
        "tool_version": __version__,
        "python": platform.python_version(),
        "input_hashes": _input_hashes(params),
        "output_hashes": {name: hashlib.sha256(text.encode()).hexdigest() for name, text in sorted(outputs.items())},
        "elapsed_seconds": round(time.perf_counter() - started, 3),
        "environment": {"EDGECASCADE_PRECISION": os.environ.get("EDGECASCADE_PRECISION")},
    }


def _input_hashes(params: dict) -> dict[str, str]:
    canon = json.dumps({k: str(v) for k, v in params.items()}, sort_keys=True)
    out = {"parameters": hashlib.sha256(canon.encode()).hexdigest()}
    if params.get("catalog_file"):
        out["catalog_file"] = hashlib.sha256(Path(params["catalog_file"]).read_bytes()).hexdigest()
    return out


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="edgecascade", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--out", help="directory for result, rendering and manifest files")
        sp.add_argument("--format", choices=("json", "csv", "text"), default="text")

    v = sub.add_parser("verify", help="exact identity, relation and catalog suites")
    v.add_argument("scope", choices=("identities", "relations", "catalog", "all"))
    v.add_argument("--catalog-file", help="JSON operator catalog to compare with the built-in one")
    common(v)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("solve", help="solve for r_j by ansatz")
    s.add_argument("case")
    s.add_argument("j", type=int)
    s.add_argument("--bounds", help="comma-separated degree bounds per basis element")
    common(s)
    s.set_defaults(func=cmd_solve)

    lp = sub.add_parser("laplace", help="Laplace-side recursion up to u_j")
    lp.add_argument("case")
    lp.add_argument("j", type=int)
    lp.add_argument("--nu", type=int, choices=(0, 1))
    common(lp)
    lp.set_defaults(func=cmd_laplace)

    sd = sub.add_parser("saddle", help="saddle-point expansion through eps^K, eps = N^(-1/3)")
    sd.add_argument("K", type=int)
    common(sd)
    sd.set_defaults(func=cmd_saddle)

    h = sub.add_parser("hyper", help="operator table for 1F1(-N + shift; a + 1; x/N)")
    h.add_argument("shift", type=int)
    h.add_argument("K", type=int)
    common(h)
    h.set_defaults(func=cmd_hyper)

    c = sub.add_parser("converge", help="finite-N convergence study")
    c.add_argument("case")
    c.add_argument("j", type=int)
    c.add_argument("N", help="comma-separated N values")
    c.add_argument("y", help="y grid lo:hi:step or comma-separated values")
    c.add_argument("--a", type=float)
    c.add_argument("--gamma", type=Fraction)
    c.add_argument("--nu", type=int, choices=(0, 1))
    c.add_argument("--precision", type=int, help="working decimal digits")
    common(c)
    c.set_defaults(func=cmd_converge)

    cat = sub.add_parser("catalog", help="dump the operator catalog")
    common(cat)
    cat.set_defaults(func=lambda a: (EXIT_OK, oc.dump_catalog(), oc.dump_catalog_text()))
    return p


def main(argv: list[str] | None = None) -> int:
    from .cascade import CascadeError
    from .numerics import PrecisionShortfall
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        result = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"edgecascade: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except oc.CatalogError as exc:
        print(f"edgecascade: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrecisionShortfall as exc:
        print(f"edgecascade: precision failure: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except CascadeError as exc:
        print(f"edgecascade: {exc}", file=sys.stderr)
        return EXIT_FAIL
    code, data, text = result[:3]
    extra = result[3] if len(result) > 3 else {}
    payload = _dumps(data)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        files = {f"{args.command}.json": payload, f"{args.command}.txt": text + "\n"}
        if "csv" in extra:
            files[f"{args.command}.csv"] = extra["csv"]
        if "plot" in extra:
            files[f"{args.command}.plot.dat"] = extra["plot"]
        for name, content in files.items():
            (out / name).write_text(content)
        (out / "manifest.json").write_text(_dumps(_manifest(args.command, args, started, files)))
    if args.format == "json":
        sys.stdout.write(payload)
    elif args.format == "csv" and "csv" in extra:
        sys.stdout.write(extra["csv"])
        print(text)
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
