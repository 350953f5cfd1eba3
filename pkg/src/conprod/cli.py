"""Command-line front end: `conprod <eval|verify|operator|limit|bounds> ...`.

Exit codes: 0 everything passed, 1 some check failed, 2 indeterminate or a
numerical failure, 3 bad usage.
"""
from __future__ import annotations

import argparse
import itertools
import json
import math
import os
import sys

import numpy as np
from scipy.special import loggamma

from . import __version__
from . import conical, hypergamma, limits, operators, relativistic
from .errors import ConprodError, DomainViolation, StripViolation
from .identities import CATALOGUE, RELATIVISTIC_SUITE, run_identity
from .nonrel_identities import NONREL_CATALOGUE, NONREL_SUITE, run_nonrel_identity
from .params import HyperbolicParams
from .reports import FAIL, INDETERMINATE, PASS, SCHEMA_VERSION, encode, rows_to_csv, write_atomic

EXIT_OK, EXIT_FAIL, EXIT_INDETERMINATE, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------- argument parsing


def _floats(text: str) -> list:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _complexes(text: str) -> list:
    try:
        return [complex(v.replace(" ", "").replace("i", "j")) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated complex numbers, got {text!r}") from exc


def _ladder(text: str) -> list:
    """'48,64,96' (lengths taken from the default ladder) or '48:10,64:12'."""
    default_n = [n for n, _ in operators.LADDER]
    default_L = [L for _, L in operators.LADDER]
    out = []
    for item in text.split(","):
        item = item.strip()
        try:
            if ":" in item:
                n, L = item.split(":")
                out.append((int(n), float(L)))
            else:
                n = int(item)
                out.append((n, float(np.interp(n, default_n, default_L))))
        except ValueError as exc:
            raise argparse.ArgumentTypeError(f"bad ladder entry {item!r}") from exc
    return out


def _common(p: argparse.ArgumentParser):
    p.add_argument("--a-plus", type=float)
    p.add_argument("--a-minus", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--g", type=float)
    p.add_argument("--tol", type=float)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", default=None, help="output file (eval/limit/bounds/operator) or directory (verify)")
    p.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="conprod", description="Evaluate and verify hyperbolic-gamma based special functions.")
    parser.add_argument("--version", action="version", version=f"conprod {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    pe = sub.add_parser("eval", help="evaluate a function on a grid of points")
    _common(pe)
    pe.add_argument("function", help="function tag, one of: " + ", ".join(EVAL_TAGS))
    for name in ("x", "y", "z", "v"):
        pe.add_argument(f"--{name}", type=_complexes)
    for name in ("r", "k"):
        pe.add_argument(f"--{name}", type=_floats)

    pv = sub.add_parser("verify", help="run identity checks")
    _common(pv)
    pv.add_argument("--suite", choices=("relativistic", "nonrel", "all"))
    pv.add_argument("--identity", action="append", default=[])
    pv.add_argument("--points", type=int)

    po = sub.add_parser("operator", help="refinement study of a discretized operator family")
    _common(po)
    po.add_argument("--kind", required=True, choices=tuple(operators.STUDIES) + ("unitarity",))
    for name in ("z", "t", "q"):
        po.add_argument(f"--{name}", type=float)
    po.add_argument("--partner", type=float, help="spectral parameter of the commuting partner")
    po.add_argument("--ladder", type=_ladder)

    pl = sub.add_parser("limit", help="nonrelativistic limit sweep")
    _common(pl)
    pl.add_argument("--target", required=True, choices=tuple(limits.LIMIT_TARGETS))
    pl.add_argument("--betas", type=_floats)
    for name in ("r", "k", "u", "d"):
        pl.add_argument(f"--{name}", type=float)
    pl.add_argument("--z", type=_complexes)
    pl.add_argument("--all-points", action="store_true", help="sweep the catalogued fixed points")

    pb = sub.add_parser("bounds", help="sampled audit of a uniform bound")
    _common(pb)
    pb.add_argument("--id", dest="bound_id", action="append", default=[], choices=tuple(limits.BOUND_AUDITS))
    pb.add_argument("--samples", type=int)
    return parser


# ---------------------------------------------------------------- output


def _report(tag, anchor, params, seed, rows, max_rel_err, tol, verdict) -> dict:
    return {"schema_version": SCHEMA_VERSION, "identity": tag, "anchor": anchor, "params": params, "seed": seed,
            "rows": rows, "max_rel_err": max_rel_err, "tol": tol, "verdict": verdict, "tool_version": __version__}


def _render(report: dict, fmt: str) -> str:
    if fmt == "csv":
        return rows_to_csv(report["identity"], report["params"], report["rows"])
    return json.dumps(encode(report), indent=2) + "\n"


def _emit(report: dict, args):
    text = _render(report, args.format)
    if args.out:
        write_atomic(args.out, text)
    else:
        sys.stdout.write(text)


def _exit_for(verdicts) -> int:
    verdicts = list(verdicts)
    if FAIL in verdicts:
        return EXIT_FAIL
    if INDETERMINATE in verdicts:
        return EXIT_INDETERMINATE
    return EXIT_OK


def _params(args) -> HyperbolicParams:
    try:
        return HyperbolicParams(1.0 if args.a_plus is None else args.a_plus,
                                1.0 if args.a_minus is None else args.a_minus)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _need(args, *names):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise UsageError("missing " + ", ".join("--" + n.replace("_", "-") for n in missing))


# ---------------------------------------------------------------- eval


def _free_j(p: HyperbolicParams, b, x, y):
    """Elementary J at the free couplings b = a+ and b = a-, else None."""
    if math.isclose(b, p.a_plus):
        lo, hi = p.a_minus, p.a_plus
    elif math.isclose(b, p.a_minus):
        lo, hi = p.a_plus, p.a_minus
    else:
        return None
    return lo / 2 * np.sin(p.alpha * x * y / 2) / (np.sinh(math.pi * x / lo) * np.sinh(math.pi * y / hi))


def _gamma_quotient(g, k):
    """F(g; 0, 2k) = Gamma(g + ik) Gamma(g - ik) / (2 Gamma(2g))."""
    return 0.5 * math.exp(2 * loggamma(g + 1j * k).real - loggamma(2 * g).real)


def _value(res):
    if isinstance(res, tuple):
        return complex(np.asarray(res[0]).ravel()[0]), float(np.asarray(res[1]).ravel()[0])
    if hasattr(res, "value"):
        return complex(res.value), float(res.error_estimate)
    return complex(res), math.nan


def _eval_G(p, a, pt):
    return hypergamma.gamma_h(p, pt["z"]), ({"z": 0} if pt["z"] == 0 else None)


def _real(v, name):
    if abs(complex(v).imag) > 0:
        raise UsageError(f"--{name} must be real for this function")
    return complex(v).real


def _eval_xy(fn):
    def run(p, a, pt):
        return fn(p, a.b, _real(pt["x"], "x"), _real(pt["y"], "y")), None
    return run


def _eval_J(p, a, pt):
    x, y = _real(pt["x"], "x"), _real(pt["y"], "y")
    return relativistic.j_fn(p, a.b, x, y), None


def _eval_coupling(fn):
    def run(p, a, pt):
        return fn(p, a.b, pt["z"]), None
    return run


def _eval_fcon(p, a, pt):
    return conical.conical_f_hyp(a.g, pt["r"], pt["k"]), None


def _eval_f0(p, a, pt):
    return conical.f0_kernel(a.g, pt["r"], pt["k"]), None


def _eval_K(p, a, pt):
    return relativistic.kernel_K(p, a.b, pt["x"], pt["y"], pt["z"]), None


EVAL_TAGS = {
    # tag: (runner, axes)
    "G": (_eval_G, ("z",)),
    "J": (_eval_J, ("x", "y")),
    "R": (_eval_xy(relativistic.r_fn), ("x", "y")),
    "E": (_eval_xy(relativistic.e_fn), ("x", "y")),
    "F": (_eval_xy(relativistic.f_kernel), ("x", "y")),
    "Fcon": (_eval_fcon, ("r", "k")),
    "F0": (_eval_f0, ("r", "k")),
    "K": (_eval_K, ("x", "y", "z")),
    "S2": (None, ("x", "y")),
    "w": (_eval_coupling(hypergamma.w_fn), ("z",)),
    "c": (_eval_coupling(hypergamma.c_fn), ("z",)),
    "u": (_eval_coupling(hypergamma.u_fn), ("z",)),
    "mu": (None, ("y",)),
    "mu0": (None, ("k",)),
}
_TAG_ALIASES = {"𝐅": "F", "Fbold": "F", "𝐅₀": "F0", "𝒦": "K", "𝒮₂": "S2", "μ": "mu", "μ₀": "mu0"}
_NEEDS = {"J": "b", "R": "b", "E": "b", "F": "b", "K": "b", "S2": "b", "w": "b", "c": "b", "u": "b",
          "mu": "b", "Fcon": "g", "F0": "g", "mu0": "g"}


def _pair(values, name):
    if values is None or len(values) != 2:
        raise UsageError(f"--{name} takes exactly two comma-separated values for this function")
    return values


def cmd_eval(args) -> int:
    tag = _TAG_ALIASES.get(args.function, args.function)
    if tag not in EVAL_TAGS:
        raise UsageError(f"unknown function {args.function!r}; choose from {', '.join(EVAL_TAGS)}")
    p = _params(args)
    if tag in _NEEDS:
        _need(args, _NEEDS[tag])
    runner, axes = EVAL_TAGS[tag]
    tol = args.tol if args.tol is not None else 1e-8
    rows = []
    if tag in ("S2", "mu", "mu0"):
        if tag == "S2":
            x = [_real(v, "x") for v in _pair(args.x, "x")]
            y = [_real(v, "y") for v in _pair(args.y, "y")]
            pts = [({"x": x, "y": y}, relativistic.s2_kernel(p, args.b, x, y))]
        elif tag == "mu":
            y = [_real(v, "y") for v in _pair(args.y, "y")]
            pts = [({"y": y}, relativistic.mu_fn(p, args.b, y))]
        else:
            k = _pair(args.k, "k")
            pts = [({"k": k}, conical.mu0_fn(args.g, k[0], k[1]))]
        evaluated = [(pt, _value(v), None) for pt, v in pts]
    else:
        _need(args, *axes)
        grids = [getattr(args, ax) for ax in axes]
        evaluated = []
        for combo in itertools.product(*grids):
            pt = dict(zip(axes, combo))
            res, _ = runner(p, args, pt)
            evaluated.append((pt, _value(res), _reference(tag, p, args, pt)))
    errs = []
    for pt, (val, est), ref in evaluated:
        row = {"point": pt, "value": val, "error_estimate": est}
        if ref is not None:
            row["reference"] = ref[1]
            row["reference_kind"] = ref[0]
            scale = max(abs(val), abs(ref[1]))
            row["rel_err"] = abs(val - ref[1]) / scale if scale else 0.0
            errs.append(row["rel_err"])
        rows.append(row)
    max_err = max(errs) if errs else math.nan
    verdict = FAIL if any(not e <= tol for e in errs) else PASS
    params = {**p.as_dict(), "b": args.b, "g": args.g}
    _emit(_report(f"eval:{tag}", f"function {tag}", params, None, rows, max_err, tol, verdict), args)
    return _exit_for([verdict])


def _reference(tag, p, args, pt):
    """Closed-form column where one exists: G(0) = 1, free-case J, Gamma quotient at r = 0."""
    if tag == "G" and pt["z"] == 0:
        return ("G(0)", 1.0 + 0j)
    if tag == "J":
        ref = _free_j(p, args.b, _real(pt["x"], "x"), _real(pt["y"], "y"))
        if ref is not None:
            return ("free case", complex(ref))
    if tag == "Fcon" and pt["r"] == 0:
        return ("Gamma quotient", complex(_gamma_quotient(args.g, pt["k"])))
    return None


# ---------------------------------------------------------------- verify


def _selected_identities(args) -> list:
    chosen = []
    if args.suite in ("relativistic", "all"):
        chosen += [("rel", n) for n in RELATIVISTIC_SUITE]
    if args.suite in ("nonrel", "all"):
        chosen += [("nonrel", n) for n in NONREL_SUITE]
    for name in args.identity:
        if name in CATALOGUE:
            chosen.append(("rel", name))
        elif name in NONREL_CATALOGUE:
            chosen.append(("nonrel", name))
        else:
            raise UsageError(f"unknown identity {name!r}")
    if not chosen:
        raise UsageError("select identities with --suite or --identity")
    seen, out = set(), []
    for item in chosen:
        if item not in seen:
            seen.add(item)
            out.append(item)
    return out


def cmd_verify(args) -> int:
    chosen = _selected_identities(args)
    p = _params(args)
    if args.points is not None and args.points < 1:
        raise UsageError("--points must be positive")
    out_dir = args.out or "conprod-reports"
    summary = []
    for family, name in chosen:
        try:
            if family == "rel":
                report = run_identity(name, p, seed=args.seed, n_points=args.points)
            else:
                report = run_nonrel_identity(name, p, seed=args.seed, n_points=args.points)
        except DomainViolation as exc:
            raise UsageError(f"{name}: {exc}") from exc
        if args.tol is not None:
            report.tol = args.tol
        text = report.to_csv() if args.format == "csv" else report.to_json() + "\n"
        write_atomic(os.path.join(out_dir, f"{name}.{args.format}"), text)
        summary.append({"identity": name, "verdict": report.verdict, "max_rel_err": report.max_rel_err,
                        "tol": report.tol, "rows": len(report.rows)})
        print(f"{name:12s} {report.verdict:13s} max_rel_err={report.max_rel_err:.3e} tol={report.tol:.0e}")
    # written last, so a present summary means every per-identity file is complete
    write_atomic(os.path.join(out_dir, "summary.json"),
                 json.dumps(encode({"schema_version": SCHEMA_VERSION, "seed": args.seed, "params": p.as_dict(),
                                    "results": summary, "tool_version": __version__}), indent=2) + "\n")
    return _exit_for(r["verdict"] for r in summary)


# ---------------------------------------------------------------- operator


def cmd_operator(args) -> int:
    if args.kind == "unitarity":
        ladder = args.ladder or list(operators.LADDER)
        rows = operators.unitarity_comparison(ladder, operators.STUDY_PARAMS)
        ratio = [max(r["defect"], r["sine_defect"]) / max(min(r["defect"], r["sine_defect"]), 1e-300) for r in rows]
        verdict = PASS if all(q <= 2 for q in ratio) else FAIL
        for r, q in zip(rows, ratio):
            r["defect_ratio"] = q
        _emit(_report("operator:unitarity", "unitarity defect against the discretized sine transform",
                      operators.STUDY_PARAMS.as_dict(), None, rows, max(ratio), 2.0, verdict), args)
        return _exit_for([verdict])
    name = args.kind
    spectral = {"Iz": "z", "I2": "z", "Jt": "t", "Jq_hat": "q"}[name]
    s1 = getattr(args, spectral)
    params = operators.STUDY_PARAMS
    if args.a_plus is not None or args.a_minus is not None:
        params = _params(args)
    ladder = args.ladder or list(operators.LADDER)
    if len(ladder) < 2:
        raise UsageError("--ladder needs at least two levels")
    try:
        levels = operators.refinement_study(name, ladder, params, b=args.b, g=args.g, s1=s1, s2=args.partner)
    except (DomainViolation, StripViolation) as exc:
        raise UsageError(str(exc)) from exc
    rows = [{"n": lv.n, "L": lv.L, "commutators": lv.commutators, "residual": lv.residual}
            for lv in levels]
    comm_ok = all(operators.strictly_decreasing(c) for c in zip(*(lv.commutators for lv in levels)))
    res_ok = operators.strictly_decreasing(lv.residual for lv in levels)
    ok = comm_ok and res_ok
    base = operators.load_baseline()
    defaults = (args.b is None and args.g is None and s1 is None and args.partner is None
                and params == operators.STUDY_PARAMS and [tuple(map(float, l)) for l in ladder]
                == [tuple(map(float, l)) for l in base["ladder"]])
    baseline_value = None
    if defaults and name in base["studies"]:
        baseline_value = base["studies"][name]["finest"]["residual"] * base["slack"]
        ok = ok and levels[-1].residual <= baseline_value
    verdict = PASS if ok else FAIL
    record = {**params.as_dict(), "study": name, "b": args.b, "g": args.g, spectral: s1, "partner": args.partner,
              "baseline_residual": baseline_value}
    _emit(_report(f"operator:{name}", "commuting family refinement study", record, None, rows,
                  levels[-1].residual, baseline_value if baseline_value is not None else math.nan, verdict),
          args)
    return _exit_for([verdict])


# ---------------------------------------------------------------- limit


def _limit_point(args) -> dict | None:
    t = args.target
    z = args.z[0] if args.z else None
    if t == "JF":
        if args.g is None and args.r is None and args.k is None:
            return None
        _need(args, "g", "r", "k")
        return {"g": args.g, "r": args.r, "k": args.k}
    if t == "wlim":
        if args.g is None and z is None:
            return None
        _need(args, "g", "z")
        return {"g": args.g, "z": z.real}
    if t == "GGlim":
        if z is None and args.u is None and args.d is None:
            return None
        _need(args, "z", "u", "d")
        return {"z_re": z.real, "z_im": z.imag, "u": args.u, "d": args.d}
    if z is None:
        return None
    return {"z_re": z.real, "z_im": z.imag}


def cmd_limit(args) -> int:
    point = None if args.all_points else _limit_point(args)
    points = [point] if point is not None else limits.SWEEP_POINTS[args.target]
    betas = tuple(args.betas) if args.betas else limits.DEFAULT_BETAS
    rows, verdicts = [], []
    for pt in points:
        try:
            spec = limits.SweepSpec(args.target, pt, betas)
            sweep = limits.limit_sweep(spec)
        except (DomainViolation, StripViolation) as exc:
            raise UsageError(str(exc)) from exc
        mono = limits.sweep_monotone(sweep)
        verdicts.append(PASS if mono else FAIL)
        for r in sweep:
            rows.append({"point": pt, "beta": r["beta"], "error": r["error"], "monotone": mono})
    verdict = FAIL if FAIL in verdicts else PASS
    _emit(_report(f"limit:{args.target}", limits.LIMIT_TARGETS[args.target], {"betas": list(betas)}, None, rows,
                  max(r["error"] for r in rows), math.nan, verdict), args)
    return _exit_for([verdict])


# ---------------------------------------------------------------- bounds


def cmd_bounds(args) -> int:
    ids = args.bound_id or list(limits.BOUND_AUDITS)
    rows, verdicts = [], []
    for bid in ids:
        rep = limits.audit_bound(bid, args.samples, seed=args.seed)
        row = rep.as_dict()
        if bid == "Jbk":
            slopes = limits.jbk_slope()
            row["details"]["slopes"] = {str(k): v for k, v in slopes.items()}
            if any(s > -(math.pi - 0.1) for s in slopes.values()):
                row["verdict"] = FAIL
        rows.append(row)
        verdicts.append(row["verdict"])
    verdict = _exit_for(verdicts)
    label = FAIL if verdict == EXIT_FAIL else PASS
    _emit(_report("bounds", "sampled bound audits, corroborated at sample scale", {"ids": ids}, args.seed, rows,
                  math.nan, 0.10, label), args)
    return verdict


COMMANDS = {"eval": cmd_eval, "verify": cmd_verify, "operator": cmd_operator, "limit": cmd_limit,
            "bounds": cmd_bounds}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"conprod: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainViolation as exc:
        print(f"conprod: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConprodError as exc:
        print(f"conprod: numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INDETERMINATE


if __name__ == "__main__":
    sys.exit(main())
