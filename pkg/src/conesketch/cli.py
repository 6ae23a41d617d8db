"""Command line interface.

Exit codes: 0 on success, 1 on usage errors (bad flags, malformed
files), 2 when a solver or estimator fails to converge or reports an
impossible request.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import bench as bench_mod
from . import bounds as bounds_mod
from . import instance_io, mc
from .cone import a_norm, dist_to_convhull, mu_a_lower_bound, project_onto_cone, scp_solve
from .errors import (
    CalibrationError,
    ConvergenceError,
    GenerationError,
    MembershipError,
    UsageError,
)
from .gen import DISTS, TARGETS, GenSpec, LabeledInstance, generate
from .instance import DOMAINS, IP, FeasInstance
from .linalg import normalize_columns, two_norm
from .projector import FAMILIES, apply_to_instance, sample_projector
from .solver import SolverOptions, solve_ip_feasibility, solve_lp_feasibility


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _print_fields(**fields) -> None:
    for key, val in fields.items():
        if val is None:
            continue
        if isinstance(val, np.ndarray):
            val = json.dumps([float(v) for v in val])
        elif isinstance(val, (list, dict)):
            val = json.dumps(val)
        print(f"{key}: {val}")


def _csv_floats(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise UsageError(f"expected a comma-separated number list, got {text!r}") from exc


def _csv_ints(text: str) -> list[int]:
    vals = _csv_floats(text)
    out = [int(v) for v in vals]
    if any(i != v for i, v in zip(out, vals)):
        raise UsageError(f"expected integers, got {text!r}")
    return out


def _cmd_gen(args) -> int:
    spec = GenSpec(
        dist=args.dist, m=args.m, n=args.n, target=args.target,
        domain=args.mode, normalize=args.normalize, seed=args.seed,
    )
    labeled = generate(spec)
    instance_io.write_instance(args.out, labeled)
    _print_fields(path=args.out, label=labeled.label, m=spec.m, n=spec.n,
                  domain=spec.domain)
    return 0


def _cmd_solve(args) -> int:
    labeled = instance_io.read_instance(args.infile)
    inst = labeled.instance
    if args.tol <= 0.0:
        raise UsageError(f"--tol must be positive, got {args.tol}")
    opts = SolverOptions(tau_feas=args.tol)
    solve = solve_ip_feasibility if inst.domain == IP else solve_lp_feasibility
    verdict = solve(inst, opts)
    _print_fields(
        status=verdict.status,
        iterations=verdict.iterations,
        nodes=verdict.nodes,
        witness=verdict.witness,
        certificate=verdict.certificate,
    )
    return 0


def _cmd_project(args) -> int:
    labeled = instance_io.read_instance(args.infile)
    proj = sample_projector(args.family, args.k, labeled.instance.m, args.seed)
    sketched = apply_to_instance(proj, labeled.instance)
    provenance = dict(labeled.provenance or {})
    provenance["sketch"] = {"family": args.family, "k": args.k, "seed": args.seed}
    out = LabeledInstance(
        instance=sketched,
        label=labeled.label,
        witness=labeled.witness,  # still valid for feasible instances
        certificate=None,  # stale after sketching
        provenance=provenance,
    )
    instance_io.write_instance(args.out, out)
    _print_fields(path=args.out, k=args.k, family=args.family, m=sketched.m,
                  n=sketched.n)
    return 0


def _unit_geometry(labeled: LabeledInstance):
    a = labeled.instance.a
    b = labeled.instance.b
    col_norms = np.linalg.norm(a, axis=0)
    nb = two_norm(b)
    if nb == 0.0:
        raise UsageError("target vector is zero; no direction to separate")
    if np.abs(col_norms - 1.0).max() > 1e-9 or abs(nb - 1.0) > 1e-9:
        a, _ = normalize_columns(a)
        b = b / nb
        print("note: rescaled generators and target to unit norm")
    return a, b


def _cmd_geometry(args) -> int:
    labeled = instance_io.read_instance(args.infile)
    if args.what == "scp":
        a, b = _unit_geometry(labeled)
        cert = scp_solve(a, b)
        _print_fields(margin=cert.margin, normal=cert.normal)
    elif args.what == "project-cone":
        rep = project_onto_cone(labeled.instance.a, labeled.instance.b)
        _print_fields(dist=rep.dist, dmax=rep.dmax, point=rep.point,
                      coeffs=rep.coeffs)
    elif args.what == "hull-dist":
        rep = dist_to_convhull(labeled.instance.a, labeled.instance.b)
        _print_fields(dist=rep.dist, dmax=rep.dmax, point=rep.point,
                      coeffs=rep.coeffs)
    elif args.what == "anorm":
        x = labeled.instance.b if args.x is None else np.asarray(_csv_floats(args.x))
        rep = a_norm(labeled.instance.a, x)
        _print_fields(value=rep.value, coeffs=rep.coeffs)
    else:  # mua
        a, _ = normalize_columns(labeled.instance.a)
        val = mu_a_lower_bound(a, args.samples, args.seed)
        _print_fields(value=val, samples=args.samples)
    return 0


def _cmd_bounds(args) -> int:
    kind = args.kind
    if kind == "pair":
        rep = bounds_mod.pair_distortion_bound(args.points, args.eps, args.k, args.c_const)
    elif kind == "rlm":
        rep = bounds_mod.rlm_finite_bound(args.card_x, args.k, args.c_const)
    elif kind == "pointed":
        rep = bounds_mod.pointed_cone_bound(args.n, args.eps, args.k, args.c_const)
    elif kind == "hull":
        rep = bounds_mod.convhull_bound(args.n, args.eps, args.k, args.c_const)
    else:  # cone
        rep = bounds_mod.cone_geometry_bound(args.n, args.eps, args.k, args.c_const)
    _print_fields(kind=rep.kind, lower_bound=rep.lower_bound, vacuous=rep.vacuous,
                  inputs=rep.inputs)
    return 0


def _cmd_verify(args) -> int:
    if args.what == "distortion":
        est = mc.estimate_distortion(args.family, args.k, args.m, args.eps,
                                     args.trials, args.seed)
    elif args.what == "kernel":
        est = mc.estimate_kernel_avoidance(args.family, args.k, args.m,
                                           args.trials, args.seed)
    elif args.what == "preservation":
        labeled = instance_io.read_instance(args.infile)
        est = mc.estimate_infeasibility_preservation(
            labeled, args.family, args.k, args.projectors, args.seed
        )
    else:  # calibrate
        chat = mc.calibrate_c(args.family, _csv_floats(args.eps_grid),
                              _csv_ints(args.k_grid), args.trials, args.seed)
        _print_fields(c_const=chat, trials=args.trials)
        return 0
    _print_fields(successes=est.successes, trials=est.trials, rate=est.rate,
                  wilson_low=est.wilson_low)
    return 0


def _cmd_bench(args) -> int:
    with open(args.config, encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise UsageError(f"config is not valid JSON: {exc}") from exc
    if isinstance(raw, dict):
        raw = [raw]
    if not isinstance(raw, list) or not raw:
        raise UsageError("config must be an object or a nonempty list of objects")
    try:
        configs = [bench_mod.ExperimentConfig(**entry) for entry in raw]
    except TypeError as exc:
        raise UsageError(f"bad config field: {exc}") from exc
    reports = [bench_mod.run_experiment(cfg) for cfg in configs]
    text = bench_mod.emit_report(reports, args.format)
    if args.out is None:
        sys.stdout.write(text)
        return 0
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(text)
    written = [args.out]
    if not args.no_figures:
        from .figures import figure_stem, render_report_figures

        written += render_report_figures(reports, figure_stem(args.out))
    _print_fields(written=written)
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="conesketch",
                     description="sketched feasibility for nonnegative linear systems")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[], help="generate a labeled instance")
    p.add_argument("--dist", choices=DISTS, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=DOMAINS, default="lp")
    p.add_argument("--target", choices=TARGETS, default="infeasible")
    p.add_argument("--normalize", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("solve", help="decide feasibility of an instance file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--tol", type=float, default=1e-7,
                   help="residual tolerance for feasibility verdicts")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("project", help="sketch an instance to k rows")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--family", choices=FAMILIES, default="gaussian")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_project)

    p = sub.add_parser("geometry", help="cone and hull geometry reports")
    p.add_argument("what", choices=["scp", "project-cone", "hull-dist", "anorm", "mua"])
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--x", default=None, help="comma list; defaults to b (anorm)")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_geometry)

    p = sub.add_parser("bounds", help="evaluate a success probability bound")
    p.add_argument("--kind", choices=["pair", "rlm", "pointed", "hull", "cone"],
                   required=True)
    p.add_argument("--points", type=int, default=2)
    p.add_argument("--card-x", dest="card_x", type=int, default=1)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--eps", type=float, default=0.2)
    p.add_argument("--k", type=float, required=True)
    p.add_argument("--c-const", "--C", dest="c_const", type=float, default=0.25)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("verify", help="Monte Carlo verification")
    p.add_argument("what", choices=["distortion", "kernel", "preservation", "calibrate"])
    p.add_argument("--family", choices=FAMILIES, default="gaussian")
    p.add_argument("--k", type=int, default=50)
    p.add_argument("--m", type=int, default=100)
    p.add_argument("--eps", type=float, default=0.2)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--in", dest="infile", default=None)
    p.add_argument("--projectors", type=int, default=100)
    p.add_argument("--eps-grid", dest="eps_grid", default="0.1,0.2,0.5")
    p.add_argument("--k-grid", dest="k_grid", default="50,200,800")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("bench", help="original-vs-sketched benchmark")
    p.add_argument("--config", required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=["csv", "markdown"], default="csv")
    p.add_argument("--no-figures", action="store_true")
    p.set_defaults(func=_cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "verify" and args.what == "preservation" and not args.infile:
            raise UsageError("verify preservation needs --in INSTANCE_FILE")
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ConvergenceError, GenerationError, CalibrationError, MembershipError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
