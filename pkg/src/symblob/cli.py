"""Command-line interface: ``symblob {verify,lemmas,solve,matrices}``.

Exit codes: 0 when every check passes (or a solve is accepted), 1 on a
verification failure or when no Σ is found, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import relations, serialize
from .laurent import ZeroCoordinate
from .roperators import THETA_COORDS, generators, theta_target
from .specialize import (
    NoSolutionFound,
    Pi,
    SolverConfig,
    forward_pi,
    numeric_generator_matrices,
    numeric_verify,
    solve_sigma,
)
from .tensor import OutOfRange, check_n, max_n

# human-readable condition attached to each θ-coordinate in reports
CONDITIONS = {
    "D": "D = [2]_a [2]_b [2]_c [2]_d",
    "D_L": "D_L = [2]_x [2]_y",
    "D_R": "D_R = [2]_z [2]_w",
    "K_L": "K_L = [2]_{ab/x} [2]_{cd/y}",
    "K_R": "K_R = [2]_{ad/w} [2]_{bc/z}",
    "K": "K = r + 2 + 1/r, r = xy/zw (n odd) or abcd/xyzw (n even)",
}
RESIDUAL_LABELS = {
    "c1": "delta = [2]_a [2]_b [2]_c [2]_d",
    "c2": "delta_L = [2]_x [2]_y",
    "c3": "delta_R = [2]_z [2]_w",
    "c4": "kappa_L = [2]_{ab/x} [2]_{cd/y}",
    "c5": "kappa_R = [2]_{ad/w} [2]_{bc/z}",
    "c6a": "kappa = xy/zw + 2 + zw/xy",
    "c6b": "kappa = abcd/xyzw + 2 + xyzw/abcd",
}


class UsageError(Exception):
    pass


def _n(text: str) -> int:
    try:
        n = int(text)
        return check_n(n)
    except (ValueError, TypeError, OutOfRange) as exc:
        raise argparse.ArgumentTypeError(f"invalid n {text!r} (allowed 1..{max_n()}): {exc}")


def _complex(text: str) -> complex:
    """``re`` or ``re,im``."""
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"expected 're' or 're,im', got {text!r}")


def _theta(text: str) -> str:
    if text == "default":
        return text
    if text.startswith("perturb:") and text.split(":", 1)[1] in THETA_COORDS:
        return text
    raise argparse.ArgumentTypeError(
        f"--theta must be 'default' or 'perturb:<{'|'.join(THETA_COORDS)}>', got {text!r}")


def _emit(obj, as_json: bool, lines: list[str], out) -> None:
    if as_json:
        out.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")
    else:
        out.write("\n".join(lines) + "\n")


# -- verify ------------------------------------------------------------------------

def cmd_verify(args, out) -> int:
    n = args.n
    theta = theta_target(n)
    label = "default"
    if args.theta != "default":
        coord = args.theta.split(":", 1)[1]
        theta = theta.perturbed(coord)
        label = args.theta
    rep = relations.verify_all(n, theta)
    payload = rep.to_dict()
    payload["theta"] = label
    for row in payload["relations"]:
        row["condition"] = CONDITIONS.get(row["scalar"]) if row["scalar"] else None
        if not args.timings:
            row.pop("seconds", None)
    if not args.timings:
        payload.pop("seconds", None)
    lines = [f"n={n} theta={label}"]
    for row in payload["relations"]:
        status = "PASS" if row["passed"] else "FAIL"
        cond = f"  [{row['condition']}]" if row["condition"] else ""
        lines.append(f"  {status}  {row['id']:<20} {row['relation']}{cond}")
        if not row["passed"]:
            lines.append(f"        witness word {row['witness']}")
    lines.append(f"{payload['n_passed']}/{payload['n_relations']} relations pass")
    _emit(payload, args.json, lines, out)
    return 0 if rep.passed else 1


# -- lemmas ------------------------------------------------------------------------

def cmd_lemmas(args, out) -> int:
    rep = relations.lemma_suite(args.n, trials=args.trials, seed=args.seed)
    lines = [f"n={rep['n']} trials={rep['trials']} seed={rep['seed']}"]
    for name, c in rep["checks"].items():
        status = "PASS" if c["passed"] == c["run"] else "FAIL"
        lines.append(f"  {status}  {name:<16} {c['passed']}/{c['run']}")
    for f in rep["failures"]:
        lines.append(f"  failure: {json.dumps(f, sort_keys=True)}")
    _emit(rep, args.json, lines, out)
    return 0 if rep["passed"] else 1


# -- solve -------------------------------------------------------------------------

def cmd_solve(args, out) -> int:
    pi = Pi(args.delta, args.delta_l, args.delta_r, args.kappa_l, args.kappa_r, args.kappa)
    cfg = SolverConfig(x0=args.x0, retries=args.retries, seed=args.seed)
    try:
        sol = solve_sigma(pi, cfg)
        accepted = True
    except NoSolutionFound as exc:
        if exc.best is None:
            payload = {"accepted": False, "error": str(exc),
                       "pi": serialize.pi_to_json(pi)}
            _emit(payload, args.json, [f"no solution: {exc}"], out)
            return 1
        sol, accepted = exc.best, False
    payload = serialize.solution_to_json(sol, accepted)
    payload["residual_labels"] = RESIDUAL_LABELS
    lines = ["accepted" if accepted else "REJECTED (residual above tolerance)"]
    for k, v in serialize.sigma_to_json(sol.sigma).items():
        lines.append(f"  {k} = {complex(*v)}")
    for k, v in sol.residuals.to_dict().items():
        lines.append(f"  residual {k:<4} {v:.3e}  {RESIDUAL_LABELS.get(k, '')}")
    _emit(payload, args.json, lines, out)
    return 0 if accepted else 1


# -- matrices ----------------------------------------------------------------------

def cmd_matrices(args, out) -> int:
    n = args.n
    try:
        obj = json.loads(Path(args.sigma_file).read_text())
        serialize.validate(obj, "sigma_file")
        sigma = serialize.sigma_from_json(obj["sigma"])
        pi = serialize.pi_from_json(obj["pi"]) if "pi" in obj else forward_pi(sigma).pi(n)
        mats = numeric_generator_matrices(n, sigma)
    except (OSError, ValueError, ZeroCoordinate) as exc:
        raise UsageError(f"cannot use sigma file {args.sigma_file}: {exc}") from exc
    except serialize.jsonschema.ValidationError as exc:
        raise UsageError(f"sigma file does not match schema: {exc.message}") from exc
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    files = {}
    for g in generators(n):
        if args.format == "triplets":
            name = f"{g}.triplets"
            with open(outdir / name, "w") as fh:
                serialize.write_numeric_triplets(mats[g], fh)
        else:
            name = f"{g}.json"
            (outdir / name).write_text(json.dumps(serialize.numeric_matrix_to_json(mats[g], n, g)) + "\n")
        files[g] = name
    rep = numeric_verify(n, sigma, pi, args.tol, mats=mats)
    verify = rep.to_dict()
    (outdir / "verify_report.json").write_text(json.dumps(verify, indent=2) + "\n")
    manifest = {
        "n": n,
        "format": args.format,
        "files": files,
        "sigma": serialize.sigma_to_json(sigma),
        "pi": serialize.pi_to_json(pi),
        "verify": verify,
    }
    (outdir / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    lines = [f"wrote {len(files)} matrices to {outdir}"]
    for r in rep.relations:
        lines.append(f"  {'PASS' if r.passed else 'FAIL'}  {r.id:<20} residual {r.residual:.3e}")
    _emit(manifest, args.json, lines, out)
    return 0 if rep.passed else 1


# -- entry point -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="symblob", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="check every defining relation symbolically")
    v.add_argument("--n", type=_n, required=True)
    v.add_argument("--theta", type=_theta, default="default",
                   help="'default' or 'perturb:<coord>' (adds 1 to one θ-coordinate)")
    v.add_argument("--json", action="store_true")
    v.add_argument("--timings", action="store_true", help="include wall times in the report")
    v.set_defaults(func=cmd_verify)

    lm = sub.add_parser("lemmas", help="run the operator identity suites on random monomials")
    lm.add_argument("--n", type=_n, required=True)
    lm.add_argument("--trials", type=int, default=20)
    lm.add_argument("--seed", type=int, default=0)
    lm.add_argument("--json", action="store_true")
    lm.set_defaults(func=cmd_lemmas)

    s = sub.add_parser("solve", help="find Σ realizing a parameter 6-tuple")
    for flag in ("delta", "delta-l", "delta-r", "kappa-l", "kappa-r", "kappa"):
        s.add_argument(f"--{flag}", type=_complex, required=True, metavar="RE[,IM]")
    s.add_argument("--x0", type=_complex, default=complex(1), metavar="RE[,IM]")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--retries", type=int, default=5)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_solve)

    m = sub.add_parser("matrices", help="export specialized generator matrices")
    m.add_argument("--n", type=_n, required=True)
    m.add_argument("--sigma-file", required=True)
    m.add_argument("--out", required=True)
    m.add_argument("--format", choices=("triplets", "json"), default="triplets")
    m.add_argument("--tol", type=float, default=1e-6)
    m.add_argument("--json", action="store_true")
    m.set_defaults(func=cmd_matrices)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "x0", 1) == 0:
        parser.print_usage(sys.stderr)
        sys.stderr.write("symblob: error: --x0 must be nonzero\n")
        return 2
    try:
        return args.func(args, out)
    except UsageError as exc:
        sys.stderr.write(f"symblob: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
