"""Command-line front end.

Exit codes: 0 success / all applicable bounds hold, 1 usage or input errors,
2 an applicable bound failed (``check``) or a proven bound was violated
(``fuzz``), 3 a reproduction did not match.
"""

from __future__ import annotations

import argparse
import csv
import datetime
import json
import os
import sys

import numpy as np

from . import numkern, ritz
from .bounds import ALL_BOUNDS, DEFAULT_TOL, check_all, parse_bound
from .errors import ContractError, ReproductionError, RitzBoundsError
from .harness import (
    ANGLE_MODELS,
    INVARIANCE_MODES,
    SPECTRUM_MODELS,
    FuzzConfig,
    property_suites,
    repro_intermediate_counterexample,
    repro_sharp,
    run_campaign,
)
from .matio import read_matrix
from .subspace import principal_angles

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_REPRO = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _tolerance(args) -> float:
    if args.tol is not None:
        return args.tol
    env = os.environ.get("RITZ_TOL")
    if env:
        try:
            return float(env)
        except ValueError:
            raise ContractError(f"RITZ_TOL is not a number: {env!r}") from None
    return DEFAULT_TOL


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    seed = int(np.random.SeedSequence().entropy % 2**32)
    print(f"seed: {seed}", file=sys.stderr)
    return seed


def parse_angles(text: str) -> list[float]:
    """Comma-separated angles in radians; a ``deg:`` prefix marks degrees."""
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if tok.startswith("deg:"):
            out.append(np.deg2rad(float(tok[4:])))
        else:
            out.append(float(tok))
    return out


def _range(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition(":")
    return (int(lo), int(hi or lo))


def _list(text: str) -> tuple[str, ...]:
    return tuple(t.strip() for t in text.split(",") if t.strip())


def _emit(obj, args):
    if not args.no_timestamp:
        obj = {**obj, "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat()}
    print(json.dumps(obj, indent=2, sort_keys=True))


def _basis(path, orthonormalize=False):
    m = read_matrix(path)
    if orthonormalize:
        return numkern.orthonormalize(m)
    try:
        return numkern.check_orthonormal(m, str(path))
    except ContractError as exc:
        raise ContractError(f"{exc}; rerun with --orthonormalize to orthonormalize the columns") from None


def cmd_angles(args) -> int:
    th = principal_angles(_basis(args.x, args.orthonormalize), _basis(args.y, args.orthonormalize))
    if args.format == "json":
        _emit({"angles_rad": th.tolist(), "angles_deg": np.rad2deg(th).tolist()}, args)
    else:
        print(" ".join(f"{t:.6f}" for t in th))
        print("deg: " + " ".join(f"{t:.6f}" for t in np.rad2deg(th)))
    return EXIT_OK


def cmd_ritz(args) -> int:
    a = numkern.hermitian(read_matrix(args.a))
    vals = ritz.ritz_values(a, _basis(args.x, args.orthonormalize))
    cls = ritz.classify_invariant(a, _basis(args.x, args.orthonormalize))
    if args.format == "json":
        _emit({"ritz_values": vals.tolist(), "spread": ritz.spread(a), "invariant_tag": cls.tag,
               "residual": cls.residual}, args)
    else:
        print(" ".join(f"{v:.12g}" for v in vals))
        print(f"spread: {ritz.spread(a):.12g}  invariance: {cls.tag} (residual {cls.residual:.3e})")
    return EXIT_OK


def cmd_check(args) -> int:
    a = numkern.hermitian(read_matrix(args.a))
    x, y = _basis(args.x, args.orthonormalize), _basis(args.y, args.orthonormalize)
    wanted = ALL_BOUNDS if args.bound == "all" else [parse_bound(b) for b in _list(args.bound)]
    reports = check_all(a, x, y, tol=_tolerance(args), bounds=wanted, rhs_scale=args.rhs_scale)
    failed = any(r.violated for r in reports)
    if args.format == "json":
        _emit({"all_hold": not failed, "reports": [r.to_dict() for r in reports]}, args)
    else:
        for r in reports:
            if not r.applicable:
                print(f"{r.bound.value:<22} n/a    {r.reason}")
                continue
            status = "holds" if r.holds else "FAILS"
            print(f"{r.bound.value:<22} {status}  min slack {r.verdict.min_slack:+.3e} "
                  f"at prefix {r.verdict.worst_prefix + 1}")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_fuzz(args) -> int:
    cfg = FuzzConfig(
        trials=args.trials,
        n_range=_range(args.n),
        k_range=_range(args.k),
        spectrum_model=_list(args.spectrum),
        angle_model=_list(args.angles),
        invariance_mode=_list(args.mode),
        seed=_seed(args),
        tolerance=_tolerance(args),
        bounds=tuple(b.value for b in ALL_BOUNDS) if args.bounds == "all" else _list(args.bounds),
        rhs_scale=args.rhs_scale,
        strict=args.strict,
    )
    findings = args.findings
    if findings is None and args.out:
        findings = os.path.join(os.path.dirname(os.path.abspath(args.out)), "findings")
    report = run_campaign(cfg, jobs=args.jobs, findings_dir=findings)
    text = report.to_json(timestamp=not args.no_timestamp)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            rows = report.summary_rows()
            w = csv.DictWriter(fh, fieldnames=list(rows[0]))
            w.writeheader()
            w.writerows(rows)
    if args.format == "json" and not args.out:
        print(text)
    print(f"trials={cfg.trials} seed={cfg.seed} proven-bound violations={report.bug_count} "
          f"conjecture findings={report.finding_count} skipped={len(report.skipped)}",
          file=sys.stderr if args.format == "json" and not args.out else sys.stdout)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_repro(args) -> int:
    if args.which == "intermediate":
        rec = repro_intermediate_counterexample()
        if args.format == "json":
            _emit(rec, args)
        else:
            print(f"angles: {rec['angles_rad']}")
            print(f"lhs |λ(XᴴAX) - λ(YᴴAY)|: {rec['lhs']}  rhs spr·sin²θ: {rec['rhs_sin2']}  holds")
            a = rec["intermediate_vector"]
            print(f"a = ({a[0]:g}, {a[1]:g})")
            print(f"|a| sorted = {rec['abs_intermediate_sorted']} is not weakly majorized by "
                  f"{rec['rhs_sin2']}: fails at prefix {rec['failed_prefix']} "
                  f"with slack {rec['failed_slack']:g}")
        return EXIT_OK
    if args.angles is None:
        raise ContractError("repro sharp needs --angles")
    angles = parse_angles(args.angles)
    m = args.m if args.m is not None else len(angles)
    rep = repro_sharp(m, angles)
    if args.format == "json":
        _emit(rep.to_dict(), args)
    else:
        print(f"lhs: {' '.join(f'{v:.12g}' for v in rep.lhs)}")
        print(f"rhs: {' '.join(f'{v:.12g}' for v in rep.rhs)}")
        print(f"max |prefix slack|: {np.abs(rep.verdict.prefix_slacks).max():.3e}  (equality)")
    return EXIT_OK


def cmd_properties(args) -> int:
    res = property_suites(_seed(args), args.trials, _tolerance(args))
    failed = any(r["failed"] for r in res.values())
    if args.format == "json":
        _emit({"suites": res}, args)
    else:
        for name, r in res.items():
            print(f"{name:<24} {r['passed']}/{r['trials']} passed")
    return EXIT_FAIL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ritzbounds", description="Verify Rayleigh-Ritz eigenvalue error bounds.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, tol=False):
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--no-timestamp", action="store_true", help="omit timestamps from JSON")
        if tol:
            sp.add_argument("--tol", type=float, default=None,
                            help=f"relative tolerance (default $RITZ_TOL or {DEFAULT_TOL})")

    sp = sub.add_parser("angles", help="principal angles between two subspaces")
    sp.add_argument("x")
    sp.add_argument("y")
    sp.add_argument("--orthonormalize", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_angles)

    sp = sub.add_parser("ritz", help="Ritz values of A on a subspace")
    sp.add_argument("a")
    sp.add_argument("x")
    sp.add_argument("--orthonormalize", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_ritz)

    sp = sub.add_parser("check", help="check bounds on one instance")
    sp.add_argument("a")
    sp.add_argument("x")
    sp.add_argument("y")
    sp.add_argument("--bound", default="all", help="bound id, comma list, or 'all'")
    sp.add_argument("--orthonormalize", action="store_true")
    sp.add_argument("--rhs-scale", type=float, default=1.0, help=argparse.SUPPRESS)
    common(sp, tol=True)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("fuzz", help="seeded fuzz campaign")
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--n", default="2:12", help="dimension range min:max")
    sp.add_argument("--k", default="1:6", help="subspace dimension range min:max")
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--mode", default="invariant-x", help=f"comma list of {INVARIANCE_MODES}")
    sp.add_argument("--spectrum", default=",".join(SPECTRUM_MODELS))
    sp.add_argument("--angles", default=",".join(ANGLE_MODELS))
    sp.add_argument("--bounds", default="all")
    sp.add_argument("--out", help="write the JSON campaign report here")
    sp.add_argument("--findings", help="directory for violation records (default: next to --out)")
    sp.add_argument("--csv", help="write a per-bound CSV summary here")
    sp.add_argument("--strict", action="store_true", help="conjecture findings also fail the run")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--rhs-scale", type=float, default=1.0, help=argparse.SUPPRESS)
    common(sp, tol=True)
    sp.set_defaults(func=cmd_fuzz)

    sp = sub.add_parser("repro", help="reproduce the worked examples")
    sp.add_argument("which", choices=("sharp", "intermediate"))
    sp.add_argument("--m", type=int)
    sp.add_argument("--angles", help="comma list, radians or deg:<value>")
    common(sp)
    sp.set_defaults(func=cmd_repro)

    sp = sub.add_parser("properties", help="classical majorization property suites")
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--trials", type=int, default=1000)
    common(sp, tol=True)
    sp.set_defaults(func=cmd_properties)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ReproductionError as exc:
        print(f"reproduction failed: {exc}", file=sys.stderr)
        return EXIT_REPRO
    except (RitzBoundsError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
