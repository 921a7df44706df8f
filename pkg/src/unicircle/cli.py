"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 usage error.
Every report starts with a reproducibility header carrying the schema
version, precision, tolerance and sample count.

CSV layouts (fixed column order):

* family scans:   part, k, j, lhs, rhs, margin
* verify-family:  family, k, degree, roots_ok, max_deviation, certificate, ok
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields

from mpmath import mp

from . import certify as cert_mod
from . import criteria as crit_mod
from . import families as fam_mod
from . import special
from .poly import MIN_PRECISION, Polynomial, strip_low_zeros, to_coefficient
from .roots import all_roots

SCHEMA = "unicircle/1"
ENV_PRECISION = "UNICIRCLE_PRECISION_BITS"

# (r, c) used by verify-family for the certificate path, and the first k it covers
CERT_PLAN = {"P": (4, 0.020, 11), "Q": (2, 0.15, 8), "W": (3, 0.52, 6)}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    precision_bits: int = 256
    tol_exponent: int = -20
    samples: int = cert_mod.DEFAULT_CERT_SAMPLES
    parallelism: int = 1
    output_format: str = "json"

    def __post_init__(self):
        if self.precision_bits < MIN_PRECISION:
            raise UsageError(f"precision_bits must be >= {MIN_PRECISION}")
        if self.samples < cert_mod.MIN_SAMPLES:
            raise UsageError(f"samples must be >= {cert_mod.MIN_SAMPLES}")
        if self.parallelism < 1:
            raise UsageError("parallelism must be >= 1")
        if self.output_format not in ("json", "csv"):
            raise UsageError("output_format must be json or csv")

    @property
    def tol(self) -> float:
        return 10.0**self.tol_exponent

    def header(self) -> dict:
        return {"schema": SCHEMA, **asdict(self), "tol": self.tol}


def resolve_config(args) -> RunConfig:
    """env < config file < flags."""
    values = {}
    env = os.environ.get(ENV_PRECISION)
    if env:
        try:
            values["precision_bits"] = int(env)
        except ValueError:
            raise UsageError(f"{ENV_PRECISION} must be an integer")
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config: {exc}")
        known = {f.name for f in fields(RunConfig)}
        unknown = set(doc) - known - {"schema"}
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        values.update({k: v for k, v in doc.items() if k in known})
    for name in ("precision_bits", "tol_exponent", "samples", "parallelism", "output_format"):
        v = getattr(args, name, None)
        if v is not None:
            values[name] = v
    return RunConfig(**values)


def parse_k_range(text: str) -> list[int]:
    """``7``, ``2..30`` or ``2,5,9``."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad k range {text!r}")


def _read_poly(args, prec: int) -> Polynomial:
    if args.coeffs:
        return Polynomial(tuple(to_coefficient(c.strip(), prec) for c in args.coeffs.split(",")), prec)
    if not args.input:
        raise UsageError("give --input FILE (or -) or --coeffs")
    try:
        text = sys.stdin.read() if args.input == "-" else open(args.input).read()
        doc = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read polynomial: {exc}")
    if isinstance(doc, list):
        return Polynomial(tuple(doc), prec)
    doc = dict(doc)
    doc.setdefault("precision_bits", prec)
    return Polynomial.from_json(doc)


def _emit(cfg: RunConfig, payload, out, csv_header=None, csv_rows=None):
    if cfg.output_format == "csv" and csv_rows is not None:
        out.write("# " + " ".join(f"{k}={v}" for k, v in cfg.header().items()) + "\n")
        w = csv.writer(out, lineterminator="\n")
        w.writerow(csv_header)
        w.writerows(csv_rows)
    else:
        json.dump({**cfg.header(), "result": payload}, out, indent=2, default=str)
        out.write("\n")


# -- subcommands -----------------------------------------------------------------


def cmd_roots(args, cfg, out) -> int:
    p = _read_poly(args, cfg.precision_bits)
    if p.degree < 1:
        raise UsageError("polynomial must have degree >= 1")
    rep = all_roots(p, cfg.precision_bits)
    _emit(cfg, rep.to_json(), out)
    return 0 if rep.converged else 1


def cmd_criteria(args, cfg, out) -> int:
    p = _read_poly(args, cfg.precision_bits)
    if p.degree < 1:
        raise UsageError("polynomial must have degree >= 1")
    only = None if args.all or not args.only else [s.strip() for s in args.only.split(",")]
    try:
        verdicts = crit_mod.run_all(p, only)
    except ValueError as exc:
        raise UsageError(str(exc))
    rows = [[v.criterion_id, v.applicable, v.holds, v.is_iff, mp.nstr(v.margin, 17) if v.margin is not None else ""] for v in verdicts]
    _emit(cfg, [v.to_json() for v in verdicts], out, ["criterion", "applicable", "holds", "is_iff", "margin"], rows)
    return 0


def cmd_certify(args, cfg, out) -> int:
    try:
        c = cert_mod.family_certificate(args.family, args.k, args.r, args.c, samples=cfg.samples)
    except ValueError as exc:
        raise UsageError(str(exc))
    _emit(cfg, c.to_json(), out)
    if not c.valid:
        print(f"certificate failed: family={args.family} k={args.k} r={args.r}: {', '.join(c.diagnostics)}", file=sys.stderr)
    return 0 if c.valid else 1


def _scan_rows(report):
    return [[*r.as_csv(), r.flagged] for r in report.rows]


def cmd_families(args, cfg, out) -> int:
    prec = cfg.precision_bits
    action = args.action
    try:
        if action == "build":
            res = {str(k): fam_mod.build(args.family, k, prec).to_json() for k in args.k}
            _emit(cfg, res, out)
            return 0
        if action == "decompose":
            res = {}
            for k in args.k:
                d = fam_mod.decompose(args.family, k, args.r, prec)
                res[str(k)] = {
                    "h_r": d.h_r.to_json(),
                    "e_r": d.e_r.to_json(),
                    "lambda": int(d.lam.real),
                    "reconstruction_error": mp.nstr(d.reconstruction_error, 6),
                }
            _emit(cfg, res, out)
            return 0
        if action == "ramanujan":
            res = {}
            for k in args.k:
                res[str(k)] = {z: mp.nstr(fam_mod.ramanujan_residual(k, z, precision=prec), 6) for z in args.z}
            _emit(cfg, res, out)
            return 0
        scan = {
            "scan-lemma3": lambda ks: fam_mod.lemma3_scan(ks, prec),
            "scan-lemma5": lambda ks: fam_mod.lemma5_scan(ks, prec),
            "scan-lemma6": lambda ks: fam_mod.lemma6_scan(ks, min(cfg.samples, 2**16), prec),
        }[action]
    except (ValueError, fam_mod.DecompositionError) as exc:
        if isinstance(exc, fam_mod.DecompositionError):
            print(str(exc), file=sys.stderr)
            return 1
        raise UsageError(str(exc))
    report = scan(args.k)
    header = ["part", "k", "j", "lhs", "rhs", "margin", "flagged"]
    payload = {
        "rows": [dict(zip(header, r)) for r in _scan_rows(report)],
        "violations": len(report.violations),
        "flagged": [dict(zip(header, [*r.as_csv(), True])) for r in report.flagged],
        "notes": list(report.notes),
    }
    _emit(cfg, payload, out, header, _scan_rows(report))
    for r in report.violations:
        print(f"violation: part={r.part} k={r.k} j={r.j}", file=sys.stderr)
    return 0 if report.ok else 1


def cmd_special(args, cfg, out) -> int:
    prec = cfg.precision_bits
    n = args.n
    try:
        if args.kind == "bernoulli":
            b = special.bernoulli(n)
            res = {"value": f"{b.numerator}/{b.denominator}"}
        elif args.kind == "euler":
            res = {"value": str(special.euler_number(n))}
        else:
            fn = {
                "zeta": special.zeta_int,
                "eta": lambda s, p: special.eta_at_even(s, p) if s % 2 == 0 else special.eta(s, p),
                "eta0": lambda s, p: special.eta0_at_even(s, p) if s % 2 == 0 else special.eta0(s, p),
                "lchi4": special.l_chi4,
            }[args.kind]
            v = fn(n, prec)
            with mp.workprec(prec):
                res = {"value": mp.nstr(v.value, int(prec * 0.301)), "error_bound": mp.nstr(v.error_bound, 6)}
    except ValueError as exc:
        raise UsageError(str(exc))
    _emit(cfg, {"kind": args.kind, "n": n, **res}, out)
    return 0


def verify_one(family: str, k: int, precision: int, tol: float, samples: int) -> dict:
    """Direct root check, plus the certificate where the family has one."""
    p = fam_mod.build(family, k, precision)
    core, _ = strip_low_zeros(p)
    rep = all_roots(core, precision)
    dev = rep.max_modulus_deviation
    roots_ok = bool(rep.converged and dev < tol)
    row = {"family": family, "k": k, "degree": p.degree, "roots_ok": roots_ok, "max_deviation": mp.nstr(dev, 6)}
    cert_ok = None
    plan = CERT_PLAN.get(family)
    if plan and k >= plan[2]:
        c = cert_mod.family_certificate(family, k, plan[0], plan[1], samples=samples, verify_degree_cap=0)
        cert_ok = c.valid
        row["certificate_diagnostics"] = list(c.diagnostics)
    row["certificate"] = cert_ok
    row["ok"] = roots_ok and cert_ok is not False
    return row


def cmd_verify_family(args, cfg, out) -> int:
    ks = args.k
    fam = args.family.upper()
    jobs = [(fam, k, cfg.precision_bits, cfg.tol, cfg.samples) for k in ks]
    if cfg.parallelism > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(cfg.parallelism) as pool:
            rows = list(pool.map(verify_one, *zip(*jobs)))  # map keeps k order
    else:
        rows = [verify_one(*j) for j in jobs]
    header = ["family", "k", "degree", "roots_ok", "max_deviation", "certificate", "ok"]
    _emit(cfg, rows, out, header, [[r[h] for h in header] for r in rows])
    bad = [r for r in rows if not r["ok"]]
    for r in bad:
        check = "roots" if not r["roots_ok"] else "certificate"
        print(f"failed: family={r['family']} k={r['k']} check={check}", file=sys.stderr)
    if not bad:
        print(f"verify-family {fam}: {len(rows)} values of k passed", file=sys.stderr)
    return 1 if bad else 0


# -- parser ------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser):
    p.add_argument("--precision", dest="precision_bits", type=int, help="working precision in bits")
    p.add_argument("--tol-exponent", type=int, help="unimodularity tolerance is 10**TOL_EXPONENT")
    p.add_argument("--samples", type=int, help="circle grid size for certificates")
    p.add_argument("--parallelism", type=int, help="worker processes for per-k sweeps")
    p.add_argument("--format", dest="output_format", choices=["json", "csv"])
    p.add_argument("--config", help="JSON file with RunConfig fields")


def _poly_input(p: argparse.ArgumentParser):
    p.add_argument("--input", help="Polynomial JSON file, or - for stdin")
    p.add_argument("--coeffs", help="comma-separated coefficients, constant term first")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="unicircle", description="Unit-circle zeros of self-inversive polynomials.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("roots", help="all roots of a polynomial")
    _poly_input(p)
    _common(p)

    p = sub.add_parser("criteria", help="evaluate the unit-circle criteria")
    _poly_input(p)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--all", action="store_true")
    g.add_argument("--only", help=f"comma list from {','.join(crit_mod.CRITERIA)}")
    _common(p)

    p = sub.add_parser("certify", help="Lemma-2 certificate for a family splitting")
    p.add_argument("--family", required=True, choices=["P", "Q", "W"])
    p.add_argument("--k", required=True, type=int)
    p.add_argument("--r", required=True, type=int)
    p.add_argument("--c", required=True, type=float)
    _common(p)

    p = sub.add_parser("families", help="build, decompose or scan the families")
    p.add_argument("action", choices=["build", "decompose", "scan-lemma3", "scan-lemma5", "scan-lemma6", "ramanujan"])
    p.add_argument("--family", default="P", choices=[f.value for f in fam_mod.FamilyId])
    p.add_argument("--k", type=parse_k_range, default=parse_k_range("2..20"))
    p.add_argument("--r", type=int, default=4)
    p.add_argument("--z", nargs="+", default=["1", "1.5", "2"], help="points for the ramanujan residual")
    _common(p)

    p = sub.add_parser("special", help="Bernoulli/Euler numbers and zeta-type values")
    p.add_argument("kind", choices=["bernoulli", "euler", "zeta", "eta", "eta0", "lchi4"])
    p.add_argument("--n", type=int, required=True)
    _common(p)

    p = sub.add_parser("verify-family", help="roots and certificate sweep over k")
    p.add_argument("--family", required=True, choices=[f.value for f in fam_mod.FamilyId])
    p.add_argument("--k", type=parse_k_range, required=True)
    _common(p)
    return ap


COMMANDS = {
    "roots": cmd_roots,
    "criteria": cmd_criteria,
    "certify": cmd_certify,
    "families": cmd_families,
    "special": cmd_special,
    "verify-family": cmd_verify_family,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = resolve_config(args)
        return COMMANDS[args.command](args, cfg, out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:  # output piped into head and friends
        sys.stderr.close()
        return 0


if __name__ == "__main__":
    sys.exit(main())
