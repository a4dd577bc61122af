"""residue-lab: batch reports on quadratic residues.

Exit codes: 0 ok, 1 usage or hypothesis error, 2 invariant violation.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field

from . import census, charsum, expsums, nonresidue
from ._parallel import default_workers
from .modcore import PrimeModulus, PrimeRange, prime_array
from .report import FORMATS, render
from .verify import IDENTITIES, run_identities

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2

TABLE_DECIMALS = {"scale": 2, "c_p": 2}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class ReportConfig:
    command: str
    action: str | None = None
    p: int | None = None
    range: PrimeRange | None = None
    k_max: int = 4
    n_max: int = 15
    search_bound: int = 4_000_000
    x: int = 10**6
    n: int = 10**5
    m: int = 0
    r: int = 2
    s: int = 1
    fmt: str = "csv"
    out: str | None = None
    workers: int = 1
    seed: int = 0
    bound: int = 500
    only: list[str] = field(default_factory=list)
    summary: bool = False


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--format", dest="fmt", choices=FORMATS, default=None,
                    help="default: table on a terminal, csv otherwise")
    sp.add_argument("--out", default=None, help="output path (default stdout)")
    sp.add_argument("--workers", type=int, default=None,
                    help="worker processes (default $RESIDUE_LAB_WORKERS or 1)")
    sp.add_argument("--seed", type=int, default=0)


def _add_target(sp: argparse.ArgumentParser, required: bool = True) -> None:
    g = sp.add_mutually_exclusive_group(required=required)
    g.add_argument("--p", type=int, help="single prime")
    g.add_argument("--range", type=PrimeRange.parse, help="inclusive prime range lo:hi")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="residue-lab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("census", help="pattern censuses vs. predictions")
    _add_target(sp)
    sp.add_argument("--k-max", type=int, default=4)
    sp.add_argument("--summary", action="store_true", help="emit max |residual| per (k, decade) instead")
    _add_common(sp)

    nr = sub.add_parser("nonresidue", help="least quadratic nonresidue statistics")
    nsub = nr.add_subparsers(dest="action", required=True, parser_class=_Parser)
    sp = nsub.add_parser("table", help="smallest p with n_p = p_n, n = 1..n-max")
    sp.add_argument("--n-max", type=int, default=15)
    sp.add_argument("--search-bound", type=int, default=4_000_000)
    _add_common(sp)
    sp = nsub.add_parser("distribution", help="frequencies of n_p and its mean")
    sp.add_argument("--x", type=int, default=10**6)
    _add_common(sp)
    sp = nsub.add_parser("record", help="n_p, scale and c_p for one prime")
    sp.add_argument("--p", type=int, required=True)
    _add_common(sp)

    cs = sub.add_parser("charsum", help="partial character sums")
    csub = cs.add_subparsers(dest="action", required=True, parser_class=_Parser)
    sp = csub.add_parser("profile", help="max |f|, Polya-Vinogradov ratio, monotone runs")
    _add_target(sp)
    _add_common(sp)
    sp = csub.add_parser("burgess", help="explicit Burgess inequality on one interval")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--m", type=int, default=0, help="interval start M")
    sp.add_argument("--n", type=int, default=10**5, help="interval length N")
    sp.add_argument("--r", type=int, default=2)
    _add_common(sp)

    sp = sub.add_parser("gauss", help="quadratic Gauss sums vs. closed form")
    _add_target(sp)
    sp.add_argument("--s", type=int, default=1, help="twist s (default 1: plain Gauss sum)")
    _add_common(sp)

    sp = sub.add_parser("verify", help="exact-identity suite")
    sp.add_argument("--bound", type=int, default=500)
    sp.add_argument("--only", action="append", default=[], choices=sorted(IDENTITIES))
    _add_common(sp)
    return ap


def config_from_args(args: argparse.Namespace, stdout_isatty: bool) -> ReportConfig:
    cfg = ReportConfig(command=args.command, action=getattr(args, "action", None))
    for name in ("p", "range", "k_max", "n_max", "search_bound", "x", "n", "m", "r", "s",
                 "out", "seed", "bound", "only", "summary"):
        if getattr(args, name, None) is not None:
            setattr(cfg, name, getattr(args, name))
    cfg.fmt = args.fmt or ("table" if stdout_isatty and args.out is None else "csv")
    cfg.workers = args.workers if args.workers is not None else default_workers()
    if cfg.workers < 1:
        raise UsageError("--workers must be >= 1")
    return cfg


def _primes(cfg: ReportConfig) -> list[int]:
    if cfg.p is not None:
        return [PrimeModulus(cfg.p).p]
    rng = cfg.range
    if rng.lo > rng.hi:
        raise UsageError(f"empty range {rng.lo}:{rng.hi}")
    return prime_array(max(rng.lo, 3), rng.hi).tolist()


def cmd_census(cfg: ReportConfig) -> tuple[list[dict], dict, int]:
    if not 1 <= cfg.k_max <= census.MAX_SWEEP_K:
        raise UsageError(f"--k-max must be in [1, {census.MAX_SWEEP_K}]")
    rng = PrimeRange(PrimeModulus(cfg.p).p, cfg.p) if cfg.p is not None else cfg.range
    reports = list(census.census_sweep(rng, cfg.k_max, workers=cfg.workers))
    bad = [r for r in reports if not r.within_peralta]
    for r in bad:
        print(f"envelope violated: p={r.p} pattern={r.pattern.label} N={r.exact_count}", file=sys.stderr)
    rows = census.residual_summary(reports) if cfg.summary else [r.to_row() for r in reports]
    return rows, {}, EXIT_VIOLATION if bad else EXIT_OK


def cmd_nonresidue(cfg: ReportConfig) -> tuple[list[dict], dict, int]:
    if cfg.action == "table":
        if cfg.n_max < 1 or cfg.search_bound < 3:
            raise UsageError("--n-max must be >= 1 and --search-bound >= 3")
        rows = [row.to_row() for row in nonresidue.nonresidue_table(cfg.n_max, cfg.search_bound)]
        return rows, TABLE_DECIMALS, EXIT_OK
    if cfg.action == "distribution":
        report = nonresidue.distribution(cfg.x, workers=cfg.workers)
        return report.to_rows(), {}, EXIT_OK
    rec = nonresidue.record_for(PrimeModulus(cfg.p))
    return [rec.to_row()], TABLE_DECIMALS, EXIT_OK


def cmd_charsum(cfg: ReportConfig) -> tuple[list[dict], dict, int]:
    if cfg.action == "burgess":
        check = charsum.burgess_check(cfg.p, cfg.m, cfg.n, cfg.r)
        row = {"p": cfg.p, "m": cfg.m, "n": cfg.n, "r": cfg.r, "abs_sum": int(check.value),
               "bound": check.bound, "satisfied": check.satisfied}
        return [row], {}, EXIT_OK if check.satisfied else EXIT_VIOLATION
    rows = []
    status = EXIT_OK
    for p in _primes(cfg):
        prof = charsum.partial_sum_profile(p)
        row = prof.to_row()
        if row["max_abs"] > row["pv_bound"] or prof.values[-1] != 0:
            status = EXIT_VIOLATION
            print(f"Polya-Vinogradov/periodicity violated at p={p}", file=sys.stderr)
        rows.append(row)
    return rows, {}, status


def cmd_gauss(cfg: ReportConfig) -> tuple[list[dict], dict, int]:
    rows = []
    status = EXIT_OK
    for p in _primes(cfg):
        if cfg.s % p == 0:
            raise UsageError(f"--s must be nonzero mod {p}")
        value = expsums.twisted_gauss_sum(p, cfg.s)
        expected = expsums.gauss_closed_form(p, cfg.s)
        err = abs(value - expected)
        ok = err < expsums.REL_TOL * p**0.5
        status = status if ok else EXIT_VIOLATION
        rows.append({"p": p, "s": cfg.s, "re": value.real, "im": value.imag,
                     "expected_re": expected.real, "expected_im": expected.imag,
                     "abs_error": err, "within_tol": ok})
    return rows, {}, status


def cmd_verify(cfg: ReportConfig) -> tuple[list[dict], dict, int]:
    results = run_identities(cfg.bound, cfg.only or None, seed=cfg.seed)
    rows = []
    for res in results:
        rows.append({"identity": res.name, "bound": res.bound, "checked": res.checked,
                     "failures": len(res.failures), "status": "pass" if res.passed else "FAIL"})
        for msg in res.failures:
            print(f"{res.name}: {msg}", file=sys.stderr)
    return rows, {}, EXIT_OK if all(r.passed for r in results) else EXIT_VIOLATION


COMMANDS = {
    "census": cmd_census,
    "nonresidue": cmd_nonresidue,
    "charsum": cmd_charsum,
    "gauss": cmd_gauss,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args, sys.stdout.isatty())
        rows, decimals, status = COMMANDS[cfg.command](cfg)
    except (UsageError, ValueError) as exc:
        print(f"residue-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(rows, cfg.fmt, decimals)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
