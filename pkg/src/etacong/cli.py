"""Command-line front end: statements, verification runs, grid scans, table
printing and diffing, oracle queries, and self tests."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import congruence_engine as ce
from . import partition_oracle as po
from . import verifier as vf

CSV_COLUMNS = ["c", "d", "r", "n", "A", "M", "K", "min_valuation", "pass", "trivial", "elapsed_ms"]


@dataclass
class RunConfig:
    command: str
    c: int = None
    d: int = None
    r: int = None
    terms: int = None
    K: int = None
    exact: bool = False
    c_range: tuple = None
    d_range: tuple = None
    r_range: tuple = None
    which: str = "all"
    ell: int = 11
    N: int = None
    trials: int = 100
    seed: int = 11
    jobs: int = 1
    fmt: str = "text"
    output: str = None


def _parse_range(text: str):
    """Inclusive integer range "lo:hi"; a bare integer means a single value."""
    if ":" in text:
        lo_s, hi_s = text.split(":", 1)
        lo, hi = int(lo_s), int(hi_s)
    else:
        lo = hi = int(text)
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="etacong",
        description="Partition congruences modulo powers of 11: statements, "
        "verification, scans, tables, oracle queries.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "csv"], default="text")
    common.add_argument("--output", metavar="PATH", default=None, help="write to file instead of stdout")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("statement", parents=[common], help="print one congruence statement")
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=int, required=True)

    p = sub.add_parser("verify", parents=[common], help="numerically certify one statement")
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--terms", type=int, default=20, metavar="M", help="check m in [0, M]")
    p.add_argument("--K", type=int, default=None, help="modulus precision (default: exponent + 6)")
    p.add_argument("--exact", action="store_true", help="use exact integers instead of mod 11^K")

    p = sub.add_parser("scan", parents=[common], help="verify a grid of statements")
    p.add_argument("--c-range", type=_parse_range, required=True, metavar="LO:HI")
    p.add_argument("--d-range", type=_parse_range, required=True, metavar="LO:HI")
    p.add_argument("--r-range", type=_parse_range, default=(1, 1), metavar="LO:HI")
    p.add_argument("--terms", type=int, default=10, metavar="M")
    p.add_argument("--K", type=int, default=None)
    p.add_argument("--jobs", type=int, default=None, help="parallel workers (default: ETACONG_JOBS or 1)")

    p = sub.add_parser("tables", parents=[common], help="print embedded tables; diff the regenerated alpha table")
    p.add_argument("--which", choices=["theta", "delta", "alpha", "all"], default="all")

    p = sub.add_parser("alpha", parents=[common], help="asymptotic exponent growth rate for (c, d)")
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--d", type=int, required=True)

    p = sub.add_parser("oracle", parents=[common], help="naive coefficient listing with valuations")
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--N", type=int, required=True, help="number of coefficients")
    p.add_argument("--ell", type=int, default=11)

    p = sub.add_parser("selftest", parents=[common], help="identity, table, and oracle-agreement suites")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=11)

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command, fmt=args.format, output=args.output)
    for name in ("c", "d", "r", "terms", "K", "exact", "which", "ell", "N", "trials", "seed"):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    for name in ("c_range", "d_range", "r_range"):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    if hasattr(args, "jobs"):
        cfg.jobs = args.jobs if args.jobs is not None else int(os.environ.get("ETACONG_JOBS", "1"))
    return cfg


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump_json(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def report_to_dict(rep: vf.VerificationReport) -> dict:
    st = rep.statement
    return {
        "c": st.c,
        "d": st.d,
        "r": st.r,
        "n": st.n_canonical,
        "A": st.exponent,
        "M": rep.checked_m_range[1],
        "K": rep.K,
        "min_valuation": rep.min_valuation,
        "capped": rep.capped,
        "pass": rep.passed,
        "trivial": rep.trivial,
        "exceeds_A_by": rep.exceeds_by,
        "elapsed_ms": round(rep.elapsed * 1000, 3),
        "mode": rep.mode,
    }


def _csv_text(rows: list) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow(
            [
                row.get("c", ""),
                row.get("d", ""),
                row.get("r", ""),
                row.get("n", ""),
                row.get("A", ""),
                row.get("M", ""),
                row.get("K", ""),
                row.get("min_valuation", ""),
                str(row["pass"]).lower() if "pass" in row else "false",
                str(row.get("trivial", False)).lower(),
                row.get("elapsed_ms", ""),
            ]
        )
    return buf.getvalue()


def _valuation_text(row: dict) -> str:
    if row.get("capped"):
        return f">= {row['min_valuation']} (capped at ring precision)"
    return str(row["min_valuation"])


def _verify_row_text(row: dict) -> str:
    if "error" in row:
        return f"c={row['c']} d={row['d']} r={row['r']}  ERROR: {row['error']}"
    verdict = "PASS" if row["pass"] else "FAIL"
    if row["trivial"]:
        verdict += " (trivial)"
    return (
        f"c={row['c']} d={row['d']} r={row['r']}  n={row['n']}  A={row['A']}  "
        f"min_valuation={_valuation_text(row)}  {verdict}"
    )


def cmd_statement(cfg: RunConfig) -> int:
    st = ce.statement(cfg.c, cfg.d, cfg.r)
    if cfg.fmt == "json":
        doc = {
            "schema": 1,
            "command": "statement",
            "statement": {
                "c": st.c,
                "d": st.d,
                "r": st.r,
                "n": st.n_canonical,
                "A": st.exponent,
                "trivial": st.trivial,
                "text": st.render(),
            },
        }
        _emit(_dump_json(doc), cfg)
    else:
        _emit(st.render() + "\n", cfg)
    return 0


def cmd_verify(cfg: RunConfig) -> int:
    rep = vf.verify_theorem(cfg.c, cfg.d, cfg.r, cfg.terms, K=cfg.K, exact=cfg.exact)
    row = report_to_dict(rep)
    if cfg.fmt == "json":
        _emit(_dump_json({"schema": 1, "command": "verify", "report": row}), cfg)
    elif cfg.fmt == "csv":
        _emit(_csv_text([row]), cfg)
    else:
        mode = "exact integers" if rep.mode == "exact" else f"mod 11^{rep.K}"
        lines = [rep.statement.render()]
        if rep.trivial:
            lines.append("exponent 0 holds for every integer; nothing to compute")
        else:
            lines.append(
                f"checked m in [0, {cfg.terms}] ({mode}): "
                f"min 11-adic valuation {_valuation_text(row)}, "
                f"exceeds exponent by {rep.exceeds_by}"
            )
        lines.append(f"{'PASS' if rep.passed else 'FAIL'} ({row['elapsed_ms']:.1f} ms)")
        _emit("\n".join(lines) + "\n", cfg)
    return 0 if rep.passed else 1


def _scan_worker(task):
    c, d, r, M, K = task
    try:
        return report_to_dict(vf.verify_theorem(c, d, r, M, K=K))
    except Exception as exc:
        row = {"c": c, "d": d, "r": r, "error": str(exc)}
        try:
            st = ce.statement(c, d, r)
            row.update({"n": st.n_canonical, "A": st.exponent, "trivial": st.trivial})
        except Exception:
            pass
        return row


def cmd_scan(cfg: RunConfig) -> int:
    for name, rng in (("c", cfg.c_range), ("d", cfg.d_range), ("r", cfg.r_range)):
        if rng[0] > rng[1]:
            raise UsageError(f"empty {name} range {rng[0]}:{rng[1]}")
    if cfg.r_range[0] < 1:
        raise UsageError("r must be at least 1")
    if cfg.terms < 1:
        raise UsageError("terms must be at least 1")
    tasks = [
        (c, d, r, cfg.terms, cfg.K)
        for c in range(cfg.c_range[0], cfg.c_range[1] + 1)
        for d in range(cfg.d_range[0], cfg.d_range[1] + 1)
        for r in range(cfg.r_range[0], cfg.r_range[1] + 1)
    ]
    t0 = time.perf_counter()
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            rows = list(pool.map(_scan_worker, tasks))
    else:
        rows = [_scan_worker(t) for t in tasks]
    elapsed = time.perf_counter() - t0
    failed = sum(1 for row in rows if "error" in row or not row["pass"])
    trivial = sum(1 for row in rows if row.get("trivial"))
    errors = sum(1 for row in rows if "error" in row)
    summary = {
        "rows": len(rows),
        "passed": len(rows) - failed,
        "failed": failed,
        "trivial": trivial,
        "errors": errors,
        "elapsed_ms": round(elapsed * 1000, 3),
    }
    if cfg.fmt == "json":
        _emit(_dump_json({"schema": 1, "command": "scan", "reports": rows, "summary": summary}), cfg)
    elif cfg.fmt == "csv":
        _emit(_csv_text(rows), cfg)
    else:
        lines = [_verify_row_text(row) for row in rows]
        lines.append(
            f"scan: {summary['rows']} rows, {summary['passed']} pass, "
            f"{summary['failed']} fail, {summary['trivial']} trivial "
            f"({elapsed:.2f} s)"
        )
        _emit("\n".join(lines) + "\n", cfg)
    return 0 if failed == 0 else 1


def _grid_text(title: str, grid, row_labels, col_labels, corner: str) -> str:
    widths = [max(len(str(col)), 2) for col in col_labels]
    lines = [title]
    head = corner.ljust(6) + " ".join(str(c).rjust(w) for c, w in zip(col_labels, widths))
    lines.append(head)
    for label, row in zip(row_labels, grid):
        lines.append(str(label).ljust(6) + " ".join(str(v).rjust(w) for v, w in zip(row, widths)))
    return "\n".join(lines)


def cmd_tables(cfg: RunConfig) -> int:
    chunks = []
    doc = {"schema": 1, "command": "tables", "which": cfg.which}
    exit_code = 0
    if cfg.which in ("theta", "all"):
        computed_theta, theta_findings = ce.theta_table_regenerate()
        chunks.append(
            _grid_text(
                "theta(lambda, mu) for 0 <= lambda <= 10, 0 <= mu <= 4:",
                ce.THETA_GRID,
                range(5),
                range(11),
                "mu\\la",
            )
        )
        if theta_findings:
            exit_code = 1
            lines = [
                f"regeneration: {len(theta_findings)} cell(s) disagree with the embedded table"
            ]
            for f in theta_findings:
                lines.append(
                    f"  (lambda {f['lam']}, mu {f['mu']}): embedded {f['embedded']}, "
                    f"recomputed {f['computed']}"
                    + (
                        f", first non-divisible coefficient at q^{f['witness'][0]}"
                        if f["witness"]
                        else ""
                    )
                )
            chunks.append("\n".join(lines))
        else:
            chunks.append("regeneration: all 55 cells match the embedded table")
        doc["theta"] = {
            "embedded": [list(row) for row in ce.THETA_GRID],
            "computed": [list(row) for row in computed_theta.grid],
            "findings": theta_findings,
            "match": not theta_findings,
        }
    if cfg.which in ("delta", "all"):
        chunks.append(
            _grid_text(
                "delta(mu, nu) by residues mod 5:",
                ce.DELTA_GRID,
                range(5),
                range(5),
                "mu\\nu",
            )
        )
        doc["delta"] = [list(row) for row in ce.DELTA_GRID]
    if cfg.which in ("alpha", "all"):
        computed, findings = ce.alpha_table_regenerate()
        chunks.append(
            _grid_text(
                "alpha by residue of c+11d mod 120 (entry (row, col) is residue row+col):",
                ce.ALPHA_GRID,
                ce.ALPHA_ROW_LABELS,
                range(1, 25),
                "",
            )
        )
        chunks.append(
            "negative last column (c+11d < 0): "
            + " ".join(str(v) for v in ce.ALPHA_NEGATIVE_LAST_COLUMN)
        )
        if findings:
            exit_code = 1
            lines = [f"regeneration: {len(findings)} cell(s) disagree with the embedded table"]
            for f in findings:
                lines.append(
                    f"  residue {f['residue']} ({f['kind']}, row {f['row']}, column {f['column']}): "
                    f"embedded {f['embedded']}, computed {f['computed']}"
                )
            chunks.append("\n".join(lines))
        else:
            chunks.append("regeneration: all 125 cells match the embedded table")
        doc["alpha"] = {
            "embedded": [list(row) for row in ce.ALPHA_GRID],
            "computed": [list(row) for row in computed.grid],
            "negative_last_column_embedded": list(ce.ALPHA_NEGATIVE_LAST_COLUMN),
            "negative_last_column_computed": list(computed.negative_last_column),
            "findings": findings,
            "match": not findings,
        }
    if cfg.fmt == "json":
        _emit(_dump_json(doc), cfg)
    else:
        _emit("\n\n".join(chunks) + "\n", cfg)
    return exit_code


def cmd_alpha(cfg: RunConfig) -> int:
    v = cfg.c + 11 * cfg.d
    value = ce.alpha(cfg.c, cfg.d)
    if cfg.fmt == "json":
        doc = {
            "schema": 1,
            "command": "alpha",
            "c": cfg.c,
            "d": cfg.d,
            "c_plus_11d": v,
            "residue_mod_120": v % 120,
            "alpha": value,
        }
        _emit(_dump_json(doc), cfg)
    else:
        _emit(
            f"alpha(c={cfg.c}, d={cfg.d}) = {value}  "
            f"(c+11d = {v}, residue {v % 120} mod 120)\n",
            cfg,
        )
    return 0


def cmd_oracle(cfg: RunConfig) -> int:
    seq = po.naive_coeffs(cfg.c, cfg.d, cfg.ell, cfg.N)
    vals = [po.valuation_11(x) for x in seq.values]
    if cfg.fmt == "json":
        doc = {
            "schema": 1,
            "command": "oracle",
            "c": cfg.c,
            "d": cfg.d,
            "ell": cfg.ell,
            "N": cfg.N,
            "values": seq.values,
            "valuations": [None if v == math.inf else v for v in vals],
        }
        _emit(_dump_json(doc), cfg)
    elif cfg.fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["n", "value", "valuation_11"])
        for n, (x, v) in enumerate(zip(seq.values, vals)):
            writer.writerow([n, x, "inf" if v == math.inf else v])
        _emit(buf.getvalue(), cfg)
    else:
        lines = [f"coefficients of the (c={cfg.c}, d={cfg.d}, ell={cfg.ell}) product:"]
        for n, (x, v) in enumerate(zip(seq.values, vals)):
            lines.append(f"{n:6d}  {x}  (11-adic valuation {'inf' if v == math.inf else v})")
        _emit("\n".join(lines) + "\n", cfg)
    return 0


def _table_recurrence_suite() -> bool:
    for lam in range(-40, 41):
        for mu in range(-40, 41):
            base = ce.theta(lam, mu)
            if ce.theta(lam - 11, mu) != base or ce.theta(lam + 12, mu - 5) != base:
                return False
    if min(min(row) for row in ce.DELTA_GRID) != -1:
        return False
    for mu in range(5):
        for nu in range(5):
            for lam in range(11):
                if ce.order_bound(mu, nu, lam) < (11 * nu - mu - 5 * lam - 1) // 10:
                    return False
    return True


def _oracle_agreement_suite() -> bool:
    from .series_core import EtaQuotientSpec, ExactIntegers, eta_quotient

    ring = ExactIntegers()
    N = 120
    for c in range(-3, 4):
        for d in range(-3, 4):
            fast = eta_quotient(EtaQuotientSpec({1: -c, 11: -d}), N, ring)
            if fast.coeff_range(0, N) != po.naive_coeffs(c, d, 11, N).values:
                return False
    return True


def cmd_selftest(cfg: RunConfig) -> int:
    suites = {
        "u_operator_identity": vf.up_identity_selftest(cfg.trials, cfg.seed),
        "table_recurrences": _table_recurrence_suite(),
        "oracle_agreement": _oracle_agreement_suite(),
    }
    ok = all(suites.values())
    if cfg.fmt == "json":
        _emit(_dump_json({"schema": 1, "command": "selftest", "suites": suites, "pass": ok}), cfg)
    else:
        lines = [f"suite {name}: {'PASS' if good else 'FAIL'}" for name, good in suites.items()]
        lines.append(f"selftest: {'PASS' if ok else 'FAIL'}")
        _emit("\n".join(lines) + "\n", cfg)
    return 0 if ok else 1


class UsageError(Exception):
    pass


_RANGE_FLAGS = {"--c-range", "--d-range", "--r-range"}


def _join_range_flags(argv: list) -> list:
    # "--c-range -2:2" confuses argparse (the value starts with a dash and is
    # not a plain negative number), so fold it into "--c-range=-2:2".
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _RANGE_FLAGS and i + 1 < len(argv):
            out.append(tok + "=" + argv[i + 1])
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


_COMMANDS = {
    "statement": cmd_statement,
    "verify": cmd_verify,
    "scan": cmd_scan,
    "tables": cmd_tables,
    "alpha": cmd_alpha,
    "oracle": cmd_oracle,
    "selftest": cmd_selftest,
}

_CSV_CAPABLE = {"verify", "scan", "oracle"}


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_join_range_flags(list(argv)))
    cfg = _config_from_args(args)
    if cfg.fmt == "csv" and cfg.command not in _CSV_CAPABLE:
        parser.error(f"csv output is not defined for '{cfg.command}'")
    try:
        if cfg.command == "verify" and cfg.terms < 1:
            raise UsageError("terms must be at least 1")
        if cfg.command == "oracle" and cfg.N < 1:
            raise UsageError("N must be at least 1")
        if cfg.command in ("statement", "verify") and cfg.r < 1:
            raise UsageError("r must be at least 1")
        return _COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        parser.error(str(exc))
    except (vf.ConfigError, vf.ResourceError, ValueError) as exc:
        parser.error(str(exc))
    return 2


if __name__ == "__main__":
    sys.exit(main())
