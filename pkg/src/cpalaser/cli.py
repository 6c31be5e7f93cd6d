"""Command-line interface.

Every setting can come from a flat ``key = value`` config file (``--config``)
or a ``--key value`` flag; flags win. Exit status: 0 success, 1 no solution
or failed verification, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import math
import re
import sys
from contextlib import contextmanager
from dataclasses import dataclass, fields
from pathlib import Path

from .dof import dof_breakdown
from .errors import ConvergenceError, DomainError, NearPTError
from .formats import solution_record, write_csv, write_records
from .optics import BilayerSlab, ComplexIndex, lambda_over_L, pt_diagnostics, scattering, transfer_matrix
from .solver import find_selfdual, pt_special_case, scan_lasing
from .table1 import format_report, verify_table1

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

SPECTRUM_COLUMNS = [
    "K", "lambda_over_L", "T2", "Rl2", "Rr2", "abs_m11_scaled", "abs_m22_scaled", "det_defect",
]


class ConfigError(Exception):
    pass


def parse_number(text: str) -> float:
    """Float, optionally a multiple of pi: ``400pi``, ``400*pi``, ``pi``."""
    t = str(text).strip().replace(" ", "")
    m = re.fullmatch(r"([+-]?[0-9.eE+-]*)\*?pi", t)
    if m:
        coef = m.group(1)
        return (float(coef) if coef not in ("", "+", "-") else float(coef + "1")) * math.pi
    try:
        return float(t)
    except ValueError:
        raise ConfigError(f"not a number: {text!r}") from None


def parse_bool(text: str) -> bool:
    t = str(text).strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {text!r}")


def parse_int(text: str) -> int:
    try:
        return int(str(text).strip())
    except ValueError:
        raise ConfigError(f"not an integer: {text!r}") from None


@dataclass
class RunConfig:
    eta1: float | None = None
    kappa1: float = 0.0
    eta2: float | None = None
    kappa2: float = 0.0
    L: float | None = None
    K_min: float | None = None
    K_max: float | None = None
    steps: int | None = None
    K_target: float = 400 * math.pi
    max_solutions: int | None = None
    n0: float | None = None
    mode: int | None = None
    n: int | None = None
    pt: bool | None = None
    residual: str = "ss"
    seed_only: bool = False
    out: str | None = None
    format: str | None = None

    def require(self, *names: str) -> None:
        missing = [n for n in names if getattr(self, n) is None]
        if missing:
            raise ConfigError("missing required setting(s): " + ", ".join(missing))

    def slab(self) -> BilayerSlab:
        self.require("eta1", "eta2")
        return BilayerSlab(ComplexIndex(self.eta1, self.kappa1), ComplexIndex(self.eta2, self.kappa2), self.L)

    def window(self) -> tuple[float, float, int]:
        self.require("K_min", "K_max", "steps")
        if not (self.K_max > self.K_min > 0):
            raise ConfigError("sweep window needs K_max > K_min > 0")
        if self.steps < 2:
            raise ConfigError("steps must be >= 2")
        return self.K_min, self.K_max, self.steps


_PARSERS = {
    "eta1": parse_number, "kappa1": parse_number, "eta2": parse_number, "kappa2": parse_number,
    "L": parse_number, "K_min": parse_number, "K_max": parse_number, "steps": parse_int,
    "K_target": parse_number, "max_solutions": parse_int, "n0": parse_number, "mode": parse_int,
    "n": parse_int, "pt": parse_bool, "residual": str, "seed_only": parse_bool, "out": str,
    "format": str,
}
assert set(_PARSERS) == {f.name for f in fields(RunConfig)}


def read_config_file(path: str) -> dict[str, str]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    raw = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        if key not in _PARSERS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        raw[key] = value.strip()
    return raw


def build_config(args: argparse.Namespace) -> RunConfig:
    raw = read_config_file(args.config) if args.config else {}
    for key in _PARSERS:
        v = getattr(args, key, None)
        if v is not None:
            raw[key] = v
    cfg = RunConfig()
    for key, value in raw.items():
        setattr(cfg, key, _PARSERS[key](value))
    if cfg.format not in (None, "csv", "records"):
        raise ConfigError(f"format must be csv or records, got {cfg.format!r}")
    if cfg.residual not in ("ss", "cpa"):
        raise ConfigError("residual must be ss or cpa")
    return cfg


@contextmanager
def _output(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
        return
    try:
        fh = open(path, "w", newline="")
    except OSError as exc:
        raise ConfigError(f"cannot write {path}: {exc}") from None
    with fh:
        yield fh


def _emit(rows: list[dict], columns: list[str], cfg: RunConfig, default: str, name: str) -> None:
    fmt = cfg.format or default
    with _output(cfg.out) as fh:
        if fmt == "csv":
            write_csv(rows, columns, fh)
        else:
            write_records(rows, fh, name)


# --------------------------------------------------------------------------
# commands


def spectrum_rows(slab: BilayerSlab, K_min: float, K_max: float, steps: int) -> list[dict]:
    rows = []
    for i in range(steps):
        K = K_min + (K_max - K_min) * i / (steps - 1)
        M = transfer_matrix(slab, K)
        sc = M.scale
        row = {
            "K": K,
            "lambda_over_L": lambda_over_L(K),
            "abs_m11_scaled": abs(M.m11) / sc,
            "abs_m22_scaled": abs(M.m22) / sc,
            "det_defect": M.det_defect,
        }
        try:
            amp = scattering(M)
            row.update(T2=amp.T2, Rl2=amp.Rl2, Rr2=amp.Rr2)
        except ArithmeticError:
            row.update(T2=math.inf, Rl2=math.inf, Rr2=math.inf)
        if slab.L is not None:
            row["lambda_um"] = slab.L * lambda_over_L(K)
        rows.append(row)
    return rows


def cmd_spectrum(cfg: RunConfig) -> int:
    slab = cfg.slab()
    rows = spectrum_rows(slab, *cfg.window())
    cols = SPECTRUM_COLUMNS + (["lambda_um"] if slab.L is not None else [])
    _emit(rows, cols, cfg, "csv", "sample")
    return EXIT_OK


def cmd_scan_lasing(cfg: RunConfig) -> int:
    cands = scan_lasing(cfg.slab(), *cfg.window(), residual=cfg.residual)
    rows = sorted(({"K": c.K, "depth": c.depth} for c in cands), key=lambda r: (r["K"], r["depth"]))
    _emit(rows, ["K", "depth"], cfg, "csv", "minimum")
    return EXIT_OK


def cmd_find_selfdual(cfg: RunConfig) -> int:
    cfg.require("eta1", "eta2")
    if cfg.K_target <= 0:
        raise ConfigError("K_target must be positive")
    try:
        result = find_selfdual(cfg.eta1, cfg.eta2, cfg.K_target, cfg.max_solutions)
    except NearPTError as exc:
        print(f"error: {exc}; run 'find-pt' with n0 and mode instead", file=sys.stderr)
        return EXIT_USAGE
    if not result.solutions:
        print(f"no convergent seed; best residual {result.best_residual:.3e}", file=sys.stderr)
        return EXIT_FAIL
    sols = sorted(result.solutions, key=lambda s: (s.K, s.residual_ss + s.residual_cpa))
    recs = [solution_record(s) for s in sols]
    _emit(recs, list(recs[0]), cfg, "records", "solution")
    return EXIT_OK


def cmd_find_pt(cfg: RunConfig) -> int:
    cfg.require("n0", "mode")
    try:
        sol = pt_special_case(cfg.n0, cfg.mode)
    except ConvergenceError as exc:
        print(f"no convergence: {exc}", file=sys.stderr)
        return EXIT_FAIL
    rep = pt_diagnostics(sol.slab, sol.K)
    rec = solution_record(sol)
    rec.update(
        kappa_sum=sol.n1.kappa + sol.n2.kappa,
        pt_re_m12=rep.re_m12,
        pt_re_m21=rep.re_m21,
        pt_m11_minus_conj_m22=rep.m11_minus_conj_m22,
        pt_phase_left=rep.phase_left,
        pt_phase_right=rep.phase_right,
        pt_continuity_sign=rep.continuity_sign,
        pt_continuity_residual=rep.continuity_residual,
    )
    _emit([rec], list(rec), cfg, "records", "solution")
    return EXIT_OK if sol.converged else EXIT_FAIL


def cmd_verify_table1(cfg: RunConfig) -> int:
    reports = verify_table1(seed_only=cfg.seed_only)
    with _output(cfg.out) as fh:
        fh.write(format_report(reports) + "\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def dof_text(n: int, pt: bool) -> str:
    b = dof_breakdown(n, pt)
    label = "PT-symmetric" if pt else "non-PT"
    line = (
        f"n = {n}, {label}: real parameters {b.total}, constraints {b.constraints}, "
        f"degrees of freedom {b.free}"
    )
    return line + (" (overdetermined)" if b.overdetermined else "")


def cmd_dof(cfg: RunConfig) -> int:
    cfg.require("n")
    flags = [cfg.pt] if cfg.pt is not None else [True, False]
    with _output(cfg.out) as fh:
        for pt in flags:
            fh.write(dof_text(cfg.n, pt) + "\n")
    return EXIT_OK


COMMANDS = {
    "spectrum": cmd_spectrum,
    "find-selfdual": cmd_find_selfdual,
    "find-pt": cmd_find_pt,
    "scan-lasing": cmd_scan_lasing,
    "verify-table1": cmd_verify_table1,
    "dof": cmd_dof,
}


def _common_flags(default) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=default, help="key = value settings file")
    for key in _PARSERS:
        if key != "seed_only":
            common.add_argument(f"--{key}", default=default, metavar="VALUE")
    common.add_argument("--seed-only", dest="seed_only", action="store_const", const="true",
                        default=default, help="verify-table1: check the analytic seeds only")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cpalaser", parents=[_common_flags(None)],
        description="Two-layer slab scattering, spectral singularities and CPA-laser points.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    # SUPPRESS so a flag given before the subcommand is not reset by the subparser
    per_command = _common_flags(argparse.SUPPRESS)
    for name in COMMANDS:
        sub.add_parser(name, parents=[per_command])
    return parser


_NUMBER_RE = re.compile(r"^-[0-9.]")


def _join_negative_values(argv: list[str]) -> list[str]:
    # argparse reads "-2e-3" as an option; glue such values to their flag
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if (
            tok.startswith("--") and "=" not in tok and tok[2:] in _PARSERS
            and i + 1 < len(argv) and _NUMBER_RE.match(argv[i + 1])
        ):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_join_negative_values(sys.argv[1:] if argv is None else list(argv)))
    try:
        cfg = build_config(args)
        return COMMANDS[args.command](cfg)
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
