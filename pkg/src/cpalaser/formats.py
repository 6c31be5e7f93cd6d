"""Text output: CSV tables and ``key = value`` solution records.

Floats are written in scientific notation with 12 significant digits and a
``.`` decimal separator regardless of locale.
"""

from __future__ import annotations

import csv
import io
import math
import re
from typing import Iterable, Mapping

from .optics import ComplexIndex
from .solver import ApproxSeed, SelfDualSolution

SIG_DIGITS = 12

_INT_RE = re.compile(r"^[+-]?\d+$")
_SIGNS_RE = re.compile(r"^([+-]1)( [+-]1)+$")


def fmt_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return f"{v:.{SIG_DIGITS - 1}e}"
    if isinstance(v, tuple):
        return " ".join(f"{x:+d}" for x in v)
    return str(v)


def parse_value(text: str):
    text = text.strip()
    if text in ("true", "false"):
        return text == "true"
    if _INT_RE.match(text):
        return int(text)
    if _SIGNS_RE.match(text):
        return tuple(int(x) for x in text.split())
    try:
        return float(text)
    except ValueError:
        return text


def write_csv(rows: Iterable[Mapping], columns: list[str], stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([fmt_value(row[c]) for c in columns])


def read_csv(stream) -> list[dict]:
    return [{k: parse_value(v) for k, v in row.items()} for row in csv.DictReader(stream)]


def write_records(records: Iterable[Mapping], stream, name: str = "record") -> None:
    for i, rec in enumerate(records, 1):
        if i > 1:
            stream.write("\n")
        stream.write(f"[{name} {i}]\n")
        for k, v in rec.items():
            stream.write(f"{k} = {fmt_value(v)}\n")


def parse_records(text: str) -> list[dict]:
    records: list[dict] = []
    current = None
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            current = {}
            records.append(current)
            continue
        if current is None:
            raise ValueError(f"field outside a record: {line!r}")
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"malformed record line: {line!r}")
        current[key.strip()] = parse_value(value)
    return records


def records_to_text(records, name: str = "record") -> str:
    buf = io.StringIO()
    write_records(records, buf, name)
    return buf.getvalue()


_SEED_FIELDS = (
    "eta1", "eta2", "K_target", "m_plus", "m_minus", "sign_branch", "kappa_plus",
    "kappa_minus", "phi_plus", "phi_minus", "eta1_start", "eta2_start", "residual_estimate",
)


def solution_record(sol: SelfDualSolution) -> dict:
    rec = {
        "n1_eta": sol.n1.eta,
        "n1_kappa": sol.n1.kappa,
        "n2_eta": sol.n2.eta,
        "n2_kappa": sol.n2.kappa,
        "K": sol.K,
        "m_plus": sol.m_plus,
        "m_minus": sol.m_minus,
        "residual_ss": sol.residual_ss,
        "residual_cpa": sol.residual_cpa,
        "iterations": sol.iterations,
        "mode": sol.mode,
    }
    if sol.seed is not None:
        for f in _SEED_FIELDS:
            rec[f"seed_{f}"] = getattr(sol.seed, f)
        rec["seed_kappa1"] = sol.seed.kappa1
        rec["seed_kappa2"] = sol.seed.kappa2
    return rec


def solution_from_record(rec: Mapping) -> SelfDualSolution:
    seed = None
    if "seed_eta1" in rec:
        kw = {f: rec[f"seed_{f}"] for f in _SEED_FIELDS}
        seed = ApproxSeed(**kw)
    return SelfDualSolution(
        n1=ComplexIndex(rec["n1_eta"], rec["n1_kappa"]),
        n2=ComplexIndex(rec["n2_eta"], rec["n2_kappa"]),
        K=float(rec["K"]),
        m_plus=int(rec["m_plus"]),
        m_minus=int(rec["m_minus"]),
        residual_ss=float(rec["residual_ss"]),
        residual_cpa=float(rec["residual_cpa"]),
        iterations=int(rec["iterations"]),
        seed=seed,
        mode=str(rec["mode"]),
    )
