"""CSV and JSON serialization of Robin reports and bound reports."""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable, TextIO

from .asymptotics import BoundReport
from .functional import RobinReport
from .interval import Interval, decimal_bounds

ROBIN_COLUMNS = ("n_or_factorization", "m", "log_n", "loglog_n", "sigma_over_n_lo",
                 "sigma_over_n_hi", "l_lo", "l_hi", "d_sign", "epsilon_m")
BOUND_COLUMNS = ("claim", "domain_lo", "domain_hi", "margin_lo", "margin_hi", "pass")
DIGITS = 20


def _point(x: Interval | None, digits: int) -> str:
    # single-column quantities are written as the midpoint
    if x is None:
        return ""
    lo, hi = decimal_bounds(x, digits)
    return lo if lo == hi else decimal_bounds(Interval.exact(x.mid), digits)[0]


def robin_row(r: RobinReport, digits: int = DIGITS) -> dict:
    s_lo, s_hi = decimal_bounds(r.sigma_over_n, digits)
    l_lo, l_hi = decimal_bounds(r.little_l, digits)
    return {
        "n_or_factorization": str(r.factorization),
        "m": r.factorization.m,
        "log_n": _point(r.log_n, digits),
        "loglog_n": _point(r.loglog_n, digits),
        "sigma_over_n_lo": s_lo,
        "sigma_over_n_hi": s_hi,
        "l_lo": l_lo,
        "l_hi": l_hi,
        "d_sign": r.d_sign,
        "epsilon_m": _point(r.epsilon_m, digits),
    }


def bound_row(b: BoundReport, digits: int = DIGITS) -> dict:
    lo, hi = decimal_bounds(b.margin, digits) if b.margin is not None else ("", "")
    return {
        "claim": b.claim,
        "domain_lo": b.domain_lo,
        "domain_hi": b.domain_hi,
        "margin_lo": lo,
        "margin_hi": hi,
        "pass": "true" if b.passed else "false",
    }


def _rows(items, columns, digits):
    to_row = robin_row if columns is ROBIN_COLUMNS else bound_row
    return [to_row(x, digits) for x in items]


def write_csv(items: Iterable, columns=ROBIN_COLUMNS, out: TextIO | None = None, *,
              precision_bits: int = 128, digits: int = DIGITS) -> str:
    """Write a header comment, a header row and one row per item; returns the text."""
    buf = io.StringIO()
    buf.write(f"# precision_bits={precision_bits}\n")
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    w.writeheader()
    w.writerows(_rows(items, columns, digits))
    text = buf.getvalue()
    if out is not None:
        out.write(text)
    return text


def write_json(items: Iterable, columns=ROBIN_COLUMNS, out: TextIO | None = None, *,
               precision_bits: int = 128, digits: int = DIGITS, extra: dict | None = None) -> str:
    doc = {"precision_bits": precision_bits, "rows": _rows(items, columns, digits)}
    if extra:
        doc.update(extra)
    text = json.dumps(doc, indent=2) + "\n"
    if out is not None:
        out.write(text)
    return text


def read_csv(text: str) -> tuple[int | None, list[dict]]:
    """Parse output of :func:`write_csv`; returns (precision_bits, rows)."""
    bits = None
    lines = text.splitlines()
    if lines and lines[0].startswith("# precision_bits="):
        bits = int(lines[0].split("=", 1)[1])
        lines = lines[1:]
    return bits, list(csv.DictReader(lines))
