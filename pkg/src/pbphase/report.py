"""Scan rows and their CSV / JSON serialisation.

Floats are written as ``%.16e`` (17 significant digits, signed exponent),
so identical inputs give byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields
from typing import Iterable, Sequence

import numpy as np

from . import infinite as inf
from .finite import FiniteSpace
from .limits import LimitEstimate, geometric_schedule
from .linalg import DEFAULT_TOL, commutator
from .verify import VerifyOutcome

__all__ = [
    "ScanConfig",
    "ReportRow",
    "LimitSummary",
    "finite_limit_scan",
    "infinite_limit_scan",
    "commutator_table",
    "format_float",
    "rows_to_csv",
    "rows_to_json",
    "verify_to_csv",
    "verify_to_json",
    "commutator_to_csv",
    "commutator_to_json",
    "CSV_HEADER",
]

CSV_HEADER = "route,l,s,sigma,n,k,element_re,element_im,normalized_re,normalized_im"


def format_float(x: float | None) -> str:
    if x is None:
        return ""
    x = float(x)
    if x == 0.0:
        x = 0.0  # drop the sign of -0.0
    return f"{x:.16e}"


@dataclass(frozen=True)
class ScanConfig:
    l_values: tuple[int, ...] = ()
    s_start: float = 1e-2
    s_factor: float = 0.5
    s_steps: int = 20
    n: int | None = None
    k: int | None = None
    tol: float = DEFAULT_TOL

    def __post_init__(self) -> None:
        if any(l < 0 for l in self.l_values):
            raise ValueError("all l values must be nonnegative")
        # validates s_start, s_factor, s_steps
        geometric_schedule(self.s_start, self.s_factor, self.s_steps)

    @property
    def schedule(self) -> tuple[float, ...]:
        return geometric_schedule(self.s_start, self.s_factor, self.s_steps)


@dataclass(frozen=True)
class ReportRow:
    """One scan sample. ``s == 0`` marks the extrapolated-limit row.

    ``element`` is the shift quotient ``<n|R|k> / (i s)``; ``normalized``
    divides by the shift the column actually experiences (``sigma`` for the
    top state in finite space), which is what converges.
    """

    route: str
    l: int | None
    s: float
    sigma: float | None
    n: int
    k: int
    element: complex | None
    normalized: complex


@dataclass(frozen=True)
class LimitSummary:
    route: str
    l: int | None
    n: int
    k: int
    estimate: LimitEstimate


def _finite_rows(l: int, n: int, k: int, schedule: Sequence[float]) -> tuple[list[ReportRow], LimitSummary]:
    F = FiniteSpace(l)
    top = k == l
    rows = [
        ReportRow(
            "finite",
            l,
            s,
            F.sigma(s) if top else None,
            n,
            k,
            F.naive_quotient(n, k, s),
            F.normalized_quotient(n, k, s),
        )
        for s in schedule
    ]
    est = F.normalized_limit(n, k, schedule)
    rows.append(ReportRow("finite", l, 0.0, -float(F.d) if top else None, n, k, None, est.value))
    return rows, LimitSummary("finite", l, n, k, est)


def _map(fn, items, workers: int):
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def finite_limit_scan(config: ScanConfig, workers: int = 1) -> tuple[list[ReportRow], list[LimitSummary]]:
    if config.n is None or config.k is None:
        raise ValueError("finite-limit needs both n and k")
    for l in config.l_values:
        for label in (config.n, config.k):
            if not -l <= label <= l:
                raise ValueError(f"label {label} outside [-{l}, {l}] for l={l}")
    schedule = config.schedule
    results = _map(
        lambda l: _finite_rows(l, config.n, config.k, schedule), sorted(set(config.l_values)), workers
    )
    rows = [r for chunk, _ in results for r in chunk]
    return rows, [summary for _, summary in results]


def infinite_limit_scan(config: ScanConfig, workers: int = 1) -> tuple[list[ReportRow], list[LimitSummary]]:
    if config.n is None or config.k is None:
        raise ValueError("infinite-limit needs both n and k")
    n, m = config.n, config.k
    schedule = config.schedule

    def sample(s: float) -> ReportRow:
        q = inf.r_element_infinite(n, m, s) / (1j * s)
        return ReportRow("infinite", None, s, None, n, m, q, q)

    rows = _map(sample, schedule, workers)
    est = inf.canonical_limit_element(n, m, schedule)
    rows.append(ReportRow("infinite", None, 0.0, None, n, m, None, est.value))
    return rows, [LimitSummary("infinite", None, n, m, est)]


def commutator_table(l: int) -> tuple[np.ndarray, np.ndarray, bool]:
    """Closed-form commutator, per-entry deviation from the direct product, degeneracy flag."""
    F = FiniteSpace(l)
    table = F.commutator_closed_form()
    direct = commutator(F.phase_operator(), F.lz_operator())
    return table.matrix, np.abs(table.matrix - direct), table.degenerate


def _int(v: int | None) -> str:
    return "" if v is None else str(int(v))


def _csv_fields(row: ReportRow) -> list[str]:
    el = row.element
    return [
        row.route,
        _int(row.l),
        format_float(row.s),
        format_float(row.sigma),
        _int(row.n),
        _int(row.k),
        format_float(None if el is None else el.real),
        format_float(None if el is None else el.imag),
        format_float(row.normalized.real),
        format_float(row.normalized.imag),
    ]


def rows_to_csv(rows: Iterable[ReportRow]) -> str:
    lines = [CSV_HEADER]
    lines.extend(",".join(_csv_fields(r)) for r in rows)
    return "\n".join(lines) + "\n"


def _json_value(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format_float(v)
    return json.dumps(v)


def _json_object(pairs: Sequence[tuple[str, object]], indent: str = "    ") -> str:
    body = ",\n".join(f"{indent}  {json.dumps(key)}: {_json_value(val)}" for key, val in pairs)
    return f"{indent}{{\n{body}\n{indent}}}"


def _json_list(objects: Sequence[Sequence[tuple[str, object]]]) -> str:
    if not objects:
        return "[]"
    return "[\n" + ",\n".join(_json_object(o) for o in objects) + "\n  ]"


def _row_pairs(row: ReportRow) -> list[tuple[str, object]]:
    el = row.element
    return [
        ("route", row.route),
        ("l", row.l),
        ("s", row.s),
        ("sigma", row.sigma),
        ("n", row.n),
        ("k", row.k),
        ("element_re", None if el is None else el.real),
        ("element_im", None if el is None else el.imag),
        ("normalized_re", row.normalized.real),
        ("normalized_im", row.normalized.imag),
    ]


def _limit_pairs(lim: LimitSummary) -> list[tuple[str, object]]:
    est = lim.estimate
    return [
        ("route", lim.route),
        ("l", lim.l),
        ("n", lim.n),
        ("k", lim.k),
        ("value_re", est.value.real),
        ("value_im", est.value.imag),
        ("residual", est.residual),
        ("observed_order", est.observed_order),
    ]


def rows_to_json(rows: Sequence[ReportRow], limits: Sequence[LimitSummary]) -> str:
    return (
        "{\n"
        f'  "rows": {_json_list([_row_pairs(r) for r in rows])},\n'
        f'  "limits": {_json_list([_limit_pairs(x) for x in limits])}\n'
        "}\n"
    )


VERIFY_HEADER = ",".join(f.name if f.name != "passed" else "status" for f in fields(VerifyOutcome))


def verify_to_csv(outcomes: Iterable[VerifyOutcome]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(VERIFY_HEADER.split(","))
    for o in outcomes:
        writer.writerow([o.check_name, o.status, format_float(o.worst_deviation), o.context])
    return buf.getvalue()


def verify_to_json(outcomes: Sequence[VerifyOutcome]) -> str:
    objs = [
        [
            ("check_name", o.check_name),
            ("status", o.status),
            ("worst_deviation", o.worst_deviation),
            ("context", o.context),
        ]
        for o in outcomes
    ]
    return "{\n" f'  "checks": {_json_list(objs)}\n' "}\n"


COMMUTATOR_HEADER = "l,m_row,m_col,value_re,value_im,deviation"


def _commutator_entries(l: int, matrix: np.ndarray, deviation: np.ndarray):
    labels = range(-l, l + 1)
    for i, mr in enumerate(labels):
        for j, mc in enumerate(labels):
            yield mr, mc, complex(matrix[i, j]), float(deviation[i, j])


def commutator_to_csv(l: int, matrix: np.ndarray, deviation: np.ndarray) -> str:
    lines = [COMMUTATOR_HEADER]
    for mr, mc, v, dev in _commutator_entries(l, matrix, deviation):
        lines.append(f"{l},{mr},{mc},{format_float(v.real)},{format_float(v.imag)},{format_float(dev)}")
    return "\n".join(lines) + "\n"


def commutator_to_json(l: int, matrix: np.ndarray, deviation: np.ndarray, degenerate: bool) -> str:
    objs = [
        [("m_row", mr), ("m_col", mc), ("value_re", v.real), ("value_im", v.imag), ("deviation", dev)]
        for mr, mc, v, dev in _commutator_entries(l, matrix, deviation)
    ]
    return (
        "{\n"
        f'  "l": {l},\n'
        f'  "degenerate": {_json_value(degenerate)},\n'
        f'  "max_deviation": {format_float(float(np.max(deviation)))},\n'
        f'  "entries": {_json_list(objs)}\n'
        "}\n"
    )
