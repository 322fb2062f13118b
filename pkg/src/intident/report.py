"""Report assembly and rendering (JSON, CSV, plain text).

Reports are byte-reproducible for identical configurations: records arrive in
a stable order, floats serialize via their shortest round-trip representation
and the wall-clock time is kept out of the canonical payload (it is echoed on
stderr by the CLI, and included only when the run asks for timing).
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field

from . import __version__
from .verdicts import VerificationRecord

__all__ = ["Report", "render_report", "REPORT_FORMATS"]

REPORT_FORMATS = ("json", "csv", "text")

_RECORD_FIELDS = (
    "identity", "route", "point", "lhs", "rhs", "abs_diff", "rel_diff",
    "tol_abs", "tol_rel", "verdict", "lhs_err", "lhs_evals", "rhs_err",
    "rhs_evals", "detail",
)


@dataclass
class Report:
    config: dict
    records: list[VerificationRecord]
    wall_time_s: float = 0.0
    version: str = __version__

    @property
    def summary(self) -> dict[str, int]:
        counts = {"pass": 0, "fail": 0, "inconclusive": 0}
        for rec in self.records:
            counts[rec.verdict] = counts.get(rec.verdict, 0) + 1
        return counts

    @property
    def exit_status(self) -> int:
        s = self.summary
        if s["fail"]:
            return 1
        if s["inconclusive"]:
            return 2
        return 0

    def to_dict(self, include_timing: bool = False) -> dict:
        out = {
            "version": self.version,
            "config": self.config,
            "records": [_record_dict(r) for r in self.records],
            "summary": self.summary,
        }
        if include_timing:
            out["wall_time_s"] = self.wall_time_s
        return out


def _record_dict(rec: VerificationRecord) -> dict:
    out = {}
    for name in _RECORD_FIELDS:
        val = getattr(rec, name)
        if name == "point":
            val = dict(val)
        out[name] = val
    return out


def _fmt(x) -> str:
    return repr(x) if isinstance(x, float) else str(x)


def _point_str(point: dict) -> str:
    return ";".join(f"{k}={_fmt(v)}" for k, v in point.items())


def _render_json(report: Report, include_timing: bool) -> str:
    return json.dumps(report.to_dict(include_timing), indent=2) + "\n"


def _render_csv(report: Report, include_timing: bool) -> str:
    buf = io.StringIO()
    buf.write(",".join(_RECORD_FIELDS) + "\n")
    for rec in report.records:
        row = []
        for name in _RECORD_FIELDS:
            val = getattr(rec, name)
            if name == "point":
                row.append('"' + _point_str(val) + '"')
            elif name == "detail":
                row.append('"' + str(val).replace('"', "'") + '"')
            else:
                row.append(_fmt(val))
        buf.write(",".join(row) + "\n")
    s = report.summary
    buf.write(f"# version={report.version} pass={s['pass']} fail={s['fail']} "
              f"inconclusive={s['inconclusive']}\n")
    if include_timing:
        buf.write(f"# wall_time_s={report.wall_time_s!r}\n")
    return buf.getvalue()


def _render_text(report: Report, include_timing: bool) -> str:
    buf = io.StringIO()
    buf.write(f"intident {report.version}\n")
    cfg = " ".join(f"{k}={v}" for k, v in report.config.items())
    buf.write(f"config: {cfg}\n\n")
    header = (f"{'identity':<9} {'route':<12} {'point':<28} "
              f"{'lhs':<24} {'rhs':<24} {'abs_diff':<12} verdict\n")
    buf.write(header)
    buf.write("-" * len(header) + "\n")
    for rec in report.records:
        buf.write(
            f"{rec.identity:<9} {rec.route:<12} {_point_str(rec.point):<28} "
            f"{rec.lhs!r:<24} {rec.rhs!r:<24} {rec.abs_diff:<12.3e} "
            f"{rec.verdict}\n"
        )
        if rec.detail:
            buf.write(f"          note: {rec.detail}\n")
    s = report.summary
    buf.write(f"\nsummary: {s['pass']} pass, {s['fail']} fail, "
              f"{s['inconclusive']} inconclusive\n")
    if include_timing:
        buf.write(f"wall time: {report.wall_time_s:.3f} s\n")
    return buf.getvalue()


def render_report(report: Report, fmt: str, include_timing: bool = False) -> str:
    """Render a report in one of ``json``, ``csv`` or ``text``."""
    if fmt == "json":
        return _render_json(report, include_timing)
    if fmt == "csv":
        return _render_csv(report, include_timing)
    if fmt == "text":
        return _render_text(report, include_timing)
    raise ValueError(f"unknown report format {fmt!r}")
