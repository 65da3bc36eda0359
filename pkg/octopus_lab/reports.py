"""Report emission: deterministic JSON, aligned text and CSV."""

import csv
import io
import json
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional

from .verify import ExperimentReport, TrialRecord

FORMATS = ["json", "text", "csv"]

TABLE1_COLUMNS = [("alpha", "alpha"), ("f", "f_alpha"), ("chi_31", "chi(3,1)"), ("chi_22", "chi(2,2)"), ("X", "X^alpha")]

TABLE2_COLUMNS = [
    ("alpha", "alpha"),
    ("beta", "beta"),
    ("f", "f_alpha"),
    ("chi_311", "chi(3,1,1)"),
    ("chi_221", "chi(2,2,1)"),
    ("X_beta", "X^beta"),
    ("F", "F_alpha,beta"),
    ("Y", "Y^alpha"),
]


def _cell(value: Any) -> str:
    if isinstance(value, list):
        return "(" + ",".join(str(v) for v in value) + ")"
    if isinstance(value, dict) and "num" in value:
        return f"{value['num']}/{value['den']}"
    return str(value)


def report_dict(
    reports: List[ExperimentReport], config: Optional[Dict[str, Any]] = None, include_timestamp: bool = False
) -> Dict[str, Any]:
    """Everything a run emits: the resolved config plus each report."""
    data: Dict[str, Any] = {
        "config": config or {},
        "passed": all(r.passed for r in reports),
        "reports": [r.to_dict() for r in reports],
    }
    if include_timestamp:
        data["timestamp"] = datetime.now(timezone.utc).isoformat()
    return data


def to_json(
    reports: List[ExperimentReport], config: Optional[Dict[str, Any]] = None, include_timestamp: bool = False
) -> str:
    """Sorted-key JSON; identical input gives identical bytes unless a
    timestamp is requested."""
    return json.dumps(report_dict(reports, config, include_timestamp), indent=2, sort_keys=True) + "\n"


def _table_text(rows: List[Dict[str, Any]], columns) -> List[str]:
    cells = [[header for _, header in columns]]
    cells += [[_cell(row[key]) for key, _ in columns] for row in rows]
    widths = [max(len(line[k]) for line in cells) for k in range(len(columns))]
    lines = []
    for index, line in enumerate(cells):
        lines.append("  ".join(c.rjust(w) for c, w in zip(line, widths)).rstrip())
        if index == 0:
            lines.append("  ".join("-" * w for w in widths))
    return lines


def _trial_text(record: TrialRecord) -> List[str]:
    status = "ok" if record.passed else "FAILED"
    lines = [f"  trial {record.index}: {status}"]
    for check in record.checks:
        if not check.passed:
            lines.append(f"    {check.name}: {_cell(check.to_dict()['lhs'])} vs {_cell(check.to_dict()['rhs'])}")
    return lines


def to_text(reports: List[ExperimentReport], config: Optional[Dict[str, Any]] = None) -> str:
    """Human-readable summary. The X^alpha and F/Y^alpha tables are laid out as aligned columns."""
    lines = []
    if config:
        lines.append("config: " + ", ".join(f"{k}={v}" for k, v in sorted(config.items()) if v is not None))
    for report in reports:
        lines.append("")
        lines.append(f"{report.experiment}: {'PASS' if report.passed else 'FAIL'}")
        lines.append("  " + ", ".join(f"{k}={v}" for k, v in sorted(report.parameters.items())))
        if report.experiment == "table1":
            lines += _table_text(report.summary["rows"], TABLE1_COLUMNS)
            lines.append(f"I(X-hat) = {report.summary['trivial_value']}")
        elif report.experiment == "table2":
            lines += _table_text(report.summary["rows"], TABLE2_COLUMNS)
            lines.append(f"I(Y-hat) = {report.summary['trivial_value']}")
        else:
            for key, value in sorted(report.summary.items()):
                if not isinstance(value, (dict, list)):
                    lines.append(f"  {key}: {value}")
            failures = report.failures
            lines.append(f"  trials: {len(report.trials)}, failed: {len(failures)}")
            for record in failures:
                lines += _trial_text(record)
    return "\n".join(lines).lstrip("\n") + "\n"


def to_csv(reports: List[ExperimentReport]) -> str:
    """CSV for the tables reports, one block per table.

    Raises:
        ValueError: If a report has no tabular form.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    for report in reports:
        if report.experiment == "table1":
            columns = TABLE1_COLUMNS
        elif report.experiment == "table2":
            columns = TABLE2_COLUMNS
        else:
            raise ValueError(f"CSV output is only available for tables, not {report.experiment}")
        writer.writerow([header for _, header in columns])
        for row in report.summary["rows"]:
            writer.writerow([_cell(row[key]) for key, _ in columns])
    return buffer.getvalue()


def write_output(text: str, out: Optional[str]) -> None:
    """Write to the --out path, or stdout when out is None."""
    if out is None:
        print(text, end="")
        return
    Path(out).write_text(text)


def witness_path(experiment: str, seed: int, index: int, out: Optional[str] = None) -> Path:
    """<experiment>_witness_<seed>_<trial>.json next to --out, or in the
    working directory."""
    directory = Path(out).parent if out else Path.cwd()
    return directory / f"{experiment}_witness_{seed}_{index}.json"


def write_witness(experiment: str, record: TrialRecord, seed: int, out: Optional[str] = None) -> Path:
    """Persist the data of a failed trial so it can be rechecked."""
    path = witness_path(experiment, seed, record.index, out)
    payload = {"experiment": experiment, "seed": seed, "trial": record.to_dict()}
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return path
