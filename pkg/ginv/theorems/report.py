"""Rendering suite reports."""

import json
from typing import List

from ..config import OutputFormat
from .common import SuiteReport, rounded


def render_json(report: SuiteReport, timing: bool = False) -> str:
    """Renders a report as JSON, with a trailing newline."""
    return json.dumps(report.to_dict(timing), indent=2) + "\n"


def render_markdown(report: SuiteReport, timing: bool = False) -> str:
    """Renders a report as a markdown table, followed by the failing and inconclusive trials.

    Examples:
    >>> from ginv.config import Tolerances
    >>> print(render_markdown(SuiteReport(seed=7, tolerances=Tolerances())), end="")
    # Suite report
    <BLANKLINE>
    seed: 7; passed: true; trials: 0; violations: 0; inconclusive: 0
    <BLANKLINE>
    | theorem_id | trials | violations | inconclusive | worst_residual |
    |---|---|---|---|---|
    """
    columns = ["theorem_id", "trials", "violations", "inconclusive", "worst_residual"]
    if timing:
        columns.append("seconds")
    seed = "-" if report.seed is None else str(report.seed)
    lines: List[str] = [
        "# Suite report",
        "",
        f"seed: {seed}; passed: {str(report.passed).lower()}; trials: {report.trials}; "
        f"violations: {report.violations}; inconclusive: {report.inconclusive}",
        "",
        "| " + " | ".join(columns) + " |",
        "|" + "---|" * len(columns),
    ]
    for summary in report.theorems:
        row = summary.to_dict(timing)
        lines.append("| " + " | ".join(str(row[column]) for column in columns) + " |")

    for title, trials in (("Failures", report.failures), ("Inconclusive", report.inconclusive_trials)):
        if not trials:
            continue
        lines.extend(["", f"## {title}", ""])
        for trial in trials:
            lines.append(
                f"- {trial.theorem_id} seed {trial.seed} ({trial.digest}): {trial.detail} "
                f"[worst residual {rounded(trial.worst_residual)}]"
            )
    return "\n".join(lines) + "\n"


def render(report: SuiteReport, output_format: OutputFormat, timing: bool = False) -> str:
    """Renders a report in the requested format."""
    match output_format:
        case OutputFormat.JSON:
            return render_json(report, timing)
        case OutputFormat.MARKDOWN:
            return render_markdown(report, timing)
