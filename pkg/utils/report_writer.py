"""
Report Writer Module
Renders command reports as JSON or text and exports their row tables to CSV or Excel.
"""

import json
from typing import Any, Dict, List
import logging

import pandas as pd
from openpyxl import load_workbook

logger = logging.getLogger(__name__)

SCHEMA = "klr-report/1"


def make_report(command: str, config: Dict, datum: Any, ok: bool, **body) -> Dict:
    report = {"schema": SCHEMA, "command": command, "config": config, "datum": datum, "ok": ok}
    report.update(body)
    return report


def _cell(value: Any) -> Any:
    if isinstance(value, (dict, list, tuple)):
        return json.dumps(value, sort_keys=True)
    return value


class ReportWriter:
    """Writes reports in the formats accepted by --format."""

    def render(self, report: Dict, fmt: str = "json") -> str:
        if fmt == "json":
            return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False)
        if fmt == "text":
            return self._render_text(report)
        raise ValueError(f"Format {fmt} is written to a file, not rendered")

    def _render_text(self, report: Dict) -> str:
        lines = []
        for key in sorted(report):
            if key in ("rows", "config"):
                continue
            value = report[key]
            if isinstance(value, (dict, list)):
                value = json.dumps(value, sort_keys=True, ensure_ascii=False)
            lines.append(f"{key}: {value}")
        if report.get("rows"):
            lines.append("")
            lines.append(self.to_frame(report).to_string(index=False))
        return "\n".join(lines)

    def to_frame(self, report: Dict) -> pd.DataFrame:
        """Flatten the row list of a report; nested cells become JSON strings."""
        rows: List[Dict] = report.get("rows") or []
        return pd.DataFrame([{k: _cell(v) for k, v in row.items()} for row in rows])

    def config_frame(self, report: Dict) -> pd.DataFrame:
        config = report.get("config") or {}
        return pd.DataFrame({"setting": list(config), "value": [_cell(v) for v in config.values()]})

    def write(self, report: Dict, fmt: str, path: str) -> bool:
        """
        Write a report to path.

        Returns:
            bool: True if successful, False otherwise
        """
        try:
            if fmt in ("json", "text"):
                with open(path, 'w') as f:
                    f.write(self.render(report, fmt))
                    f.write("\n")
            elif fmt == "csv":
                self.to_frame(report).to_csv(path, index=False)
            elif fmt == "xlsx":
                with pd.ExcelWriter(path, engine="openpyxl") as writer:
                    self.to_frame(report).to_excel(writer, sheet_name="rows", index=False)
                    self.config_frame(report).to_excel(writer, sheet_name="config", index=False)
            else:
                logger.warning(f"Unknown report format: {fmt}")
                return False
            logger.info(f"Report written to '{path}' as {fmt}")
            return True
        except Exception as e:
            logger.error(f"Error writing report: {str(e)}")
            return False

    @staticmethod
    def sheet_names(path: str) -> List[str]:
        try:
            return load_workbook(path, read_only=True).sheetnames
        except Exception as e:
            raise ValueError(f"Failed to read sheets: {str(e)}")
