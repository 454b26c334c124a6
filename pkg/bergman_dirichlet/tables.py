from __future__ import annotations

import csv
import io
import sys
from pathlib import Path
from typing import IO, Any, Dict, List, Union

from pydantic import BaseModel

from bergman_dirichlet.common import PYDANTIC_V2, OutputFormat


class Table(BaseModel):
    command: str
    params: Dict[str, Any]
    rows: List[Dict[str, Any]]
    summary: Dict[str, Any] = {}

    @property
    def columns(self) -> list[str]:
        if not self.rows:
            return []
        return list(self.rows[0].keys())


def format_cell(value: Any) -> str:
    # repr of a float is the shortest string that parses back to the same double
    if isinstance(value, float):
        return repr(float(value))
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def table_to_csv(table: Table) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([format_cell(row[column]) for column in table.columns])
    return buffer.getvalue()


def table_to_json(table: Table) -> str:
    if PYDANTIC_V2:
        return table.model_dump_json(indent=4)
    return table.json(indent=4)


def render(table: Table, output_format: Union[OutputFormat, str]) -> str:
    """`output_format` may also be the plain value, "csv" or "json"."""
    if OutputFormat(output_format) == OutputFormat.CSV:
        return table_to_csv(table)
    return table_to_json(table) + "\n"


def write_table(
    table: Table, output_format: Union[OutputFormat, str], file: Union[IO, Path, str, None] = None
) -> None:
    """Write to `file` (a path or an open text file), stdout when None."""
    text = render(table, output_format)
    if file is None:
        sys.stdout.write(text)
    elif isinstance(file, (str, Path)):
        with open(file, "w", encoding="utf8", newline="\n") as f:
            f.write(text)
    else:
        file.write(text)


def read_csv_rows(text: str) -> list[dict[str, str]]:
    return list(csv.DictReader(io.StringIO(text)))


def summary_lines(table: Table) -> list[str]:
    return [f"{key} = {format_cell(value)}" for key, value in table.summary.items()]
