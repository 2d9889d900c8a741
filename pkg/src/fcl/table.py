"""Rectangular result tables with deterministic CSV serialization.

Every experiment emits its data as one table per observable. Floats are
written with 17 significant digits ('%.17g', '.' decimal, no locale), so
identical runs produce byte-identical files; non-finite cells use the
literal sentinels "inf" (diverged Loschmidt rate) and "nan" (undefined
winding at a critical coupling). Provenance (config hash, engine version)
goes into '#'-prefixed footer lines after the data, never timestamps.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

from .errors import InvalidArgumentError


def format_value(value) -> str:
    """One CSV cell: ints verbatim, floats as %.17g, inf/nan as literals."""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, str):
        if "," in value or "\n" in value:
            raise InvalidArgumentError(f"cell string {value!r} may not contain ',' or newline")
        return value
    if isinstance(value, int):
        return str(value)
    v = float(value)
    if math.isinf(v):
        return "-inf" if v < 0 else "inf"
    if math.isnan(v):
        return "nan"
    if v == 0.0:
        v = 0.0  # fold -0.0
    return "%.17g" % v


@dataclass(frozen=True)
class ResultTable:
    """Named columns, rows of numbers, and a provenance footer."""

    name: str
    columns: tuple[str, ...]
    rows: list[tuple]
    provenance: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if not self.columns:
            raise InvalidArgumentError("table needs at least one column")
        for c in self.columns:
            if "," in c or "\n" in c:
                raise InvalidArgumentError(f"invalid column name {c!r}")
        width = len(self.columns)
        for r in self.rows:
            if len(r) != width:
                raise InvalidArgumentError(
                    f"ragged row of width {len(r)} in table with {width} columns"
                )

    def write_csv(self, path: str | Path) -> Path:
        path = Path(path)
        lines = [",".join(self.columns)]
        lines += [",".join(format_value(v) for v in row) for row in self.rows]
        lines += [f"# {key}={val}" for key, val in sorted(self.provenance.items())]
        path.write_text("\n".join(lines) + "\n")
        return path

    def column(self, name: str) -> list:
        """One column as a list, by name."""
        try:
            i = self.columns.index(name)
        except ValueError:
            raise InvalidArgumentError(f"no column {name!r} in {self.columns}")
        return [row[i] for row in self.rows]


def read_csv(path: str | Path) -> ResultTable:
    """Parse a table written by write_csv (footer lines become provenance)."""
    lines = Path(path).read_text().splitlines()
    if not lines:
        raise InvalidArgumentError(f"{path}: empty table file")
    columns = tuple(lines[0].split(","))
    rows: list[tuple] = []
    provenance: dict[str, str] = {}
    for line in lines[1:]:
        if line.startswith("#"):
            key, _, val = line[1:].strip().partition("=")
            provenance[key] = val
            continue
        cells = []
        for cell in line.split(","):
            try:
                cells.append(float(cell))
            except ValueError:
                cells.append(cell)
        rows.append(tuple(cells))
    return ResultTable(name=Path(path).stem, columns=columns, rows=rows, provenance=provenance)
