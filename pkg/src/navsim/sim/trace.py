"""Numeric time-series tables and their lossless CSV form."""

from dataclasses import dataclass

import numpy as np

from navsim.errors import InvalidInput


def format_value(v: float) -> str:
    """17-significant-digit decimal form; round-trips any 64-bit float exactly."""
    return f"{v:.17g}"


@dataclass(frozen=True)
class TraceTable:
    """Column-named rows of reals; the first column is ``t`` and strictly increases."""

    columns: tuple[str, ...]
    rows: np.ndarray

    def __post_init__(self):
        columns = tuple(str(c) for c in self.columns)
        rows = np.array(self.rows, dtype=float)
        if rows.ndim != 2 or rows.shape[1] != len(columns):
            raise InvalidInput(
                f"rows shape {rows.shape} does not match {len(columns)} columns"
            )
        if not columns or columns[0] != "t":
            raise InvalidInput("first column must be named 't'")
        t = rows[:, 0]
        if t.size > 1 and not np.all(np.diff(t) > 0):
            raise InvalidInput("t column must be strictly increasing")
        rows.setflags(write=False)
        object.__setattr__(self, "columns", columns)
        object.__setattr__(self, "rows", rows)

    def __len__(self) -> int:
        return self.rows.shape[0]

    def column(self, name: str) -> np.ndarray:
        try:
            return self.rows[:, self.columns.index(name)]
        except ValueError:
            raise InvalidInput(f"no column named {name!r}") from None

    def to_csv(self) -> str:
        lines = [",".join(self.columns)]
        for row in self.rows:
            lines.append(",".join(format_value(v) for v in row))
        return "\n".join(lines) + "\n"


def write_trace_csv(table: TraceTable, path) -> None:
    """UTF-8 CSV with a header row, 17-significant-digit values, LF endings."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(table.to_csv())


def read_trace_csv(path) -> TraceTable:
    """Parse a CSV written by write_trace_csv back into a TraceTable."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = [line for line in fh.read().split("\n") if line]
    if not lines:
        raise InvalidInput(f"{path} holds no trace")
    columns = tuple(lines[0].split(","))
    rows = [[float(v) for v in line.split(",")] for line in lines[1:]]
    return TraceTable(columns, np.array(rows, dtype=float).reshape(len(rows), len(columns)))
