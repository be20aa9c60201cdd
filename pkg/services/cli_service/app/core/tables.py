"""rich tables printed to stderr next to the JSON report."""
from typing import Any, Iterable, Mapping, Sequence

from rich.table import Table


def fields_table(title: str, fields: Mapping[str, Any]) -> Table:
    table = Table(title=title)
    table.add_column("field", style="cyan")
    table.add_column("value")
    for key, value in fields.items():
        table.add_row(str(key), str(value))
    return table


def rows_table(title: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Table:
    table = Table(title=title)
    for column in header:
        table.add_column(column)
    for row in rows:
        table.add_row(*(f"{v:.6g}" if isinstance(v, float) else str(v) for v in row))
    return table
