"""Count tables keyed by p-vectors or cycle-type tuples, with CSV/JSON output.

Every producer (oracle, formula, Jackson) writes the same layout so two
tables can be compared with ``diff``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Iterable


def format_partition(parts: Iterable[int]) -> str:
    return "+".join(str(x) for x in parts)


def parse_partition(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split("+"))


@dataclass
class CountTable:
    """Exact integer (or rational) values keyed by an r-tuple.

    ``by`` is ``"p"`` for p-vector keys, ``"type"`` for tuples of cycle
    types.  Missing keys read as zero; zero values are never stored.
    """

    n: int
    r: int
    by: str = "p"
    entries: dict = field(default_factory=dict)

    def __getitem__(self, key):
        return self.entries.get(tuple(key), 0)

    def add(self, key, value) -> None:
        key = tuple(key)
        v = self.entries.get(key, 0) + value
        if v:
            self.entries[key] = v
        else:
            self.entries.pop(key, None)

    def total(self):
        return sum(self.entries.values())

    def rows(self) -> list[tuple[tuple, object]]:
        return sorted(self.entries.items())

    def __eq__(self, other):
        if not isinstance(other, CountTable):
            return NotImplemented
        return (self.n, self.r, self.by, self.entries) == (other.n, other.r, other.by, other.entries)

    def columns(self) -> list[str]:
        stem = "p" if self.by == "p" else "lambda"
        return [f"{stem}_{i}" for i in range(1, self.r + 1)] + ["value"]

    def _cells(self, key) -> list[str]:
        if self.by == "p":
            return [str(x) for x in key]
        return [format_partition(lam) for lam in key]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns())
        for key, value in self.rows():
            w.writerow(self._cells(key) + [str(value)])
        return buf.getvalue()

    def to_json(self) -> str:
        rows = [[list(k) if self.by != "p" else k for k in key] + [_jsonable(value)]
                for key, value in self.rows()]
        doc = {"n": self.n, "r": self.r, "by": self.by, "columns": self.columns(), "rows": rows}
        return json.dumps(doc) + "\n"

    def dump(self, fmt: str) -> str:
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        raise ValueError(f"unknown format {fmt!r}")

    @classmethod
    def from_csv(cls, text: str, n: int, by: str = "p") -> CountTable:
        reader = csv.reader(io.StringIO(text))
        header = next(reader)
        r = len(header) - 1
        table = cls(n=n, r=r, by=by)
        for row in reader:
            if by == "p":
                key = tuple(int(x) for x in row[:-1])
            else:
                key = tuple(parse_partition(x) for x in row[:-1])
            table.add(key, int(row[-1]))
        return table


def _jsonable(value):
    if isinstance(value, int):
        return value
    return str(value)
