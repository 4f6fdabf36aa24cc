"""Span-aware logical table model.

A :class:`TableDocument` holds header rows and body rows of
:class:`CellGroup` values. Every cell group records its origin on the
absolute grid: header rows are numbered first, body rows continue the
count, so ``origin`` is unique across the whole table.

All types are frozen; operations never mutate their inputs.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence, Union


class RowKind(str, enum.Enum):
    HEADER = "header"
    BODY = "body"


class TableClass(str, enum.Enum):
    SIMPLE = "simple"
    COMPLEX = "complex"


@dataclass(frozen=True)
class CellGroup:
    """One cell, possibly covering several grid slots."""

    content: str = ""
    colspan: int = 1
    rowspan: int = 1
    origin: tuple[int, int] = (0, 0)

    @property
    def row(self) -> int:
        return self.origin[0]

    @property
    def column(self) -> int:
        return self.origin[1]

    @property
    def columns(self) -> range:
        return range(self.origin[1], self.origin[1] + self.colspan)


@dataclass(frozen=True)
class Row:
    cells: tuple[CellGroup, ...]
    kind: RowKind = RowKind.BODY


@dataclass(frozen=True)
class TableDocument:
    header_rows: tuple[Row, ...]
    body_rows: tuple[Row, ...]
    column_count: int
    caption: str = ""
    details: str = ""
    row_header_mode: bool = True

    @property
    def rows(self) -> tuple[Row, ...]:
        return self.header_rows + self.body_rows

    @property
    def row_count(self) -> int:
        return len(self.header_rows) + len(self.body_rows)

    def cell_groups(self) -> Iterator[CellGroup]:
        for row in self.rows:
            yield from row.cells

    def body_index(self, absolute_row: int) -> int:
        return absolute_row - len(self.header_rows)

    @classmethod
    def from_grid(
        cls,
        header: Sequence[Sequence[CellSpec]] = (),
        body: Sequence[Sequence[CellSpec]] = (),
        *,
        caption: str = "",
        details: str = "",
        row_header_mode: bool = True,
        column_count: int | None = None,
    ) -> TableDocument:
        """Build a document from nested lists, stamping origins.

        A cell spec is a string, a ``(content, colspan)`` pair or a
        ``(content, colspan, rowspan)`` triple. Placement follows the
        HTML table algorithm: each cell takes the first grid slot not
        already covered by a rowspan from above (within its section).
        ``column_count`` defaults to the width of the first row.
        No validation is done here; call :func:`validate`.
        """
        header_rows, body_rows = [], []
        offset = 0
        for kind, spec_rows, out in ((RowKind.HEADER, header, header_rows), (RowKind.BODY, body, body_rows)):
            occupied: set[tuple[int, int]] = set()
            for i, spec_row in enumerate(spec_rows):
                r = offset + i
                c = 0
                cells = []
                for spec in spec_row:
                    content, colspan, rowspan = _normalize_spec(spec)
                    while (r, c) in occupied:
                        c += 1
                    cells.append(CellGroup(content, colspan, rowspan, (r, c)))
                    for dr in range(rowspan):
                        for dc in range(colspan):
                            occupied.add((r + dr, c + dc))
                    c += colspan
                out.append(Row(tuple(cells), kind))
            offset += len(spec_rows)
        if column_count is None:
            first = (header_rows or body_rows or [Row(())])[0]
            column_count = sum(cell.colspan for cell in first.cells)
        return cls(
            header_rows=tuple(header_rows),
            body_rows=tuple(body_rows),
            column_count=column_count,
            caption=caption,
            details=details,
            row_header_mode=row_header_mode,
        )

    def to_grid(self) -> tuple[list[list[tuple[str, int, int]]], list[list[tuple[str, int, int]]]]:
        """Inverse of :meth:`from_grid` (cell specs as triples)."""

        def dump(rows: Iterable[Row]) -> list[list[tuple[str, int, int]]]:
            return [[(c.content, c.colspan, c.rowspan) for c in row.cells] for row in rows]

        return dump(self.header_rows), dump(self.body_rows)


CellSpec = Union[str, tuple]


def _normalize_spec(spec: CellSpec) -> tuple[str, int, int]:
    if isinstance(spec, str):
        return spec, 1, 1
    if isinstance(spec, CellGroup):
        return spec.content, spec.colspan, spec.rowspan
    content, *spans = spec
    colspan = spans[0] if spans else 1
    rowspan = spans[1] if len(spans) > 1 else 1
    return content, colspan, rowspan


@dataclass(frozen=True)
class Violation:
    section: RowKind
    row: int
    message: str

    def __str__(self) -> str:
        return self.message


@dataclass(frozen=True)
class ValidationResult:
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def validate(document: TableDocument) -> ValidationResult:
    """Check the structural invariants of ``document``.

    Never raises for a well-typed document; every broken constraint is
    returned as a :class:`Violation` naming the row (index within its
    section) and the constraint.
    """
    violations: list[Violation] = []

    def add(kind: RowKind, row: int, message: str) -> None:
        violations.append(Violation(kind, row, message))

    width = document.column_count
    if width < 1:
        add(RowKind.BODY, -1, f"column_count {width} < 1")
    if not document.body_rows:
        add(RowKind.BODY, -1, "no body rows")

    offset = 0
    for kind, rows in ((RowKind.HEADER, document.header_rows), (RowKind.BODY, document.body_rows)):
        carried: dict[int, set[int]] = {}
        for i, row in enumerate(rows):
            r = offset + i
            if row.kind is not kind:
                add(kind, i, f"row {i}: kind {row.kind.value} in {kind.value} section")
            if not row.cells:
                add(kind, i, f"row {i}: no cells")
                continue
            occupied = carried.pop(r, set())
            c = 0
            total = len(occupied)
            for cell in row.cells:
                if cell.colspan < 1 or cell.rowspan < 1:
                    add(kind, i, f"row {i}: span < 1 at column {cell.column}")
                    continue
                while c in occupied:
                    c += 1
                if cell.origin != (r, c):
                    add(kind, i, f"row {i}: origin {cell.origin} != {(r, c)}")
                if c + cell.colspan > width > 0:
                    add(kind, i, f"row {i}: cell at column {c} overflows {width} columns")
                if cell.rowspan > 1:
                    if i + cell.rowspan > len(rows):
                        add(kind, i, f"row {i}: rowspan {cell.rowspan} leaves the {kind.value} section")
                    for dr in range(1, cell.rowspan):
                        carried.setdefault(r + dr, set()).update(range(c, c + cell.colspan))
                total += cell.colspan
                c += cell.colspan
            if total != width:
                add(kind, i, f"row {i}: span sum {total} ≠ {width}")
        offset += len(rows)
    return ValidationResult(tuple(violations))


def classify(document: TableDocument) -> TableClass:
    """Simple means one header level at most and no merged cells."""
    if len(document.header_rows) > 1:
        return TableClass.COMPLEX
    for cell in document.cell_groups():
        if cell.colspan > 1 or cell.rowspan > 1:
            return TableClass.COMPLEX
    return TableClass.SIMPLE
