"""Header structure analysis.

The header is cut into segments: one per non-empty header cell, at the
depth of its header row, covering the cell's column range. Each column
then receives the segments above it ordered from the most general
(shallowest) to the most specific (deepest).

Header rowspans are never written in markup. They are inferred: a
non-empty header cell whose columns are empty in every deeper header
row grows down to the last header row, and the empty cells below it are
absorbed (no segment, no output cell).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import NamedTuple

from .errors import OutOfBounds
from .model import CellGroup, TableDocument


class HeaderRef(NamedTuple):
    label: str
    origin: tuple[int, int]


@dataclass(frozen=True)
class HeaderSegment:
    depth: int
    start: int
    end: int
    label: str
    cell_ref: tuple[int, int]
    rowspan: int = 1

    @property
    def column_range(self) -> range:
        return range(self.start, self.end)

    @property
    def ref(self) -> HeaderRef:
        return HeaderRef(self.label, self.cell_ref)


@dataclass(frozen=True)
class HeaderStructure:
    """Segments plus the header grid as it will be rendered.

    ``rows`` holds the surviving header cells per depth with inferred
    rowspans applied; ``absorbed`` the origins of the cells that vanished.
    """

    segments: tuple[HeaderSegment, ...]
    rows: tuple[tuple[CellGroup, ...], ...]
    absorbed: frozenset[tuple[int, int]]
    warnings: tuple[str, ...] = ()


def _occupancy(rows) -> list[list[CellGroup | None]]:
    width = max((cell.column + cell.colspan for row in rows for cell in row), default=0)
    grid: list[list[CellGroup | None]] = [[None] * width for _ in rows]
    for row in rows:
        for cell in row:
            for r in range(cell.row, min(cell.row + cell.rowspan, len(rows))):
                for c in cell.columns:
                    grid[r][c] = cell
    return grid


def build_segments(document: TableDocument) -> HeaderStructure:
    header = [row.cells for row in document.header_rows]
    depth_count = len(header)
    grid = _occupancy(header)

    candidates: dict[CellGroup, set[CellGroup]] = {}
    for d, row in enumerate(header):
        for cell in row:
            if not cell.content:
                continue
            below = {
                grid[deeper][c]
                for deeper in range(d + cell.rowspan, depth_count)
                for c in cell.columns
            }
            below.discard(None)
            if below and all(not other.content for other in below):
                candidates[cell] = below

    # an empty cell sticking out past its absorbers would leave a hole
    changed = True
    while changed:
        changed = False
        absorbers: dict[CellGroup, list[CellGroup]] = {}
        for head, below in candidates.items():
            for other in below:
                absorbers.setdefault(other, []).append(head)
        for other, heads in absorbers.items():
            covered = {c for head in heads for c in head.columns}
            if not set(other.columns) <= covered:
                for head in heads:
                    candidates.pop(head, None)
                changed = True
                break

    grown = {head.origin: depth_count - head.row for head in candidates}
    absorbed = {other.origin for below in candidates.values() for other in below}

    rows: list[tuple[CellGroup, ...]] = []
    segments: list[HeaderSegment] = []
    for d, row in enumerate(header):
        kept = []
        for cell in row:
            if cell.origin in absorbed:
                continue
            if cell.origin in grown:
                cell = replace(cell, rowspan=grown[cell.origin])
            kept.append(cell)
            if cell.content:
                segments.append(
                    HeaderSegment(d, cell.column, cell.column + cell.colspan, cell.content, cell.origin, cell.rowspan)
                )
        rows.append(tuple(kept))

    warnings = []
    final = _occupancy(rows)
    for d, row in enumerate(rows):
        for cell in row:
            if cell.content:
                continue
            left = final[d][cell.column - 1] if cell.column > 0 else None
            right_col = cell.column + cell.colspan
            right = final[d][right_col] if right_col < len(final[d]) else None
            if not (left and left.content and right and right.content):
                warnings.append(f"empty header cell at row {cell.row}, column {cell.column} has no label")
    return HeaderStructure(tuple(segments), tuple(rows), frozenset(absorbed), tuple(warnings))


@dataclass(frozen=True)
class HeaderIndex:
    column_context: tuple[tuple[HeaderSegment, ...], ...]
    row_context: tuple[CellGroup | None, ...]
    # body grid: cell covering (body row, column)
    body_cells: tuple[tuple[CellGroup, ...], ...]
    row_headers: bool = True
    # absolute grid row of body row 0
    body_offset: int = 0

    def resolve(self, row: int, column: int) -> list[HeaderRef]:
        return resolve_cell(self, row, column)


def build_index(
    document: TableDocument,
    structure: HeaderStructure | None = None,
    *,
    row_headers: bool | None = None,
) -> HeaderIndex:
    """Bind every column to its header segments.

    ``row_headers`` overrides the document's ``row_header_mode``.
    """
    if structure is None:
        structure = build_segments(document)
    if row_headers is None:
        row_headers = document.row_header_mode
    width = document.column_count
    columns: list[list[HeaderSegment]] = [[] for _ in range(width)]
    for segment in sorted(structure.segments, key=lambda s: (s.depth, s.start)):
        for c in segment.column_range:
            columns[c].append(segment)

    offset = len(document.header_rows)
    body_grid: list[list[CellGroup | None]] = [[None] * width for _ in document.body_rows]
    for row in document.body_rows:
        for cell in row.cells:
            for r in range(cell.row, cell.row + cell.rowspan):
                for c in cell.columns:
                    body_grid[r - offset][c] = cell

    row_context: list[CellGroup | None] = []
    for row in document.body_rows:
        first = row.cells[0]
        # only a cell starting the row in column 0 can head it
        if row_headers and first.column == 0 and first.content:
            row_context.append(first)
        else:
            row_context.append(None)
    return HeaderIndex(
        column_context=tuple(tuple(col) for col in columns),
        row_context=tuple(row_context),
        body_cells=tuple(tuple(row) for row in body_grid),
        row_headers=row_headers,
        body_offset=offset,
    )


def resolve_cell(index: HeaderIndex, row: int, column: int) -> list[HeaderRef]:
    """Header references for the body cell covering ``(row, column)``.

    Column headers come first, general to specific; a cell spanning
    several columns collects the headers of all of them. The row header,
    if any, comes last (never for the row-header cell itself).
    """
    if not (0 <= row < len(index.body_cells)) or not (0 <= column < len(index.column_context)):
        raise OutOfBounds(f"no body cell at ({row}, {column})")
    cell = index.body_cells[row][column]
    seen: dict[tuple[int, int], HeaderSegment] = {}
    for c in cell.columns:
        for segment in index.column_context[c]:
            seen.setdefault(segment.cell_ref, segment)
    refs = [s.ref for s in sorted(seen.values(), key=lambda s: (s.depth, s.start))]
    # a rowspanning cell belongs to the row it starts in
    header = index.row_context[cell.row - index.body_offset]
    if header is not None and header.origin != cell.origin:
        refs.append(HeaderRef(header.content, header.origin))
    return refs

