"""Screen-reader style linearization of a table.

The table is announced (caption, then its size), then read row by row.
Each cell is preceded by the header labels that give it meaning. By
default a label is dropped when the previous cell already carried the
same header, the way screen readers only voice headers that change.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .headers import HeaderIndex, HeaderRef, build_segments, resolve_cell
from .model import TableDocument


class UtteranceKind(str, enum.Enum):
    TABLE_INTRO = "table_intro"
    ROW_INTRO = "row_intro"
    CELL = "cell"


@dataclass(frozen=True)
class Templates:
    dimensions: str = "tableau de {columns} colonnes et {rows} lignes"
    caption_join: str = ", "
    row: str = "ligne {number}"
    empty: str = "vide"


FRENCH = Templates()


@dataclass(frozen=True)
class Utterance:
    kind: UtteranceKind
    context_labels: tuple[str, ...] = ()
    content: str = ""
    position: tuple[int, int] | None = None
    # every header of the cell, before suppression
    full_context: tuple[HeaderRef, ...] = ()


def linearize(
    document: TableDocument,
    index: HeaderIndex,
    *,
    suppress_repeats: bool = True,
    templates: Templates = FRENCH,
) -> list[Utterance]:
    dims = templates.dimensions.format(columns=document.column_count, rows=document.row_count)
    intro = f"{document.caption}{templates.caption_join}{dims}" if document.caption else dims
    out = [Utterance(UtteranceKind.TABLE_INTRO, content=intro)]

    structure = build_segments(document)
    header_cells = [row for row in structure.rows]
    body_cells = [row.cells for row in document.body_rows]
    offset = len(header_cells)

    previous: set[HeaderRef] = set()
    for number, cells in enumerate(header_cells + body_cells, start=1):
        out.append(Utterance(UtteranceKind.ROW_INTRO, content=templates.row.format(number=number)))
        for cell in cells:
            if cell.row >= offset:
                refs = tuple(resolve_cell(index, cell.row - offset, cell.column))
            else:
                refs = ()
            spoken = [ref for ref in refs if ref not in previous] if suppress_repeats else list(refs)
            previous = set(refs)
            out.append(
                Utterance(
                    UtteranceKind.CELL,
                    context_labels=tuple(ref.label for ref in spoken),
                    content=cell.content or templates.empty,
                    position=cell.origin,
                    full_context=refs,
                )
            )
    return out


def render_transcript(utterances) -> str:
    lines = []
    for u in utterances:
        context = " > ".join(u.context_labels)
        middle = f" {context} " if context else " "
        lines.append(f"{u.kind.value} |{middle}| {u.content}")
    return "\n".join(lines) + "\n"
