"""Independent reference computations used by the tests.

Nothing here imports the code under test beyond the plain data types.
"""

from __future__ import annotations

import itertools

# hand-written, deliberately not unicodedata-based
ACCENTS = {
    "à": "a", "â": "a", "ä": "a", "á": "a", "ã": "a",
    "é": "e", "è": "e", "ê": "e", "ë": "e",
    "î": "i", "ï": "i", "í": "i",
    "ô": "o", "ö": "o", "ó": "o",
    "ù": "u", "û": "u", "ü": "u", "ú": "u",
    "ç": "c", "ñ": "n",
}


def slug_oracle(label: str) -> str:
    out = []
    pending_dash = False
    for ch in label.lower():
        ch = ACCENTS.get(ch, ch)
        if ("a" <= ch <= "z") or ("0" <= ch <= "9"):
            if pending_dash and out:
                out.append("-")
            pending_dash = False
            out.append(ch)
        else:
            pending_dash = True
    return "".join(out)


def field_counts(lines, char):
    return [len(line.split(char)) for line in lines]


def resolve_oracle(document, body_row, column, row_headers):
    """Walk the header rows top-down over the raw grid.

    Returns (label, (row, column)) pairs: header cells covering any
    column of the body cell, shallow to deep and left to right, then the
    row's first cell if it acts as a row header.
    """
    pos = 0
    target = None
    for i, cell in enumerate(document.body_rows[body_row].cells):
        span = range(pos, pos + cell.colspan)
        if column in span:
            target = (i, span)
        pos += cell.colspan
    index, span = target
    found = []
    for depth, row in enumerate(document.header_rows):
        pos = 0
        for cell in row.cells:
            cover = range(pos, pos + cell.colspan)
            if cell.content and set(cover) & set(span):
                found.append((cell.content, (depth, pos)))
            pos += cell.colspan
    first = document.body_rows[body_row].cells[0]
    if row_headers and index != 0 and first.content:
        found.append((first.content, (len(document.header_rows) + body_row, 0)))
    return found


def compositions(width, parts=(1, 2)):
    """All ordered ways to write ``width`` as a sum of ``parts``."""
    if width == 0:
        yield ()
        return
    for p in parts:
        if p <= width:
            for rest in compositions(width - p, parts):
                yield (p,) + rest


def labelled_rows(width, depth):
    """Every header row of ``width`` columns: spans in {1,2}, each cell empty or not."""
    for spans in compositions(width):
        for mask in itertools.product((True, False), repeat=len(spans)):
            yield [(f"h{depth}.{i}" if keep else "", s) for i, (s, keep) in enumerate(zip(spans, mask))]
