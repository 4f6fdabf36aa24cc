"""Accessible HTML generation.

Output carries both association techniques: ``scope`` on every ``th``
and explicit ``headers`` lists on data cells pointing at generated ids.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field

from .headers import HeaderIndex, HeaderStructure, build_index, build_segments, resolve_cell
from .model import CellGroup, TableDocument

_ID_PREFIX = re.compile(r"^[A-Za-z][A-Za-z0-9_-]*$")
_NON_ALNUM = re.compile(r"[^a-z0-9]+")
INDENT = "  "


@dataclass(frozen=True)
class GeneratorOptions:
    emit_aria: bool = True
    # None follows the document's row_header_mode
    row_headers: bool | None = None
    dimensions_in_caption: bool = False
    id_prefix: str = "h"

    def __post_init__(self) -> None:
        if not _ID_PREFIX.match(self.id_prefix):
            raise ValueError(f"id_prefix must be an ASCII identifier fragment, got {self.id_prefix!r}")


def slugify(label: str) -> str:
    """Lowercase ASCII slug: accents dropped, other runs collapsed to '-'."""
    decomposed = unicodedata.normalize("NFKD", label.lower())
    stripped = "".join(ch for ch in decomposed if not unicodedata.combining(ch))
    ascii_only = stripped.encode("ascii", "ignore").decode("ascii")
    return _NON_ALNUM.sub("-", ascii_only).strip("-")


@dataclass
class IdRegistry:
    prefix: str = "h"
    assignments: dict[tuple[int, int], str] = field(default_factory=dict)
    _used: set[str] = field(default_factory=set, repr=False)

    def assign(self, cell: CellGroup) -> str:
        slug = slugify(cell.content) or f"r{cell.row}c{cell.column}"
        base = f"{self.prefix}-{slug}"
        candidate, n = base, 1
        while candidate in self._used:
            n += 1
            candidate = f"{base}-{n}"
        self._used.add(candidate)
        self.assignments[cell.origin] = candidate
        return candidate

    def __getitem__(self, origin: tuple[int, int]) -> str:
        return self.assignments[origin]

    def get(self, origin: tuple[int, int]) -> str | None:
        return self.assignments.get(origin)


def _row_headers(document: TableDocument, options: GeneratorOptions) -> bool:
    return document.row_header_mode if options.row_headers is None else options.row_headers


def assign_ids(
    document: TableDocument,
    options: GeneratorOptions | None = None,
    structure: HeaderStructure | None = None,
) -> IdRegistry:
    """Give every rendered header cell a unique id, row-major."""
    options = options or GeneratorOptions()
    structure = structure or build_segments(document)
    registry = IdRegistry(options.id_prefix)
    for row in structure.rows:
        for cell in row:
            registry.assign(cell)
    if _row_headers(document, options):
        for row in document.body_rows:
            registry.assign(row.cells[0])
    return registry


def escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")


def _element(tag: str, attrs: list[tuple[str, str]], text: str) -> str:
    rendered = "".join(f' {name}="{escape(value)}"' for name, value in attrs)
    return f"<{tag}{rendered}>{escape(text)}</{tag}>"


def _spans(cell: CellGroup) -> list[tuple[str, str]]:
    attrs = []
    if cell.colspan > 1:
        attrs.append(("colspan", str(cell.colspan)))
    if cell.rowspan > 1:
        attrs.append(("rowspan", str(cell.rowspan)))
    return attrs


def caption_text(document: TableDocument, options: GeneratorOptions) -> str:
    text = document.caption
    if options.dimensions_in_caption:
        dims = f"({document.column_count} colonnes, {document.row_count} lignes)"
        text = f"{text} {dims}" if text else dims
    return text


def generate(
    document: TableDocument,
    index: HeaderIndex | None = None,
    options: GeneratorOptions | None = None,
) -> str:
    """Render ``document`` as an HTML fragment.

    If ``index`` was built with a different row-header setting than the
    options ask for, it is rebuilt so ids and references agree.
    """
    options = options or GeneratorOptions()
    row_headers = _row_headers(document, options)
    structure = build_segments(document)
    if index is None or index.row_headers != row_headers:
        index = build_index(document, structure, row_headers=row_headers)
    ids = assign_ids(document, options, structure)

    lines: list[str] = []
    depth = 0

    def emit(text: str) -> None:
        lines.append(INDENT * depth + text)

    tr_open = '<tr role="row">' if options.emit_aria else "<tr>"

    if document.details:
        emit("<figure>")
        depth += 1
        emit(_element("figcaption", [], document.details))
    emit("<table>")
    depth += 1
    caption = caption_text(document, options)
    if caption:
        emit(_element("caption", [], caption))

    if structure.rows:
        emit("<thead>")
        depth += 1
        for row in structure.rows:
            emit(tr_open)
            depth += 1
            for cell in row:
                attrs = [("id", ids[cell.origin]), *_spans(cell)]
                attrs.append(("scope", "colgroup" if cell.colspan > 1 else "col"))
                emit(_element("th", attrs, cell.content))
            depth -= 1
            emit("</tr>")
        depth -= 1
        emit("</thead>")

    emit("<tbody>")
    depth += 1
    for r, row in enumerate(document.body_rows):
        emit(tr_open)
        depth += 1
        for i, cell in enumerate(row.cells):
            refs = resolve_cell(index, r, cell.column)
            headers = " ".join(ids[ref.origin] for ref in refs)
            if row_headers and i == 0:
                attrs = [("id", ids[cell.origin]), *_spans(cell), ("scope", "row")]
                tag = "th"
            else:
                attrs = _spans(cell)
                tag = "td"
            if headers:
                attrs.append(("headers", headers))
            emit(_element(tag, attrs, cell.content))
        depth -= 1
        emit("</tr>")
    depth -= 1
    emit("</tbody>")
    depth -= 1
    emit("</table>")
    if document.details:
        depth -= 1
        emit("</figure>")
    return "\n".join(lines) + "\n"
