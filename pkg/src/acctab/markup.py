"""Reader and printer for the linear table markup.

The dialect, one table per source::

    @caption: Exemple d'un tableau complexe
    Pays|Grandes Villes|>|Habitants (millions)
    |Capitale|Métropole|
    ---
    Algérie|Alger||34

* ``@key: value`` lines are directives (caption, details, separator,
  rowheaders), each at most once.
* Fields are split on one separator: pipe, semicolon or tab.
* A field that is just ``>`` widens the nearest real field to its left
  by one column.
* The first line made only of three or more dashes separates header
  rows (above) from body rows (below). Without it every row is body.

There is no escaping: a cell cannot contain the active separator, be a
lone ``>``, or start a line with ``@``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Sequence

from .errors import (
    BadDirective,
    DanglingMerge,
    DuplicateDirective,
    EmptyBody,
    NoConsistentSeparator,
    RaggedRow,
)
from .model import TableDocument

MERGE = ">"

_BOUNDARY = re.compile(r"^\s*-{3,}\s*$")
_DIRECTIVE = re.compile(r"^\s*@([A-Za-z_]+)\s*:(.*)$")
_TRUE = {"on", "yes", "true", "1"}
_FALSE = {"off", "no", "false", "0"}


class Separator(str, enum.Enum):
    PIPE = "pipe"
    SEMICOLON = "semicolon"
    TAB = "tab"

    @property
    def char(self) -> str:
        return _SEPARATOR_CHARS[self]

    @classmethod
    def parse(cls, name: str) -> Separator:
        try:
            return cls(name.strip().lower())
        except ValueError:
            raise ValueError(f"unknown separator {name!r}") from None


_SEPARATOR_CHARS = {Separator.PIPE: "|", Separator.SEMICOLON: ";", Separator.TAB: "\t"}
# detection precedence
_CANDIDATES = (Separator.TAB, Separator.PIPE, Separator.SEMICOLON)


class DirectiveKey(str, enum.Enum):
    CAPTION = "caption"
    DETAILS = "details"
    SEPARATOR = "separator"
    ROWHEADERS = "rowheaders"


@dataclass(frozen=True)
class Directive:
    key: DirectiveKey
    value: str
    line: int


@dataclass(frozen=True)
class MarkupSource:
    lines: tuple[str, ...]
    declared_separator: Separator | None = None

    @classmethod
    def from_text(cls, text: str, declared_separator: Separator | None = None) -> MarkupSource:
        lines = [line.rstrip("\r") for line in text.split("\n")]
        if lines and lines[-1] == "":
            lines.pop()
        return cls(tuple(lines), declared_separator)

    @property
    def text(self) -> str:
        return "".join(line + "\n" for line in self.lines)


@dataclass
class _Scan:
    directives: dict[DirectiveKey, Directive] = field(default_factory=dict)
    boundary: int | None = None
    # (1-based line number, raw text)
    header: list[tuple[int, str]] = field(default_factory=list)
    body: list[tuple[int, str]] = field(default_factory=list)

    @property
    def data(self) -> list[tuple[int, str]]:
        return self.header + self.body


def _is_blank(line: str) -> bool:
    # tabs are significant: "\t\t" is a row of empty cells
    return not line.strip(" ")


def _scan(lines: Sequence[str]) -> _Scan:
    scan = _Scan()
    for number, line in enumerate(lines, start=1):
        if _is_blank(line):
            continue
        m = _DIRECTIVE.match(line)
        if m:
            name = m.group(1).lower()
            try:
                key = DirectiveKey(name)
            except ValueError:
                raise BadDirective(f"unknown directive @{name}", number) from None
            if key in scan.directives:
                first = scan.directives[key].line
                raise DuplicateDirective(f"duplicate directive @{name} (first on line {first})", number)
            scan.directives[key] = Directive(key, m.group(2).strip(), number)
            continue
        if line.lstrip(" ").startswith("@"):
            raise BadDirective("malformed directive, expected '@key: value'", number)
        if scan.boundary is None and _BOUNDARY.match(line):
            scan.boundary = number
            scan.header, scan.body = scan.body, []
            continue
        scan.body.append((number, line))
    return scan


def _detect(data: Sequence[tuple[int, str]]) -> Separator:
    if not data:
        raise EmptyBody("empty body")
    first = data[0][1]
    for candidate in _CANDIDATES:
        char = candidate.char
        if char not in first:
            continue
        counts = {line.count(char) for _, line in data}
        if len(counts) == 1:
            return candidate
    if not any(c.char in line for c in _CANDIDATES for _, line in data):
        # single-column table: no separator anywhere
        return Separator.PIPE
    raise NoConsistentSeparator("no separator gives the same field count on every line", data[0][0])


def detect_separator(source: MarkupSource) -> Separator:
    """Return the separator in force for ``source``.

    An explicit ``declared_separator`` wins, then an ``@separator``
    directive. Otherwise the first of tab, pipe, semicolon that occurs on
    the first data line and splits every data line into the same number
    of fields.
    """
    if source.declared_separator is not None:
        return source.declared_separator
    scan = _scan(source.lines)
    return _separator_for(scan)


def _separator_for(scan: _Scan) -> Separator:
    directive = scan.directives.get(DirectiveKey.SEPARATOR)
    if directive is not None:
        try:
            return Separator.parse(directive.value)
        except ValueError as exc:
            raise BadDirective(str(exc), directive.line) from None
    return _detect(scan.data)


def _split_row(line: str, number: int, separator: Separator) -> list[tuple[str, int]]:
    cells: list[list] = []
    for raw in line.split(separator.char):
        text = raw.strip()
        if text == MERGE:
            if not cells:
                raise DanglingMerge("merge marker '>' with nothing to its left", number)
            cells[-1][1] += 1
        else:
            cells.append([text, 1])
    return [(text, span) for text, span in cells]


def parse(source: MarkupSource) -> TableDocument:
    """Parse markup into a validated :class:`TableDocument`."""
    scan = _scan(source.lines)
    if source.declared_separator is not None:
        separator = source.declared_separator
    else:
        separator = _separator_for(scan)

    def rows_of(lines: list[tuple[int, str]]) -> list[list[tuple[str, int]]]:
        return [_split_row(line, number, separator) for number, line in lines]

    header = rows_of(scan.header)
    body = rows_of(scan.body)

    width = None
    for index, ((number, _), row) in enumerate(zip(scan.data, header + body)):
        total = sum(span for _, span in row)
        if width is None:
            width = total
        elif total != width:
            raise RaggedRow(f"row {index} is {total} columns wide, expected {width}", number, index)
    if not body:
        line = scan.boundary if scan.boundary is not None else None
        raise EmptyBody("empty body", line)

    meta = scan.directives
    row_headers = True
    if DirectiveKey.ROWHEADERS in meta:
        directive = meta[DirectiveKey.ROWHEADERS]
        value = directive.value.lower()
        if value in _TRUE:
            row_headers = True
        elif value in _FALSE:
            row_headers = False
        else:
            raise BadDirective(f"@rowheaders expects on/off, got {directive.value!r}", directive.line)

    return TableDocument.from_grid(
        header,
        body,
        caption=meta[DirectiveKey.CAPTION].value if DirectiveKey.CAPTION in meta else "",
        details=meta[DirectiveKey.DETAILS].value if DirectiveKey.DETAILS in meta else "",
        row_header_mode=row_headers,
        column_count=width,
    )


def parse_text(text: str, separator: Separator | None = None) -> TableDocument:
    return parse(MarkupSource.from_text(text, separator))


def _row_line(cells, separator: Separator) -> str:
    fields: list[str] = []
    for cell in cells:
        fields.append(cell.content)
        fields.extend([MERGE] * (cell.colspan - 1))
    return separator.char.join(fields)


def serialize(document: TableDocument, separator: Separator = Separator.PIPE) -> MarkupSource:
    """Print ``document`` in the markup dialect.

    An ``@separator`` directive is added only when detection alone would
    not recover ``separator`` from the printed rows.
    """
    if any(cell.rowspan > 1 for cell in document.cell_groups()):
        raise ValueError("rowspan cannot be expressed in the markup dialect")
    header = [_row_line(row.cells, separator) for row in document.header_rows]
    body = [_row_line(row.cells, separator) for row in document.body_rows]
    data = [(0, line) for line in header + body]
    try:
        detected = _detect(data)
    except NoConsistentSeparator:
        detected = None

    lines: list[str] = []
    if document.caption:
        lines.append(f"@caption: {document.caption}")
    if document.details:
        lines.append(f"@details: {document.details}")
    if not document.row_header_mode:
        lines.append("@rowheaders: off")
    if detected is not separator:
        lines.append(f"@separator: {separator.value}")
    lines.extend(header)
    if header:
        lines.append("---")
    lines.extend(body)
    return MarkupSource(tuple(lines))


def expressible(document: TableDocument, separator: Separator = Separator.PIPE) -> bool:
    """True when ``parse(serialize(document, separator))`` can equal ``document``."""
    for text in (document.caption, document.details):
        if text != text.strip() or "\n" in text or "\r" in text:
            return False
    single = document.column_count == 1
    for row in document.rows:
        for i, cell in enumerate(row.cells):
            content = cell.content
            if cell.rowspan > 1 or content != content.strip():
                return False
            if separator.char in content or "\n" in content or "\r" in content or content == MERGE:
                return False
            if i == 0 and content.startswith("@"):
                return False
            if single and (content == "" or _BOUNDARY.match(content)):
                return False
    return True
