"""Accessibility lint for HTML data tables.

Rule codes are stable:

===  ========  ==========================================================
A0   error     malformed table structure
A1   error     missing or empty caption
A2   error     data cell not associated with any header
A3   warning   obsolete ``summary`` attribute
A4   warning   table nested in a table
A5   error     ``headers`` names an id that is not a ``th`` of the table
A6   warning   no ``th`` at all, yet data-table machinery is present
A7   info      long header text without ``abbr``
A8   warning   invalid ``scope`` value, or ``scope`` outside ``th``
A9   info      empty ``th``
===  ========  ==========================================================
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .reader import CELLS, SECTIONS, HtmlNode, iter_tables, read_html

SCOPES = frozenset({"col", "row", "colgroup", "rowgroup"})
LONG_HEADER = 40
_MAX_SPAN = 1000


class Severity(str, enum.Enum):
    ERROR = "error"
    WARNING = "warning"
    INFO = "info"


@dataclass(frozen=True)
class Rule:
    code: str
    severity: Severity
    summary: str
    source: str


RULES = {
    rule.code: rule
    for rule in (
        Rule("A0", Severity.ERROR, "malformed table structure", "HTML table model"),
        Rule("A1", Severity.ERROR, "table has no caption", "Opquast 223; Accessiweb 5.4, 5.5; RGAA"),
        Rule("A2", Severity.ERROR, "data cell is not linked to its headers", "Opquast 222; Accessiweb 5.7; WCAG H63, H43; RGAA"),
        Rule("A3", Severity.WARNING, "summary attribute is obsolete in HTML5", "HTML5; Accessiweb"),
        Rule("A4", Severity.WARNING, "nested table", "WCAG 2.0; RGAA; Accessiweb 5.8"),
        Rule("A5", Severity.ERROR, "headers references an unknown id", "WCAG H43; Accessiweb 5.7"),
        Rule("A6", Severity.WARNING, "suspected layout table uses data-table markup", "WCAG 2.0; RGAA; Accessiweb 5.3, 5.8"),
        Rule("A7", Severity.INFO, "long header without abbr", "HTML abbr attribute; Accessiweb"),
        Rule("A8", Severity.WARNING, "invalid scope", "WCAG H63"),
        Rule("A9", Severity.INFO, "empty header cell", "WCAG H63, H43"),
    )
}


@dataclass(frozen=True)
class LintFinding:
    rule: str
    severity: Severity
    location: str
    message: str
    source_criterion: str = ""
    # (line, column) of the element in the source, for ordering
    position: tuple[int, int] = field(default=(0, 0), compare=False)

    def as_dict(self) -> dict:
        return {
            "severity": self.severity.value,
            "rule": self.rule,
            "location": self.location,
            "message": self.message,
            "source_criterion": self.source_criterion,
        }


@dataclass(frozen=True)
class LintReport:
    findings: tuple[LintFinding, ...] = ()

    @property
    def errors(self) -> list[LintFinding]:
        return [f for f in self.findings if f.severity is Severity.ERROR]

    @property
    def codes(self) -> list[str]:
        return [f.rule for f in self.findings]

    def to_text(self) -> str:
        return "".join(f"{f.severity.value} {f.rule} {f.location} {f.message}\n" for f in self.findings)

    def to_json(self) -> str:
        return json.dumps([f.as_dict() for f in self.findings], ensure_ascii=False, indent=2) + "\n"

    def __iter__(self) -> Iterator[LintFinding]:
        return iter(self.findings)

    def __len__(self) -> int:
        return len(self.findings)


# -- table grid ------------------------------------------------------------


@dataclass
class GridCell:
    node: HtmlNode
    row: int
    column: int
    colspan: int
    rowspan: int
    location: str

    @property
    def tag(self) -> str:
        return self.node.tag

    @property
    def columns(self) -> range:
        return range(self.column, self.column + self.colspan)

    @property
    def rows(self) -> range:
        return range(self.row, self.row + self.rowspan)


@dataclass
class TableGrid:
    table: HtmlNode
    location: str
    rows: list[HtmlNode]
    cells: list[GridCell]
    slots: dict[tuple[int, int], GridCell]
    captions: list[HtmlNode]
    sections: list[HtmlNode]

    def own_elements(self) -> Iterator[HtmlNode]:
        """Elements of this table, not descending into nested tables."""

        def walk(node: HtmlNode) -> Iterator[HtmlNode]:
            for child in node.elements():
                yield child
                if child.tag != "table":
                    yield from walk(child)

        return walk(self.table)

    def header_ids(self) -> dict[str, GridCell]:
        ids: dict[str, GridCell] = {}
        for cell in self.cells:
            if cell.tag == "th":
                ident = cell.node.get("id")
                if ident:
                    ids.setdefault(ident, cell)
        return ids


def _span(node: HtmlNode, name: str) -> int:
    raw = (node.get(name) or "").strip()
    try:
        value = int(raw)
    except ValueError:
        return 1
    return min(max(value, 1), _MAX_SPAN)


def _indexed(tag: str, index: int, total: int) -> str:
    return f"{tag}[{index}]" if total > 1 else tag


def build_grid(table: HtmlNode, location: str) -> TableGrid:
    """Lay the table's own rows and cells out on a grid."""
    rows: list[tuple[HtmlNode, str]] = []
    captions, sections = [], []
    children = list(table.elements())
    counts: dict[str, int] = {}
    for child in children:
        counts[child.tag] = counts.get(child.tag, 0) + 1
    seen: dict[str, int] = {}
    direct_tr = 0
    for child in children:
        if child.tag == "caption":
            captions.append(child)
        elif child.tag in SECTIONS:
            sections.append(child)
            k = seen.get(child.tag, 0)
            seen[child.tag] = k + 1
            prefix = f"{location}/{_indexed(child.tag, k, counts[child.tag])}"
            for i, tr in enumerate(n for n in child.elements() if n.tag == "tr"):
                rows.append((tr, f"{prefix}/tr[{i}]"))
        elif child.tag == "tr":
            rows.append((child, f"{location}/tr[{direct_tr}]"))
            direct_tr += 1

    slots: dict[tuple[int, int], GridCell] = {}
    cells: list[GridCell] = []
    for r, (tr, path) in enumerate(rows):
        c = 0
        for j, node in enumerate(n for n in tr.elements() if n.tag in CELLS):
            while (r, c) in slots:
                c += 1
            cell = GridCell(node, r, c, _span(node, "colspan"), _span(node, "rowspan"), f"{path}/{node.tag}[{j}]")
            cells.append(cell)
            for rr in cell.rows:
                if rr >= len(rows):
                    break
                for cc in cell.columns:
                    slots.setdefault((rr, cc), cell)
            c += cell.colspan
    return TableGrid(table, location, [tr for tr, _ in rows], cells, slots, captions, sections)


def table_grids(nodes: Iterable[HtmlNode]) -> list[TableGrid]:
    return [build_grid(table, f"table[{i}]") for i, table in enumerate(iter_tables(nodes))]


@dataclass(frozen=True)
class CellContext:
    row: int
    column: int
    tag: str
    text: str
    labels: tuple[str, ...]


def cell_contexts(grid: TableGrid) -> list[CellContext]:
    """Header labels of every cell, read through its ``headers`` ids."""
    ids = grid.header_ids()
    out = []
    for cell in grid.cells:
        tokens = (cell.node.get("headers") or "").split()
        labels = tuple(ids[t].node.text() for t in tokens if t in ids)
        out.append(CellContext(cell.row, cell.column, cell.tag, cell.node.text(), labels))
    return out


# -- rules -----------------------------------------------------------------


class _Collector:
    def __init__(self) -> None:
        self.findings: list[LintFinding] = []

    def add(self, code: str, node: HtmlNode, location: str, message: str) -> None:
        rule = RULES[code]
        self.findings.append(
            LintFinding(code, rule.severity, location, f"{message} [{rule.source}]", rule.source, node.position)
        )


def _check_table(grid: TableGrid, out: _Collector, long_header: int) -> None:
    table, loc = grid.table, grid.location
    ths = [c for c in grid.cells if c.tag == "th"]
    tds = [c for c in grid.cells if c.tag == "td"]

    if table.problems:
        out.add("A0", table, loc, "malformed table: " + "; ".join(table.problems))

    if not grid.captions:
        out.add("A1", table, loc, "table has no caption")
    elif not grid.captions[0].text().strip():
        out.add("A1", table, loc, "table caption is empty")

    if table.has("summary"):
        out.add("A3", table, loc, "summary attribute is obsolete; use caption, details or figcaption")

    ancestor = table.parent
    while ancestor is not None and ancestor.tag != "table":
        ancestor = ancestor.parent
    if ancestor is not None:
        out.add("A4", table, loc, "table is nested inside another table")

    if not ths:
        machinery = []
        if grid.captions:
            machinery.append("caption")
        if any(s.tag in ("thead", "tfoot") for s in grid.sections):
            machinery.append("thead/tfoot")
        if any(c.node.has("headers") for c in grid.cells):
            machinery.append("headers")
        if any(e.has("scope") for e in grid.own_elements()):
            machinery.append("scope")
        if machinery:
            out.add("A6", table, loc, "no th in table but uses " + ", ".join(machinery) + "; layout tables must not")

    ids = grid.header_ids()
    for cell in grid.cells:
        node = cell.node
        text = node.text().strip()
        headers = (node.get("headers") or "").split()
        if cell.tag == "td" and ths and not headers and not _scoped(grid, cell):
            out.add("A2", node, cell.location, "data cell has no headers attribute and no scoped th applies")
        missing = [t for t in headers if t not in ids]
        if missing:
            out.add("A5", node, cell.location, "headers references unknown id(s): " + " ".join(missing))
        if cell.tag == "th":
            if len(text) > long_header and not node.get("abbr"):
                out.add("A7", node, cell.location, f"header text is {len(text)} characters; consider abbr")
            if not text:
                out.add("A9", node, cell.location, "header cell has no text to announce")

    paths = {id(c.node): c.location for c in grid.cells}
    for element in grid.own_elements():
        if not element.has("scope"):
            continue
        where = paths.get(id(element), f"{loc}/{element.tag}")
        value = (element.get("scope") or "").strip().lower()
        if element.tag != "th":
            out.add("A8", element, where, f"scope is only meaningful on th, found on {element.tag}")
        elif value not in SCOPES:
            out.add("A8", element, where, f"invalid scope value {element.get('scope')!r}")


def _scoped(grid: TableGrid, cell: GridCell) -> bool:
    for (r, c), other in grid.slots.items():
        if other.tag != "th":
            continue
        scope = (other.node.get("scope") or "").strip().lower()
        if scope in ("col", "colgroup") and r < cell.row and c in cell.columns:
            return True
        if scope in ("row", "rowgroup") and r in cell.rows and c < cell.column:
            return True
    return False


def lint(nodes: Iterable[HtmlNode], *, long_header: int = LONG_HEADER) -> LintReport:
    out = _Collector()
    for grid in table_grids(nodes):
        _check_table(grid, out, long_header)
    findings = sorted(out.findings, key=lambda f: (f.position, f.rule))
    return LintReport(tuple(findings))


def lint_html(text: str | bytes, *, long_header: int = LONG_HEADER) -> LintReport:
    return lint(read_html(text), long_header=long_header)
