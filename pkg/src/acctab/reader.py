"""Tolerant reader for the table-related subset of HTML.

Tokenizing is left to :mod:`html.parser`; this module only builds the
tree. Cells and rows close implicitly the HTML5 way. Structural damage
inside a table (stray end tags, cells outside rows, unclosed tables) is
recorded on the table node rather than raised.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from html.parser import HTMLParser
from typing import Iterator, Union

TABLE_TAGS = frozenset({"table", "caption", "thead", "tbody", "tfoot", "tr", "th", "td"})
RECOGNIZED = TABLE_TAGS | {"figure", "figcaption", "details", "summary"}
SECTIONS = frozenset({"thead", "tbody", "tfoot"})
CELLS = frozenset({"td", "th"})
STRUCTURE = SECTIONS | {"table"}
VOID = frozenset(
    {"area", "base", "br", "col", "embed", "hr", "img", "input", "link", "meta", "param", "source", "track", "wbr"}
)


@dataclass(eq=False)
class HtmlNode:
    tag: str
    attributes: list[tuple[str, str]] = field(default_factory=list)
    children: list[Union["HtmlNode", str]] = field(default_factory=list)
    position: tuple[int, int] = (1, 0)
    parent: "HtmlNode | None" = field(default=None, repr=False)
    # structural problems found while reading (tables only)
    problems: list[str] = field(default_factory=list)

    @property
    def recognized(self) -> bool:
        return self.tag in RECOGNIZED

    def get(self, name: str, default: str | None = None) -> str | None:
        for key, value in self.attributes:
            if key == name:
                return value
        return default

    def has(self, name: str) -> bool:
        return any(key == name for key, _ in self.attributes)

    def elements(self) -> Iterator[HtmlNode]:
        for child in self.children:
            if isinstance(child, HtmlNode):
                yield child

    def iter(self) -> Iterator[HtmlNode]:
        yield self
        for child in self.elements():
            yield from child.iter()

    def text(self) -> str:
        parts = []
        for child in self.children:
            parts.append(child if isinstance(child, str) else child.text())
        return "".join(parts)


class _TreeBuilder(HTMLParser):
    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self.root = HtmlNode("#document")
        self.stack: list[HtmlNode] = [self.root]

    # helpers

    @property
    def current(self) -> HtmlNode:
        return self.stack[-1]

    def _table_index(self) -> int | None:
        for i in range(len(self.stack) - 1, 0, -1):
            if self.stack[i].tag == "table":
                return i
        return None

    def _problem(self, message: str) -> None:
        i = self._table_index()
        if i is not None:
            line, col = self.getpos()
            self.stack[i].problems.append(f"{message} (line {line})")

    def _push(self, tag: str, attrs) -> HtmlNode:
        node = HtmlNode(tag, [(k, v or "") for k, v in attrs], position=self.getpos(), parent=self.current)
        self.current.children.append(node)
        self.stack.append(node)
        return node

    def _pop_to(self, index: int) -> None:
        del self.stack[index:]

    def _find(self, tags, stop_at_table: bool = True) -> int | None:
        for i in range(len(self.stack) - 1, 0, -1):
            tag = self.stack[i].tag
            if tag in tags:
                return i
            if stop_at_table and tag == "table":
                return None
        return None

    # events

    def handle_starttag(self, tag: str, attrs) -> None:
        tag = tag.lower()
        in_table = self._table_index() is not None
        if not in_table or tag not in TABLE_TAGS:
            self._push(tag, attrs)
            if tag in VOID:
                self.stack.pop()
            return
        table = self._table_index()
        if tag in CELLS:
            row = self._find({"tr"})
            if row is not None:
                self._pop_to(row + 1)
            else:
                section = self._find(SECTIONS)
                self._pop_to((section if section is not None else table) + 1)
                self._problem(f"<{tag}> outside a row")
                self._push("tr", [])
            self._push(tag, attrs)
        elif tag == "tr":
            section = self._find(SECTIONS)
            self._pop_to((section if section is not None else table) + 1)
            self._push(tag, attrs)
        elif tag == "table":
            if self._find(CELLS | {"caption"}) is None:
                self._problem("<table> directly inside table structure")
            self._push(tag, attrs)
        else:
            # caption or a row group ends whatever is open in the table
            self._pop_to(table + 1)
            self._push(tag, attrs)

    def handle_startendtag(self, tag: str, attrs) -> None:
        self.handle_starttag(tag, attrs)
        tag = tag.lower()
        if tag not in VOID and self.current.tag == tag:
            self.stack.pop()

    def handle_endtag(self, tag: str) -> None:
        tag = tag.lower()
        if tag in VOID:
            return
        if tag in TABLE_TAGS:
            table = self._table_index()
            if tag == "table":
                if table is None:
                    return
                self._pop_to(table)
                return
            i = self._find({tag})
            if i is None:
                if table is not None:
                    self._problem(f"stray </{tag}>")
                elif self._find({tag}, stop_at_table=False) is not None:
                    self._pop_to(self._find({tag}, stop_at_table=False))
                return
            self._pop_to(i)
            return
        # ordinary element: close only within the innermost cell/table boundary
        for j in range(len(self.stack) - 1, 0, -1):
            node = self.stack[j]
            if node.tag == tag:
                self._pop_to(j)
                return
            if node.tag in TABLE_TAGS:
                return

    def handle_data(self, data: str) -> None:
        self.current.children.append(data)

    def close(self) -> None:
        super().close()
        for node in self.stack[1:]:
            if node.tag == "table":
                line, _ = node.position
                node.problems.append(f"<table> opened on line {line} is never closed")
        del self.stack[1:]


def read_html(text: str | bytes) -> list[HtmlNode]:
    """Parse ``text`` and return the top-level nodes (never raises)."""
    if isinstance(text, bytes):
        text = text.decode("utf-8", errors="replace")
    builder = _TreeBuilder()
    try:
        builder.feed(text)
        builder.close()
    except Exception as exc:  # html.parser has a few assertion paths on junk input
        for node in builder.stack[1:]:
            if node.tag == "table":
                node.problems.append(f"unreadable markup: {exc}")
        del builder.stack[1:]
    return list(builder.root.elements())


def iter_tables(nodes) -> Iterator[HtmlNode]:
    """All table nodes, outer before inner, in document order."""
    for node in nodes:
        for element in node.iter():
            if element.tag == "table":
                yield element
