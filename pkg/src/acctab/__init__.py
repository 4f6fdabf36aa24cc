"""Accessible HTML data tables: compile, read aloud, lint."""

__version__ = "0.1.0"

from .errors import (
    DanglingMerge,
    DuplicateDirective,
    EmptyBody,
    NoConsistentSeparator,
    OutOfBounds,
    ParseError,
    RaggedRow,
)
from .headers import HeaderIndex, HeaderRef, HeaderSegment, build_index, build_segments, resolve_cell
from .html import GeneratorOptions, IdRegistry, assign_ids, generate, slugify
from .lint import LintFinding, LintReport, Severity, lint, lint_html
from .markup import MarkupSource, Separator, detect_separator, parse, parse_text, serialize
from .model import CellGroup, Row, RowKind, TableClass, TableDocument, classify, validate
from .reader import HtmlNode, read_html
from .speech import Utterance, UtteranceKind, linearize, render_transcript


def compile_markup(text: str, options: GeneratorOptions | None = None) -> str:
    """Markup text straight to HTML."""
    document = parse_text(text)
    return generate(document, build_index(document), options)
