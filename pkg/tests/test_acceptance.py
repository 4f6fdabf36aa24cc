"""Exit criteria. Each test records a PASS/FAIL line printed in the terminal summary."""

from __future__ import annotations

import functools
import random
import time

from acctab.headers import build_index, build_segments, resolve_cell
from acctab.html import generate
from acctab.lint import Severity, cell_contexts, lint, table_grids
from acctab.markup import parse, parse_text, serialize
from acctab.model import TableClass, classify, validate
from acctab.reader import read_html
from acctab.speech import UtteranceKind, linearize

from conftest import GOLDEN
from corpus import corpus, expressible_corpus, random_options
from family import family
from lint_fixtures import FIXTURES
from oracles import resolve_oracle

RESULTS: dict[int, tuple[bool, str]] = {}
CORPUS_SIZE = 1000


def criterion(number: int, name: str):
    def wrap(test):
        @functools.wraps(test)
        def run(*args, **kwargs):
            RESULTS[number] = (False, name)
            test(*args, **kwargs)
            RESULTS[number] = (True, name)

        return run

    return wrap


@functools.lru_cache(maxsize=None)
def _corpus():
    return corpus(CORPUS_SIZE, seed=20190318)


@functools.lru_cache(maxsize=None)
def _generated():
    rng = random.Random(4)
    out = []
    for doc in _corpus():
        options = random_options(rng)
        out.append((doc, options, generate(doc, build_index(doc), options)))
    return out


@criterion(1, "Table 1 round trip (golden HTML, segments, spans, headers; < 1 s)")
def test_table1_round_trip():
    start = time.perf_counter()
    doc = parse_text((GOLDEN / "table1.tbl").read_text(encoding="utf-8"))
    assert validate(doc).ok
    assert classify(doc) is TableClass.COMPLEX
    segments = {(s.label, s.start, s.end, s.rowspan) for s in build_segments(doc).segments}
    assert segments == {
        ("Pays", 0, 1, 2),
        ("Grandes Villes", 1, 3, 1),
        ("Habitants (millions)", 3, 4, 2),
        ("Capitale", 1, 2, 1),
        ("Métropole", 2, 3, 1),
    }
    html = generate(doc, build_index(doc))
    assert html == (GOLDEN / "table1.html").read_text(encoding="utf-8")

    (grid,) = table_grids(read_html(html))
    sections = {s.tag: [n for n in s.elements() if n.tag == "tr"] for s in grid.sections}
    assert len(sections["thead"]) == 2 and len(sections["tbody"]) == 4
    villes = next(c.node for c in grid.cells if c.node.text() == "Grandes Villes")
    assert villes.get("colspan") == "2" and villes.get("scope") == "colgroup"
    ids = {c.node.text(): c.node.get("id") for c in grid.cells if c.tag == "th"}
    sydney = next(c.node for c in grid.cells if c.node.text() == "Sydney")
    assert sydney.get("headers").split() == [ids["Grandes Villes"], ids["Métropole"], ids["Australie"]]
    assert time.perf_counter() - start < 1.0


@criterion(2, "resolve_cell equals the brute-force oracle on the exhaustive family (< 60 s)")
def test_oracle_equivalence():
    start = time.perf_counter()
    documents = cells = 0
    for doc in family():
        index = build_index(doc)
        documents += 1
        for r in range(len(doc.body_rows)):
            for c in range(doc.column_count):
                got = [tuple(ref) for ref in resolve_cell(index, r, c)]
                assert got == resolve_oracle(doc, r, c, doc.row_header_mode), (doc, r, c)
                cells += 1
    elapsed = time.perf_counter() - start
    print(f"{documents} documents, {cells} cells, {elapsed:.1f} s")
    assert documents > 50_000
    assert elapsed < 60.0


@criterion(3, f"lint(generate(d)) has zero errors on {CORPUS_SIZE} random documents")
def test_self_lint_soundness():
    failures = []
    for doc, options, html in _generated():
        assert doc.caption
        errors = [f for f in lint(read_html(html)) if f.severity is Severity.ERROR]
        if errors:
            failures.append((doc, errors))
    assert len(_generated()) >= 1000
    assert failures == []


@criterion(4, "every headers id resolves to exactly one th id of the same table")
def test_reference_integrity():
    for doc, options, html in _generated():
        (grid,) = table_grids(read_html(html))
        th_ids = [c.node.get("id") for c in grid.cells if c.tag == "th"]
        for cell in grid.cells:
            for token in (cell.node.get("headers") or "").split():
                assert th_ids.count(token) == 1
        assert "A5" not in lint(read_html(html)).codes


@criterion(5, "parse(serialize(d)) == d on dialect-expressible documents")
def test_markup_round_trip():
    pairs = expressible_corpus(CORPUS_SIZE, seed=20190318)
    assert len(pairs) == CORPUS_SIZE
    for doc, separator in pairs:
        assert parse(serialize(doc, separator)) == doc


@criterion(6, "Table 1 is announced as 4 columns and 6 rows")
def test_dimension_announcement():
    doc = parse_text((GOLDEN / "table1.tbl").read_text(encoding="utf-8"))
    first = linearize(doc, build_index(doc))[0]
    assert first.kind is UtteranceKind.TABLE_INTRO
    assert first.content == "Exemple d'un tableau complexe, tableau de 4 colonnes et 6 lignes"


@criterion(7, "lint fixtures A0-A9, positive and negative, match exactly")
def test_lint_rule_coverage():
    for code in [f"A{i}" for i in range(10)]:
        assert {positive for rule, positive, _, _ in FIXTURES if rule == code} == {True, False}, code
    for rule, positive, html, expected in FIXTURES:
        assert lint(read_html(html)).codes == expected, (rule, html)


@criterion(8, "contexts read back from HTML headers equal unsuppressed linearization")
def test_cross_module_consistency():
    for doc, options, html in _generated():
        row_headers = doc.row_header_mode if options.row_headers is None else options.row_headers
        index = build_index(doc, row_headers=row_headers)
        spoken = sorted(
            (u.position, u.context_labels, u.content)
            for u in linearize(doc, index, suppress_repeats=False)
            if u.kind is UtteranceKind.CELL
        )
        (grid,) = table_grids(read_html(html))
        recovered = sorted(((c.row, c.column), c.labels, c.text or "vide") for c in cell_contexts(grid))
        assert recovered == spoken
