import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from acctab.headers import build_index
from acctab.html import GeneratorOptions, assign_ids, generate, slugify
from acctab.lint import build_grid, table_grids
from acctab.model import TableDocument
from acctab.reader import read_html

from conftest import GOLDEN
from corpus import corpus, random_options
from oracles import slug_oracle


@pytest.mark.parametrize(
    "label",
    ["Habitants (millions)", "Métropole", "Grandes Villes", "Algérie", "Brésil", "Ça & là", "  --x--  ", "Été 2019!"],
)
def test_slug_matches_oracle(label):
    assert slugify(label) == slug_oracle(label)


def test_slug_examples():
    assert slugify("Habitants (millions)") == "habitants-millions"
    assert slugify("Métropole") == "metropole"
    assert slugify("!!!") == ""


def test_table1_golden(table1):
    html = generate(table1, build_index(table1))
    assert html == (GOLDEN / "table1.html").read_text(encoding="utf-8")
    assert '<td headers="h-grandes-villes h-metropole h-australie">Sydney</td>' in html
    assert '<th id="h-grandes-villes" colspan="2" scope="colgroup">Grandes Villes</th>' in html
    assert "summary" not in html


def test_ids(table1):
    ids = assign_ids(table1)
    assert ids[(0, 3)] == "h-habitants-millions"
    assert ids[(1, 2)] == "h-metropole"
    # absorbed cells get nothing
    assert ids.get((1, 0)) is None


def test_fallback_and_collision_ids():
    doc = TableDocument.from_grid([["A", "A", "!!!", "a-2"]], [["1", "2", "3", "4"]], row_header_mode=False)
    ids = assign_ids(doc)
    assert [ids[(0, c)] for c in range(4)] == ["h-a", "h-a-2", "h-r0c2", "h-a-2-2"]


def test_id_prefix():
    doc = TableDocument.from_grid([["A"]], [["1"]])
    assert assign_ids(doc, GeneratorOptions(id_prefix="t")).get((0, 0)) == "t-a"
    with pytest.raises(ValueError):
        GeneratorOptions(id_prefix="9 bad")
    with pytest.raises(ValueError):
        GeneratorOptions(id_prefix="")


def test_headerless_single_cell():
    doc = TableDocument.from_grid(body=[["x"]], caption="x", row_header_mode=False)
    html = generate(doc, build_index(doc))
    assert html == "\n".join(
        [
            "<table>",
            "  <caption>x</caption>",
            "  <tbody>",
            '    <tr role="row">',
            "      <td>x</td>",
            "    </tr>",
            "  </tbody>",
            "</table>",
            "",
        ]
    )


def test_no_aria_and_dimensions(table1):
    html = generate(table1, options=GeneratorOptions(emit_aria=False, dimensions_in_caption=True))
    assert "role=" not in html
    assert "<caption>Exemple d'un tableau complexe (4 colonnes, 6 lignes)</caption>" in html


def test_details_become_figcaption():
    doc = TableDocument.from_grid([["A"]], [["1"]], caption="c", details="long <text>")
    lines = generate(doc).splitlines()
    assert lines[0] == "<figure>"
    assert lines[1] == "  <figcaption>long &lt;text&gt;</figcaption>"
    assert lines[-1] == "</figure>"


def test_empty_caption_is_omitted():
    doc = TableDocument.from_grid(body=[["x"]])
    assert "caption" not in generate(doc)


def test_row_headers_option_overrides_document(table1):
    html = generate(table1, build_index(table1), GeneratorOptions(row_headers=False))
    assert 'scope="row"' not in html
    assert '<td headers="h-grandes-villes h-metropole">Sydney</td>' in html


def test_escaping():
    doc = TableDocument.from_grid([['a "q" & <b>']], [["x > y"]], caption="<&>")
    html = generate(doc)
    assert "<caption>&lt;&amp;&gt;</caption>" in html
    assert 'a &quot;q&quot; &amp; &lt;b&gt;' in html
    assert "x &gt; y" in html


def test_deterministic(table1):
    assert generate(table1) == generate(table1)


def test_scope_and_reference_invariants():
    import random

    rng = random.Random(3)
    for doc in corpus(300, seed=5):
        html = generate(doc, options=random_options(rng))
        (grid,) = table_grids(read_html(html))
        ids = [c.node.get("id") for c in grid.cells if c.tag == "th"]
        assert len(ids) == len(set(ids))
        for cell in grid.cells:
            for token in (cell.node.get("headers") or "").split():
                assert ids.count(token) == 1
            scope = cell.node.get("scope")
            assert scope != "rowgroup"
            if cell.tag == "th" and scope in ("col", "colgroup"):
                assert (scope == "colgroup") == (cell.colspan > 1)


printable = st.text(
    alphabet=st.characters(blacklist_categories=("Cc", "Cs", "Zl", "Zp")), min_size=1, max_size=12
).map(str.strip).filter(bool)


@settings(max_examples=300, deadline=None)
@given(printable, printable)
def test_escaping_totality(head, body):
    doc = TableDocument.from_grid([[head]], [[body]], caption=head, row_header_mode=False)
    (grid,) = table_grids(read_html(generate(doc)))
    assert [c.node.text() for c in grid.cells] == [head, body]
    assert grid.captions[0].text() == head
