"""acctab command line.

Settings are resolved flags first, then ``@`` directives in the markup,
then built-in defaults.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from typing import Sequence

from . import __version__
from .errors import ParseError
from .headers import build_index
from .html import GeneratorOptions, generate
from .lint import lint_html
from .markup import MarkupSource, Separator, parse
from .model import TableDocument
from .speech import linearize, render_transcript

EXIT_OK = 0
EXIT_LINT = 1
EXIT_INPUT = 2
EXIT_USAGE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="acctab",
        description="Compile linear table markup to accessible HTML, simulate its reading, lint HTML tables.",
        epilog="Precedence: command-line flags override @directives, which override defaults.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("input", nargs="?", default="-", help="input file, '-' for standard input (default)")
        p.add_argument("-o", "--output", default="-", help="output file, '-' for standard output (default)")

    def markup_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--separator", choices=[s.value for s in Separator])
        p.add_argument("--caption", help="table caption")
        p.add_argument("--details", help="long description, rendered in a figcaption")
        p.add_argument("--no-row-headers", action="store_true", help="do not treat the first column as row headers")

    def html_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--no-aria", action="store_true", help='omit role="row" on rows')
        p.add_argument("--dimensions-in-caption", action="store_true")
        p.add_argument("--id-prefix", default="h")

    def report_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=["text", "json"], default="text")

    build = sub.add_parser("build", help="markup to HTML")
    common(build)
    markup_flags(build)
    html_flags(build)

    speak = sub.add_parser("speak", help="markup to a screen-reader transcript")
    common(speak)
    markup_flags(speak)
    speak.add_argument("--full-context", action="store_true", help="repeat every header label on every cell")

    lint = sub.add_parser("lint", help="audit HTML tables")
    common(lint)
    report_flags(lint)

    check = sub.add_parser("check", help="build markup and lint the result")
    common(check)
    markup_flags(check)
    html_flags(check)
    report_flags(check)
    return parser


def _read(path: str, stdin) -> tuple[str, str]:
    if path == "-":
        data = stdin.read()
        if isinstance(data, bytes):
            data = data.decode("utf-8", errors="replace")
        return "<stdin>", data
    with open(path, encoding="utf-8", errors="replace", newline="") as fh:
        return path, fh.read()


def _write(path: str, text: str, stdout) -> None:
    if path == "-":
        stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _document(args, text: str) -> TableDocument:
    separator = Separator(args.separator) if args.separator else None
    document = parse(MarkupSource.from_text(text, separator))
    changes = {}
    if args.caption is not None:
        changes["caption"] = args.caption
    if args.details is not None:
        changes["details"] = args.details
    if args.no_row_headers:
        changes["row_header_mode"] = False
    return replace(document, **changes) if changes else document


def _options(args) -> GeneratorOptions:
    return GeneratorOptions(
        emit_aria=not args.no_aria,
        dimensions_in_caption=args.dimensions_in_caption,
        id_prefix=args.id_prefix,
    )


def run(argv: Sequence[str] | None = None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return EXIT_OK if not exc.code else EXIT_USAGE

    try:
        options = _options(args) if args.command in ("build", "check") else None
    except ValueError as exc:
        print(f"acctab: {exc}", file=stderr)
        return EXIT_USAGE

    try:
        name, text = _read(args.input, stdin)
    except OSError as exc:
        print(f"{args.input}: {exc.strerror or exc}", file=stderr)
        return EXIT_INPUT

    try:
        if args.command == "lint":
            report = lint_html(text)
            _write(args.output, report.to_json() if args.format == "json" else report.to_text(), stdout)
            return EXIT_LINT if report.errors else EXIT_OK

        document = _document(args, text)
        if args.command == "speak":
            index = build_index(document)
            utterances = linearize(document, index, suppress_repeats=not args.full_context)
            _write(args.output, render_transcript(utterances), stdout)
            return EXIT_OK

        html = generate(document, build_index(document), options)
        if args.command == "build":
            _write(args.output, html, stdout)
            return EXIT_OK
        report = lint_html(html)
        _write(args.output, report.to_json() if args.format == "json" else report.to_text(), stdout)
        return EXIT_LINT if report.errors else EXIT_OK
    except ParseError as exc:
        where = f"{name}:{exc.line}" if exc.line is not None else name
        print(f"{where}: {exc.message}", file=stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"{args.output}: {exc.strerror or exc}", file=stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
