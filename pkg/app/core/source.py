"""Function-level source units for Java and Python.

Units are parsed with tree-sitter. Java units are bare method declarations and
are parsed inside a synthetic ``class Main { ... }`` shell; every span handed
out by this module is expressed in unit coordinates (byte offsets into the
unit's own UTF-8 text), so callers never see the shell.
"""

import threading
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence

import tree_sitter_java
import tree_sitter_python
from tree_sitter import Language, Node, Parser, Tree

from app.core.errors import CodeSyntaxError, Diagnostic, OutOfBoundsError, OverlapError, UsageError


class LangId(str, Enum):
    JAVA = "java"
    PYTHON = "python"


@dataclass(frozen=True)
class SourceUnit:
    id: str
    lang: LangId
    text: str

    def __post_init__(self) -> None:
        if not self.text:
            raise UsageError(f"source unit {self.id!r} has empty text")


@dataclass(frozen=True, order=True)
class Span:
    start: int
    end: int


class Edit(NamedTuple):
    span: Span
    replacement: str


COMMENT_TYPES = frozenset({"comment", "line_comment", "block_comment"})
JAVA_PREFIX = "class Main {\n"
JAVA_SUFFIX = "\n}\n"

_LANGUAGES: Dict[LangId, Language] = {
    LangId.JAVA: Language(tree_sitter_java.language()),
    LangId.PYTHON: Language(tree_sitter_python.language()),
}
_local = threading.local()


def _parser(lang: LangId) -> Parser:
    # tree-sitter parsers are not shareable between threads
    parsers = getattr(_local, "parsers", None)
    if parsers is None:
        parsers = _local.parsers = {}
    parser = parsers.get(lang)
    if parser is None:
        parser = parsers[lang] = Parser(_LANGUAGES[lang])
    return parser


@dataclass(frozen=True)
class SyntaxTree:
    lang: LangId
    tree: Tree
    source: bytes
    offset: int

    @property
    def root(self) -> Node:
        return self.tree.root_node

    def text(self, node: Node) -> str:
        return self.source[node.start_byte : node.end_byte].decode("utf-8")

    def span(self, node: Node) -> Span:
        return Span(node.start_byte - self.offset, node.end_byte - self.offset)

    def walk(self, node: Optional[Node] = None) -> Iterator[Node]:
        stack = [node or self.root]
        while stack:
            current = stack.pop()
            yield current
            stack.extend(reversed(current.children))

    def definitions(self) -> List[Node]:
        container = self.root
        if self.lang is LangId.JAVA:
            shell = next((n for n in self.root.named_children if n.type == "class_declaration"), None)
            if shell is None:
                return []
            container = shell.child_by_field_name("body")
            if container is None:
                return []
        return [n for n in container.named_children if n.type not in COMMENT_TYPES]

    def function(self) -> Optional[Node]:
        kind = "method_declaration" if self.lang is LangId.JAVA else "function_definition"
        for node in self.definitions():
            if node.type == kind:
                return node
        return None

    def body(self) -> Optional[Node]:
        function = self.function()
        if function is None:
            return None
        return function.child_by_field_name("body")

    def indent(self, node: Node) -> Optional[str]:
        """Leading whitespace of the line holding ``node``, or None when code precedes it."""
        line_start = self.source.rfind(b"\n", 0, node.start_byte) + 1
        prefix = self.source[line_start : node.start_byte].decode("utf-8")
        if prefix.strip():
            return None
        return prefix

    def line(self, node: Node) -> int:
        row = node.start_point[0] + 1
        if self.lang is LangId.JAVA:
            row -= JAVA_PREFIX.count("\n")
        return max(row, 1)


def _wrap(text: str, lang: LangId) -> tuple:
    if lang is LangId.JAVA:
        return (JAVA_PREFIX + text + JAVA_SUFFIX).encode("utf-8"), len(JAVA_PREFIX.encode("utf-8"))
    return text.encode("utf-8"), 0


def parse_text(text: str, lang: LangId) -> SyntaxTree:
    """Parse without rejecting error nodes."""
    source, offset = _wrap(text, lang)
    tree = _parser(lang).parse(source)
    return SyntaxTree(lang=lang, tree=tree, source=source, offset=offset)


def _diagnostics(tree: SyntaxTree) -> List[Diagnostic]:
    if not tree.root.has_error:
        return []
    found: List[Diagnostic] = []
    stack = [tree.root]
    while stack:
        node = stack.pop()
        if node.type == "ERROR":
            found.append(Diagnostic(tree.line(node), node.start_point[1] + 1, "unexpected input"))
            continue
        if node.is_missing:
            found.append(Diagnostic(tree.line(node), node.start_point[1] + 1, f"missing {node.type}"))
            continue
        if node.has_error:
            stack.extend(reversed(node.children))
    return found


def syntax_check(text: str, lang: LangId) -> List[Diagnostic]:
    return _diagnostics(parse_text(text, lang))


def parse(unit: SourceUnit) -> SyntaxTree:
    tree = parse_text(unit.text, unit.lang)
    problems = _diagnostics(tree)
    if problems:
        raise CodeSyntaxError(problems)
    return tree


def apply_edits(text: str, edits: Sequence[Edit]) -> str:
    """Replace each span, right to left; bytes outside the spans are untouched."""
    if not edits:
        return text
    data = text.encode("utf-8")
    ordered = sorted((Edit(*edit) for edit in edits), key=lambda edit: (edit.span.start, edit.span.end))
    previous_end = 0
    for edit in ordered:
        start, end = edit.span.start, edit.span.end
        if start < 0 or end > len(data) or start >= end:
            raise OutOfBoundsError(f"span {start}..{end} invalid for {len(data)} bytes")
        if start < previous_end:
            raise OverlapError(f"span {start}..{end} overlaps a previous edit ending at {previous_end}")
        previous_end = end
    for edit in reversed(ordered):
        data = data[: edit.span.start] + edit.replacement.encode("utf-8") + data[edit.span.end :]
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise OutOfBoundsError("edit span splits a multi-byte character") from exc


def function_name(text: str, lang: LangId) -> Optional[str]:
    tree = parse_text(text, lang)
    function = tree.function()
    if function is None:
        return None
    name = function.child_by_field_name("name")
    return tree.text(name) if name is not None else None


def strip_comments(text: str, lang: LangId) -> str:
    tree = parse_text(text, lang)
    limit = len(text.encode("utf-8"))
    edits = []
    for node in tree.walk():
        if node.type not in COMMENT_TYPES:
            continue
        span = tree.span(node)
        if span.start >= 0 and span.end <= limit:
            edits.append(Edit(span, " "))
    return apply_edits(text, edits)
