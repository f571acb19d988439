from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Optional, Set, Tuple

from tree_sitter import Node

from app.core.source import COMMENT_TYPES, Edit, LangId, Span, SyntaxTree


class RuleId(str, Enum):
    L = "L"
    E = "E"
    P = "P"
    C = "C"


RULE_ORDER: Tuple[RuleId, ...] = (RuleId.L, RuleId.E, RuleId.P, RuleId.C)


@dataclass(frozen=True)
class Site:
    rule: RuleId
    span: Span
    kind: str
    anchor: str
    edits: Tuple[Edit, ...]
    payload: Dict[str, str] = field(default_factory=dict, compare=False)


def make_site(
    tree: SyntaxTree,
    rule: RuleId,
    node: Node,
    edits: Iterable[Edit],
    end_node: Optional[Node] = None,
    start_node: Optional[Node] = None,
    **payload: str,
) -> Site:
    first = start_node or node
    last = end_node or node
    span = Span(first.start_byte - tree.offset, content_end(tree, last) - tree.offset)
    anchor = tree.source[span.start + tree.offset : span.end + tree.offset].decode("utf-8")
    return Site(rule=rule, span=span, kind=node.type, anchor=anchor, edits=tuple(edits), payload=payload)


def named(node: Node) -> List[Node]:
    return [child for child in node.named_children if child.type not in COMMENT_TYPES]


def token(node: Node, kind: str) -> Optional[Node]:
    """First anonymous child of the given type, e.g. the ':' of a Python header."""
    for child in node.children:
        if not child.is_named and child.type == kind:
            return child
    return None


def content_end(tree: SyntaxTree, node: Node) -> int:
    end = node.end_byte
    while end > node.start_byte and tree.source[end - 1 : end] in (b" ", b"\t", b"\r", b"\n"):
        end -= 1
    return end


def content_span(tree: SyntaxTree, first: Node, last: Optional[Node] = None) -> Span:
    last = last or first
    return Span(first.start_byte - tree.offset, content_end(tree, last) - tree.offset)


def content_text(tree: SyntaxTree, first: Node, last: Optional[Node] = None) -> str:
    last = last or first
    return tree.source[first.start_byte : content_end(tree, last)].decode("utf-8")


def gap(tree: SyntaxTree, left: Node, right: Node) -> str:
    return tree.source[left.end_byte : right.start_byte].decode("utf-8")


def contains(tree: SyntaxTree, node: Node, kinds: Set[str]) -> bool:
    return any(child.type in kinds for child in tree.walk(node))


def identifiers(tree: SyntaxTree, node: Node) -> Set[str]:
    return {tree.text(child) for child in tree.walk(node) if child.type == "identifier"}


def in_body(tree: SyntaxTree, node: Node) -> bool:
    body = tree.body()
    return body is not None and body.start_byte <= node.start_byte and node.end_byte <= body.end_byte


def body_nodes(tree: SyntaxTree, kinds: Set[str]) -> List[Node]:
    body = tree.body()
    if body is None:
        return []
    return [node for node in tree.walk(body) if node.type in kinds]


_PY_LEAVES = {"identifier", "integer", "float", "true", "false", "none"}
_PY_COMPOSITES = {
    "binary_operator",
    "unary_operator",
    "comparison_operator",
    "boolean_operator",
    "not_operator",
    "parenthesized_expression",
    "subscript",
    "attribute",
    "slice",
    "tuple",
    "list",
}
_PY_PURE_CALLS = {"len", "abs", "min", "max", "int", "float", "str", "bool", "ord", "chr", "round"}

_JAVA_LEAVES = {
    "identifier",
    "decimal_integer_literal",
    "hex_integer_literal",
    "octal_integer_literal",
    "binary_integer_literal",
    "decimal_floating_point_literal",
    "hex_floating_point_literal",
    "string_literal",
    "character_literal",
    "true",
    "false",
    "null_literal",
}
_JAVA_COMPOSITES = {
    "binary_expression",
    "unary_expression",
    "parenthesized_expression",
    "array_access",
    "field_access",
    "ternary_expression",
}
_JAVA_MATH = {"abs", "max", "min", "sqrt", "pow", "floor", "ceil"}
_JAVA_PURE_METHODS = {"length", "charAt"}


def is_pure(tree: SyntaxTree, node: Node) -> bool:
    """Syntactic side-effect freedom: reads, literals and arithmetic only."""
    if tree.lang is LangId.PYTHON:
        return _py_pure(tree, node)
    return _java_pure(tree, node)


def _py_pure(tree: SyntaxTree, node: Node) -> bool:
    kind = node.type
    if kind in COMMENT_TYPES or kind in _PY_LEAVES:
        return True
    if kind == "string":
        return not contains(tree, node, {"interpolation"})
    if kind == "call":
        function = node.child_by_field_name("function")
        arguments = node.child_by_field_name("arguments")
        if function is None or function.type != "identifier" or tree.text(function) not in _PY_PURE_CALLS:
            return False
        if arguments is None or arguments.type != "argument_list":
            return False
        return all(_py_pure(tree, argument) for argument in named(arguments))
    if kind in _PY_COMPOSITES:
        return all(_py_pure(tree, child) for child in named(node))
    return False


def _java_pure(tree: SyntaxTree, node: Node) -> bool:
    kind = node.type
    if kind in COMMENT_TYPES or kind in _JAVA_LEAVES:
        return True
    if kind == "cast_expression":
        value = node.child_by_field_name("value")
        return value is not None and _java_pure(tree, value)
    if kind == "method_invocation":
        receiver = node.child_by_field_name("object")
        name = node.child_by_field_name("name")
        arguments = node.child_by_field_name("arguments")
        if receiver is None or name is None or arguments is None:
            return False
        method = tree.text(name)
        if tree.text(receiver) == "Math":
            allowed = method in _JAVA_MATH
        else:
            allowed = method in _JAVA_PURE_METHODS and _java_pure(tree, receiver)
        return allowed and all(_java_pure(tree, argument) for argument in named(arguments))
    if kind in _JAVA_COMPOSITES:
        return all(_java_pure(tree, child) for child in named(node))
    return False


def python_written_names(tree: SyntaxTree, node: Node) -> Set[str]:
    """Names bound anywhere under ``node``: assignment targets, loop targets, walrus names."""
    written: Set[str] = set()
    for child in tree.walk(node):
        target = None
        if child.type in ("assignment", "augmented_assignment", "for_statement"):
            target = child.child_by_field_name("left")
        elif child.type == "named_expression":
            target = child.child_by_field_name("name")
        elif child.type in ("global_statement", "nonlocal_statement", "delete_statement"):
            target = child
        if target is not None:
            written |= identifiers(tree, target) if target.type != "identifier" else {tree.text(target)}
    return written


def java_written_names(tree: SyntaxTree, node: Node) -> Set[str]:
    written: Set[str] = set()
    for child in tree.walk(node):
        target = None
        if child.type == "assignment_expression":
            target = child.child_by_field_name("left")
        elif child.type == "update_expression":
            target = next(iter(named(child)), None)
        elif child.type == "variable_declarator":
            target = child.child_by_field_name("name")
        if target is not None and target.type == "identifier":
            written.add(tree.text(target))
    return written
