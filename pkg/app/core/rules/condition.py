"""Rule C: semantically equal condition rewrites.

Mirrors a comparison (``a > b`` -> ``b < a``) and rewrites boolean literals
(``true`` -> ``!false``, ``True`` -> ``not False``).
"""

from typing import List, Optional

from tree_sitter import Node

from app.core.rules.base import RuleId, Site, body_nodes, is_pure, make_site, named
from app.core.source import Edit, LangId, SyntaxTree

MIRRORS = {"<": ">", ">": "<", "<=": ">=", ">=": "<=", "==": "==", "!=": "!="}

# parents under which a bare ``not X`` parses the same as the literal it replaces
_BARE_NOT_PARENTS = {
    "if_statement",
    "elif_clause",
    "while_statement",
    "return_statement",
    "assignment",
    "augmented_assignment",
    "boolean_operator",
    "not_operator",
    "argument_list",
    "keyword_argument",
    "expression_statement",
    "parenthesized_expression",
    "conditional_expression",
    "list",
    "tuple",
    "pair",
    "subscript",
}


def find_sites(tree: SyntaxTree) -> List[Site]:
    if tree.lang is LangId.JAVA:
        comparisons = body_nodes(tree, {"binary_expression"})
    else:
        comparisons = body_nodes(tree, {"comparison_operator"})
    sites = [_mirror(tree, node) for node in comparisons]
    sites += [_literal(tree, node) for node in body_nodes(tree, {"true", "false"})]
    return [site for site in sites if site is not None]


def _is_comparison(tree: SyntaxTree, node: Node) -> bool:
    if node.type == "comparison_operator":
        return True
    if node.type != "binary_expression":
        return False
    operator = node.child_by_field_name("operator")
    return operator is not None and tree.text(operator) in MIRRORS


def _mirror(tree: SyntaxTree, node: Node) -> Optional[Site]:
    operands = named(node)
    operators = [child for child in node.children if not child.is_named]
    if len(operands) != 2 or len(operators) != 1:
        return None
    operator = operators[0]
    op = tree.text(operator)
    if op not in MIRRORS:
        return None
    left, right = operands
    if _is_comparison(tree, left) or _is_comparison(tree, right):
        return None
    if not is_pure(tree, left) or not is_pure(tree, right):
        return None
    before = tree.source[left.end_byte : operator.start_byte].decode("utf-8")
    after = tree.source[operator.end_byte : right.start_byte].decode("utf-8")
    replacement = tree.text(right) + before + MIRRORS[op] + after + tree.text(left)
    edit = Edit(tree.span(node), replacement)
    return make_site(tree, RuleId.C, node, [edit], shape="mirror")


def _literal(tree: SyntaxTree, node: Node) -> Optional[Site]:
    if tree.lang is LangId.JAVA:
        replacement = "!false" if node.type == "true" else "!true"
    else:
        replacement = "not False" if node.type == "true" else "not True"
        if node.parent is None or node.parent.type not in _BARE_NOT_PARENTS:
            replacement = f"({replacement})"
    return make_site(tree, RuleId.C, node, [Edit(tree.span(node), replacement)], shape="literal")
