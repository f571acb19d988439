"""Rule P: permute independent code.

Two kinds of site: an if/else whose condition is negated while the branches
trade places, and two adjacent assignments with disjoint def-use sets that
trade places.
"""

from typing import List, Optional, Tuple

from tree_sitter import Node

from app.core.rules.base import (
    RuleId,
    Site,
    body_nodes,
    contains,
    content_span,
    content_text,
    identifiers,
    is_pure,
    make_site,
    named,
)
from app.core.source import Edit, LangId, SyntaxTree

JAVA_FLIPS = {"<": ">=", ">=": "<", ">": "<=", "<=": ">", "==": "!=", "!=": "=="}
PYTHON_FLIPS = {**JAVA_FLIPS, "in": "not in", "not in": "in", "is": "is not", "is not": "is"}

_PY_ATOMS = {"identifier", "call", "attribute", "subscript", "parenthesized_expression", "true", "false", "none"}


def find_sites(tree: SyntaxTree) -> List[Site]:
    if tree.lang is LangId.JAVA:
        branches = [_java_branches(tree, node) for node in body_nodes(tree, {"if_statement"})]
    else:
        branches = [_python_branches(tree, node) for node in body_nodes(tree, {"if_statement"})]
    sites = [site for site in branches if site is not None]
    for block in body_nodes(tree, {"block"}):
        statements = named(block)
        for first, second in zip(statements, statements[1:]):
            site = _swap_statements(tree, first, second)
            if site is not None:
                sites.append(site)
    return sites


def negate(tree: SyntaxTree, condition: Node) -> str:
    """Text of ``not condition``, flipping a top-level comparison when there is one."""
    if tree.lang is LangId.JAVA:
        if condition.type == "binary_expression":
            operator = condition.child_by_field_name("operator")
            if operator is not None and tree.text(operator) in JAVA_FLIPS:
                return _replace_operator(tree, condition, operator, JAVA_FLIPS[tree.text(operator)])
        return f"!({tree.text(condition)})"
    if condition.type == "comparison_operator":
        operators = [child for child in condition.children if not child.is_named]
        operands = named(condition)
        if len(operators) == 1 and len(operands) == 2:
            op = " ".join(tree.text(operators[0]).split())
            if op in PYTHON_FLIPS:
                return _replace_operator(tree, condition, operators[0], PYTHON_FLIPS[op])
    if condition.type in _PY_ATOMS:
        return f"not {tree.text(condition)}"
    return f"not ({tree.text(condition)})"


def _replace_operator(tree: SyntaxTree, node: Node, operator: Node, replacement: str) -> str:
    head = tree.source[node.start_byte : operator.start_byte].decode("utf-8")
    tail = tree.source[operator.end_byte : node.end_byte].decode("utf-8")
    return head + replacement + tail


def _java_branches(tree: SyntaxTree, node: Node) -> Optional[Site]:
    condition = node.child_by_field_name("condition")
    consequence = node.child_by_field_name("consequence")
    alternative = node.child_by_field_name("alternative")
    if condition is None or consequence is None or alternative is None:
        return None
    if alternative.type == "if_statement" or consequence.type == "if_statement":
        return None
    for branch in (consequence, alternative):
        # an unbraced branch holding an if would rebind the else
        if branch.type != "block" and contains(tree, branch, {"if_statement"}):
            return None
    inner = named(condition)
    if len(inner) != 1:
        return None
    edits = [
        Edit(tree.span(inner[0]), negate(tree, inner[0])),
        Edit(tree.span(consequence), tree.text(alternative)),
        Edit(tree.span(alternative), tree.text(consequence)),
    ]
    return make_site(tree, RuleId.P, node, edits, shape="branches")


def _python_branches(tree: SyntaxTree, node: Node) -> Optional[Site]:
    condition = node.child_by_field_name("condition")
    consequence = node.child_by_field_name("consequence")
    alternatives = node.children_by_field_name("alternative")
    if condition is None or consequence is None or len(alternatives) != 1:
        return None
    else_clause = alternatives[0]
    if else_clause.type != "else_clause":
        return None
    alternative = else_clause.child_by_field_name("body")
    if alternative is None:
        return None
    then_body, else_body = named(consequence), named(alternative)
    if not then_body or not else_body:
        return None
    then_inline = then_body[0].start_point[0] == node.start_point[0]
    else_inline = else_body[0].start_point[0] == else_clause.start_point[0]
    if then_inline != else_inline:
        return None
    if not then_inline and then_body[0].start_point[1] != else_body[0].start_point[1]:
        return None
    edits = [
        Edit(tree.span(condition), negate(tree, condition)),
        Edit(content_span(tree, then_body[0], then_body[-1]), content_text(tree, else_body[0], else_body[-1])),
        Edit(content_span(tree, else_body[0], else_body[-1]), content_text(tree, then_body[0], then_body[-1])),
    ]
    return make_site(tree, RuleId.P, node, edits, shape="branches")


def _assignment_parts(tree: SyntaxTree, statement: Node) -> Optional[Tuple[str, Node]]:
    """Target name and value of a plain single-target assignment statement."""
    if tree.lang is LangId.JAVA and statement.type == "local_variable_declaration":
        declarators = [child for child in named(statement) if child.type == "variable_declarator"]
        if len(declarators) != 1:
            return None
        name = declarators[0].child_by_field_name("name")
        value = declarators[0].child_by_field_name("value")
        if name is None or value is None:
            return None
        return tree.text(name), value
    if statement.type != "expression_statement":
        return None
    children = named(statement)
    if len(children) != 1:
        return None
    assignment = children[0]
    if tree.lang is LangId.JAVA:
        if assignment.type != "assignment_expression":
            return None
        operator = assignment.child_by_field_name("operator")
        if operator is None or tree.text(operator) != "=":
            return None
    elif assignment.type != "assignment" or assignment.child_by_field_name("type") is not None:
        return None
    left = assignment.child_by_field_name("left")
    right = assignment.child_by_field_name("right")
    if left is None or right is None or left.type != "identifier":
        return None
    if right.type in ("assignment", "assignment_expression"):
        return None
    return tree.text(left), right


def _swap_statements(tree: SyntaxTree, first: Node, second: Node) -> Optional[Site]:
    one, two = _assignment_parts(tree, first), _assignment_parts(tree, second)
    if one is None or two is None:
        return None
    (name_one, value_one), (name_two, value_two) = one, two
    if name_one == name_two or not is_pure(tree, value_one) or not is_pure(tree, value_two):
        return None
    if name_one in identifiers(tree, value_two) or name_two in identifiers(tree, value_one):
        return None
    edits = [
        Edit(content_span(tree, first), content_text(tree, second)),
        Edit(content_span(tree, second), content_text(tree, first)),
    ]
    return make_site(tree, RuleId.P, first, edits, end_node=second, shape="statements")
