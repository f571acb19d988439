"""Rule L: for <-> while loop conversion.

Java ``for(init; cond; update) body`` becomes ``init while(cond){body update}``
and ``while(cond)`` becomes ``for(;cond;)``. Python ``for i in range(...)``
with a literal step becomes an explicit counter loop and the counter loop
pattern folds back into ``range`` when its bounds are provably ints. Loops
containing ``continue`` are never touched since the update would be skipped.
"""

from typing import Dict, List, Optional, Set, Tuple

from tree_sitter import Node

from app.core.rules.base import (
    RuleId,
    Site,
    body_nodes,
    contains,
    content_span,
    content_text,
    gap,
    identifiers,
    make_site,
    named,
    python_written_names,
    token,
)
from app.core.source import Edit, LangId, Span, SyntaxTree, apply_edits

_JAVA_EXITS = {"return_statement", "break_statement", "continue_statement", "throw_statement", "yield_statement"}
_JAVA_OPAQUE = {
    "try_statement",
    "try_with_resources_statement",
    "switch_expression",
    "switch_statement",
    "synchronized_statement",
    "labeled_statement",
    "do_statement",
}
_DECLARING = {"variable_declarator", "formal_parameter", "catch_formal_parameter", "enhanced_for_statement"}
_INT_OPS = {"+", "-", "*", "//", "%"}
_INT_AUGMENTED = {op + "=" for op in _INT_OPS}
_NAME_BINDERS = {
    "parameters",
    "lambda_parameters",
    "as_pattern_target",
    "for_in_clause",
    "import_statement",
    "import_from_statement",
    "global_statement",
    "nonlocal_statement",
    "delete_statement",
}
_PATTERN_TARGETS = {"pattern_list", "tuple_pattern", "list_pattern", "list_splat_pattern"}


def find_sites(tree: SyntaxTree) -> List[Site]:
    if tree.lang is LangId.JAVA:
        sites = [_java_for(tree, node) for node in body_nodes(tree, {"for_statement"})]
        sites += [_java_while(tree, node) for node in body_nodes(tree, {"while_statement"})]
    else:
        sites = [_python_for(tree, node) for node in body_nodes(tree, {"for_statement"})]
        sites += [_python_while(tree, node) for node in body_nodes(tree, {"while_statement"})]
    return [site for site in sites if site is not None]


def _java_completes(tree: SyntaxTree, node: Node) -> bool:
    kind = node.type
    if kind in _JAVA_EXITS or kind in _JAVA_OPAQUE:
        return False
    if kind == "block":
        statements = named(node)
        return _java_completes(tree, statements[-1]) if statements else True
    if kind == "if_statement":
        consequence = node.child_by_field_name("consequence")
        alternative = node.child_by_field_name("alternative")
        if alternative is None or consequence is None:
            return True
        return _java_completes(tree, consequence) or _java_completes(tree, alternative)
    if kind == "while_statement":
        condition = node.child_by_field_name("condition")
        return condition is None or tree.text(condition).replace(" ", "") != "(true)"
    if kind == "for_statement":
        return node.child_by_field_name("condition") is not None
    return True


def _declared_elsewhere(tree: SyntaxTree, names: Set[str], own: List[Node]) -> bool:
    function = tree.function()
    if function is None:
        return True
    own_ids = {node.id for node in own}
    for node in tree.walk(function):
        if node.type not in _DECLARING or node.id in own_ids:
            continue
        name = node.child_by_field_name("name")
        if name is not None and tree.text(name) in names:
            return True
    return False


def _java_for(tree: SyntaxTree, node: Node) -> Optional[Site]:
    body = node.child_by_field_name("body")
    open_paren, close_paren = token(node, "("), _last_token(node, ")")
    if body is None or open_paren is None or close_paren is None:
        return None
    parent = node.parent
    if parent is None or parent.type == "labeled_statement":
        return None
    if contains(tree, body, {"continue_statement"}) or not _java_completes(tree, body):
        return None

    inits = node.children_by_field_name("init")
    declarators: List[Node] = []
    if inits and inits[0].type == "local_variable_declaration":
        init_text = tree.text(inits[0])
        declarators = [child for child in named(inits[0]) if child.type == "variable_declarator"]
    else:
        init_text = " ".join(tree.text(expr) + ";" for expr in inits)
    condition = node.child_by_field_name("condition")
    updates = node.children_by_field_name("update")
    update_text = " ".join(tree.text(expr) + ";" for expr in updates)

    names = {tree.text(d.child_by_field_name("name")) for d in declarators if d.child_by_field_name("name")}
    wrap = parent.type != "block" or (bool(names) and _declared_elsewhere(tree, names, declarators))

    def local(child: Node) -> Span:
        return Span(child.start_byte - node.start_byte, child.end_byte - node.start_byte)

    header = "while" + gap(tree, node.children[0], open_paren) + "("
    header += (tree.text(condition) if condition is not None else "true") + ")" + gap(tree, close_paren, body)
    edits = [Edit(Span(0, body.start_byte - node.start_byte), header)]
    multiline = node.start_point[0] != node.end_point[0]
    if update_text:
        if body.type == "block":
            statements = named(body)
            if statements:
                last = statements[-1]
                indent = tree.indent(last)
                separator = "\n" + indent if multiline and indent is not None else " "
                edits.append(Edit(local(last), tree.text(last) + separator + update_text))
            else:
                edits.append(Edit(local(body.children[-1]), update_text + "}"))
        else:
            edits.append(Edit(local(body), "{" + tree.text(body) + " " + update_text + "}"))
    loop = apply_edits(tree.text(node), edits)

    indent = tree.indent(node)
    separator = "\n" + indent if multiline and indent is not None else " "
    replacement = init_text + separator + loop if init_text else loop
    if wrap:
        replacement = "{" + replacement + ("\n" + indent + "}" if multiline and indent is not None else "}")
    return make_site(tree, RuleId.L, node, [Edit(tree.span(node), replacement)], direction="for_to_while")


def _java_while(tree: SyntaxTree, node: Node) -> Optional[Site]:
    condition = node.child_by_field_name("condition")
    body = node.child_by_field_name("body")
    if condition is None or body is None or contains(tree, body, {"continue_statement"}):
        return None
    inner = tree.text(condition)[1:-1]
    header = "for" + gap(tree, node.children[0], condition) + "(;" + inner + ";)"
    edit = Edit(Span(node.start_byte - tree.offset, condition.end_byte - tree.offset), header)
    return make_site(tree, RuleId.L, node, [edit], direction="while_to_for")


def _last_token(node: Node, kind: str) -> Optional[Node]:
    for child in reversed(node.children):
        if not child.is_named and child.type == kind:
            return child
    return None


def _int_literal(tree: SyntaxTree, node: Node) -> Optional[int]:
    text = tree.text(node).replace("_", "")
    if node.type == "unary_operator" and text.startswith("-"):
        operand = node.child_by_field_name("argument")
        value = _int_literal(tree, operand) if operand is not None else None
        return -value if value is not None else None
    if node.type != "integer":
        return None
    try:
        return int(text, 0)
    except ValueError:
        return None


def _int_like(tree: SyntaxTree, node: Node, var: str) -> Tuple[bool, Set[str]]:
    """Whether ``node`` is a simple integer expression free of ``var``; also returns len() targets."""
    len_targets: Set[str] = set()
    for child in tree.walk(node):
        kind = child.type
        if not child.is_named:
            if child.parent is not None and child.parent.type == "binary_operator" and kind not in _INT_OPS:
                return False, set()
            continue
        if kind in ("integer", "parenthesized_expression", "argument_list", "binary_operator", "unary_operator"):
            continue
        if kind == "identifier":
            if tree.text(child) == var:
                return False, set()
            continue
        if kind == "call":
            function = child.child_by_field_name("function")
            arguments = child.child_by_field_name("arguments")
            args = named(arguments) if arguments is not None else []
            if function is None or tree.text(function) != "len" or len(args) != 1 or args[0].type != "identifier":
                return False, set()
            len_targets.add(tree.text(args[0]))
            continue
        return False, set()
    return True, len_targets


def _is_range_call(tree: SyntaxTree, node: Node) -> bool:
    function = node.child_by_field_name("function") if node.type == "call" else None
    return function is not None and tree.text(function) == "range"


def _free_names(tree: SyntaxTree, node: Node) -> Set[str]:
    """Identifiers read as values, leaving out call targets and ``len`` arguments."""
    names: Set[str] = set()
    for child in tree.walk(node):
        if child.type != "identifier" or child.parent is None:
            continue
        parent = child.parent
        if parent.type == "call" or (parent.type == "argument_list" and parent.parent is not None and parent.parent.type == "call"):
            continue
        names.add(tree.text(child))
    return names


def _proven_ints(tree: SyntaxTree, function: Node) -> Set[str]:
    """Local names every binding of which yields an ``int``.

    A binding counts only as ``name = <int expression>``, ``name op= <int
    expression>`` with an integer-closed operator, or ``for name in range(...)``.
    Parameters and names bound in any other way are never proven.
    """
    values: Dict[str, List[Node]] = {}
    excluded: Set[str] = set()
    for node in tree.walk(function):
        kind = node.type
        if kind in _NAME_BINDERS:
            excluded |= identifiers(tree, node)
        elif kind in ("function_definition", "class_definition") and node.id != function.id:
            name = node.child_by_field_name("name")
            if name is not None:
                excluded.add(tree.text(name))
        elif kind == "named_expression":
            name = node.child_by_field_name("name")
            if name is not None:
                excluded.add(tree.text(name))
        elif kind in ("assignment", "augmented_assignment", "for_statement"):
            left, right = node.child_by_field_name("left"), node.child_by_field_name("right")
            if left is None:
                continue
            if left.type != "identifier":
                if left.type in _PATTERN_TARGETS:
                    excluded |= identifiers(tree, left)
                continue
            name = tree.text(left)
            if right is None:
                continue
            if kind == "for_statement":
                if not _is_range_call(tree, right):
                    excluded.add(name)
                values.setdefault(name, [])
                continue
            operator = node.child_by_field_name("operator")
            if kind == "augmented_assignment" and (operator is None or tree.text(operator) not in _INT_AUGMENTED):
                excluded.add(name)
                continue
            values.setdefault(name, []).append(right)

    proven = set(values) - excluded
    changed = True
    while changed:
        changed = False
        for name in sorted(proven):
            if not all(_int_like(tree, value, "")[0] and _free_names(tree, value) <= proven for value in values[name]):
                proven.discard(name)
                changed = True
    return proven


def _used_only_in_rebinding_loops(tree: SyntaxTree, var: str, inside: Span) -> bool:
    function = tree.function()
    if function is None:
        return False
    for child in tree.walk(function):
        if child.type != "identifier" or tree.text(child) != var:
            continue
        position = child.start_byte - tree.offset
        if inside.start <= position < inside.end:
            continue
        ancestor = child.parent
        rebound = False
        while ancestor is not None and ancestor.id != function.id:
            if ancestor.type == "for_statement":
                left = ancestor.child_by_field_name("left")
                if left is not None and left.type == "identifier" and tree.text(left) == var:
                    rebound = True
                    break
            ancestor = ancestor.parent
        if not rebound:
            return False
    return True


def _python_for(tree: SyntaxTree, node: Node) -> Optional[Site]:
    left = node.child_by_field_name("left")
    right = node.child_by_field_name("right")
    body = node.child_by_field_name("body")
    colon = token(node, ":")
    if left is None or right is None or body is None or colon is None:
        return None
    if left.type != "identifier" or node.child_by_field_name("alternative") is not None:
        return None
    if right.type != "call" or tree.text(right.child_by_field_name("function")) != "range":
        return None
    arguments = right.child_by_field_name("arguments")
    args = named(arguments) if arguments is not None else []
    if not 1 <= len(args) <= 3 or any(arg.type in ("keyword_argument", "list_splat") for arg in args):
        return None
    statements = named(body)
    indent, body_indent = tree.indent(node), tree.indent(statements[0]) if statements else None
    if indent is None or body_indent is None or body.start_point[0] == node.start_point[0]:
        return None
    if contains(tree, body, {"continue_statement"}):
        return None

    var = tree.text(left)
    start = "0" if len(args) == 1 else tree.text(args[0])
    bound = args[0] if len(args) == 1 else args[1]
    step = 1 if len(args) < 3 else _int_literal(tree, args[2])
    if not step:
        return None
    written = python_written_names(tree, body)
    bound_ok, len_targets = _int_like(tree, bound, var)
    if not bound_ok or var in written or identifiers(tree, bound) & written:
        return None
    if any(target in identifiers(tree, body) for target in len_targets):
        return None
    if len(args) > 1 and not _int_like(tree, args[0], var)[0]:
        return None
    if not _used_only_in_rebinding_loops(tree, var, tree.span(node)):
        return None

    op, increment = ("<", f"{var} += {step}") if step > 0 else (">", f"{var} -= {-step}")
    header = f"{var} = {start}\n{indent}while {var} {op} {tree.text(bound)}:"
    last = statements[-1]
    edits = [
        Edit(Span(node.start_byte - tree.offset, colon.end_byte - tree.offset), header),
        Edit(content_span(tree, last), content_text(tree, last) + "\n" + body_indent + increment),
    ]
    return make_site(tree, RuleId.L, node, edits, direction="for_to_while")


def _python_while(tree: SyntaxTree, node: Node) -> Optional[Site]:
    condition = node.child_by_field_name("condition")
    body = node.child_by_field_name("body")
    colon = token(node, ":")
    previous = node.prev_named_sibling
    if condition is None or body is None or colon is None or previous is None:
        return None
    if node.child_by_field_name("alternative") is not None or condition.type != "comparison_operator":
        return None
    operands = named(condition)
    operators = [child.type for child in condition.children if not child.is_named]
    if len(operands) != 2 or operators not in (["<"], [">"]) or operands[0].type != "identifier":
        return None
    var, bound, ascending = tree.text(operands[0]), operands[1], operators == ["<"]

    if previous.type != "expression_statement" or gap(tree, previous, node).strip():
        return None
    assignment = named(previous)[0] if len(named(previous)) == 1 else None
    if assignment is None or assignment.type != "assignment" or assignment.child_by_field_name("type") is not None:
        return None
    target, start = assignment.child_by_field_name("left"), assignment.child_by_field_name("right")
    if target is None or start is None or target.type != "identifier" or tree.text(target) != var:
        return None

    statements = named(body)
    if len(statements) < 2 or contains(tree, body, {"continue_statement"}):
        return None
    last, penultimate = statements[-1], statements[-2]
    update = named(last)[0] if last.type == "expression_statement" and len(named(last)) == 1 else None
    if update is None or update.type != "augmented_assignment":
        return None
    update_target, update_value = update.child_by_field_name("left"), update.child_by_field_name("right")
    update_op = update.child_by_field_name("operator")
    if update_target is None or update_value is None or update_op is None or tree.text(update_target) != var:
        return None
    step = _int_literal(tree, update_value)
    if step is None or step <= 0 or tree.text(update_op) != ("+=" if ascending else "-="):
        return None
    if gap(tree, penultimate, last).strip():
        return None

    written_before_update: Set[str] = set()
    for statement in statements[:-1]:
        written_before_update |= python_written_names(tree, statement)
    bound_ok, len_targets = _int_like(tree, bound, var)
    start_ok, _ = _int_like(tree, start, var)
    if not bound_ok or not start_ok or var in written_before_update:
        return None
    # range() rejects floats, so every name in the bounds must be a proven int
    function = tree.function()
    proven = _proven_ints(tree, function) if function is not None else set()
    if not (_free_names(tree, bound) | _free_names(tree, start)) <= proven:
        return None
    if identifiers(tree, bound) & written_before_update:
        return None
    if any(target_name in identifiers(tree, body) for target_name in len_targets):
        return None
    if tree.indent(previous) is None or tree.indent(node) is None:
        return None
    region = Span(previous.start_byte - tree.offset, node.end_byte - tree.offset)
    if not _used_only_in_rebinding_loops(tree, var, region):
        return None

    signed = step if ascending else -step
    start_text, bound_text = tree.text(start), tree.text(bound)
    if signed == 1:
        arguments = bound_text if start_text == "0" else f"{start_text}, {bound_text}"
    else:
        arguments = f"{start_text}, {bound_text}, {signed}"
    edits = [
        Edit(Span(previous.start_byte - tree.offset, colon.end_byte - tree.offset), f"for {var} in range({arguments}):"),
        Edit(Span(content_span(tree, penultimate).end, content_span(tree, last).end), ""),
    ]
    return make_site(tree, RuleId.L, node, edits, start_node=previous, direction="while_to_for")
