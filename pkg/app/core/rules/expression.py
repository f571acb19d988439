"""Rule E: compound assignment <-> expanded assignment.

``a += b`` becomes ``a = a + b`` (the right side parenthesized unless it is a
primary) and ``a = a + b`` folds back into ``a += b``. Java sites are only
expanded when the declared type of ``a`` makes the implicit cast of the
compound form a no-op; Python sites only when ``a`` is a scalar local.
"""

from typing import Dict, List, Optional

from tree_sitter import Node

from app.core.rules.base import RuleId, Site, body_nodes, make_site, named
from app.core.source import Edit, LangId, SyntaxTree

_PY_OPS = {"+=", "-=", "*=", "/=", "//=", "%=", "**=", "&=", "|=", "^=", "<<=", ">>="}
_JAVA_OPS = {"+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>="}
_PY_PRIMARY = {
    "identifier",
    "integer",
    "float",
    "string",
    "true",
    "false",
    "none",
    "call",
    "attribute",
    "subscript",
    "parenthesized_expression",
    "list",
    "dictionary",
}
_JAVA_PRIMARY = {
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
    "method_invocation",
    "field_access",
    "array_access",
    "parenthesized_expression",
    "this",
}
_PY_SCALAR_INIT = {"integer", "float", "string", "true", "false"}

_RANK = {"int": 1, "long": 2, "float": 3, "double": 4}
_WIDENED = {"char": "int", "short": "int", "byte": "int"}
_COMPARISONS = {"<", ">", "<=", ">=", "==", "!=", "&&", "||", "instanceof"}


def find_sites(tree: SyntaxTree) -> List[Site]:
    if tree.lang is LangId.JAVA:
        types = java_local_types(tree)
        sites = [_java_site(tree, node, types) for node in body_nodes(tree, {"assignment_expression"})]
    else:
        sites = [_python_expand(tree, node) for node in body_nodes(tree, {"augmented_assignment"})]
        sites += [_python_fold(tree, node) for node in body_nodes(tree, {"assignment"})]
    return [site for site in sites if site is not None]


def _spaced(tree: SyntaxTree, operator: Node) -> bool:
    return tree.source[operator.start_byte - 1 : operator.start_byte] in (b" ", b"\t")


def _expand(tree: SyntaxTree, node: Node, primary: set) -> Optional[Site]:
    left = node.child_by_field_name("left")
    right = node.child_by_field_name("right")
    operator = node.child_by_field_name("operator")
    if left is None or right is None or operator is None or left.type != "identifier":
        return None
    name, op = tree.text(left), tree.text(operator)[:-1]
    value = tree.text(right) if right.type in primary else f"({tree.text(right)})"
    if _spaced(tree, operator):
        replacement = f"{name} = {name} {op} {value}"
    else:
        replacement = f"{name}={name}{op}{value}"
    return make_site(tree, RuleId.E, node, [Edit(tree.span(node), replacement)], direction="expand", target=name)


def _fold(tree: SyntaxTree, node: Node, ops: set) -> Optional[Site]:
    left = node.child_by_field_name("left")
    right = node.child_by_field_name("right")
    if left is None or right is None or left.type != "identifier" or right.type not in ("binary_operator", "binary_expression"):
        return None
    inner_left = right.child_by_field_name("left")
    inner_right = right.child_by_field_name("right")
    inner_op = right.child_by_field_name("operator")
    if inner_left is None or inner_right is None or inner_op is None:
        return None
    name, op = tree.text(left), tree.text(inner_op)
    if inner_left.type != "identifier" or tree.text(inner_left) != name or op + "=" not in ops:
        return None
    separator = " " if _spaced(tree, inner_op) else ""
    replacement = f"{name}{separator}{op}={separator}{tree.text(inner_right)}"
    return make_site(tree, RuleId.E, node, [Edit(tree.span(node), replacement)], direction="fold", target=name)


def _python_scalar(tree: SyntaxTree, name: str) -> bool:
    function = tree.function()
    if function is None:
        return False
    parameters = function.child_by_field_name("parameters")
    if parameters is not None and any(
        child.type == "identifier" and tree.text(child) == name for child in tree.walk(parameters)
    ):
        return False
    for node in tree.walk(function):
        if node.type != "assignment":
            continue
        left, right = node.child_by_field_name("left"), node.child_by_field_name("right")
        if left is None or right is None or left.type != "identifier" or tree.text(left) != name:
            continue
        if right.type in _PY_SCALAR_INIT and not any(child.type == "interpolation" for child in tree.walk(right)):
            return True
        if right.type == "unary_operator" and named(right) and named(right)[0].type in ("integer", "float"):
            return True
    return False


def _python_expand(tree: SyntaxTree, node: Node) -> Optional[Site]:
    operator = node.child_by_field_name("operator")
    left = node.child_by_field_name("left")
    if operator is None or left is None or tree.text(operator) not in _PY_OPS or left.type != "identifier":
        return None
    if not _python_scalar(tree, tree.text(left)):
        return None
    return _expand(tree, node, _PY_PRIMARY)


def _python_fold(tree: SyntaxTree, node: Node) -> Optional[Site]:
    left = node.child_by_field_name("left")
    if left is None or left.type != "identifier" or not _python_scalar(tree, tree.text(left)):
        return None
    if node.child_by_field_name("type") is not None:
        return None
    if node.parent is None or node.parent.type != "expression_statement":
        return None
    return _fold(tree, node, _PY_OPS)


def java_local_types(tree: SyntaxTree) -> Dict[str, str]:
    """Declared type per local name in the method; names declared with two types are dropped."""
    function = tree.function()
    types: Dict[str, str] = {}
    conflicts = set()
    if function is None:
        return types
    for node in tree.walk(function):
        if node.type == "formal_parameter":
            declared = [(node.child_by_field_name("name"), node.child_by_field_name("dimensions"))]
            type_node = node.child_by_field_name("type")
        elif node.type in ("local_variable_declaration", "field_declaration"):
            type_node = node.child_by_field_name("type")
            declared = [
                (child.child_by_field_name("name"), child.child_by_field_name("dimensions"))
                for child in named(node)
                if child.type == "variable_declarator"
            ]
        else:
            continue
        if type_node is None:
            continue
        for name, dimensions in declared:
            if name is None:
                continue
            text = tree.text(type_node) + (tree.text(dimensions).replace(" ", "") if dimensions is not None else "")
            key = tree.text(name)
            if key in types and types[key] != text:
                conflicts.add(key)
            types[key] = text
    for key in conflicts:
        types.pop(key)
    return types


def _numeric(*kinds: Optional[str]) -> Optional[str]:
    if any(kind not in _RANK for kind in kinds):
        return None
    return max(kinds, key=lambda kind: _RANK[kind])


def java_type(tree: SyntaxTree, node: Node, types: Dict[str, str]) -> Optional[str]:
    """Static type of a Java expression when it can be read off syntactically."""
    kind = node.type
    text = tree.text(node)
    if kind in ("decimal_integer_literal", "hex_integer_literal", "octal_integer_literal", "binary_integer_literal"):
        return "long" if text[-1] in "lL" else "int"
    if kind in ("decimal_floating_point_literal", "hex_floating_point_literal"):
        return "float" if text[-1] in "fF" else "double"
    if kind == "character_literal":
        return "int"
    if kind == "string_literal":
        return "String"
    if kind in ("true", "false"):
        return "boolean"
    if kind == "identifier":
        declared = types.get(text)
        return _WIDENED.get(declared, declared) if declared else None
    if kind == "parenthesized_expression":
        inner = named(node)
        return java_type(tree, inner[0], types) if inner else None
    if kind == "unary_expression":
        operand = node.child_by_field_name("operand")
        operand_type = java_type(tree, operand, types) if operand is not None else None
        if operand_type in ("char", "short", "byte"):
            return "int"
        return operand_type
    if kind == "cast_expression":
        type_node = node.child_by_field_name("type")
        cast = tree.text(type_node) if type_node is not None else None
        return _WIDENED.get(cast, cast)
    if kind == "array_access":
        array = node.child_by_field_name("array")
        array_type = java_type(tree, array, types) if array is not None else None
        if array_type is None or not array_type.endswith("[]"):
            return None
        element = array_type[:-2]
        return _WIDENED.get(element, element)
    if kind == "field_access":
        field = node.child_by_field_name("field")
        return "int" if field is not None and tree.text(field) == "length" else None
    if kind == "method_invocation":
        return _java_call_type(tree, node, types)
    if kind == "ternary_expression":
        consequence = node.child_by_field_name("consequence")
        alternative = node.child_by_field_name("alternative")
        if consequence is None or alternative is None:
            return None
        first, second = java_type(tree, consequence, types), java_type(tree, alternative, types)
        return first if first == second else _numeric(first, second)
    if kind == "binary_expression":
        return _java_binary_type(tree, node, types)
    return None


def _java_call_type(tree: SyntaxTree, node: Node, types: Dict[str, str]) -> Optional[str]:
    receiver = node.child_by_field_name("object")
    name = node.child_by_field_name("name")
    arguments = node.child_by_field_name("arguments")
    if name is None:
        return None
    method = tree.text(name)
    if receiver is not None and tree.text(receiver) == "Math":
        if method in ("sqrt", "pow", "floor", "ceil"):
            return "double"
        if method in ("abs", "max", "min") and arguments is not None:
            return _numeric(*(java_type(tree, argument, types) for argument in named(arguments)))
        return None
    if method in ("length", "size", "charAt"):
        return "int"
    return None


def _java_binary_type(tree: SyntaxTree, node: Node, types: Dict[str, str]) -> Optional[str]:
    operator = node.child_by_field_name("operator")
    left = node.child_by_field_name("left")
    right = node.child_by_field_name("right")
    if operator is None or left is None or right is None:
        return None
    op = tree.text(operator)
    if op in _COMPARISONS:
        return "boolean"
    left_type, right_type = java_type(tree, left, types), java_type(tree, right, types)
    if op == "+" and "String" in (left_type, right_type):
        return "String"
    if op in ("<<", ">>", ">>>"):
        return left_type if left_type in ("int", "long") else None
    if op in ("&", "|", "^") and left_type == right_type == "boolean":
        return "boolean"
    return _numeric(left_type, right_type)


def _java_expand_safe(target: Optional[str], op: str, value: Optional[str]) -> bool:
    if target == "String":
        return op == "+"
    if target == "boolean":
        return op in ("&", "|", "^") and value == "boolean"
    if target not in ("int", "long", "double") or value not in _RANK:
        return False
    if op in ("<<", ">>", ">>>"):
        return target in ("int", "long") and value in ("int", "long")
    if op in ("&", "|", "^") and "double" in (target, value):
        return False
    return _RANK[value] <= _RANK[target]


def _java_site(tree: SyntaxTree, node: Node, types: Dict[str, str]) -> Optional[Site]:
    operator = node.child_by_field_name("operator")
    left = node.child_by_field_name("left")
    right = node.child_by_field_name("right")
    if operator is None or left is None or right is None or left.type != "identifier":
        return None
    op = tree.text(operator)
    if op == "=":
        return _fold(tree, node, _JAVA_OPS)
    if op not in _JAVA_OPS:
        return None
    target = types.get(tree.text(left))
    if not _java_expand_safe(target, op[:-1], java_type(tree, right, types)):
        return None
    return _expand(tree, node, _JAVA_PRIMARY)
