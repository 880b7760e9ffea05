"""
The function mini-language of the command line.

Expressions are Python syntax restricted to

    pole(w0)  pole(w0, k)  expw(lambda)  const(c)  scale(c, expr)
    + - * and ** with a positive integer exponent

with complex literals such as ``2``, ``-0.5j`` or ``3+1j``.  Points are
comma or semicolon separated complex literals: ``"3, 0.5j, -2-1j"``.
"""

import ast
import logging

from ..exceptions import DomainError, FunctionSpecError
from ..functions import Const, Expr, ExpW, Pole

logger = logging.getLogger(__name__)


def _number(node: ast.AST, text: str) -> complex:
    """A numeric literal, possibly signed or of the form a+bj."""
    if isinstance(node, ast.Constant) and isinstance(node.value, int | float | complex):
        if isinstance(node.value, bool):
            raise FunctionSpecError(f"expected a number in {text!r}")
        return complex(node.value)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub | ast.UAdd):
        value = _number(node.operand, text)
        return -value if isinstance(node.op, ast.USub) else value
    if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Add | ast.Sub):
        left, right = _number(node.left, text), _number(node.right, text)
        return left + right if isinstance(node.op, ast.Add) else left - right
    raise FunctionSpecError(f"expected a number, got {ast.unparse(node)!r} in {text!r}")


def _is_number(node: ast.AST) -> bool:
    try:
        _number(node, "")
    except FunctionSpecError:
        return False
    return True


def _real(node: ast.AST, text: str, what: str) -> float:
    value = _number(node, text)
    if value.imag != 0:
        raise FunctionSpecError(f"{what} must be real in {text!r}")
    return value.real


def _call(node: ast.Call, text: str) -> Expr:
    if not isinstance(node.func, ast.Name) or node.keywords:
        raise FunctionSpecError(f"unsupported call {ast.unparse(node)!r} in {text!r}")
    name, args = node.func.id, node.args
    if name == "pole" and len(args) in (1, 2):
        order = 1
        if len(args) == 2:
            order_value = _real(args[1], text, "pole order")
            if not order_value.is_integer() or order_value < 1:
                raise FunctionSpecError(f"pole order must be a positive integer in {text!r}")
            order = int(order_value)
        return Pole(_number(args[0], text), order)
    if name == "expw" and len(args) == 1:
        return ExpW(_real(args[0], text, "expw rate"))
    if name == "const" and len(args) == 1:
        return Const(_number(args[0], text))
    if name == "scale" and len(args) == 2:
        return _number(args[0], text) * _build(args[1], text)
    raise FunctionSpecError(f"unknown function {name}/{len(args)} in {text!r}")


def _build(node: ast.AST, text: str) -> Expr:
    if isinstance(node, ast.Call):
        return _call(node, text)
    if _is_number(node):
        return Const(_number(node, text))
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub | ast.UAdd):
        inner = _build(node.operand, text)
        return -inner if isinstance(node.op, ast.USub) else inner
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            exponent = _real(node.right, text, "exponent")
            if not exponent.is_integer() or exponent < 1:
                raise FunctionSpecError(f"exponents must be positive integers in {text!r}")
            return _build(node.left, text) ** int(exponent)
        left, right = _build(node.left, text), _build(node.right, text)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            if isinstance(left, Const):
                return left.value * right
            if isinstance(right, Const):
                return right.value * left
            return left * right
    raise FunctionSpecError(f"unsupported expression {ast.unparse(node)!r} in {text!r}")


def parse_function(text: str) -> Expr:
    """
    Parse a function expression.

    Raises:
        FunctionSpecError: The text is not a valid expression
    """
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as e:
        raise FunctionSpecError(f"cannot parse function {text!r}: {e.msg}") from e
    try:
        expr = _build(tree.body, text)
    except DomainError as e:
        raise FunctionSpecError(f"invalid function {text!r}: {e}") from e
    logger.debug(f"parsed {text!r} as {expr}")
    return expr


def parse_point(text: str) -> complex:
    """Parse one complex literal."""
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as e:
        raise FunctionSpecError(f"cannot parse point {text!r}: {e.msg}") from e
    return _number(tree.body, text)


def parse_points(text: str) -> list[complex]:
    """
    Parse a comma or semicolon separated list of complex literals.

    Raises:
        FunctionSpecError: An item is not a number, or the list is empty
    """
    items = [item for item in text.replace(";", ",").split(",") if item.strip()]
    if not items:
        raise FunctionSpecError("expected at least one point")
    return [parse_point(item) for item in items]


def parse_reals(text: str) -> tuple[float, ...]:
    """Parse a comma separated list of real numbers, such as a p sweep."""
    values = []
    for point in parse_points(text):
        if point.imag != 0:
            raise FunctionSpecError(f"expected real numbers, got {point} in {text!r}")
        values.append(point.real)
    return tuple(values)
