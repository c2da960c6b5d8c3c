"""Text front end for quantizable observables.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := ('-' | '+') unary | factor
    factor := number | 'i' | ident | func '(' expr ')' | '(' expr ')'
    func   := cos | sin | exp
    ident  := 'A' digits | 'phi' digits

Numeric subtrees are folded to a single :class:`Num` at parse time. Lowering
turns the tree into an :class:`~bshq.quantize.ObservableExpr` and rejects
anything outside the quantizable class (angle factors times nonlinear action
functions, bare angles, non-integer frequencies).
"""

import cmath
import re
from dataclasses import dataclass, field

from bshq.errors import ExprSyntaxError, UnquantizableExpressionError
from bshq.quantize import LinearAction, ObservableExpr, PureActionFunction, Term

FUNCS = ("cos", "sin", "exp")

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*()]))"
)


@dataclass(frozen=True)
class Num:
    value: complex
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Var:
    name: str
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Call:
    func: str
    arg: object
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Neg:
    operand: object
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object
    span: tuple = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class ExprAst:
    root: object
    n: int
    text: str = field(default="", compare=False)

    def lower(self):
        return lower(self)


def tokenize(text):
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            pos += len(text[pos:]) - len(text[pos:].lstrip())
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start, m.end()))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text, n):
        self.text = text
        self.n = n
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, value=None):
        tok = self.peek()
        if tok is None:
            raise ExprSyntaxError("unexpected end of input", len(self.text))
        if value is not None and tok[1] != value:
            raise ExprSyntaxError(f"expected {value!r}, found {tok[1]!r}", tok[2])
        self.i += 1
        return tok

    def parse(self):
        if not self.tokens:
            raise ExprSyntaxError("empty expression", 0)
        node = self.expr()
        if self.peek() is not None:
            tok = self.peek()
            raise ExprSyntaxError(f"unexpected token {tok[1]!r}", tok[2])
        return node

    def expr(self):
        node = self.term()
        while (tok := self.peek()) and tok[1] in "+-" and tok[0] == "op":
            self.take()
            node = _fold(BinOp(tok[1], node, self.term(), (node.span[0], 0)), self)
        return node

    def term(self):
        node = self.unary()
        while (tok := self.peek()) and tok[1] == "*":
            self.take()
            node = _fold(BinOp("*", node, self.unary(), (node.span[0], 0)), self)
        return node

    def unary(self):
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] in "+-":
            self.take()
            inner = self.unary()
            if tok[1] == "+":
                return inner
            return _fold(Neg(inner, (tok[2], inner.span[1])), self)
        return self.factor()

    def factor(self):
        kind, value, start, end = self.take()
        if kind == "num":
            return Num(complex(float(value)), (start, end))
        if kind == "op" and value == "(":
            node = self.expr()
            close = self.take(")")
            return _respan(node, (start, close[3]))
        if kind == "name":
            if value == "i":
                return Num(1j, (start, end))
            if value in FUNCS:
                self.take("(")
                arg = self.expr()
                close = self.take(")")
                return Call(value, arg, (start, close[3]))
            m = re.fullmatch(r"(A|phi)(\d+)", value)
            if m and 1 <= int(m.group(2)) <= self.n:
                return Var(value, (start, end))
            raise ExprSyntaxError(f"unknown identifier {value!r} (n={self.n})", start)
        raise ExprSyntaxError(f"unexpected token {value!r}", start)


def _respan(node, span):
    return type(node)(**{**node.__dict__, "span": span})


def _fold(node, parser):
    end = parser.tokens[parser.i - 1][3]
    if isinstance(node, Neg):
        if isinstance(node.operand, Num):
            return Num(-node.operand.value, node.span)
        return node
    node = _respan(node, (node.span[0], end))
    if isinstance(node.left, Num) and isinstance(node.right, Num):
        a, b = node.left.value, node.right.value
        value = {"+": a + b, "-": a - b, "*": a * b}[node.op]
        return Num(value, node.span)
    return node


def parse_expr(text, n):
    """Parse and validate; raises on syntax errors and on unquantizable terms."""
    ast = ExprAst(_Parser(text, n).parse(), n, text)
    lower(ast)
    return ast


# pretty printing -----------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2}


def _num_text(z):
    z = complex(z)
    re_, im = z.real, z.imag
    if im == 0:
        re_ += 0.0
        return repr(re_), (3 if re_ < 0 else 4)
    if re_ == 0:
        if im == 1:
            return "i", 4
        return f"{im!r}*i", 2
    return f"({re_!r} + {im!r}*i)", 4


def _prec(node):
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return 3
    if isinstance(node, Num):
        return _num_text(node.value)[1]
    return 4


def pretty_print(node):
    if isinstance(node, ExprAst):
        node = node.root
    if isinstance(node, Num):
        return _num_text(node.value)[0]
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Call):
        return f"{node.func}({pretty_print(node.arg)})"
    if isinstance(node, Neg):
        inner = pretty_print(node.operand)
        return f"-{inner}" if _prec(node.operand) >= 3 else f"-({inner})"
    p = _PREC[node.op]
    left = pretty_print(node.left)
    right = pretty_print(node.right)
    if _prec(node.left) < p:
        left = f"({left})"
    if _prec(node.right) <= p:
        right = f"({right})"
    return f"{left} {node.op} {right}"


# lowering ------------------------------------------------------------------


@dataclass(frozen=True)
class _Mono:
    coeff: complex
    action: object
    k: tuple


@dataclass(frozen=True)
class _PhiLinear:
    coeffs: tuple
    const: complex = 0.0


def _action_fn(action):
    if isinstance(action, LinearAction):
        axis = action.axis
        return lambda *A: A[axis]
    return action.fn


def _action_label(action):
    if isinstance(action, LinearAction):
        return f"A{action.axis + 1}"
    return action.label


def _mul_action(a, b):
    if a is None:
        return b
    if b is None:
        return a
    fa, fb = _action_fn(a), _action_fn(b)
    return PureActionFunction(lambda *A: fa(*A) * fb(*A), f"{_action_label(a)}*{_action_label(b)}")


def _is_constant(series):
    return all(m.action is None and not any(m.k) for m in series)


class _Lowerer:
    def __init__(self, n, term_text):
        self.n = n
        self.term_text = term_text
        self.zero = (0,) * n

    def fail(self, why):
        raise UnquantizableExpressionError(f"term {self.term_text!r}: {why}")

    def visit(self, node):
        if isinstance(node, Num):
            return [_Mono(complex(node.value), None, self.zero)]
        if isinstance(node, Var):
            idx = int(node.name.lstrip("Aphi")) - 1
            if node.name.startswith("A"):
                return [_Mono(1.0, LinearAction(idx), self.zero)]
            coeffs = [0j] * self.n
            coeffs[idx] = 1.0
            return _PhiLinear(tuple(coeffs))
        if isinstance(node, Neg):
            return self.scale(self.visit(node.operand), -1.0)
        if isinstance(node, BinOp):
            a, b = self.visit(node.left), self.visit(node.right)
            if node.op == "-":
                b = self.scale(b, -1.0)
            return self.add(a, b) if node.op in "+-" else self.mul(a, b)
        if isinstance(node, Call):
            return self.call(node.func, self.visit(node.arg))
        raise TypeError(f"unknown node {node!r}")

    def const_of(self, series):
        return sum(m.coeff for m in series)

    def scale(self, v, c):
        if isinstance(v, _PhiLinear):
            return _PhiLinear(tuple(c * x for x in v.coeffs), c * v.const)
        return [_Mono(c * m.coeff, m.action, m.k) for m in v]

    def add(self, a, b):
        if isinstance(a, _PhiLinear) or isinstance(b, _PhiLinear):
            if isinstance(a, list):
                a, b = b, a
            if isinstance(b, list):
                if not _is_constant(b):
                    self.fail("angle variables may only appear linearly inside cos, sin or exp")
                return _PhiLinear(a.coeffs, a.const + self.const_of(b))
            return _PhiLinear(tuple(x + y for x, y in zip(a.coeffs, b.coeffs)), a.const + b.const)
        return a + b

    def mul(self, a, b):
        if isinstance(a, _PhiLinear) or isinstance(b, _PhiLinear):
            if isinstance(a, list):
                a, b = b, a
            if isinstance(b, _PhiLinear) or not _is_constant(b):
                self.fail("angle variables may only appear linearly inside cos, sin or exp")
            return self.scale(a, self.const_of(b))
        return [
            _Mono(x.coeff * y.coeff, _mul_action(x.action, y.action), tuple(p + q for p, q in zip(x.k, y.k)))
            for x in a
            for y in b
        ]

    def call(self, func, v):
        if isinstance(v, _PhiLinear):
            return self.call_angle(func, v)
        if any(any(m.k) for m in v):
            self.fail(f"{func}() of an angle-dependent quantity is not quantizable")
        f = {"cos": cmath.cos, "sin": cmath.sin, "exp": cmath.exp}[func]
        if _is_constant(v):
            return [_Mono(f(self.const_of(v)), None, self.zero)]
        parts = [(m.coeff, None if m.action is None else _action_fn(m.action)) for m in v]

        def fn(*A, parts=parts, f=f):
            return f(sum(c * (1.0 if g is None else g(*A)) for c, g in parts))

        label = f"{func}(" + " + ".join(
            f"{c!r}" if g is None else f"{c!r}*{_action_label(m.action)}" for (c, g), m in zip(parts, v)
        ) + ")"
        return [_Mono(1.0, PureActionFunction(fn, label), self.zero)]

    def call_angle(self, func, v):
        if func == "exp":
            freqs = [c / 1j for c in v.coeffs]
            k = self._integers(freqs, "exp() needs purely imaginary integer multiples of i*phi")
            return [_Mono(cmath.exp(v.const), None, k)]
        k = self._integers(v.coeffs, f"{func}() needs integer multiples of phi")
        neg = tuple(-x for x in k)
        up, down = cmath.exp(1j * v.const), cmath.exp(-1j * v.const)
        if func == "cos":
            return [_Mono(0.5 * up, None, k), _Mono(0.5 * down, None, neg)]
        return [_Mono(up / 2j, None, k), _Mono(-down / 2j, None, neg)]

    def _integers(self, values, why):
        out = []
        for z in values:
            z = complex(z)
            r = round(z.real)
            if abs(z.imag) > 1e-12 or abs(z.real - r) > 1e-12:
                self.fail(why)
            out.append(int(r))
        return tuple(out)


def _top_terms(node, sign=1.0):
    """Split at top-level additions so errors can quote the offending summand."""
    if isinstance(node, BinOp) and node.op in "+-":
        yield from _top_terms(node.left, sign)
        yield from _top_terms(node.right, sign if node.op == "+" else -sign)
    else:
        yield sign, node


def lower(ast):
    terms = []
    for sign, node in _top_terms(ast.root):
        text = ast.text[node.span[0]:node.span[1]] if ast.text else pretty_print(node)
        lw = _Lowerer(ast.n, text)
        value = lw.visit(node)
        if isinstance(value, _PhiLinear):
            lw.fail("a bare angle is not quantizable; use cos, sin or exp")
        for m in value:
            if any(m.k) and isinstance(m.action, PureActionFunction):
                lw.fail("only functions linear in the actions may multiply an angle factor")
            if m.coeff != 0:
                terms.append(Term(sign * m.coeff, m.action, m.k))
    return ObservableExpr(tuple(terms))
