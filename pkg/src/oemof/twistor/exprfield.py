# -*- coding: utf-8 -*-

"""Coefficient fields.

A coefficient field is a complex valued function of the real chart
coordinates, written in a small expression language and differentiated
in forward mode. Connection coefficients, diffeomorphisms, frame maps and
exhaustion functions are all values of this module.

Grammar::

    expr   := term (('+'|'-') term)*
    term   := unary (('*'|'/') unary)*
    unary  := ('-'|'+') unary | power
    power  := atom ('^' ['-'] integer)?
    atom   := number | 'i' | ident | func '(' expr ')' | '(' expr ')'

Identifiers depend on the chart: ``x1`` ... ``x{dim}`` always, and for
``n=1`` the sugar ``x``, ``y``, ``z``, ``zb``. The ``twistor`` chart adds
``w``, ``wb`` (fibre coordinate ``w = x3 + i*x4``), the ``levi`` chart
uses ``xi``, ``xib``, ``w``, ``wb`` and expresses ``z`` through them.

SPDX-FileCopyrightText: oemof developer group <contact@oemof.org>

SPDX-License-Identifier: MIT

"""

import cmath
import math
import re

import numpy as np

FUNCTIONS = (
    "sin",
    "cos",
    "exp",
    "log",
    "sqrt",
    "conj",
    "abs2",
    "atanhsq",
)

CHARTS = ("base", "twistor", "levi")


class ParseError(ValueError):
    """Malformed coefficient-field source.

    ``position`` is the 1-based column of the offending token, the
    length of the source plus one at end of input.
    """

    def __init__(self, message, position):
        self.position = position
        super().__init__("{0} (at position {1})".format(message, position))


class DomainError(ValueError):
    """Evaluation left the domain of a subexpression."""

    def __init__(self, reason, subtree):
        self.subtree = str(subtree)
        super().__init__("{0} in '{1}'".format(reason, self.subtree))


# ---------------------------------------------------------------- nodes


class Expr:
    """Immutable expression tree node."""

    __slots__ = ()

    def __setattr__(self, key, value):
        raise AttributeError("Expr nodes are immutable.")

    def _init(self, **fields):
        for key, value in fields.items():
            object.__setattr__(self, key, value)

    def children(self):
        return ()

    def variables(self):
        """Indices of the real coordinates the expression depends on."""
        found = set()
        stack = [self]
        while stack:
            node = stack.pop()
            if isinstance(node, Var):
                found.add(node.index)
            stack.extend(node.children())
        return found

    def evaluate(self, point):
        """Value at a point given in real chart coordinates."""
        return eval_jet(self, point, order=0).value

    def __add__(self, other):
        return add(self, as_expr(other))

    def __radd__(self, other):
        return add(as_expr(other), self)

    def __sub__(self, other):
        return sub(self, as_expr(other))

    def __rsub__(self, other):
        return sub(as_expr(other), self)

    def __mul__(self, other):
        return mul(self, as_expr(other))

    def __rmul__(self, other):
        return mul(as_expr(other), self)

    def __truediv__(self, other):
        return div(self, as_expr(other))

    def __rtruediv__(self, other):
        return div(as_expr(other), self)

    def __neg__(self):
        return neg(self)

    def __pow__(self, k):
        if int(k) != k:
            raise ValueError("Only integer exponents are supported.")
        return power(self, int(k))

    def __repr__(self):
        return "Expr('{0}')".format(self)


class Const(Expr):
    __slots__ = ("value",)

    def __init__(self, value):
        self._init(value=complex(value))

    def __str__(self):
        re_, im = self.value.real, self.value.imag
        if im == 0:
            text = repr(float(re_))
            return "({0})".format(text) if re_ < 0 else text
        if re_ == 0:
            return "({0}*i)".format(repr(float(im)))
        sign = "-" if im < 0 else "+"
        return "({0} {1} {2}*i)".format(
            repr(float(re_)), sign, repr(float(abs(im)))
        )


class Var(Expr):
    __slots__ = ("index",)

    def __init__(self, index):
        self._init(index=int(index))

    def __str__(self):
        return "x{0}".format(self.index + 1)


class Neg(Expr):
    __slots__ = ("arg",)

    def __init__(self, arg):
        self._init(arg=arg)

    def children(self):
        return (self.arg,)

    def __str__(self):
        return "(-{0})".format(self.arg)


class _Binary(Expr):
    __slots__ = ("left", "right")
    symbol = "?"

    def __init__(self, left, right):
        self._init(left=left, right=right)

    def children(self):
        return (self.left, self.right)

    def __str__(self):
        return "({0} {1} {2})".format(self.left, self.symbol, self.right)


class Add(_Binary):
    __slots__ = ()
    symbol = "+"


class Sub(_Binary):
    __slots__ = ()
    symbol = "-"


class Mul(_Binary):
    __slots__ = ()
    symbol = "*"


class Div(_Binary):
    __slots__ = ()
    symbol = "/"


class Pow(Expr):
    __slots__ = ("base", "exponent")

    def __init__(self, base, exponent):
        self._init(base=base, exponent=int(exponent))

    def children(self):
        return (self.base,)

    def __str__(self):
        base = str(self.base)
        if not (base.startswith("(") or _IDENT.fullmatch(base)):
            base = "({0})".format(base)
        return "{0}^{1}".format(base, self.exponent)


class Func(Expr):
    __slots__ = ("name", "arg")

    def __init__(self, name, arg):
        if name not in FUNCTIONS:
            raise ValueError("Unknown function '{0}'.".format(name))
        self._init(name=name, arg=arg)

    def children(self):
        return (self.arg,)

    def __str__(self):
        return "{0}({1})".format(self.name, self.arg)


_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


# ------------------------------------------------------------- builders


def as_expr(value):
    """Wrap numbers as constants, pass expressions through."""
    if isinstance(value, Expr):
        return value
    if isinstance(value, (int, float, complex, np.number)):
        return Const(value)
    raise TypeError("Cannot convert {0!r} to Expr.".format(value))


def _const(e, value=None):
    if not isinstance(e, Const):
        return False
    return value is None or e.value == value


def add(a, b):
    a, b = as_expr(a), as_expr(b)
    if _const(a) and _const(b):
        return Const(a.value + b.value)
    if _const(a, 0):
        return b
    if _const(b, 0):
        return a
    return Add(a, b)


def sub(a, b):
    a, b = as_expr(a), as_expr(b)
    if _const(a) and _const(b):
        return Const(a.value - b.value)
    if _const(b, 0):
        return a
    if _const(a, 0):
        return neg(b)
    return Sub(a, b)


def mul(a, b):
    a, b = as_expr(a), as_expr(b)
    if _const(a) and _const(b):
        return Const(a.value * b.value)
    if _const(a, 0) or _const(b, 0):
        return Const(0)
    if _const(a, 1):
        return b
    if _const(b, 1):
        return a
    return Mul(a, b)


def div(a, b):
    a, b = as_expr(a), as_expr(b)
    if _const(b, 0):
        raise DomainError("division by zero", Div(a, b))
    if _const(a) and _const(b):
        return Const(a.value / b.value)
    if _const(a, 0):
        return Const(0)
    if _const(b, 1):
        return a
    return Div(a, b)


def neg(a):
    a = as_expr(a)
    if _const(a):
        return Const(-a.value)
    if isinstance(a, Neg):
        return a.arg
    return Neg(a)


def power(a, k):
    a = as_expr(a)
    if k == 0:
        return Const(1)
    if k == 1:
        return a
    if _const(a) and (k > 0 or a.value != 0):
        return Const(a.value ** k)
    return Pow(a, k)


def func(name, a):
    if name == "conj" and _const(a):
        return Const(a.value.conjugate())
    return Func(name, a)


def conj(e):
    return func("conj", as_expr(e))


def real_part(e):
    e = as_expr(e)
    return mul(Const(0.5), add(e, conj(e)))


def imag_part(e):
    e = as_expr(e)
    return mul(Const(-0.5j), sub(e, conj(e)))


def complex_coordinate(k):
    """The expression ``x_{2k+1} + i*x_{2k+2}``."""
    return add(Var(2 * k), mul(Const(1j), Var(2 * k + 1)))


# ---------------------------------------------------------------- parse


_TOKEN = re.compile(
    r"\s*(?:(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^(),]))"
)


def chart_dimension(n, chart="base"):
    """Number of real coordinates of a chart."""
    if chart == "base":
        return 2 * n
    if chart in ("twistor", "levi"):
        if n != 1:
            raise ValueError(
                "The '{0}' chart is only available for n=1.".format(chart)
            )
        return 4
    raise ValueError(
        "Unknown chart '{0}', use one of {1}.".format(chart, CHARTS)
    )


def chart_names(n, chart="base"):
    """Identifier table of a chart."""
    dim = chart_dimension(n, chart)
    names = {"x{0}".format(k + 1): Var(k) for k in range(dim)}
    names["i"] = Const(1j)
    if chart == "levi":
        xi = complex_coordinate(0)
        w = complex_coordinate(1)
        det = sub(Const(1), mul(w, conj(w)))
        z = neg(div(add(xi, mul(w, conj(xi))), det))
        names.update(
            {"xi": xi, "xib": conj(xi), "w": w, "wb": conj(w)}
        )
        names.update({"z": z, "zb": conj(z)})
        return names
    if n == 1:
        z = complex_coordinate(0)
        names.update({"x": Var(0), "y": Var(1), "z": z, "zb": conj(z)})
    if chart == "twistor":
        w = complex_coordinate(1)
        names.update({"w": w, "wb": conj(w)})
    return names


class _Parser:
    def __init__(self, text, names):
        self.text = text
        self.names = names
        self.tokens = self._tokenize(text)
        self.pos = 0

    @staticmethod
    def _tokenize(text):
        tokens = []
        index = 0
        while index < len(text):
            if text[index:].strip() == "":
                break
            match = _TOKEN.match(text, index)
            if match is None or match.end() == index:
                column = index + 1
                while column <= len(text) and text[column - 1].isspace():
                    column += 1
                raise ParseError(
                    "unexpected character '{0}'".format(text[column - 1]),
                    column,
                )
            kind = match.lastgroup
            tokens.append((kind, match.group(kind), match.start(kind) + 1))
            index = match.end()
        tokens.append(("end", "", len(text) + 1))
        return tokens

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect(self, value):
        kind, text, column = self.take()
        if text != value or kind == "end":
            found = "end of input" if kind == "end" else repr(text)
            raise ParseError(
                "expected '{0}', found {1}".format(value, found), column
            )

    def parse(self):
        tree = self.expr()
        kind, text, column = self.peek()
        if kind != "end":
            raise ParseError("unexpected token '{0}'".format(text), column)
        return tree

    def expr(self):
        tree = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            right = self.term()
            tree = add(tree, right) if op == "+" else sub(tree, right)
        return tree

    def term(self):
        tree = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op, column = self.take()[1:]
            right = self.unary()
            if op == "*":
                tree = mul(tree, right)
            else:
                try:
                    tree = div(tree, right)
                except DomainError as err:
                    raise ParseError(str(err), column)
        return tree

    def unary(self):
        kind, text = self.peek()[:2]
        if kind == "op" and text in ("-", "+"):
            self.take()
            operand = self.unary()
            return neg(operand) if text == "-" else operand
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            sign = 1
            if self.peek()[:2] in (("op", "-"), ("op", "+")):
                sign = -1 if self.take()[1] == "-" else 1
            kind, text, column = self.take()
            if kind != "number" or not text.isdigit():
                raise ParseError("integer exponent expected", column)
            exponent = sign * int(text)
            if _const(base, 0) and exponent < 0:
                raise ParseError("negative power of zero", column)
            return power(base, exponent)
        return base

    def atom(self):
        kind, text, column = self.take()
        if kind == "number":
            return Const(float(text))
        if kind == "op" and text == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "ident":
            if text in FUNCTIONS:
                if self.peek()[:2] != ("op", "("):
                    raise ParseError(
                        "function '{0}' expects an argument".format(text),
                        self.peek()[2],
                    )
                self.take()
                argument = self.expr()
                if self.peek()[:2] == ("op", ","):
                    raise ParseError(
                        "arity mismatch: '{0}' takes one argument".format(
                            text
                        ),
                        self.peek()[2],
                    )
                self.expect(")")
                return func(text, argument)
            if text in self.names:
                return self.names[text]
            raise ParseError("unknown identifier '{0}'".format(text), column)
        if kind == "end":
            raise ParseError("unexpected end of input", column)
        raise ParseError("unexpected token '{0}'".format(text), column)


def parse_expr(text, n=1, chart="base"):
    """Parse coefficient-field source into an expression tree.

    Parameters
    ----------
    text : str
        Source in the expression language.
    n : int
        Half the real dimension of the base.
    chart : str
        One of ``'base'``, ``'twistor'``, ``'levi'``.

    Returns
    -------
    Expr

    Examples
    --------
    >>> e = parse_expr("z*conj(z)")
    >>> abs(e.evaluate([3.0, 4.0]) - 25)
    0.0
    >>> parse_expr("x1 + (")
    Traceback (most recent call last):
    ...
    oemof.twistor.exprfield.ParseError: unexpected end of input (at position 7)
    """
    if not isinstance(text, str):
        raise TypeError("Expression source must be a string.")
    return _Parser(text, chart_names(n, chart)).parse()


# ----------------------------------------------------------------- jets


class _Jet:
    __slots__ = ("value", "grad", "hess")

    def __init__(self, value, grad=None, hess=None):
        self.value = value
        self.grad = grad
        self.hess = hess


def _chain(jet, f0, f1, f2, order):
    grad = hess = None
    if order >= 1:
        grad = f1 * jet.grad
    if order >= 2:
        hess = f1 * jet.hess + f2 * np.outer(jet.grad, jet.grad)
    return _Jet(f0, grad, hess)


def _product(a, b, order):
    grad = hess = None
    if order >= 1:
        grad = a.grad * b.value + b.grad * a.value
    if order >= 2:
        hess = (
            a.hess * b.value
            + b.hess * a.value
            + np.outer(a.grad, b.grad)
            + np.outer(b.grad, a.grad)
        )
    return _Jet(a.value * b.value, grad, hess)


def _conjugate(a):
    return _Jet(
        a.value.conjugate(),
        None if a.grad is None else a.grad.conj(),
        None if a.hess is None else a.hess.conj(),
    )


def _linear(a, b, sign, order):
    return _Jet(
        a.value + sign * b.value,
        None if order < 1 else a.grad + sign * b.grad,
        None if order < 2 else a.hess + sign * b.hess,
    )


def _atanhsq_derivatives(node, s):
    """``F(s) = artanh(sqrt(s))**2`` and its first two derivatives."""
    if abs(s.imag) > 1e-12 * max(1.0, abs(s)):
        raise DomainError("atanhsq of a non-real argument", node)
    s = s.real
    if -1e-14 < s < 0:
        s = 0.0
    if not 0 <= s < 1:
        raise DomainError("atanhsq outside [0, 1)", node)
    if s < 1e-3:
        q = 1 + s / 3 + s ** 2 / 5 + s ** 3 / 7 + s ** 4 / 9
        dq = 1 / 3 + 2 * s / 5 + 3 * s ** 2 / 7 + 4 * s ** 3 / 9
    else:
        r = math.sqrt(s)
        g = math.atanh(r)
        q = g / r
        dq = (r / (1 - s) - g) / (2 * r ** 3)
    f0 = s * q * q
    f1 = q / (1 - s)
    f2 = dq / (1 - s) + q / (1 - s) ** 2
    return f0, f1, f2


def _unary(node, a, order):
    name = node.name
    x = a.value
    if name == "conj":
        return _conjugate(a)
    if name == "abs2":
        return _product(a, _conjugate(a), order)
    if name == "sin":
        f0, f1, f2 = cmath.sin(x), cmath.cos(x), -cmath.sin(x)
    elif name == "cos":
        f0, f1, f2 = cmath.cos(x), -cmath.sin(x), -cmath.cos(x)
    elif name == "exp":
        f0 = f1 = f2 = cmath.exp(x)
    elif name == "log":
        if x == 0:
            raise DomainError("log of zero", node)
        f0, f1, f2 = cmath.log(x), 1 / x, -1 / x ** 2
    elif name == "sqrt":
        f0 = cmath.sqrt(x)
        if order >= 1 and f0 == 0:
            raise DomainError("derivative of sqrt at zero", node)
        f1 = 1 / (2 * f0) if order >= 1 else 0
        f2 = -1 / (4 * f0 ** 3) if order >= 2 else 0
    elif name == "atanhsq":
        f0, f1, f2 = _atanhsq_derivatives(node, x)
    else:
        raise DomainError("unknown function", node)
    return _chain(a, f0, f1, f2, order)


def _pow(node, a, order):
    k = node.exponent
    x = a.value
    if x == 0 and k < 0:
        raise DomainError("negative power of zero", node)
    f0 = x ** k
    f1 = k * x ** (k - 1) if order >= 1 else 0
    f2 = 0
    if order >= 2 and k not in (0, 1):
        f2 = k * (k - 1) * x ** (k - 2)
    return _chain(a, f0, f1, f2, order)


def _evaluate(node, point, order, memo):
    key = id(node)
    if key in memo:
        return memo[key]
    m = len(point)
    if isinstance(node, Const):
        jet = _Jet(
            node.value,
            np.zeros(m, complex) if order >= 1 else None,
            np.zeros((m, m), complex) if order >= 2 else None,
        )
    elif isinstance(node, Var):
        if node.index >= m:
            raise DomainError(
                "point has no coordinate {0}".format(node.index + 1), node
            )
        grad = hess = None
        if order >= 1:
            grad = np.zeros(m, complex)
            grad[node.index] = 1
        if order >= 2:
            hess = np.zeros((m, m), complex)
        jet = _Jet(complex(point[node.index]), grad, hess)
    elif isinstance(node, Neg):
        a = _evaluate(node.arg, point, order, memo)
        jet = _Jet(
            -a.value,
            None if order < 1 else -a.grad,
            None if order < 2 else -a.hess,
        )
    elif isinstance(node, (Add, Sub)):
        a = _evaluate(node.left, point, order, memo)
        b = _evaluate(node.right, point, order, memo)
        jet = _linear(a, b, 1 if isinstance(node, Add) else -1, order)
    elif isinstance(node, Mul):
        a = _evaluate(node.left, point, order, memo)
        b = _evaluate(node.right, point, order, memo)
        jet = _product(a, b, order)
    elif isinstance(node, Div):
        a = _evaluate(node.left, point, order, memo)
        b = _evaluate(node.right, point, order, memo)
        y = b.value
        if y == 0:
            raise DomainError("division by zero", node)
        inverse = _chain(b, 1 / y, -1 / y ** 2, 2 / y ** 3, order)
        jet = _product(a, inverse, order)
    elif isinstance(node, Pow):
        jet = _pow(node, _evaluate(node.base, point, order, memo), order)
    elif isinstance(node, Func):
        jet = _unary(node, _evaluate(node.arg, point, order, memo), order)
    else:
        raise TypeError("Unknown node {0!r}".format(node))
    if not cmath.isfinite(jet.value):
        raise DomainError("non-finite value", node)
    memo[key] = jet
    return jet


class FieldValue:
    """Value of a coefficient field and its requested partials.

    ``gradient`` and ``hessian`` are taken with respect to the real
    coordinates; the Wirtinger accessors convert them, coordinate pair
    ``(x_{2k+1}, x_{2k+2})`` forming ``z_k``.
    """

    def __init__(self, value, gradient=None, hessian=None):
        self.value = value
        self.gradient = gradient
        self.hessian = hessian

    def _projections(self):
        m = len(self.gradient)
        p = np.zeros((m // 2, m), complex)
        for k in range(m // 2):
            p[k, 2 * k] = 0.5
            p[k, 2 * k + 1] = -0.5j
        return p, p.conj()

    def _need(self, order):
        attr = self.gradient if order == 1 else self.hessian
        if attr is None:
            raise ValueError(
                "Jet was evaluated below order {0}.".format(order)
            )

    def dz(self, k=None):
        self._need(1)
        p, _ = self._projections()
        values = p @ self.gradient
        return values if k is None else values[k]

    def dzb(self, k=None):
        self._need(1)
        _, q = self._projections()
        values = q @ self.gradient
        return values if k is None else values[k]

    def dz_dzb(self):
        """Matrix of ``d^2/dz_k dzb_l``."""
        self._need(2)
        p, q = self._projections()
        return p @ self.hessian @ q.T

    def dz_dz(self):
        self._need(2)
        p, _ = self._projections()
        return p @ self.hessian @ p.T

    def dzb_dzb(self):
        self._need(2)
        _, q = self._projections()
        return q @ self.hessian @ q.T


def eval_jet(e, p, order=1):
    """Evaluate an expression and its partial derivatives.

    Parameters
    ----------
    e : Expr
    p : array_like
        Point in real chart coordinates.
    order : int
        0, 1 or 2.

    Returns
    -------
    FieldValue

    Examples
    --------
    >>> fv = eval_jet(parse_expr("z"), [1.0, 1.0], order=1)
    >>> fv.value, complex(fv.dz(0)), complex(fv.dzb(0))
    ((1+1j), (1+0j), 0j)
    """
    if order not in (0, 1, 2):
        raise ValueError("Jet order must be 0, 1 or 2.")
    point = np.asarray(p, dtype=float).ravel()
    jet = _evaluate(e, point, order, {})
    return FieldValue(jet.value, jet.grad, jet.hess)


def eval_many(exprs, p, order=1):
    """Evaluate several expressions sharing one memo table."""
    point = np.asarray(p, dtype=float).ravel()
    memo = {}
    return [
        FieldValue(*_jet_fields(_evaluate(e, point, order, memo)))
        for e in exprs
    ]


def _jet_fields(jet):
    return jet.value, jet.grad, jet.hess


# ----------------------------------------------------- symbolic helpers


def diff(e, k):
    """Symbolic partial derivative with respect to real coordinate ``k``.

    >>> str(diff(parse_expr("x1^3"), 0))
    '(3.0 * x1^2)'
    """
    memo = {}

    def d(node):
        key = id(node)
        if key in memo:
            return memo[key]
        if isinstance(node, Const):
            out = Const(0)
        elif isinstance(node, Var):
            out = Const(1 if node.index == k else 0)
        elif isinstance(node, Neg):
            out = neg(d(node.arg))
        elif isinstance(node, Add):
            out = add(d(node.left), d(node.right))
        elif isinstance(node, Sub):
            out = sub(d(node.left), d(node.right))
        elif isinstance(node, Mul):
            out = add(
                mul(d(node.left), node.right), mul(node.left, d(node.right))
            )
        elif isinstance(node, Div):
            da, db = d(node.left), d(node.right)
            out = div(
                sub(mul(da, node.right), mul(node.left, db)),
                power(node.right, 2),
            )
        elif isinstance(node, Pow):
            out = mul(
                mul(Const(node.exponent), power(node.base, node.exponent - 1)),
                d(node.base),
            )
        elif isinstance(node, Func):
            out = _diff_func(node, d(node.arg))
        else:
            raise TypeError("Unknown node {0!r}".format(node))
        memo[key] = out
        return out

    return d(e)


def _diff_func(node, da):
    a = node.arg
    if _const(da, 0):
        return Const(0)
    if node.name == "sin":
        return mul(func("cos", a), da)
    if node.name == "cos":
        return neg(mul(func("sin", a), da))
    if node.name == "exp":
        return mul(node, da)
    if node.name == "log":
        return div(da, a)
    if node.name == "sqrt":
        return div(da, mul(Const(2), node))
    if node.name == "conj":
        return conj(da)
    if node.name == "abs2":
        return add(mul(da, conj(a)), mul(a, conj(da)))
    raise ValueError(
        "No symbolic derivative for '{0}'.".format(node.name)
    )


def substitute(e, mapping):
    """Replace real coordinates by expressions.

    ``mapping`` sends coordinate indices to expressions; unmapped
    coordinates are kept.
    """
    memo = {}

    def s(node):
        key = id(node)
        if key in memo:
            return memo[key]
        if isinstance(node, Var):
            out = as_expr(mapping.get(node.index, node))
        elif isinstance(node, Const):
            out = node
        elif isinstance(node, Neg):
            out = neg(s(node.arg))
        elif isinstance(node, Add):
            out = add(s(node.left), s(node.right))
        elif isinstance(node, Sub):
            out = sub(s(node.left), s(node.right))
        elif isinstance(node, Mul):
            out = mul(s(node.left), s(node.right))
        elif isinstance(node, Div):
            out = div(s(node.left), s(node.right))
        elif isinstance(node, Pow):
            out = power(s(node.base), node.exponent)
        elif isinstance(node, Func):
            out = func(node.name, s(node.arg))
        else:
            raise TypeError("Unknown node {0!r}".format(node))
        memo[key] = out
        return out

    return s(e)


def compose_complex(e, complex_mapping):
    """Substitute complex coordinates ``z_k`` by complex expressions.

    ``complex_mapping`` sends ``k`` to the new value of
    ``x_{2k+1} + i*x_{2k+2}``; the real coordinates are replaced by the
    real and imaginary parts.
    """
    mapping = {}
    for k, value in complex_mapping.items():
        value = as_expr(value)
        mapping[2 * k] = real_part(value)
        mapping[2 * k + 1] = imag_part(value)
    return substitute(e, mapping)


def as_field(value, n=1, chart="base"):
    """Accept source text, numbers or expressions."""
    if isinstance(value, str):
        return parse_expr(value, n=n, chart=chart)
    return as_expr(value)


# --------------------------------------------------------------- domain


_COMPARISON = re.compile(r"(<=|>=|<|>)")


class Domain:
    """Conjunction of real inequalities between coefficient fields.

    >>> Domain.parse("x > 0 & abs2(z) < 4").contains([1.0, 1.0])
    True
    """

    def __init__(self, conditions, text=""):
        self.conditions = tuple(conditions)
        self.text = text

    @classmethod
    def parse(cls, text, n=1, chart="base"):
        conditions = []
        offset = 0
        for clause in text.split("&"):
            parts = _COMPARISON.split(clause)
            if len(parts) != 3:
                raise ParseError(
                    "expected one comparison in '{0}'".format(clause.strip()),
                    offset + 1,
                )
            left, op, right = parts
            conditions.append(
                (
                    parse_expr(left, n=n, chart=chart),
                    op,
                    parse_expr(right, n=n, chart=chart),
                )
            )
            offset += len(clause) + 1
        return cls(conditions, text)

    def contains(self, point):
        for left, op, right in self.conditions:
            try:
                a = left.evaluate(point).real
                b = right.evaluate(point).real
            except DomainError:
                return False
            if not {
                "<": a < b,
                "<=": a <= b,
                ">": a > b,
                ">=": a >= b,
            }[op]:
                return False
        return True

    def __str__(self):
        return self.text
