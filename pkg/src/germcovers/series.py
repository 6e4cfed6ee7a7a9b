"""Exact polynomials and truncated series over Q or a quadratic field Q(sqrt D).

Coefficients are ``Fraction`` for rationals and ``QuadNumber`` otherwise.
A single computation may use one quadratic extension; combining numbers
from two different extensions raises ``UnsupportedCoefficientField``.
"""

from __future__ import annotations

import ast
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

import sympy


class TruncationTooSmall(RuntimeError):
    pass


class UnsupportedCoefficientField(ValueError):
    pass


class NotAtOrigin(ValueError):
    pass


class ParseError(ValueError):
    pass


# ---------------------------------------------------------------- coefficients


def _squarefree_split(x: Fraction) -> tuple[Fraction, int]:
    """Write ``x = q^2 * D`` with ``D`` a squarefree integer."""
    if x == 0:
        return Fraction(0), 1
    num = x.numerator * x.denominator
    sign = -1 if num < 0 else 1
    num = abs(num)
    q, D = 1, 1
    for p, k in sympy.factorint(num).items():
        q *= p ** (k // 2)
        if k % 2:
            D *= p
    return Fraction(q, x.denominator), sign * D


class QuadNumber:
    """``a + b*sqrt(d)`` with rational a, b, squarefree d != 1 and b != 0."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b, d: int):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = d

    @staticmethod
    def make(a, b, d: int) -> "Coeff":
        return Fraction(a) if b == 0 else QuadNumber(a, b, d)

    @staticmethod
    def sqrt(d: int) -> "Coeff":
        """The square root of an integer, simplified.

        >>> QuadNumber.sqrt(-12)
        2*sqrt(-3)
        """
        q, D = _squarefree_split(Fraction(d))
        if D == 1:
            return q
        return QuadNumber(0, q, D)

    def _split(self, other):
        if isinstance(other, QuadNumber):
            if other.d != self.d:
                raise UnsupportedCoefficientField(f"sqrt({self.d}) and sqrt({other.d}) in one computation")
            return other.a, other.b
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return NotImplemented

    def __add__(self, other):
        s = self._split(other)
        if s is NotImplemented:
            return s
        return QuadNumber.make(self.a + s[0], self.b + s[1], self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadNumber(-self.a, -self.b, self.d)

    def __sub__(self, other):
        s = self._split(other)
        if s is NotImplemented:
            return s
        return QuadNumber.make(self.a - s[0], self.b - s[1], self.d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        s = self._split(other)
        if s is NotImplemented:
            return s
        a, b = s
        return QuadNumber.make(self.a * a + self.d * self.b * b, self.a * b + self.b * a, self.d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def conjugate(self) -> QuadNumber:
        return QuadNumber(self.a, -self.b, self.d)

    def inverse(self) -> QuadNumber:
        n = self.norm()
        return QuadNumber(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        if isinstance(other, QuadNumber):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            return QuadNumber(self.a / other, self.b / other, self.d)
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out: Coeff = Fraction(1)
        base: Coeff = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, QuadNumber):
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        return False

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return True

    def __repr__(self) -> str:
        b = "" if self.b == 1 else ("-" if self.b == -1 else f"{self.b}*")
        root = f"{b}sqrt({self.d})"
        if self.a == 0:
            return root
        if root.startswith("-"):
            return f"{self.a} - {root[1:]}"
        return f"{self.a} + {root}"

    __str__ = __repr__

    def to_sympy(self):
        return sympy.Rational(self.a.numerator, self.a.denominator) + sympy.Rational(
            self.b.numerator, self.b.denominator
        ) * sympy.sqrt(self.d)


Coeff = Union[Fraction, QuadNumber]


def as_coeff(x) -> Coeff:
    if isinstance(x, QuadNumber):
        return x
    return Fraction(x)


def is_rational(c: Coeff) -> bool:
    return not isinstance(c, QuadNumber)


def field_sqrt(x: Coeff) -> Coeff:
    """A square root of ``x`` inside Q or a single quadratic extension.

    >>> field_sqrt(Fraction(9, 4))
    Fraction(3, 2)
    >>> field_sqrt(Fraction(-3))
    sqrt(-3)
    """
    if isinstance(x, QuadNumber):
        # (c + e sqrt d)^2 = x forces (c^2 - d e^2)^2 = norm(x)
        r = _rational_sqrt(x.norm())
        if r is not None:
            for c2 in ((x.a + r) / 2, (x.a - r) / 2):
                c = _rational_sqrt(c2)
                if c:
                    return QuadNumber.make(c, x.b / (2 * c), x.d)
        raise UnsupportedCoefficientField(f"square root of {x}")
    x = Fraction(x)
    r = _rational_sqrt(x)
    if r is not None:
        return r
    q, D = _squarefree_split(x)
    return QuadNumber(0, q, D)


def _rational_sqrt(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    n, d = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if n * n == x.numerator and d * d == x.denominator:
        return Fraction(n, d)
    return None


def _coeff_to_sympy(c: Coeff):
    if isinstance(c, QuadNumber):
        return c.to_sympy()
    return sympy.Rational(c.numerator, c.denominator)


def _coeff_from_sympy(c) -> Coeff:
    c = sympy.nsimplify(c) if not c.is_Rational else c
    if c.is_Rational:
        return Fraction(int(c.p), int(c.q))
    raise UnsupportedCoefficientField(f"cannot convert {c}")


def _fmt_coeff(c: Coeff) -> str:
    if isinstance(c, QuadNumber):
        return f"({c})"
    return str(c)


# ---------------------------------------------------------------- polynomials


class MPoly:
    """Sparse polynomial with exact coefficients in named variables."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Sequence[str], terms: Mapping[tuple[int, ...], Coeff] | None = None):
        self.vars = tuple(vars)
        clean = {}
        for e, c in (terms or {}).items():
            if c != 0:
                clean[tuple(e)] = as_coeff(c)
        self.terms = clean
        self._hash = None

    # construction
    @classmethod
    def const(cls, vars: Sequence[str], c) -> MPoly:
        return cls(vars, {(0,) * len(vars): as_coeff(c)})

    @classmethod
    def var(cls, vars: Sequence[str], name: str) -> MPoly:
        e = [0] * len(vars)
        e[list(vars).index(name)] = 1
        return cls(vars, {tuple(e): Fraction(1)})

    @classmethod
    def parse(cls, text: str, vars: Sequence[str] = ("z", "w")) -> MPoly:
        """Parse ``"w^4 - (8/3)*z^2*w^3"``; ``sqrt(k)`` denotes a quadratic surd.

        >>> str(MPoly.parse("(w - z)^2 - z^5"))
        'z^2 - 2*z*w + w^2 - z^5'
        """
        src = text.replace("^", "**")
        try:
            tree = ast.parse(src, mode="eval")
        except SyntaxError as exc:
            raise ParseError(f"cannot parse {text!r}: {exc.msg}") from None
        return _Builder(tuple(vars)).visit(tree.body)

    def _new(self, terms) -> MPoly:
        return MPoly(self.vars, terms)

    def _check(self, other: MPoly):
        if other.vars != self.vars:
            raise ValueError(f"variable mismatch {self.vars} vs {other.vars}")

    def _lift(self, other) -> MPoly:
        if isinstance(other, MPoly):
            self._check(other)
            return other
        return MPoly.const(self.vars, other)

    # arithmetic
    def __add__(self, other) -> MPoly:
        other = self._lift(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return self._new(t)

    __radd__ = __add__

    def __neg__(self) -> MPoly:
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> MPoly:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> MPoly:
        return self._lift(other) - self

    def __mul__(self, other) -> MPoly:
        if not isinstance(other, MPoly):
            c = as_coeff(other)
            return self._new({e: v * c for e, v in self.terms.items()})
        self._check(other)
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return self._new(t)

    __rmul__ = __mul__

    def __truediv__(self, other) -> MPoly:
        if isinstance(other, MPoly):
            return self.divexact(other)
        c = as_coeff(other)
        return self._new({e: v / c for e, v in self.terms.items()})

    def __pow__(self, k: int) -> MPoly:
        if k < 0:
            raise ValueError("negative power")
        out = MPoly.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, MPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction, QuadNumber)):
            return self == MPoly.const(self.vars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> Coeff:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def degree(self, var: str | int) -> int:
        i = self._idx(var)
        return max((e[i] for e in self.terms), default=-1)

    def min_degree(self, var: str | int) -> int:
        i = self._idx(var)
        return min((e[i] for e in self.terms), default=0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def _idx(self, var: str | int) -> int:
        return var if isinstance(var, int) else self.vars.index(var)

    def is_rational(self) -> bool:
        return all(is_rational(c) for c in self.terms.values())

    def diff(self, var: str | int) -> MPoly:
        i = self._idx(var)
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                t[tuple(ne)] = c * e[i]
        return self._new(t)

    def coefficients_in(self, var: str | int) -> dict[int, MPoly]:
        """Coefficients as a polynomial in ``var`` (other variables kept)."""
        i = self._idx(var)
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            ne = list(e)
            k = ne[i]
            ne[i] = 0
            out.setdefault(k, {})[tuple(ne)] = c
        return {k: self._new(t) for k, t in out.items()}

    def subs(self, var: str | int, value: MPoly) -> MPoly:
        i = self._idx(var)
        self._check(value)
        out = MPoly(self.vars)
        powers = {0: MPoly.const(self.vars, 1)}
        for k, c in sorted(self.coefficients_in(i).items()):
            if k not in powers:
                powers[k] = value ** k
            out = out + c * powers[k]
        return out

    def leading(self) -> tuple[tuple[int, ...], Coeff]:
        e = max(self.terms)
        return e, self.terms[e]

    def divexact(self, g: MPoly) -> MPoly:
        """Exact quotient ``self / g``; raises ``ValueError`` on a remainder."""
        self._check(g)
        if g.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        ge, gc = g.leading()
        rem = self
        q: dict = {}
        while not rem.is_zero():
            e, c = rem.leading()
            d = tuple(a - b for a, b in zip(e, ge))
            if min(d) < 0:
                raise ValueError("polynomial division is not exact")
            qc = c / gc
            q[d] = q.get(d, 0) + qc
            rem = rem - MPoly(self.vars, {d: qc}) * g
        return self._new(q)

    def rename(self, vars: Sequence[str]) -> MPoly:
        return MPoly(vars, self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        order = sorted(self.terms, key=lambda e: (sum(e), tuple(-x for x in e)))
        for e in order:
            c = self.terms[e]
            mono = "*".join(
                (v if k == 1 else f"{v}^{k}") for v, k in zip(self.vars, e) if k
            )
            neg = (not isinstance(c, QuadNumber)) and c < 0
            mag = -c if neg else c
            if mono:
                body = mono if mag == 1 else f"{_fmt_coeff(mag)}*{mono}"
            else:
                body = _fmt_coeff(mag)
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"MPoly({str(self)!r}, vars={self.vars})"

    # sympy bridge (rational coefficients)
    def to_sympy(self):
        syms = sympy.symbols(self.vars)
        out = sympy.Integer(0)
        for e, c in self.terms.items():
            m = _coeff_to_sympy(c)
            for s, k in zip(syms, e):
                m = m * s**k
            out += m
        return out

    @classmethod
    def from_sympy(cls, expr, vars: Sequence[str]) -> MPoly:
        syms = sympy.symbols(tuple(vars))
        p = sympy.Poly(expr, *syms)
        return cls(vars, {e: _coeff_from_sympy(c) for e, c in p.terms()})


class _Builder(ast.NodeVisitor):
    def __init__(self, vars: tuple[str, ...]):
        self.vars = vars

    def generic_visit(self, node):
        raise ParseError(f"unsupported syntax: {ast.dump(node)}")

    def visit_Constant(self, node):
        if isinstance(node.value, bool) or not isinstance(node.value, int):
            raise ParseError(f"only integer literals are allowed, got {node.value!r}")
        return MPoly.const(self.vars, node.value)

    def visit_Name(self, node):
        if node.id not in self.vars:
            raise ParseError(f"unknown variable {node.id!r}; declared {self.vars}")
        return MPoly.var(self.vars, node.id)

    def visit_UnaryOp(self, node):
        v = self.visit(node.operand)
        if isinstance(node.op, ast.USub):
            return -v
        if isinstance(node.op, ast.UAdd):
            return v
        raise ParseError("unsupported unary operator")

    def visit_BinOp(self, node):
        a = self.visit(node.left)
        if isinstance(node.op, ast.Pow):
            k = self.visit(node.right)
            if k.total_degree() > 0 or not is_rational(k.constant_term()):
                raise ParseError("exponent must be a constant")
            kc = k.constant_term()
            if kc.denominator != 1 or kc < 0:
                raise ParseError("exponent must be a nonnegative integer")
            return a ** int(kc)
        b = self.visit(node.right)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if isinstance(node.op, ast.Div):
            if b.total_degree() > 0:
                raise ParseError("division by a non-constant")
            if b.is_zero():
                raise ParseError("division by zero")
            return a / b.constant_term()
        raise ParseError("unsupported operator")

    def visit_Call(self, node):
        if not (isinstance(node.func, ast.Name) and node.func.id == "sqrt" and len(node.args) == 1):
            raise ParseError("only sqrt(<integer>) calls are allowed")
        arg = self.visit(node.args[0])
        if arg.total_degree() > 0:
            raise ParseError("sqrt of a non-constant")
        c = arg.constant_term()
        if not is_rational(c) or c.denominator != 1:
            raise ParseError("sqrt needs an integer argument")
        return MPoly.const(self.vars, QuadNumber.sqrt(int(c)))


def jacobian(f1: MPoly, f2: MPoly) -> MPoly:
    """Determinant of the Jacobian matrix in the first two variables.

    >>> str(jacobian(MPoly.parse("z^2"), MPoly.parse("w^2")))
    '4*z*w'
    """
    f1._check(f2)
    return f1.diff(0) * f2.diff(1) - f1.diff(1) * f2.diff(0)


def hessian(f: MPoly) -> MPoly:
    return f.diff(0).diff(0) * f.diff(1).diff(1) - f.diff(0).diff(1) ** 2


def _bareiss_det(M: list[list[MPoly]], vars: Sequence[str]) -> MPoly:
    n = len(M)
    if n == 0:
        return MPoly.const(vars, 1)
    M = [row[:] for row in M]
    sign = 1
    prev = MPoly.const(vars, 1)
    for k in range(n - 1):
        if M[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not M[i][k].is_zero()), None)
            if swap is None:
                return MPoly(vars)
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[k][k] * M[i][j] - M[i][k] * M[k][j]).divexact(prev)
        prev = M[k][k]
    return M[n - 1][n - 1] * sign


def resultant(f: MPoly, g: MPoly, var: str | int) -> MPoly:
    """Sylvester resultant in ``var``; rows of ``f`` come first.

    The result is an MPoly over the same variable list in which ``var`` no
    longer occurs.
    """
    f._check(g)
    fc, gc = f.coefficients_in(var), g.coefficients_in(var)
    m, n = f.degree(var), g.degree(var)
    if m <= 0 or n <= 0:
        raise ValueError("both polynomials must involve the elimination variable")
    zero = MPoly(f.vars)
    size = m + n
    rows = []
    for i in range(n):
        row = [zero] * size
        for k in range(m + 1):
            row[i + m - k] = fc.get(k, zero)
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k in range(n + 1):
            row[i + n - k] = gc.get(k, zero)
        rows.append(row)
    return _bareiss_det(rows, f.vars)


def squarefree_factor(f: MPoly, var: str | int | None = None) -> list[tuple[MPoly, int]]:
    """Square-free decomposition; factors that do not vanish at the origin are dropped.

    >>> [(str(p), k) for p, k in squarefree_factor(MPoly.parse("4*w^3 - 3*z*w^2"))]
    [('w', 2), ('3*z - 4*w', 1)]
    """
    if f.is_zero():
        raise ValueError("zero polynomial")
    if not f.is_rational():
        raise UnsupportedCoefficientField("square-free factorization needs rational coefficients")
    syms = sympy.symbols(f.vars)
    _, facs = sympy.sqf_list(f.to_sympy(), *syms)
    out = []
    for p, k in facs:
        # split into irreducible content-free pieces so unit factors can be dropped
        _, irr = sympy.factor_list(p, *syms)
        for q, j in irr:
            mp = MPoly.from_sympy(q, f.vars)
            if mp.constant_term() != 0:
                continue
            out.append((mp, int(k * j)))
    merged: dict[MPoly, int] = {}
    for p, k in out:
        merged[p] = merged.get(p, 0) + k
    res = sorted(merged.items(), key=lambda pk: (-pk[1], len(pk[0].terms), str(pk[0])))
    return res


# ---------------------------------------------------------------- truncated series


class _Infinite:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INFINITE_UP_TO_N"


INFINITE_UP_TO_N = _Infinite()


def _pmin(*ps):
    fin = [p for p in ps if p is not None]
    return min(fin) if fin else None


class TruncSeries:
    """Univariate series in t known modulo t^prec (``prec=None`` means exact)."""

    __slots__ = ("coeffs", "prec")

    def __init__(self, coeffs: Mapping[int, Coeff] | None = None, prec: int | None = None):
        c = {}
        for k, v in (coeffs or {}).items():
            if k < 0:
                raise ValueError("negative exponent")
            if v != 0 and (prec is None or k < prec):
                c[k] = as_coeff(v)
        self.coeffs = c
        self.prec = prec

    @classmethod
    def monomial(cls, c, k: int, prec: int | None = None) -> TruncSeries:
        return cls({k: c}, prec)

    @classmethod
    def const(cls, c, prec: int | None = None) -> TruncSeries:
        return cls({0: c}, prec)

    def is_exact(self) -> bool:
        return self.prec is None

    def order(self):
        """Least exponent present, or ``INFINITE_UP_TO_N``."""
        if self.coeffs:
            return min(self.coeffs)
        return INFINITE_UP_TO_N

    def order_bound(self) -> float:
        """Lower bound for the true order (the precision for a vanishing series)."""
        if self.coeffs:
            return min(self.coeffs)
        return math.inf if self.prec is None else self.prec

    def __getitem__(self, k: int) -> Coeff:
        return self.coeffs.get(k, Fraction(0))

    def exponents(self) -> list[int]:
        return sorted(self.coeffs)

    def truncate(self, prec: int | None) -> TruncSeries:
        p = _pmin(self.prec, prec)
        return TruncSeries(self.coeffs, p)

    def __add__(self, other) -> TruncSeries:
        if not isinstance(other, TruncSeries):
            other = TruncSeries.const(other)
        p = _pmin(self.prec, other.prec)
        c = dict(self.coeffs)
        for k, v in other.coeffs.items():
            c[k] = c.get(k, 0) + v
        return TruncSeries(c, p)

    __radd__ = __add__

    def __neg__(self) -> TruncSeries:
        return TruncSeries({k: -v for k, v in self.coeffs.items()}, self.prec)

    def __sub__(self, other) -> TruncSeries:
        if not isinstance(other, TruncSeries):
            other = TruncSeries.const(other)
        return self + (-other)

    def __rsub__(self, other) -> TruncSeries:
        return (-self) + other

    def __mul__(self, other) -> TruncSeries:
        if not isinstance(other, TruncSeries):
            c = as_coeff(other)
            return TruncSeries({k: v * c for k, v in self.coeffs.items()}, self.prec)
        oa, ob = self.order_bound(), other.order_bound()
        cands = []
        if self.prec is not None:
            cands.append(self.prec + ob)
        if other.prec is not None:
            cands.append(other.prec + oa)
        p = min(cands) if cands else None
        if p is not None:
            p = None if p == math.inf else int(p)
        out: dict[int, Coeff] = {}
        for i, a in self.coeffs.items():
            if p is not None and i >= p:
                continue
            for j, b in other.coeffs.items():
                k = i + j
                if p is not None and k >= p:
                    continue
                out[k] = out.get(k, 0) + a * b
        return TruncSeries(out, p)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> TruncSeries:
        out = TruncSeries.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> TruncSeries:
        """Multiply by t^k."""
        return TruncSeries({e + k: v for e, v in self.coeffs.items()}, None if self.prec is None else self.prec + k)

    def stretch(self, k: int) -> TruncSeries:
        """Substitute t -> t^k."""
        return TruncSeries({e * k: v for e, v in self.coeffs.items()}, None if self.prec is None else self.prec * k)

    def contract(self, k: int) -> TruncSeries:
        """Substitute t^k -> t; every exponent must be divisible by k."""
        if any(e % k for e in self.coeffs):
            raise ValueError(f"exponents not divisible by {k}")
        p = None if self.prec is None else -(-self.prec // k)
        return TruncSeries({e // k: v for e, v in self.coeffs.items()}, p)

    def inverse(self, prec: int | None = None) -> TruncSeries:
        """Multiplicative inverse of a unit series."""
        c0 = self[0]
        if c0 == 0:
            raise ZeroDivisionError("series is not a unit")
        p = _pmin(self.prec, prec)
        if p is None:
            if len(self.coeffs) == 1:
                return TruncSeries.const(1 / c0)
            raise ValueError("inverse of a non-monomial exact series needs a precision")
        inv0 = 1 / c0
        out = [Fraction(0)] * p
        out[0] = inv0
        items = [(k, v) for k, v in self.coeffs.items() if k > 0]
        for n in range(1, p):
            s = 0
            for k, v in items:
                if k <= n:
                    s = s + v * out[n - k]
            out[n] = -s * inv0
        return TruncSeries(dict(enumerate(out)), p)

    def compose(self, inner: TruncSeries) -> TruncSeries:
        """``self(inner(t))`` for ``inner`` of positive order."""
        if inner[0] != 0:
            raise ValueError("inner series must vanish at 0")
        oi = inner.order_bound()
        # unknown terms of self at exponents >= prec contribute O(t^(prec * ord inner))
        p = None if self.prec is None or oi == math.inf else int(self.prec * oi)
        out = TruncSeries({}, p)
        power = TruncSeries.const(1)
        last = 0
        for k in sorted(self.coeffs):
            power = (power * inner ** (k - last)).truncate(p)
            last = k
            out = out + power * self.coeffs[k]
        return out

    def binomial_power(self, num: int, den: int, prec: int) -> TruncSeries:
        """``self^(num/den)`` for a series with constant term 1."""
        if self[0] != 1:
            raise ValueError("binomial power needs constant term 1")
        h = self - 1
        p = _pmin(self.prec, prec)
        r = Fraction(num, den)
        out = TruncSeries.const(1, p)
        term = TruncSeries.const(1, p)
        binom = Fraction(1)
        oh = h.order_bound()
        if oh == math.inf:
            return out
        k = 0
        while k * oh < p:
            k += 1
            binom = binom * (r - k + 1) / k
            term = (term * h).truncate(p)
            out = out + term * binom
        return out.truncate(p)

    def reversion(self, prec: int) -> TruncSeries:
        """Compositional inverse of ``t + O(t^2)``."""
        if self[0] != 0 or self[1] != 1:
            raise ValueError("reversion needs the form t + O(t^2)")
        p = _pmin(self.prec, prec)
        g = TruncSeries({1: 1}, p)
        # fixed point g = t - (self(g) - g); each pass fixes one more coefficient
        for _ in range(p):
            fg = self.compose(g).truncate(p)
            new = (TruncSeries({1: 1}, p) - (fg - g)).truncate(p)
            if new.coeffs == g.coeffs:
                break
            g = new
        return g

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.coeffs == other.coeffs and self.prec == other.prec

    def __repr__(self) -> str:
        if not self.coeffs:
            body = "0"
        else:
            parts = []
            for k in sorted(self.coeffs):
                c = self.coeffs[k]
                mono = "1" if k == 0 else ("t" if k == 1 else f"t^{k}")
                parts.append(f"{_fmt_coeff(c)}*{mono}" if k else _fmt_coeff(c))
            body = " + ".join(parts)
        return body if self.prec is None else f"{body} + O(t^{self.prec})"


def vanishing_order(s: TruncSeries):
    """Order of ``s`` or ``INFINITE_UP_TO_N`` when no coefficient survives.

    >>> vanishing_order(TruncSeries({8: -1, 9: 1}, 20))
    8
    """
    return s.order()


def evaluate(f: MPoly, point: Sequence[TruncSeries]) -> TruncSeries:
    """Substitute one series per variable into ``f``."""
    n = len(f.vars)
    if len(point) != n:
        raise ValueError("one series per variable expected")
    cache: list[dict[int, TruncSeries]] = [{0: TruncSeries.const(1)} for _ in range(n)]

    def pw(i: int, k: int) -> TruncSeries:
        if k not in cache[i]:
            best = max(j for j in cache[i] if j <= k)
            val = cache[i][best]
            for _ in range(k - best):
                val = val * point[i]
            cache[i][k] = val
        return cache[i][k]

    out = TruncSeries({}, None)
    for e in sorted(f.terms):
        term = TruncSeries.const(f.terms[e])
        for i, k in enumerate(e):
            if k:
                term = term * pw(i, k)
        out = out + term
    return out


# ---------------------------------------------------------------- Puiseux


@dataclass(frozen=True)
class PuiseuxBranch:
    """A branch at the origin parametrized by t.

    With ``param_index == 0`` the first variable equals ``coeff * t^e`` and
    the second equals ``series``; with ``param_index == 1`` the roles swap.
    ``N`` is the precision of ``series`` (``None`` when it is exact).
    """

    e: int
    coeff: Coeff
    series: TruncSeries
    N: int | None
    param_index: int = 0

    def as_pair(self) -> tuple[TruncSeries, TruncSeries]:
        x = TruncSeries.monomial(self.coeff, self.e)
        return (x, self.series) if self.param_index == 0 else (self.series, x)

    def __str__(self) -> str:
        x, y = self.as_pair()
        return f"({x}, {y})"


def substitute(f: MPoly, b: PuiseuxBranch | Sequence[TruncSeries]) -> TruncSeries:
    """``f`` evaluated along a branch.

    >>> b = PuiseuxBranch(2, Fraction(1), TruncSeries({3: 1}), None)
    >>> substitute(MPoly.parse("w^4 - 2*z^3*w^2"), b)
    -1*t^12
    """
    pair = b.as_pair() if isinstance(b, PuiseuxBranch) else tuple(b)
    return evaluate(f, pair)


def _cpow(c: Coeff, k: int) -> Coeff:
    if k == 0:
        return Fraction(1)
    return c**k


def _lower_hull(points: dict[tuple[int, int], Coeff], r: int):
    """Edges of the Newton polygon between the x-axis and the point (0, r)."""
    i0 = min(i for (i, j) in points if j == 0)
    cur = (i0, 0)
    edges = []
    while cur[1] < r:
        ic, jc = cur
        best = None
        for (i, j) in points:
            if j <= jc or j > r:
                continue
            s = Fraction(i - ic, j - jc)
            if best is None or s < best[0] or (s == best[0] and j > best[1][1]):
                best = (s, (i, j))
        nxt = best[1]
        edges.append((cur, nxt))
        cur = nxt
    return edges


def _edge_roots(coeffs: list[Coeff]) -> list[tuple[Coeff, int]]:
    """Nonzero roots, with multiplicity, of sum coeffs[k] Z^k."""
    while coeffs and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    deg = len(coeffs) - 1
    if all(is_rational(c) for c in coeffs):
        Z = sympy.Symbol("Z")
        poly = sympy.Poly([_coeff_to_sympy(c) for c in reversed(coeffs)], Z, domain="QQ")
        out = []
        for fac, mult in poly.factor_list()[1]:
            fc = [Fraction(int(c.p), int(c.q)) for c in reversed(fac.all_coeffs())]
            for root, m in _small_roots(fc):
                out.append((root, m * mult))
        return out
    if deg <= 2:
        return _small_roots(coeffs)
    raise UnsupportedCoefficientField(f"edge polynomial of degree {deg} over a quadratic field")


def _small_roots(c: list[Coeff]) -> list[tuple[Coeff, int]]:
    deg = len(c) - 1
    if deg == 1:
        return [(-c[0] / c[1], 1)]
    if deg == 2:
        a, b, cc = c[2], c[1], c[0]
        disc = b * b - 4 * a * cc
        if disc == 0:
            return [(-b / (2 * a), 2)]
        s = field_sqrt(disc)
        return [((-b + s) / (2 * a), 1), ((-b - s) / (2 * a), 1)]
    raise UnsupportedCoefficientField(f"irreducible edge factor of degree {deg}")


def _transform(g: MPoly, alpha: Coeff, beta: Coeff, q: int, m: int, w: int) -> MPoly:
    """g(alpha x^q, x^m (beta + y)) / x^w."""
    out: dict[tuple[int, int], Coeff] = {}
    binoms: dict[int, list[tuple[int, Coeff]]] = {}
    for (i, j), c in g.terms.items():
        if j not in binoms:
            binoms[j] = [(l, math.comb(j, l) * _cpow(beta, j - l)) for l in range(j + 1)]
        base = c * _cpow(alpha, i)
        xe = q * i + m * j - w
        if xe < 0:
            raise AssertionError("Newton polygon weight violated")
        for l, bc in binoms[j]:
            key = (xe, l)
            out[key] = out.get(key, 0) + base * bc
    return MPoly(g.vars, out)


def _implicit_solve(g: MPoly, P: int) -> TruncSeries:
    """The root y(x) in x K[[x]] of g with g(0,0)=0 and g_y(0,0) != 0, modulo x^P."""
    cols = g.coefficients_in(1)
    coef = {j: TruncSeries({e[0]: c for e, c in p.terms.items()}) for j, p in cols.items()}
    degy = max(coef)

    def ev(y: TruncSeries, prec: int) -> tuple[TruncSeries, TruncSeries]:
        val = TruncSeries({}, prec)
        der = TruncSeries({}, prec)
        for j in range(degy, -1, -1):
            der = (der * y + val).truncate(prec)
            val = (val * y + coef.get(j, TruncSeries())).truncate(prec)
        return val, der

    y = TruncSeries({}, 1)
    prec = 1
    while prec < P:
        prec = min(2 * prec, P)
        y = TruncSeries(y.coeffs, prec)
        val, der = ev(y, prec)
        y = (y - val * der.inverse(prec)).truncate(prec)
    return TruncSeries(y.coeffs, P)


def newton_puiseux(f: MPoly, N: int, allow_vertical: bool = False) -> list[PuiseuxBranch]:
    """Branches of f = 0 at the origin, each parametrized rationally.

    The first variable is ``coeff * t^e`` and the second a series in t known
    modulo t^N.  Conjugate Puiseux expansions are returned as a single branch.
    If ``allow_vertical`` is set, a factor of the first variable yields the
    branch ``(0, t)``.
    """
    if len(f.vars) != 2:
        raise ValueError("newton_puiseux expects two variables")
    if f.is_zero():
        raise ValueError("zero polynomial")
    if f.constant_term() != 0:
        raise NotAtOrigin(str(f))
    branches: list[PuiseuxBranch] = []
    g = f
    if g.min_degree(0) > 0:
        if not allow_vertical:
            raise ValueError("polynomial is divisible by the first variable")
        k = g.min_degree(0)
        g = MPoly(g.vars, {(i - k, j): c for (i, j), c in g.terms.items()})
        branches.append(PuiseuxBranch(1, Fraction(1), TruncSeries({}, None), None, 1))
    if g.constant_term() != 0:
        return branches
    _expand(g, N, Fraction(1), 1, TruncSeries(), Fraction(1), 0, branches)
    return branches


def _expand(
    g: MPoly, N: int, A: Coeff, E: int, known: TruncSeries, K: Coeff, M: int, out: list
) -> None:
    # invariant: first variable = A t^E, second = known(t) + K t^M y with g(t, y) = 0
    if g.min_degree(1) > 0:
        # y divides g: the current partial expansion is an exact branch
        out.append(PuiseuxBranch(E, A, TruncSeries(known.coeffs, None), None))
        k = g.min_degree(1)
        g = MPoly(g.vars, {(i, j - k): c for (i, j), c in g.terms.items()})
    pts = g.terms
    axis = [j for (i, j) in pts if i == 0]
    if not axis:
        raise AssertionError("unexpected factor of the parameter variable")
    r = min(axis)
    if r == 0:
        return
    P = N - M
    if r == 1:
        if P <= 0:
            raise TruncationTooSmall(f"truncation {N} reached before the branch was isolated")
        y = _implicit_solve(g, P)
        series = known + y.shift(M) * K
        out.append(PuiseuxBranch(E, A, series.truncate(N), N))
        return
    if P <= 0:
        raise TruncationTooSmall(f"truncation {N} cannot separate branches")
    for (ic, jc), (inn, jn) in _lower_hull(pts, r):
        num, den = ic - inn, jn - jc
        gcd = math.gcd(num, den)
        m, q = num // gcd, den // gcd
        w = q * ic + m * jc
        ecoef = [Fraction(0)] * ((jn - jc) // q + 1)
        for (i, j), c in pts.items():
            if q * i + m * j == w and jc <= j <= jn:
                ecoef[(j - jc) // q] = c
        for xi, mult in _edge_roots(ecoef):
            a_ = (-pow(m, -1, q)) % q if q > 1 else 0
            b_ = (1 + a_ * m) // q
            alpha = _cpow(xi, a_)
            beta = _cpow(xi, b_)
            g2 = _transform(g, alpha, beta, q, m, w)
            # old parameter t = alpha * s^q
            A2 = A * _cpow(alpha, E)
            stretched = TruncSeries(
                {q * k: c * _cpow(alpha, k) for k, c in known.coeffs.items()}, None
            )
            M2 = q * M + m
            K2 = K * _cpow(alpha, M)
            known2 = stretched + TruncSeries({M2: K2 * beta}, None)
            _expand(g2, N, A2, q * E, known2, K2, M2, out)
