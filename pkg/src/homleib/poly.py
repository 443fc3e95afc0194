"""Exact sparse multivariate polynomials over the rationals.

Variables live in a fixed namespace:

* ``D``   -- the translation generator acting on a free module,
* ``x``   -- the formal slot used inside structure polynomials,
* ``l1``, ``l2``, ... -- evaluation variables for bracket parameters,
* ``mu``  -- an alias variable kept for convenience; the definition-file
  grammar only ever produces D, x and l<n>.

``D`` and ``x`` are reserved: definition files may not introduce them as
user symbols.  Polynomials are immutable and normalized eagerly (no zero
coefficients, no zero exponents), so structural equality is semantic
equality.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

from . import _kernel as K

Rat = Union[int, Fraction]

# Variable ids.  The integer order fixes the canonical (graded-lex) term order.
D = 0
X = 1
MU = 2
_FIRST_LAMBDA = 2


def lam(i: int) -> int:
    """Variable id of the i-th evaluation variable l<i> (i >= 1)."""
    if i < 1:
        raise ValueError("lambda variables are numbered from 1")
    return _FIRST_LAMBDA + i


def var_name(v: int) -> str:
    if v == D:
        return "D"
    if v == X:
        return "x"
    if v == MU:
        return "mu"
    return f"l{v - _FIRST_LAMBDA}"


RESERVED_NAMES = frozenset({"D", "x", "mu"})


class PolyError(ValueError):
    pass


def _as_fraction(c: Rat) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class MultiPoly:
    """Immutable sparse polynomial with Fraction coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple, Fraction] | None = None):
        self._terms = dict(terms) if terms else {}

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "MultiPoly":
        return _ZERO_POLY

    @staticmethod
    def const(c: Rat) -> "MultiPoly":
        c = _as_fraction(c)
        return MultiPoly({(): c} if c else None)

    @staticmethod
    def var(v: int, exp: int = 1) -> "MultiPoly":
        if exp < 0:
            raise PolyError("negative exponent")
        if exp == 0:
            return MultiPoly.const(1)
        return MultiPoly({((v, exp),): Fraction(1)})

    # -- ring operations ----------------------------------------------

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        return MultiPoly(K.add_terms(self._terms, other._terms))

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(K.scale_terms(self._terms, Fraction(-1)))

    def __mul__(self, other: "MultiPoly | Rat") -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return MultiPoly(K.mul_terms(self._terms, other._terms))
        return MultiPoly(K.scale_terms(self._terms, _as_fraction(other)))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise PolyError("negative exponent")
        return MultiPoly(K.pow_terms(self._terms, n))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MultiPoly) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- queries -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def terms(self) -> Iterator[tuple[tuple, Fraction]]:
        return iter(self._terms.items())

    def raw(self) -> dict:
        return self._terms

    def variables(self) -> set[int]:
        vs: set[int] = set()
        for key in self._terms:
            vs.update(v for v, _ in key)
        return vs

    def constant_value(self) -> Fraction:
        """The rational value of a constant polynomial."""
        if not self._terms:
            return Fraction(0)
        if set(self._terms) != {()}:
            raise PolyError(f"not a constant polynomial: {self}")
        return self._terms[()]

    def total_degree(self) -> int:
        if not self._terms:
            return 0
        return max(sum(e for _, e in key) for key in self._terms)

    # -- substitution ---------------------------------------------------

    def substitute(self, v: int, target: "LinearForm | MultiPoly") -> "MultiPoly":
        """Replace every occurrence of variable v by `target`, expanded."""
        if isinstance(target, LinearForm):
            target = target.to_poly()
        return MultiPoly(K.substitute_terms(self._terms, v, target._terms))

    def __repr__(self) -> str:
        return f"MultiPoly({print_poly(self)!r})"

    def __str__(self) -> str:
        return print_poly(self)


_ZERO_POLY = MultiPoly()

ZERO = _ZERO_POLY
ONE = MultiPoly.const(1)


def is_zero(p: MultiPoly) -> bool:
    return p.is_zero


def eq(a: MultiPoly, b: MultiPoly) -> bool:
    return (a - b).is_zero


class LinearForm:
    """An affine combination c0 + sum(c_v * v) of variables, held exactly."""

    __slots__ = ("coeffs", "constant")

    def __init__(self, coeffs: Mapping[int, Rat] | None = None, constant: Rat = 0):
        items = {}
        if coeffs:
            for v, c in coeffs.items():
                c = _as_fraction(c)
                if c:
                    items[v] = c
        self.coeffs = items
        self.constant = _as_fraction(constant)

    @staticmethod
    def variable(v: int) -> "LinearForm":
        return LinearForm({v: 1})

    @staticmethod
    def const(c: Rat) -> "LinearForm":
        return LinearForm(constant=c)

    @staticmethod
    def from_poly(p: MultiPoly) -> "LinearForm":
        coeffs: dict[int, Fraction] = {}
        constant = Fraction(0)
        for key, c in p.terms():
            if key == ():
                constant = c
            elif len(key) == 1 and key[0][1] == 1:
                coeffs[key[0][0]] = c
            else:
                raise PolyError(f"not a linear form: {p}")
        return LinearForm(coeffs, constant)

    def to_poly(self) -> MultiPoly:
        terms = {}
        if self.constant:
            terms[()] = self.constant
        for v, c in self.coeffs.items():
            terms[((v, 1),)] = c
        return MultiPoly(terms)

    def __add__(self, other: "LinearForm") -> "LinearForm":
        coeffs = dict(self.coeffs)
        for v, c in other.coeffs.items():
            coeffs[v] = coeffs.get(v, Fraction(0)) + c
        return LinearForm(coeffs, self.constant + other.constant)

    def __neg__(self) -> "LinearForm":
        return LinearForm({v: -c for v, c in self.coeffs.items()}, -self.constant)

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return self + (-other)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, LinearForm)
            and self.coeffs == other.coeffs
            and self.constant == other.constant
        )

    def __repr__(self) -> str:
        return f"LinearForm({print_poly(self.to_poly())!r})"


def form_sum(forms: Iterable[LinearForm]) -> LinearForm:
    total = LinearForm()
    for f in forms:
        total = total + f
    return total


LAM1 = LinearForm.variable(lam(1))
LAM2 = LinearForm.variable(lam(2))
X_FORM = LinearForm.variable(X)
D_FORM = LinearForm.variable(D)


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------


def _key_sort(key: tuple) -> tuple:
    # Graded-lex: total degree first, then exponent vector along the fixed
    # variable order.  Negated so that sorting ascending prints high-degree
    # terms first and the order is stable.
    deg = sum(e for _, e in key)
    return (-deg, tuple((v, -e) for v, e in key))


def print_poly(p: MultiPoly) -> str:
    """Canonical string form; parse_poly(print_poly(p)) == p."""
    if p.is_zero:
        return "0"
    pieces = []
    for key in sorted(p.raw(), key=_key_sort):
        c = p.raw()[key]
        body = "*".join(
            var_name(v) if e == 1 else f"{var_name(v)}^{e}" for v, e in key
        )
        mag = abs(c)
        if not body:
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}*{body}"
        pieces.append(("-" if c < 0 else "+", text))
    sign, first = pieces[0]
    out = ("-" if sign == "-" else "") + first
    for sign, text in pieces[1:]:
        out += f" {sign} {text}"
    return out


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------


class ParseError(PolyError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            raise ParseError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def read_uint(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise ParseError("expected an integer", start)
        return int(self.text[start : self.pos])


def parse_poly(text: str) -> MultiPoly:
    """Parse the expression grammar used by definition files.

    expr   := term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' uint)?
    atom   := rational | var | '(' expr ')'
    var    := 'D' | 'x' | 'l' uint
    """
    sc = _Scanner(text)
    p = _parse_expr(sc)
    sc.skip_ws()
    if sc.pos != len(sc.text):
        raise ParseError("unexpected trailing input", sc.pos)
    return p


def _parse_expr(sc: _Scanner) -> MultiPoly:
    ch = sc.peek()
    negate = False
    if ch == "-":
        sc.pos += 1
        negate = True
    elif ch == "+":
        sc.pos += 1
    p = _parse_term(sc)
    if negate:
        p = -p
    while True:
        ch = sc.peek()
        if ch == "+":
            sc.pos += 1
            p = p + _parse_term(sc)
        elif ch == "-":
            sc.pos += 1
            p = p - _parse_term(sc)
        else:
            return p


def _parse_term(sc: _Scanner) -> MultiPoly:
    p = _parse_factor(sc)
    while sc.peek() == "*":
        sc.pos += 1
        p = p * _parse_factor(sc)
    return p


def _parse_factor(sc: _Scanner) -> MultiPoly:
    p = _parse_atom(sc)
    if sc.peek() == "^":
        sc.pos += 1
        return p ** sc.read_uint()
    return p


def _parse_atom(sc: _Scanner) -> MultiPoly:
    ch = sc.peek()
    if ch == "(":
        sc.pos += 1
        p = _parse_expr(sc)
        sc.expect(")")
        return p
    if ch == "-":
        # Unary minus inside a factor; tolerated beyond the strict grammar.
        sc.pos += 1
        return -_parse_atom(sc)
    if ch.isdigit():
        num = sc.read_uint()
        if sc.peek() == "/":
            sc.pos += 1
            den = sc.read_uint()
            if den == 0:
                raise ParseError("zero denominator", sc.pos)
            return MultiPoly.const(Fraction(num, den))
        return MultiPoly.const(num)
    if ch == "D":
        sc.pos += 1
        return MultiPoly.var(D)
    if ch == "x":
        sc.pos += 1
        return MultiPoly.var(X)
    if ch == "l":
        sc.pos += 1
        return MultiPoly.var(lam(sc.read_uint()))
    if ch == "m" and sc.text[sc.pos : sc.pos + 2] == "mu":
        sc.pos += 2
        return MultiPoly.var(MU)
    if ch == "":
        raise ParseError("unexpected end of input", sc.pos)
    raise ParseError(f"unexpected character {ch!r}", sc.pos)
