"""
Exact arithmetic in the Eisenstein integers Z[w] and their fraction field Q(w).

Here w = exp(2*pi*i/3) satisfies w**2 = -1 - w, and an element a + b*w is
stored by its integer coordinates (a, b) in the basis (1, w).

The ring is Euclidean for the norm N(a + b*w) = a**2 - a*b + b**2, so gcds
are computed with the plain Euclidean algorithm.  Associates are normalised
into the sector of angles [0, 60) degrees, i.e. a > 0 and 0 <= b < a.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union


class ParseError(ValueError):
    """Malformed Q(w) literal.  ``pos`` is the byte offset of the problem."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at offset {pos})")
        self.pos = pos


# ---------------------------------------------------------------------------
# raw coordinate helpers (hot paths in the enumerators use these directly)
# ---------------------------------------------------------------------------

def norm_ab(a: int, b: int) -> int:
    return a * a - a * b + b * b


def mul_ab(a: int, b: int, c: int, d: int) -> tuple[int, int]:
    return a * c - b * d, a * d + b * c - b * d


def _round_half_down(num: int, den: int) -> int:
    """Nearest integer to num/den (den > 0); exact halves go toward -inf."""
    return -((den - 2 * num) // (2 * den))


def divmod_ab(a: int, b: int, c: int, d: int) -> tuple[int, int, int, int]:
    n = norm_ab(c, d)
    if n == 0:
        raise ZeroDivisionError("Eisenstein division by zero")
    # x * conj(y), conj(c + d*w) = (c - d) - d*w
    u, v = mul_ab(a, b, c - d, -d)
    q0, q1 = _round_half_down(u, n), _round_half_down(v, n)
    p0, p1 = mul_ab(q0, q1, c, d)
    return q0, q1, a - p0, b - p1


def gcd_ab(a: int, b: int, c: int, d: int) -> tuple[int, int]:
    """Euclidean gcd of two coordinate pairs, not normalised."""
    while c or d:
        _, _, r0, r1 = divmod_ab(a, b, c, d)
        a, b, c, d = c, d, r0, r1
    return a, b


# the six units 1, 1+w, w, -1, -1-w, -w (= w**2 is -1-w); ordered by angle
UNITS_AB = ((1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1))


def in_sector(a: int, b: int) -> bool:
    return a > 0 and 0 <= b < a


def canonical_ab(a: int, b: int) -> tuple[int, int, int, int]:
    """Return (a', b', ua, ub): the sector associate and the unit applied."""
    if a == 0 and b == 0:
        return 0, 0, 1, 0
    for ua, ub in UNITS_AB:
        x, y = mul_ab(ua, ub, a, b)
        if in_sector(x, y):
            return x, y, ua, ub
    raise AssertionError("no associate in the canonical sector")  # unreachable


# ---------------------------------------------------------------------------
# EisInt
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class EisInt:
    """An Eisenstein integer a + b*w."""

    a: int
    b: int

    @classmethod
    def coerce(cls, x: "EisInt | int") -> "EisInt":
        if isinstance(x, EisInt):
            return x
        if isinstance(x, int):
            return cls(x, 0)
        raise TypeError(f"cannot convert {type(x).__name__} to EisInt")

    # ring operations
    def __add__(self, other):
        if isinstance(other, int):
            other = EisInt(other, 0)
        if not isinstance(other, EisInt):
            return NotImplemented
        return EisInt(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return EisInt(-self.a, -self.b)

    def __sub__(self, other):
        if isinstance(other, int):
            other = EisInt(other, 0)
        if not isinstance(other, EisInt):
            return NotImplemented
        return EisInt(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return EisInt(self.a * other, self.b * other)
        if not isinstance(other, EisInt):
            return NotImplemented
        return EisInt(*mul_ab(self.a, self.b, other.a, other.b))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent in Z[w]")
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return bool(self.a or self.b)

    def conj(self) -> "EisInt":
        return EisInt(self.a - self.b, -self.b)

    def norm(self) -> int:
        return norm_ab(self.a, self.b)

    def divmod(self, other: "EisInt") -> tuple["EisInt", "EisInt"]:
        other = EisInt.coerce(other)
        q0, q1, r0, r1 = divmod_ab(self.a, self.b, other.a, other.b)
        return EisInt(q0, q1), EisInt(r0, r1)

    def divides(self, other: "EisInt") -> bool:
        if not self:
            return not other
        return not EisInt.coerce(other).divmod(self)[1]

    def exact_div(self, other: "EisInt") -> "EisInt":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def is_unit(self) -> bool:
        return self.norm() == 1

    def canonical(self) -> "EisInt":
        return canonical_associate(self)[0]

    def __repr__(self):
        return f"EisInt({self.a}, {self.b})"

    def __str__(self):
        return format_eisrat(EisRat(self, ONE))


ZERO = EisInt(0, 0)
ONE = EisInt(1, 0)
W = EisInt(0, 1)
UNITS = tuple(EisInt(a, b) for a, b in UNITS_AB)
CUBE_ROOTS = (ONE, W, W * W)


def norm(x: EisInt) -> int:
    """N(a + b*w) = a**2 - a*b + b**2; multiplicative, zero only at zero."""
    return norm_ab(x.a, x.b)


def eis_divmod(x: EisInt, y: EisInt) -> tuple[EisInt, EisInt]:
    """Euclidean division: x = q*y + r with N(r) < N(y).

    q is x/y rounded coordinatewise to the nearest integer, exact halves
    rounding toward -infinity.  Raises ZeroDivisionError for y == 0.
    """
    return EisInt.coerce(x).divmod(EisInt.coerce(y))


def canonical_associate(x: EisInt) -> tuple[EisInt, EisInt]:
    """Return (u*x, u) with u a unit and u*x == 0 or in the sector a > 0, 0 <= b < a."""
    a, b, ua, ub = canonical_ab(x.a, x.b)
    return EisInt(a, b), EisInt(ua, ub)


def gcd(x: EisInt, y: EisInt) -> EisInt:
    """Greatest common divisor, returned as its canonical associate."""
    x, y = EisInt.coerce(x), EisInt.coerce(y)
    if not x and not y:
        raise ValueError("gcd(0, 0) is undefined")
    a, b = gcd_ab(x.a, x.b, y.a, y.b)
    return canonical_associate(EisInt(a, b))[0]


def coprime(x: EisInt, y: EisInt) -> bool:
    return gcd(x, y) == ONE


# ---------------------------------------------------------------------------
# EisRat and the point at infinity
# ---------------------------------------------------------------------------

class _Infinity:
    """The point at infinity of P^1(Q(w)).  Use the ``INFINITY`` singleton."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()


@dataclass(frozen=True, slots=True, init=False)
class EisRat:
    """An element num/den of Q(w), kept reduced.

    gcd(num, den) is a unit and den is a canonical associate; whatever unit
    was needed to get there is absorbed into num.
    """

    num: EisInt
    den: EisInt

    def __init__(self, num: EisInt | int, den: EisInt | int = 1):
        num, den = EisInt.coerce(num), EisInt.coerce(den)
        if not den:
            raise ZeroDivisionError("EisRat with zero denominator")
        if not num:
            num, den = ZERO, ONE
        else:
            g0, g1 = gcd_ab(num.a, num.b, den.a, den.b)
            if norm_ab(g0, g1) != 1:
                g = EisInt(g0, g1)
                num, den = num.exact_div(g), den.exact_div(g)
            da, db, ua, ub = canonical_ab(den.a, den.b)
            if (ua, ub) != (1, 0):
                num = EisInt(*mul_ab(ua, ub, num.a, num.b))
                den = EisInt(da, db)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def _from_reduced(cls, num: EisInt, den: EisInt) -> "EisRat":
        """Skip reduction; the caller guarantees coprimality and a canonical den."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "num", num)
        object.__setattr__(obj, "den", den)
        return obj

    @classmethod
    def from_coords(cls, r: Fraction | int, s: Fraction | int) -> "EisRat":
        """Build r + s*w from rational coordinates."""
        r, s = Fraction(r), Fraction(s)
        den = r.denominator * s.denominator // _igcd(r.denominator, s.denominator)
        return cls(EisInt(int(r * den), int(s * den)), EisInt(den, 0))

    @classmethod
    def coerce(cls, x) -> "EisRat":
        if isinstance(x, EisRat):
            return x
        if isinstance(x, (EisInt, int)):
            return cls(x)
        if isinstance(x, Fraction):
            return cls.from_coords(x, 0)
        raise TypeError(f"cannot convert {type(x).__name__} to EisRat")

    def coords(self) -> tuple[Fraction, Fraction]:
        """Rational coordinates (r, s) with self == r + s*w."""
        n = norm(self.den)
        u = self.num * self.den.conj()
        return Fraction(u.a, n), Fraction(u.b, n)

    def __add__(self, other):
        try:
            other = EisRat.coerce(other)
        except TypeError:
            return NotImplemented
        return EisRat(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return EisRat(-self.num, self.den)

    def __sub__(self, other):
        try:
            other = EisRat.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = EisRat.coerce(other)
        except TypeError:
            return NotImplemented
        return EisRat(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "EisRat":
        if not self.num:
            raise ZeroDivisionError("inverse of zero in Q(w)")
        return EisRat(self.den, self.num)

    def __truediv__(self, other):
        try:
            other = EisRat.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return EisRat.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return EisRat(self.num ** k, self.den ** k)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, (int, EisInt, Fraction)):
            other = EisRat.coerce(other)
        if not isinstance(other, EisRat):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def is_integral(self) -> bool:
        return self.den == ONE

    def __repr__(self):
        return f"EisRat({format_eisrat(self)!r})"

    def __str__(self):
        return format_eisrat(self)


EisRatOrInf = Union[EisRat, _Infinity]


def _igcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def reduce(x: EisRat) -> EisRat:
    """Re-reduce a value; a no-op on anything built through the constructor."""
    return EisRat(x.num, x.den)


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------

def _fmt_frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_eisrat(x: EisRatOrInf) -> str:
    """Canonical text: "r", "s*w", "r+s*w" with reduced fractions; "0"; "inf"."""
    if x is INFINITY:
        return "inf"
    r, s = x.coords()
    parts = []
    if r:
        parts.append(_fmt_frac(r))
    if s:
        body = "w" if abs(s) == 1 else f"{_fmt_frac(abs(s))}*w"
        if parts:
            parts.append(("-" if s < 0 else "+") + body)
        else:
            parts.append(("-" if s < 0 else "") + body)
    return "".join(parts) or "0"


def _tokens(text: str):
    """Yield (kind, value, byte_offset); kinds: 'int', a punctuation char, 'end'."""
    raw = text.encode("utf-8")
    pos = 0
    while pos < len(raw):
        c = raw[pos:pos + 1]
        if c.isspace():
            pos += 1
            continue
        if c.isdigit():
            end = pos
            while end < len(raw) and raw[end:end + 1].isdigit():
                end += 1
            yield "int", int(raw[pos:end]), pos
            pos = end
            continue
        if c in b"+-*/w":
            yield c.decode(), None, pos
            pos += 1
            continue
        yield "bad", c, pos
        pos += 1
    yield "end", None, len(raw)


def parse_eisrat(text: str) -> EisRatOrInf:
    """Parse a Q(w) literal such as "2-1*w", "-1/3+2/3*w", "3w" or "inf".

    Raises ParseError (with a byte offset) on malformed text and
    ZeroDivisionError on a zero denominator.
    """
    if text.strip() == "inf":
        return INFINITY
    toks = list(_tokens(text))
    i = 0

    def peek():
        return toks[i]

    def take(kind):
        nonlocal i
        tok = toks[i]
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {_describe(tok)}", tok[2])
        i += 1
        return tok

    const: Fraction | None = None
    wcoef: Fraction | None = None
    first = True
    while True:
        kind, _, pos = peek()
        sign = 1
        if kind in ("+", "-"):
            sign = -1 if kind == "-" else 1
            i += 1
        elif not first:
            if kind == "end":
                break
            raise ParseError(f"expected '+' or '-', found {_describe(peek())}", pos)
        term_pos = peek()[2]
        kind = peek()[0]
        if kind == "w":
            i += 1
            value, is_w = Fraction(1), True
        elif kind == "int":
            value = Fraction(take("int")[1])
            if peek()[0] == "/":
                i += 1
                den_tok = take("int")
                if den_tok[1] == 0:
                    raise ZeroDivisionError(f"zero denominator at offset {den_tok[2]}")
                value /= den_tok[1]
            is_w = False
            if peek()[0] == "*":
                i += 1
                take("w")
                is_w = True
            elif peek()[0] == "w":
                i += 1
                is_w = True
        else:
            raise ParseError(f"expected a term, found {_describe(peek())}", term_pos)
        value *= sign
        if is_w:
            if wcoef is not None:
                raise ParseError("more than one w-term", term_pos)
            wcoef = value
        else:
            if const is not None:
                raise ParseError("more than one constant term", term_pos)
            const = value
        first = False
        if peek()[0] == "end":
            break
    return EisRat.from_coords(const or 0, wcoef or 0)


def _describe(tok) -> str:
    kind, value, _ = tok
    if kind == "end":
        return "end of input"
    if kind == "int":
        return f"integer {value}"
    if kind == "bad":
        if isinstance(value, bytes):
            value = value.decode(errors="replace")
        return f"character {value!r}"
    return repr(kind)


def parse_eisint(text: str) -> EisInt:
    x = parse_eisrat(text)
    if x is INFINITY or not x.is_integral():
        raise ValueError(f"{text!r} is not an Eisenstein integer")
    return x.num
