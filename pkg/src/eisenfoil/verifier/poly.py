"""Sparse multivariate polynomials with exact Q(w) coefficients."""

from __future__ import annotations

from typing import Iterable, Mapping

from ..eisenstein import EisRat, format_eisrat

Monomial = tuple[int, ...]


def _coef(c) -> EisRat:
    return c if isinstance(c, EisRat) else EisRat.coerce(c)


class Poly:
    """A polynomial in ``nvars`` variables, stored as {exponent tuple: EisRat}.

    Zero coefficients are never stored.  Instances are treated as immutable.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, terms: Mapping[Monomial, object] | Iterable = (), nvars: int = 2):
        self.nvars = nvars
        clean: dict[Monomial, EisRat] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for mono, c in items:
            mono = tuple(mono)
            if len(mono) != nvars:
                raise ValueError(f"monomial {mono} has wrong arity for {nvars} variables")
            c = _coef(c)
            if mono in clean:
                c = clean[mono] + c
            if c:
                clean[mono] = c
            else:
                clean.pop(mono, None)
        self.terms = clean

    # construction helpers
    @classmethod
    def const(cls, c, nvars: int = 2) -> "Poly":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def var(cls, i: int, nvars: int = 2) -> "Poly":
        mono = [0] * nvars
        mono[i] = 1
        return cls({tuple(mono): 1}, nvars)

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("mixing polynomials in different numbers of variables")
            return other
        return Poly.const(other, self.nvars)

    # arithmetic
    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({m: -c for m, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        out: dict[Monomial, EisRat] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(i + j for i, j in zip(m1, m2))
                s = out.get(m)
                s = c1 * c2 if s is None else s + c1 * c2
                out[m] = s
        return Poly._raw({m: c for m, c in out.items() if c}, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = Poly.const(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    @classmethod
    def _raw(cls, terms: dict, nvars: int) -> "Poly":
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    def __eq__(self, other):
        if not isinstance(other, Poly):
            try:
                other = Poly.const(other, self.nvars)
            except TypeError:
                return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # structure
    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def coeff(self, mono: Monomial) -> EisRat:
        return self.terms.get(tuple(mono), EisRat(0))

    def diff(self, i: int) -> "Poly":
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                mm = list(m)
                mm[i] -= 1
                out[tuple(mm)] = c * m[i]
        return Poly._raw(out, self.nvars)

    def __call__(self, *point) -> EisRat:
        """Evaluate at a point of Q(w)^nvars."""
        point = [_coef(v) for v in point]
        total = EisRat(0)
        powers: list[dict[int, EisRat]] = [{0: EisRat(1)} for _ in point]
        for m, c in self.terms.items():
            term = c
            for i, e in enumerate(m):
                if e not in powers[i]:
                    powers[i][e] = point[i] ** e
                term = term * powers[i][e]
            total = total + term
        return total

    def substitute(self, images: list["Poly"]) -> "Poly":
        """Compose: replace variable i by images[i] (all in a common ring)."""
        nv = images[0].nvars
        total = Poly((), nv)
        cache: list[dict[int, Poly]] = [{0: Poly.const(1, nv)} for _ in images]
        for m, c in self.terms.items():
            term = Poly.const(c, nv)
            for i, e in enumerate(m):
                if e not in cache[i]:
                    cache[i][e] = images[i] ** e
                term = term * cache[i][e]
            total = total + term
        return total

    def homogenize(self, degree: int | None = None) -> "Poly":
        """Append a homogenising variable so every term has total ``degree``."""
        D = self.degree() if degree is None else degree
        return Poly({m + (D - sum(m),): c for m, c in self.terms.items()}, self.nvars + 1)

    def divmod(self, g: "Poly") -> tuple["Poly", "Poly"]:
        """Division by a single polynomial in graded-lex order.

        For one divisor the remainder is zero exactly when g divides self.
        """
        if not g:
            raise ZeroDivisionError("polynomial division by zero")
        key = lambda m: (sum(m), m)
        lm = max(g.terms, key=key)
        lc_inv = g.terms[lm].inverse()
        q: dict[Monomial, EisRat] = {}
        r: dict[Monomial, EisRat] = {}
        f = Poly._raw(dict(self.terms), self.nvars)
        while f.terms:
            m = max(f.terms, key=key)
            c = f.terms[m]
            if all(a >= b for a, b in zip(m, lm)):
                qm = tuple(a - b for a, b in zip(m, lm))
                qc = c * lc_inv
                q[qm] = q.get(qm, EisRat(0)) + qc
                f = f - Poly._raw({qm: qc}, self.nvars) * g
            else:
                r[m] = c
                f = Poly._raw({k: v for k, v in f.terms.items() if k != m}, self.nvars)
        return Poly(q, self.nvars), Poly(r, self.nvars)

    def exact_div(self, g: "Poly") -> "Poly":
        q, r = self.divmod(g)
        if r:
            raise ArithmeticError("polynomial does not divide")
        return q

    def divides_by(self, g: "Poly") -> bool:
        return not self.divmod(g)[1]

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        names = "xyz" if self.nvars <= 3 else [f"x{i}" for i in range(self.nvars)]
        parts = []
        for m in sorted(self.terms, key=lambda m: (-sum(m), [-e for e in m])):
            c = self.terms[m]
            mono = "*".join(
                names[i] if e == 1 else f"{names[i]}^{e}" for i, e in enumerate(m) if e
            )
            cs = format_eisrat(c)
            if mono:
                body = mono if cs == "1" else f"-{mono}" if cs == "-1" else f"({cs})*{mono}"
            else:
                body = f"({cs})" if "+" in cs[1:] or "-" in cs[1:] else cs
            parts.append(body)
        return " + ".join(parts).replace("+ -", "- ")


X = Poly.var(0)
Y = Poly.var(1)


def lie_derivative(A: Poly, B: Poly, f: Poly) -> Poly:
    """X(f) = A*df/dx + B*df/dy for the planar field X = (A, B)."""
    return A * f.diff(0) + B * f.diff(1)

