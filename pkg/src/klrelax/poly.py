"""Dense exact polynomials.

``Poly`` is a univariate polynomial stored as a tuple of coefficients in
ascending degree with no trailing zeros.  Coefficients are Python ints
(arbitrary precision) or ``fractions.Fraction``; the integer case is the one
used for every matroid invariant, rational coefficients only show up inside
the root-counting code.  ``BiPoly`` is the bivariate analogue used for Tutte
polynomials.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Sequence, Union

from .errors import DegreeExceedsK, NonIntegralCoefficient

Number = Union[int, Fraction]


def _strip(coeffs: Sequence[Number]) -> tuple:
    end = len(coeffs)
    while end and coeffs[end - 1] == 0:
        end -= 1
    return tuple(coeffs[:end])


class Poly:
    """Univariate polynomial in ``t`` with exact coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        self.coeffs = _strip(list(coeffs))

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, c: Number) -> "Poly":
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c: Number = 1) -> "Poly":
        return cls([0] * degree + [c])

    @classmethod
    def binomial_power(cls, a: Number, b: Number, e: int) -> "Poly":
        """``(a + b t)^e`` expanded."""
        return cls([comb(e, i) * a ** (e - i) * b**i for i in range(e + 1)])

    # -- basic protocol -----------------------------------------------------

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, i: int) -> Number:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _strip([other])
        if isinstance(other, (list, tuple)):
            return self.coeffs == _strip(list(other))
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({list(self.coeffs)})"

    def __str__(self):
        return render(self)

    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Number:
        return self.coeffs[-1] if self.coeffs else 0

    def to_list(self) -> list:
        return list(self.coeffs)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly([c * other for c in self.coeffs])
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = Poly((1,))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift(self, m: int) -> "Poly":
        """Multiply by ``t**m``."""
        if not self.coeffs:
            return self
        return Poly([0] * m + list(self.coeffs))

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def compose(self, inner: "Poly") -> "Poly":
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    # -- integer / rational helpers ----------------------------------------

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self) -> "Poly":
        """Divide by the (positive) content; keeps the sign of every coefficient."""
        g = self.content()
        if g in (0, 1):
            return self
        return Poly([c // g for c in self.coeffs])

    def to_fraction(self) -> "Poly":
        return Poly([Fraction(c) for c in self.coeffs])

    def to_int(self) -> "Poly":
        out = []
        for c in self.coeffs:
            c = Fraction(c)
            if c.denominator != 1:
                raise NonIntegralCoefficient(f"coefficient {c} of {self!r} is not an integer")
            out.append(c.numerator)
        return Poly(out)

    def divmod(self, divisor: "Poly") -> tuple["Poly", "Poly"]:
        """Euclidean division over the rationals."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = [Fraction(c) for c in self.coeffs]
        d = divisor.degree
        lead = Fraction(divisor.leading())
        if len(rem) - 1 < d:
            return Poly(), Poly(rem)
        quot = [Fraction(0)] * (len(rem) - d)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i] / lead
            if c:
                quot[i - d] = c
                for j, dc in enumerate(divisor.coeffs):
                    rem[i - d + j] -= c * dc
        return Poly(quot), Poly(rem[:d])

    def __mod__(self, divisor):
        return self.divmod(divisor)[1]

    def __floordiv__(self, divisor):
        return self.divmod(divisor)[0]

    def monic(self) -> "Poly":
        lead = Fraction(self.leading())
        return Poly([Fraction(c) / lead for c in self.coeffs])


def _coerce(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly((x,))
    if isinstance(x, (list, tuple)):
        return Poly(x)
    raise TypeError(f"cannot interpret {x!r} as a polynomial")


T = Poly((0, 1))
ONE = Poly((1,))
ZERO = Poly()


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over the rationals (zero if both inputs are zero)."""
    a, b = a.to_fraction(), b.to_fraction()
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def reciprocal_transform(p: Poly, k: int) -> Poly:
    """Return ``t**k * p(1/t)``: coefficient ``i`` moves to ``k - i``."""
    if p.degree > k:
        raise DegreeExceedsK(f"degree {p.degree} exceeds {k}")
    out = [0] * (k + 1)
    for i, c in enumerate(p.coeffs):
        out[k - i] = c
    return Poly(out)


def render(p: Poly, var: str = "t") -> str:
    """Ascending rendering with zero terms omitted, e.g. ``1 + 11t + 5t^2``."""
    if p.is_zero():
        return "0"
    parts = []
    for i, c in enumerate(p.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            body = ("" if mag == 1 else str(mag)) + var + ("" if i == 1 else f"^{i}")
        sign = "-" if c < 0 else "+"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)


class BiPoly:
    """Bivariate polynomial; ``coeffs[i][j]`` multiplies ``x**i * y**j``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Iterable[Number]] = ()):
        rows = [list(r) for r in coeffs]
        width = 0
        for r in rows:
            for j in range(len(r) - 1, -1, -1):
                if r[j] != 0:
                    width = max(width, j + 1)
                    break
        rows = [(r + [0] * width)[:width] for r in rows]
        while rows and not any(rows[-1]):
            rows.pop()
        if not rows:
            width = 0
        self.coeffs = tuple(tuple(r) for r in rows)

    @classmethod
    def from_dict(cls, terms: dict) -> "BiPoly":
        if not terms:
            return cls()
        nx = max(i for i, _ in terms) + 1
        ny = max(j for _, j in terms) + 1
        rows = [[0] * ny for _ in range(nx)]
        for (i, j), c in terms.items():
            rows[i][j] += c
        return cls(rows)

    def terms(self) -> dict:
        return {(i, j): c for i, r in enumerate(self.coeffs) for j, c in enumerate(r) if c}

    def __getitem__(self, ij):
        i, j = ij
        if 0 <= i < len(self.coeffs) and 0 <= j < len(self.coeffs[i]):
            return self.coeffs[i][j]
        return 0

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"BiPoly({[list(r) for r in self.coeffs]})"

    def __add__(self, other: "BiPoly") -> "BiPoly":
        terms = self.terms()
        for key, c in other.terms().items():
            terms[key] = terms.get(key, 0) + c
        return BiPoly.from_dict(terms)

    def __neg__(self):
        return BiPoly([[-c for c in r] for r in self.coeffs])

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return BiPoly([[c * other for c in r] for r in self.coeffs])
        terms: dict = {}
        for (i1, j1), a in self.terms().items():
            for (i2, j2), b in other.terms().items():
                key = (i1 + i2, j1 + j2)
                terms[key] = terms.get(key, 0) + a * b
        return BiPoly.from_dict(terms)

    __rmul__ = __mul__

    def substitute(self, x: Poly, y: Poly) -> Poly:
        """Evaluate at univariate polynomials ``x(t)``, ``y(t)``."""
        acc = Poly()
        for i, row in enumerate(self.coeffs):
            inner = Poly()
            for c in reversed(row):
                inner = inner * y + c
            acc = acc + inner * (x**i)
        return acc

    def to_list(self) -> list:
        return [list(r) for r in self.coeffs]


X_VAR = BiPoly([[0], [1]])
Y_VAR = BiPoly([[0, 1]])
