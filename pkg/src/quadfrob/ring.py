"""Exact arithmetic in O = Z[sqrt(d)] and its fraction field K = Q(sqrt(d)).

d is a squarefree integer with d = 2 or 3 (mod 4), so {1, sqrt(d)} is an
integral basis and every ring element is x + y*sqrt(d) with x, y in Z.
Field elements carry Fraction coordinates, always in lowest terms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction


class NotDivisibleError(ArithmeticError):
    """Exact division requested between elements with no quotient in O."""


class UnsupportedRingError(ValueError):
    """Operation needs a finite unit group, i.e. d < 0."""


def _is_squarefree(n):
    n = abs(n)
    if n == 0:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        if n % p == 0:
            n //= p
        p += 1
    return True


@dataclass(frozen=True)
class RingContext:
    """Fixes the discriminant parameter d of O = Z[sqrt(d)]."""

    d: int

    def __post_init__(self):
        if self.d in (0, 1):
            raise ValueError("d must not be 0 or 1")
        if self.d % 4 == 1:
            raise ValueError("d = 1 (mod 4) not supported: {1, sqrt(d)} must be an integral basis")
        if not _is_squarefree(self.d):
            raise ValueError("d must be squarefree")

    def __call__(self, x, y=0):
        return RingElement(self, int(x), int(y))

    @property
    def zero(self):
        return RingElement(self, 0, 0)

    @property
    def one(self):
        return RingElement(self, 1, 0)

    @property
    def sqrt_d(self):
        return RingElement(self, 0, 1)

    def units(self):
        """All units of O; requires d < 0 (else the unit group is infinite)."""
        if self.d > 0:
            raise UnsupportedRingError("unit enumeration needs d < 0")
        out = [self.one, self(-1)]
        if self.d == -1:
            out += [self.sqrt_d, self(0, -1)]
        return tuple(out)

    def field(self, p, q=0):
        return FieldElement(self, Fraction(p), Fraction(q))

    def parse(self, text):
        return parse_element(self, text)

    def to_json(self):
        return {"d": self.d}

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["d"]))


@dataclass(frozen=True)
class RingElement:
    """x + y*sqrt(d), exactly."""

    ctx: RingContext
    x: int
    y: int

    def _check(self, other):
        if not isinstance(other, RingElement):
            raise TypeError(f"expected RingElement, got {type(other).__name__}")
        if other.ctx.d != self.ctx.d:
            raise ValueError("mixed ring contexts")
        return other

    def __add__(self, other):
        if isinstance(other, int):
            return RingElement(self.ctx, self.x + other, self.y)
        self._check(other)
        return RingElement(self.ctx, self.x + other.x, self.y + other.y)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            return RingElement(self.ctx, self.x - other, self.y)
        self._check(other)
        return RingElement(self.ctx, self.x - other.x, self.y - other.y)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return RingElement(self.ctx, -self.x, -self.y)

    def __mul__(self, other):
        if isinstance(other, int):
            return RingElement(self.ctx, self.x * other, self.y * other)
        self._check(other)
        d = self.ctx.d
        return RingElement(
            self.ctx,
            self.x * other.x + d * self.y * other.y,
            self.x * other.y + self.y * other.x,
        )

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers")
        out = self.ctx.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self):
        return RingElement(self.ctx, self.x, -self.y)

    def norm(self):
        """Field norm N(x + y sqrt(d)) = x^2 - d y^2; multiplicative."""
        return self.x * self.x - self.ctx.d * self.y * self.y

    def is_zero(self):
        return self.x == 0 and self.y == 0

    def is_unit(self):
        """|N| = 1 test; the closed form for d < 0 (finite unit group)."""
        if self.ctx.d > 0:
            raise UnsupportedRingError("is_unit needs d < 0")
        return abs(self.norm()) == 1

    def unit_inverse(self):
        if not self.is_unit():
            raise NotDivisibleError(f"{self} is not a unit")
        n = self.norm()
        conj = self.conjugate()
        return conj if n == 1 else -conj

    def exact_div(self, other):
        """Quotient in O, or NotDivisibleError; conjugate-over-norm route."""
        other = self._check(other)
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in O")
        num = self * other.conjugate()
        if num.x % n or num.y % n:
            raise NotDivisibleError(f"{other} does not divide {self}")
        return RingElement(self.ctx, num.x // n, num.y // n)

    def divides(self, other):
        try:
            other.exact_div(self)
            return True
        except (NotDivisibleError, ZeroDivisionError):
            return False

    def to_field(self):
        return FieldElement(self.ctx, Fraction(self.x), Fraction(self.y))

    def coords(self):
        return (self.x, self.y)

    def __str__(self):
        if self.y == 0:
            return str(self.x)
        w = "w" if self.y in (1, -1) else f"{abs(self.y)}w"
        sign = "-" if self.y < 0 else "+"
        if self.x == 0:
            return f"-{w}" if self.y < 0 else w
        return f"{self.x}{sign}{w}"

    def to_json(self):
        return {"x": str(self.x), "y": str(self.y)}

    @classmethod
    def from_json(cls, ctx, obj):
        return cls(ctx, int(obj["x"]), int(obj["y"]))


def divide_exact(x, y):
    return x.exact_div(y)


def norm(x):
    return x.norm()


def is_unit(x):
    return x.is_unit()


@dataclass(frozen=True)
class FieldElement:
    """p + q*sqrt(d) with rational p, q."""

    ctx: RingContext
    p: Fraction
    q: Fraction

    def _check(self, other):
        if isinstance(other, RingElement):
            other = other.to_field()
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.ctx.d != self.ctx.d:
            raise ValueError("mixed ring contexts")
        return other

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.ctx, self.p + other, self.q)
        other = self._check(other)
        return FieldElement(self.ctx, self.p + other.p, self.q + other.q)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.ctx, self.p - other, self.q)
        other = self._check(other)
        return FieldElement(self.ctx, self.p - other.p, self.q - other.q)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return FieldElement(self.ctx, -self.p, -self.q)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.ctx, self.p * other, self.q * other)
        other = self._check(other)
        d = self.ctx.d
        return FieldElement(
            self.ctx,
            self.p * other.p + d * self.q * other.q,
            self.p * other.q + self.q * other.p,
        )

    __rmul__ = __mul__

    def conjugate(self):
        return FieldElement(self.ctx, self.p, -self.q)

    def norm(self):
        return self.p * self.p - self.ctx.d * self.q * self.q

    def is_zero(self):
        return self.p == 0 and self.q == 0

    def inverse(self):
        """Conjugate over norm; norm is nonzero for nonzero elements since
        sqrt(d) is irrational."""
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in K")
        return FieldElement(self.ctx, self.p / n, -self.q / n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.ctx, self.p / other, self.q / other)
        other = self._check(other)
        return self * other.inverse()

    def is_integral(self):
        return self.p.denominator == 1 and self.q.denominator == 1

    def to_ring(self):
        if not self.is_integral():
            raise NotDivisibleError(f"{self} is not in O")
        return RingElement(self.ctx, int(self.p), int(self.q))

    def __str__(self):
        if self.q == 0:
            return str(self.p)
        w = "w" if abs(self.q) == 1 else f"{abs(self.q)}*w"
        sign = "-" if self.q < 0 else "+"
        if self.p == 0:
            return f"-{w}" if self.q < 0 else w
        return f"{self.p}{sign}{w}"

    def to_json(self):
        return {
            "x": {"num": str(self.p.numerator), "den": str(self.p.denominator)},
            "y": {"num": str(self.q.numerator), "den": str(self.q.denominator)},
        }

    @classmethod
    def from_json(cls, ctx, obj):
        px = Fraction(int(obj["x"]["num"]), int(obj["x"]["den"]))
        qy = Fraction(int(obj["y"]["num"]), int(obj["y"]["den"]))
        return cls(ctx, px, qy)


def field_inverse(k):
    return k.inverse()


_TERM_RE = re.compile(r"^\s*([+-]?\s*\d*)\s*(w?)\s*$")


def parse_element(ctx, text):
    """Parses 'a+bw' shorthand, with w standing for sqrt(d).

    Accepts forms like '2', '-3', 'w', '-w', '2w', '1+w', '3-2w'.
    """
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty element")
    # split into signed terms
    terms = re.findall(r"[+-]?[^+-]+", s)
    if "".join(terms) != s:
        raise ValueError(f"cannot parse element {text!r}")
    x = 0
    y = 0
    for term in terms:
        m = _TERM_RE.match(term)
        if not m:
            raise ValueError(f"cannot parse element term {term!r}")
        coeff, wpart = m.group(1).replace(" ", ""), m.group(2)
        if wpart:
            if coeff in ("", "+"):
                c = 1
            elif coeff == "-":
                c = -1
            else:
                c = int(coeff)
            y += c
        else:
            if coeff in ("", "+", "-"):
                raise ValueError(f"cannot parse element term {term!r}")
            x += int(coeff)
    return RingElement(ctx, x, y)
