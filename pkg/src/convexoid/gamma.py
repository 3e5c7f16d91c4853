"""Exact rationals and the polynomial carriers Z[g] and Z[g, 1/g].

Rationals are :class:`fractions.Fraction` (always in lowest terms with a
positive denominator).  Polynomials in the formal variable ``g`` (the
fundamental constant of the initial convexoid ring) are stored sparsely as
sorted ``(degree, coefficient)`` pairs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

from .common import ConvexoidError

Rat = Fraction
Number = Union[int, Fraction]

DQ = "DQ"
DZHALF = "DZhalf"


def as_rat(x: Number | str) -> Fraction:
    if isinstance(x, str):
        return parse_rat(x)
    return Fraction(x)


def parse_rat(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ConvexoidError(f"not a rational: {text!r}") from exc


def format_rat(x: Number) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def disk_member(x: Number, kind: str = DQ) -> bool:
    """Membership in the unit disk of Q (``"DQ"``) or of Z[1/2] (``"DZhalf"``)."""
    x = Fraction(x)
    if abs(x) > 1:
        return False
    if kind == DQ:
        return True
    if kind == DZHALF:
        return is_power_of_two(x.denominator)
    raise ConvexoidError(f"unknown disk kind {kind!r}")


def _normalize_coeff(c: Number) -> Number:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


@dataclass(frozen=True)
class GammaPoly:
    """An element of Z[g] (``laurent=False``) or Z[g, 1/g] (``laurent=True``).

    Coefficients are exact: ints, or Fractions when working over Z[1/2]
    (the overlap ring of the two Proj charts).  Zero coefficients are never
    stored, so equality is structural.
    """

    terms: tuple[tuple[int, Number], ...] = ()
    laurent: bool = False

    def __post_init__(self) -> None:
        for deg, c in self.terms:
            if c == 0:
                raise ConvexoidError("zero coefficient stored in GammaPoly")
            if deg < 0 and not self.laurent:
                raise ConvexoidError("negative degree in a plain polynomial")

    # -- construction -------------------------------------------------

    @classmethod
    def from_dict(cls, coeffs: Mapping[int, Number], laurent: bool = False) -> GammaPoly:
        terms = tuple(
            sorted((int(k), _normalize_coeff(v)) for k, v in coeffs.items() if v != 0)
        )
        return cls(terms, laurent)

    @classmethod
    def constant(cls, c: Number, laurent: bool = False) -> GammaPoly:
        return cls.from_dict({0: c}, laurent)

    @classmethod
    def monomial(cls, c: Number, degree: int, laurent: bool = False) -> GammaPoly:
        return cls.from_dict({degree: c}, laurent)

    @classmethod
    def from_dense(cls, coeffs: Iterable[Number], laurent: bool = False) -> GammaPoly:
        return cls.from_dict(dict(enumerate(coeffs)), laurent)

    # -- inspection ---------------------------------------------------

    @property
    def coeffs(self) -> dict[int, Number]:
        return dict(self.terms)

    def coeff(self, degree: int) -> Number:
        for d, c in self.terms:
            if d == degree:
                return c
        return 0

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Top degree; -1 for the zero polynomial."""
        return self.terms[-1][0] if self.terms else -1

    @property
    def low_degree(self) -> int:
        return self.terms[0][0] if self.terms else 0

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for _, c in self.terms)

    def height(self) -> Fraction:
        """max(|coefficients|, |f(1)|)."""
        if not self.terms:
            return Fraction(0)
        return Fraction(max(max(abs(c) for _, c in self.terms), abs(sum(c for _, c in self.terms))))

    def dense(self) -> tuple[Number, ...]:
        if self.laurent:
            raise ConvexoidError("dense form only for plain polynomials")
        out = [0] * (self.degree + 1)
        for d, c in self.terms:
            out[d] = c
        return tuple(out)

    # -- arithmetic ---------------------------------------------------

    def _check(self, other: GammaPoly) -> None:
        if self.laurent != other.laurent:
            raise ConvexoidError("mixing plain and Laurent polynomials")

    def _coerce(self, other: object) -> GammaPoly:
        if isinstance(other, GammaPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return GammaPoly.constant(other, self.laurent)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: object) -> GammaPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self.terms)
        for d, c in other.terms:
            acc[d] = acc.get(d, 0) + c
        return GammaPoly.from_dict(acc, self.laurent)

    __radd__ = __add__

    def __neg__(self) -> GammaPoly:
        return GammaPoly(tuple((d, -c) for d, c in self.terms), self.laurent)

    def __sub__(self, other: object) -> GammaPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: object) -> GammaPoly:
        return (-self) + other

    def __mul__(self, other: object) -> GammaPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc: dict[int, Number] = {}
        for d1, c1 in self.terms:
            for d2, c2 in other.terms:
                acc[d1 + d2] = acc.get(d1 + d2, 0) + c1 * c2
        return GammaPoly.from_dict(acc, self.laurent)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> GammaPoly:
        if n < 0:
            return self.inverse() ** (-n)
        out = GammaPoly.constant(1, self.laurent)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def gamma_shift(self, k: int) -> GammaPoly:
        """Multiply by g**k."""
        if not self.laurent and self.terms and self.low_degree + k < 0:
            raise ConvexoidError("shift leaves Z[g]; use the Laurent variant")
        return GammaPoly(tuple((d + k, c) for d, c in self.terms), self.laurent)

    def scale(self, c: Number) -> GammaPoly:
        return GammaPoly.from_dict({d: v * c for d, v in self.terms}, self.laurent)

    def inverse(self) -> GammaPoly:
        """Inverse of a unit monomial c*g**k in the Laurent ring over Q."""
        if not self.is_monomial():
            raise ConvexoidError(f"{self} is not invertible")
        (d, c), = self.terms
        return GammaPoly.from_dict({-d: Fraction(1) / Fraction(c)}, laurent=True)

    def as_laurent(self) -> GammaPoly:
        return GammaPoly(self.terms, True)

    def as_plain(self) -> GammaPoly:
        return GammaPoly(self.terms, False)

    def substitute_scaled(self, t: Number) -> GammaPoly:
        """The polynomial f(t*g), e.g. the chart twist g -> g/2."""
        t = Fraction(t)
        return GammaPoly.from_dict({d: c * t**d for d, c in self.terms}, self.laurent)

    def divide_exact(self, other: GammaPoly) -> GammaPoly | None:
        """Exact quotient self/other in Q[g, 1/g], or None if it does not exist."""
        if other.is_zero():
            return None
        if self.is_zero():
            return GammaPoly((), self.laurent)
        # normalise both to polynomials in g and run long division over Q
        shift = other.low_degree
        num = dict((d - self.low_degree, Fraction(c)) for d, c in self.terms)
        den = [(d - shift, Fraction(c)) for d, c in other.terms]
        den_deg, den_lead = den[-1]
        quotient: dict[int, Fraction] = {}
        while num:
            top = max(num)
            if top < den_deg:
                return None
            q = num[top] / den_lead
            quotient[top - den_deg] = q
            for d, c in den:
                key = top - den_deg + d
                val = num.get(key, 0) - q * c
                if val:
                    num[key] = val
                else:
                    num.pop(key, None)
        offset = self.low_degree - shift
        result = {d + offset: c for d, c in quotient.items()}
        laurent = self.laurent or other.laurent
        if not laurent and any(d < 0 for d in result):
            return None
        return GammaPoly.from_dict(result, laurent)

    # -- evaluation ---------------------------------------------------

    def __call__(self, t: Number) -> Fraction:
        return poly_eval(self, t)

    # -- display ------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for d, c in self.terms:
            cs = format_rat(c)
            if d == 0:
                body = cs
            else:
                mono = "g" if d == 1 else f"g^{d}"
                if c == 1:
                    body = mono
                elif c == -1:
                    body = "-" + mono
                else:
                    body = f"{cs}{mono}" if "/" not in cs else f"({cs}){mono}"
            parts.append(body)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def to_json(self) -> dict:
        return {
            "coeffs": {str(d): format_rat(c) for d, c in self.terms},
            "laurent": self.laurent,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> GammaPoly:
        return cls.from_dict(
            {int(k): parse_rat(str(v)) for k, v in data["coeffs"].items()},
            bool(data.get("laurent", False)),
        )


ZERO = GammaPoly()
ONE = GammaPoly.constant(1)
GAMMA = GammaPoly.monomial(1, 1)


def poly_eval(f: GammaPoly, t: Number) -> Fraction:
    """Exact value of ``f`` at ``g = t``."""
    t = Fraction(t)
    if t == 0 and any(d < 0 for d, _ in f.terms):
        raise ConvexoidError("evaluating a Laurent polynomial with negative powers at 0")
    return sum((Fraction(c) * t**d for d, c in f.terms), Fraction(0))


def poly_add(f: GammaPoly, g: GammaPoly) -> GammaPoly:
    return f + g


def poly_mul(f: GammaPoly, g: GammaPoly) -> GammaPoly:
    return f * g


def poly_neg(f: GammaPoly) -> GammaPoly:
    return -f


def gamma_shift(f: GammaPoly, k: int) -> GammaPoly:
    return f.gamma_shift(k)


_TERM = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)?\s*(\*?\s*g(?:\^(-?\d+))?)?")


def parse_poly(text: str, laurent: bool = False) -> GammaPoly:
    """Parse expressions such as ``"3g^2"``, ``"g + g^2"``, ``"-5g^3"``, ``"1 - g^-1"``."""
    src = text.replace(" ", "")
    if not src:
        raise ConvexoidError("empty polynomial")
    acc: dict[int, Fraction] = {}
    pos = 0
    while pos < len(src):
        m = _TERM.match(src, pos)
        if not m or m.end() == pos or not (m.group(2) or m.group(3)):
            raise ConvexoidError(f"cannot parse polynomial {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(3):
            deg = int(m.group(4)) if m.group(4) is not None else 1
        else:
            deg = 0
        acc[deg] = acc.get(deg, Fraction(0)) + sign * coeff
        pos = m.end()
    if any(d < 0 for d in acc):
        laurent = True
    return GammaPoly.from_dict(acc, laurent)
