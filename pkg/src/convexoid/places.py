"""Places of Q: the generic point, the finite primes, and the archimedean place."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Iterable

from sympy import factorint, isprime, primerange

from .common import ConvexoidError

GENERIC_KIND = "generic"
FINITE_KIND = "finite"
INFINITY_KIND = "infinity"


@dataclass(frozen=True)
class Place:
    kind: str
    p: int = 0

    def __post_init__(self) -> None:
        if self.kind == FINITE_KIND:
            if not isprime(self.p):
                raise ConvexoidError(f"{self.p} is not prime")
        elif self.kind in (GENERIC_KIND, INFINITY_KIND):
            if self.p:
                raise ConvexoidError("only finite places carry a prime")
        else:
            raise ConvexoidError(f"unknown place kind {self.kind!r}")

    @property
    def is_finite(self) -> bool:
        return self.kind == FINITE_KIND

    @property
    def is_generic(self) -> bool:
        return self.kind == GENERIC_KIND

    @property
    def is_infinite(self) -> bool:
        return self.kind == INFINITY_KIND

    def sort_key(self) -> tuple[int, int]:
        return ({GENERIC_KIND: 0, FINITE_KIND: 1, INFINITY_KIND: 2}[self.kind], self.p)

    def __lt__(self, other: Place) -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        if self.is_finite:
            return str(self.p)
        return "inf" if self.is_infinite else "generic"

    def to_json(self) -> int | str:
        return self.p if self.is_finite else str(self)


GENERIC = Place(GENERIC_KIND)
INFINITY = Place(INFINITY_KIND)


def finite(p: int) -> Place:
    return Place(FINITE_KIND, p)


def parse_place(text: str | int) -> Place:
    if isinstance(text, int):
        return finite(text)
    t = text.strip().lower()
    if t in ("inf", "infinity", "oo"):
        return INFINITY
    if t in ("generic", "gen", "0"):
        return GENERIC
    try:
        return finite(int(t))
    except ValueError as exc:
        raise ConvexoidError(f"cannot parse place {text!r}") from exc


def parse_places(text: str) -> list[Place]:
    t = text.strip().lower()
    if t in ("", "none"):
        return []
    return [parse_place(part) for part in t.split(",") if part.strip()]


def primes_up_to(bound: int) -> list[int]:
    return list(primerange(2, bound + 1)) if bound >= 2 else []


def prime_factors(n: int) -> list[int]:
    return list(_prime_factors(abs(n)))


@lru_cache(maxsize=65536)
def _prime_factors(n: int) -> tuple[int, ...]:
    if n < 2:
        return ()
    return tuple(sorted(factorint(n)))


def odd_part(n: int) -> int:
    n = abs(n)
    if n == 0:
        return 0
    while n % 2 == 0:
        n //= 2
    return n


def squarefree_kernel(n: int) -> int:
    out = 1
    for p in prime_factors(n):
        out *= p
    return out


def padic_order(x: int | Fraction, p: int) -> int:
    """v_p(x) for nonzero rational x."""
    x = Fraction(x)
    if x == 0:
        raise ConvexoidError("p-adic order of 0 is infinite")
    v = 0
    num, den = abs(x.numerator), x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def sorted_places(places: Iterable[Place]) -> list[Place]:
    return sorted(set(places), key=Place.sort_key)
