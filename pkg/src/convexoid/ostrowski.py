"""Valuation convexoid rings of Q and their classification from membership queries."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .common import ConvexoidError, InvalidHypothesisError
from .gamma import GAMMA, GammaPoly, format_rat, poly_eval
from .places import INFINITY, Place, padic_order, primes_up_to
from .structures import (
    CarrierTag,
    ConvexoidStructure,
    dq,
    element_to_json,
    induce_structure,
    q_ring,
    z_local,
)

FINITE_ODD = "finite_odd"
ARCH_DISK = "arch_disk"
TRIVIAL = "trivial"
INVALID = "invalid_hypothesis"


@dataclass(frozen=True, eq=False)
class ValuationRing:
    """A subring-like convexoid ring of Q with an explicit absolute value.

    ``abs_value`` maps nonzero rationals into the ordered multiplicative
    group of positive rationals (p**-v_p(x) for Z_(p), |x| for the disk).
    """

    member: Callable[[Fraction], bool]
    structure: ConvexoidStructure
    tag: str | None = None
    p: int | None = None
    abs_value: Callable[[Fraction], Fraction] | None = None

    def exponent(self, x: Fraction) -> int:
        """Negated p-adic order, the value group written additively."""
        if self.tag != "Zp":
            raise ConvexoidError("exponents only for p-adic rings")
        return -padic_order(x, self.p)

    def is_unit(self, x: Fraction) -> bool:
        x = Fraction(x)
        return x != 0 and self.member(x) and self.member(1 / x)

    def __str__(self) -> str:
        if self.tag == "Zp":
            return f"Zp({self.p})"
        return self.tag or self.structure.label


def _padic_abs(p: int) -> Callable[[Fraction], Fraction]:
    return lambda x: Fraction(p) ** (-padic_order(x, p))


def zp_valuation(p: int) -> ValuationRing:
    return ValuationRing(
        member=lambda x: Fraction(x).denominator % p != 0,
        structure=z_local(p),
        tag="Zp",
        p=p,
        abs_value=_padic_abs(p),
    )


def arch_valuation(sign: int = 1) -> ValuationRing:
    return ValuationRing(
        member=lambda x: abs(Fraction(x)) <= 1,
        structure=dq(sign),
        tag="ArchDisk",
        abs_value=lambda x: abs(Fraction(x)),
    )


def trivial_valuation() -> ValuationRing:
    return ValuationRing(
        member=lambda x: True,
        structure=q_ring(),
        tag="TrivialR",
        abs_value=lambda x: Fraction(1),
    )


def known_valuation(place: Place) -> ValuationRing:
    """Z_(p) with + at an odd prime, the unit disk with (a+b)/2 at infinity."""
    if place.is_infinite:
        return arch_valuation()
    if place.is_finite:
        if place.p == 2:
            raise InvalidHypothesisError("1 boxplus 1 = 2 is not invertible in Z_(2)")
        return zp_valuation(place.p)
    raise InvalidHypothesisError("the generic point carries the trivial valuation ring Q")


# ----------------------------------------------------------------------
# sampled valuation axioms


@dataclass
class ValuationReport:
    passed: bool = True
    checked: int = 0
    failures: dict[str, Any] = field(default_factory=dict)

    def fail(self, name: str, witness: Any) -> None:
        self.passed = False
        self.failures.setdefault(name, witness)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "checked": self.checked,
            "failures": {k: element_to_json(v) for k, v in self.failures.items()},
        }


def _sample_rational(rng: random.Random) -> Fraction:
    while True:
        x = Fraction(rng.randint(-200, 200), rng.randint(1, 200))
        if x:
            return x


def _sample_member(R: ValuationRing, rng: random.Random) -> Fraction:
    corners = [Fraction(0), Fraction(1), Fraction(-1)]
    if rng.random() < 0.1:
        return rng.choice(corners)
    while True:
        x = _sample_rational(rng)
        if R.member(x):
            return x
        if R.member(1 / x):
            return 1 / x


def valuation_axiom_check(R: ValuationRing, n_samples: int = 1000, seed: int = 0) -> ValuationReport:
    """Checks on samples: x or 1/x lies in R; units are exactly |x| = 1;
    |.| is multiplicative; |a boxplus b| <= max(|a|, |b|)."""
    if R.abs_value is None:
        raise ConvexoidError("a computable value map is required")
    rng = random.Random(seed)
    av = R.abs_value
    S = R.structure
    rep = ValuationReport()

    def absv(x: Fraction) -> Fraction:
        return Fraction(0) if x == 0 else av(x)

    for _ in range(n_samples):
        rep.checked += 1
        x = _sample_rational(rng)
        if not (R.member(x) or R.member(1 / x)):
            rep.fail("dichotomy", x)
        if R.is_unit(x) != (av(x) == 1):
            rep.fail("units", x)
        if R.member(x) != (av(x) <= 1):
            rep.fail("membership", x)
        y = _sample_rational(rng)
        if av(x * y) != av(x) * av(y):
            rep.fail("multiplicative", (x, y))
        a, b = _sample_member(R, rng), _sample_member(R, rng)
        args = S.pad((a, b))
        s = S.boxplus(args)
        if not R.member(s):
            rep.fail("closure", (a, b))
        elif absv(s) > max(absv(a), absv(b)):
            rep.fail("ultrametric", (a, b))
    return rep


# ----------------------------------------------------------------------
# classification from a membership oracle


@dataclass(frozen=True)
class Classification:
    kind: str
    p: int | None = None
    reason: str = ""
    queries: int = 0

    def to_json(self) -> dict:
        out: dict[str, Any] = {"classification": self.kind}
        if self.p is not None:
            out["p"] = self.p
        if self.reason:
            out["reason"] = self.reason
        return out


class CountingOracle:
    """Caches answers and counts distinct queries."""

    def __init__(self, fn: Callable[[Fraction], bool]) -> None:
        self.fn = fn
        self.cache: dict[Fraction, bool] = {}

    def __call__(self, x: Fraction | int) -> bool:
        x = Fraction(x)
        if x not in self.cache:
            self.cache[x] = bool(self.fn(x))
        return self.cache[x]

    @property
    def calls(self) -> int:
        return len(self.cache)


def classify(oracle: Callable[[Fraction], bool], query_bound: int) -> Classification:
    """Identify a valuation convexoid ring of Q from membership answers.

    If some integer 2..bound is missing the ring is the archimedean disk.
    Otherwise every integer is in, and the primes p <= bound with 1/p
    missing decide: none means the trivial ring, exactly one odd p means
    Z_(p), p = 2 breaks the invertibility of 1 boxplus 1, and two or more
    contradict the uniqueness of such a prime.  Uses at most 4*bound
    distinct queries.
    """
    if query_bound < 2:
        raise ConvexoidError("query_bound must be at least 2")
    q = CountingOracle(oracle)

    def done(kind: str, p: int | None = None, reason: str = "") -> Classification:
        return Classification(kind, p, reason, q.calls)

    if not q(1) or not q(0) or not q(-1):
        return done(INVALID, reason="0 and +-1 must be members")
    missing_ints = [n for n in range(2, query_bound + 1) if not q(n)]
    if missing_ints:
        for n in missing_ints:
            if not q(Fraction(1, n)):
                return done(INVALID, reason=f"neither {n} nor 1/{n} is a member")
        return done(ARCH_DISK)
    bad = [p for p in primes_up_to(query_bound) if not q(Fraction(1, p))]
    if not bad:
        return done(TRIVIAL, reason="every queried rational is a member; excluded by hypothesis")
    if len(bad) > 1:
        return done(INVALID, reason=f"two primes {bad[0]} and {bad[1]} are non-units")
    p = bad[0]
    if p == 2:
        return done(INVALID, reason="1 boxplus 1 = 2 is not invertible")
    # local behaviour at p: powers are members, inverse powers are not
    k = 2
    if not q(p**k) or q(Fraction(1, p**k)):
        return done(INVALID, reason=f"powers of {p} behave inconsistently")
    return done(FINITE_ODD, p)


def oracle_for(name: str) -> Callable[[Fraction], bool]:
    """``zp:P`` (P any prime, 2 included), ``arch`` or ``trivial``."""
    s = name.strip().lower()
    if s == "arch":
        return arch_valuation().member
    if s == "trivial":
        return trivial_valuation().member
    if s.startswith("zp:"):
        p = int(s[3:])
        if p < 2 or any(p % r == 0 for r in range(2, math.isqrt(p) + 1)):
            raise ConvexoidError(f"{p} is not prime")
        return lambda x: Fraction(x).denominator % p != 0
    raise ConvexoidError(f"unknown oracle {name!r}")


# ----------------------------------------------------------------------
# digit expansions


@dataclass
class DigitReport:
    b: int
    a: int
    n: int
    value: int
    digits: list[int]
    m: int
    lhs: GammaPoly
    rhs: GammaPoly
    holds: bool
    eval_checks: dict[str, bool]

    def to_json(self) -> dict:
        return {
            "b": self.b,
            "a": self.a,
            "n": self.n,
            "value": self.value,
            "digits": self.digits,
            "m": self.m,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "holds": self.holds,
            "eval_checks": self.eval_checks,
        }


def base_digits(value: int, a: int) -> list[int]:
    """Base-a digits, least significant first."""
    if value == 0:
        return [0]
    out = []
    while value:
        value, r = divmod(value, a)
        out.append(r)
    return out


def digit_expansion_check(b: int, a: int, n: int) -> DigitReport:
    """Verify b^n = 2^m (2g)^-m boxplus^m(c_0, c_1 a, c_2 a^2, ..., 0, ...)
    in Z[1/2][g, 1/g], with boxplus = g(x + y) induced to 2^m arguments and
    m the least integer with 2^m at least the number of digits (m >= 1)."""
    from .r0 import z_gamma_laurent

    if a < 2 or b < 2 or n < 1:
        raise ConvexoidError("need a, b >= 2 and n >= 1")
    value = b**n
    digits = base_digits(value, a)
    m = max(1, math.ceil(math.log2(len(digits))))
    while 2**m < len(digits):  # guard against float rounding
        m += 1
    S = induce_structure(z_gamma_laurent(), m)
    terms = [GammaPoly.constant(c * a**i, laurent=True) for i, c in enumerate(digits)]
    args = S.pad(terms)
    boxed = S.boxplus(args)
    two_gamma_inv = (GAMMA * 2).inverse()
    rhs = boxed * two_gamma_inv**m * (2**m)
    lhs = GammaPoly.constant(value, laurent=True)
    checks = {
        "g=1/2": poly_eval(rhs, Fraction(1, 2)) == value,
        "g=1": poly_eval(rhs, 1) == value,
    }
    return DigitReport(b, a, n, value, digits, m, lhs, rhs, lhs == rhs, checks)
