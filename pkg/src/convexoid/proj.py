"""Graded convexoid rings, dehomogenisation and the two-chart Proj of R0.

R0 is graded by deg g = 1.  For a homogeneous f = c*g^d in R0, the
degree-zero ring A_(f) consists of the fractions a/f^n with a homogeneous of
degree d*n; since such a is m*g^(dn) with |m| <= 2^(dn), the fraction has the
canonical value m/c^n in Q.  All chart elements below are these values.
The chart boxplus^d, computed from the fraction formula, is (x_1+...)/c.

For R0 itself (R0)_+ is generated by (R0)_1 = {+-g, +-2g}, so Proj R0 is
covered by D+(g) (values Z, boxplus = +) and D+(2g) (values the dyadic unit
disk, boxplus = (a+b)/2).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

from .common import ConvexoidError, PreconditionError
from .gamma import GAMMA, GammaPoly, disk_member, format_rat, is_power_of_two, poly_eval
from .places import GENERIC, INFINITY, Place, finite, prime_factors, primes_up_to
from .r0 import in_ball, r0_structure
from .structures import (
    Carrier,
    CarrierTag,
    ConvexoidStructure,
    check_weak_hom,
    element_to_json,
    induce_structure,
    linear_boxplus,
)

GAMMA_DEGREE = 1  # degree of the fundamental constant of R0


# ----------------------------------------------------------------------
# graded rings


@dataclass(frozen=True, eq=False)
class GradedConvexoidRing:
    structure: ConvexoidStructure
    plus_generators: tuple[GammaPoly, ...]
    name: str = "R0"

    @staticmethod
    def degree(a: GammaPoly) -> int:
        """Degree of a nonzero homogeneous element."""
        if a.is_zero():
            raise ConvexoidError("0 is homogeneous of every degree")
        if not a.is_monomial():
            raise ConvexoidError(f"{a} is not homogeneous")
        return a.degree

    @staticmethod
    def components(a: GammaPoly) -> dict[int, GammaPoly]:
        return {k: GammaPoly.monomial(c, k) for k, c in a.terms}

    def check_components(self, n_samples: int = 500, seed: int = 0) -> list[GammaPoly]:
        """Members whose homogeneous components are not all members."""
        rng = random.Random(seed)
        bad = []
        for _ in range(n_samples):
            a = self.structure.carrier.sample(rng)
            if not all(self.structure.member(c) for c in self.components(a).values()):
                bad.append(a)
        return bad


def r0_graded() -> GradedConvexoidRing:
    gens = tuple(GammaPoly.monomial(c, 1) for c in (1, 2, -1, -2))
    return GradedConvexoidRing(r0_structure(), gens)


# ----------------------------------------------------------------------
# charts


def _chart_member(c: int, d: int) -> Callable[[Any], bool]:
    """Values m/c^n with |m| <= 2^(dn)."""
    c = abs(c)
    two_d = 2**d

    def member(x) -> bool:
        if not isinstance(x, (int, Fraction)):
            return False
        x = Fraction(x)
        den = x.denominator
        if c == 1:
            return den == 1
        # den must divide a power of c
        rest = den
        for p in prime_factors(c):
            while rest % p == 0:
                rest //= p
        if rest != 1:
            return False
        if c == two_d:
            return abs(x) <= 1
        return True  # c < 2^d: the bound is met for large n

    return member


def _min_lift_power(x: Fraction, c: int, d: int) -> int:
    """Least n with x*c^n an integer of absolute value <= 2^(dn)."""
    n = 0
    while True:
        v = x * Fraction(c) ** n
        if v.denominator == 1 and abs(v) <= 2 ** (d * n):
            return n
        n += 1
        if n > 10_000:
            raise ConvexoidError(f"{format_rat(x)} is not a chart value")


@dataclass(frozen=True, eq=False)
class Chart:
    f: GammaPoly
    ring: ConvexoidStructure
    iso_target: str

    @property
    def d(self) -> int:
        return self.f.degree

    @property
    def c(self) -> int:
        return self.f.coeff(self.d)

    @property
    def name(self) -> str:
        return f"D+({self.f})"

    def member(self, x) -> bool:
        return self.ring.member(x)

    def lift(self, x: Fraction) -> tuple[GammaPoly, int]:
        """A representative a/f^n of x with n minimal."""
        x = Fraction(x)
        if not self.member(x):
            raise PreconditionError(f"{format_rat(x)} is not in {self.name}")
        n = _min_lift_power(x, self.c, self.d)
        m = x * Fraction(self.c) ** n
        a = GammaPoly.monomial(int(m), self.d * n) if m else GammaPoly()
        return a, n

    def to_json(self) -> dict:
        return {
            "f": str(self.f),
            "degree": self.d,
            "iso_target": self.iso_target,
            "fundamental_constant": format_rat(Fraction(1, self.c)),
        }


def make_chart(f: GammaPoly) -> Chart:
    """The chart D+(f) for a homogeneous f = c*g^d in R0 of positive degree."""
    if f.is_zero() or not f.is_monomial() or f.degree < 1:
        raise PreconditionError("f must be homogeneous of positive degree")
    if not in_ball(f):
        raise PreconditionError(f"{f} is not an element of R0")
    d, c = f.degree, f.coeff(f.degree)
    member = _chart_member(c, d)
    if abs(c) == 1:
        target, corners = "Z", (0, 1, -1, 2, -3)
    elif abs(c) == 2**d:
        target = "DZhalf"
        corners = (Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-3, 4))
    else:
        target = f"Z[1/{abs(c)}]"
        corners = (Fraction(0), Fraction(1), Fraction(-1), Fraction(1, abs(c)))

    def sample(rng: random.Random) -> Fraction:
        while True:
            n = rng.randint(0, 6)
            top = 2 ** (d * n)
            x = Fraction(rng.randint(-top, top), abs(c) ** n)
            if member(x):
                return x

    def inverse(x):
        x = Fraction(x)
        if x == 0:
            raise ConvexoidError("0 is not invertible")
        return 1 / x

    def divides(a, b) -> bool:
        a, b = Fraction(a), Fraction(b)
        return b == 0 if a == 0 else member(b / a)

    carrier = Carrier(
        name=f"A_({f})",
        member=member,
        mul=lambda a, b: a * b,
        neg=lambda a: -a,
        zero=Fraction(0),
        one=Fraction(1),
        sample=sample,
        corners=tuple(Fraction(x) for x in corners),
        divides=divides,
        inverse=inverse,
    )
    scale = Fraction(1, c)
    ring = ConvexoidStructure(
        CarrierTag("AfChart", (str(f),)), carrier, d, linear_boxplus(scale), scale=scale
    )
    return Chart(f, ring, target)


def dehomogenize(a: GammaPoly, f: GammaPoly, n: int) -> Fraction:
    """The chart value of a/f^n (a homogeneous of degree n*|f|)."""
    if not f.is_monomial():
        raise PreconditionError("f must be homogeneous")
    if a.is_zero():
        return Fraction(0)
    if not a.is_monomial():
        raise PreconditionError(f"{a} is not homogeneous")
    if a.degree != n * f.degree:
        raise PreconditionError(f"degree {a.degree} differs from {n} * {f.degree}")
    if not in_ball(a):
        raise PreconditionError(f"{a} is not an element of R0")
    return Fraction(a.coeff(a.degree)) / Fraction(f.coeff(f.degree)) ** n


def chart_boxplus(f: GammaPoly, args: Sequence, route: str = "formula") -> Fraction:
    """boxplus^|f| on A_(f).

    ``route="formula"`` lifts each x_i to a_i/f^(n_i), applies R0's induced
    boxplus to a_i f^(N - n_i) (N = sum n_i) and divides by f^(N + 1), all in
    Z[g, 1/g].  ``route="target"`` uses the catalogue value (sum x_i)/c.
    """
    chart = make_chart(f)
    d = chart.d
    if len(args) != 2**d:
        raise ConvexoidError(f"A_({f}) takes {2**d} arguments")
    xs = [Fraction(x) for x in args]
    if route == "target":
        return chart.ring.boxplus(tuple(xs))
    if route != "formula":
        raise ConvexoidError(f"unknown route {route!r}")
    lifts = [chart.lift(x) for x in xs]
    N = sum(n for _, n in lifts)
    shifted = tuple(a * f ** (N - n) for a, n in lifts)
    R = induce_structure(r0_structure(), d)
    top = R.boxplus(shifted)
    q = top.as_laurent().divide_exact((f ** (N + GAMMA_DEGREE)).as_laurent())
    if q is None or q.degree > 0 or q.low_degree < 0:
        raise ConvexoidError("fraction formula did not produce a degree-zero element")
    return Fraction(q.coeff(0))


# ----------------------------------------------------------------------
# transition and atlas


def _overlap_structure(scale: Fraction, name: str) -> ConvexoidStructure:
    """Z[1/2] with boxplus = scale*(a+b): the chart ring restricted to the overlap."""

    def member(x) -> bool:
        return isinstance(x, (int, Fraction)) and is_power_of_two(Fraction(x).denominator)

    def sample(rng: random.Random) -> Fraction:
        return Fraction(rng.randint(-64, 64), 2 ** rng.randint(0, 6))

    carrier = Carrier(
        name="Z[1/2]",
        member=member,
        mul=lambda a, b: a * b,
        neg=lambda a: -a,
        zero=Fraction(0),
        one=Fraction(1),
        sample=sample,
        corners=(Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(3)),
        divides=lambda a, b: (b == 0) if a == 0 else member(Fraction(b) / Fraction(a)),
        inverse=lambda x: 1 / Fraction(x),
    )
    return ConvexoidStructure(CarrierTag("Overlap", (name,)), carrier, 1, linear_boxplus(scale), scale=scale)


def laurent_overlap_structure() -> ConvexoidStructure:
    """Z[1/2][g, 1/g] with g*(a+b)."""

    def member(f) -> bool:
        return isinstance(f, GammaPoly) and all(
            is_power_of_two(Fraction(c).denominator) for _, c in f.terms
        )

    def sample(rng: random.Random) -> GammaPoly:
        coeffs = {
            k: Fraction(rng.randint(-8, 8), 2 ** rng.randint(0, 3))
            for k in range(-2, 3)
            if rng.random() < 0.5
        }
        return GammaPoly.from_dict(coeffs, laurent=True)

    L = lambda f: GammaPoly(f.terms, True)  # noqa: E731
    one = GammaPoly.constant(1, True)

    def divides(a: GammaPoly, b: GammaPoly) -> bool:
        if a.is_zero():
            return b.is_zero()
        q = L(b).divide_exact(L(a))
        return q is not None and member(q)

    carrier = Carrier(
        name="Z[1/2][g,1/g]",
        member=member,
        mul=lambda a, b: L(a) * L(b),
        neg=lambda a: -L(a),
        zero=L(GammaPoly()),
        one=one,
        sample=sample,
        corners=(L(GammaPoly()), one, -one, L(GAMMA), L(GAMMA).inverse()),
        divides=divides,
        inverse=lambda f: L(f).inverse(),
    )

    def op(args):
        total = L(args[0])
        for a in args[1:]:
            total = total + L(a)
        return total.gamma_shift(1)

    return ConvexoidStructure(CarrierTag("OverlapLaurent"), carrier, 1, op)


def twist_phi(f: GammaPoly) -> GammaPoly:
    """g -> g/2 on Z[1/2][g, 1/g]."""
    return GammaPoly(f.terms, True).substitute_scaled(Fraction(1, 2))


def twist_phi_inverse(f: GammaPoly) -> GammaPoly:
    return GammaPoly(f.terms, True).substitute_scaled(2)


@dataclass
class TransitionMap:
    """Gluing of two charts on their overlap.

    ``element_map`` acts on chart values (the identity of Z[1/2]: both charts
    compute a/g^n = (a/(2g)^n) 2^n to the same rational).  The two chart
    structures differ on the overlap by the twist ``phi``: g -> g/2 on
    Z[1/2][g, 1/g], which intertwines g -> 1 with g -> 1/2.
    """

    source: Chart
    target: Chart
    element_map: Callable[[Fraction], Fraction]
    inverse_map: Callable[[Fraction], Fraction]
    phi: Callable[[GammaPoly], GammaPoly] = twist_phi
    phi_inverse: Callable[[GammaPoly], GammaPoly] = twist_phi_inverse
    twist_label: str = "g -> g/2"

    def overlap_structures(self) -> tuple[ConvexoidStructure, ConvexoidStructure]:
        return (
            _overlap_structure(self.source.ring.scale, self.source.name),
            _overlap_structure(self.target.ring.scale, self.target.name),
        )

    def to_json(self) -> dict:
        return {
            "source": self.source.name,
            "target": self.target.name,
            "overlap": "Z[1/2]",
            "twist": self.twist_label,
        }


@dataclass
class TransitionReport:
    weak_iso_values: bool
    weak_iso_phi: bool
    phi_intertwines: bool
    cocycle: bool
    roundtrip: bool
    checked: int

    @property
    def passed(self) -> bool:
        return all(
            (self.weak_iso_values, self.weak_iso_phi, self.phi_intertwines, self.cocycle, self.roundtrip)
        )

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "weak_iso_values": self.weak_iso_values,
            "weak_iso_phi": self.weak_iso_phi,
            "phi_intertwines": self.phi_intertwines,
            "cocycle": self.cocycle,
            "roundtrip": self.roundtrip,
            "checked": self.checked,
        }


@dataclass
class Atlas:
    ring: GradedConvexoidRing
    charts: list[Chart]
    transitions: dict[tuple[int, int], TransitionMap] = field(default_factory=dict)

    def sigma(self, i: int, j: int) -> Callable[[Fraction], Fraction]:
        """Transition from chart i to chart j on values."""
        if i == j:
            return lambda x: x
        return self.transitions[(i, j)].element_map

    def check(self, n_samples: int = 500, seed: int = 0) -> TransitionReport:
        rng = random.Random(seed)
        t = self.transitions[(0, 1)]
        A, B = t.overlap_structures()
        wv = (
            check_weak_hom(t.element_map, A, B, n_samples, seed).passed
            and check_weak_hom(t.inverse_map, B, A, n_samples, seed).passed
        )
        L = laurent_overlap_structure()
        wp = (
            check_weak_hom(t.phi, L, L, n_samples, seed).passed
            and check_weak_hom(t.phi_inverse, L, L, n_samples, seed).passed
        )
        inter = cocycle = roundtrip = True
        for _ in range(n_samples):
            F = L.carrier.sample(rng)
            if poly_eval(t.phi(F), 1) != poly_eval(F, Fraction(1, 2)):
                inter = False
            if t.phi_inverse(t.phi(F)) != GammaPoly(F.terms, True):
                roundtrip = False
            x = A.carrier.sample(rng)
            n = len(self.charts)
            for i in range(n):
                for j in range(n):
                    for k in range(n):
                        if self.sigma(j, k)(self.sigma(i, j)(x)) != self.sigma(i, k)(x):
                            cocycle = False
            if t.inverse_map(t.element_map(x)) != x:
                roundtrip = False
        return TransitionReport(wv, wp, inter, cocycle, roundtrip, n_samples)

    def to_json(self) -> dict:
        return {
            "charts": [c.to_json() for c in self.charts],
            "transitions": [t.to_json() for t in self.transitions.values()],
        }


def proj_atlas(A: GradedConvexoidRing | None = None) -> Atlas:
    A = A or r0_graded()
    if A.name != "R0":
        raise PreconditionError("only the catalogue graded ring R0 is supported")
    charts = [make_chart(GAMMA), make_chart(GAMMA * 2)]
    ident = lambda x: Fraction(x)  # noqa: E731
    atlas = Atlas(A, charts)
    atlas.transitions[(0, 1)] = TransitionMap(charts[0], charts[1], ident, ident)
    atlas.transitions[(1, 0)] = TransitionMap(
        charts[1], charts[0], ident, ident, twist_phi_inverse, twist_phi, "g -> 2g"
    )
    return atlas


# ----------------------------------------------------------------------
# points


@dataclass
class ProjPoints:
    points: list[Place]
    specializations: list[tuple[Place, Place]]
    charts: dict[str, list[Place]]

    def leq(self, a: Place, b: Place) -> bool:
        return a == b or (a, b) in self.specializations

    def closed_points(self) -> list[Place]:
        gen = {a for a, _ in self.specializations}
        return [p for p in self.points if p not in gen]

    def to_json(self) -> dict:
        return {
            "points": [p.to_json() for p in self.points],
            "specializations": [[a.to_json(), b.to_json()] for a, b in self.specializations],
            "charts": {k: [p.to_json() for p in v] for k, v in self.charts.items()},
        }


def proj_points(place_bound: int, A: GradedConvexoidRing | None = None) -> ProjPoints:
    """Spec Z glued with Spec of the dyadic disk along Spec Z[1/2]."""
    if A is not None and A.name != "R0":
        raise PreconditionError("only R0 is supported")
    primes = [finite(p) for p in primes_up_to(place_bound)]
    odd = [p for p in primes if p.p != 2]
    pts = [GENERIC] + primes + [INFINITY]
    order = [(GENERIC, p) for p in pts[1:]] + [(p, INFINITY) for p in odd]
    charts = {
        "D+(g)": [GENERIC] + primes,
        "D+(2g)": [GENERIC] + odd + [INFINITY],
    }
    return ProjPoints(pts, order, charts)


def homogeneous_prime_contains(place: Place, a: GammaPoly) -> bool:
    """Membership of a homogeneous m*g^k in the homogeneous prime of a point."""
    if a.is_zero():
        return True
    if not a.is_monomial():
        raise PreconditionError(f"{a} is not homogeneous")
    k, m = a.degree, a.coeff(a.degree)
    if place.is_generic:
        return False
    if place.is_infinite:
        return abs(m) < 2**k
    return m % place.p == 0


def chart_prime_contains(place: Place, chart: Chart, x: Fraction) -> bool:
    """x lies in the prime of A_(f) matching the point (through a lift)."""
    a, n = chart.lift(x)
    return homogeneous_prime_contains(place, a)


# ----------------------------------------------------------------------
# sections over opens


@dataclass(frozen=True)
class ProjOpen:
    """Complement of a finite set of closed-under-specialisation points."""

    excluded: frozenset

    def __post_init__(self) -> None:
        ex = frozenset(self.excluded)
        object.__setattr__(self, "excluded", ex)
        if GENERIC in ex:
            raise PreconditionError("the generic point lies in every nonempty open")
        odd = [p for p in ex if p.is_finite and p.p != 2]
        if odd and INFINITY not in ex:
            raise PreconditionError(
                "odd primes specialise to infinity: excluding one requires excluding infinity"
            )

    def contains(self, p: Place) -> bool:
        return p not in self.excluded


@dataclass
class Sections:
    description: str
    member: Callable[[Fraction], bool]
    has_convexoid_structure: bool
    fundamental_constant: Fraction | None
    finite_listing: list[Fraction] | None = None

    def to_json(self) -> dict:
        out: dict[str, Any] = {
            "sections": self.description,
            "has_convexoid_structure": self.has_convexoid_structure,
            "fundamental_constant": None
            if self.fundamental_constant is None
            else format_rat(self.fundamental_constant),
        }
        if self.finite_listing is not None:
            out["elements"] = [format_rat(x) for x in self.finite_listing]
        return out


def _localized_integers(primes: Sequence[int]) -> Callable[[Fraction], bool]:
    ps = sorted(set(primes))

    def member(x) -> bool:
        den = Fraction(x).denominator
        for p in ps:
            while den % p == 0:
                den //= p
        return den == 1

    return member


def sections(U: ProjOpen) -> Sections:
    """Sections over U as a monoid, with the convexoid-structure flag.

    The flag is true iff U does not contain both 2 and infinity.
    """
    ex = U.excluded
    primes = sorted(p.p for p in ex if p.is_finite)
    has2 = U.contains(finite(2))
    has_inf = U.contains(INFINITY)
    if has2 and has_inf:
        member = lambda x: Fraction(x) in (0, 1, -1)  # noqa: E731
        return Sections("{0,+-1}", member, False, None, [Fraction(-1), Fraction(0), Fraction(1)])
    if has_inf:
        # only 2 removed: the whole chart D+(2g)
        return Sections("DZhalf", lambda x: disk_member(x, "DZhalf"), True, Fraction(1, 2))
    name = f"Z[1/{math.prod(primes)}]" if primes else "Z"
    return Sections(name, _localized_integers(primes), True, Fraction(1))
