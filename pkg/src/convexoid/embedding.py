"""Projective embeddings of the compactified spectrum over F1^2 = {0, +-1}.

The degree-d part of R0 is L_d = {0} u {+-m g^d : 1 <= m <= 2^d}.  Its
nonzero positive elements give homogeneous coordinates x_1..x_{2^d} and a
map f_d into P^(2^d - 1).  Points of projective space over F1 are the
monomial primes, i.e. proper subsets of the coordinates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .common import ConvexoidError, PreconditionError
from .gamma import GammaPoly
from .places import GENERIC, INFINITY, Place, finite, primes_up_to
from .zr import stalk


@dataclass(frozen=True)
class F1ProjSpace:
    """P^(n-1): n homogeneous coordinates."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ConvexoidError("need at least one coordinate")

    def points(self, first_index: int = 1) -> list[MonomialPrime]:
        coords = range(first_index, first_index + self.n)
        out = []
        for k in range(self.n):
            for combo in itertools.combinations(coords, k):
                out.append(MonomialPrime(self.n, frozenset(combo), first_index))
        return out


@dataclass(frozen=True)
class MonomialPrime:
    """The prime generated by the coordinates in ``coords``."""

    n: int
    coords: frozenset
    first_index: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", frozenset(self.coords))
        valid = set(range(self.first_index, self.first_index + self.n))
        if not self.coords <= valid:
            raise ConvexoidError("coordinate index out of range")
        if self.coords == valid:
            raise ConvexoidError("the irrelevant ideal is not a point")

    def is_generic(self) -> bool:
        return not self.coords

    def leq(self, other: MonomialPrime) -> bool:
        """Specialisation: self specialises to other."""
        return self.n == other.n and self.coords <= other.coords

    def sorted_coords(self) -> list[int]:
        return sorted(self.coords)

    def label(self, var: str = "x") -> str:
        if not self.coords:
            return "(0)"
        return "(" + ",".join(f"{var}{i}" for i in self.sorted_coords()) + ")"

    def to_json(self) -> list[int]:
        return self.sorted_coords()


@dataclass(frozen=True)
class LinearSystem:
    d: int
    elements: tuple[GammaPoly, ...]

    def contains(self, f: GammaPoly) -> bool:
        return f in self.elements

    def closed_under_negation(self) -> bool:
        s = set(self.elements)
        return all(-f in s for f in s)

    def coordinates(self) -> list[GammaPoly]:
        """The positive elements g^d, 2g^d, ..., 2^d g^d (x_1..x_{2^d})."""
        return [GammaPoly.monomial(m, self.d) for m in range(1, 2**self.d + 1)]


def linear_system(d: int) -> LinearSystem:
    if d < 1:
        raise PreconditionError("d must be at least 1")
    top = 2**d
    elems = [GammaPoly.monomial(m, d) if m else GammaPoly() for m in range(-top, top + 1)]
    return LinearSystem(d, tuple(elems))


def fd_image(place: Place, d: int) -> MonomialPrime:
    """Closed form: p -> multiples of p up to 2^d; inf -> 1..2^d-1; generic -> (0)."""
    if d < 1:
        raise PreconditionError("d must be at least 1")
    n = 2**d
    if place.is_generic:
        coords: Iterable[int] = ()
    elif place.is_infinite:
        coords = range(1, n)
    else:
        coords = range(place.p, n + 1, place.p)
    return MonomialPrime(n, frozenset(coords))


def chart_monoid_map(d: int, n: int) -> dict[int, Fraction]:
    """x_l -> l g^d / n g^d = l/n on the chart where x_n is invertible."""
    top = 2**d
    if not 1 <= n <= top:
        raise PreconditionError(f"chart index must lie in 1..{top}")
    return {l: Fraction(l, n) for l in range(1, top + 1)}


def apply_monoid_map(images: Mapping[int, Fraction], monomial: Mapping[int, int]) -> Fraction:
    """Image of prod x_l^e_l."""
    out = Fraction(1)
    for l, e in monomial.items():
        if e < 0:
            raise ConvexoidError("exponents must be non-negative")
        out *= images[l] ** e
    return out


def chart_for(place: Place, d: int) -> int:
    """A chart containing the image point: x_1 for finite places, x_{2^d} for
    infinity (the generic point lies in every chart; x_1 is used)."""
    return 2**d if place.is_infinite else 1


def fd_image_via_chart(place: Place, d: int) -> MonomialPrime:
    """Pull back the stalk's maximal ideal along the chart monoid map."""
    n = chart_for(place, d)
    images = chart_monoid_map(d, n)
    st = stalk(place)
    coords = frozenset(l for l, v in images.items() if st.in_maximal(v))
    return MonomialPrime(2**d, coords)


# ----------------------------------------------------------------------
# simplex configuration


@dataclass
class SimplexConfig:
    n: int
    points: list[MonomialPrime]
    covers: list[tuple[MonomialPrime, MonomialPrime]]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "points": [p.label() for p in self.points],
            "covers": [[a.label(), b.label()] for a, b in self.covers],
        }

    def to_dot(self) -> str:
        lines = ["digraph simplex {", "  rankdir=BT;"]
        for p in self.points:
            lines.append(f'  "{p.label()}";')
        for a, b in self.covers:
            lines.append(f'  "{a.label()}" -> "{b.label()}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _point_key(p: MonomialPrime) -> tuple:
    return (len(p.coords), p.sorted_coords())


def simplex_config(n: int) -> SimplexConfig:
    """Points of P^n over F1: proper subsets of {x_0..x_n}, with covering relations."""
    if n < 0:
        raise PreconditionError("n must be non-negative")
    space = F1ProjSpace(n + 1)
    points = sorted(space.points(first_index=0), key=_point_key)
    covers = [
        (a, b)
        for a in points
        for b in points
        if a.coords < b.coords and len(b.coords) == len(a.coords) + 1
    ]
    covers.sort(key=lambda ab: (_point_key(ab[0]), _point_key(ab[1])))
    return SimplexConfig(n, points, covers)


# ----------------------------------------------------------------------
# product embedding


def proj_r0_leq(a: Place, b: Place) -> bool:
    """Specialisation in Proj R0: generic below all, odd primes below inf."""
    if a == b or a.is_generic:
        return True
    return a.is_finite and a.p != 2 and b.is_infinite


@dataclass
class EmbeddingReport:
    D: int
    images: dict[Place, tuple[MonomialPrime, ...]]
    injective: bool
    collisions: list[tuple[Place, Place]] = field(default_factory=list)
    order_preserved: bool = True
    order_reflected: bool = True
    order_failures: list[tuple[Place, Place]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.injective and self.order_preserved and self.order_reflected

    def to_json(self) -> dict:
        return {
            "D": self.D,
            "images": {
                str(p.to_json()): [m.to_json() for m in tup]
                for p, tup in sorted(self.images.items(), key=lambda kv: kv[0].sort_key())
            },
            "injective": self.injective,
            "order_preserved": self.order_preserved,
            "order_reflected": self.order_reflected,
            "collisions": [[a.to_json(), b.to_json()] for a, b in self.collisions],
            "order_failures": [[a.to_json(), b.to_json()] for a, b in self.order_failures],
        }


def product_embedding(places: Sequence[Place], D: int) -> EmbeddingReport:
    """Map each place to (f_1(place), ..., f_D(place)) and check that the map
    is injective and preserves and reflects specialisation."""
    if D < 1:
        raise PreconditionError("D must be at least 1")
    places = sorted(set(places), key=Place.sort_key)
    images = {p: tuple(fd_image(p, d) for d in range(1, D + 1)) for p in places}
    rep = EmbeddingReport(D, images, injective=True)
    for a, b in itertools.combinations(places, 2):
        if images[a] == images[b]:
            rep.injective = False
            rep.collisions.append((a, b))
    for a in places:
        for b in places:
            below = all(x.leq(y) for x, y in zip(images[a], images[b]))
            expected = proj_r0_leq(a, b)
            if expected and not below:
                rep.order_preserved = False
                rep.order_failures.append((a, b))
            if below and not expected:
                rep.order_reflected = False
                rep.order_failures.append((a, b))
    return rep


def default_places(D: int) -> list[Place]:
    """{p <= 2^D} u {inf, generic}."""
    return [GENERIC] + [finite(p) for p in primes_up_to(2**D)] + [INFINITY]
