"""The compactified spectrum X of Z over Proj R0, for the field Q.

Points are the valuation convexoid rings of Q: the trivial ring Q (the
generic point), Z_(p) at every prime p, and the unit disk DQ at infinity.
Opens are the complements of finite sets of non-generic points; the
sub-space X2 drops Finite(2), where 1 boxplus 1 = 2 is not invertible.
Sections over U are the rationals lying in every stalk of U.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

from .common import ConvexoidError, PreconditionError
from .gamma import format_rat
from .places import GENERIC, INFINITY, Place, finite, padic_order, prime_factors, primes_up_to
from .ostrowski import ValuationRing


@dataclass(frozen=True)
class OpenSet:
    """Complement of ``excluded`` in X (or X2 when ``x2``); ``empty`` is the empty open."""

    excluded: frozenset = frozenset()
    x2: bool = False
    empty: bool = False

    def __post_init__(self) -> None:
        ex = frozenset() if self.empty else frozenset(self.excluded)
        object.__setattr__(self, "excluded", ex)
        if GENERIC in ex:
            raise PreconditionError("the generic point cannot be excluded; use the empty open")
        if self.x2 and finite(2) in ex:
            raise PreconditionError("Finite(2) is not a point of X2")

    @classmethod
    def of(cls, places: Iterable[Place], x2: bool = False) -> OpenSet:
        return cls(frozenset(places), x2)

    def contains(self, p: Place) -> bool:
        if self.empty:
            return False
        if self.x2 and p == finite(2):
            return False
        return p not in self.excluded

    def subset_of(self, other: OpenSet) -> bool:
        if self.empty:
            return True
        if other.empty:
            return False
        # both are cofinite: only the points missing from `other` can fail
        missing = set(other.excluded) | ({finite(2)} if other.x2 else set())
        return not any(self.contains(p) for p in missing)

    def intersect(self, other: OpenSet) -> OpenSet:
        if self.empty or other.empty:
            return OpenSet(x2=self.x2 or other.x2, empty=True)
        x2 = self.x2 or other.x2
        ex = (self.excluded | other.excluded) - ({finite(2)} if x2 else set())
        return OpenSet(ex, x2)

    def union(self, other: OpenSet) -> OpenSet:
        if self.empty:
            return other
        if other.empty:
            return self
        if self.x2 != other.x2:
            raise PreconditionError("union of opens from X and X2: restrict first")
        return OpenSet(self.excluded & other.excluded, self.x2)

    def to_json(self) -> dict:
        return {
            "space": "X2" if self.x2 else "X",
            "excluded": [p.to_json() for p in sorted(self.excluded, key=Place.sort_key)],
            "empty": self.empty,
        }


@dataclass(frozen=True)
class WeakSchemePoint:
    place: Place
    stalk_tag: str

    def to_json(self) -> dict:
        return {"place": self.place.to_json(), "stalk": self.stalk_tag}


def _stalk_tag(p: Place) -> str:
    if p.is_generic:
        return "Q"
    if p.is_infinite:
        return "ArchDisk"
    return f"Zp({p.p})"


def zr_points(place_bound: int, x2: bool = False) -> list[WeakSchemePoint]:
    places = [GENERIC] + [finite(p) for p in primes_up_to(place_bound) if not (x2 and p == 2)]
    places.append(INFINITY)
    return [WeakSchemePoint(p, _stalk_tag(p)) for p in places]


def zr_specializations(points: Sequence[WeakSchemePoint]) -> list[tuple[Place, Place]]:
    """The generic point specialises to every other point; the rest are closed."""
    return [(GENERIC, q.place) for q in points if not q.place.is_generic]


# ----------------------------------------------------------------------
# stalks and sections


@dataclass(frozen=True)
class Stalk:
    place: Place
    tag: str
    member: Callable[[Fraction], bool]
    in_maximal: Callable[[Fraction], bool]

    def is_unit(self, x: Fraction) -> bool:
        return self.member(x) and not self.in_maximal(x)

    def to_json(self) -> dict:
        return {"place": self.place.to_json(), "stalk": self.tag}


def stalk(place: Place) -> Stalk:
    if place.is_generic:
        return Stalk(place, "Q", lambda x: True, lambda x: Fraction(x) == 0)
    if place.is_infinite:
        return Stalk(
            place,
            "ArchDisk",
            lambda x: abs(Fraction(x)) <= 1,
            lambda x: abs(Fraction(x)) < 1,
        )
    if place.is_finite:
        p = place.p
        return Stalk(
            place,
            f"Zp({p})",
            lambda x: Fraction(x).denominator % p != 0,
            lambda x: Fraction(x) == 0 or padic_order(x, p) > 0,
        )
    raise ConvexoidError(f"unknown place {place}")


def section_member(q: Fraction | int, U: OpenSet) -> bool:
    """q lies in the stalk of every point of U."""
    q = Fraction(q)
    if U.empty:
        return True
    for p in prime_factors(q.denominator):
        if U.contains(finite(p)):
            return False
    if U.contains(INFINITY) and abs(q) > 1:
        return False
    return True


def _zero_locus(g: Fraction, x2: bool) -> tuple[set[Place], bool]:
    """Non-generic points where g lies in the maximal ideal; the flag says
    'every point' (g = 0)."""
    g = Fraction(g)
    if g == 0:
        return set(), True
    pts = {finite(p) for p in prime_factors(g.numerator) if not (x2 and p == 2)}
    if abs(g) < 1:
        pts.add(INFINITY)
    return pts, False


def support(U: OpenSet, gens: Sequence[Fraction | int]) -> OpenSet:
    """U minus the points whose maximal ideal contains every generator."""
    gens = [Fraction(g) for g in gens]
    if not gens:
        raise PreconditionError("support needs at least one generator")
    for g in gens:
        if not section_member(g, U):
            raise PreconditionError(f"{format_rat(g)} is not a section over the open")
    if U.empty:
        return U
    common: set[Place] | None = None
    for g in gens:
        pts, everywhere = _zero_locus(g, U.x2)
        if everywhere:
            continue
        common = pts if common is None else common & pts
    if common is None:
        # all generators vanish: every point, the generic one included
        return OpenSet(U.excluded, U.x2, empty=True)
    ex = U.excluded | {p for p in common if U.contains(p)}
    return OpenSet(ex, U.x2)


# ----------------------------------------------------------------------
# domination


@dataclass
class DominationResult:
    place: Place
    flagged: bool
    matches: list[Place] = field(default_factory=list)
    note: str = ""

    def to_json(self) -> dict:
        return {
            "place": self.place.to_json(),
            "flagged": self.flagged,
            "matches": [p.to_json() for p in self.matches],
            "note": self.note,
        }


def probe_set(place_bound: int, height: int = 30) -> list[Fraction]:
    probes = {Fraction(a, b) for a in range(-height, height + 1) for b in range(1, height + 1)}
    for p in primes_up_to(place_bound):
        probes.add(Fraction(1, p))
        probes.add(Fraction(p))
    return sorted(probes)


def dominating_point(
    R: ValuationRing, place_bound: int = 50, x2: bool = False
) -> DominationResult:
    """The unique point of X whose stalk agrees with R on a probe set.

    The trivial ring maps to the generic point and is flagged.
    """
    probes = probe_set(place_bound)
    candidates = [w.place for w in zr_points(place_bound, x2)]
    matches = []
    for c in candidates:
        st = stalk(c)
        if all(st.member(x) == bool(R.member(x)) for x in probes):
            matches.append(c)
    if not matches:
        raise PreconditionError(f"{R} matches no point of the space up to {place_bound}")
    if len(matches) > 1:
        raise ConvexoidError(f"{R} matches several points: {[str(m) for m in matches]}")
    place = matches[0]
    flagged = place.is_generic
    note = "trivial valuation ring: excluded from the classification" if flagged else ""
    if R.tag == "Zp" and R.p is not None and place != finite(R.p):
        raise ConvexoidError("tag and membership disagree")
    if R.tag == "ArchDisk" and place != INFINITY:
        raise ConvexoidError("tag and membership disagree")
    return DominationResult(place, flagged, matches, note)


# ----------------------------------------------------------------------
# restriction of sections


@dataclass
class RestrictionReport:
    passed: bool = True
    checked: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "checked": self.checked,
            "skipped": self.skipped,
            "failures": [[format_rat(a), format_rat(f)] for a, f in self.failures[:10]],
        }


def restriction_factors_check(
    U: OpenSet,
    V: OpenSet,
    samples: Sequence[Fraction] | None = None,
    n_samples: int = 300,
    seed: int = 0,
) -> RestrictionReport:
    """For sections f over U whose support contains V, every a/f with a a
    section over U is a section over V."""
    if not V.subset_of(U):
        raise PreconditionError("V must be contained in U")
    rng = random.Random(seed)
    if samples is None:
        samples = [Fraction(rng.randint(-40, 40), rng.randint(1, 40)) for _ in range(n_samples)]
    sections_u = [Fraction(x) for x in samples if section_member(x, U)]
    rep = RestrictionReport()
    for f in sections_u:
        if f == 0:
            rep.skipped += 1
            continue
        if not V.subset_of(support(U, [f])):
            rep.skipped += 1
            continue
        for a in sections_u:
            rep.checked += 1
            if not section_member(a / f, V):
                rep.passed = False
                rep.failures.append((a, f))
    return rep
