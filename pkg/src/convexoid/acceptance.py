"""The acceptance criteria as executable checks.

Each criterion returns a :class:`CriterionResult` with status PASS, FAIL or
SKIPPED.  A criterion is SKIPPED (never failed) when the budget is too small
to reach the part it is about.  ``catalogue`` lets callers swap structure
factories, which is how tests confirm that a broken structure is caught.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .common import ConvexoidError
from .embedding import (
    default_places,
    fd_image,
    fd_image_via_chart,
    linear_system,
    product_embedding,
    simplex_config,
)
from .gamma import GAMMA, GammaPoly, poly_eval
from .ideals import Ideal, NotPrime, classify_prime, spec_points, verify_not_prime
from .ostrowski import (
    ARCH_DISK,
    FINITE_ODD,
    INVALID,
    TRIVIAL,
    arch_valuation,
    classify,
    digit_expansion_check,
    oracle_for,
    trivial_valuation,
    zp_valuation,
)
from .places import GENERIC, INFINITY, Place, finite, primes_up_to
from .proj import ProjOpen, dehomogenize, make_chart, proj_atlas, sections, twist_phi
from .r0 import SaturationBudget, enumerate_r0, graded_part, preimage_witness
from .structures import (
    agree_on_samples,
    check_axioms,
    descend_structure,
    dq,
    dzhalf,
    induce_structure,
    trivial_monoid,
    z_with_u,
)
from .zr import OpenSet, dominating_point, section_member, stalk, support

PASS, FAIL, SKIPPED = "PASS", "FAIL", "SKIPPED"


@dataclass
class AcceptanceBudget:
    max_degree: int = 6
    max_height: int = 128
    axiom_samples: int = 10_000
    roundtrip_samples: int = 1_000
    witness_max_n: int = 10
    classify_bound: int = 200
    seed: int = 0

    def r0_budget(self) -> SaturationBudget:
        return SaturationBudget(self.max_degree, self.max_height)

    def reaches(self, d: int) -> bool:
        """Degree d is fully inside the enumeration budget."""
        return d <= self.max_degree and 2**d <= self.max_height


@dataclass
class CriterionResult:
    number: int
    name: str
    status: str
    details: dict[str, Any] = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        return f"criterion {self.number:2d} {self.name}: {self.status}"

    def to_json(self) -> dict:
        return {
            "criterion": self.number,
            "name": self.name,
            "status": self.status,
            "details": self.details,
        }


def default_catalogue() -> dict[str, Callable[[], Any]]:
    return {
        "DQ": dq,
        "DZhalf": dzhalf,
        "ZWithU(1)": lambda: z_with_u(1),
        "ZWithU(2)": lambda: z_with_u(2),
        "ZWithU(1/2)": lambda: z_with_u(Fraction(1, 2)),
        "TrivialMonoid": lambda: trivial_monoid(("x", "y")),
        "chart D+(g)": lambda: make_chart(GAMMA).ring,
        "chart D+(2g)": lambda: make_chart(GAMMA * 2).ring,
    }


def _status(ok: bool, skipped: bool = False) -> str:
    if not ok:
        return FAIL
    return SKIPPED if skipped else PASS


# ----------------------------------------------------------------------
# criteria


def _expected_graded(d: int) -> set[GammaPoly]:
    top = 2**d
    return {GammaPoly()} | {GammaPoly.monomial(s * m, d) for m in range(1, top + 1) for s in (1, -1)}


def criterion_graded_parts(b: AcceptanceBudget, cat) -> tuple[str, dict]:
    reached = [d for d in range(0, 7) if b.reaches(d)]
    if not reached:
        return SKIPPED, {"reason": "budget reaches no degree"}
    budget = b.r0_budget()
    bad = [d for d in reached if set(graded_part(d, budget)) != _expected_graded(d)]
    missing = [d for d in range(0, 7) if d not in reached]
    details = {"checked_degrees": reached, "mismatched": bad, "beyond_budget": missing}
    return _status(not bad, bool(missing)), details


def criterion_degree_one(b: AcceptanceBudget, cat) -> tuple[str, dict]:
    if not b.reaches(1):
        return SKIPPED, {"reason": "degree 1 is beyond the budget"}
    part = {f for f in graded_part(1, b.r0_budget()) if not f.is_zero()}
    want = {GammaPoly.monomial(c, 1) for c in (1, -1, 2, -2)}
    return _status(part == want), {"nonzero_degree_one": sorted(str(f) for f in part)}


def criterion_certificates(b: AcceptanceBudget, cat) -> tuple[str, dict]:
    enum = enumerate_r0(b.r0_budget())
    bad_certs = enum.verify_certificates()
    bad_witness = []
    checked = 0
    memo: dict = {}
    for n in range(0, b.witness_max_n + 1):
        den = 2**n
        for m in range(-den, den + 1):
            x = Fraction(m, den)
            if x.denominator != den and n > 0:
                continue
            checked += 1
            poly, der = preimage_witness(x)
            if der.replay(memo) != poly or poly_eval(poly, Fraction(1, 2)) != x:
                bad_witness.append(str(x))
    details = {
        "elements": len(enum),
        "bad_certificates": [str(f) for f in bad_certs[:10]],
        "witness_targets": checked,
        "bad_witnesses": bad_witness[:10],
    }
    return _status(not bad_certs and not bad_witness), details


def criterion_axioms(b: AcceptanceBudget, cat) -> tuple[str, dict]:
    failures: dict[str, list[str]] = {}
    for name, factory in cat.items():
        rep = check_axioms(factory(), b.axiom_samples, b.seed)
        if not rep.passed:
            failures[name] = rep.failures()
    roundtrips = {
        "DQ^[2] descended by 1/2": (induce_structure(cat["DQ"](), 2), Fraction(1, 2), cat["DQ"]()),
        "ZWithU(1)^[3] descended by 1": (
            induce_structure(cat["ZWithU(1)"](), 3),
            1,
            cat["ZWithU(1)"](),
        ),
    }
    bad_rt = []
    for name, (S, mu, base) in roundtrips.items():
        try:
            D = descend_structure(S, mu, base.d)
        except ConvexoidError:
            bad_rt.append(name)
            continue
        if agree_on_samples(D, base, b.roundtrip_samples, b.seed) is not None:
            bad_rt.append(name)
    details = {
        "structures": list(cat),
        "samples": b.axiom_samples,
        "failures": failures,
        "roundtrip_failures": bad_rt,
    }
    return _status(not failures and not bad_rt), details


def criterion_ostrowski(b: AcceptanceBudget, cat) -> tuple[str, dict]:
    bound = b.classify_bound
    limit = 4 * bound
    wrong = []
    max_queries = 0
    cases = [(f"zp:{p}", FINITE_ODD, p) for p in primes_up_to(100) if p != 2]
    cases += [("arch", ARCH_DISK, None), ("zp:2", INVALID, None), ("trivial", TRIVIAL, None)]
    for oracle_name, kind, p in cases:
        c = classify(oracle_for(oracle_name), bound)
        max_queries = max(max_queries, c.queries)
        if c.kind != kind or (p is not None and c.p != p) or c.queries > limit:
            wrong.append({"oracle": oracle_name, "got": c.to_json(), "queries": c.queries})
    details = {"bound": bound, "query_limit": limit, "max_queries": max_queries, "wrong": wrong}
    return _status(not wrong), details


def criterion_digits(b: AcceptanceBudget, cat) -> tuple[str, dict]:
    bad = [
        [bb, a, n]
        for a in range(2, 11)
        for bb in range(2, 11)
        for n in range(1, 6)
        if not digit_expansion_check(bb, a, n).holds
    ]
    return _status(not bad), {"cases": 9 * 9 * 5, "failures": bad[:10]}


def criterion_dzhalf_spec(b: AcceptanceBudget, cat) -> tuple[str, dict]:
    S = cat["DZhalf"]()
    wrong = []
    for p in primes_up_to(50):
        if p == 2:
            continue
        got = classify_prime(Ideal(S, (p,)))
        if got != finite(p):
            wrong.append([f"<{p}>", str(got)])
    for k in range(1, 6):
        got = classify_prime(Ideal(S, (Fraction(1, 2**k),)))
        if got != INFINITY:
            wrong.append([f"<1/{2**k}>", str(got)])
    I = Ideal(S, (Fraction(3, 4),))
    got = classify_prime(I)
    witness_ok = isinstance(got, NotPrime) and verify_not_prime(I, got.witness)
    poset = spec_points("DZhalf", 50)
    odd = [finite(p) for p in primes_up_to(50) if p != 2]
    poset_ok = (
        set(poset.points) == {GENERIC, INFINITY, *odd}
        and poset.closed_points() == [INFINITY]
        and all(poset.leq(GENERIC, q) for q in poset.points)
        and all(poset.leq(p, INFINITY) for p in odd)
        and not any(poset.leq(p, q) for p in odd for q in odd if p != q)
    )
    details = {
        "wrong": wrong,
        "three_quarters": got.to_json() if isinstance(got, NotPrime) else str(got),
        "witness_verified": witness_ok,
        "poset_ok": poset_ok,
    }
    return _status(not wrong and witness_ok and poset_ok), details


def criterion_proj(b: AcceptanceBudget, cat) -> tuple[str, dict]:
    atlas = proj_atlas()
    targets = [c.iso_target for c in atlas.charts]
    twist_ok = twist_phi(GammaPoly.monomial(1, 1, laurent=True)) == GammaPoly.from_dict(
        {1: Fraction(1, 2)}, laurent=True
    ) and atlas.transitions[(0, 1)].twist_label == "g -> g/2"
    report = atlas.check(n_samples=min(b.roundtrip_samples, 500), seed=b.seed)
    whole = sections(ProjOpen(frozenset()))
    global_ok = (
        sorted(whole.finite_listing or []) == [-1, 0, 1]
        and not whole.has_convexoid_structure
        and all(whole.member(x) == (x in (-1, 0, 1)) for x in _rationals(12))
    )
    chart_flags = {
        "D+(g)": sections(ProjOpen(frozenset({INFINITY}))).has_convexoid_structure,
        "D+(2g)": sections(ProjOpen(frozenset({finite(2)}))).has_convexoid_structure,
    }
    ok = (
        len(atlas.charts) == 2
        and targets == ["Z", "DZhalf"]
        and twist_ok
        and report.passed
        and global_ok
        and all(chart_flags.values())
    )
    details = {
        "iso_targets": targets,
        "twist_ok": twist_ok,
        "transition_check": report.to_json(),
        "global_sections": whole.to_json(),
        "chart_flags": chart_flags,
    }
    return _status(ok), details


def _rationals(h: int) -> list[Fraction]:
    return sorted({Fraction(a, q) for a in range(-h, h + 1) for q in range(1, h + 1)})


class _SectionOracle:
    """Brute-force sections: a rational is a section over an open iff every
    valuation ring of a point of the open contains it.  Places are bits; the
    rejection mask of q is computed once from the valuation rings."""

    def __init__(self, places: list[Place]) -> None:
        self.places = places
        self.bit = {pl: 1 << i for i, pl in enumerate(places)}
        self.members = [
            arch_valuation().member if pl.is_infinite else zp_valuation(pl.p).member
            for pl in places
        ]
        self._masks: dict[Fraction, int] = {}

    def reject_mask(self, q: Fraction) -> int:
        m = self._masks.get(q)
        if m is None:
            m = sum(1 << i for i, member in enumerate(self.members) if not member(q))
            self._masks[q] = m
        return m

    def excluded_mask(self, excluded) -> int:
        return sum(self.bit[pl] for pl in excluded)

    def __call__(self, q: Fraction, excluded_mask: int) -> bool:
        return self.reject_mask(q) & ~excluded_mask == 0


def criterion_zr(b: AcceptanceBudget, cat) -> tuple[str, dict]:
    rng = random.Random(b.seed)
    rats = _rationals(100)
    excludable = [finite(p) for p in primes_up_to(50)] + [INFINITY]
    oracle = _SectionOracle([finite(p) for p in primes_up_to(100)] + [INFINITY])
    mismatches = []
    checked = 0

    def compare(q: Fraction, ex: frozenset, U: OpenSet, mask: int) -> None:
        nonlocal checked
        checked += 1
        if section_member(q, U) != oracle(q, mask):
            mismatches.append([str(q), sorted(str(p) for p in ex)])

    # (a) every rational against every subset of its own excludable places,
    #     padded with irrelevant exclusions
    for q in rats:
        relevant = [pl for pl in excludable if pl.is_infinite or q.denominator % pl.p == 0]
        others = [pl for pl in excludable if pl not in relevant]
        pads = [frozenset(), frozenset(others), frozenset(rng.sample(others, len(others) // 2))]
        for k in range(len(relevant) + 1):
            for sub in itertools.combinations(relevant, k):
                for pad in pads:
                    ex = frozenset(sub) | pad
                    compare(q, ex, OpenSet(ex), oracle.excluded_mask(ex))
    # (b) every one of the 2^16 opens against a probe set of rationals
    probes = [Fraction(x) for x in ("0", "1", "-1", "2", "1/2", "-3/2", "1/3", "2/15", "-7/30",
                                    "1/47", "46/47", "1/97", "13/66", "-1/210", "100/99")]
    for k in range(len(excludable) + 1):
        for sub in itertools.combinations(excludable, k):
            ex = frozenset(sub)
            U, mask = OpenSet(ex), oracle.excluded_mask(ex)
            for q in probes:
                compare(q, ex, U, mask)
    st = stalk(INFINITY)
    stalk_ok = all(st.member(q) == (abs(q) <= 1) for q in rats)

    rings = {finite(p): zp_valuation(p) for p in primes_up_to(50)}
    rings[INFINITY] = arch_valuation()
    images = {pl: dominating_point(R, 50).place for pl, R in rings.items()}
    triv = dominating_point(trivial_valuation(), 50)
    bijective = all(images[pl] == pl for pl in rings) and len(set(images.values())) == len(rings)
    bijective = bijective and triv.place == GENERIC and triv.flagged

    x2 = OpenSet(frozenset(), x2=True)
    no_inf = OpenSet(frozenset({INFINITY}))
    whole = OpenSet(frozenset())
    support_cases = [
        (support(x2, [Fraction(1, 2)]), OpenSet(frozenset({INFINITY}), x2=True)),
        (support(no_inf, [3]), OpenSet(frozenset({INFINITY, finite(3)}))),
        (support(whole, [1]), whole),
    ]
    support_ok = all(got == want for got, want in support_cases)
    ok = not mismatches and stalk_ok and bijective and support_ok
    details = {
        "section_checks": checked,
        "mismatches": mismatches[:10],
        "stalk_inf_ok": stalk_ok,
        "domination_bijective": bijective,
        "support_examples_ok": support_ok,
    }
    return _status(ok), details


def criterion_embedding(b: AcceptanceBudget, cat) -> tuple[str, dict]:
    bad = []
    for d in range(1, 7):
        top = 2**d
        for pl in default_places(7):
            if pl.is_generic:
                want: set[int] = set()
            elif pl.is_infinite:
                want = set(range(1, top))
            else:
                want = {l for l in range(1, top + 1) if l % pl.p == 0}
            got = fd_image(pl, d)
            if set(got.coords) != want or fd_image_via_chart(pl, d) != got:
                bad.append([str(pl), d])
            if pl.is_finite and pl.p > top and got.coords:
                bad.append([str(pl), d, "no collapse"])
    cfg = simplex_config(2)
    subsets = {frozenset(s) for k in range(3) for s in itertools.combinations(range(3), k)}
    simplex_ok = (
        len(cfg.points) == 7
        and {p.coords for p in cfg.points} == subsets
        and all(a.coords < b2.coords and len(b2.coords) == len(a.coords) + 1 for a, b2 in cfg.covers)
        and len(cfg.covers) == 9
    )
    rep = product_embedding(default_places(7), 7)
    details = {
        "image_mismatches": bad[:10],
        "simplex_ok": simplex_ok,
        "product": {
            "places": len(rep.images),
            "injective": rep.injective,
            "order_preserved": rep.order_preserved,
            "order_reflected": rep.order_reflected,
        },
    }
    return _status(not bad and simplex_ok and rep.passed), details


def criterion_coherence(b: AcceptanceBudget, cat) -> tuple[str, dict]:
    reached = [d for d in range(1, 7) if b.reaches(d)]
    budget = b.r0_budget()
    bad = [d for d in reached if set(linear_system(d).elements) != set(graded_part(d, budget))]
    f = GammaPoly.monomial(3, 2)
    chart_value = dehomogenize(f, GAMMA * 2, 2)
    poly, der = preimage_witness(Fraction(3, 4))
    witness_value = poly_eval(poly, Fraction(1, 2))
    values_ok = chart_value == witness_value == Fraction(3, 4) and der.replay() == poly
    missing = [d for d in range(1, 7) if d not in reached]
    details = {
        "checked_degrees": reached,
        "mismatched": bad,
        "beyond_budget": missing,
        "chart_value": str(chart_value),
        "witness_value": str(witness_value),
    }
    return _status(not bad and values_ok, bool(missing)), details


CRITERIA: list[tuple[int, str, Callable]] = [
    (1, "r0-graded-parts", criterion_graded_parts),
    (2, "degree-one-part", criterion_degree_one),
    (3, "certificates-and-witnesses", criterion_certificates),
    (4, "axiom-suite", criterion_axioms),
    (5, "ostrowski-classifier", criterion_ostrowski),
    (6, "digit-expansion", criterion_digits),
    (7, "dyadic-disk-spectrum", criterion_dzhalf_spec),
    (8, "proj-r0", criterion_proj),
    (9, "zr-space", criterion_zr),
    (10, "f1-embedding", criterion_embedding),
    (11, "cross-module-coherence", criterion_coherence),
]


def run_criterion(
    number: int,
    budget: AcceptanceBudget | None = None,
    catalogue: dict[str, Callable[[], Any]] | None = None,
) -> CriterionResult:
    budget = budget or AcceptanceBudget()
    cat = default_catalogue()
    if catalogue:
        cat.update(catalogue)
    for num, name, fn in CRITERIA:
        if num == number:
            start = time.perf_counter()
            try:
                status, details = fn(budget, cat)
            except ConvexoidError as exc:
                status, details = FAIL, {"error": f"{type(exc).__name__}: {exc}"}
            return CriterionResult(num, name, status, details, time.perf_counter() - start)
    raise ConvexoidError(f"no criterion {number}")


def run_all(
    budget: AcceptanceBudget | None = None,
    catalogue: dict[str, Callable[[], Any]] | None = None,
    only: list[int] | None = None,
) -> list[CriterionResult]:
    nums = only or [n for n, _, _ in CRITERIA]
    return [run_criterion(n, budget, catalogue) for n in nums]
