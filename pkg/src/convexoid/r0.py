"""The initial convexoid ring R0 inside Z[g].

R0 is the smallest subset of Z[g] containing 0 and 1 that is closed under
``f*g``, ``g*(f + h)`` and ``-f``.  Elements come with a :class:`Derivation`
replaying those rules.

Two enumeration routes produce the budget-restricted closure:

* ``"saturate"``: round-by-round saturation.  Round r combines the previous
  frontier with everything known, so every element is first met in the round
  equal to its minimal derivation depth and keeps a depth-minimal
  certificate.
* ``"ball"``: R0 coincides with the weighted l1 ball
  ``{f : sum |c_k| 2^-k <= 1}`` (the weight is submultiplicative and halved
  by the sum rule; conversely a greedy dyadic split writes each ball element
  as ``g*(A + B)`` with A, B in the ball of lower degree).  When
  ``max_height >= 2**max_degree`` every ball element of bounded degree is
  within the height budget, so the closure equals the lattice points of the
  ball.  Certificates come from the greedy split and need not be
  depth-minimal.

``"auto"`` picks the ball when it applies.  Both routes are cross-checked in
the tests.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .common import ConvexoidError, NoWithinBudget, PreconditionError, Yes
from .gamma import GAMMA, ONE, ZERO, GammaPoly, disk_member, format_rat, poly_eval
from .structures import Carrier, CarrierTag, ConvexoidStructure

ZERO_TAG, ONE_TAG, MUL, NEG, GSUM = "Zero", "One", "Mul", "Neg", "GammaSum"


@dataclass(frozen=True, eq=False, repr=False)
class Derivation:
    """A certificate tree for R0 membership.

    Nodes are shared (a DAG), so all traversals memoise on node identity.
    """

    tag: str
    left: Derivation | None = None
    right: Derivation | None = None

    def __post_init__(self) -> None:
        arity = {ZERO_TAG: 0, ONE_TAG: 0, NEG: 1, MUL: 2, GSUM: 2}
        if self.tag not in arity:
            raise ConvexoidError(f"unknown derivation tag {self.tag!r}")
        n = (self.left is not None) + (self.right is not None)
        if n != arity[self.tag] or (n == 1 and self.left is None):
            raise ConvexoidError(f"{self.tag} node has wrong number of children")

    def children(self) -> tuple[Derivation, ...]:
        return tuple(c for c in (self.left, self.right) if c is not None)

    def _postorder(self, skip: dict | None = None) -> Iterator[Derivation]:
        """Children before parents; nodes whose id is in ``skip`` are pruned."""
        seen: set[int] = set()
        skip = {} if skip is None else skip
        stack: list[tuple[Derivation, bool]] = [(self, False)]
        while stack:
            node, expanded = stack.pop()
            if id(node) in seen or id(node) in skip:
                continue
            if expanded:
                seen.add(id(node))
                yield node
                continue
            stack.append((node, True))
            for c in node.children():
                if id(c) not in seen and id(c) not in skip:
                    stack.append((c, False))

    def replay(self, memo: dict[int, GammaPoly] | None = None) -> GammaPoly:
        """Evaluate the tree in Z[g]."""
        memo = {} if memo is None else memo
        if id(self) in memo:
            return memo[id(self)]
        for node in self._postorder(memo):
            t = node.tag
            if t == ZERO_TAG:
                val = ZERO
            elif t == ONE_TAG:
                val = ONE
            elif t == NEG:
                val = -memo[id(node.left)]
            elif t == MUL:
                val = memo[id(node.left)] * memo[id(node.right)]
            else:
                val = (memo[id(node.left)] + memo[id(node.right)]).gamma_shift(1)
            memo[id(node)] = val
        return memo[id(self)]

    def depth(self) -> int:
        memo: dict[int, int] = {}
        for node in self._postorder():
            memo[id(node)] = 1 + max((memo[id(c)] for c in node.children()), default=-1)
        return memo[id(self)]

    def node_count(self) -> int:
        """Number of distinct nodes in the DAG."""
        return sum(1 for _ in self._postorder())

    def sexpr(self) -> str:
        memo: dict[int, str] = {}
        for node in self._postorder():
            if node.tag in (ZERO_TAG, ONE_TAG):
                s = node.tag
            else:
                s = "(" + " ".join([node.tag] + [memo[id(c)] for c in node.children()]) + ")"
            memo[id(node)] = s
        return memo[id(self)]

    def __str__(self) -> str:
        return self.sexpr()

    def __repr__(self) -> str:
        return f"Derivation({self.sexpr()})"


D_ZERO = Derivation(ZERO_TAG)
D_ONE = Derivation(ONE_TAG)
D_MINUS_ONE = Derivation(NEG, D_ONE)


def d_mul(a: Derivation, b: Derivation) -> Derivation:
    return Derivation(MUL, a, b)


def d_neg(a: Derivation) -> Derivation:
    return Derivation(NEG, a)


def d_gsum(a: Derivation, b: Derivation) -> Derivation:
    return Derivation(GSUM, a, b)


def parse_sexpr(text: str) -> Derivation:
    """Inverse of :meth:`Derivation.sexpr`."""
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def parse() -> Derivation:
        nonlocal pos
        if pos >= len(tokens):
            raise ConvexoidError("truncated derivation")
        tok = tokens[pos]
        pos += 1
        if tok == ZERO_TAG:
            return D_ZERO
        if tok == ONE_TAG:
            return D_ONE
        if tok != "(":
            raise ConvexoidError(f"unexpected token {tok!r}")
        tag = tokens[pos]
        pos += 1
        kids = []
        while tokens[pos] != ")":
            kids.append(parse())
        pos += 1
        return Derivation(tag, *kids)

    out = parse()
    if pos != len(tokens):
        raise ConvexoidError("trailing tokens in derivation")
    return out


# ----------------------------------------------------------------------
# budgets and the weighted norm


@dataclass(frozen=True)
class SaturationBudget:
    max_degree: int
    max_height: int

    def __post_init__(self) -> None:
        if self.max_degree < 1 or self.max_height < 1:
            raise ConvexoidError("budget bounds must be positive")

    def admits(self, f: GammaPoly) -> bool:
        return not f.laurent and f.degree <= self.max_degree and f.height() <= self.max_height

    @property
    def ball_regime(self) -> bool:
        return self.max_height >= 2**self.max_degree

    def to_json(self) -> dict:
        return {"max_degree": self.max_degree, "max_height": self.max_height}


def dyadic_norm(f: GammaPoly) -> Fraction:
    """sum |c_k| 2^-k (Laurent degrees and dyadic coefficients allowed)."""
    return sum((abs(Fraction(c)) / Fraction(2) ** k for k, c in f.terms), Fraction(0))


def in_ball(f: GammaPoly) -> bool:
    return not f.laurent and f.is_integral() and dyadic_norm(f) <= 1


# dense helpers: coefficient tuples of fixed length D+1


def _dense(f: GammaPoly, width: int) -> tuple[int, ...]:
    out = [0] * width
    for k, c in f.terms:
        out[k] = c
    return tuple(out)


def _poly(v: tuple[int, ...]) -> GammaPoly:
    return GammaPoly(tuple((k, c) for k, c in enumerate(v) if c))


def _fits(v: list[int] | tuple[int, ...], height: int) -> bool:
    return abs(sum(v)) <= height and all(abs(c) <= height for c in v)


def _greedy_split(h: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Split h (norm <= 2) into A + B with norm(A), norm(B) <= 1.

    Units sign(c)*g^k are handed to A lowest degree first until A's norm
    reaches 1; since the weights are decreasing powers of two A never
    overshoots.  B gets the rest.  Exact arithmetic in units of 2^-len(h).
    """
    width = len(h)
    room = 1 << width  # 1 in units of 2^-width
    a = [0] * width
    b = [0] * width
    for k, c in enumerate(h):
        w = 1 << (width - k)
        take = min(abs(c), room // w)
        room -= take * w
        sign = 1 if c > 0 else -1
        a[k] = sign * take
        b[k] = c - a[k]
    return tuple(a), tuple(b)


class _BallCertifier:
    """Greedy-split certificates for ball elements, memoised on dense tuples."""

    def __init__(self, width: int) -> None:
        self.width = width
        zero = (0,) * width
        one = (1,) + (0,) * (width - 1)
        minus = (-1,) + (0,) * (width - 1)
        self.memo: dict[tuple[int, ...], Derivation] = {zero: D_ZERO}
        if width:
            self.memo[one] = D_ONE
            self.memo[minus] = D_MINUS_ONE

    def __call__(self, v: tuple[int, ...]) -> Derivation:
        hit = self.memo.get(v)
        if hit is not None:
            return hit
        if v[0]:
            raise ConvexoidError("not a ball element")
        h = v[1:] + (0,)
        a, b = _greedy_split(h)
        out = d_gsum(self(a), self(b))
        self.memo[v] = out
        return out


def ball_certificate(f: GammaPoly) -> Derivation:
    if not in_ball(f):
        raise ConvexoidError(f"{f} is outside the weighted unit ball")
    return _BallCertifier(max(f.degree, 0) + 1)(_dense(f, max(f.degree, 0) + 1))


def _ball_points(D: int) -> list[tuple[int, ...]]:
    """All integer vectors with sum |c_k| 2^(D-k) <= 2^D, in lexicographic
    order by (|c|-ordered) degree; deterministic."""
    out: list[tuple[int, ...]] = []
    cur = [0] * (D + 1)

    def rec(k: int, room: int) -> None:
        if k > D:
            out.append(tuple(cur))
            return
        w = 1 << (D - k)
        top = room // w
        for c in range(-top, top + 1):
            cur[k] = c
            rec(k + 1, room - abs(c) * w)
        cur[k] = 0

    rec(0, 1 << D)
    return out


# ----------------------------------------------------------------------
# enumeration


@dataclass
class EnumerationStats:
    method: str
    rounds: int = 0
    frontier_sizes: list[int] = field(default_factory=list)
    rejected_by_budget: int = 0
    pairs_examined: int = 0

    def to_json(self) -> dict:
        return {
            "method": self.method,
            "rounds": self.rounds,
            "frontier_sizes": self.frontier_sizes,
            "rejected_by_budget": self.rejected_by_budget,
            "pairs_examined": self.pairs_examined,
        }


@dataclass
class R0Enumeration:
    budget: SaturationBudget
    elements: dict[GammaPoly, Derivation]
    stats: EnumerationStats

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, f: GammaPoly) -> bool:
        return f in self.elements

    def items(self):
        return self.elements.items()

    def homogeneous(self, d: int) -> list[GammaPoly]:
        out = [f for f in self.elements if f.is_zero() or (f.is_monomial() and f.degree == d)]
        return sorted(out, key=lambda f: (f.coeff(d) if f.terms else 0))

    def verify_certificates(self) -> list[GammaPoly]:
        """Elements whose derivation does not replay to them (should be empty)."""
        memo: dict[int, GammaPoly] = {}
        return [f for f, der in self.elements.items() if der.replay(memo) != f]


def _enumerate_ball(budget: SaturationBudget) -> R0Enumeration:
    D = budget.max_degree
    points = _ball_points(D)
    points.sort(key=lambda v: (_top_degree(v), v))
    cert = _BallCertifier(D + 1)
    elements: dict[GammaPoly, Derivation] = {}
    for v in points:
        elements[_poly(v)] = cert(v)
    stats = EnumerationStats("ball", frontier_sizes=[len(points)])
    return R0Enumeration(budget, elements, stats)


def _top_degree(v: tuple[int, ...]) -> int:
    for k in range(len(v) - 1, -1, -1):
        if v[k]:
            return k
    return -1


def _enumerate_saturate(budget: SaturationBudget) -> R0Enumeration:
    D, H = budget.max_degree, budget.max_height
    width = D + 1
    stats = EnumerationStats("saturate")
    zero = (0,) * width
    one = (1,) + (0,) * D
    known: dict[tuple[int, ...], Derivation] = {zero: D_ZERO, one: D_ONE}
    order: list[tuple[int, ...]] = [zero, one]
    frontier = [zero, one]
    stats.frontier_sizes.append(len(frontier))

    def offer(v: list[int] | tuple[int, ...], der_fn) -> None:
        t = tuple(v)
        if t in known:
            return
        if not _fits(t, H):
            stats.rejected_by_budget += 1
            return
        known[t] = der_fn()
        order.append(t)
        new.append(t)

    while frontier:
        new: list[tuple[int, ...]] = []
        stats.rounds += 1
        processed = list(order)
        pos = {v: i for i, v in enumerate(processed)}
        frontier_set = set(frontier)
        for x in frontier:
            dx = known[x]
            offer(tuple(-c for c in x), lambda dx=dx: d_neg(dx))
            # partners: everything known before this round; frontier pairs once
            for y in processed:
                if y in frontier_set and pos[y] < pos[x]:
                    continue
                stats.pairs_examined += 1
                dy = known[y]
                # g*(x + y): shift up one degree
                if x[D] + y[D] == 0:
                    s = [0] + [a + b for a, b in zip(x[:D], y[:D])]
                    offer(s, lambda dx=dx, dy=dy: d_gsum(dx, dy))
                else:
                    stats.rejected_by_budget += 1
                # x*y
                dxg, dyg = _top_degree(x), _top_degree(y)
                if dxg + dyg <= D:
                    p = [0] * width
                    if dxg >= 0 and dyg >= 0:
                        for i in range(dxg + 1):
                            if x[i]:
                                for j in range(dyg + 1):
                                    p[i + j] += x[i] * y[j]
                    offer(p, lambda dx=dx, dy=dy: d_mul(dx, dy))
                else:
                    stats.rejected_by_budget += 1
        frontier = new
        if new:
            stats.frontier_sizes.append(len(new))
    elements = {_poly(v): known[v] for v in sorted(order, key=lambda v: (_top_degree(v), v))}
    return R0Enumeration(budget, elements, stats)


@lru_cache(maxsize=8)
def enumerate_r0(budget: SaturationBudget, method: str = "auto") -> R0Enumeration:
    """Budget-restricted closure of {0, 1} under the R0 rules.

    The result is cached per (budget, method); treat it as read-only.
    """
    if method == "auto":
        method = "ball" if budget.ball_regime else "saturate"
    if method == "ball":
        if not budget.ball_regime:
            raise PreconditionError("the ball route needs max_height >= 2**max_degree")
        return _enumerate_ball(budget)
    if method == "saturate":
        return _enumerate_saturate(budget)
    raise ConvexoidError(f"unknown enumeration method {method!r}")


def r0_member(f: GammaPoly, budget: SaturationBudget) -> Yes | NoWithinBudget:
    """Bounded membership.  ``Yes`` carries a replayable derivation."""
    if f.laurent:
        raise PreconditionError("R0 membership is for plain polynomials")
    if not budget.admits(f) or not in_ball(f):
        return NoWithinBudget(budget)
    der = ball_certificate(f)
    # the greedy certificate is valid for the budget when all its nodes fit
    memo: dict[int, GammaPoly] = {}
    der.replay(memo)
    if all(budget.admits(v) for v in memo.values()):
        return Yes(der)
    hit = enumerate_r0(budget, "saturate").elements.get(f)
    return Yes(hit) if hit is not None else NoWithinBudget(budget)


def graded_part(d: int, budget: SaturationBudget) -> list[GammaPoly]:
    """Homogeneous elements of degree d in the enumerated set, 0 included."""
    if d < 0:
        raise PreconditionError("degree must be non-negative")
    if budget.max_degree < d:
        raise PreconditionError(f"budget max_degree {budget.max_degree} < {d}")
    return enumerate_r0(budget).homogeneous(d)


@lru_cache(maxsize=None)
def _halving(m: int, n: int) -> Derivation:
    if m == 0:
        return D_ZERO
    if n == 0:
        if m == 1:
            return D_ONE
        if m == -1:
            return D_MINUS_ONE
        raise ConvexoidError("coefficient exceeds 2^n")
    b = m // 2
    return d_gsum(_halving(m - b, n - 1), _halving(b, n - 1))


def preimage_witness(x: Fraction | int) -> tuple[GammaPoly, Derivation]:
    """m*g^n with x = m/2^n (n minimal) and a halving certificate."""
    x = Fraction(x)
    if not disk_member(x, "DZhalf"):
        raise PreconditionError(f"{format_rat(x)} is not in the dyadic unit disk")
    m, den = x.numerator, x.denominator
    n = den.bit_length() - 1
    poly = GammaPoly.monomial(m, n) if m else ZERO
    return poly, _halving(m, n)


def map_to_z(f: GammaPoly) -> int:
    v = poly_eval(f, 1)
    return v.numerator if v.denominator == 1 else v  # type: ignore[return-value]


def map_to_dzhalf(f: GammaPoly) -> Fraction:
    return poly_eval(f, Fraction(1, 2))


def enumeration_to_json(enum: R0Enumeration) -> list[dict]:
    return [
        {
            "poly": str(f),
            "derivation": der.sexpr(),
            "degree": None if f.is_zero() else f.degree,
            "eval_at_half": format_rat(map_to_dzhalf(f)),
        }
        for f, der in enum.items()
    ]


# ----------------------------------------------------------------------
# R0 and its localisations as convexoid structures


def _sample_ball(rng: random.Random, max_degree: int = 4) -> GammaPoly:
    D = rng.randint(0, max_degree)
    room = 1 << D
    coeffs: dict[int, int] = {}
    for k in rng.sample(range(D + 1), D + 1):
        w = 1 << (D - k)
        top = room // w
        if top:
            c = rng.randint(-top, top)
            if c:
                coeffs[k] = c
                room -= abs(c) * w
    return GammaPoly.from_dict(coeffs)


def _poly_divides(member):
    def divides(a: GammaPoly, b: GammaPoly) -> bool:
        if a.is_zero():
            return b.is_zero()
        q = b.divide_exact(a)
        if q is None:
            return False
        return member(q)

    return divides


def _gamma_op(args: tuple) -> GammaPoly:
    total = args[0]
    for a in args[1:]:
        total = total + a
    return total.gamma_shift(1)


def _poly_inverse(f: GammaPoly) -> GammaPoly:
    return f.inverse()


def r0_structure() -> ConvexoidStructure:
    """R0 with g*(a + b); membership is the weighted-ball test."""
    carrier = Carrier(
        name="R0",
        member=lambda f: isinstance(f, GammaPoly) and in_ball(f),
        mul=lambda a, b: a * b,
        neg=lambda a: -a,
        zero=ZERO,
        one=ONE,
        sample=_sample_ball,
        corners=(ZERO, ONE, -ONE, GAMMA, GAMMA * 2, GAMMA + GAMMA * GAMMA),
        divides=_poly_divides(lambda q: not q.laurent and in_ball(q)),
        inverse=_poly_inverse,
    )
    return ConvexoidStructure(CarrierTag("R0"), carrier, 1, _gamma_op)


def _laurent_int(f) -> bool:
    return isinstance(f, GammaPoly) and f.is_integral()


def z_gamma_laurent() -> ConvexoidStructure:
    """R0[1/g] = Z[g, 1/g] with g*(a + b)."""

    def sample(rng: random.Random) -> GammaPoly:
        coeffs = {k: rng.randint(-5, 5) for k in range(-2, 3) if rng.random() < 0.5}
        return GammaPoly.from_dict(coeffs, laurent=True)

    L = lambda f: GammaPoly(f.terms, True)  # noqa: E731
    carrier = Carrier(
        name="Z[g,1/g]",
        member=_laurent_int,
        mul=lambda a, b: L(a) * L(b),
        neg=lambda a: -L(a),
        zero=L(ZERO),
        one=L(ONE),
        sample=sample,
        corners=(L(ZERO), L(ONE), L(-ONE), L(GAMMA), GAMMA.as_laurent().inverse(), L(GAMMA + 3)),
        divides=_poly_divides(lambda q: q.is_integral()),
        inverse=_poly_inverse,
    )

    def op(args: tuple) -> GammaPoly:
        total = L(args[0])
        for a in args[1:]:
            total = total + L(a)
        return total.gamma_shift(1)

    return ConvexoidStructure(CarrierTag("ZGammaLaurent"), carrier, 1, op)


def _is_dyadic(c) -> bool:
    d = Fraction(c).denominator
    return d & (d - 1) == 0


def loc_2gamma_member(f) -> bool:
    """R0[1/(2g)]: dyadic Laurent polynomials of weighted norm <= 1."""
    return (
        isinstance(f, GammaPoly)
        and all(_is_dyadic(c) for _, c in f.terms)
        and dyadic_norm(f) <= 1
    )


def r0_loc_2gamma() -> ConvexoidStructure:
    L = lambda f: GammaPoly(f.terms, True)  # noqa: E731
    two_gamma_inv = (GAMMA * 2).inverse()

    def sample(rng: random.Random) -> GammaPoly:
        f = L(_sample_ball(rng, 3))
        return f * two_gamma_inv ** rng.randint(0, 3)

    carrier = Carrier(
        name="R0[1/2g]",
        member=loc_2gamma_member,
        mul=lambda a, b: L(a) * L(b),
        neg=lambda a: -L(a),
        zero=L(ZERO),
        one=L(ONE),
        sample=sample,
        corners=(L(ZERO), L(ONE), L(-ONE), L(GAMMA), two_gamma_inv, L(GAMMA * 2)),
        divides=_poly_divides(loc_2gamma_member),
        inverse=_poly_inverse,
    )

    def op(args: tuple) -> GammaPoly:
        total = L(args[0])
        for a in args[1:]:
            total = total + L(a)
        return total.gamma_shift(1)

    return ConvexoidStructure(CarrierTag("R0Loc2Gamma"), carrier, 1, op)
