"""Command-line interface.

Exit codes: 0 success, 1 domain error (reported as JSON), 2 usage error.
Output is compact JSON on stdout unless ``--out`` names a file.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import __version__
from .common import ConvexoidError
from .gamma import format_rat, parse_poly, parse_rat

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE = 0, 1, 2


# ----------------------------------------------------------------------
# argument types (failures here are usage errors)


def _arg(parser):
    def convert(text: str):
        try:
            return parser(text)
        except (ConvexoidError, ValueError, ZeroDivisionError) as exc:
            raise argparse.ArgumentTypeError(str(exc)) from exc

    convert.__name__ = getattr(parser, "__name__", "value")
    return convert


def _rat_list(text: str) -> list[Fraction]:
    return [parse_rat(t) for t in text.split(",") if t.strip()]


def _place(text: str):
    from .places import parse_place

    return parse_place(text)


def _places(text: str):
    from .places import parse_places

    return parse_places(text)


def _int_list(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()]


RAT = _arg(parse_rat)
RATS = _arg(_rat_list)
POLY = _arg(parse_poly)
PLACE = _arg(_place)
PLACES = _arg(_places)
INTS = _arg(_int_list)


# ----------------------------------------------------------------------
# structure names


def structure_by_name(name: str):
    """DQ, DZhalf, Z, Q, Zhalf, Zp:P, ZWithU:U, R0, TrivialMonoid, chart:g, chart:2g."""
    from .gamma import GAMMA
    from .proj import make_chart
    from .r0 import r0_structure, z_gamma_laurent
    from .structures import dq, dzhalf, q_ring, trivial_monoid, z_half_ring, z_local, z_with_u

    key, _, param = name.partition(":")
    k = key.lower()
    simple = {
        "dq": dq,
        "dzhalf": dzhalf,
        "z": lambda: z_with_u(1),
        "q": q_ring,
        "zhalf": z_half_ring,
        "r0": r0_structure,
        "zgammalaurent": z_gamma_laurent,
        "trivialmonoid": lambda: trivial_monoid(("x", "y")),
    }
    if k in simple and not param:
        return simple[k]()
    if k == "zp" and param:
        return z_local(int(param))
    if k == "zwithu" and param:
        u = parse_rat(param)
        return z_with_u(int(u) if u.denominator == 1 else u)
    if k == "chart" and param:
        return make_chart(parse_poly(param) if param != "g" else GAMMA).ring
    raise ConvexoidError(f"unknown structure {name!r}")


# ----------------------------------------------------------------------
# commands


def cmd_axioms(a) -> Any:
    from .structures import check_axioms

    return check_axioms(structure_by_name(a.structure), a.samples, a.seed).to_json()


def _r0_budget(a):
    from .r0 import SaturationBudget

    return SaturationBudget(a.max_degree, a.max_height)


def cmd_r0_enum(a) -> Any:
    from .r0 import enumerate_r0, enumeration_to_json

    return enumeration_to_json(enumerate_r0(_r0_budget(a), a.method))


def cmd_r0_member(a) -> Any:
    from .r0 import r0_member

    res = r0_member(a.poly, _r0_budget(a))
    out: dict[str, Any] = {"poly": str(a.poly), "member": bool(res)}
    if res:
        out["derivation"] = res.witness.sexpr()
    else:
        out["budget"] = res.budget.to_json()
    return out


def cmd_r0_witness(a) -> Any:
    from .gamma import poly_eval

    from .r0 import preimage_witness

    poly, der = preimage_witness(a.q)
    return {
        "target": format_rat(a.q),
        "poly": str(poly),
        "derivation": der.sexpr(),
        "eval_at_half": format_rat(poly_eval(poly, Fraction(1, 2))),
    }


def cmd_classify(a) -> Any:
    from .ostrowski import classify, oracle_for

    return classify(oracle_for(a.oracle), a.bound).to_json()


def cmd_spec(a) -> Any:
    from .ideals import Ideal, classify_prime, place_json, spec_points

    if a.ideal is None:
        return spec_points(a.carrier, a.bound).to_json()
    S = structure_by_name(a.carrier)
    return place_json(classify_prime(Ideal(S, tuple(a.ideal)), a.budget))


def cmd_proj_atlas(a) -> Any:
    from .proj import proj_atlas

    atlas = proj_atlas()
    out = atlas.to_json()
    out["check"] = atlas.check(a.samples, a.seed).to_json()
    return out


def cmd_proj_sections(a) -> Any:
    from .proj import ProjOpen, sections

    return sections(ProjOpen(frozenset(a.exclude))).to_json()


def cmd_proj_points(a) -> Any:
    from .proj import proj_points

    return proj_points(a.bound).to_json()


def _zr_open(a):
    from .zr import OpenSet

    return OpenSet(frozenset(a.exclude), x2=a.x2)


def cmd_zr_sections(a) -> Any:
    from .zr import section_member

    U = _zr_open(a)
    return {"open": U.to_json(), "q": format_rat(a.q), "section": section_member(a.q, U)}


def cmd_zr_stalk(a) -> Any:
    from .zr import stalk

    st = stalk(a.place)
    out = st.to_json()
    if a.q is not None:
        out["q"] = format_rat(a.q)
        out["member"] = st.member(a.q)
        out["in_maximal"] = st.member(a.q) and st.in_maximal(a.q)
    return out


def cmd_zr_support(a) -> Any:
    from .zr import support

    return support(_zr_open(a), a.gens).to_json()


def cmd_zr_dominate(a) -> Any:
    from .ostrowski import arch_valuation, trivial_valuation, zp_valuation
    from .zr import dominating_point

    r = a.ring.lower()
    if r == "arch":
        R = arch_valuation()
    elif r == "trivial":
        R = trivial_valuation()
    elif r.startswith("zp:"):
        R = zp_valuation(int(r[3:]))
    else:
        raise ConvexoidError(f"unknown valuation ring {a.ring!r}")
    return dominating_point(R, a.bound, a.x2).to_json()


def cmd_embed_image(a) -> Any:
    from .embedding import fd_image

    return {"prime": fd_image(a.place, a.d).to_json()}


def cmd_embed_simplex(a) -> Any:
    from .embedding import simplex_config

    cfg = simplex_config(a.n)
    if a.dot is not None:
        return _Text(cfg.to_dot(), None if a.dot == "-" else a.dot)
    return cfg.to_json()


def cmd_embed_product(a) -> Any:
    from .embedding import default_places, product_embedding

    places = a.places if a.places is not None else default_places(a.D)
    return product_embedding(places, a.D).to_json()


def cmd_selftest(a) -> Any:
    from .acceptance import FAIL, AcceptanceBudget, run_all

    budget = AcceptanceBudget(
        max_degree=a.max_degree,
        max_height=a.max_height,
        axiom_samples=a.samples,
        seed=a.seed,
    )
    results = run_all(budget, only=a.only)
    for r in results:
        print(r.line(), file=sys.stderr)
    out = {"criteria": [r.to_json() for r in results]}
    out["passed"] = all(r.status != FAIL for r in results)
    return _Status(out, EXIT_OK if out["passed"] else EXIT_DOMAIN)


class _Text:
    """Raw text output, optionally to a file."""

    def __init__(self, text: str, path: str | None) -> None:
        self.text, self.path = text, path


class _Status:
    def __init__(self, payload: Any, code: int) -> None:
        self.payload, self.code = payload, code


# ----------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="write output to this file instead of stdout")

    budget = argparse.ArgumentParser(add_help=False)
    budget.add_argument("--max-degree", type=int, default=4)
    budget.add_argument("--max-height", type=int, default=16)

    p = argparse.ArgumentParser(prog="convexoid", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    ax = sub.add_parser("axioms", parents=[common], help="sampled axiom check")
    ax.add_argument("--structure", default="DQ")
    ax.add_argument("--samples", type=int, default=1000)
    ax.set_defaults(fn=cmd_axioms)

    r0 = sub.add_parser("r0", help="the initial convexoid ring")
    r0s = r0.add_subparsers(dest="sub", required=True)
    e = r0s.add_parser("enum", parents=[common, budget])
    e.add_argument("--method", choices=["auto", "ball", "saturate"], default="auto")
    e.set_defaults(fn=cmd_r0_enum)
    m = r0s.add_parser("member", parents=[common, budget])
    m.add_argument("--poly", type=POLY, required=True)
    m.set_defaults(fn=cmd_r0_member)
    w = r0s.add_parser("witness", parents=[common])
    w.add_argument("--q", type=RAT, required=True)
    w.set_defaults(fn=cmd_r0_witness)

    c = sub.add_parser("classify", parents=[common], help="classify a valuation oracle")
    c.add_argument("--oracle", required=True, help="zp:P, arch or trivial")
    c.add_argument("--bound", type=int, default=200)
    c.set_defaults(fn=cmd_classify)

    s = sub.add_parser("spec", parents=[common], help="spectra and prime classification")
    s.add_argument("--carrier", default="DZhalf")
    s.add_argument("--bound", type=int, default=10)
    s.add_argument("--ideal", type=RATS, help="generators; classify the ideal they generate")
    s.add_argument("--budget", type=int, default=6)
    s.set_defaults(fn=cmd_spec)

    pr = sub.add_parser("proj", help="Proj R0")
    prs = pr.add_subparsers(dest="sub", required=True)
    pa = prs.add_parser("atlas", parents=[common])
    pa.add_argument("--samples", type=int, default=200)
    pa.set_defaults(fn=cmd_proj_atlas)
    ps = prs.add_parser("sections", parents=[common])
    ps.add_argument("--exclude", type=PLACES, default=[])
    ps.set_defaults(fn=cmd_proj_sections)
    pp = prs.add_parser("points", parents=[common])
    pp.add_argument("--bound", type=int, default=7)
    pp.set_defaults(fn=cmd_proj_points)

    zr = sub.add_parser("zr", help="the compactified spectrum of Z")
    zrs = zr.add_subparsers(dest="sub", required=True)
    space = argparse.ArgumentParser(add_help=False)
    space.add_argument("--exclude", type=PLACES, default=[])
    space.add_argument("--x2", action="store_true", help="work on the subspace without 2")
    zsec = zrs.add_parser("sections", parents=[common, space])
    zsec.add_argument("--q", type=RAT, required=True)
    zsec.set_defaults(fn=cmd_zr_sections)
    zst = zrs.add_parser("stalk", parents=[common])
    zst.add_argument("place", type=PLACE)
    zst.add_argument("--q", type=RAT)
    zst.set_defaults(fn=cmd_zr_stalk)
    zsu = zrs.add_parser("support", parents=[common, space])
    zsu.add_argument("--gens", type=RATS, required=True)
    zsu.set_defaults(fn=cmd_zr_support)
    zd = zrs.add_parser("dominate", parents=[common])
    zd.add_argument("--ring", required=True, help="zp:P, arch or trivial")
    zd.add_argument("--bound", type=int, default=50)
    zd.add_argument("--x2", action="store_true")
    zd.set_defaults(fn=cmd_zr_dominate)

    em = sub.add_parser("embed", help="embeddings into projective spaces over F1")
    ems = em.add_subparsers(dest="sub", required=True)
    ei = ems.add_parser("image", parents=[common])
    ei.add_argument("--place", type=PLACE, required=True)
    ei.add_argument("--d", type=int, required=True)
    ei.set_defaults(fn=cmd_embed_image)
    esx = ems.add_parser("simplex", parents=[common])
    esx.add_argument("--n", type=int, required=True)
    fmt = esx.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output (default)")
    fmt.add_argument("--dot", nargs="?", const="-", metavar="PATH",
                     help="Graphviz output, to PATH if given")
    esx.set_defaults(fn=cmd_embed_simplex)
    epr = ems.add_parser("product", parents=[common])
    epr.add_argument("--D", type=int, required=True)
    epr.add_argument("--places", type=PLACES)
    epr.set_defaults(fn=cmd_embed_product)

    st = sub.add_parser("selftest", parents=[common], help="run the acceptance criteria")
    st.add_argument("--max-degree", type=int, default=6)
    st.add_argument("--max-height", type=int, default=128)
    st.add_argument("--samples", type=int, default=10_000)
    st.add_argument("--only", type=INTS)
    st.set_defaults(fn=cmd_selftest)
    return p


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dumps(obj: Any) -> str:
    return json.dumps(obj, separators=(",", ":")) + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    code = EXIT_OK
    try:
        result = args.fn(args)
    except ConvexoidError as exc:
        _emit(_dumps({"error": type(exc).__name__, "message": str(exc)}), args.out)
        return EXIT_DOMAIN
    if isinstance(result, _Status):
        result, code = result.payload, result.code
    if isinstance(result, _Text):
        _emit(result.text, result.path or args.out)
    else:
        _emit(_dumps(result), args.out)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
