"""Command-line front end with deterministic text/JSON output.

Exit codes: 0 on success, 1 on a precondition failure (single-line error on
stderr), 2 on a usage error.  All output is byte-identical across runs for
identical inputs; randomized cross-checks derive everything from --seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from itertools import permutations as _perms

from . import charts, degree as degree_mod, nokounkov, schubert, w0chart
from .charts import FamilyParameters, chart_variable, chart_variable_order
from .exactalg import MonomialOrder, MultiPoly
from .hessenberg import HessenbergFunction, Permutation

SCHEMA = "hessex/1"
DEFAULT_SEED = 1729


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"cannot parse rational number from {text!r}")


def _parse_fraction_list(text: str) -> tuple[Fraction, ...]:
    return tuple(_parse_fraction(v) for v in text.split(","))


def _parse_int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise ValueError(f"cannot parse integer list from {text!r}")


def _chart_order(n: int, family: bool) -> MonomialOrder:
    return MonomialOrder.lex(chart_variable_order(n, family=family))


def _poly_json(p: MultiPoly, order: MonomialOrder) -> list[dict]:
    return p.to_json_terms(order)


def _generators_payload(ci: charts.ChartIdeal, order: MonomialOrder) -> list[dict]:
    return [
        {"i": i, "j": j, "poly": _poly_json(p, order), "text": p.to_text(order)}
        for (i, j, p) in ci.generators
    ]


def _emit(payload: dict, lines: list[str], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload))
    else:
        for line in lines:
            print(line)


# ---------------------------------------------------------------- subcommands


def _cmd_ideal(args, family: bool) -> int:
    h = HessenbergFunction.parse(args.h)
    w = Permutation.parse(args.w)
    if args.n is not None and args.n != h.n:
        raise ValueError(f"--n {args.n} does not match the length of --h")
    family = family or args.family
    params = None
    t_value = None
    if family:
        if args.symbolic_gamma:
            params = FamilyParameters(None)
        elif args.gamma:
            params = FamilyParameters(_parse_fraction_list(args.gamma))
        else:
            params = FamilyParameters.default(h.n)
        ci = charts.family_generators(w, h, params)
        if args.t_value is not None:
            t_value = _parse_fraction(args.t_value)
            ci = charts.specialize_fiber(ci, t_value)
    else:
        for flag, name in ((args.gamma, "--gamma"), (args.t_value, "--t-value")):
            if flag:
                raise ValueError(f"{name} requires --family")
        ci = charts.ideal_generators(w, h)
    order = _chart_order(h.n, family)
    payload = {
        "schema": SCHEMA,
        "command": "ideal",
        "n": h.n,
        "w": list(w.oneline),
        "h": list(h.values),
        "family": ci.family,
        "generators": _generators_payload(ci, order),
    }
    if params is not None:
        payload["gamma"] = (
            None if params.gamma is None else [str(g) for g in params.gamma]
        )
    if t_value is not None:
        payload["t_value"] = str(t_value)
    lines = [f"chart w={w.render()} h={h.render()} n={h.n} family={ci.family}"]
    if params is not None:
        gamma_text = (
            "symbolic" if params.gamma is None
            else ",".join(str(g) for g in params.gamma)
        )
        lines.append(f"gamma = {gamma_text}")
    if t_value is not None:
        lines.append(f"t = {t_value}")
    lines.append(f"generators ({len(ci.generators)}):")
    for (i, j, p) in ci.generators:
        lines.append(f"f[{i},{j}] = {p.to_text(order)}")
    _emit(payload, lines, args.format)
    return 0


def _positions(ps) -> list[list[int]]:
    return [list(p) for p in sorted(ps)]


def _cmd_w0(args) -> int:
    h = HessenbergFunction.parse(args.h)
    n = h.n
    order = _chart_order(n, family=args.fiber is not None)
    payload: dict = {
        "schema": SCHEMA,
        "command": "w0",
        "n": n,
        "h": list(h.values),
        "dimension": h.dimension(),
    }
    lines = [f"w0 chart h={h.render()} n={n} dim={h.dimension()}"]
    if args.fiber is not None:
        z = _parse_fraction(args.fiber)
        params = (
            FamilyParameters(_parse_fraction_list(args.gamma))
            if args.gamma
            else FamilyParameters.default(n)
        )
        elim = w0chart.eliminate_family_fiber(h, z, params)
        fiber_ideal = charts.specialize_fiber(
            charts.family_generators(Permutation.longest(n), h, params), z
        )
        payload["fiber"] = {
            "z": str(z),
            "gamma": [str(g) for g in params.gamma],
        }
        payload["generators"] = _generators_payload(fiber_ideal, order)
        lines.append(
            f"fiber z={z} gamma={','.join(str(g) for g in params.gamma)}"
        )
        lines.append(f"generators ({len(fiber_ideal.generators)}):")
        for (i, j, p) in fiber_ideal.generators:
            lines.append(f"F[{i},{j}] = {p.to_text(order)}")
    else:
        elim = w0chart.eliminate(h)
        ideal = w0chart.generators_closed_form(h)
        payload["generators"] = _generators_payload(ideal, order)
        lines.append(f"generators ({len(ideal.generators)}):")
        for (i, j, p) in ideal.generators:
            lines.append(f"f[{i},{j}] = {p.to_text(order)}")
    payload["non_free"] = _positions(elim.non_free)
    payload["free"] = _positions(elim.free)
    payload["substitution"] = [
        {
            "target": list(pos),
            "poly": _poly_json(img, order),
            "text": img.to_text(order),
        }
        for pos, img in elim.substitution
    ]
    payload["residuals_zero"] = elim.residuals_ok
    lines.append(
        "non-free: " + " ".join(f"({i},{j})" for i, j in sorted(elim.non_free))
    )
    lines.append(
        "free: " + " ".join(f"({i},{j})" for i, j in sorted(elim.free))
    )
    lines.append("substitution:")
    for (i, j), img in elim.substitution:
        lines.append(f"{chart_variable(i, j)} -> {img.to_text(order)}")
    lines.append(f"residuals zero: {str(elim.residuals_ok).lower()}")
    if args.check_tech_lemma:
        if args.fiber is not None:
            raise ValueError("--check-tech-lemma applies to the t=0 chart only")
        report = w0chart.check_tech_lemma(h)
        payload["tech_lemma"] = {
            "ok": report.ok,
            "entries": [
                {
                    "position": list(e.position),
                    "eliminated": list(e.eliminated),
                    "ok": e.ok,
                    "offending": list(e.offending_monomials),
                }
                for e in report.entries
            ],
        }
        lines.append(f"tech lemma: {'pass' if report.ok else 'FAIL'}")
    _emit(payload, lines, args.format)
    return 0


def _cmd_flags(args) -> int:
    h = HessenbergFunction.parse(args.h)
    chain = schubert.flag_chain(h)
    steps_payload = []
    lines = [f"flag chain h={h.render()} dim={h.dimension()}"]
    for step in chain.steps:
        shape = schubert.rothe_cells(step.u).shape
        steps_payload.append(
            {
                "l": step.index,
                "u": list(step.u.oneline),
                "shape": list(shape or ()),
                "cell": list(step.cell),
                "proper": step.proper,
                "dim": step.dimension_after,
            }
        )
        marker = "proper" if step.proper else "skip"
        lines.append(
            f"l={step.index} u={step.u.render()} "
            f"shape=({','.join(str(v) for v in shape or ())}) "
            f"cell=({step.cell[0]},{step.cell[1]}) {marker} "
            f"dim={step.dimension_after}"
        )
    payload = {
        "schema": SCHEMA,
        "command": "flags",
        "h": list(h.values),
        "dimension": h.dimension(),
        "steps": steps_payload,
        "proper_count": len(chain.proper_steps()),
    }
    lines.append(f"proper steps: {len(chain.proper_steps())}")
    _emit(payload, lines, args.format)
    return 0


def _permutation_blocks(n: int, threads: int) -> list[list[tuple[int, ...]]]:
    """Fixed partition of all permutations into contiguous blocks."""
    allp = list(_perms(range(1, n + 1)))
    threads = max(1, threads)
    size = max(1, (len(allp) + threads - 1) // threads)
    return [allp[k : k + size] for k in range(0, len(allp), size)]


def _abbv_parallel(h, lam, t, threads: int) -> Fraction:
    """Deterministic blockwise fixed-point sum, reduced in block order."""
    blocks = _permutation_blocks(h.n, threads)
    if threads <= 1 or len(blocks) == 1:
        return degree_mod.abbv_volume(h, lam, t, blocks=blocks)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        partials = list(
            pool.map(
                lambda block: degree_mod.abbv_volume(h, lam, t, blocks=[block]),
                blocks,
            )
        )
    return sum(partials, Fraction(0))


def _cmd_degree(args) -> int:
    h = HessenbergFunction.parse(args.h)
    lam = degree_mod.WeightVector.parse(args.lam)
    if args.normalize:
        lam = lam.normalized()
    vol = degree_mod.volume(h, lam)
    deg = degree_mod.degree(h, lam)
    d = h.dimension()
    payload = {
        "schema": SCHEMA,
        "command": "degree",
        "h": list(h.values),
        "lambda": list(lam.entries),
        "d": d,
        "volume": str(vol),
        "degree": str(deg),
        "indecomposable": h.is_indecomposable(),
    }
    lines = [
        f"h={h.render()} lambda={lam.render()} d={d}",
        f"volume = {vol}",
        f"degree = {deg}",
    ]
    if not h.is_indecomposable():
        note = "volume interpretation requires an indecomposable function"
        payload["note"] = note
        lines.append(f"note: {note}")
    if args.poly:
        order = degree_mod.weight_order(h.n)
        p = degree_mod.volume_polynomial(h).poly
        payload["poly"] = _poly_json(p, order)
        lines.append(f"P = {p.to_text(order)}")
    if args.abbv:
        t = (
            _parse_fraction_list(args.t)
            if args.t
            else degree_mod.default_t(h.n)
        )
        value = _abbv_parallel(h, lam, t, args.threads)
        payload["abbv"] = {
            "t": [str(v) for v in t],
            "value": str(value),
            "matches_volume": value == vol,
        }
        lines.append(
            f"abbv t={','.join(str(v) for v in t)} value={value} "
            f"matches={str(value == vol).lower()}"
        )
        if args.check:
            checks = []
            for tv in degree_mod.random_t_vectors(h.n, 3, args.seed):
                val = _abbv_parallel(h, lam, tv, args.threads)
                checks.append(
                    {
                        "t": [str(v) for v in tv],
                        "value": str(val),
                        "matches_volume": val == vol,
                    }
                )
                lines.append(
                    f"abbv t={','.join(str(v) for v in tv)} value={val} "
                    f"matches={str(val == vol).lower()}"
                )
            payload["abbv_checks"] = checks
            if not all(c["matches_volume"] for c in checks):
                raise ValueError("fixed-point sum does not match the volume")
    _emit(payload, lines, args.format)
    return 0


def _svg_figure(result) -> str:
    """Static SVG of the lattice points and their convex hull."""
    scale = 24
    margin = 30
    xs = [int(p[0]) for p in result.points.points]
    ys = [int(p[1]) for p in result.points.points]
    width = (max(xs) + 1) * scale + 2 * margin
    height = (max(ys) + 1) * scale + 2 * margin

    def fx(v) -> float:
        return margin + float(v) * scale

    def fy(v) -> float:
        return height - margin - float(v) * scale

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    hull_pts = " ".join(
        f"{fx(x)},{fy(y)}" for (x, y) in result.polygon.vertices
    )
    parts.append(
        f'<polygon points="{hull_pts}" fill="#d0d0d0" stroke="black" '
        f'stroke-width="1.5"/>'
    )
    for (x, y) in sorted(result.points.points):
        parts.append(
            f'<circle cx="{fx(x)}" cy="{fy(y)}" r="3" fill="black"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _cmd_nob(args) -> int:
    result = nokounkov.nob_polygon(args.a1, args.a2)
    payload = {
        "schema": SCHEMA,
        "command": "nob",
        "a1": args.a1,
        "a2": args.a2,
        "vertices": [[int(x), int(y)] for (x, y) in result.polygon.vertices],
        "area": str(result.polygon.area),
        "certified": result.certified,
        "rank": result.points.rank,
    }
    lines = [
        f"a1={args.a1} a2={args.a2}",
        "vertices: "
        + " ".join(f"({int(x)},{int(y)})" for (x, y) in result.polygon.vertices),
        f"area = {result.polygon.area}",
        f"rank = {result.points.rank}",
        f"certified = {str(result.certified).lower()}",
    ]
    if args.points:
        pts = sorted(result.points.points)
        payload["points"] = [[x, y] for (x, y) in pts]
        lines.append("points: " + " ".join(f"({x},{y})" for x, y in pts))
    if args.emit_svg:
        with open(args.emit_svg, "w") as fh:
            fh.write(_svg_figure(result))
        lines.append(f"svg written to {args.emit_svg}")
    _emit(payload, lines, args.format)
    return 0


def _cmd_pascal(args) -> int:
    r = _parse_int_list(args.r)
    s = _parse_int_list(args.s)
    det = nokounkov.truncated_pascal_det(r, s)
    payload = {
        "schema": SCHEMA,
        "command": "pascal",
        "r": list(r),
        "s": list(s),
        "det": str(det),
        "invertible": det != 0,
    }
    lines = [
        f"r={','.join(str(v) for v in r)} s={','.join(str(v) for v in s)}",
        f"det = {det}",
        f"invertible = {str(det != 0).lower()}",
    ]
    _emit(payload, lines, args.format)
    return 0


# -------------------------------------------------------------------- parser


def _build_parser() -> argparse.ArgumentParser:
    default_threads = int(os.environ.get("HESSEX_THREADS", "1"))
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("text", "json"), default="text",
        help="output format (default: text)",
    )
    common.add_argument(
        "--seed", type=int, default=DEFAULT_SEED,
        help="seed for randomized cross-checks (fixed default)",
    )
    common.add_argument(
        "--threads", type=int, default=default_threads,
        help="worker threads for the fixed-point sum (deterministic output)",
    )
    parser = argparse.ArgumentParser(
        prog="hessex",
        description="Exact computations for type-A Hessenberg varieties",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_ideal = sub.add_parser(
        "ideal", parents=[common], help="chart-local ideal generators"
    )
    p_ideal.add_argument("--n", type=int, default=None)
    p_ideal.add_argument("--h", required=True, help="Hessenberg values, e.g. 3,3,4,4")
    p_ideal.add_argument("--w", required=True, help="permutation, e.g. 2,4,1,3")
    p_ideal.add_argument("--family", action="store_true")
    p_ideal.add_argument("--gamma", default=None)
    p_ideal.add_argument("--symbolic-gamma", action="store_true")
    p_ideal.add_argument("--t-value", default=None)
    p_ideal.set_defaults(func=lambda a: _cmd_ideal(a, family=False))

    p_family = sub.add_parser(
        "family", parents=[common],
        help="one-parameter family generators (ideal --family)",
    )
    p_family.add_argument("--n", type=int, default=None)
    p_family.add_argument("--h", required=True)
    p_family.add_argument("--w", required=True)
    p_family.add_argument("--family", action="store_true")
    p_family.add_argument("--gamma", default=None)
    p_family.add_argument("--symbolic-gamma", action="store_true")
    p_family.add_argument("--t-value", default=None)
    p_family.set_defaults(func=lambda a: _cmd_ideal(a, family=True))

    p_w0 = sub.add_parser(
        "w0", parents=[common],
        help="longest-permutation chart: generators, classification, elimination",
    )
    p_w0.add_argument("--h", required=True)
    p_w0.add_argument("--check-tech-lemma", action="store_true")
    p_w0.add_argument("--fiber", default=None, help="nonzero t value")
    p_w0.add_argument("--gamma", default=None)
    p_w0.set_defaults(func=_cmd_w0)

    p_flags = sub.add_parser(
        "flags", parents=[common], help="staircase flag chain"
    )
    p_flags.add_argument("--h", required=True)
    p_flags.set_defaults(func=_cmd_flags)

    p_degree = sub.add_parser(
        "degree", parents=[common], help="volume and projective degree"
    )
    p_degree.add_argument("--h", required=True)
    p_degree.add_argument("--lambda", dest="lam", required=True)
    p_degree.add_argument("--abbv", action="store_true")
    p_degree.add_argument("--t", default=None)
    p_degree.add_argument("--check", action="store_true")
    p_degree.add_argument("--poly", action="store_true")
    p_degree.add_argument("--normalize", action="store_true")
    p_degree.set_defaults(func=_cmd_degree)

    p_nob = sub.add_parser(
        "nob", parents=[common], help="Newton-Okounkov polygon of the surface"
    )
    p_nob.add_argument("--a1", type=int, required=True)
    p_nob.add_argument("--a2", type=int, required=True)
    p_nob.add_argument("--points", action="store_true")
    p_nob.add_argument("--emit-svg", default=None)
    p_nob.set_defaults(func=_cmd_nob)

    p_pascal = sub.add_parser(
        "pascal", parents=[common], help="truncated binomial determinant"
    )
    p_pascal.add_argument("--r", required=True)
    p_pascal.add_argument("--s", required=True)
    p_pascal.set_defaults(func=_cmd_pascal)

    return parser


def run(argv=None) -> int:
    """Parse and dispatch; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
