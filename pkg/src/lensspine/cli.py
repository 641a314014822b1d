"""Command-line interface: ``lensspine <command> ...``.

Every command builds a report with its inputs, outputs, named checks and
timing.  Text is printed by default and ``--json`` prints the report instead.
The exit status is 0 when every check passes, 1 when some check fails and 2
for invalid input.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import dataclass, field
from math import gcd
from pathlib import Path

import numpy as np

from . import acceptance
from .arith import continued_fraction, euclid_subtractive, euclid_trace, mirror_denominator, mod_inverse
from .bounds import certify
from .construct import DEFAULT_GRID, ConstructionError, optimal_triangulation, perturbed_points
from .farey import apply_modular, crossing_count_geodesic, crossing_count_tree, endpoint_swap_map, ExtendedRational
from .flipdist import distance_bfs, distance_bounded, min_rotation_distance
from .render import polygon_points, triangulation_svg
from .spinehull import DegenerateHullError, OrbitConfig, basepoint_invariance, convex_hull_4d, duality_check, spine_summary
from .triangulation import MAX_P_ENV, fan, from_text, max_p_cap, rotate, to_text


class UsageError(ValueError):
    pass


@dataclass
class RunReport:
    command: str
    inputs: dict
    outputs: dict = field(default_factory=dict)
    checks: list[dict] = field(default_factory=list)
    timing: dict = field(default_factory=dict)
    text: list[str] = field(default_factory=list)

    def check(self, name: str, passed: bool) -> bool:
        self.checks.append({"name": name, "passed": bool(passed)})
        return passed

    def say(self, line: str) -> None:
        self.text.append(line)

    @property
    def ok(self) -> bool:
        return all(c["passed"] for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "checks": self.checks,
            "timing": self.timing,
            "ok": self.ok,
        }


def _coprime(p: int, q: int) -> None:
    if p < 3:
        raise UsageError(f"p must be at least 3, got {p}")
    if gcd(p, q) != 1:
        raise UsageError(f"p={p} and q={q} must be coprime")


def _read_triangulation(path: str):
    return from_text(Path(path).read_text())


def _read_points(path: str) -> np.ndarray:
    with open(path, newline="") as fh:
        rows = sorted((int(r["k"]), float(r["x"]), float(r["y"])) for r in csv.DictReader(fh))
    if [k for k, _, _ in rows] != list(range(len(rows))):
        raise UsageError("point CSV must list k = 0..n-1")
    return np.array([[x, y] for _, x, y in rows])


def cmd_euclid(args, report: RunReport) -> None:
    p, q = args.p, args.q
    if p < 0 or q < 0 or (p == 0 and q == 0):
        raise UsageError("need nonnegative p, q, not both zero")
    e = euclid_subtractive(p, q)
    g = gcd(p, q)
    report.outputs.update(E=e, gcd=g)
    report.say(f"E({p},{q}) = {e}   gcd = {g}")
    if g != 1 or not 0 < q < p:
        report.say("not a reduced pair with 0 < q < p; only E is reported")
        return
    tr = euclid_trace(p, q)
    r = mod_inverse(q, p) if p > 1 else 0
    report.outputs.update(
        continued_fraction=list(tr.coefficients),
        convergents=list(tr.numerators),
        remainders=list(tr.remainders),
        inverse=r,
    )
    report.say(f"continued fraction  {list(tr.coefficients)}")
    report.say(f"convergents p_i     {list(tr.numerators)}")
    report.say(f"remainders r_i      {list(tr.remainders)}")
    report.say(f"q^-1 mod p          {r}")
    report.check("E(p,q) = E(p,p-q)", e == euclid_subtractive(p, p - q))
    report.check("E(p,q) = E(p,q^-1 mod p)", p < 2 or e == euclid_subtractive(p, r))
    report.check("E equals the sum of partial quotients", e == continued_fraction(p, q).total())
    if p > 2:
        s = mirror_denominator(p, q)
        report.outputs["reversed_denominator"] = s
        report.check("reversed expansion has denominator +-q^-1", (s - (-1) ** (tr.k - 1) * r) % p == 0)


def cmd_farey(args, report: RunReport) -> None:
    p, q = args.p, args.q
    if gcd(p, q) != 1:
        raise UsageError(f"need coprime p and q, got ({p},{q})")
    e = euclid_subtractive(abs(p), abs(q))
    tree = crossing_count_tree(p, q)
    geo_i = crossing_count_geodesic(p, q, "i")
    report.outputs.update(E=e, tree=tree, geodesic_from_i=geo_i)
    report.say(f"E({p},{q}) = {e}")
    report.say(f"Farey edges crossed from i to {p}/{q}: tree {tree}, geodesic walk {geo_i}")
    report.check("tree count = E", tree == e)
    report.check("geodesic count from i = E", geo_i == e)
    if abs(p) > abs(q):
        geo_0 = crossing_count_geodesic(p, q, "0")
        report.outputs["geodesic_from_0"] = geo_0
        report.say(f"Farey edges crossed from 0 to {p}/{q}: {geo_0}")
        report.check("geodesic count from 0 = E", geo_0 == e)
    if p > 2 and 0 < q < p:
        m = endpoint_swap_map(p, q)
        r = mod_inverse(q, p)
        img_r = apply_modular(m, ExtendedRational(p, r))
        img_0 = apply_modular(m, ExtendedRational(0, 1))
        report.outputs["swap_map"] = [m.a, m.b, m.c, m.d]
        report.say(f"z -> ({m.a} zbar - {-m.b})/({m.c} zbar - {-m.d}) sends {p}/{r} -> {img_r}, 0 -> {img_0}")
        report.check("swap map sends p/r to 0", img_r == ExtendedRational(0, 1))
        report.check("swap map sends 0 to p/q", img_0 == ExtendedRational(p, q))


def cmd_distance(args, report: RunReport) -> None:
    p, q = args.p, args.q
    cap = max_p_cap(args.cap)
    if args.exhaustive:
        if p > cap:
            raise UsageError(f"p={p} exceeds the exhaustive cap {cap}; pass --cap or set {MAX_P_ENV}")
        expected = max(0, euclid_subtractive(p, q % p) - 3) if q % p else 0
        d, t = min_rotation_distance(p, q, cap=cap)
        report.outputs.update(min_distance=d, expected=expected, argmin=to_text(t))
        report.say(f"min over all triangulations of d(t, rot_{q} t) = {d}")
        report.say(f"max(0, E({p},{q}) - 3) = {expected}")
        report.check("minimum equals max(0, E-3)", d == expected)
        return
    if not args.triangulation:
        raise UsageError("pass --exhaustive or --triangulation FILE")
    t = _read_triangulation(args.triangulation)
    if t.p != p:
        raise UsageError(f"triangulation has p={t.p}, command says p={p}")
    target = rotate(t, q)
    if p <= cap:
        d, seq = distance_bfs(t, target, cap=cap)
    else:
        budget = args.budget if args.budget is not None else p
        found = distance_bounded(t, target, budget)
        if found is None:
            raise UsageError(f"no flip sequence within budget {budget}; raise --budget")
        d, seq = found
    report.outputs.update(distance=d, witness=[list(x) for x in seq.flips])
    report.say(f"d(t, rot_{q} t) = {d}")
    report.say("witness flips: " + " ".join(f"{a}-{b}" for a, b in seq.flips))
    report.check("witness ends at the rotated triangulation", seq.end == target)
    if gcd(p, q) == 1 and q % p:
        report.check("distance at least E-3", d >= euclid_subtractive(p, q % p) - 3)


def cmd_bound(args, report: RunReport) -> None:
    p, q = args.p, args.q
    _coprime(p, q)
    t = _read_triangulation(args.triangulation) if args.triangulation else fan(p)
    if t.p != p:
        raise UsageError(f"triangulation has p={t.p}, command says p={p}")
    cert = certify(t, q)
    report.outputs["certificate"] = cert.to_dict()
    report.say(f"length profile {list(cert.profile.counts)} (rotation by {cert.normalized_q}{', mirrored' if cert.mirrored else ''})")
    report.say(f"ceiling sum {cert.bound_value}, target E-3 = {cert.target}, destroyed {cert.destroyed}")
    report.say(f"extremal profile: {cert.extremal}")
    for name, passed in cert.checks.items():
        report.check(name, passed)


def cmd_construct(args, report: RunReport) -> None:
    p, q = args.p, args.q
    _coprime(p, q)
    grid = tuple(args.grid) if args.grid else DEFAULT_GRID
    try:
        c = optimal_triangulation(p, q, grid=grid)
    except ConstructionError as exc:
        report.outputs["attempts"] = exc.diagnostics
        report.say(str(exc))
        for a in exc.diagnostics:
            report.say(f"  {a}")
        report.check("certified construction", False)
        return
    target = max(0, euclid_subtractive(p, q % p) - 3)
    report.outputs.update(
        triangulation=to_text(c.triangulation),
        witness=[list(x) for x in c.witness.flips],
        eccentricity=c.eccentricity,
        parameter=c.parameter,
        certificate=c.certificate.to_dict() if c.certificate else None,
        attempts=c.attempts,
    )
    report.say(to_text(c.triangulation).rstrip())
    if c.eccentricity is not None:
        report.say(f"eccentricity {c.eccentricity}, radius parameter {c.parameter}")
    report.say(f"witness ({c.flips} flips): " + " ".join(f"{a}-{b}" for a, b in c.witness.flips))
    report.check("witness length equals max(0, E-3)", c.flips == target)
    report.check("witness ends at the rotated triangulation", c.witness.end == rotate(c.triangulation, q))
    if c.certificate is not None:
        report.check("certificate passes", c.certificate.ok)
    if args.out:
        Path(args.out).write_text(to_text(c.triangulation))
    if c.eccentricity is not None:
        pts = perturbed_points(p, c.parameter, c.eccentricity)
        coords = pts.points
        if args.points_csv:
            Path(args.points_csv).write_text(pts.to_csv())
    else:
        coords = polygon_points(p)
    if args.svg:
        Path(args.svg).write_text(triangulation_svg(coords, c.triangulation, voronoi=not args.no_voronoi, title=f"({p},{q})"))
        report.outputs["svg"] = args.svg


def cmd_spine(args, report: RunReport) -> None:
    p, q = args.p, args.q
    _coprime(p, q)
    kw = {k: v for k, v in (("theta", args.theta), ("phi1", args.phi1), ("phi2", args.phi2)) if v is not None}
    config = OrbitConfig(p, q, **kw)
    try:
        summary = spine_summary(config)
    except DegenerateHullError as exc:
        report.outputs["degenerate"] = str(exc)
        report.say(f"degenerate: {exc}")
        return
    report.outputs.update(summary.to_dict())
    report.say(f"hull facets {summary.facet_count}, all simplicial: {summary.all_facets_simplicial}")
    report.say(f"spine vertices {summary.spine_vertex_count}, E-3 = {summary.expected_vertex_count}")
    report.say(f"monodromy r = {summary.monodromy_r}")
    report.check("spine vertex count = E-3", summary.matches_expected)
    report.check("r q = 1 mod p", summary.monodromy_r * q % p == 1)
    report.check("Euler characteristic of the boundary is 0", summary.euler_characteristic == 0)
    hull = convex_hull_4d(config.certified())
    report.check("facet normals are Voronoi vertices", duality_check(config.certified(), hull))
    if args.trials:
        same = basepoint_invariance(p, q, args.trials, seed=args.seed)
        report.outputs["basepoint_invariant"] = same
        report.say(f"{args.trials} random base points give the same complex: {same}")
        report.check("base-point invariance", same)
    if args.facets_json:
        facets = [{"vertices": list(f.vertices), "normal": f.normal.tolist()} for f in hull.facets]
        Path(args.facets_json).write_text(json.dumps(facets, indent=1))


def cmd_render(args, report: RunReport) -> None:
    t = _read_triangulation(args.triangulation)
    pts = _read_points(args.points) if args.points else polygon_points(t.p)
    if len(pts) != t.p:
        raise UsageError(f"{len(pts)} points for a {t.p}-gon")
    Path(args.svg).write_text(triangulation_svg(pts, t, voronoi=not args.no_voronoi))
    report.outputs.update(svg=args.svg, vertices=t.p, diagonals=len(t))
    report.say(f"wrote {args.svg}")


def cmd_selftest(args, report: RunReport) -> None:
    for res in acceptance.run_all(args.max_p):
        report.say(res.line())
        report.check(f"{res.number}. {res.name}", res.passed)
        report.outputs[str(res.number)] = res.to_dict()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lensspine", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, pq=True):
        sp = sub.add_parser(name, help=help_text)
        if pq:
            sp.add_argument("p", type=int)
            sp.add_argument("q", type=int)
        sp.add_argument("--json", action="store_true", help="print the structured report")
        sp.set_defaults(func=func)
        return sp

    add("euclid", cmd_euclid, "subtractive Euclid count, continued fraction and identities")
    add("farey", cmd_farey, "Farey edges crossed on the way to p/q")

    sp = add("distance", cmd_distance, "rotation distance d(t, rot_q t)")
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true", help="minimum over all triangulations")
    mode.add_argument("--triangulation", metavar="FILE")
    sp.add_argument("--cap", type=int, help=f"largest p for exhaustive search (default ${MAX_P_ENV} or 13)")
    sp.add_argument("--budget", type=int, help="flip budget for bounded search above the cap")

    sp = add("bound", cmd_bound, "lower-bound certificate for a triangulation (default: fan)")
    sp.add_argument("--triangulation", metavar="FILE")

    sp = add("construct", cmd_construct, "triangulation with a rotation witness of length E-3")
    sp.add_argument("--svg", metavar="PATH")
    sp.add_argument("--out", metavar="FILE", help="write the triangulation text")
    sp.add_argument("--points-csv", metavar="FILE")
    sp.add_argument("--grid", type=float, nargs="+", help="eccentricities to try, in order")
    sp.add_argument("--no-voronoi", action="store_true")

    sp = add("spine", cmd_spine, "convex hull of a cyclic orbit on the 3-sphere")
    sp.add_argument("--theta", type=float)
    sp.add_argument("--phi1", type=float)
    sp.add_argument("--phi2", type=float)
    sp.add_argument("--trials", type=int, default=0, help="also compare this many random base points")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--facets-json", metavar="FILE")

    sp = add("render", cmd_render, "SVG of a triangulation file", pq=False)
    sp.add_argument("--triangulation", metavar="FILE", required=True)
    sp.add_argument("--points", metavar="CSV", help="k,x,y coordinates (default: regular polygon)")
    sp.add_argument("--svg", metavar="PATH", required=True)
    sp.add_argument("--no-voronoi", action="store_true")

    sp = add("selftest", cmd_selftest, "run the acceptance suite", pq=False)
    sp.add_argument("--max-p", type=int, default=acceptance.FULL_MAX_P)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    inputs = {k: v for k, v in vars(args).items() if k not in ("func", "json", "command")}
    report = RunReport(args.command, inputs)
    start = time.perf_counter()
    try:
        args.func(args, report)
    except (UsageError, ValueError, OSError) as exc:
        report.timing["seconds"] = round(time.perf_counter() - start, 4)
        if args.json:
            print(json.dumps({**report.to_dict(), "error": str(exc), "ok": False}, indent=2, sort_keys=True))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 2
    report.timing["seconds"] = round(time.perf_counter() - start, 4)
    if args.json:
        print(json.dumps(report.to_dict(), indent=2, sort_keys=True, default=str))
    else:
        for line in report.text:
            print(line)
        for c in report.checks:
            print(f"  [{'ok' if c['passed'] else 'FAIL'}] {c['name']}")
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
