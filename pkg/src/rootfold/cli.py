"""Command-line surface: enumeration, dominance order, chambers, cones and
convergence domains, the verification suite, and the rank-one laboratory.

Exit status: 0 on success, 1 when a requested check fails (invalid datum,
failed certificate, non-converged evaluation), 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .chambers import chambers_q, weyl_group_restricted
from .cones import (
    cone_csv,
    cone_lines,
    domain_csv,
    domain_lines,
    gamma_cone,
    gamma_dual,
    omega_hat,
    omega_q,
    upsilon,
    upsilon_hat,
)
from .datum import SymmetricRootDatum, validate
from .datumio import format_datum, load_datum
from .fixtures import build_fixture, fixture_names, load_fixture
from .linalg import Vec, format_fraction, format_vec, parse_fraction, vec
from .parabolics import (
    enumerate_parabolics,
    enumerate_q_extreme,
    hasse,
    is_q_extreme,
    maximal_elements,
    minimal_elements,
)
from .rankone import (
    asymptotic_csv,
    asymptotic_td2,
    c_partial,
    h_function_checks,
    make_block,
)
from .verify import run_suite, certificates_to_json, suite_ok


class CliError(Exception):
    """Controlled failure with a process exit status."""

    def __init__(self, message: str, code: int = 2):
        super().__init__(message)
        self.code = code


def _load(arg: str) -> SymmetricRootDatum:
    if arg in fixture_names():
        return load_fixture(arg)
    if os.path.exists(arg):
        try:
            return load_datum(arg)
        except ValueError as err:
            raise CliError(f"cannot parse {arg}: {err}") from err
    raise CliError(f"{arg!r} is neither a bundled fixture nor an existing file")


def _roots_str(positive) -> str:
    return "{" + ", ".join(format_vec(a) for a in sorted(positive)) + "}"


def _parabolic_index(parabolics, index: int):
    if not 0 <= index < len(parabolics):
        raise CliError(f"index {index} out of range; datum has {len(parabolics)} systems")
    return parabolics[index]


# -- exact subcommands -----------------------------------------------------------


def _cmd_validate(args) -> int:
    datum = _load(args.datum)
    report = validate(datum)
    if args.format == "json":
        payload = {"schema": "rootfold.validate/1", "ok": report.ok, "problems": list(report.problems)}
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("ok" if report.ok else "invalid")
        for problem in report.problems:
            print(f"  {problem}")
    return 0 if report.ok else 1


def _cmd_fixtures(args) -> int:
    if args.emit is not None:
        if args.emit not in fixture_names():
            raise CliError(f"unknown fixture {args.emit!r}; known: {', '.join(fixture_names())}")
        sys.stdout.write(format_datum(build_fixture(args.emit)))
        return 0
    for name in fixture_names():
        print(name)
    return 0


def _cmd_parabolics(args) -> int:
    datum = _load(args.datum)
    parabolics = enumerate_parabolics(datum)
    extreme = set(enumerate_q_extreme(datum, parabolics))
    maximal = set(maximal_elements(datum, parabolics))
    minimal = set(minimal_elements(datum, parabolics))

    def flags(p) -> list[str]:
        out = []
        if p in extreme:
            out.append("q-extreme")
        if p in maximal:
            out.append("maximal")
        if p in minimal:
            out.append("minimal")
        return out

    if args.format == "json":
        payload = {
            "schema": "rootfold.parabolics/1",
            "count": len(parabolics),
            "q_extreme": len(extreme),
            "systems": [
                {
                    "index": i,
                    "positive": [[format_fraction(c) for c in a] for a in sorted(p.positive)],
                    "flags": flags(p),
                }
                for i, p in enumerate(parabolics)
            ],
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
        return 0
    print(f"systems: {len(parabolics)}, q-extreme: {len(extreme)}, "
          f"maximal: {len(maximal)}, minimal: {len(minimal)}")
    for i, p in enumerate(parabolics):
        mark = ", ".join(flags(p))
        suffix = f"  [{mark}]" if mark else ""
        print(f"[{i:3d}] {_roots_str(p.positive)}{suffix}")
    return 0


def _cmd_order(args) -> int:
    datum = _load(args.datum)
    parabolics = enumerate_parabolics(datum)
    edges = hasse(datum, parabolics)
    if args.dot:
        print("digraph dominance {")
        print("  rankdir=BT;")
        for i, p in enumerate(parabolics):
            label = f"P{i}"
            if is_q_extreme(datum, p):
                label += "*"
            tip = _roots_str(p.positive).replace('"', "'")
            print(f'  n{i} [label="{label}" tooltip="{tip}"];')
        for i, j in edges:
            print(f"  n{j} -> n{i};")
        print("}")
        return 0
    print(f"systems: {len(parabolics)}, covering pairs: {len(edges)}")
    for i, p in enumerate(parabolics):
        print(f"[{i:3d}] {_roots_str(p.positive)}")
    for i, j in edges:
        print(f"  {i} covers {j}")
    return 0


def _cmd_chambers(args) -> int:
    datum = _load(args.datum)
    complex_ = chambers_q(datum)
    order = len(weyl_group_restricted(datum))
    if args.format == "json":
        payload = {
            "schema": "rootfold.chambers/1",
            "restricted_weyl_order": order,
            "rays": [[format_fraction(c) for c in r] for r in complex_.rays],
            "chambers": [
                {
                    "signs": list(ch.signs),
                    "witness": [format_fraction(c) for c in ch.witness],
                }
                for ch in complex_.chambers
            ],
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
        return 0
    print(f"restricted rays: {len(complex_.rays)}, chambers: {len(complex_.chambers)}, "
          f"restricted reflection group order: {order}")
    for i, r in enumerate(complex_.rays):
        print(f"ray [{i}] {format_vec(r)}")
    for i, ch in enumerate(complex_.chambers):
        signs = "".join("+" if s > 0 else "-" for s in ch.signs)
        print(f"chamber [{i}] signs={signs} witness=({format_vec(ch.witness)})")
    return 0


def _cone_json(cone) -> dict:
    return {
        "dim": cone.dim,
        "generators": [[format_fraction(c) for c in g] for g in cone.generators],
        "inequalities": [[format_fraction(c) for c in w] for w in cone.inequalities],
    }


def _cmd_cones(args) -> int:
    datum = _load(args.datum)
    parabolics = enumerate_parabolics(datum)
    q = _parabolic_index(parabolics, args.index)
    cone = gamma_cone(datum, q)
    dual = gamma_dual(datum, q)
    if args.format == "json":
        payload = {
            "schema": "rootfold.cone/1",
            "system": [[format_fraction(c) for c in a] for a in sorted(q.positive)],
            "wall_cone": _cone_json(cone),
            "dual_cone": _cone_json(dual),
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
        return 0
    if args.format == "csv":
        sys.stdout.write(cone_csv(cone))
        return 0
    print(f"system [{args.index}] {_roots_str(q.positive)}")
    print("wall cone:")
    for line in cone_lines(cone):
        print(f"  {line}")
    print("dual cone:")
    for line in cone_lines(dual):
        print(f"  {line}")
    return 0


def _parse_lambda(text: str, dim: int) -> Vec:
    try:
        coords = vec(parse_fraction(part) for part in text.split(","))
    except (ValueError, ZeroDivisionError) as err:
        raise CliError(f"cannot parse coordinates {text!r}: {err}") from err
    if len(coords) != dim:
        raise CliError(f"expected {dim} coordinates, got {len(coords)}")
    return coords


_DOMAIN_BUILDERS = {
    "omega": omega_q,
    "hull": omega_hat,
    "upsilon": upsilon,
    "upsilon-hat": upsilon_hat,
}


def _domain_json(domain) -> dict:
    return {
        "dim": domain.dim,
        "pieces": [
            {
                "ineqs": [
                    {"normal": [format_fraction(c) for c in w], "rhs": format_fraction(c0)}
                    for w, c0 in piece.ineqs
                ],
                "strict": [
                    {"normal": [format_fraction(c) for c in w], "rhs": format_fraction(c0)}
                    for w, c0 in piece.strict
                ],
                "base": None if piece.base is None else [format_fraction(c) for c in piece.base],
            }
            for piece in domain.pieces
        ],
    }


def _run_domain(args, which: str) -> int:
    datum = _load(args.datum)
    parabolics = enumerate_parabolics(datum)
    q = _parabolic_index(parabolics, args.index)
    domain = _DOMAIN_BUILDERS[which](datum, q)
    if getattr(args, "lam", None) is not None:
        lam = _parse_lambda(args.lam, datum.dim_q)
        print(f"member: {'true' if domain.contains(lam) else 'false'}")
        return 0
    if args.format == "json":
        payload = dict(_domain_json(domain))
        payload["schema"] = "rootfold.domain/1"
        payload["which"] = which
        print(json.dumps(payload, indent=2, sort_keys=True))
        return 0
    if args.format == "csv":
        sys.stdout.write(domain_csv(domain))
        return 0
    print(f"{which} domain for system [{args.index}] {_roots_str(q.positive)}")
    for line in domain_lines(domain):
        print(f"  {line}")
    return 0


def _cmd_domains(args) -> int:
    return _run_domain(args, args.which)


def _cmd_hull(args) -> int:
    return _run_domain(args, "hull")


def _cmd_check(args) -> int:
    datum = _load(args.datum)
    selection = None
    if args.selection is not None:
        selection = tuple(s.strip() for s in args.selection.split(",") if s.strip())
    try:
        certificates = run_suite(datum, selection=selection, exhaustive=args.exhaustive)
    except ValueError as err:
        raise CliError(str(err)) from err
    if args.json:
        sys.stdout.write(certificates_to_json(certificates))
    else:
        for cert in certificates:
            print(cert)
        passed = sum(1 for c in certificates if c.status == "pass")
        print(f"{passed}/{len(certificates)} checks passed")
    return 0 if suite_ok(certificates) else 1


# -- rank-one subcommands ---------------------------------------------------------


def _parse_blocks(text: str, tol: float, radius_max: float):
    blocks = []
    for part in text.split(";"):
        pieces = part.split(",")
        if len(pieces) != 2:
            raise CliError(f"cannot parse block {part!r}; expected 'm_alpha,m_2alpha'")
        try:
            kind = (int(pieces[0]), int(pieces[1]))
        except ValueError as err:
            raise CliError(f"cannot parse block {part!r}: {err}") from err
        try:
            blocks.append(make_block(kind, tol=tol, radius_max=radius_max))
        except ValueError as err:
            raise CliError(str(err)) from err
    return blocks


def _parse_values(text: str, count: int, what: str) -> list[float]:
    try:
        values = [float(part) for part in text.split(";")]
    except ValueError as err:
        raise CliError(f"cannot parse {what} {text!r}: {err}") from err
    if len(values) == 1:
        values = values * count
    if len(values) != count:
        raise CliError(f"{what}: expected 1 or {count} values, got {len(values)}")
    return values


def _cmd_rankone_cfun(args) -> int:
    blocks = _parse_blocks(args.blocks, args.tol, args.radius_max)
    exponents = _parse_values(args.s, len(blocks), "--s")
    try:
        result = c_partial(blocks, exponents, probe=args.probe, decay=args.decay)
    except ValueError as err:
        raise CliError(str(err)) from err
    print(f"value: {result.value:.12g}")
    print(f"est_error: {result.est_error:.6g}")
    print(f"converged: {'true' if result.converged else 'false'}")
    return 0 if result.converged else 1


def _t_schedule(t_max: float) -> list[float]:
    if t_max < 100.0:
        raise CliError("--t-max must be at least 100")
    schedule = []
    t = 100.0
    while t <= t_max * 1.0000001:
        schedule.append(t)
        t *= 10.0
    return schedule


def _cmd_rankone_asymptotic(args) -> int:
    blocks = _parse_blocks(args.blocks, args.tol, args.radius_max)
    mus = _parse_values(args.mu, len(blocks), "--mu")
    etas = _parse_values(args.eta, len(blocks), "--eta")
    if any(eta <= 0 for eta in etas):
        raise CliError("--eta values must be positive")
    try:
        report = asymptotic_td2(
            blocks, mus, etas, t_schedule=_t_schedule(args.t_max), drift_tol=args.drift_tol
        )
    except (ValueError, RuntimeError) as err:
        raise CliError(str(err), code=1) from err
    if args.csv:
        sys.stdout.write(asymptotic_csv(report))
    else:
        print(f"d: {report.d}")
        print(f"{'t':>12s} {'value':>18s} {'scaled':>18s} {'drift':>12s}")
        for t, value, scaled, drift in report.rows:
            print(f"{t:12.4g} {value:18.10g} {scaled:18.10g} {drift:12.4g}")
        print(f"limit: {report.limit:.10g}")
        print(f"prediction: {report.prediction:.10g}")
        print(f"rel_gap: {report.rel_gap:.4g}")
        print(f"converged: {'true' if report.converged else 'false'}")
    return 0 if report.converged else 1


def _cmd_rankone_hcheck(args) -> int:
    blocks = _parse_blocks(args.blocks, args.tol, args.radius_max)
    slopes = _parse_values(args.slope, len(blocks), "--slope")
    if any(s <= 0 for s in slopes):
        raise CliError("--slope values must be positive")
    all_ok = True
    for block, slope in zip(blocks, slopes):
        report = h_function_checks(
            block,
            slope,
            grid_radius=args.grid_radius,
            grid_points=args.grid_points,
            ball_radius=args.ball_radius,
        )
        all_ok = all_ok and report.ok
        print(f"block ({block.m_alpha},{block.m_2alpha}) slope={slope:g}: "
              f"{'ok' if report.ok else 'FAILED'}")
        print(f"  value_at_zero: {report.value_at_zero:.6g}")
        print(f"  min_off_ball: {report.min_off_ball:.6g}")
        print(f"  boundary_min: {report.boundary_min:.6g}")
        print(f"  hessian_positive_definite: {'true' if report.hessian_positive_definite else 'false'}")
        print(f"  hessian_step_agreement: {report.hessian_step_agreement:.6g}")
        if report.witness is not None:
            coords = ", ".join(f"{x:.6g}" for x in report.witness)
            print(f"  witness: ({coords})")
    return 0 if all_ok else 1


def _cmd_rankone(args) -> int:
    return args.rankone_handler(args)


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rootfold",
        description="Involution-split root systems: dominance order, cones, "
        "convergence domains, verification suite, rank-one integrals.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_datum(p):
        p.add_argument("datum", help="bundled fixture name or datum file path")

    p = sub.add_parser("validate", help="check the structural invariants of a datum")
    add_datum(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=_cmd_validate)

    p = sub.add_parser("fixtures", help="list bundled fixtures or emit one")
    p.add_argument("--emit", metavar="NAME", default=None, help="print a fixture file")
    p.set_defaults(handler=_cmd_fixtures)

    p = sub.add_parser("parabolics", help="enumerate and classify positive systems")
    add_datum(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=_cmd_parabolics)

    p = sub.add_parser("order", help="dominance order (covering pairs, DOT export)")
    add_datum(p)
    p.add_argument("--dot", action="store_true", help="emit a DOT graph")
    p.set_defaults(handler=_cmd_order)

    p = sub.add_parser("chambers", help="restricted chamber complex")
    add_datum(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(handler=_cmd_chambers)

    p = sub.add_parser("cones", help="wall cone and dual cone of a system")
    add_datum(p)
    p.add_argument("index", type=int, help="system index from `parabolics`")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.set_defaults(handler=_cmd_cones)

    p = sub.add_parser("domains", help="convergence domains and membership queries")
    add_datum(p)
    p.add_argument("index", type=int, help="system index from `parabolics`")
    p.add_argument("--which", choices=tuple(_DOMAIN_BUILDERS), default="omega")
    p.add_argument("--lambda", dest="lam", metavar="COORDS", default=None,
                   help="comma-separated p/q coordinates; prints membership")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.set_defaults(handler=_cmd_domains)

    p = sub.add_parser("hull", help="half-space hull of the union domain")
    add_datum(p)
    p.add_argument("index", type=int, help="system index from `parabolics`")
    p.add_argument("--lambda", dest="lam", metavar="COORDS", default=None,
                   help="comma-separated p/q coordinates; prints membership")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.set_defaults(handler=_cmd_hull)

    p = sub.add_parser("check", help="run the verification suite")
    add_datum(p)
    p.add_argument("--json", action="store_true", help="emit the JSON certificate report")
    p.add_argument("--exhaustive", action="store_true",
                   help="quantify triples without the comparability filter")
    p.add_argument("--selection", default=None, metavar="IDS",
                   help="comma-separated check ids to run")
    p.set_defaults(handler=_cmd_check)

    p = sub.add_parser("rankone", help="rank-one numerical laboratory")
    rsub = p.add_subparsers(dest="rankone_command", required=True)

    def add_blocks(rp):
        rp.add_argument("--blocks", default="1,0",
                        help="semicolon-separated blocks 'm_alpha,m_2alpha' (default 1,0)")
        rp.add_argument("--tol", type=float, default=0.0,
                        help="absolute quadrature tolerance per block (0 = default)")
        rp.add_argument("--radius-max", type=float, default=0.0,
                        help="truncation radius cap (0 = default)")

    rp = rsub.add_parser("cfun", help="partial integral product over blocks")
    add_blocks(rp)
    rp.add_argument("--s", default="1", help="per-block exponents (semicolon-separated)")
    rp.add_argument("--probe", action="store_true",
                    help="evaluate outside the guaranteed convergence range")
    rp.add_argument("--decay", type=float, default=0.9,
                    help="geometric-decay threshold of the divergence detector")
    rp.set_defaults(handler=_cmd_rankone, rankone_handler=_cmd_rankone_cfun)

    rp = rsub.add_parser("asymptotic", help="t^(d/2)-scaled limit along a dominant ray")
    add_blocks(rp)
    rp.add_argument("--mu", default="0", help="per-block base exponents")
    rp.add_argument("--eta", default="1", help="per-block ray slopes (positive)")
    rp.add_argument("--t-max", type=float, default=1e5, help="largest t in the schedule")
    rp.add_argument("--drift-tol", type=float, default=1e-2,
                    help="relative drift accepted between the last two t values")
    rp.add_argument("--csv", action="store_true", help="emit CSV rows")
    rp.set_defaults(handler=_cmd_rankone, rankone_handler=_cmd_rankone_asymptotic)

    rp = rsub.add_parser("hcheck", help="stationary-phase checks for the phase function")
    add_blocks(rp)
    rp.add_argument("--slope", default="1", help="per-block positive slopes")
    rp.add_argument("--grid-radius", type=float, default=2.0)
    rp.add_argument("--grid-points", type=int, default=17)
    rp.add_argument("--ball-radius", type=float, default=0.25)
    rp.set_defaults(handler=_cmd_rankone, rankone_handler=_cmd_rankone_hcheck)

    return parser


_VALUE_FLAGS = ("--lambda", "--s", "--mu", "--eta", "--slope")


def _merge_value_flags(argv: list[str]) -> list[str]:
    """Join `--flag -1/2` into `--flag=-1/2` so negative coordinates are not
    mistaken for option switches."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_merge_value_flags(list(argv)))
    try:
        return args.handler(args)
    except CliError as err:
        print(f"error: {err}", file=sys.stderr)
        return err.code
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
