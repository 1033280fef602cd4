"""Command-line driver: ``holgerbe verify spectral``, ``holgerbe dd``, ``holgerbe two-gerbe``.

Exit codes: 0 all cases passed, 1 a verification or certification failed,
2 malformed input, 3 data-integrity violation.
"""

from __future__ import annotations

import argparse
import logging
import sys

import numpy as np

from . import io
from .cech import (CYCLES, GROUPS, canonical_cocycle, connection_cochain, dd_details)
from .config import DEFAULTS, Tolerances
from .cover import build_s4_cover, build_su2_cover
from .errors import DataIntegrityError, GerbeError, InputError

log = logging.getLogger("holgerbe")

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_INTEGRITY = 0, 1, 2, 3

ORIENTATION_CONVENTION = ("unit quaternions oriented by the basis (i, j, k) at 1; "
                          "fundamental cycle sum_s sign(det[centers of s]) [s]")


class ArgumentError(InputError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ArgumentError(message)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0, help="seed for every randomized choice")
    p.add_argument("--out", help="write the JSON report here (default: stdout)")
    g = p.add_argument_group("tolerance overrides")
    for name in Tolerances.names():
        default = getattr(DEFAULTS, name)
        g.add_argument("--" + name.replace("_", "-"), dest=name, type=type(default), default=None,
                       help=f"default {default}")


def _tolerances(args) -> Tolerances:
    kw = {n: getattr(args, n) for n in Tolerances.names() if getattr(args, n, None) is not None}
    try:
        return DEFAULTS.override(**kw)
    except ValueError as e:
        raise InputError(str(e)) from e


def _config_echo(args, tol: Tolerances) -> dict:
    skip = {"func"} | set(Tolerances.names())
    echo = {k: v for k, v in sorted(vars(args).items()) if k not in skip}
    echo["tolerances"] = tol.as_dict()
    return echo


def _emit(rep: dict, out: str | None) -> None:
    if out:
        io.write_json(rep, out)
    else:
        sys.stdout.write(io.dumps(rep))


# --------------------------------------------------------------------------
# verify spectral
# --------------------------------------------------------------------------


def cmd_spectral(args) -> int:
    from .suites import SPECTRAL_THRESHOLDS, spectral_case_passed, spectral_suite

    tol = _tolerances(args)
    if args.samples < 0:
        raise InputError("--samples must be nonnegative")
    matrices = io.read_matrices(args.matrix) if args.matrix else None
    cases = []
    for c in spectral_suite(args.samples, args.seed, args.n, matrices, tol):
        resid = max(c[k] for k in SPECTRAL_THRESHOLDS)
        cases.append(io.case(c["name"], spectral_case_passed(c), resid, c["count"],
                             expected=c["expected"], contour=c["kind"], n=c["n"]))
    echo = _config_echo(args, tol)
    echo["thresholds"] = SPECTRAL_THRESHOLDS
    rep = io.report("spectral", cases, echo)
    _emit(rep, args.out)
    return EXIT_PASS if io.report_passed(rep) else EXIT_FAIL


# --------------------------------------------------------------------------
# dd
# --------------------------------------------------------------------------


def _dd_cases(cover, g, tol, expected: int | None) -> tuple[list, dict]:
    res = dd_details(cover, g, phase_guard=tol.phase_guard, tol_round_fail=tol.tol_round_fail)
    cases = [
        io.case("closure", res.closure_residual < 1e-8, res.closure_residual),
        io.case("integer-rounding", res.rounding_residual < tol.tol_round_fail, res.rounding_residual),
        io.case("phase-guard", res.max_phase_step < tol.phase_guard, res.max_phase_step),
    ]
    ok = True if expected is None else abs(res.value) == abs(expected)
    cases.append(io.case("dd_integer", ok, None, res.value,
                         **({} if expected is None else {"expected_abs": abs(expected)})))
    return cases, {"value": res.value, "orientation": res.orientation}


def cmd_dd_canonical(args) -> int:
    tol = _tolerances(args)
    K = args.cover or (5 if args.cycle == "su2" else 120)
    cover = build_su2_cover(K, seed=args.seed)
    if args.orientation == "reversed":
        cover = cover.reversed()
    from .cech import make_cycle
    cycle = make_cycle(args.cycle, args.group)
    log.info("cover %s: counts %s", cover.name, cover.counts())
    sec, frames, g = canonical_cocycle(cover, cycle, section_rank=args.section_rank, seed=args.seed)
    cases = [io.case("cover-certificate", True, None, cover.counts(), certificate=cover.certificate)]
    more, summary = _dd_cases(cover, g, tol, CYCLES[args.cycle])
    cases += more
    if args.connection:
        rep_c = connection_cochain(frames)
        cases.append(io.case("connection", rep_c.residual < 1e-5, rep_c.residual,
                             samples=rep_c.samples))
        cases.append(io.case("connection-antisymmetry", rep_c.antisymmetry < 1e-10, rep_c.antisymmetry))
    if args.emit_cocycle:
        io.write_cocycle(g, args.emit_cocycle, cover)
    echo = _config_echo(args, tol)
    echo["orientation_convention"] = ORIENTATION_CONVENTION
    echo["sections"] = sec.angles.tolist()
    rep = io.report("dd", cases, echo, **summary)
    _emit(rep, args.out)
    return EXIT_PASS if io.report_passed(rep) else EXIT_FAIL


def cmd_dd_file(args) -> int:
    tol = _tolerances(args)
    g, cover = io.read_cocycle(args.cocycle)
    if args.cover_file:
        cover = io.read_cover(args.cover_file)
        io.check_alignment(g, cover)
    if cover is None:
        raise InputError("cocycle file has no embedded cover; pass --cover-file")
    g.check_nonvanishing()
    cases, summary = _dd_cases(cover, g, tol, None)
    echo = _config_echo(args, tol)
    echo["orientation_convention"] = ORIENTATION_CONVENTION
    rep = io.report("dd", cases, echo, **summary)
    _emit(rep, args.out)
    return EXIT_PASS if io.report_passed(rep) else EXIT_FAIL


# --------------------------------------------------------------------------
# two-gerbe
# --------------------------------------------------------------------------


def cmd_two_gerbe(args) -> int:
    from . import two_gerbe as tg

    tol = _tolerances(args)
    cases, summary = [], {}
    g, cover, E = None, None, None
    if args.cocycle:
        g, cover = io.read_cocycle(args.cocycle)
        if cover is None:
            raise InputError("cocycle file has no embedded cover")
        g.check_nonvanishing()
    cover = cover or build_s4_cover()
    if args.bundle:
        E = io.read_bundle(args.bundle, cover)
    elif args.generator:
        E = io.bundle_from_document({"generator": args.generator, "params": {"seed": args.seed}}, cover)
    if E is not None:
        cr = E.cocycle_residual()
        cases.append(io.case("transition-cocycle", cr < 1e-8, cr))
        k_bundle = None
        if E.connection is not None and not args.no_c2:
            c2 = tg.chern_weil_c2(E, nodes=args.c2_nodes)
            cases.append(io.case("gauge-compatibility", c2.gauge_residual < 1e-6, c2.gauge_residual))
            cases.append(io.case("chern_weil_c2", c2.rounding < 1e-3, c2.rounding, c2.value))
            k_bundle = int(round(c2.value))
            summary["c2"] = c2.value
        if E.name in ("trivial", "torus"):
            z = tg.bundle_sections(E, spread=True)
            worst = 0.0
            for s in cover.simplices[2]:
                d = tg.pullback_gerbe_data(E, s, z=z)
                for e, M in d.matrices.items():
                    orc = [tg.diagonal_scalar_oracle(np.diag(A), *[d.z[v] for v in s]) for A in M]
                    worst = max(worst, float(np.max(np.abs(d.scalars[e] - np.array(orc)))))
            cases.append(io.case("pullback-gerbe-scalars", worst < 1e-10, worst))
        if g is None and k_bundle is not None:
            # the multiplicative structure is not synthesized: the degree-3 data
            # is a collated cocycle whose class is the Chern-Weil integer
            g = tg.synthesize_class_cocycle(cover, k_bundle)
            summary["scope"] = "cocycle synthesized with class = round(chern_weil_c2)"
            summary["expected_dd4"] = k_bundle
    if g is None and args.synthesize is not None:
        g = tg.synthesize_class_cocycle(cover, args.synthesize)
        summary["expected_dd4"] = args.synthesize
    if g is None:
        raise InputError("two-gerbe needs --cocycle, --bundle, --generator or --synthesize")
    if args.emit_cocycle:
        io.write_cocycle(g, args.emit_cocycle, cover)
    cl = g.closure_residual()
    cases.append(io.case("closure", cl < 1e-8, cl))
    pent = tg.pentagon_verify(tg.AssociatorData.from_cocycle(g), cover)
    cases.append(io.case("pentagon", pent < 1e-10, pent))
    res = dd_details(cover, g, phase_guard=tol.phase_guard, tol_round_fail=tol.tol_round_fail)
    exp = summary.get("expected_dd4")
    cases.append(io.case("dd4_integer", exp is None or res.value == exp, res.rounding_residual, res.value))
    summary["dd4"] = res.value
    rep = io.report("two-gerbe", cases, _config_echo(args, tol), **summary)
    _emit(rep, args.out)
    return EXIT_PASS if io.report_passed(rep) else EXIT_FAIL


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="holgerbe", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="randomized verification suites")
    vs = v.add_subparsers(dest="suite", required=True, parser_class=_Parser)
    sp = vs.add_parser("spectral", help="zero counts and Riesz projectors on seeded matrices")
    sp.add_argument("--n", type=int, default=None, help="matrix size (default: random in 2..5)")
    sp.add_argument("--samples", type=int, default=200)
    sp.add_argument("--matrix", help="matrix JSON file (one object or a list)")
    _add_common(sp)
    sp.set_defaults(func=cmd_spectral)

    d = sub.add_parser("dd", help="integer Dixmier-Douady class")
    ds = d.add_subparsers(dest="source", required=True, parser_class=_Parser)
    dc = ds.add_parser("canonical", help="canonical gerbe pulled back along a test cycle")
    dc.add_argument("--group", choices=sorted(GROUPS), default="gl2")
    dc.add_argument("--cycle", choices=sorted(CYCLES), default="su2")
    dc.add_argument("--orientation", choices=["default", "reversed"], default="default")
    dc.add_argument("--cover", type=int, choices=[5, 8, 120], default=None,
                    help="number of balls (default 5 for su2, 120 for powers)")
    dc.add_argument("--section-rank", type=int, default=0)
    dc.add_argument("--connection", action="store_true", help="also check d log g = delta A")
    dc.add_argument("--emit-cocycle", help="write the sampled cocycle (with its cover) here")
    _add_common(dc)
    dc.set_defaults(func=cmd_dd_canonical)
    df = ds.add_parser("file", help="cocycle read from a file")
    df.add_argument("cocycle")
    df.add_argument("--cover-file", help="cover JSON when the cocycle file has none embedded")
    _add_common(df)
    df.set_defaults(func=cmd_dd_file)

    t = sub.add_parser("two-gerbe", help="2-gerbe verifiers on S^4")
    t.add_argument("--cocycle", help="degree-3 cocycle file")
    t.add_argument("--bundle", help="bundle file")
    t.add_argument("--generator", choices=["trivial", "instanton", "torus"])
    t.add_argument("--synthesize", type=int, help="collate a cocycle of this class")
    t.add_argument("--no-c2", action="store_true", help="skip Chern-Weil integration")
    t.add_argument("--c2-nodes", type=int, default=6)
    t.add_argument("--emit-cocycle")
    _add_common(t)
    t.set_defaults(func=cmd_two_gerbe)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except ArgumentError as e:
        print(f"holgerbe: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except DataIntegrityError as e:
        print(f"holgerbe: data integrity: {e}", file=sys.stderr)
        return EXIT_INTEGRITY
    except InputError as e:
        print(f"holgerbe: input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except GerbeError as e:
        print(f"holgerbe: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAIL
    except OSError as e:
        print(f"holgerbe: I/O error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
