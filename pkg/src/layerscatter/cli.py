"""Command-line surface: structure files, energy sweeps, spatial sampling,
band scans, scenario generators, and CSV emission.

Exit codes: 0 success, 2 parse/validation error, 3 numerical degeneracy
(k = 0 in some region, band edge), 4 oracle-check discrepancy above
tolerance.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .amplitudes import reflection_probability, transmission_probability
from .oracle import compare_with_pipeline
from .periodic import BandEdgeError, PeriodicLattice, band_scan
from .scenarios import SCENARIOS, build_scenario
from .structure import (
    Barrier,
    DegenerateWavenumberError,
    LayeredStructure,
    StructureError,
    mirror_structure,
    validate_structure,
)
from .wavefunction import default_grid, sample_density, solve_structure

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_DEGENERATE = 3
EXIT_ORACLE = 4


def serialize_structure(s: LayeredStructure, unit_label: str = "s") -> str:
    """JSON text that :func:`parse_structure` restores bit-exactly."""
    doc = {
        "v_left": s.v_left,
        "v_right": s.v_right,
        "span": s.span,
        "unit_label": unit_label,
        "barriers": [
            {"height": b.height, "width": b.width, "center": b.center}
            for b in s.barriers
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def parse_structure(text: str) -> LayeredStructure:
    """Parse a structure document (JSON) into a validated structure.

    Either an explicit barrier list under ``barriers`` or a
    ``generator: {kind, params}`` entry expanding to a named scenario.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as ex:
        raise StructureError([f"not valid JSON: {ex}"]) from ex
    if not isinstance(doc, dict):
        raise StructureError(["top level must be an object"])
    if "generator" in doc:
        gen = doc["generator"]
        if not isinstance(gen, dict) or "kind" not in gen:
            raise StructureError(["generator must be an object with a 'kind' key"])
        params = gen.get("params", {})
        try:
            return build_scenario(gen["kind"], **params)
        except (TypeError, ValueError) as ex:
            raise StructureError([f"generator: {ex}"]) from ex
    missing = [k for k in ("v_left", "v_right", "span", "barriers") if k not in doc]
    if missing:
        raise StructureError([f"missing key: {k}" for k in missing])
    barriers = []
    for i, b in enumerate(doc["barriers"], start=1):
        try:
            barriers.append(Barrier(float(b["height"]), float(b["width"]), float(b["center"])))
        except (TypeError, KeyError, ValueError) as ex:
            raise StructureError([f"barrier {i}: {ex}"]) from ex
    s = LayeredStructure(
        float(doc["v_left"]), float(doc["v_right"]), float(doc["span"]), tuple(barriers)
    )
    return validate_structure(s)


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _load_structure(args) -> LayeredStructure:
    if args.scenario is not None:
        params = {}
        for item in (args.scenario_params or "").split(","):
            if not item:
                continue
            key, _, val = item.partition("=")
            try:
                num = float(val)
            except ValueError:
                raise StructureError([f"scenario parameter {item!r} is not numeric"])
            params[key.strip()] = int(num) if num == int(num) and key.strip() in (
                "count", "m") else num
        s = build_scenario(args.scenario, **params)
    elif args.structure is not None:
        if args.structure == "-":
            text = sys.stdin.read()
        else:
            with open(args.structure) as fh:
                text = fh.read()
        s = parse_structure(text)
    else:
        raise StructureError(["provide --structure FILE or --scenario NAME"])
    if getattr(args, "mirror", False):
        s = validate_structure(mirror_structure(s))
    return s


def _open_out(path):
    if path in (None, "stdout", "-"):
        return sys.stdout, False
    return open(path, "w"), True


def _energy_range(spec: str):
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError("--energy-range must be MIN:MAX:STEPS")
    lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    if not (hi > lo and steps >= 2):
        raise ValueError("--energy-range needs MAX > MIN and STEPS >= 2")
    return np.linspace(lo, hi, steps)


def cmd_validate(args) -> int:
    try:
        s = _load_structure(args)
    except StructureError as ex:
        for p in ex.problems:
            print(f"invalid: {p}", file=sys.stderr)
        return EXIT_INVALID
    print(f"valid: {s.n_barriers} barriers on span {s.span}")
    return EXIT_OK


def cmd_wavefunction(args) -> int:
    s = _load_structure(args)
    if args.energy <= s.v_left:
        print(
            f"error: energy {args.energy} does not propagate in the left medium "
            f"(V1 = {s.v_left})",
            file=sys.stderr,
        )
        return EXIT_DEGENERATE
    sol = solve_structure(s, args.energy)
    grid = default_grid(sol, args.x_min, args.x_max, args.grid_points)
    rows = sample_density(sol, grid)
    out, close = _open_out(args.out)
    try:
        out.write("x,re_psi,im_psi,abs2_psi\n")
        for row in rows:
            out.write(",".join(_fmt(v) for v in row) + "\n")
    finally:
        if close:
            out.close()
    t = transmission_probability(sol.embedded, sol.wavenumbers)
    r = reflection_probability(sol.embedded)
    print(f"T={_fmt(t)} R={_fmt(r)}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    s = _load_structure(args)
    energies = _energy_range(args.energy_range)
    if energies[0] <= s.v_left:
        print(
            f"error: sweep must start above the left medium potential V1 = {s.v_left}",
            file=sys.stderr,
        )
        return EXIT_DEGENERATE
    out, close = _open_out(args.out)
    try:
        out.write("epsilon,T_prob,R_prob\n")
        for e in energies:
            e = float(e)
            try:
                sol = solve_structure(s, e)
            except DegenerateWavenumberError:
                sol = solve_structure(s, e + args.nudge)
            t = transmission_probability(sol.embedded, sol.wavenumbers)
            r = reflection_probability(sol.embedded)
            out.write(f"{_fmt(e)},{_fmt(t)},{_fmt(r)}\n")
    finally:
        if close:
            out.close()
    return EXIT_OK


def cmd_bands(args) -> int:
    lat = PeriodicLattice(args.barrier_height, args.barrier_width, args.period)
    lo, hi, steps = args.energy_range.split(":")
    lo, hi, steps = float(lo), float(hi), int(steps)
    table = band_scan(lat, lo, hi, (hi - lo) / max(steps - 1, 1))
    out, close = _open_out(args.out)
    try:
        out.write("epsilon,cos_beta,band\n")
        for e, c, label in zip(table.energies, table.cos_beta, table.classification):
            out.write(f"{_fmt(e)},{_fmt(c)},{label}\n")
    finally:
        if close:
            out.close()
    for e in table.edges:
        print(f"edge at epsilon={_fmt(e)}")
    for e in table.skipped:
        print(f"note: skipped degenerate grid point epsilon={_fmt(e)}")
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    s = _load_structure(args)
    worst, condition = compare_with_pipeline(s, args.energy)
    tol = args.tolerance if condition <= 1e8 else args.relaxed_tolerance
    print(
        f"max relative discrepancy = {_fmt(worst)} "
        f"(condition estimate {condition:.3e}, tolerance {tol:g})"
    )
    return EXIT_OK if worst <= tol else EXIT_ORACLE


def _add_structure_args(p, mirror=True):
    p.add_argument("--structure", help="structure JSON file ('-' for stdin)")
    p.add_argument("--scenario", choices=sorted(SCENARIOS), help="named generator")
    p.add_argument(
        "--scenario-params",
        help="comma-separated key=value overrides for the scenario",
    )
    if mirror:
        p.add_argument(
            "--mirror", action="store_true",
            help="reflect the structure (right-incidence equivalent)",
        )


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="layerscatter",
        description="Scattering, wave functions, and band structure for 1D "
        "rectangular-barrier chains between two semi-infinite media.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a structure's geometric constraints")
    _add_structure_args(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("wavefunction", help="sample psi(x) to CSV")
    _add_structure_args(p)
    p.add_argument("--energy", type=float, required=True)
    p.add_argument("--grid-points", type=int, default=None)
    p.add_argument("--x-min", type=float, default=None)
    p.add_argument("--x-max", type=float, default=None)
    p.add_argument("--out", default="stdout")
    p.set_defaults(func=cmd_wavefunction)

    p = sub.add_parser("sweep", help="transmission/reflection over an energy range")
    _add_structure_args(p)
    p.add_argument("--energy-range", required=True, metavar="MIN:MAX:STEPS")
    p.add_argument(
        "--nudge", type=float, default=1e-9,
        help="energy offset applied at degenerate grid points (k_n = 0)",
    )
    p.add_argument("--out", default="stdout")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("bands", help="Bloch-phase scan of a periodic lattice")
    p.add_argument("--barrier-height", type=float, required=True)
    p.add_argument("--barrier-width", type=float, required=True)
    p.add_argument("--period", type=float, required=True)
    p.add_argument("--energy-range", required=True, metavar="MIN:MAX:STEPS")
    p.add_argument("--out", default="stdout")
    p.set_defaults(func=cmd_bands)

    p = sub.add_parser(
        "oracle-check",
        help="compare the recurrence pipeline against the dense matching solve",
    )
    _add_structure_args(p)
    p.add_argument("--energy", type=float, required=True)
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.add_argument(
        "--relaxed-tolerance", type=float, default=1e-6,
        help="tolerance used when the dense system's condition exceeds 1e8",
    )
    p.set_defaults(func=cmd_oracle_check)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except StructureError as ex:
        for p in ex.problems:
            print(f"error: {p}", file=sys.stderr)
        return EXIT_INVALID
    except (DegenerateWavenumberError, BandEdgeError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_DEGENERATE
    except ValueError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
