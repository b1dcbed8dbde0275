"""Command-line front end: point reports, sweeps, oracle checks, adiabatic runs.

Exit codes: 0 ok, 1 check failure, 2 degeneracy (with --strict, or degenerate
input), 3 adiabaticity violation (with --strict), 64 usage error, 74 I/O
error.  Output is deterministic for fixed flags and seed.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import adiabatic, limits, observables, spectrum
from .angles import angular_distance, wrap_angle
from .crosscheck import CheckTolerances, run_suite
from .errors import AdiabaticityViolation, DegenerateInput, DegenerateSpectrum
from .model import ModelParams

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_DEGENERATE = 2
EXIT_ADIABATICITY = 3
EXIT_USAGE = 64
EXIT_IO = 74

OUTPUT_FIELDS = (
    "n", "j_x", "j_z", "b0", "theta", "E_n", "eps_n", "a", "b", "c",
    "berry_over_2pi", "concurrence", "degenerate", "fallback_used",
)

PRESETS = ("xx", "ising", "xxz-vary-jz", "custom")
PRESET_ALIASES = {"omega": "xx", "lambda": "ising"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class SweepSpec:
    """Resolved sweep request: preset, fixed couplings, grid, theta list."""

    preset: str
    axis: str
    j_x: float
    j_z: float
    b0: float
    thetas: tuple
    grid: str
    lo: float
    hi: float
    count: int

    def ratios(self):
        if self.count < 2:
            raise UsageError("grid count must be >= 2")
        if self.grid == "log":
            if self.lo <= 0 or self.hi <= 0:
                raise UsageError("log grid bounds must be positive")
            return np.logspace(math.log10(self.lo), math.log10(self.hi), self.count)
        return np.linspace(self.lo, self.hi, self.count)


def _add_point_flags(sub, theta_default="1.0471975511965976"):
    sub.add_argument("--jx", type=float, default=0.0, help="XY exchange energy j_x")
    sub.add_argument("--jz", type=float, default=0.0, help="Ising exchange energy j_z")
    sub.add_argument("--b0", type=float, default=1.0, help="field energy mu*B/2")
    sub.add_argument("--theta", default=theta_default,
                     help="polar angle of the rotation axis, radians")


def _add_common_flags(sub):
    sub.add_argument("--format", choices=("text", "csv", "json"), default="text",
                     help="output format")
    sub.add_argument("--out", default=None, help="write output to this path")
    sub.add_argument("--strict", action="store_true",
                     help="degeneracy/adiabaticity problems change the exit code")
    sub.add_argument("--config", default=None,
                     help="flat key=value config file; flags override it")


def build_parser() -> _Parser:
    parser = _Parser(
        prog="xxzpair",
        description="Eigensystem, Berry phases and concurrence of two "
                    "exchange-coupled qubits in a rotating magnetic field.",
    )
    subs = parser.add_subparsers(dest="command")

    p_eigen = subs.add_parser(
        "eigen", help="closed-form report for one parameter point")
    _add_point_flags(p_eigen)
    p_eigen.add_argument("--phi", type=float, default=0.0,
                         help="field azimuth for the amplitude block")
    _add_common_flags(p_eigen)

    p_sweep = subs.add_parser(
        "sweep", help="observables along a coupling-ratio grid")
    p_sweep.add_argument("--preset", default="custom",
                         help="xx (omega plane, j_z=0), ising (lambda plane, "
                              "j_x=0), xxz-vary-jz (j_z scan at fixed j_x), "
                              "or custom")
    p_sweep.add_argument("--axis", choices=(observables.AXIS_JX, observables.AXIS_JZ),
                         default=None, help="swept ratio (custom preset)")
    p_sweep.add_argument("--grid", choices=("log", "lin"), default="log")
    p_sweep.add_argument("--lo", type=float, default=None, help="grid lower bound")
    p_sweep.add_argument("--hi", type=float, default=None, help="grid upper bound")
    p_sweep.add_argument("--count", type=int, default=61, help="grid point count")
    p_sweep.add_argument("--jx", type=float, default=None,
                         help="fixed j_x (custom / xxz-vary-jz)")
    p_sweep.add_argument("--jz", type=float, default=None, help="fixed j_z (custom)")
    p_sweep.add_argument("--b0", type=float, default=1.0, help="field energy")
    p_sweep.add_argument("--theta", default="1.0471975511965976",
                         help="comma-separated polar angles, radians")
    _add_common_flags(p_sweep)

    p_check = subs.add_parser(
        "check", help="oracle-vs-analytic and symmetry suite on random tuples")
    p_check.add_argument("--samples", type=int, default=1000)
    p_check.add_argument("--seed", type=int, default=42)
    p_check.add_argument("--tol-root", type=float, default=CheckTolerances.root_residual)
    p_check.add_argument("--tol-eig", type=float, default=CheckTolerances.eig_mismatch)
    p_check.add_argument("--tol-berry", type=float, default=CheckTolerances.berry_mismatch)
    p_check.add_argument("--tol-conc", type=float, default=CheckTolerances.conc_mismatch)
    p_check.add_argument("--tol-symmetry", type=float, default=CheckTolerances.symmetry)
    _add_common_flags(p_check)

    p_evolve = subs.add_parser(
        "evolve", help="integrate one slow field rotation and extract phases")
    _add_point_flags(p_evolve)
    p_evolve.add_argument("--n", type=int, default=1, help="level index 0..3")
    p_evolve.add_argument("--omega", type=float, default=None,
                          help="drive frequency (default 1e-3 * scale)")
    p_evolve.add_argument("--steps", type=int, default=None,
                          help="RK4 step count (default from dt * max|E| budget)")
    _add_common_flags(p_evolve)

    p_tables = subs.add_parser(
        "tables", help="computed vs expected limit-table cells")
    p_tables.add_argument("--theta", type=float, default=math.pi / 3,
                          help="polar angle, radians")
    p_tables.add_argument("--b0", type=float, default=1.0, help="field energy")
    _add_common_flags(p_tables)

    return parser


def _known_dests(parser: _Parser):
    dests = set()
    for action in parser._actions:
        if isinstance(action, argparse._SubParsersAction):
            for sub in action.choices.values():
                for sub_action in sub._actions:
                    dests.add(sub_action.dest)
        dests.add(action.dest)
    dests.discard("help")
    return dests


def load_config(path: str, parser: _Parser) -> dict:
    """Flat key=value file; '#' starts a comment.  Keys mirror the flag names."""
    values = {}
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value, got {raw!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            key = key.replace("-", "_")
            values[key] = value
    known = _known_dests(parser)
    unknown = sorted(set(values) - known)
    if unknown:
        raise UsageError(f"{path}: unknown config keys {unknown}")
    converted = {}
    for key, value in values.items():
        if key in ("strict",):
            converted[key] = value.lower() in ("1", "true", "yes", "on")
        elif key in ("samples", "seed", "count", "steps", "n"):
            converted[key] = int(value)
        elif key in ("format", "out", "config", "preset", "axis", "grid",
                     "theta", "command"):
            converted[key] = value
        else:
            converted[key] = float(value)
    return converted


def _parse_theta_single(value) -> float:
    try:
        return float(value)
    except (TypeError, ValueError):
        raise UsageError(f"theta must be a float in radians, got {value!r}")


def _parse_theta_list(value):
    try:
        thetas = tuple(float(part) for part in str(value).split(",") if part.strip())
    except ValueError:
        raise UsageError(f"bad theta list {value!r}")
    if not thetas:
        raise UsageError("theta list is empty")
    return thetas


def _point_params(args) -> ModelParams:
    try:
        return ModelParams(args.jx, args.jz, args.b0, _parse_theta_single(args.theta))
    except ValueError as exc:
        raise UsageError(str(exc))


def _fmt(value) -> str:
    """IEEE round-trip decimal text for one CSV/JSON cell."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def format_csv(records) -> str:
    lines = [",".join(OUTPUT_FIELDS)]
    for record in records:
        lines.append(",".join(_fmt(record[field]) for field in OUTPUT_FIELDS))
    return "\n".join(lines) + "\n"


def format_json(records) -> str:
    return json.dumps(records, indent=2) + "\n"


def point_records(params: ModelParams):
    """One OutputRecord dict per level for one parameter point.

    The singlet row keeps the same shifted-energy convention
    (eps = E - j_z); its triplet coefficients do not apply and are null.
    """
    energies = spectrum.eigenvalues(params)
    base = {
        "j_x": params.j_x, "j_z": params.j_z,
        "b0": params.b0, "theta": params.theta,
    }
    rows = [dict(
        n=0, **base, E_n=energies[0], eps_n=energies[0] - params.j_z,
        a=None, b=None, c=None, berry_over_2pi=0.0, concurrence=1.0,
        degenerate=False, fallback_used=False,
    )]
    for sol, record in zip(spectrum.triplet_solutions(params),
                           observables.observables_for(params)[1:]):
        berry2pi = record.berry / (2.0 * math.pi)
        rows.append(dict(
            n=sol.n, **base, E_n=sol.energy, eps_n=sol.eps,
            a=sol.a, b=sol.b, c=sol.c,
            berry_over_2pi=None if math.isnan(berry2pi) else berry2pi,
            concurrence=record.conc,
            degenerate=sol.degenerate, fallback_used=sol.fallback_used,
        ))
    return rows


def _emit(text: str, out_path) -> int:
    if out_path is None:
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text)
    except OSError as exc:
        print(f"xxzpair: cannot write {out_path}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _eigen_text(params: ModelParams, phi: float, records) -> str:
    lines = [
        f"eigensystem at j_x={_fmt(params.j_x)} j_z={_fmt(params.j_z)} "
        f"b0={_fmt(params.b0)} theta={_fmt(params.theta)}",
        f"{'n':>2} {'E_n':>14} {'eps_n':>14} {'a':>10} {'b':>10} {'c':>10} "
        f"{'gamma/2pi':>10} {'C':>8}  flags",
    ]
    for row in records:
        def num(key, width=10):
            value = row[key]
            return " " * width if value is None else f"{value:>{width}.6f}"
        flags = []
        if row["degenerate"]:
            flags.append("degenerate")
        if row["fallback_used"]:
            flags.append("fallback")
        berry = row["berry_over_2pi"]
        berry_txt = "       nan" if berry is None else f"{berry:>10.6f}"
        lines.append(
            f"{row['n']:>2} {row['E_n']:>14.8f} {row['eps_n']:>14.8f} "
            f"{num('a')} {num('b')} {num('c')} {berry_txt} "
            f"{row['concurrence']:>8.6f}  {','.join(flags)}"
        )
    lines.append(f"amplitudes (uu, ud, du, dd) at phi={_fmt(phi)}:")
    for n in range(4):
        amps = spectrum.eigenstate(params, n, phi)
        amp_txt = ", ".join(f"{z.real:+.6f}{z.imag:+.6f}j" for z in amps)
        lines.append(f"  n={n}: ({amp_txt})")
    return "\n".join(lines) + "\n"


def cmd_eigen(args) -> int:
    params = _point_params(args)
    degenerate_input = False
    try:
        spectrum.cubic_invariants(params)
    except DegenerateInput as exc:
        # q = 0 is a hard degeneracy: report it and exit 2 regardless of
        # --strict, but still print the triple-root spectrum.
        print(f"xxzpair: degenerate input: {exc}", file=sys.stderr)
        degenerate_input = True
    records = point_records(params)
    degenerate = any(row["degenerate"] for row in records)
    if degenerate and not degenerate_input:
        print("xxzpair: note: degenerate triplet levels present", file=sys.stderr)
    if args.format == "csv":
        text = format_csv(records)
    elif args.format == "json":
        text = format_json(records)
    else:
        text = _eigen_text(params, args.phi, records)
    code = _emit(text, args.out)
    if code != EXIT_OK:
        return code
    if degenerate_input or (degenerate and args.strict):
        return EXIT_DEGENERATE
    return EXIT_OK


def resolve_sweep_spec(args) -> SweepSpec:
    preset = PRESET_ALIASES.get(args.preset, args.preset)
    if preset not in PRESETS:
        raise UsageError(f"unknown preset {args.preset!r}; choose from {PRESETS}")
    thetas = _parse_theta_list(args.theta)
    b0 = args.b0
    if preset == "xx":
        axis, j_x, j_z = observables.AXIS_JX, 0.0, 0.0
        lo, hi = 1e-3, 1e3
    elif preset == "ising":
        axis, j_x, j_z = observables.AXIS_JZ, 0.0, 0.0
        lo, hi = 1e-3, 1e3
    elif preset == "xxz-vary-jz":
        axis = observables.AXIS_JZ
        j_x = 1e3 * b0 if args.jx is None else args.jx
        j_z = 0.0
        lo, hi = 1e-3, 1e6
    else:
        if args.axis is None:
            raise UsageError("custom preset needs --axis")
        axis = args.axis
        j_x = args.jx if args.jx is not None else 0.0
        j_z = args.jz if args.jz is not None else 0.0
        lo, hi = 1.0, 10.0
    if args.lo is not None:
        lo = args.lo
    if args.hi is not None:
        hi = args.hi
    return SweepSpec(
        preset=preset, axis=axis, j_x=j_x, j_z=j_z, b0=b0, thetas=thetas,
        grid=args.grid, lo=lo, hi=hi, count=args.count,
    )


def sweep_records(spec: SweepSpec):
    """Grid-major, level-minor rows over (theta, ratio) points."""
    rows = []
    for theta in spec.thetas:
        base = ModelParams(spec.j_x, spec.j_z, spec.b0, theta)
        for ratio in spec.ratios():
            params = observables.params_at_ratio(base, spec.axis, float(ratio))
            rows.extend(point_records(params))
    return rows


def cmd_sweep(args) -> int:
    spec = resolve_sweep_spec(args)
    rows = sweep_records(spec)
    text = format_json(rows) if args.format == "json" else format_csv(rows)
    return _emit(text, args.out)


def cmd_check(args) -> int:
    if args.samples < 1:
        raise UsageError(f"samples must be >= 1, got {args.samples}")
    tol = CheckTolerances(
        root_residual=args.tol_root,
        eig_mismatch=args.tol_eig,
        berry_mismatch=args.tol_berry,
        conc_mismatch=args.tol_conc,
        symmetry=args.tol_symmetry,
    )
    summary = run_suite(args.samples, args.seed, tol)
    code = _emit(json.dumps(summary, indent=2) + "\n", args.out)
    if code != EXIT_OK:
        return code
    if not summary["pass"]:
        offenders = ", ".join(str(v["params"]) for v in summary["violations"][:5])
        print(f"xxzpair: check failed at tuples: {offenders}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_evolve(args) -> int:
    params = _point_params(args)
    if args.n not in (0, 1, 2, 3):
        raise UsageError(f"level index must be 0..3, got {args.n}")
    try:
        sched = adiabatic.default_schedule(params, omega=args.omega, steps=args.steps)
    except ValueError as exc:
        raise UsageError(str(exc))
    try:
        result = adiabatic.evolve(params, sched, args.n)
    except (DegenerateInput, DegenerateSpectrum) as exc:
        print(f"xxzpair: degenerate: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE

    if args.n == 0:
        analytic = 0.0
    else:
        sol = spectrum.triplet_solutions(params)[args.n - 1]
        analytic = observables.berry_phase(sol)
    analytic_mod = wrap_angle(analytic)

    lines = [
        f"adiabatic run: level n={args.n}, omega={_fmt(sched.omega)}, "
        f"steps={sched.steps}, period={_fmt(sched.period)}",
        f"  min gap            {_fmt(result.min_gap)}",
        f"  fidelity           {result.fidelity:.9f}",
        f"  dynamical phase    {result.dynamical_phase:.9f}",
        f"  total phase        {result.total_phase:.9f}",
        f"  norm correction    {result.norm_correction:.3e}",
    ]
    violated = result.adiabaticity_violated
    if violated:
        lines.append("  geometric phase    unreliable (fidelity below threshold)")
        print("xxzpair: warning: adiabaticity violated; "
              "decrease omega for a meaningful phase", file=sys.stderr)
    else:
        geo = adiabatic.geometric_phase(result)
        lines.append(
            f"  geometric phase    {geo:.9f}  "
            f"(analytic mod 2pi {analytic_mod:.9f}, "
            f"distance {angular_distance(geo, analytic_mod):.3e})"
        )
    code = _emit("\n".join(lines) + "\n", args.out)
    if code != EXIT_OK:
        return code
    if violated and args.strict:
        return EXIT_ADIABATICITY
    return EXIT_OK


def cmd_tables(args) -> int:
    theta = args.theta
    results = limits.check_all(theta, b0=args.b0)
    lines = [
        f"limit-table check at theta={_fmt(theta)} "
        f"(cos theta = {math.cos(theta):+.6f}), b0={_fmt(args.b0)}",
    ]
    checked = passed = skipped = 0
    for regime in limits.REGIMES:
        rows = results[regime.key]
        lines.append(
            f"table {regime.table}, column {regime.label} "
            f"[j_x/b0={_fmt(regime.j_x_over_b0)}, j_z/b0={_fmt(regime.j_z_over_b0)}]"
        )
        for row in rows:
            if row["skipped"]:
                skipped += 1
                lines.append(
                    f"  n={row['level']}  C={row['conc']:.6f} "
                    f"gamma/2pi undefined  SKIP (degenerate pair)"
                )
                continue
            checked += 1
            ok = row["ok"]
            passed += int(ok)
            lines.append(
                f"  n={row['level']}  C={row['conc']:.6f} (exp {row['conc_expected']:.6f})  "
                f"gamma/2pi={row['berry2pi']:+.6f} (exp {row['berry2pi_expected']:+.6f})  "
                f"{'PASS' if ok else 'FAIL'}"
            )
    lines.append(
        f"summary: {checked} cells checked, {passed} pass, "
        f"{checked - passed} fail, {skipped} skipped"
    )
    return _emit("\n".join(lines) + "\n", args.out)


COMMANDS = {
    "eigen": cmd_eigen,
    "sweep": cmd_sweep,
    "check": cmd_check,
    "evolve": cmd_evolve,
    "tables": cmd_tables,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("missing command (eigen|sweep|check|evolve|tables)")
        if getattr(args, "config", None):
            try:
                defaults = load_config(args.config, parser)
            except OSError as exc:
                print(f"xxzpair: cannot read config: {exc}", file=sys.stderr)
                return EXIT_IO
            parser = build_parser()
            parser.set_defaults(**defaults)
            args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"xxzpair: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
