"""Command-line front end.

Subcommands: ``point``, ``sweep``, ``oracle-stationary``, ``oracle-wavepacket``
and ``verify``. Exit codes: 0 success, 1 usage error, 2 computation error,
3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import __version__
from .errors import CavitySwitchError, InvalidParameters
from .model import ModelParams, make_point, rwa_validity
from .oracle import DEFAULT_HALF_LENGTH, LatticeProblem, WavepacketSpec, run_wavepacket, solve_stationary
from .scattering import Branch, scattering_amplitudes
from .svgplot import line_chart
from .sweep import DEFAULT_SAMPLES, PRESETS, Axis, SweepSpec, preset, run_sweep
from .verification import DEFAULT_SIZES, run_verification

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE, EXIT_VERIFY = 0, 1, 2, 3

_PARAM_FLAGS = {
    "omega_a": "--omega-a",
    "omega_b": "--omega-b",
    "omega_2": "--omega-2",
    "omega_3": "--omega-3",
    "xi": "--xi",
    "g_a": "--g-a",
    "g_b": "--g-b",
    "n": "--n",
}
_SWEEP_KEYS = {"axis", "lo", "hi", "m", "k", "oracle_check", "delta_b"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(x: float) -> str:
    return f"{x:.12g}"


def fmt_complex(z: complex) -> str:
    return f"{z.real:.12g}{z.imag:+.12g}j"


def _add_param_options(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("model parameters (units of g_a)")
    g.add_argument("--preset", choices=sorted(PRESETS), help="start from a figure preset")
    g.add_argument("--config", type=Path, help="JSON file with parameter (and sweep) keys")
    for name, flag in _PARAM_FLAGS.items():
        g.add_argument(flag, dest=name, type=int if name == "n" else float)
    g.add_argument("--delta-b", dest="delta_b", type=float, help="set omega_3 so that delta_b has this value")


def _load_config(path: Path | None) -> dict:
    if path is None:
        return {}
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None
    if not isinstance(data, dict):
        raise UsageError("config must be a JSON object")
    unknown = set(data) - set(_PARAM_FLAGS) - _SWEEP_KEYS
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    return data


def _resolve(args) -> tuple[ModelParams, SweepSpec | None, dict]:
    """Combine preset, config file and flags (in increasing priority)."""
    config = _load_config(args.config)
    spec = preset(args.preset) if args.preset else None
    values = spec.base.to_dict() if spec else {}
    values.update({k: v for k, v in config.items() if k in _PARAM_FLAGS})
    values.update({k: getattr(args, k) for k in _PARAM_FLAGS if getattr(args, k) is not None})
    values.setdefault("g_a", 1.0)
    missing = [k for k in ("omega_a", "omega_b", "omega_2", "omega_3", "xi") if k not in values]
    if missing:
        raise UsageError("missing parameters: " + ", ".join(_PARAM_FLAGS[k] for k in missing))
    try:
        params = ModelParams.from_dict(values)
        delta_b = args.delta_b if args.delta_b is not None else config.get("delta_b")
        if delta_b is not None:
            params = params.with_delta_b(float(delta_b))
    except InvalidParameters as exc:
        raise UsageError(str(exc)) from None
    report = rwa_validity(params)
    if not report.valid and math.isinf(report.ratio):
        print("warning: omega_2 or omega_3 is not positive; the rotating-wave check needs absolute "
              "transition frequencies (only differences enter r and t)", file=sys.stderr)
    elif not report.valid:
        print(
            f"warning: g_b*sqrt(n)/min(omega_2, omega_3) = {fmt(report.ratio)} > {report.threshold:g}; "
            "outside the rotating-wave regime",
            file=sys.stderr,
        )
    return params, spec, config


def cmd_point(args) -> int:
    params, spec, config = _resolve(args)
    k = args.k if args.k is not None else config.get("k", spec.k if spec else None)
    if k is None:
        raise UsageError("point needs --k")
    point = make_point(params, k)
    res = scattering_amplitudes(params, point)
    if res.branch is Branch.BAND_EDGE:
        print(
            f"error: BandEdge: k={fmt(point.k)} has sin k = 0 (zero group velocity); "
            "no propagating photon, r=-1 t=0 is only the formal limit",
            file=sys.stderr,
        )
        return EXIT_COMPUTE
    for name in ("k", "Omega_k", "E", "delta_a", "delta_b"):
        print(f"{name}={fmt(getattr(point, name))}")
    print(f"r={fmt_complex(res.r)}")
    print(f"t={fmt_complex(res.t)}")
    print(f"R={fmt(res.R)}")
    print(f"T={fmt(res.T)}")
    print(f"branch={res.branch.value}")
    return EXIT_OK


def _sweep_spec(args) -> SweepSpec:
    params, spec, config = _resolve(args)
    axis = args.axis or config.get("axis") or (spec.axis.value if spec else None)
    if axis is None:
        raise UsageError("sweep needs --axis or --preset")
    try:
        axis = Axis(axis)
    except ValueError:
        raise UsageError(f"unknown axis {axis!r}") from None
    same_axis = spec is not None and spec.axis is axis

    def pick(name, default=None):
        value = getattr(args, name)
        if value is None:
            value = config.get(name)
        if value is None and same_axis:
            value = getattr(spec, name)
        return default if value is None else value

    lo = pick("lo", -math.pi if axis is Axis.K else None)
    hi = pick("hi", math.pi if axis is Axis.K else None)
    if lo is None or hi is None:
        raise UsageError("sweep needs --lo and --hi")
    try:
        return SweepSpec(
            base=params,
            axis=axis,
            lo=lo,
            hi=hi,
            m=pick("m", DEFAULT_SAMPLES),
            k=pick("k"),
            oracle_check=bool(args.oracle_check or config.get("oracle_check", False)),
            name=args.preset,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_sweep(args) -> int:
    spec = _sweep_spec(args)
    table = run_sweep(spec, workers=args.workers)
    output = args.output
    try:
        if args.format in ("csv", "both"):
            if output is None:
                table.write_csv(sys.stdout)
            else:
                table.to_csv(output)
        if args.format in ("svg", "both"):
            if output is None:
                raise UsageError("svg output needs -o/--output")
            svg_path = output if args.format == "svg" else output.with_suffix(".svg")
            svg = line_chart(
                table.axis_values,
                {"R": table.R, "T": table.T},
                title=spec.name or f"sweep over {spec.axis.value}",
                xlabel=spec.axis.value,
            )
            svg_path.write_text(svg)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_COMPUTE

    s = table.summary()
    parts = [
        f"rows={s['rows']}",
        f"errors={s['errors']}",
        f"band_edge={s['band_edge']}",
        f"T_min={fmt(s['T_min'])}",
        f"T_max={fmt(s['T_max'])}",
    ]
    for key, values in s["loci"].items():
        parts.append(f"{key}=[{', '.join(fmt(v) for v in values)}]")
    if spec.oracle_check:
        parts.append(f"max_dr={fmt(s['max_dr'])}")
        parts.append(f"max_dt={fmt(s['max_dt'])}")
    print("summary: " + " ".join(parts), file=sys.stderr if output is None else sys.stdout)
    return EXIT_OK


def cmd_oracle_stationary(args) -> int:
    params, spec, config = _resolve(args)
    k = args.k if args.k is not None else config.get("k", spec.k if spec else None)
    if k is None:
        raise UsageError("oracle-stationary needs --k")
    sol = solve_stationary(LatticeProblem(params, args.half_length), k)
    closed = scattering_amplitudes(params, make_point(params, k))
    print(f"r_fit={fmt_complex(sol.r_fit)}")
    print(f"t_fit={fmt_complex(sol.t_fit)}")
    print(f"r_closed={fmt_complex(closed.r)}")
    print(f"t_closed={fmt_complex(closed.t)}")
    print(f"dr_abs={fmt(abs(sol.r_fit - closed.r))}")
    print(f"dt_abs={fmt(abs(sol.t_fit - closed.t))}")
    print(f"equation_residual={fmt(sol.residual)}")
    return EXIT_OK


def cmd_oracle_wavepacket(args) -> int:
    params, spec, config = _resolve(args)
    k0 = args.k0 if args.k0 is not None else config.get("k", spec.k if spec else None)
    if k0 is None:
        raise UsageError("oracle-wavepacket needs --k0")
    try:
        wp = WavepacketSpec(
            params,
            k0,
            sigma=args.sigma,
            chain_length=args.chain_length,
            method=args.method,
            emitter_coupled=not args.decouple,
        )
        run = run_wavepacket(wp)
    except ValueError as exc:
        if isinstance(exc, CavitySwitchError):
            raise
        raise UsageError(str(exc)) from None
    if args.csv:
        run.to_csv(args.csv)
    expected = scattering_amplitudes(params, make_point(params, k0)).T
    print(f"T_measured={fmt(run.T_measured)}")
    print(f"R_measured={fmt(run.R_measured)}")
    print(f"residual={fmt(run.residual)}")
    print(f"T_closed={fmt(expected)}")
    print(f"norm_drift={fmt(run.norm_drift)}")
    print(f"max_abs_zeta={fmt(run.max_zeta)}")
    return EXIT_OK


def cmd_verify(args) -> int:
    sizes = {key: getattr(args, key) for key in DEFAULT_SIZES if getattr(args, key) is not None}
    report = run_verification(args.seed, sizes, with_wavepacket=args.with_wavepacket)
    for line in report.lines(timings=args.timings):
        print(line)
    return EXIT_OK if report.passed else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cavityswitch", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("point", help="r, t at a single momentum")
    _add_param_options(p)
    p.add_argument("--k", type=float)
    p.set_defaults(func=cmd_point)

    p = sub.add_parser("sweep", help="R, T along one axis")
    _add_param_options(p)
    p.add_argument("--axis", choices=[a.value for a in Axis])
    p.add_argument("--lo", type=float)
    p.add_argument("--hi", type=float)
    p.add_argument("--m", type=int, help=f"samples (default {DEFAULT_SAMPLES})")
    p.add_argument("--k", type=float, help="fixed momentum for delta_b / gb2n sweeps")
    p.add_argument("--oracle-check", action="store_true", help="co-run the stationary lattice oracle")
    p.add_argument("--workers", type=int, help="threads for oracle checks (capped by WQED_THREADS)")
    p.add_argument("-o", "--output", type=Path)
    p.add_argument("--format", choices=["csv", "svg", "both"], default="csv")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("oracle-stationary", help="finite-lattice stationary solve")
    _add_param_options(p)
    p.add_argument("--k", type=float)
    p.add_argument("--half-length", type=int, default=DEFAULT_HALF_LENGTH)
    p.set_defaults(func=cmd_oracle_stationary)

    p = sub.add_parser("oracle-wavepacket", help="time-domain Gaussian wavepacket run")
    _add_param_options(p)
    p.add_argument("--k0", type=float)
    p.add_argument("--sigma", type=float, default=15.0)
    p.add_argument("--chain-length", type=int, default=2001)
    p.add_argument("--method", choices=["spectral", "crank-nicolson"], default="spectral")
    p.add_argument("--decouple", action="store_true", help="remove the emitter coupling (free chain)")
    p.add_argument("--csv", type=Path, help="write the time record here")
    p.set_defaults(func=cmd_oracle_wavepacket)

    p = sub.add_parser("verify", help="run the property suites")
    p.add_argument("--seed", type=int, default=0)
    for key, default in DEFAULT_SIZES.items():
        p.add_argument(f"--{key}", type=int, help=f"sample count (default {default})")
    p.add_argument("--with-wavepacket", action="store_true")
    p.add_argument("--timings", action="store_true", help="append wall times (output no longer reproducible)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CavitySwitchError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
