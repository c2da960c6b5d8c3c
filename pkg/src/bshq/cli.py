"""``bshq`` command line.

Exit codes: 0 success, 1 verification failure, 2 usage error (including
inputs the construction rejects, such as half-integer spin), 3 I/O error.
"""

import argparse
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from bshq import grouprep, oscillator, spectrum, spin
from bshq.config import QuantizationConfig
from bshq.errors import BSHQError
from bshq.expr import parse_expr
from bshq.lattice import window_lattice
from bshq.opalg import matrix_exp, to_dense
from bshq.quantize import quantize_expr, verify_shift_commutation
from bshq.serialize import banded_to_json, dense_to_json, dumps, report_to_json, spin_to_json

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class RunSpec:
    subcommand: str
    parameters: dict = field(default_factory=dict)
    output_path: str | None = None
    format: str = "json"


def _int_param(params, key, name=None):
    value = params[key]
    as_float = float(value)
    if not as_float.is_integer():
        raise UsageError(f"--{name or key} must be an integer, got {value}")
    return int(as_float)


def _spin_param(params):
    s = float(params["s"])
    if s < 0 or not (2 * s).is_integer():
        raise UsageError(f"--s must be a non-negative integer, got {params['s']}")
    if not s.is_integer():
        raise UsageError(
            f"--s {params['s']}: half-integer spin is not supported; "
            "the construction assumes s = n/2 is an integer"
        )
    return int(s)


def _config(params):
    return QuantizationConfig(hbar=float(params.get("hbar", 1.0)))


def _parse_windows(text):
    windows = []
    for part in text.split(","):
        try:
            lo, hi = part.split(":")
            windows.append((int(lo), int(hi)))
        except ValueError:
            raise UsageError(f"bad window {part!r}; expected lo:hi") from None
    return windows


def _oscillator(params):
    basis = oscillator.OscillatorBasis(
        ground_index=_int_param(params, "ground"),
        top=_int_param(params, "n_max", "n-max"),
        config=_config(params),
    )
    b, bdag = oscillator.build_b(basis)
    ops = {
        "Qp": oscillator.build_q_p(basis),
        "Qq": oscillator.build_q_q(basis),
        "QH": oscillator.build_q_h(basis),
        "b": b,
        "bdagger": bdag,
    }
    out = {name: dense_to_json(to_dense(op)) for name, op in ops.items()}
    out.update(ground=basis.ground_index, n_max=basis.top, hbar=basis.config.hbar)
    return dumps(out), EXIT_OK


def _spin(params):
    rep = spin.build_spin_matrices(_spin_param(params), _config(params).hbar)
    return dumps(spin_to_json(rep)), EXIT_OK


def _rep(params):
    rep = spin.build_spin_matrices(_spin_param(params), _config(params).hbar)
    try:
        axis = np.array([float(x) for x in params["axis"].split(",")])
    except ValueError:
        raise UsageError(f"bad --axis {params['axis']!r}") from None
    if axis.shape != (3,) or not np.linalg.norm(axis) > 0:
        raise UsageError("--axis needs three components, not all zero")
    angle = float(params["angle"])
    x = angle * axis / np.linalg.norm(axis)
    # exp(rho(x)) is U(exp hat(x)) on every branch for integer spin
    u = matrix_exp(grouprep.rho(rep, x))
    out = {
        "s": rep.s,
        "hbar": rep.hbar,
        "axis": [float(a) for a in axis],
        "angle": angle,
        "U": dense_to_json(u),
    }
    return dumps(out), EXIT_OK


def _spectrum(params):
    problem = params["problem"]
    k = params.get("k")
    ell = float(params.get("ell") if params.get("ell") is not None else 1.0)
    if problem == "oscillator":
        prob = spectrum.oscillator_problem()
    elif problem == "coulomb":
        prob = spectrum.coulomb_problem(float(k) if k is not None else 1.0, ell)
    elif problem == "relativistic-kepler":
        mass = float(params.get("mass") if params.get("mass") is not None else 1.0)
        prob = spectrum.relativistic_kepler_problem(float(k) if k is not None else -0.5, ell, mass)
    else:
        raise UsageError(f"unknown problem {problem!r}")
    m_from = _int_param(params, "m_from", "m-from")
    m_to = _int_param(params, "m_to", "m-to")
    if m_to < m_from:
        raise UsageError("--m-to must not be below --m-from")
    mu = float(params.get("mu") or 0.0)
    table = spectrum.bs_levels(prob, range(m_from, m_to + 1), _config(params), maslov=mu)
    failed = any(r.error for r in table.rows)
    return table.to_csv(), (EXIT_VERIFY if failed else EXIT_OK)


def _quantize(params):
    n = _int_param(params, "n")
    windows = _parse_windows(params["window"])
    if len(windows) != n:
        raise UsageError(f"--window lists {len(windows)} axes, --n is {n}")
    lat = window_lattice(windows, _config(params))
    ast = parse_expr(params["expr"], n)
    op = quantize_expr(lat, ast.lower()).pruned()
    out = banded_to_json(op)
    out["expr"] = params["expr"]
    return dumps(out), EXIT_OK


def _verify(params):
    system = params["system"]
    seed = params.get("seed")
    tol = params.get("tol")
    tol = None if tol is None else float(tol)
    cfg = _config(params)
    extra = {"system": system}
    if system == "oscillator":
        basis = oscillator.OscillatorBasis(
            ground_index=_int_param(params, "ground"),
            top=_int_param(params, "n_max", "n-max"),
            config=cfg,
        )
        report = oscillator.verify_oscillator(basis, tol)
    elif system == "spin":
        rep = spin.build_spin_matrices(_spin_param(params), cfg.hbar)
        report = spin.verify_so3(rep, 1e-10 if tol is None else tol)
        extra["s"] = rep.s
    elif system == "rep":
        if seed is None:
            raise UsageError("verify --system rep requires an explicit --seed")
        rep = spin.build_spin_matrices(_spin_param(params), cfg.hbar)
        report = grouprep.verify_homomorphism(
            rep, _int_param(params, "samples"), 1e-8 if tol is None else tol, int(seed)
        )
        extra["s"] = rep.s
    elif system == "shift":
        windows = _parse_windows(params["window"])
        lat = window_lattice(windows, cfg)
        report = verify_shift_commutation(lat, 1e-12 if tol is None else tol)
        extra["windows"] = [list(w) for w in windows]
    else:
        raise UsageError(f"unknown system {system!r}")
    if seed is not None:
        extra["seed"] = int(seed)
    return dumps(report_to_json(report, **extra)), (EXIT_OK if report.passed else EXIT_VERIFY)


HANDLERS = {
    "oscillator": _oscillator,
    "spin": _spin,
    "rep": _rep,
    "spectrum": _spectrum,
    "quantize": _quantize,
    "verify": _verify,
}


def run(spec):
    """Execute one subcommand and write its artifact; returns the exit code."""
    handler = HANDLERS.get(spec.subcommand)
    if handler is None:
        print(f"bshq: unknown subcommand {spec.subcommand!r}", file=sys.stderr)
        return EXIT_USAGE
    try:
        text, code = handler(spec.parameters)
    except (UsageError, BSHQError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"bshq {spec.subcommand}: {msg}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if spec.output_path in (None, "-"):
            sys.stdout.write(text)
        else:
            with open(spec.output_path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
    except OSError as exc:
        print(f"bshq {spec.subcommand}: {exc}", file=sys.stderr)
        return EXIT_IO
    return code


def build_parser():
    parser = argparse.ArgumentParser(prog="bshq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name, help_, fmt="json"):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--out", default=None, help="output file (stdout if omitted)")
        p.add_argument("--hbar", type=float, default=1.0)
        p.set_defaults(format=fmt)
        return p

    p = add("oscillator", "harmonic oscillator matrices")
    p.add_argument("--n-max", required=True)
    p.add_argument("--ground", default="1", choices=["0", "1"])

    p = add("spin", "spin-s matrices")
    p.add_argument("--s", required=True)

    p = add("rep", "group representation matrix U(g) for an axis-angle rotation")
    p.add_argument("--s", required=True)
    p.add_argument("--axis", required=True, help="x,y,z")
    p.add_argument("--angle", required=True, type=float)

    p = add("spectrum", "Bohr-Sommerfeld levels as CSV", fmt="csv")
    p.add_argument("--problem", required=True, choices=["oscillator", "coulomb", "relativistic-kepler"])
    p.add_argument("--k", type=float)
    p.add_argument("--ell", type=float)
    p.add_argument("--mu", type=float, default=0.0, help="Maslov index; condition A = (m + mu/2) hbar")
    p.add_argument("--mass", type=float)
    p.add_argument("--m-from", required=True)
    p.add_argument("--m-to", required=True)

    p = add("quantize", "banded operator of an observable expression")
    p.add_argument("--n", required=True)
    p.add_argument("--window", required=True, help="lo:hi[,lo:hi...]")
    p.add_argument("--expr", required=True)

    p = add("verify", "identity checks; exit code reflects pass/fail")
    p.add_argument("--system", required=True, choices=["oscillator", "spin", "rep", "shift"])
    p.add_argument("--seed", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--s", default="1")
    p.add_argument("--samples", default="200")
    p.add_argument("--n-max", default="100")
    p.add_argument("--ground", default="0", choices=["0", "1"])
    p.add_argument("--window", default="1:100")
    return parser


def spec_from_args(argv):
    args = vars(build_parser().parse_args(argv))
    sub = args.pop("subcommand")
    out = args.pop("out")
    fmt = args.pop("format")
    return RunSpec(sub, args, out, fmt)


def main(argv=None):
    try:
        spec = spec_from_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    return run(spec)


if __name__ == "__main__":
    sys.exit(main())
