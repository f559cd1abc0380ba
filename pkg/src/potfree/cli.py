"""Command-line front end: figure- and table-ready data as CSV or JSON.

Exit codes: 0 on success, 2 on invalid input, 1 when a computation fails.
"""

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile

import numpy as np

from . import basis, classical, hamiltonian, scattering, spectra

__all__ = ["main", "run", "SYSTEMS"]


class UsageError(ValueError):
    """Bad flags or parameter values; reported with exit code 2."""


# name -> (constructor, ordered parameter names, defaults)
SYSTEMS = {
    "coulomb": (spectra.coulomb, ("Z", "l"), {"Z": 1.0, "l": 0}),
    "log-mp": (spectra.log_mp, ("lam", "beta", "V0", "l"), {"lam": 1.0, "beta": 0.1, "V0": 1.0, "l": 0}),
    "power-mp": (spectra.power_mp, ("lam", "l", "mu"), {"lam": 1.0, "l": 0, "mu": 1.0}),
    "morse": (spectra.morse_cdh, ("alpha", "beta", "V0"), {"alpha": 1.0, "beta": 1.0, "V0": 2.0}),
    "linear-cdh": (spectra.linear_cdh, ("alpha", "mu", "a", "b"), {"alpha": 1.0, "mu": -1.2, "a": 5.0, "b": 7.0}),
    "log-cdh": (spectra.log_cdh, ("alpha", "beta", "mu", "a", "b"),
                {"alpha": 1.0, "beta": 1.0, "mu": -1.3, "a": 2.0, "b": 2.5}),
    "power-cdh": (spectra.power_cdh, ("alpha", "l", "mu", "a", "b"),
                  {"alpha": 1.0, "l": 1, "mu": -2.4, "a": 3.0, "b": 3.5}),
    "resonance": (spectra.resonance_system, ("alpha", "beta"), {"alpha": 1.0, "beta": 0.9}),
}
_INT_PARAMS = {"l"}
_ALL_PARAMS = sorted({p for _, names, _ in SYSTEMS.values() for p in names})

# local-potential reconstruction setups: potential, basis, default window
_RECONSTRUCT = {
    "morse": (lambda x: 2 * (np.exp(-2 * x) - 2 * np.exp(-x)),
              basis.BasisSpec("jacobi", 4.0, alpha=0.0, beta=2.0, coord="tanh"),
              (-math.atanh(0.5) / 4, math.atanh(0.5) / 4)),
    "coulomb": (lambda x: -1.0 / x, basis.BasisSpec("laguerre", 1.0, nu=32.0), (10.0, 40.0)),
    "oscillator": (lambda x: 0.5 * x * x, basis.BasisSpec("hermite", 1.0), (-2.0, 2.0)),
}


def fmt(value):
    """Twelve significant digits, lowercase exponent; integers stay integers."""
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    if isinstance(value, str):
        return value
    return "%.12g" % float(value)


def _records_to_csv(columns, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    writer.writerows([fmt(v) for v in row] for row in rows)
    return buf.getvalue()


def _records_to_json(columns, rows):
    # floats go through the same 12-digit formatting as CSV so both agree
    recs = []
    for row in rows:
        rec = {}
        for c, v in zip(columns, row):
            if isinstance(v, str):
                rec[c] = v
            elif not math.isfinite(v):
                rec[c] = None
            else:
                rec[c] = json.loads(fmt(v))
        recs.append(rec)
    return json.dumps(recs, indent=1) + "\n"


def render(columns, rows, form):
    return _records_to_csv(columns, rows) if form == "csv" else _records_to_json(columns, rows)


def _write(text, path):
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".potfree-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _parse_range(text):
    """'3' -> [3]; '0..3' -> [0, 1, 2, 3]; '0,2' -> [0, 2]."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            out = list(range(int(lo), int(hi) + 1))
        else:
            out = [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"cannot parse index range {text!r}") from None
    if not out or min(out) < 0:
        raise UsageError("indices must be nonnegative")
    return out


def build_catalog_system(name, args):
    if name not in SYSTEMS:
        raise UsageError(f"unknown system {name!r}; run list-systems")
    ctor, names, defaults = SYSTEMS[name]
    values = []
    for p in names:
        v = getattr(args, p, None)
        v = defaults[p] if v is None else v
        if p in _INT_PARAMS:
            if float(v) != int(v) or v < 0:
                raise UsageError("l must be a nonnegative integer")
            v = int(v)
        values.append(v)
    try:
        return ctor(*values)
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from None


def _energy_scale(args, system=None):
    if args.units == "atomic":
        return 1.0
    alpha = getattr(args, "alpha", None)
    if alpha is None and system is not None:
        alpha = SYSTEMS[system.name][2].get("alpha")
    if alpha is None:
        raise UsageError("--units alpha2 needs a system with an alpha parameter")
    return 1.0 / alpha ** 2


# --- subcommands ----------------------------------------------------------------


def cmd_spectrum(args):
    system = build_catalog_system(args.system, args)
    if args.n < 0:
        raise UsageError("--n must be nonnegative")
    scale = _energy_scale(args, system)
    spec = spectra.bound_states(system, count=args.n)
    rows = [(i, e * scale) for i, e in enumerate(spec.bound[: args.n])]
    return ["n", "E"], rows


def cmd_phase_shift(args):
    system = build_catalog_system(args.system, args)
    if not 0 < args.k_min < args.k_max or args.points < 2:
        raise UsageError("need 0 < k-min < k-max and at least 2 points")
    ks = np.linspace(args.k_min, args.k_max, args.points)
    delta = scattering.phase_shift_sweep(system, ks)
    amp = scattering.amplitude_closed(system, ks)
    return ["k", "delta", "amplitude"], list(zip(ks, delta, amp))


def cmd_resonances(args):
    if not (args.alpha > 0 and args.beta > 0):
        raise UsageError("alpha and beta must be positive")
    if args.n_max < 0:
        raise UsageError("--n-max must be nonnegative")
    scale = _energy_scale(args)
    spec = spectra.resonances(args.alpha, args.beta, args.n_max)
    energies = [complex(spec.bound[0])] + list(spec.resonances)
    rows = [(n, e.real * scale, e.imag * scale) for n, e in enumerate(energies)]
    return ["n", "re_E", "im_E"], rows


def _grid(args):
    if not args.x_min < args.x_max or args.points < 2:
        raise UsageError("need x-min < x-max and at least 2 points")
    return np.linspace(args.x_min, args.x_max, args.points)


def cmd_wavefunction(args):
    x = _grid(args)
    indices = _parse_range(args.m)
    if args.system == "resonance":
        alpha = 1.0 if args.alpha is None else args.alpha
        beta = 0.9 if args.beta is None else args.beta
        if not (alpha > 0 and beta > 0):
            raise UsageError("alpha and beta must be positive")
        waves = [basis.resonance_wavefunction(alpha, beta, m, x, N_terms=args.n_terms).values for m in indices]
    else:
        system = build_catalog_system(args.system, args)
        if args.energy is not None:
            if args.n_terms is None:
                raise UsageError("scattering states need --n-terms")
            waves = [basis.scattering_wavefunction(system, args.energy, x, args.n_terms).values]
            indices = ["E"]
        else:
            waves = [basis.bound_wavefunction(system, m, x).values for m in indices]
    columns = ["x"] + [f"abs_psi_{m}" for m in indices]
    rows = [(xi, *(float(abs(w[i])) for w in waves)) for i, xi in enumerate(x)]
    return columns, rows


def cmd_reconstruct(args):
    V, spec, window = _RECONSTRUCT[args.potential]
    lo = window[0] if args.x_min is None else args.x_min
    hi = window[1] if args.x_max is None else args.x_max
    if not lo < hi or args.points < 2 or args.N < 1:
        raise UsageError("need x-min < x-max, N >= 1 and at least 2 points")
    x = np.linspace(lo, hi, args.points)
    Vmat = hamiltonian.potential_matrix(V, spec, args.N)
    approx = hamiltonian.reconstruct_local_potential(Vmat, spec, x)
    return ["x", "V_local", "V_exact"], list(zip(x, approx, V(x)))


def cmd_list_systems(args):
    rows = []
    for name, (ctor, names, defaults) in SYSTEMS.items():
        entry = ctor(*(defaults[p] for p in names))
        rows.append((name, entry.family, " ".join(names), entry.description))
    return ["name", "family", "parameters", "description"], rows


def _check(name, value, tol, passed=None):
    ok = value <= tol if passed is None else passed
    return name, value, tol, "pass" if ok else "fail"


def _suite_spectra():
    out = []
    c = spectra.coulomb(1.0, 0)
    e = spectra.bound_states(c, 5).bound
    out.append(_check("coulomb closed form", max(abs(e[n] + 0.5 / (n + 1) ** 2) for n in range(5)), 1e-12))
    for name, sys_ in spectra.catalog().items():
        if name == "resonance":
            continue
        spec = spectra.bound_states(sys_, 3)
        worst = 0.0
        for n in range(min(3, len(spec.bound))):
            worst = max(worst, abs(spectra.verify_bound_by_amplitude_zero(sys_, n) - spec.bound[n])
                        / max(1.0, abs(spec.bound[n])))
        out.append(_check(f"{name} amplitude zeros", worst, 1e-10))
    r = spectra.resonances(1.0, 0.9, 8)
    ok = all(z.imag < 0 and z.real > 0 for z in r.resonances)
    out.append(_check("resonance half-plane", 0.0, 0.0, ok))
    return out


def _suite_scattering():
    sys_ = spectra.coulomb(1.0, 0)
    ref = scattering.phase_shift_closed(sys_, 1.0)
    n, vals = scattering.weighted_tail(sys_.polynomial_params(1.0), sys_.mapping.y(1.0), 4096, 512)
    fit = scattering.fit_tail_phase(vals, scattering.model_for(sys_.params, sys_.mapping.y(1.0)), (4096, 512))
    diff = abs(scattering.reduce_mod_pi(fit.phase - ref))
    return [_check("coulomb tail-fit phase", float(min(diff, math.pi - diff)), 1e-3)]


def _suite_basis():
    worst = 0.0
    for spec in (basis.BasisSpec("hermite", 1.0), basis.BasisSpec("laguerre", 1.0, nu=1.0),
                 basis.BasisSpec("jacobi", 1.0, alpha=0.5, beta=0.5, coord="tanh")):
        worst = max(worst, float(np.max(np.abs(basis.basis_gram(spec, 11) - np.eye(11)))))
    return [_check("basis orthonormality", worst, 1e-8)]


def _suite_classical():
    out = []
    grids = {
        "Oscillator": np.linspace(-3, 3, 25), "PoschlTeller": np.linspace(-1.3, 1.3, 25),
        "Coulomb3D": np.linspace(0.5, 15, 25), "Table1Jacobi": np.linspace(-1.3, 1.3, 25),
        "Table1GenHermite": np.linspace(0.3, 3, 25),
    }
    for sid, x in grids.items():
        s = classical.build_system(sid)
        out.append(_check(f"{sid} residual", max(classical.schrodinger_residual(s, n, x) for n in range(4)), 1e-6))
    return out


def _suite_hamiltonian():
    spec = basis.BasisSpec("hermite", 1.0)
    T = hamiltonian.kinetic_matrix(spec, 6).values
    V = hamiltonian.potential_matrix(lambda x: 0.5 * x * x, spec, 6).values
    err = float(np.max(np.abs(T + V - np.diag(np.arange(6) + 0.5))))
    return [_check("oscillator closure", err, 1e-7)]


_SUITES = {
    "spectra": _suite_spectra,
    "scattering": _suite_scattering,
    "basis": _suite_basis,
    "classical": _suite_classical,
    "hamiltonian": _suite_hamiltonian,
}


def cmd_verify(args):
    names = list(_SUITES) if args.suite == "all" else [args.suite]
    rows = []
    for name in names:
        rows += [(name, *r) for r in _SUITES[name]()]
    return ["suite", "check", "value", "tolerance", "status"], rows


# --- parser ---------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_output(p):
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", default=None, help="file path (default: stdout)")


def _add_system_params(p):
    for name in _ALL_PARAMS:
        p.add_argument(f"--{name}", type=float, default=None)


def build_parser():
    parser = _Parser(prog="potfree", description="Energy-polynomial quantum systems: data for tables and figures.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("spectrum", help="bound-state energies")
    p.add_argument("--system", required=True)
    p.add_argument("--n", type=int, default=5, help="number of levels")
    p.add_argument("--units", choices=("atomic", "alpha2"), default="atomic")
    _add_system_params(p)
    _add_output(p)

    p = sub.add_parser("phase-shift", help="phase shift and amplitude on a k-grid")
    p.add_argument("--system", required=True)
    p.add_argument("--k-min", type=float, default=0.1)
    p.add_argument("--k-max", type=float, default=5.0)
    p.add_argument("--points", type=int, default=50)
    _add_system_params(p)
    _add_output(p)

    p = sub.add_parser("resonances", help="bound state and resonances of the inverse-mu system")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=0.9)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--units", choices=("atomic", "alpha2"), default="atomic")
    _add_output(p)

    p = sub.add_parser("wavefunction", help="|psi| on an x-grid")
    p.add_argument("--system", required=True)
    p.add_argument("--m", default="0", help="state indices: 3, 0..3 or 0,2")
    p.add_argument("--energy", type=float, default=None, help="continuum energy instead of bound states")
    p.add_argument("--n-terms", type=int, default=None)
    p.add_argument("--x-min", type=float, default=0.0)
    p.add_argument("--x-max", type=float, default=40.0)
    p.add_argument("--points", type=int, default=401)
    _add_system_params(p)
    _add_output(p)

    p = sub.add_parser("reconstruct", help="local potential from its matrix elements")
    p.add_argument("--potential", choices=sorted(_RECONSTRUCT), default="morse")
    p.add_argument("--N", type=int, default=20)
    p.add_argument("--x-min", type=float, default=None)
    p.add_argument("--x-max", type=float, default=None)
    p.add_argument("--points", type=int, default=41)
    _add_output(p)

    p = sub.add_parser("verify", help="run invariant suites")
    p.add_argument("--suite", choices=("all", *_SUITES), default="all")
    _add_output(p)

    p = sub.add_parser("list-systems", help="catalog systems and their parameters")
    _add_output(p)
    return parser


_COMMANDS = {
    "spectrum": cmd_spectrum,
    "phase-shift": cmd_phase_shift,
    "resonances": cmd_resonances,
    "wavefunction": cmd_wavefunction,
    "reconstruct": cmd_reconstruct,
    "verify": cmd_verify,
    "list-systems": cmd_list_systems,
}


def run(argv):
    """Execute one command line; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
        if args.command is None:
            raise UsageError("a subcommand is required")
        columns, rows = _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"potfree: error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except (ArithmeticError, RuntimeError, ValueError, IndexError) as exc:
        print(f"potfree: computation failed: {exc}", file=sys.stderr)
        return 1
    _write(render(columns, rows, args.format), args.output)
    if args.command == "verify" and any(r[-1] == "fail" for r in rows):
        return 1
    return 0


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
