"""Command-line front end.

    wsdirac transmission --sweep e --w 1.2 --a 5 --l 10 --m0 0.4 --from 0.45 --to 0.75 --n 500
    wsdirac transmission --sweep w --e 0.8 --m0 0.4 --a 5 --l 10
    wsdirac spectrum --m0 1 --w 2 --a 10 --l 2 --mass pdm
    wsdirac wavefunction --m0 1 --w 3 --a 10 --l 2 --index -1
    wsdirac validate --json

Natural units (hbar = c = 1) throughout. A JSON file given with
``--config`` may hold any long option (``{"w": 2, "m0": 1, ...}``);
explicit flags win. Exit codes: 0 success, 1 failed validation, 2 bad
configuration, 3 numerical failure.
"""
import argparse
import io
import json
import logging
import sys
import warnings

import numpy as np

from . import __version__, boundstates, model, oracle, scattering, validation, wavefunction
from .errors import NotAnEigenvalue, ShapeWarning, WSDiracError

EXIT_OK, EXIT_FAILED, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3

DEFAULTS = {
    "w": None,
    "a": None,
    "l": None,
    "m0": None,
    "mass": "pdm",
    "sweep": "e",
    "from": None,
    "to": None,
    "n": None,
    "e": None,
    "index": None,
    "state": "bound",
    "x_max": None,
    "n_grid": 2000,
    "tol": 1e-10,
    "out": None,
    "json": False,
    "tolerance_scale": 1.0,
}


class ConfigError(Exception):
    pass


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with option values (flags override it)")
    common.add_argument("--w", type=float, help="barrier height / well depth W")
    common.add_argument("--a", type=float, help="edge sharpness a (inverse length)")
    common.add_argument("--l", type=float, help="half-width L")
    common.add_argument("--m0", type=float, help="asymptotic mass m0")
    common.add_argument("--mass", choices=["pdm", "constant"], help="position-dependent or constant mass")
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--json", action="store_true", default=None, help="JSON instead of CSV")

    ap = argparse.ArgumentParser(prog="wsdirac", description=__doc__.split("\n\n")[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    t = sub.add_parser("transmission", parents=[common], help="T and R sweeps")
    t.add_argument("--sweep", choices=["e", "w"], help="sweep the energy (e) or the barrier height (w)")
    t.add_argument("--from", dest="from_", type=float, help="first abscissa")
    t.add_argument("--to", type=float, help="last abscissa")
    t.add_argument("--n", type=int, help="number of grid points (default 500)")
    t.add_argument("--e", type=float, help="energy for a barrier-height sweep")

    s = sub.add_parser("spectrum", parents=[common], help="bound-state energies of the well")
    s.add_argument("--n-grid", type=int, help="scan points (>= 500)")
    s.add_argument("--tol", type=float, help="root tolerance in E")

    w = sub.add_parser("wavefunction", parents=[common], help="normalised spinor table")
    w.add_argument("--state", choices=["bound", "scattering"])
    w.add_argument("--e", type=float, help="energy (an eigenvalue in bound mode)")
    w.add_argument("--index", type=int, help="pick the bound state by index into the spectrum (-1 = highest)")
    w.add_argument("--n", type=int, help="grid points (default 4001)")
    w.add_argument("--x-max", type=float, help="half-extent of the grid")

    v = sub.add_parser("validate", parents=[common], help="run the self-check suite")
    v.add_argument("--tolerance-scale", type=float, help="multiply every tolerance (e.g. 1e-12 forces failure)")
    return ap


def _merge(args):
    cfg = {}
    if args.config:
        try:
            with open(args.config) as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(cfg, dict):
            raise ConfigError("config must be a JSON object")
        cfg = {k.replace("-", "_"): v for k, v in cfg.items()}
        unknown = set(cfg) - set(DEFAULTS)
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    merged = dict(DEFAULTS)
    merged.update(cfg)
    for key in DEFAULTS:
        val = getattr(args, "from_" if key == "from" else key, None)
        if val is not None:
            merged[key] = val
    merged["command"] = args.command
    return merged


def _params(cfg, need=("w", "a", "l", "m0")):
    missing = [k for k in need if cfg[k] is None]
    if missing:
        raise ConfigError("missing parameters: " + ", ".join("--" + k for k in missing))
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", ShapeWarning)
            p = model.PhysParams(W=float(cfg["w"]), a=float(cfg["a"]), L=float(cfg["l"]), m0=float(cfg["m0"]))
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    for w in caught:
        print(f"wsdirac: warning: {w.message}", file=sys.stderr)
    return p


def _fmt(v):
    return "%.17g" % v


PROVENANCE_KEYS = {
    "transmission": ("sweep", "from", "to", "n", "e"),
    "spectrum": ("n_grid", "tol"),
    "wavefunction": ("state", "e", "index", "n", "x_max", "n_grid"),
    "validate": ("tolerance_scale",),
}


def provenance(cfg, p=None):
    keys = ("command", "mass") + PROVENANCE_KEYS.get(cfg["command"], ())
    parts = [f"wsdirac {__version__}"]
    if p is not None:
        w = "swept" if cfg.get("sweep") == "w" and cfg["command"] == "transmission" else _fmt(p.W)
        parts += [f"W={w}", f"a={_fmt(p.a)}", f"L={_fmt(p.L)}", f"m0={_fmt(p.m0)}"]
    parts += [f"{k}={cfg[k]}" for k in keys if cfg.get(k) is not None]
    return "# " + " ".join(parts)


def _csv(comment, header, rows):
    buf = io.StringIO(newline="")
    buf.write(comment + "\n")
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(v if isinstance(v, str) else _fmt(v) for v in row) + "\n")
    return buf.getvalue()


def _emit(text, cfg):
    if cfg["out"]:
        with open(cfg["out"], "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _grid(lo, hi, n):
    if n < 0:
        raise ConfigError("--n must be non-negative")
    if n == 0 or lo == hi:
        return np.empty(0)
    return np.linspace(lo, hi, n)


def cmd_transmission(cfg):
    n = 500 if cfg["n"] is None else int(cfg["n"])
    if cfg["sweep"] == "e":
        p = _params(cfg)
        lo, hi = cfg["from"], cfg["to"]
        if lo is None or hi is None:
            try:
                klo, khi = scattering.klein_range(p)
            except WSDiracError as exc:
                raise ConfigError(f"{exc}; give --from/--to") from exc
            pad = 1e-3 * (khi - klo)
            lo = klo + pad if lo is None else lo
            hi = khi - pad if hi is None else hi
        tab = scattering.energy_sweep(_grid(lo, hi, n), p, cfg["mass"])
    else:
        if cfg["e"] is None:
            raise ConfigError("a barrier-height sweep needs --e")
        cfg = dict(cfg, w=cfg["w"] if cfg["w"] is not None else 1.0)
        p = _params(cfg)
        lo = 0.0 if cfg["from"] is None else cfg["from"]
        hi = 3.0 if cfg["to"] is None else cfg["to"]
        tab = scattering.height_sweep(cfg["e"], _grid(lo, hi, n), p, cfg["mass"])
    if tab.skipped:
        print(f"wsdirac: omitted {len(tab.skipped)} singular point(s):", file=sys.stderr)
        for v, why in tab.skipped:
            print(f"  {_fmt(v)}: {why}", file=sys.stderr)
    if cfg["json"]:
        return json.dumps(
            {
                "provenance": provenance(cfg, p)[2:],
                "kind": tab.kind,
                "label": tab.label,
                "rows": [list(map(float, r)) for r in tab.rows()],
                "skipped": tab.skipped,
            }
        ) + "\n"
    return _csv(provenance(cfg, p), ["abscissa", "T", "R", "unitarity_residual"], tab.rows())


def _spectrum(cfg, p):
    n_grid = int(cfg["n_grid"])
    if cfg["mass"] == "pdm":
        return boundstates.spectrum(p, n_grid=n_grid, refine_tol=float(cfg["tol"]))
    return oracle.spectrum_for(p, oracle.CONSTANT, n_grid=max(n_grid // 2, 400), tol=float(cfg["tol"]))


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    return obj


def cmd_spectrum(cfg):
    p = _params(cfg)
    if int(cfg["n_grid"]) < 500:
        raise ConfigError("--n-grid must be at least 500")
    sp = _spectrum(cfg, p)
    if not sp.eigenvalues:
        raise WSDiracError(f"no eigenvalue found; scan record: {sp.grid_meta}")
    if cfg["json"]:
        return json.dumps(
            {
                "provenance": provenance(cfg, p)[2:],
                "params": {"W": p.W, "a": p.a, "L": p.L, "m0": p.m0},
                "mass": cfg["mass"],
                "eigenvalues": [{"E": ev.E, "residual": ev.residual, "kind": ev.kind} for ev in sp],
                "grid_meta": _jsonable(sp.grid_meta),
            }
        ) + "\n"
    return _csv(provenance(cfg, p), ["E", "residual", "kind"], [(ev.E, ev.residual, ev.kind) for ev in sp])


def cmd_wavefunction(cfg):
    p = _params(cfg)
    if cfg["mass"] != "pdm":
        raise ConfigError("closed-form wave functions exist only for --mass pdm")
    n = 4001 if cfg["n"] is None else int(cfg["n"])
    if n < 3:
        raise ConfigError("--n must be at least 3")
    if cfg["state"] == "bound":
        if cfg["index"] is not None:
            energies = boundstates.spectrum(p, n_grid=int(cfg["n_grid"])).energies
            try:
                E = energies[int(cfg["index"])]
            except IndexError as exc:
                raise ConfigError(f"--index {cfg['index']} out of range ({len(energies)} states)") from exc
        elif cfg["e"] is not None:
            E = float(cfg["e"])
        else:
            raise ConfigError("bound mode needs --e or --index")
        state = wavefunction.normalize_bound(E, p, cfg["x_max"])
        x_max = state.x_max
    else:
        if cfg["e"] is None:
            raise ConfigError("scattering mode needs --e")
        E = float(cfg["e"])
        state = wavefunction.ScatteringState.solve(E, p)
        x_max = p.L + 12.0 / p.a if cfg["x_max"] is None else float(cfg["x_max"])
    xs = np.linspace(-x_max, x_max, n)
    smp = wavefunction.sample(state, xs)
    cfg = dict(cfg, e=E, x_max=x_max)
    rows = zip(smp.x, smp.u1.real, smp.u1.imag, smp.u2.real, smp.u2.imag, smp.density, smp.current)
    return _csv(provenance(cfg, p), ["x", "re_u1", "im_u1", "re_u2", "im_u2", "density", "current"], rows)


def cmd_validate(cfg):
    rep = validation.report(float(cfg["tolerance_scale"]))
    if cfg["json"]:
        text = json.dumps(_jsonable(rep)) + "\n"
    else:
        lines = [f"{'PASS' if c['passed'] else 'FAIL'} {c['name']}: {c['value']:.3e} (tol {c['tolerance']:.1e})"
                 for c in rep["checks"]]
        text = "\n".join(lines) + f"\n{'all checks passed' if rep['passed'] else 'validation FAILED'}\n"
    return text, rep["passed"]


COMMANDS = {
    "transmission": cmd_transmission,
    "spectrum": cmd_spectrum,
    "wavefunction": cmd_wavefunction,
}


def main(argv=None):
    logging.basicConfig(level=logging.WARNING, format="wsdirac: %(message)s")
    args = _parser().parse_args(argv)
    try:
        cfg = _merge(args)
        if cfg["command"] == "validate":
            text, ok = cmd_validate(cfg)
            _emit(text, cfg)
            return EXIT_OK if ok else EXIT_FAILED
        _emit(COMMANDS[cfg["command"]](cfg), cfg)
    except ConfigError as exc:
        print(f"wsdirac: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NotAnEigenvalue, WSDiracError, ArithmeticError) as exc:
        print(f"wsdirac: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
