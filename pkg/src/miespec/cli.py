"""Command-line surface.

Subcommands: spectrum | wavefunction | ladder-check | verify | presets.
Configuration is a single JSON document; command-line flags override file
values, and the resolved configuration can be dumped and re-used verbatim
(byte-identical outputs).  All outputs are deterministic.

Exit codes: 0 success, 2 configuration error, 3 domain error (invalid or
unbound channels), 4 output I/O error.
"""

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import ladder, oracle, potentials, spectrum, wavefunction
from .errors import (FallToCenterError, NoBoundStatesError,
                     NotNormalizableError)

ENV_OUTDIR = "MIESPEC_OUTDIR"

# quantum.dims defaults to None: each command picks its own default reach
# ([3] for tables, [2, 3, 5] for the verification suite)
_DEFAULTS = {
    "potential": {"preset": "coulomb", "B": -1.0},
    "units": {"mass": 1.0, "hbar": 1.0},
    "quantum": {"n_max": 3, "ell_max": 2, "dims": None},
    "grid": {"refine": 1.0, "points": None, "r_domain": None, "y_points": 4001},
    "output": {"dir": None, "format": "csv"},
}


class ConfigError(Exception):
    pass


# -- configuration ------------------------------------------------------------

def _merge(base: dict, override: dict) -> dict:
    out = {k: dict(v) for k, v in base.items()}
    for key, value in override.items():
        if key not in out:
            raise ConfigError(f"unknown configuration section {key!r}")
        if not isinstance(value, dict):
            raise ConfigError(f"configuration section {key!r} must be an object")
        out[key].update(value)
    return out


def resolve_config(args) -> dict:
    """Defaults < config file < flags; the environment supplies the output
    directory when nothing else does."""
    cfg = {k: dict(v) for k, v in _DEFAULTS.items()}
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config document must be a JSON object")
        if "potential" in data:
            cfg["potential"] = {}
        cfg = _merge(cfg, data)

    flag_potential = {}
    for name in ("preset", "d0", "r0", "A", "B", "C", "a", "b", "convention"):
        value = getattr(args, f"pot_{name}", None)
        if value is not None:
            flag_potential[name] = value
    if flag_potential:
        if "preset" in flag_potential or any(k in flag_potential for k in "ABC"):
            cfg["potential"] = flag_potential
        else:
            cfg["potential"].update(flag_potential)

    for section, name, attr in (("units", "mass", "mass"),
                                ("units", "hbar", "hbar"),
                                ("quantum", "n_max", "n_max"),
                                ("quantum", "ell_max", "ell_max"),
                                ("quantum", "dims", "dims"),
                                ("grid", "refine", "refine"),
                                ("grid", "points", "points"),
                                ("grid", "r_domain", "r_domain"),
                                ("grid", "y_points", "y_points"),
                                ("output", "format", "fmt"),
                                ("output", "dir", "outdir")):
        value = getattr(args, attr, None)
        if value is not None:
            cfg[section][name] = value

    if cfg["output"]["dir"] is None:
        cfg["output"]["dir"] = os.environ.get(ENV_OUTDIR) or "."

    _validate(cfg)
    return cfg


# raw A/B/C keys a preset may legitimately carry (coulomb's strength is B)
_PRESET_KEYS = {
    "coulomb": {"B"},
    "kratzer-fues": set(),
    "modified-kratzer": set(),
    "mie-general": set(),
}


def _validate(cfg: dict):
    pot = cfg["potential"]
    has_preset = "preset" in pot
    has_raw = any(k in pot for k in ("A", "B", "C")) and not has_preset
    if has_preset:
        if pot["preset"] not in _PRESET_KEYS:
            raise ConfigError(f"unknown preset {pot['preset']!r}")
        stray = {"A", "B", "C"} & set(pot) - _PRESET_KEYS[pot["preset"]]
        if stray:
            raise ConfigError(
                f"exactly one potential spec allowed: preset "
                f"{pot['preset']!r} does not take raw key(s) {sorted(stray)}")
    if not has_preset and not has_raw:
        raise ConfigError("potential needs either a preset or raw A/B/C values")
    q = cfg["quantum"]
    if int(q["n_max"]) < 0 or int(q["ell_max"]) < 0:
        raise ConfigError("quantum ranges must be non-negative")
    if q["dims"] is not None:
        if not isinstance(q["dims"], (list, tuple)):
            raise ConfigError("quantum.dims must be a list")
        if any(int(d) < 2 for d in q["dims"]):
            raise ConfigError("every dimension must be >= 2")
    if cfg["output"]["format"] not in ("csv", "json"):
        raise ConfigError("output format must be csv or json")
    g = cfg["grid"]
    for key in ("points", "y_points"):
        if g.get(key) is not None and int(g[key]) < 3:
            raise ConfigError(f"grid.{key} must be at least 3")
    if g.get("r_domain") is not None and float(g["r_domain"]) <= 0.0:
        raise ConfigError("grid.r_domain must be positive")


def build_potential(cfg: dict):
    """(potential object, label) from the resolved configuration."""
    pot = cfg["potential"]
    mass = float(cfg["units"]["mass"])
    hbar = float(cfg["units"]["hbar"])
    try:
        if "preset" not in pot:
            return (potentials.PotentialParams(
                A=float(pot.get("A", 0.0)), B=float(pot.get("B", 0.0)),
                C=float(pot.get("C", 0.0)), mass=mass, hbar=hbar), "raw")
        name = pot["preset"]
        if name == "coulomb":
            return potentials.coulomb(float(pot.get("B", -1.0)), mass, hbar), name
        if name == "kratzer-fues":
            return (potentials.kratzer_fues(float(pot.get("d0", 1.0)),
                                            float(pot.get("r0", 1.0)),
                                            mass, hbar), name)
        if name == "modified-kratzer":
            return (potentials.modified_kratzer(
                float(pot.get("d0", 1.0)), float(pot.get("r0", 1.0)), mass, hbar,
                convention=pot.get("convention", "standard")), name)
        if name == "mie-general":
            return (potentials.MiePreset(
                d0=float(pot.get("d0", 1.0)), r0=float(pot.get("r0", 1.0)),
                a=float(pot.get("a", 2.0)), b=float(pot.get("b", 1.0))),
                name)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    raise ConfigError(f"unknown preset {pot['preset']!r}")


# -- output helpers -----------------------------------------------------------

def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _write_text(path: str, text: str):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _scalar(obj):
    # numpy scalars (bool_, float64, ...) expose .item(); bare objects fail
    if hasattr(obj, "item"):
        return obj.item()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _json_dumps(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, default=_scalar) + "\n"


def _out_path(cfg: dict, args, default_name: str) -> str:
    if getattr(args, "out", None):
        return args.out
    return os.path.join(cfg["output"]["dir"], default_name)


# -- subcommands --------------------------------------------------------------

def cmd_presets(args) -> int:
    lines = [
        "kratzer-fues       d0, r0          A = d0 r0^2, B = -2 d0 r0, C = 0",
        "modified-kratzer   d0, r0          standard: (+d0 r0^2, -2 d0 r0, +d0);"
        " paper-literal: (-d0 r0^2, +2 d0 r0, -d0)",
        "coulomb            B               A = C = 0",
        "mie-general        d0, r0, a, b    two-exponent Mie form"
        " (numeric oracle only unless (a, b) = (2, 1))",
    ]
    print("\n".join(lines))
    return 0


def _spectrum_payload(cfg: dict):
    potential, label = build_potential(cfg)
    if isinstance(potential, potentials.MiePreset):
        raise ConfigError("closed-form spectrum needs a Mie-type potential "
                          "(use 'verify' for general exponents)")
    q = cfg["quantum"]
    dims = q["dims"] if q["dims"] is not None else [3]
    rows = []
    for dim in sorted(int(d) for d in dims):
        rows.extend(spectrum.spectrum_table(potential, int(q["n_max"]),
                                            int(q["ell_max"]), dim))
    any_invalid = any(row.status != "ok" for row in rows)
    return potential, label, rows, any_invalid


def cmd_spectrum(args) -> int:
    cfg = resolve_config(args)
    potential, label, rows, any_invalid = _spectrum_payload(cfg)
    fmt = cfg["output"]["format"]
    path = _out_path(cfg, args, f"spectrum.{fmt}")
    if fmt == "csv":
        lines = ["dim,ell,n,k,eps,energy,status"]
        lines += [",".join([_fmt(r.q.dim), _fmt(r.q.ell), _fmt(r.q.n),
                            _fmt(r.k), _fmt(r.eps), _fmt(r.energy), r.status])
                  for r in rows]
        text = "\n".join(lines) + "\n"
    else:
        payload = {"potential": label,
                   "rows": [{"dim": r.q.dim, "ell": r.q.ell, "n": r.q.n,
                             "k": r.k, "eps": r.eps, "energy": r.energy,
                             "status": r.status} for r in rows]}
        text = _json_dumps(payload)
    _write_text(path, text)
    return 3 if any_invalid else 0


def cmd_wavefunction(args) -> int:
    cfg = resolve_config(args)
    potential, label = build_potential(cfg)
    if isinstance(potential, potentials.MiePreset):
        raise ConfigError("closed-form eigenfunctions need a Mie-type potential")
    if args.r_min is not None and args.r_min <= 0.0:
        raise ConfigError("grid r_min must be positive")

    q = spectrum.QuantumNumbers(n=args.n, ell=args.ell, dim=args.dim)
    try:
        state = spectrum.bound_state(potential, q)
    except (FallToCenterError, NotNormalizableError, NoBoundStatesError) as exc:
        print(f"invalid channel: {exc}", file=sys.stderr)
        return 3

    points = int(cfg["grid"]["points"] or 2001)
    r_domain = cfg["grid"]["r_domain"]
    r_max = float(r_domain) if r_domain else (2.0 * args.n + 2.0 * state.k + 16.0) / (2.0 * state.eps) * 2.0
    r_min = args.r_min if args.r_min is not None else r_max / points
    grid = wavefunction.RadialGrid(r_min=r_min, r_max=r_max, count=points)
    values = wavefunction.eval_radial(state, grid.nodes())

    header = (f"# zeta={_fmt(state.zeta)} k={_fmt(state.k)} "
              f"eps={_fmt(state.eps)} energy={_fmt(state.energy)}")
    lines = [header]
    if args.residual:
        res = wavefunction.ode_residual(state, grid)
        pad = (grid.count - res.grid.count) // 2
        lines.append("r,R,residual")
        residual_col = [""] * pad + [_fmt(v) for v in res.values] + [""] * pad
        for r, v, rv in zip(grid.nodes(), values, residual_col):
            lines.append(f"{_fmt(float(r))},{_fmt(float(v))},{rv}")
    else:
        lines.append("r,R")
        for r, v in zip(grid.nodes(), values):
            lines.append(f"{_fmt(float(r))},{_fmt(float(v))}")
    path = _out_path(cfg, args, f"wavefunction_n{args.n}_l{args.ell}_N{args.dim}.csv")
    _write_text(path, "\n".join(lines) + "\n")
    return 0


def _ladder_channel(potential, ell, dim, n_max, y_points):
    k = spectrum.indicial_root(potential, ell, dim)
    commutator = ladder.commutator_check(k, dim, max(n_max, 2))
    casimir = ladder.casimir_check(k, dim, max(n_max, 1))
    rows = []
    worst_residual = 0.0
    for n in range(n_max + 1):
        state = spectrum.bound_state(
            potential, spectrum.QuantumNumbers(n=n, ell=ell, dim=dim))
        grid = ladder.default_y_grid(state, count=y_points)
        entry = {"n": n}
        for direction, apply in (("lowering", ladder.apply_lowering),
                                 ("raising", ladder.apply_raising)):
            _, fit = apply(state, grid)
            entry[direction] = {
                "fitted": fit.fitted, "residual": fit.residual,
                "closed_form": fit.closed_form, "derived": fit.derived,
                "fitted_by_convention": fit.by_convention,
                "closed_form_discrepancy": fit.fitted - fit.closed_form,
            }
            if n > 0 or direction == "raising":
                worst_residual = max(worst_residual, fit.residual)
        rows.append(entry)
    return {
        "ell": ell, "dim": dim, "k": k,
        "bargmann_j": ladder.bargmann_index(k, dim),
        "commutator": commutator, "casimir": casimir,
        "differential": rows,
        "max_differential_residual": worst_residual,
        "passed": (commutator["passed"] and casimir["passed"]
                   and worst_residual <= 1e-9),
    }


def cmd_ladder_check(args) -> int:
    cfg = resolve_config(args)
    potential, label = build_potential(cfg)
    if isinstance(potential, potentials.MiePreset):
        raise ConfigError("ladder structure needs a Mie-type potential")
    q = cfg["quantum"]
    dims = q["dims"] if q["dims"] is not None else [3]
    y_points = int(cfg["grid"]["y_points"])
    channels = []
    try:
        for dim in sorted(int(d) for d in dims):
            for ell in range(int(q["ell_max"]) + 1):
                channels.append(_ladder_channel(potential, ell, dim,
                                                int(q["n_max"]), y_points))
    except (FallToCenterError, NotNormalizableError, NoBoundStatesError) as exc:
        print(f"invalid channel: {exc}", file=sys.stderr)
        return 3
    payload = {"potential": label, "channels": channels,
               "passed": all(c["passed"] for c in channels)}
    path = _out_path(cfg, args, "ladder_check.json")
    _write_text(path, _json_dumps(payload))
    return 0 if payload["passed"] else 3


def _verify_channel(potential, label, ell, dim, n_max, refine, fast, tol_scale):
    q_list = [spectrum.QuantumNumbers(n=n, ell=ell, dim=dim)
              for n in range(n_max + 1)]
    exact = [spectrum.energy(potential, q) for q in q_list]
    grid = oracle.default_grid(potential, ell, dim, n_max=n_max, refine=refine)
    config = oracle.OracleConfig(grid=grid, count=n_max + 1)
    fd = oracle.solve_bound_states(potential, ell, dim, config)

    entry = {"potential": label, "ell": ell, "dim": dim,
             "closed_form": exact, "fd": list(map(float, fd))}
    ok = len(fd) == len(exact)
    deltas, tols = [], []
    for i, e in enumerate(exact):
        if i < len(fd):
            delta = abs(float(fd[i]) - e)
            tol = tol_scale * max(5e-5, 5e-5 * abs(e))
            deltas.append(delta)
            tols.append(tol)
            ok = ok and delta <= tol
        else:
            deltas.append(None)
            tols.append(None)
    entry.update(delta=deltas, tolerance=tols, energy_ok=ok)

    states = [spectrum.bound_state(potential, q) for q in q_list]
    norms = [wavefunction.norm_check(s) for s in states]
    entry["norm"] = norms
    entry["norm_ok"] = all(abs(v - 1.0) <= 1e-10 for v in norms)
    if len(states) > 1:
        entry["overlap_r_01"] = wavefunction.overlap(states[0], states[1], "r")
        entry["orthogonality_ok"] = abs(entry["overlap_r_01"]) <= 1e-10
    else:
        entry["orthogonality_ok"] = True

    if fast:
        entry.update(order=None, order_status="skipped", order_ok=True)
    else:
        h = grid.spacing
        study = oracle.convergence_study(
            potential, ell, dim, level=0, exact_energy=exact[0],
            r_domain=grid.r_max + 0.5 * h, h_sequence=[4.0 * h, 2.0 * h, h])
        entry.update(order=study["order"], order_status=study["status"])
        entry["order_ok"] = (study["status"] != "ok"
                             or abs(study["order"] - 2.0) <= 0.2)
    entry["passed"] = (entry["energy_ok"] and entry["norm_ok"]
                       and entry["orthogonality_ok"] and entry["order_ok"])
    return entry


def _verify_mie_general(refine):
    preset = potentials.MiePreset(d0=5.0, r0=1.0, a=4.0, b=2.0)
    grid = oracle.default_grid(preset, 0, 3, n_max=1, refine=refine)
    config = oracle.OracleConfig(grid=grid, count=2)
    fd = oracle.solve_bound_states(preset, 0, 3, config)
    return {"potential": "mie-general(a=4, b=2)", "ell": 0, "dim": 3,
            "fd": list(map(float, fd)), "closed_form": None,
            "note": "no closed-form spectrum for these exponents"}


def cmd_verify(args) -> int:
    cfg = resolve_config(args)
    q = cfg["quantum"]
    dims = sorted(int(d) for d in q["dims"]) if q["dims"] is not None \
        else [2, 3, 5]
    refine = float(cfg["grid"]["refine"])
    if args.coarse:
        refine /= float(args.coarse)
    tol_scale = 1.0

    explicit_potential = bool(getattr(args, "config", None)) or any(
        getattr(args, f"pot_{name}", None) is not None
        for name in ("preset", "d0", "r0", "A", "B", "C", "a", "b"))
    if explicit_potential:
        suite = [build_potential(cfg)]
    else:
        suite = [(potentials.coulomb(-1.0), "coulomb"),
                 (potentials.kratzer_fues(5.0, 1.0), "kratzer-fues")]

    jobs = []
    for potential, label in suite:
        if isinstance(potential, potentials.MiePreset):
            continue
        for dim in dims:
            for ell in range(int(q["ell_max"]) + 1):
                jobs.append((potential, label, ell, dim))

    try:
        with ThreadPoolExecutor(max_workers=min(8, os.cpu_count() or 1)) as pool:
            futures = [pool.submit(_verify_channel, pot, label, ell, dim,
                                   int(q["n_max"]), refine, args.fast, tol_scale)
                       for pot, label, ell, dim in jobs]
            channels = [f.result() for f in futures]
    except (FallToCenterError, NotNormalizableError, NoBoundStatesError) as exc:
        print(f"invalid channel: {exc}", file=sys.stderr)
        return 3
    channels.sort(key=lambda c: (c["potential"], c["dim"], c["ell"]))

    payload = {"channels": channels, "passed": all(c["passed"] for c in channels)}
    if args.mie_general or any(isinstance(p, potentials.MiePreset)
                               for p, _ in suite):
        payload["mie_general"] = _verify_mie_general(refine)
    path = _out_path(cfg, args, "verify.json")
    _write_text(path, _json_dumps(payload))
    if not payload["passed"]:
        failed = [f"{c['potential']} N={c['dim']} ell={c['ell']}"
                  for c in channels if not c["passed"]]
        print("failed channels: " + "; ".join(failed), file=sys.stderr)
        return 3
    return 0


def cmd_print_config(args) -> int:
    cfg = resolve_config(args)
    sys.stdout.write(_json_dumps(cfg))
    return 0


# -- argument parsing ---------------------------------------------------------

def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--config", help="JSON configuration file")
    parser.add_argument("--out", help="output file path (overrides the output directory)")
    parser.add_argument("--outdir", help=f"output directory (default: ${ENV_OUTDIR} or '.')")
    parser.add_argument("--format", dest="fmt", choices=("csv", "json"))
    parser.add_argument("--preset", dest="pot_preset",
                        choices=("coulomb", "kratzer-fues", "modified-kratzer",
                                 "mie-general"))
    parser.add_argument("--d0", dest="pot_d0", type=float)
    parser.add_argument("--r0", dest="pot_r0", type=float)
    parser.add_argument("--A", dest="pot_A", type=float)
    parser.add_argument("--B", dest="pot_B", type=float)
    parser.add_argument("--C", dest="pot_C", type=float)
    parser.add_argument("--mie-a", dest="pot_a", type=float)
    parser.add_argument("--mie-b", dest="pot_b", type=float)
    parser.add_argument("--convention", dest="pot_convention",
                        choices=("standard", "paper-literal"))
    parser.add_argument("--mass", type=float)
    parser.add_argument("--hbar", type=float)
    parser.add_argument("--n-max", dest="n_max", type=int)
    parser.add_argument("--ell-max", dest="ell_max", type=int)
    parser.add_argument("--dims", type=lambda s: [int(x) for x in s.split(",")],
                        help="comma-separated dimensions, e.g. 2,3,5")
    parser.add_argument("--points", type=int, help="radial grid size")
    parser.add_argument("--r-domain", dest="r_domain", type=float)
    parser.add_argument("--y-points", dest="y_points", type=int)
    parser.add_argument("--refine", type=float, help="grid refinement factor")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="miespec",
        description="Bound states of Mie-type potentials in N dimensions, "
                    "with independent finite-difference verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="write the closed-form level table")
    _add_common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("wavefunction", help="sample one radial eigenfunction to CSV")
    _add_common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--r-min", dest="r_min", type=float)
    p.add_argument("--residual", action="store_true",
                   help="append the pointwise ODE residual column")
    p.set_defaults(func=cmd_wavefunction)

    p = sub.add_parser("ladder-check", help="SU(1,1) coefficient and operator report")
    _add_common(p)
    p.set_defaults(func=cmd_ladder_check)

    p = sub.add_parser("verify", help="closed form vs finite-difference oracle")
    _add_common(p)
    p.add_argument("--fast", action="store_true", help="skip convergence studies")
    p.add_argument("--coarse", type=float, default=None,
                   help="coarsen grids by this factor (negative control)")
    p.add_argument("--mie-general", dest="mie_general", action="store_true",
                   help="append the numeric-only general-Mie section")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("presets", help="list built-in potential presets")
    p.set_defaults(func=cmd_presets)

    p = sub.add_parser("print-config", help="print the resolved configuration")
    _add_common(p)
    p.set_defaults(func=cmd_print_config)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except (FallToCenterError, NotNormalizableError, NoBoundStatesError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"output error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    raise SystemExit(main())
