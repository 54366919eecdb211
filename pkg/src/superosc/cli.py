"""Command-line front end: structured config in, CSV/JSON tables out.

Commands: ``sequence``, ``evolve``, ``singularity``, ``persistence``.  Each
takes ``--config`` (JSON, strict keys) plus optional ``--out``, ``--format``
and ``--tol`` overrides.  Exit codes: 0 success, 2 config error, 3
caustic/domain error, 4 tolerance breach.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys

import numpy as np

from . import __version__
from .errors import CausticError, ConfigError, DomainError, PeriodicityError
from .evolution import (
    ModeDatum,
    evolve_superosc_mode_sum,
    evolve_superosc_operator_series,
    quadrature_evolve,
    singularity_sweep,
)
from .params import ForceModel, PhysicalParams
from .persistence import (
    ModeCoefficients,
    ModeLattice,
    PotentialModel,
    evolve_coefficients,
    extract_coefficients,
    periodicity_check,
    reconstruct,
    reconstruct_grid,
)
from .sequences import (
    SuperoscSpec,
    f_limit,
    f_n_product_grid,
    f_n_sum_grid,
    local_frequency,
)

# fixed CSV headers per command, documented in the README
HEADERS = {
    "sequence": ["x", "f_sum_re", "f_sum_im", "f_prod_re", "f_prod_im",
                 "dual_diff", "limit_diff", "k_loc"],
    "singularity": ["t", "abs_psi", "k_loc", "collapsed_amp", "kloc_cos"],
    "persistence": ["t", "roundtrip_defect", "initial_defect", "final_defect",
                    "passed"],
}


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, float) and math.isnan(v):
        return "nan"
    return f"{v:.16e}"


def _check_keys(path, block, allowed):
    if not isinstance(block, dict):
        raise ConfigError(f"config block '{path}' must be an object")
    unknown = sorted(set(block) - set(allowed))
    if unknown:
        raise ConfigError(f"unknown key '{path}.{unknown[0]}'")


def _require(block, path, key):
    if key not in block:
        raise ConfigError(f"missing key '{path}.{key}'")
    return block[key]


def _grid(node, path):
    """A grid is either an explicit list or {lo, hi, points}."""
    if isinstance(node, list):
        return np.asarray(node, dtype=float)
    _check_keys(path, node, {"lo", "hi", "points"})
    return np.linspace(_require(node, path, "lo"), _require(node, path, "hi"),
                       int(_require(node, path, "points")))


def _physics(cfg):
    block = cfg.get("physics", {})
    _check_keys("physics", block, {"m", "omega", "hbar", "d"})
    try:
        return PhysicalParams(m=block.get("m", 1.0), omega=block.get("omega", 1.0),
                              hbar=block.get("hbar", 1.0), d=block.get("d", 1))
    except DomainError as exc:
        raise ConfigError(f"physics: {exc}") from exc


def _force(cfg, d):
    block = cfg.get("force", {"kind": "zero"})
    _check_keys("force", block, {"kind", "f0", "nu", "phase"})
    kind = _require(block, "force", "kind")
    try:
        if kind == "zero":
            return ForceModel.zero(d)
        if kind == "constant":
            return ForceModel.constant(_require(block, "force", "f0"), d)
        if kind == "sinusoidal":
            return ForceModel.sinusoidal(_require(block, "force", "f0"),
                                         _require(block, "force", "nu"),
                                         block.get("phase", 0.0), d)
    except DomainError as exc:
        raise ConfigError(f"force: {exc}") from exc
    raise ConfigError(f"force.kind must be zero|constant|sinusoidal, got {kind!r}")


def _sequence_spec(cfg, hbar):
    block = _require(cfg, "<root>", "sequence")
    _check_keys("sequence", block, {"a", "p", "n"})
    try:
        return SuperoscSpec(a=_require(block, "sequence", "a"),
                            p=_require(block, "sequence", "p"),
                            n=_require(block, "sequence", "n"), hbar=hbar)
    except DomainError as exc:
        raise ConfigError(f"sequence: {exc}") from exc


def _write_rows(out_path, fmt, header, rows, meta):
    if fmt == "csv":
        with open(out_path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(header)
            for row in rows:
                w.writerow([_fmt(v) for v in row])
        with open(out_path + ".meta.json", "w") as fh:
            json.dump(meta, fh, indent=2, sort_keys=True)
            fh.write("\n")
    else:
        records = [dict(zip(header, [bool(v) if isinstance(v, bool) else float(v)
                                     for v in row])) for row in rows]
        with open(out_path, "w") as fh:
            # insertion order mirrors the CSV column order
            json.dump({"rows": records, "meta": meta}, fh, indent=2)
            fh.write("\n")


def _base_meta(cfg):
    return {"config": cfg, "version": __version__}


def cmd_sequence(cfg, out_path, fmt, tol):
    params = _physics(cfg)
    spec = _sequence_spec(cfg, params.hbar)
    if spec.d != 1:
        raise ConfigError("sequence command is 1-d")
    study = _require(cfg, "<root>", "study")
    _check_keys("study", study, {"x_grid"})
    x = _grid(_require(study, "study", "x_grid"), "study.x_grid")
    f_sum = f_n_sum_grid(spec, x)
    f_prod = f_n_product_grid(spec, x)
    lim = np.array([f_limit(spec, [xi]) for xi in x])
    k_loc = local_frequency(f_prod, x[1] - x[0]) if x.size >= 3 else np.full(x.size, np.nan)
    rows = [
        (x[i], f_sum[i].real, f_sum[i].imag, f_prod[i].real, f_prod[i].imag,
         abs(f_sum[i] - f_prod[i]), abs(f_prod[i] - lim[i]), k_loc[i])
        for i in range(x.size)
    ]
    meta = _base_meta(cfg)
    meta["max_dual_diff"] = float(np.max(np.abs(f_sum - f_prod)))
    _write_rows(out_path, fmt, HEADERS["sequence"], rows, meta)
    return 0


_EVOLVE_METHODS = ("mode_sum", "operator_series", "quadrature")


def cmd_evolve(cfg, out_path, fmt, tol):
    params = _physics(cfg)
    force = _force(cfg, params.d)
    spec = _sequence_spec(cfg, params.hbar)
    study = _require(cfg, "<root>", "study")
    _check_keys("study", study, {"t_grid", "x_grid", "methods", "tolerance"})
    t_grid = _grid(_require(study, "study", "t_grid"), "study.t_grid")
    x_grid = _grid(_require(study, "study", "x_grid"), "study.x_grid")
    methods = study.get("methods", ["mode_sum", "operator_series"])
    for mth in methods:
        if mth not in _EVOLVE_METHODS:
            raise ConfigError(f"study.methods: unknown method {mth!r}")
    if len(methods) < 2:
        raise ConfigError("study.methods needs at least two methods to compare")
    if tol is None:
        tol = study.get("tolerance", 1e-10)
    if "quadrature" in methods and params.d != 1:
        raise ConfigError("quadrature method is 1-d")

    datum = ModeDatum.from_spec(spec) if "quadrature" in methods else None
    header = ["t", "x"]
    for mth in methods:
        header += [f"{mth}_re", f"{mth}_im"]
    pairs = [(i, j) for i in range(len(methods)) for j in range(i + 1, len(methods))]
    header += [f"dev_{methods[i]}_{methods[j]}" for i, j in pairs]

    rows, worst = [], 0.0
    for t in t_grid:
        for x in x_grid:
            vals = []
            for mth in methods:
                if mth == "mode_sum":
                    vals.append(evolve_superosc_mode_sum(params, force, spec, t, [x]))
                elif mth == "operator_series":
                    vals.append(evolve_superosc_operator_series(params, force, spec, t, [x]))
                else:
                    vals.append(quadrature_evolve(params, force, datum, t, x))
            devs = [abs(vals[i] - vals[j]) for i, j in pairs]
            worst = max(worst, max(devs))
            row = [t, x]
            for v in vals:
                row += [v.real, v.imag]
            rows.append(tuple(row + devs))
    meta = _base_meta(cfg)
    meta["max_pairwise_deviation"] = worst
    meta["tolerance"] = tol
    _write_rows(out_path, fmt, header, rows, meta)
    return 0 if worst <= tol else 4


def cmd_singularity(cfg, out_path, fmt, tol):
    params = _physics(cfg)
    force = _force(cfg, params.d)
    seq = _require(cfg, "<root>", "sequence")
    _check_keys("sequence", seq, {"a", "p"})
    a = float(_require(seq, "sequence", "a"))
    p = _require(seq, "sequence", "p")
    study = _require(cfg, "<root>", "study")
    _check_keys("study", study, {"t_grid", "x0"})
    t_grid = _grid(_require(study, "study", "t_grid"), "study.t_grid")
    x0 = float(study.get("x0", 0.0))
    table = singularity_sweep(params, force, a, p, t_grid, x0)
    rows = list(zip(table["t"], table["abs_psi"], table["k_loc"],
                    table["collapsed_amp"], table["kloc_cos"]))
    meta = _base_meta(cfg)
    if 0.0 < a < 1.0:
        # time at which k_loc first exceeds the band limit |p|/hbar
        meta["band_crossing_time"] = math.acos(a) / params.omega
    _write_rows(out_path, fmt, HEADERS["singularity"], rows, meta)
    return 0


def _lattice(cfg):
    block = _require(cfg, "<root>", "lattice")
    _check_keys("lattice", block, {"n", "p", "hbar"})
    try:
        return ModeLattice(n=_require(block, "lattice", "n"),
                           p=_require(block, "lattice", "p"),
                           hbar=block.get("hbar", 1.0))
    except DomainError as exc:
        raise ConfigError(f"lattice: {exc}") from exc


def _potential(cfg):
    block = cfg.get("potential", {"kind": "zero"})
    _check_keys("potential", block, {"kind", "v0"})
    kind = _require(block, "potential", "kind")
    if kind == "zero":
        return PotentialModel.zero()
    if kind == "constant":
        return PotentialModel.constant(_require(block, "potential", "v0"))
    raise ConfigError(f"potential.kind must be zero|constant, got {kind!r}")


def cmd_persistence(cfg, out_path, fmt, tol):
    params = _physics(cfg)
    lattice = _lattice(cfg)
    if lattice.d != 1:
        raise ConfigError("persistence command is 1-d")
    V = _potential(cfg)
    block = _require(cfg, "<root>", "coefficients")
    _check_keys("coefficients", block, {"modes"})
    values = np.zeros(lattice.shape, dtype=complex)
    for entry in _require(block, "coefficients", "modes"):
        if not (isinstance(entry, list) and len(entry) == 3):
            raise ConfigError("coefficients.modes entries must be [k, re, im]")
        k = int(entry[0])
        if abs(k) > lattice.n[0]:
            raise ConfigError(f"coefficients.modes: |k| = {abs(k)} exceeds n = {lattice.n[0]}")
        values[k + lattice.n[0]] = complex(entry[1], entry[2])
    coeffs = ModeCoefficients(t=0.0, values=values)

    study = _require(cfg, "<root>", "study")
    _check_keys("study", study, {"t_grid", "period", "path", "test_points"})
    t_grid = _grid(_require(study, "study", "t_grid"), "study.t_grid")
    X = np.atleast_1d(np.asarray(_require(study, "study", "period"), dtype=float))
    path = study.get("path", "lattice")
    test_points = int(study.get("test_points", 33))
    if tol is None:
        tol = study.get("tolerance") if "tolerance" in study else None

    def field(x):
        x = np.asarray(x, dtype=float)
        if x.ndim == 2:
            return reconstruct_grid(lattice, coeffs, x[:, 0])
        return reconstruct(lattice, coeffs, x)

    # round trip on the supplied coefficients is part of every report
    extracted = extract_coefficients(lattice, field)
    roundtrip = float(np.max(np.abs(extracted.values - coeffs.values)))
    rows, all_passed = [], True
    for t in t_grid:
        rep = periodicity_check(params, lattice, field, X, t=float(t), V=V,
                                path=path, test_points=test_points,
                                tolerance=tol)
        all_passed = all_passed and rep.passed
        rows.append((float(t), roundtrip, rep.initial_defect, rep.final_defect,
                     rep.passed))
    meta = _base_meta(cfg)
    meta["roundtrip_defect"] = roundtrip
    _write_rows(out_path, fmt, HEADERS["persistence"], rows, meta)
    return 0 if all_passed else 4


_COMMANDS = {
    "sequence": cmd_sequence,
    "evolve": cmd_evolve,
    "singularity": cmd_singularity,
    "persistence": cmd_persistence,
}

_TOP_KEYS = {
    "sequence": {"physics", "sequence", "study", "output"},
    "evolve": {"physics", "force", "sequence", "study", "output"},
    "singularity": {"physics", "force", "sequence", "study", "output"},
    "persistence": {"physics", "lattice", "potential", "coefficients", "study",
                    "output"},
}


def _load_config(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="superosc",
        description="Superoscillation evolution studies for the driven oscillator")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", required=True)
        sp.add_argument("--out", default=None)
        sp.add_argument("--format", choices=("csv", "json"), default=None)
        sp.add_argument("--tol", type=float, default=None)
    args = parser.parse_args(argv)

    try:
        cfg = _load_config(args.config)
        _check_keys("<root>", cfg, _TOP_KEYS[args.command])
        out_block = cfg.get("output", {})
        _check_keys("output", out_block, {"path", "format"})
        out_path = args.out or out_block.get("path")
        if not out_path:
            raise ConfigError("no output path (set output.path or --out)")
        fmt = args.format or out_block.get("format", "csv")
        if fmt not in ("csv", "json"):
            raise ConfigError(f"output.format must be csv|json, got {fmt!r}")
        return _COMMANDS[args.command](cfg, out_path, fmt, args.tol)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (CausticError, DomainError, PeriodicityError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
