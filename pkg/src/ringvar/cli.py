"""Command-line front end.

Subcommands: verify | profile | extremal | angular.  All read a flat JSON
config (--config), write one deterministic CSV or JSON report (--out), and
use the exit codes

    0  success
    1  exact-bound violation found
    2  configuration error
    3  I/O error
    4  extremal search failed (no admissible state)
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import _kernels
from .domain import PeriodicDomain
from .ensembles import make_states
from .reports import (
    ConfigError,
    RunConfig,
    complex_pairs,
    dump_json,
    format_float,
    load_config,
)
from .reports import ensemble_from_config, search_from_config
from .search import random_search, search
from .variance import variance_profile
from .verify import (
    POINTWISE_SLACK,
    check_structural_bounds,
    uncertainty_report,
)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_SEARCH_FAILED = 4

VERIFY_COLUMNS = [
    "index", "gamma_star", "delta_x_sq", "delta_x", "delta_p", "product",
    "bound_factor", "ratio", "saturated", "heisenberg_rhs", "heisenberg_margin",
    "heisenberg_violated", "eup_rhs", "eup_margin", "pointwise_min_margin",
    "v_min", "v_max", "slope_min", "slope_max", "curvature_max",
    "vbar_rel_err", "bounds_ok", "aliasing_warning", "converged",
]

ANGULAR_COLUMNS = [
    "index", "gamma_star", "delta_phi_sq", "delta_phi", "delta_lz", "product",
    "bound_factor", "ratio", "saturated", "rhs_at_eta", "margin_at_eta",
    "heisenberg_margin", "pointwise_min_margin",
    "v_min", "v_max", "slope_min", "slope_max", "curvature_max",
    "vbar_rel_err", "bounds_ok", "aliasing_warning", "converged",
]


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format_float(value)


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _csv_table(columns: list[str], rows: list[dict], header_comments: list[str] | None = None) -> str:
    lines = list(header_comments or [])
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_cell(row[c]) for c in columns))
    return "\n".join(lines) + "\n"


def _state_rows(cfg: RunConfig, domain: PeriodicDomain, angular: bool):
    """Reports plus bound checks for every state of the configured ensemble."""
    spec = ensemble_from_config(cfg)
    resolution = cfg.resolution or domain.grid_points
    rows = []
    violations = []
    for index, psi in enumerate(make_states(spec, domain)):
        profile = variance_profile(psi, resolution)
        report = uncertainty_report(psi, profile=profile)
        bounds = check_structural_bounds(profile)
        pointwise_ok = report.pointwise_min_margin >= (
            -POINTWISE_SLACK * domain.hbar * domain.hbar / 4.0
        )
        if not (bounds.ok and pointwise_ok):
            violations.append(index)
        row = {
            "index": index,
            "gamma_star": report.gamma_star,
            "delta_x_sq": report.delta_x_sq,
            "delta_x": report.delta_x,
            "delta_p": report.delta_p,
            "product": report.product,
            "bound_factor": report.bound_factor,
            "ratio": report.ratio,
            "saturated": report.saturated,
            "heisenberg_rhs": report.heisenberg_rhs,
            "heisenberg_margin": report.heisenberg_margin,
            "heisenberg_violated": report.heisenberg_margin < 0.0,
            "pointwise_min_margin": report.pointwise_min_margin,
            "v_min": bounds.value_min,
            "v_max": bounds.value_max,
            "slope_min": bounds.slope_min,
            "slope_max": bounds.slope_max,
            "curvature_max": bounds.curvature_max,
            "vbar_rel_err": bounds.mean_rel_err,
            "bounds_ok": bounds.ok,
            "aliasing_warning": report.aliasing_warning,
            "converged": report.converged,
        }
        if angular:
            row.update(
                delta_phi_sq=report.delta_x_sq,
                delta_phi=report.delta_x,
                delta_lz=report.delta_p,
                rhs_at_eta=cfg.eta * domain.hbar * report.bound_factor,
                margin_at_eta=report.product - cfg.eta * domain.hbar * report.bound_factor,
            )
        else:
            row.update(
                eup_rhs=report.eup_rhs(cfg.nu),
                eup_margin=report.eup_margin(cfg.nu),
            )
        rows.append(row)
    return rows, violations


def _meta(cfg: RunConfig) -> dict:
    """Config echo for report payloads; output location is not content."""
    return {k: v for k, v in cfg.to_dict().items() if k not in ("out", "format")}


def _emit_rows(cfg: RunConfig, columns: list[str], rows: list[dict], violations: list[int]) -> None:
    fmt = cfg.format or "csv"
    meta = _meta(cfg)
    if fmt == "csv":
        text = _csv_table(columns, rows)
    else:
        text = dump_json(
            {
                "meta": meta,
                "rows": [{c: row[c] for c in columns} for row in rows],
                "summary": {"states": len(rows), "violations": violations},
            }
        )
    _write_text(cfg.out, text)


def cmd_verify(cfg: RunConfig) -> int:
    domain = PeriodicDomain(cfg.length, cfg.grid_points, cfg.hbar)
    rows, violations = _state_rows(cfg, domain, angular=False)
    _emit_rows(cfg, VERIFY_COLUMNS, rows, violations)
    print(f"verify: {len(rows)} states, {len(violations)} violations -> {cfg.out}")
    if violations:
        print(
            f"verify: exact-bound violations at indices {violations} (seed {cfg.seed})",
            file=sys.stderr,
        )
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_angular(cfg: RunConfig) -> int:
    if abs(cfg.length - 2.0 * math.pi) > 1e-12 * 2.0 * math.pi:
        raise ConfigError(
            f"angular command requires length = 2*pi, got {cfg.length!r}"
        )
    domain = PeriodicDomain(cfg.length, cfg.grid_points, cfg.hbar)
    rows, violations = _state_rows(cfg, domain, angular=True)
    _emit_rows(cfg, ANGULAR_COLUMNS, rows, violations)
    print(f"angular: {len(rows)} states, {len(violations)} violations -> {cfg.out}")
    if violations:
        print(
            f"angular: exact-bound violations at indices {violations} (seed {cfg.seed})",
            file=sys.stderr,
        )
        return EXIT_VIOLATION
    return EXIT_OK


def _profile_header(cfg: RunConfig) -> list[str]:
    return [
        f"# length = {format_float(cfg.length)}",
        f"# grid_points = {cfg.grid_points}",
        f"# hbar = {format_float(cfg.hbar)}",
        f"# seed = {cfg.seed}",
        f"# resolution = {cfg.resolution or cfg.grid_points}",
        f"# kind = {cfg.kind}",
    ]


def read_profile_csv(path: str):
    """Load a profile CSV back into (gamma, V, Vp, Vpp) arrays."""
    gamma, v, vp, vpp = [], [], [], []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#") or line.startswith("gamma"):
                continue
            a, b, c, d = line.split(",")
            gamma.append(float(a))
            v.append(float(b))
            vp.append(float(c))
            vpp.append(float(d))
    return np.array(gamma), np.array(v), np.array(vp), np.array(vpp)


def cmd_profile(cfg: RunConfig) -> int:
    if cfg.count != 1:
        raise ConfigError("profile requires a single-state payload (count = 1)")
    domain = PeriodicDomain(cfg.length, cfg.grid_points, cfg.hbar)
    spec = ensemble_from_config(cfg)
    psi = make_states(spec, domain)[0]
    profile = variance_profile(psi, cfg.resolution or domain.grid_points)

    fmt = cfg.format or "csv"
    if fmt == "csv":
        rows = [
            {"gamma": g, "V": v, "Vp": s, "Vpp": c}
            for g, v, s, c in zip(
                profile.gamma_grid, profile.values, profile.slopes, profile.curvatures
            )
        ]
        text = _csv_table(["gamma", "V", "Vp", "Vpp"], rows, _profile_header(cfg))
    else:
        text = dump_json(
            {
                "meta": _meta(cfg),
                "gamma": list(profile.gamma_grid),
                "V": list(profile.values),
                "Vp": list(profile.slopes),
                "Vpp": list(profile.curvatures),
                "gamma_star": profile.gamma_star,
                "delta_x_sq": profile.delta_x_sq,
            }
        )
    _write_text(cfg.out, text)

    # spot-check the emitted values against the structural invariants
    bounds = check_structural_bounds(profile)
    if fmt == "csv":
        _, v, _, vpp = read_profile_csv(cfg.out)
        L = cfg.length
        reload_ok = (
            v.min() >= -1e-10 * L * L
            and v.max() <= L * L / 4.0 + 1e-10 * L * L
            and vpp.max() <= 2.0 + 1e-10
            and abs(np.mean(v) / (L * L / 12.0) - 1.0) <= 1e-9 + 1e-12
        )
    else:
        reload_ok = True
    print(
        f"profile: min V = {format_float(profile.delta_x_sq)} at "
        f"gamma = {format_float(profile.gamma_star)} -> {cfg.out}"
    )
    if not (bounds.ok and reload_ok):
        print("profile: structural bounds violated", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_extremal(cfg: RunConfig) -> int:
    if (cfg.format or "json") != "json":
        raise ConfigError("extremal emits a JSON result; set format to 'json'")
    domain = PeriodicDomain(cfg.length, cfg.grid_points, cfg.hbar)
    search_cfg = search_from_config(cfg)
    result = search(domain, search_cfg)

    oracle = None
    if cfg.oracle_samples > 0 and not result.failed:
        oracle = random_search(domain, search_cfg, cfg.oracle_samples)

    payload = {
        "meta": _meta(cfg),
        "backend": _kernels.backend(),
        "failed": result.failed,
        "nu_star": None if result.failed else result.nu_star,
        "extremal_coefficients": complex_pairs(result.extremal_coefficients),
        "trace": list(result.trace),
        "evaluations": result.evaluations,
        "diagnostics": {
            "floor_exclusions": result.floor_exclusions,
            "floor_sensitivity": {
                format_float(k): v for k, v in result.floor_sensitivity.items()
            },
        },
        "comparison": result.comparison,
    }
    if oracle is not None:
        payload["oracle"] = {
            "samples": oracle.samples,
            "best_ratio": oracle.best_ratio,
            "exclusions": oracle.exclusions,
            "consistent": bool(oracle.best_ratio >= result.nu_star - 1e-3),
        }
    _write_text(cfg.out, dump_json(payload))
    if result.failed:
        print("extremal: no admissible state found", file=sys.stderr)
        return EXIT_SEARCH_FAILED
    print(f"extremal: nu_star = {format_float(result.nu_star)} -> {cfg.out}")
    return EXIT_OK


_HANDLERS = {
    "verify": cmd_verify,
    "profile": cmd_profile,
    "extremal": cmd_extremal,
    "angular": cmd_angular,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ringvar",
        description="Uncertainty-bound verification on a periodic domain",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("verify", "check every exact bound over an ensemble and emit report rows"),
        ("profile", "emit the shifted-second-moment curve of a single state"),
        ("extremal", "estimate the sharp product-bound constant"),
        ("angular", "verify on the angle domain (length 2*pi) with the eta bound"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="path to a flat JSON config")
        p.add_argument("--out", help="output file (overrides config)")
        p.add_argument("--format", choices=("csv", "json"), help="overrides config")
        p.add_argument("--seed", type=int, help="overrides config seed")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config, args.command)
        overrides = {}
        if args.out is not None:
            overrides["out"] = args.out
        if args.format is not None:
            overrides["format"] = args.format
        if args.seed is not None:
            overrides["seed"] = args.seed
        if overrides:
            from dataclasses import replace

            cfg = replace(cfg, **overrides)
        if cfg.out is None:
            raise ConfigError("an output path is required (config 'out' or --out)")
        return _HANDLERS[args.command](cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
