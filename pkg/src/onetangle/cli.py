"""Command-line front end.

Subcommands: g1, ensemble, sweep2d, gapmap, resonances, degeneracy-table,
oracle-check.  Each reads a YAML run configuration (see docs/config.md),
writes CSV/JSON into the output directory, and follows the exit-code
contract: 0 success, 2 config error, 3 numerical-invariant violation,
4 resource limit.  Identical config and seed produce byte-identical
outputs at any thread count.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import replace

import numpy as np

from . import config as cfg
from ._parallel import ordered_map
from .analysis import SweepGrid, degeneracy_table, gap_map, sweep2d
from .ensemble import (
    AnnulusEntry,
    Ensemble,
    dephasing_time,
    ensemble_electronic_otp,
    gaussian_ensemble,
    mean_abs_hyperfine_angular,
    read_ensemble_csv,
    species_counts,
    total_hyperfine,
    write_ensemble_csv,
)
from .errors import ConfigError, InvariantViolationError, NoCrossingError, ResourceLimitError
from .evolution import EvolutionKind, EvolutionSpec, RotationPair
from .model import build_blocks
from .oracle import SystemDims, block_unitary, choi_otp, mc_otp, pedersen_check, random_unitary
from .results import SweepResult, atomic_write_text, format_float
from .tangle import (
    analytic_g1,
    electronic_otp,
    g1_series,
    makhlin_g1,
    nuclear_otp,
    nuclear_otp_max,
    resonance_times,
)


def _jsonable(v):
    if v is None or isinstance(v, (str, bool, int)):
        return v
    if isinstance(v, np.integer):
        return int(v)
    return float(v)


def _write_table(path_base: str, fmt: str, columns: list[str], rows: list[list]) -> str:
    """Write a generic table as CSV (blank cells for None) or JSON."""
    if fmt == "json":
        path = path_base + ".json"
        payload = {"columns": columns, "rows": [[_jsonable(v) for v in row] for row in rows]}
        atomic_write_text(path, json.dumps(payload, indent=1) + "\n")
        return path
    path = path_base + ".csv"
    lines = [",".join(columns)]
    for row in rows:
        cells = []
        for v in row:
            if v is None:
                cells.append("")
            elif isinstance(v, str):
                cells.append(v)
            elif isinstance(v, (int, np.integer)):
                cells.append(str(int(v)))
            else:
                cells.append(format_float(v))
        lines.append(",".join(cells))
    atomic_write_text(path, "\n".join(lines) + "\n")
    return path


def _write_sweep(result: SweepResult, path_base: str, fmt: str) -> str:
    if fmt == "json":
        path = path_base + ".json"
        result.write_json(path)
    else:
        path = path_base + ".csv"
        result.write_csv(path)
    return path


def cmd_g1(top: cfg._Section, opts) -> list[str]:
    nucleus = cfg._parse_nucleus(top.section("nucleus"))
    ev = cfg._parse_evolution(top.section("evolution", required=False))
    times = cfg._parse_time_grid(top.section("time_grid"))
    top.finish()

    h0, h1 = build_blocks(nucleus)
    g1_num = g1_series(h0, h1, times, kind=ev.kind, n_iterations=ev.n_iterations)
    d = nucleus.dim
    peak = nuclear_otp_max(d)
    otp_num = peak * (1.0 - g1_num)

    has_analytic = abs(nucleus.j - 1.5) < 1e-12 and ev.kind is EvolutionKind.FREE
    if has_analytic:
        g1_ana = np.asarray(analytic_g1(nucleus, times))
        otp_ana = peak * (1.0 - g1_ana)
    rows = []
    for i, t in enumerate(times):
        rows.append(
            [
                t,
                g1_num[i],
                g1_ana[i] if has_analytic else None,
                otp_num[i],
                otp_ana[i] if has_analytic else None,
            ]
        )
    path = _write_table(
        os.path.join(opts.out_dir, "g1"),
        opts.fmt,
        ["t_us", "g1_numeric", "g1_analytic", "otp_numeric", "otp_analytic"],
        rows,
    )
    return [path]


def cmd_resonances(top: cfg._Section, opts) -> list[str]:
    a = top.take("a_mhz", float)
    k_max = top.take("k_max", int)
    top.finish()
    if a == 0:
        raise ConfigError("a_mhz must be nonzero", path="a_mhz")
    times = resonance_times(a, k_max)
    path = _write_table(
        os.path.join(opts.out_dir, "resonances"), opts.fmt, ["t_us"], [[t] for t in times]
    )
    return [path]


def _omega_sweep_worker(args):
    spec, omega, ev_kind, n_iter, times = args
    ensemble = gaussian_ensemble(spec)
    retuned = Ensemble(
        annuli=tuple(
            AnnulusEntry(e.r, e.multiplicity, replace(e.params, nu_larmor=omega))
            for e in ensemble.annuli
        ),
        n_total=ensemble.n_total,
    )
    ev = EvolutionSpec(kind=ev_kind, duration=float(times[-1]), n_iterations=n_iter)
    curve = ensemble_electronic_otp(retuned, ev, times)
    try:
        return dephasing_time(curve)
    except NoCrossingError:
        return math.nan


def cmd_ensemble(top: cfg._Section, opts, seed: int, threads: int) -> list[str]:
    load_path = top.take("load_csv", str, default=None)
    spec = None
    if load_path is not None:
        ensemble = read_ensemble_csv(load_path)
    else:
        spec = cfg._parse_ensemble_spec(top.section("ensemble"), seed)
        ensemble = gaussian_ensemble(spec)
    ev = cfg._parse_evolution(top.section("evolution", required=False))
    times = cfg._parse_time_grid(top.section("time_grid"))
    export = top.take("export_ensemble", bool, default=False)
    omega_sec = top.section("omega_sweep", required=False)
    omega_cfg = None
    if omega_sec is not None:
        start = omega_sec.take("start_mhz", float)
        stop = omega_sec.take("stop_mhz", float)
        step = omega_sec.take("step_mhz", float)
        sweep_times = cfg._parse_time_grid(omega_sec.section("time_grid"))
        omega_sec.finish()
        if step <= 0 or stop < start:
            raise ConfigError("omega sweep needs step_mhz > 0 and stop >= start", path="omega_sweep")
        omega_cfg = (start, stop, step, sweep_times)
    top.finish()

    paths = []
    curve = ensemble_electronic_otp(ensemble, ev, times)
    paths.append(_write_sweep(curve, os.path.join(opts.out_dir, "curve"), opts.fmt))

    try:
        t2 = dephasing_time(curve)
    except NoCrossingError:
        t2 = None
    summary = {
        "n_total": ensemble.n_total,
        "A_total_MHz": total_hyperfine(ensemble),
        # reference statistic: ensemble mean of |a_i| in angular units (rad/us)
        "mean_abs_a_MHz": mean_abs_hyperfine_angular(ensemble),
        "t2_us": t2,
        "species_counts": species_counts(ensemble),
    }
    summary_path = os.path.join(opts.out_dir, "summary.json")
    atomic_write_text(summary_path, json.dumps(summary, indent=1, sort_keys=True) + "\n")
    paths.append(summary_path)

    if export:
        ens_path = os.path.join(opts.out_dir, "ensemble.csv")
        write_ensemble_csv(ensemble, ens_path)
        paths.append(ens_path)

    if omega_cfg is not None:
        if spec is None:
            raise ConfigError("omega_sweep requires an inline ensemble spec", path="omega_sweep")
        start, stop, step, sweep_times = omega_cfg
        n_steps = int(math.floor((stop - start) / step + 1e-9)) + 1
        omegas = start + step * np.arange(n_steps)
        jobs = [(spec, float(w), ev.kind, ev.n_iterations, sweep_times) for w in omegas]
        t2s = ordered_map(_omega_sweep_worker, jobs, threads=threads)
        result = SweepResult(
            x_name="omega_mhz", x_values=omegas, values=np.asarray(t2s), value_name="t2_us"
        )
        paths.append(_write_sweep(result, os.path.join(opts.out_dir, "t2_vs_omega"), opts.fmt))
    return paths


def _parse_grid(top: cfg._Section) -> SweepGrid:
    grid_sec = top.section("grid")
    x_name, xs = cfg._parse_axis(grid_sec.section("x"), "abs_a_over_omega")
    y_name, ys = cfg._parse_axis(grid_sec.section("y"), "delta_q_over_omega")
    grid_sec.finish()
    template = cfg._parse_template(top.section("template"))
    time_mode = cfg._parse_time_mode(top.section("time"))
    return SweepGrid(
        x_values=xs, y_values=ys, template=template, time_mode=time_mode,
        x_name=x_name, y_name=y_name,
    )


def cmd_sweep2d(top: cfg._Section, opts, threads: int) -> list[str]:
    grid = _parse_grid(top)
    ev = cfg._parse_evolution(top.section("evolution", required=False))
    variant = cfg._parse_variant(top)
    top.finish()
    result = sweep2d(grid, ev, variant, threads=threads)
    return [_write_sweep(result, os.path.join(opts.out_dir, "sweep2d"), opts.fmt)]


def cmd_gapmap(top: cfg._Section, opts, threads: int) -> list[str]:
    grid = _parse_grid(top)
    variant = cfg._parse_variant(top)
    full_matrix = top.take("full_matrix", bool, default=False)
    top.finish()
    result = gap_map(grid, variant, full_matrix=full_matrix, threads=threads)
    return [_write_sweep(result, os.path.join(opts.out_dir, "gapmap"), opts.fmt)]


def cmd_degeneracy_table(top: cfg._Section, opts) -> list[str]:
    j = top.take("j", float, default=1.5)
    a_sign = top.take("a_sign", int, default=-1, choices={-1, 1})
    top.finish()
    rows = degeneracy_table(j)
    table_rows = []
    for row, mapped in zip(rows, _mapped_or_none(rows, a_sign)):
        kind, p, q = mapped if mapped is not None else ("dropped", None, None)
        table_rows.append(
            [
                row.delta_m,
                row.electron,
                str(row.m_from),
                str(row.m_to),
                kind,
                p if kind == "line" else None,
                q if kind == "line" else None,
                p if kind == "vertical" else None,
                row.nc_condition,
            ]
        )
    path = _write_table(
        os.path.join(opts.out_dir, "degeneracy_table"),
        opts.fmt,
        [
            "delta_m",
            "electron",
            "m_from",
            "m_to",
            "kind",
            "slope",
            "intercept",
            "x_vertical",
            "nc_condition",
        ],
        table_rows,
    )
    return [path]


def _mapped_or_none(rows, a_sign):
    """Per-row mapping into the (|a|/omega, delta_q/omega) plane, None if unreachable."""
    sign = math.copysign(1.0, a_sign)
    out = []
    for row in rows:
        if row.is_vertical:
            x = row.vertical / sign
            out.append(("vertical", x, 0.0) if x >= 0 else None)
        else:
            out.append(("line", row.slope * sign, row.intercept))
    return out


def _random_block_pair(d: int, rng) -> RotationPair:
    return RotationPair(r0=random_unitary(d, rng), r1=random_unitary(d, rng), d=d)


def cmd_oracle_check(top: cfg._Section, opts, seed: int) -> list[str]:
    systems = top.sequence("systems", required=False)
    if systems is None:
        system_specs = [((2, 4), 50), ((2, 10), 50), ((2, 4, 4), 20)]
    else:
        system_specs = []
        for sec in systems:
            dims_raw = sec.take("dims", list)
            if not isinstance(dims_raw, list) or not all(isinstance(d, int) for d in dims_raw):
                raise ConfigError("dims must be a list of integers", path=sec.path + ".dims")
            n_u = sec.take("n_unitaries", int, default=20)
            sec.finish()
            system_specs.append((tuple(dims_raw), n_u))
    mc_sec = top.section("mc", required=False)
    mc_samples = 100_000
    mc_unitaries = 3
    if mc_sec is not None:
        mc_samples = mc_sec.take("samples", int, default=100_000)
        mc_unitaries = mc_sec.take("n_unitaries", int, default=3)
        mc_sec.finish()
    ped_sec = top.section("pedersen", required=False)
    ped_d, ped_pairs, ped_samples = 4, 20, 100_000
    if ped_sec is not None:
        ped_d = ped_sec.take("d", int, default=4)
        ped_pairs = ped_sec.take("n_pairs", int, default=20)
        ped_samples = ped_sec.take("samples", int, default=100_000)
        ped_sec.finish()
    top.finish()

    tol = 1e-10
    report = {"tolerance": tol, "checks": [], "passed": True}
    rng = np.random.default_rng([seed, 0xC0FFEE])

    for dims_tuple, n_unitaries in system_specs:
        dims = SystemDims(dims_tuple)
        n_nuc = dims.n_subsystems - 1
        worst_nuclear = 0.0
        worst_electronic = 0.0
        for _ in range(n_unitaries):
            pairs = [_random_block_pair(d, rng) for d in dims_tuple[1:]]
            r0 = pairs[0].r0
            r1 = pairs[0].r1
            for p in pairs[1:]:
                r0 = np.kron(r0, p.r0)
                r1 = np.kron(r1, p.r1)
            u = block_unitary(RotationPair(r0=r0, r1=r1, d=r0.shape[0]))
            g1s = [makhlin_g1(p) for p in pairs]
            for q in range(1, n_nuc + 1):
                delta = abs(choi_otp(u, dims, q) - nuclear_otp(g1s[q - 1]))
                worst_nuclear = max(worst_nuclear, delta)
            delta = abs(choi_otp(u, dims, 0) - electronic_otp(g1s))
            worst_electronic = max(worst_electronic, delta)
        ok = worst_nuclear < tol and worst_electronic < tol
        report["checks"].append(
            {
                "kind": "choi_vs_formula",
                "dims": list(dims_tuple),
                "n_unitaries": n_unitaries,
                "max_nuclear_delta": worst_nuclear,
                "max_electronic_delta": worst_electronic,
                "passed": ok,
            }
        )
        report["passed"] &= ok

    dims = SystemDims(system_specs[0][0])
    for i in range(mc_unitaries):
        pairs = [_random_block_pair(d, rng) for d in dims.dims[1:]]
        r0, r1 = pairs[0].r0, pairs[0].r1
        for p in pairs[1:]:
            r0, r1 = np.kron(r0, p.r0), np.kron(r1, p.r1)
        u = block_unitary(RotationPair(r0=r0, r1=r1, d=r0.shape[0]))
        reference = choi_otp(u, dims, 1)
        est = mc_otp(u, dims, 1, samples=mc_samples, seed=seed + i)
        margin = 3.0 * est.stderr
        ok = abs(est.mean - reference) <= margin
        report["checks"].append(
            {
                "kind": "mc_vs_choi",
                "dims": list(dims.dims),
                "samples": mc_samples,
                "delta": abs(est.mean - reference),
                "margin_3sigma": margin,
                "passed": ok,
            }
        )
        report["passed"] &= ok

    worst_ped = 0.0
    ok = True
    for i in range(ped_pairs):
        rp = _random_block_pair(ped_d, rng)
        res = pedersen_check(rp, samples=ped_samples, seed=seed + 1000 + i)
        delta = abs(res.mc - res.closed_form)
        worst_ped = max(worst_ped, delta / max(res.mc_stderr, 1e-300))
        ok &= delta <= 3.0 * res.mc_stderr
    report["checks"].append(
        {
            "kind": "pedersen",
            "d": ped_d,
            "n_pairs": ped_pairs,
            "samples": ped_samples,
            "worst_sigma_ratio": worst_ped,
            "passed": ok,
        }
    )
    report["passed"] &= ok

    path = os.path.join(opts.out_dir, "oracle_check.json")
    atomic_write_text(path, json.dumps(report, indent=1, sort_keys=True) + "\n")
    if not report["passed"]:
        raise InvariantViolationError("oracle-check found violations; see oracle_check.json")
    return [path]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="onetangle",
        description="One-tangling power of block-diagonal central-spin evolutions",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in (
        "g1",
        "ensemble",
        "sweep2d",
        "gapmap",
        "resonances",
        "degeneracy-table",
        "oracle-check",
    ):
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="path to the YAML run configuration")
        p.add_argument("--out", default=".", help="output directory (created if missing)")
        p.add_argument("--seed", type=int, default=None, help="override the config seed")
        p.add_argument("--threads", type=int, default=None, help="worker count (0 = auto)")
        p.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    data = cfg.load_yaml(args.config)
    top = cfg._Section(data, "")
    seed, threads = cfg.parse_common(top, args)
    os.makedirs(args.out, exist_ok=True)
    opts = cfg.CommonOptions(seed=seed, threads=threads, out_dir=args.out, fmt=args.fmt)

    if args.command == "g1":
        paths = cmd_g1(top, opts)
    elif args.command == "resonances":
        paths = cmd_resonances(top, opts)
    elif args.command == "ensemble":
        paths = cmd_ensemble(top, opts, seed, threads)
    elif args.command == "sweep2d":
        paths = cmd_sweep2d(top, opts, threads)
    elif args.command == "gapmap":
        paths = cmd_gapmap(top, opts, threads)
    elif args.command == "degeneracy-table":
        paths = cmd_degeneracy_table(top, opts)
    else:
        paths = cmd_oracle_check(top, opts, seed)
    for path in paths:
        print(path)
    return 0


def main(argv=None) -> int:
    try:
        return run(argv)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (InvariantViolationError, NoCrossingError) as exc:
        print(f"numerical-invariant violation: {exc}", file=sys.stderr)
        return 3
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
