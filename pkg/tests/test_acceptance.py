"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines as they complete.  Tolerances are pinned in-line; Monte-Carlo checks
use fixed seeds so the whole suite is deterministic.
"""

import math
import time

import numpy as np
import yaml

from onetangle.analysis import SweepGrid, TimeMode, degeneracy_table, locus_distance_grid, sweep2d
from onetangle.cli import main as cli_main
from onetangle.ensemble import (
    EnsembleSpec,
    SpeciesSpec,
    dephasing_time,
    ensemble_electronic_otp,
    gaussian_ensemble,
    mean_abs_hyperfine_angular,
    total_hyperfine,
)
from onetangle.evolution import EvolutionKind, EvolutionSpec, RotationPair, cpmg_rotations
from onetangle.model import NcVariant, NucleusParams, build_blocks
from onetangle.oracle import (
    SystemDims,
    block_unitary,
    choi_otp,
    mc_otp,
    pedersen_check,
    random_unitary,
)
from onetangle.tangle import (
    G1Value,
    analytic_g1,
    electronic_otp,
    g1_series,
    makhlin_g1,
    nuclear_otp,
    resonance_times,
    simplified_g1,
)


def report(name: str, passed: bool, detail: str, t0: float) -> None:
    status = "PASS" if passed else "FAIL"
    print(f"[{status}] {name}: {detail} ({time.monotonic() - t0:.1f}s)")


def random_block_pairs(dims, rng):
    return [
        RotationPair(r0=random_unitary(d, rng), r1=random_unitary(d, rng), d=d)
        for d in dims[1:]
    ]


def assemble(pairs):
    r0, r1 = pairs[0].r0, pairs[0].r1
    for p in pairs[1:]:
        r0, r1 = np.kron(r0, p.r0), np.kron(r1, p.r1)
    return block_unitary(RotationPair(r0=r0, r1=r1, d=r0.shape[0]))


def make_instances(dims_tuple, count, seed):
    rng = np.random.default_rng([seed, *dims_tuple])
    return [random_block_pairs(dims_tuple, rng) for _ in range(count)]


def test_oracle_equivalence_nuclear():
    """Eq.(3)-vs-Eq.(1): 50 random block unitaries on (2,4) and on (2,10)."""
    t0 = time.monotonic()
    worst = 0.0
    for dims_tuple in ((2, 4), (2, 10)):
        dims = SystemDims(dims_tuple)
        for pairs in make_instances(dims_tuple, 50, seed=101):
            u = assemble(pairs)
            expected = nuclear_otp(makhlin_g1(pairs[0]))
            worst = max(worst, abs(choi_otp(u, dims, 1) - expected))
    elapsed = time.monotonic() - t0
    passed = worst < 1e-10 and elapsed < 30.0
    report("oracle-equivalence-nuclear", passed, f"max delta {worst:.2e}", t0)
    assert worst < 1e-10
    assert elapsed < 30.0


def test_oracle_equivalence_electronic():
    """Eq.(4)-vs-Eq.(1): electron + two d=4 nuclei, 20 instances."""
    t0 = time.monotonic()
    dims = SystemDims((2, 4, 4))
    worst = 0.0
    for pairs in make_instances((2, 4, 4), 20, seed=202):
        u = assemble(pairs)
        expected = electronic_otp([makhlin_g1(p) for p in pairs])
        worst = max(worst, abs(choi_otp(u, dims, 0) - expected))
    elapsed = time.monotonic() - t0
    passed = worst < 1e-10 and elapsed < 120.0
    report("oracle-equivalence-electronic", passed, f"max delta {worst:.2e}", t0)
    assert worst < 1e-10
    assert elapsed < 120.0


def test_monte_carlo_consistency():
    """Appendix-F route: 1e5-sample MC vs closed forms within 3 sigma."""
    t0 = time.monotonic()
    samples = 100_000
    failures = []
    cases = (
        ((2, 4), 6, 1),
        ((2, 10), 3, 1),
        ((2, 4, 4), 3, 0),
    )
    for dims_tuple, count, q in cases:
        dims = SystemDims(dims_tuple)
        for i, pairs in enumerate(make_instances(dims_tuple, count, seed=303)):
            u = assemble(pairs)
            g1s = [makhlin_g1(p) for p in pairs]
            closed = nuclear_otp(g1s[q - 1]) if q >= 1 else electronic_otp(g1s)
            est = mc_otp(u, dims, q, samples=samples, seed=7000 + i)
            if abs(est.mean - closed) > 3.0 * est.stderr:
                failures.append((dims_tuple, i, abs(est.mean - closed), est.stderr))
    ped_rng = np.random.default_rng(404)
    for i in range(20):
        rp = RotationPair(random_unitary(4, ped_rng), random_unitary(4, ped_rng), 4)
        res = pedersen_check(rp, samples=samples, seed=8000 + i)
        if abs(res.mc - res.closed_form) > 3.0 * res.mc_stderr:
            failures.append(("pedersen", i, abs(res.mc - res.closed_form), res.mc_stderr))
    report("monte-carlo-consistency", not failures, f"{len(failures)} 3-sigma violations", t0)
    assert not failures, failures


def test_two_qubit_calibration():
    """CZ-type block unitary has one-tangling power exactly 2/9."""
    t0 = time.monotonic()
    cz = block_unitary(
        RotationPair(np.eye(2, dtype=complex), np.diag([1.0, -1.0]).astype(complex), 2)
    )
    dims = SystemDims((2, 2))
    deltas = [abs(choi_otp(cz, dims, q) - 2.0 / 9.0) for q in (0, 1)]
    g1 = makhlin_g1(RotationPair(np.eye(2, dtype=complex), np.diag([1.0, -1.0]).astype(complex), 2))
    deltas.append(abs(nuclear_otp(g1) - 2.0 / 9.0))
    passed = max(deltas) < 1e-12
    report("two-qubit-calibration", passed, f"max delta {max(deltas):.2e}", t0)
    assert max(deltas) < 1e-12


def test_analytic_g1_agreement_and_resonances():
    """Closed-form G1 vs numerics at a_nc = 0, and resonance-time zeros."""
    t0 = time.monotonic()
    rng = np.random.default_rng(505)
    worst = 0.0
    for _ in range(100):
        p = NucleusParams(
            j=1.5,
            nu_larmor=float(rng.uniform(0.2, 30.0)),
            a=float(rng.uniform(-3.0, 3.0)),
            a_nc=0.0,
            delta_q=float(rng.uniform(-1.0, 1.0)),
            theta=float(rng.uniform(0, 2 * math.pi)),
            warn_on_hierarchy=False,
        )
        t = float(rng.uniform(0.0, 40.0))
        h0, h1 = build_blocks(p)
        numeric = g1_series(h0, h1, np.array([t]))[0]
        worst = max(worst, abs(analytic_g1(p, t) - numeric))

    # a residual < 1e-16 pins each zero within 1e-9 relative in time for k <= 10:
    # displacing t by eps*t changes the value by ~(a t eps)^2/4 > 1e-16
    worst_res = 0.0
    for a in (0.23, 1.7, 0.05):
        for tk in resonance_times(a, 10):
            worst_res = max(worst_res, float(simplified_g1(a, tk)))
    passed = worst < 1e-8 and worst_res < 1e-16
    report(
        "analytic-g1",
        passed,
        f"max |analytic-numeric| {worst:.2e}, max residual at t_k {worst_res:.2e}",
        t0,
    )
    assert worst < 1e-8
    assert worst_res < 1e-16


def test_bounds():
    """Nuclear <= d/(3(d+1)), electronic <= 1/3, attained iff all G1 = 0."""
    t0 = time.monotonic()
    rng = np.random.default_rng(606)
    ok = True
    for d, bound in ((4, 4.0 / 15.0), (10, 10.0 / 33.0)):
        for _ in range(200):
            g1 = G1Value(float(rng.uniform(0, 1)), d)
            eps = nuclear_otp(g1)
            ok &= -1e-15 <= eps <= bound + 1e-15
        ok &= abs(nuclear_otp(G1Value(0.0, d)) - bound) < 1e-15
        ok &= nuclear_otp(G1Value(1e-6, d)) < bound - 1e-9
    for n in (1, 2, 3):
        for _ in range(100):
            g1s = [G1Value(float(v), 4) for v in rng.uniform(0, 1, n)]
            ok &= electronic_otp(g1s) <= 1.0 / 3.0 + 1e-15
        zeros = [G1Value(0.0, 4)] * n
        attained = electronic_otp(zeros)
        ok &= abs(attained - (1 - 0.2**n) / 3.0) < 1e-12
        bumped = [G1Value(1e-6, 4)] + [G1Value(0.0, 4)] * (n - 1)
        ok &= electronic_otp(bumped) < attained - 1e-9
    report("bounds", ok, "nuclear/electronic bounds and attainment", t0)
    assert ok


def test_echo_cancellation():
    """a_nc = 0 kills CPMG entanglement at any (t, N); theta = pi/2 kills the sweep."""
    t0 = time.monotonic()
    rng = np.random.default_rng(707)
    worst = 0.0
    for _ in range(25):
        p = NucleusParams(
            j=float(rng.choice([1.5, 4.5])),
            nu_larmor=float(rng.uniform(0.5, 20)),
            a=float(rng.uniform(-3, 3)),
            a_nc=0.0,
            delta_q=float(rng.uniform(-1, 1)),
            theta=float(rng.uniform(0, 2 * math.pi)),
            warn_on_hierarchy=False,
        )
        h0, h1 = build_blocks(p)
        n = int(rng.choice([1, 2, 7, 85, 1000]))
        t = float(rng.uniform(0.01, 50.0))
        rp = cpmg_rotations(h0, h1, t, n)
        worst = max(worst, nuclear_otp(makhlin_g1(rp)))

    template = NucleusParams(
        j=1.5, nu_larmor=12.98, a=-12.98, a_nc=0.058, delta_q=0.0,
        theta=math.pi / 2, warn_on_hierarchy=False,
    )
    grid = SweepGrid(
        x_values=np.linspace(0, 4, 21),
        y_values=np.linspace(0, 1.2, 15),
        template=template,
        time_mode=TimeMode("max", 36.7, 128),
    )
    sweep = sweep2d(grid, EvolutionSpec(kind=EvolutionKind.CPMG, duration=1.0))
    grid_max = float(sweep.values.max())
    passed = worst < 1e-10 and grid_max < 1e-6
    report("echo-cancellation", passed, f"max eps {worst:.2e}, theta=pi/2 grid max {grid_max:.2e}", t0)
    assert worst < 1e-10
    assert grid_max < 1e-6


def test_ensemble_statistics():
    """Default dot: n = 80,247, total A/2pi = -11.12 GHz (0.5%), mean |a| 0.87 (2%)."""
    t0 = time.monotonic()
    e = gaussian_ensemble(EnsembleSpec())
    a_total_ghz = total_hyperfine(e) / 1000.0
    mean_ang = mean_abs_hyperfine_angular(e)
    ok_n = e.n_total == 80_247
    ok_a = abs(a_total_ghz + 11.12) / 11.12 < 0.005
    ok_m = abs(mean_ang - 0.87) / 0.87 < 0.02
    report(
        "ensemble-statistics",
        ok_n and ok_a and ok_m,
        f"n={e.n_total}, A/2pi={a_total_ghz:.4f} GHz, mean|a|={mean_ang:.4f}",
        t0,
    )
    assert ok_n and ok_a and ok_m


FREE = EvolutionSpec(kind=EvolutionKind.FREE, duration=1.0)


def test_dephasing_single_species():
    """Full-dot free-evolution curve: plateau by 10 ns, half-max at a few ns."""
    t0 = time.monotonic()
    e = gaussian_ensemble(EnsembleSpec())
    times = np.linspace(1e-6, 0.02, 2001)
    curve = ensemble_electronic_otp(e, FREE, times)
    plateau = float(curve.values.max())
    at_10ns = float(curve.values[np.searchsorted(times, 0.010)])
    t_half = dephasing_time(curve)
    ok_sat = at_10ns >= 0.99 * plateau
    ok_half = 0.5e-3 <= t_half <= 10e-3
    elapsed = time.monotonic() - t0
    report(
        "dephasing-single-species",
        ok_sat and ok_half and elapsed < 300,
        f"half-max {t_half * 1e3:.2f} ns, eps(10ns)/plateau {at_10ns / plateau:.4f}",
        t0,
    )
    assert ok_sat and ok_half
    assert elapsed < 300


def test_dephasing_mixed_bath_crossing():
    """Mixed Ga/In bath half-max crossing at 2.5 ns +- 30%.

    Implemented exactly as stated.  With the ensemble statistics pinned by
    the previous criterion (n = 80,247 and sum a_i/2pi = -11.12 GHz), the
    half-max crossing of the mixed curve is bounded above by
    sqrt(ln 2 / (4.25 n (2 pi A / n)^2)) ~ 1.6 ns < 1.75 ns, so this band
    cannot be reached; the computed crossing is ~0.92 ns.  The documented
    2.5 ns figure is reproduced by the saturation time instead (checked in
    test_ensemble.py).  See the decisions ledger for the full analysis.
    """
    t0 = time.monotonic()
    mix = (SpeciesSpec("71Ga", 1.5, 12.98, 0.5), SpeciesSpec("115In", 4.5, 9.33, 0.5))
    e = gaussian_ensemble(EnsembleSpec(species_mix=mix))
    times = np.linspace(1e-6, 0.02, 2001)
    curve = ensemble_electronic_otp(e, FREE, times)
    t_half = dephasing_time(curve)
    lo, hi = 2.5e-3 * 0.7, 2.5e-3 * 1.3
    passed = lo <= t_half <= hi
    report(
        "dephasing-mixed-crossing",
        passed,
        f"half-max {t_half * 1e3:.3f} ns vs required [{lo * 1e3:.2f}, {hi * 1e3:.2f}] ns",
        t0,
    )
    assert lo <= t_half <= hi, (
        f"mixed-bath half-max crossing {t_half * 1e3:.3f} ns is outside "
        f"[{lo * 1e3:.2f}, {hi * 1e3:.2f}] ns; unattainable given the pinned "
        "ensemble statistics (see notes/decisions ledger): the saturation "
        "time, not the half-max crossing, reproduces the 2.5 ns figure"
    )


def _sweep_theta(theta, variant=NcVariant.QUADRUPOLAR, points=200, steps=512):
    template = NucleusParams(
        j=1.5, nu_larmor=12.98, a=-12.98, a_nc=0.058, delta_q=0.0,
        theta=theta, warn_on_hierarchy=False,
    )
    grid = SweepGrid(
        x_values=np.linspace(0, 4, points),
        y_values=np.linspace(0, 1.2, points),
        template=template,
        time_mode=TimeMode("max", 36.7, steps),
    )
    ev = EvolutionSpec(kind=EvolutionKind.CPMG, duration=1.0)
    return grid, sweep2d(grid, ev, variant, threads=2)


def test_degeneracy_entanglement_correspondence():
    """CPMG hotspots sit on the catalogued loci; the |a|/omega = 2 line
    follows the transition-activation rules.

    The activation checks follow the non-collinear operator matrix
    elements (and the strain-angle catalogue): the 1/2 <-> -1/2 and
    3/2 <-> -3/2 pairs have no first-order coupling in the quadrupolar
    variant, so the vertical line stays dark away from locus crossings,
    while the transverse-X variant couples 1/2 <-> -1/2 directly and
    lights it up.  (The transcribed nc-condition column contradicts the
    operator matrix elements for some rows; see the decisions ledger.)
    """
    t0 = time.monotonic()
    grid, sweep = _sweep_theta(math.pi / 3)
    dist = locus_distance_grid(grid.x_values, grid.y_values, degeneracy_table(1.5), a_sign=-1)
    hot = sweep.values > 0.15
    assert hot.sum() > 50, "expected a visible set of hot cells"
    frac = float(dist[hot].clip(max=100).__le__(1.5).mean())

    xs, ys = grid.x_values, grid.y_values
    ix2 = int(np.argmin(np.abs(xs - 2.0)))
    band = (ys >= 0.15) & (ys <= 0.85)  # away from crossings with other loci
    quad_line_max = float(sweep.values[band, ix2].max())

    # 61 points put |a|/omega = 2.0 exactly on the grid for the line checks
    _, sweep_tx = _sweep_theta(math.pi / 3, NcVariant.TRANSVERSE_X, points=61, steps=256)
    xs_tx = np.linspace(0, 4, 61)
    ix2_tx = int(np.argmin(np.abs(xs_tx - 2.0)))
    tx_line_max = float(sweep_tx.values[:, ix2_tx].max())

    _, sweep_0 = _sweep_theta(0.0, points=61, steps=256)
    ys_61 = np.linspace(0, 1.2, 61)
    band61 = (ys_61 >= 0.15) & (ys_61 <= 0.85)
    theta0_line_max = float(sweep_0.values[band61, ix2_tx].max())

    elapsed = time.monotonic() - t0
    ok = (
        frac >= 0.90
        and quad_line_max < 0.02
        and tx_line_max > 0.15
        and theta0_line_max < 0.02
        and elapsed < 600
    )
    report(
        "degeneracy-correspondence",
        ok,
        f"hot-on-locus {frac:.3f}, |a|/w=2 line: quad {quad_line_max:.3f}, "
        f"transverse-x {tx_line_max:.3f}, theta=0 {theta0_line_max:.3f}",
        t0,
    )
    assert frac >= 0.90
    assert quad_line_max < 0.02
    assert tx_line_max > 0.15
    assert theta0_line_max < 0.02
    assert elapsed < 600


def test_cpmg_iteration_scaling():
    """Max-over-time entanglement at N = 85 beats N = 1 over equal total time."""
    t0 = time.monotonic()
    p = NucleusParams(
        j=1.5, nu_larmor=12.98, a=0.23, a_nc=0.056, delta_q=0.034,
        theta=math.pi / 3, warn_on_hierarchy=False,
    )
    h0, h1 = build_blocks(p)
    taus = np.linspace(17.6 / 1024, 17.6, 1024)
    eps_1 = (4.0 / 15.0) * (
        1 - g1_series(h0, h1, taus, kind=EvolutionKind.CPMG, n_iterations=1).min()
    )
    eps_85 = (4.0 / 15.0) * (
        1 - g1_series(h0, h1, taus, kind=EvolutionKind.CPMG, n_iterations=85).min()
    )
    passed = eps_85 > eps_1
    report("cpmg-iteration-scaling", passed, f"N=1 max {eps_1:.4f} -> N=85 max {eps_85:.4f}", t0)
    assert eps_85 > eps_1


def test_determinism_across_thread_counts(tmp_path):
    """Identical config + seed gives byte-identical outputs at any thread count."""
    t0 = time.monotonic()
    sweep_cfg = {
        "grid": {
            "x": {"start": 0.0, "stop": 4.0, "points": 12},
            "y": {"start": 0.0, "stop": 1.2, "points": 9},
        },
        "template": {
            "j": 1.5, "nu_larmor_mhz": 12.98, "a_sign": -1,
            "a_nc_mhz": 0.058, "theta_rad": math.pi / 3,
        },
        "evolution": {"kind": "cpmg", "n_iterations": 1},
        "time": {"mode": "max", "t_us": 10.0, "steps": 64},
    }
    ens_cfg = {
        "ensemble": {"n_target": 1500},
        "time_grid": {"start_us": 1e-5, "stop_us": 0.05, "points": 100, "spacing": "log"},
        "export_ensemble": True,
        "omega_sweep": {
            "start_mhz": 9.0, "stop_mhz": 9.2, "step_mhz": 0.1,
            "time_grid": {"start_us": 1e-5, "stop_us": 0.1, "points": 200, "spacing": "log"},
        },
    }
    gi_cfg = {
        "nucleus": {
            "j": 1.5, "nu_larmor_mhz": 12.98, "a_mhz": 0.23, "a_nc_mhz": 0.056,
            "delta_q_mhz": 0.034, "theta_rad": math.pi / 3,
        },
        "time_grid": {"start_us": 0.0, "stop_us": 5.0, "points": 64},
    }
    jobs = [
        ("sweep2d", sweep_cfg, ["sweep2d.csv"]),
        ("ensemble", ens_cfg, ["curve.csv", "summary.json", "ensemble.csv", "t2_vs_omega.csv"]),
        ("g1", gi_cfg, ["g1.csv"]),
    ]
    ok = True
    for cmd, payload, outputs in jobs:
        cfg_path = tmp_path / f"{cmd}.yaml"
        cfg_path.write_text(yaml.safe_dump(payload))
        outs = []
        for threads in (1, 2):
            out_dir = tmp_path / f"{cmd}_t{threads}"
            code = cli_main(
                [cmd, "--config", str(cfg_path), "--out", str(out_dir),
                 "--seed", "9", "--threads", str(threads)]
            )
            assert code == 0
            outs.append(out_dir)
        for name in outputs:
            ok &= (outs[0] / name).read_bytes() == (outs[1] / name).read_bytes()
    report("determinism", ok, "byte-identical outputs for threads 1 vs 2", t0)
    assert ok
