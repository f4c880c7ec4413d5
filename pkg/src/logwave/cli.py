"""Experiment runner: config loading, verification suites, solve-and-track.

Subcommands:
    verify  run property suites, write a JSON report   (exit 1 on any failure)
    solve   solve + energy pipeline, dump trajectory snapshots, CSV, summary
    energy  same pipeline without the snapshot dump
    report  summarize the JSON/CSV artifacts in an output directory

One JSON file is one experiment; all randomness flows from the config seed,
so identical configs produce byte-identical outputs.  Exit codes: 0 success,
1 suite/verdict failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from .energy import (
    EnergyConfig,
    EnergyMachine,
    calibrate_c2,
    energy_table,
    inequality_check,
    loss_meter,
    measured_index_curve,
    total_series,
)
from .errors import ConfigError
from .grid import SpectralField, TorusGrid
from .dyadic import ring_field
from .parad import choose_gamma_mu
from .rough import CoefficientProfile, make_coefficients
from .solver import CauchyProblem, solve
from .suites import DEFAULT_VERIFY, SUITES, lipschitz_coefficients

LN2 = float(np.log(2.0))


DEFAULT_CONFIG = {
    "seed": 12345,
    "grid": {"dim": 1, "points": 512},
    "coefficients": {
        "base": 2.0,
        "lz_depth": 12,
        "ll_depth": 7,
        "amp_t": 0.25,
        "amp_x": 0.25,
        "seed": 3,
        "time_window": [0.0, 8.0],
    },
    "data": {"rings": [2, 3, 4, 5], "seed": 5},
    "energy": {
        "theta": 0.5,
        "beta_sweep": [2.0, 4.0, 8.0],
        "nu_max": 8,
        "delta_target": 0.4,
    },
    "loss": {"beta_star_grid": [0.02, 0.06, 0.12, 0.2], "margin": 2.0},
    "suites": list(DEFAULT_VERIFY),
}


def _fail(path, msg):
    raise ConfigError(f"{path}: {msg}")


def validate_config(cfg: dict) -> dict:
    """Schema check with field-path error messages; returns the merged config."""
    merged = json.loads(json.dumps(DEFAULT_CONFIG))
    for key, val in cfg.items():
        if key not in merged:
            _fail(key, "unknown field")
        if isinstance(val, dict):
            merged[key].update(val)
        else:
            merged[key] = val
    g = merged["grid"]
    if g["dim"] not in (1, 2):
        _fail("grid.dim", f"must be 1 or 2, got {g['dim']}")
    m = g["points"]
    if not (isinstance(m, int) and m >= 16 and (m & (m - 1)) == 0):
        _fail("grid.points", f"must be a power of two >= 16, got {m}")
    e = merged["energy"]
    if not 0.0 < e["theta"] < 1.0:
        _fail("energy.theta", f"must lie in (0, 1), got {e['theta']}")
    if not e["beta_sweep"] or any(b <= 0 for b in e["beta_sweep"]):
        _fail("energy.beta_sweep", "needs positive entries")
    delta = e["delta_target"]
    if not 0.0 < delta < 1.0 - e["theta"]:
        _fail("energy.delta_target", f"needs 0 < delta < 1 - theta, got {delta}")
    c = merged["coefficients"]
    if c["lz_depth"] < 0 or c["ll_depth"] < 0:
        _fail("coefficients", "depths must be >= 0")
    if c["ll_depth"] > 0 and 2 ** c["ll_depth"] > m // 3:
        _fail("coefficients.ll_depth", f"top x-mode exceeds the M/3 headroom of M={m}")
    if any(r < 0 or 2 ** (r + 1) > m // 3 for r in merged["data"]["rings"]):
        _fail("data.rings", "rings must fit inside the M/3 dealiasing band")
    if not merged["loss"]["beta_star_grid"]:
        _fail("loss.beta_star_grid", "must be nonempty")
    for s in merged["suites"]:
        if s not in SUITES:
            _fail("suites", f"unknown suite {s!r} (known: {sorted(SUITES)})")
    return merged


def load_config(path: str | None, seed_override=None) -> dict:
    if path is None:
        cfg = {}
    else:
        with open(path) as fh:
            cfg = json.load(fh)
    merged = validate_config(cfg)
    if seed_override is not None:
        merged["seed"] = int(seed_override)
    return merged


def _tag(value, provenance):
    if isinstance(value, (np.floating, np.integer)):
        value = value.item()
    return {"value": value, "provenance": provenance}


def _fmt(x) -> str:
    return f"{float(x):.17g}"


# -- verify -------------------------------------------------------------------


def run_verify(config: dict, out_dir: Path, threads: int = 1) -> int:
    names = config["suites"]
    seed = config["seed"]

    def one(name):
        return SUITES[name](seed=seed)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(one, names))
    else:
        results = [one(n) for n in names]
    payload = {"suites": [], "seed": _tag(seed, "configured")}
    failed = False
    for res in results:
        entry = {
            "suite": res.suite,
            "status": "pass" if res.passed else "fail",
            "runtime_s": _tag(res.runtime_s, "measured"),
            "measured": {k: _tag(v, "measured") for k, v in res.measured.items()},
        }
        if res.notes:
            entry["notes"] = res.notes
        payload["suites"].append(entry)
        failed |= not res.passed
        print(f"[{'PASS' if res.passed else 'FAIL'}] {res.suite} ({res.runtime_s:.1f}s)")
    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / "verify.json", "w") as fh:
        json.dump(payload, fh, indent=2, default=str)
    return 1 if failed else 0


# -- solve / energy -------------------------------------------------------------


def _build_experiment(config: dict):
    g = config["grid"]
    grid = TorusGrid(g["dim"], g["points"])
    c = config["coefficients"]
    if c["lz_depth"] == 0 and c["amp_t"] == 0.0:
        a = lipschitz_coefficients(amp_t=0.0, amp_x=c["amp_x"], base=c["base"])
    else:
        profile = CoefficientProfile(
            dim=g["dim"], base=c["base"], lz_depth=c["lz_depth"], ll_depth=c["ll_depth"],
            amp_t=c["amp_t"], amp_x=c["amp_x"], seed=c["seed"],
            time_window=tuple(c["time_window"]),
        )
        a = make_coefficients(profile)
    rng = np.random.default_rng(config["data"]["seed"])
    u0 = SpectralField.zero(grid)
    for j in config["data"]["rings"]:
        u0 = u0 + ring_field(grid, j, rng)
    ut0 = SpectralField.zero(grid)
    return grid, a, u0, ut0


def run_pipeline(config: dict, out_dir: Path, dump_snapshots: bool) -> int:
    t_start = time.perf_counter()
    out_dir.mkdir(parents=True, exist_ok=True)
    grid, a, u0, ut0 = _build_experiment(config)
    e = config["energy"]
    betas = sorted(e["beta_sweep"])
    horizon_cap = e["delta_target"] * LN2 / betas[0]
    dt = 0.2 * grid.spacing / np.sqrt(a.Lambda0)
    n = int(np.floor(horizon_cap / dt))
    horizon = n * dt

    sel = choose_gamma_mu(a, grid)
    if not sel.ok:
        with open(out_dir / "FAILED", "w") as fh:
            fh.write(f"gamma search failed: {sel.worst}\n")
        return 1
    cfg = EnergyConfig(theta=e["theta"], beta=betas[0], gamma=sel.gamma, mu=sel.mu,
                       nu_max=e["nu_max"], horizon=horizon)
    traj = solve(CauchyProblem(a, u0, ut0, horizon=horizon, dt=dt))
    if traj.aborted:
        with open(out_dir / "FAILED", "w") as fh:
            fh.write(f"solver blow-up at t={traj.abort_time}\n")
        _write_partial(out_dir, traj)
        return 1
    machine = EnergyMachine(a, grid, cfg)
    table = energy_table(traj, machine)

    # calibration on a Lipschitz run with the same data and forcing
    a_cal = lipschitz_coefficients()
    fmode = ring_field(grid, 4, np.random.default_rng(config["data"]["seed"] + 9))
    traj_cal = solve(CauchyProblem(a_cal, SpectralField.zero(grid),
                                   SpectralField.zero(grid), horizon=horizon, dt=dt,
                                   forcing=lambda t: np.sin(3.0 * t) * fmode))
    table_cal = energy_table(traj_cal, EnergyMachine(a_cal, grid, cfg))
    c2 = calibrate_c2(table_cal, cfg, 0.25)

    rep = inequality_check(table, cfg, betas, c2, machine=machine,
                           delta_target=e["delta_target"])
    loss = loss_meter(traj, e["theta"], config["loss"]["beta_star_grid"],
                      margin=config["loss"]["margin"])
    sigma = measured_index_curve(traj, e["theta"], config["loss"]["margin"])

    _write_energy_csv(out_dir / "energy.csv", table, cfg, rep)
    _write_loss_csv(out_dir / "loss.csv", table.times, sigma)
    if dump_snapshots:
        _write_snapshots(out_dir / "trajectory.npz", traj)

    summary = {
        "theta": _tag(e["theta"], "configured"),
        "beta_sweep": _tag(betas, "configured"),
        "beta_required": _tag(rep.beta_required, "measured"),
        "verdict": _tag("pass" if rep.ok else "fail", "measured"),
        "fitted_beta_star": _tag(loss.fitted_beta_star, "measured"),
        "loss_grid_floor": _tag(loss.floor, "configured"),
        "gamma": _tag(sel.gamma, "measured"),
        "mu": _tag(sel.mu, "measured"),
        "lambda0": _tag(a.lambda0, "measured"),
        "Lambda0": _tag(a.Lambda0, "measured"),
        "c2": _tag(c2, "measured"),
        "defect_ratio": _tag(rep.defect_ratio, "measured"),
        "horizon": _tag(horizon, "configured"),
        "dt": _tag(dt, "configured"),
        "n_samples": _tag(len(table.times), "measured"),
        "runtime_s": _tag(time.perf_counter() - t_start, "measured"),
    }
    with open(out_dir / "summary.json", "w") as fh:
        json.dump(summary, fh, indent=2)
    print(f"[{'PASS' if rep.ok else 'FAIL'}] energy verdict: beta_required={rep.beta_required}, "
          f"loss beta*={loss.fitted_beta_star} (floor {loss.floor})")
    return 0 if rep.ok else 1


def _write_energy_csv(path: Path, table, cfg: EnergyConfig, rep):
    beta = rep.beta_required if rep.beta_required is not None else cfg.beta
    E = total_series(table, cfg, beta)
    from .energy import centered_derivative
    dE, _ = centered_derivative(E, float(table.times[1] - table.times[0]))
    from .spaces import NormSpec, sobolev_norm
    bstar = beta / LN2
    n_nu = table.e.shape[1]
    header = (["t"] + [f"e_{nu}" for nu in range(n_nu)]
              + ["E", "norm_u", "norm_ut", "norm_Lu", "dEdt", "verdict"])
    lines = [",".join(header)]
    for i, t in enumerate(table.times):
        nu_u = sobolev_norm(table.u_fields[i], NormSpec(-cfg.theta + 1.0 - bstar * t))
        nu_ut = sobolev_norm(table.ut_fields[i], NormSpec(-cfg.theta - bstar * t))
        nu_lu = sobolev_norm(table.lu_coeffs[i], NormSpec(-cfg.theta - bstar * t))
        dval = dE[i] if np.isfinite(dE[i]) else 0.0
        verdict = int(rep.beta_required is not None)
        row = ([_fmt(t)] + [_fmt(v) for v in table.e[i]]
               + [_fmt(E[i]), _fmt(nu_u), _fmt(nu_ut), _fmt(nu_lu), _fmt(dval), str(verdict)])
        lines.append(",".join(row))
    path.write_text("\n".join(lines) + "\n")


def _write_loss_csv(path: Path, times, sigma):
    lines = ["t,sigma_measured"]
    for t, s in zip(times, sigma):
        lines.append(f"{_fmt(t)},{_fmt(s)}")
    path.write_text("\n".join(lines) + "\n")


def _write_snapshots(path: Path, traj):
    np.savez_compressed(
        path,
        times=traj.times,
        u=np.stack([f.coefficients for f in traj.u_snapshots]),
        ut=np.stack([f.coefficients for f in traj.ut_snapshots]),
    )


def _write_partial(out_dir: Path, traj):
    _write_snapshots(out_dir / "trajectory_partial.npz", traj)


def run_solve(config: dict, out_dir: Path) -> int:
    """Solve-and-track with trajectory snapshot dump (the `solve` subcommand)."""
    return run_pipeline(config, out_dir, dump_snapshots=True)


# -- report ---------------------------------------------------------------------


def run_report(out_dir: Path) -> int:
    failed = False
    verify = out_dir / "verify.json"
    if verify.exists():
        data = json.loads(verify.read_text())
        print("verification suites:")
        for s in data["suites"]:
            print(f"  {s['suite']:<22} {s['status']}")
            failed |= s["status"] != "pass"
    summary = out_dir / "summary.json"
    if summary.exists():
        data = json.loads(summary.read_text())
        print("energy run summary:")
        for key, entry in data.items():
            print(f"  {key:<18} {entry['value']}  [{entry['provenance']}]")
        failed |= data.get("verdict", {}).get("value") != "pass"
    if (out_dir / "FAILED").exists():
        print("marker file FAILED present:")
        print(" ", (out_dir / "FAILED").read_text().strip())
        failed = True
    if not verify.exists() and not summary.exists():
        print(f"no artifacts found under {out_dir}")
        return 2
    return 1 if failed else 0


# -- entry point -----------------------------------------------------------------


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="logwave", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("verify", "solve", "energy", "report"):
        p = sub.add_parser(name)
        p.add_argument("--config", type=str, default=None)
        p.add_argument("--out", type=str, default="out")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--threads", type=int, default=1)
        if name == "verify":
            p.add_argument("--suite", action="append", default=None,
                           help="suite name (repeatable); default: the spec set")
    args = parser.parse_args(argv)
    try:
        out_dir = Path(args.out)
        if args.command == "report":
            return run_report(out_dir)
        config = load_config(args.config, seed_override=args.seed)
        if args.command == "verify":
            if args.suite:
                config = dict(config, suites=list(args.suite))
                config = validate_config(config)
            return run_verify(config, out_dir, threads=args.threads)
        if args.command == "solve":
            return run_solve(config, out_dir)
        if args.command == "energy":
            return run_pipeline(config, out_dir, dump_snapshots=False)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
