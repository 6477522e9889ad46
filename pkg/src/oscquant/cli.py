"""Command-line front door: seeded, manifest-backed experiment runs.

Subcommands
    eec       residual report for basis pairs and a two-mode mixture
    eigen     finite-difference ladder vs the analytic one
    fig1      normalization-drift trials across mixture weights
    ladder    candidate energy levels and the consistency filter
    ensemble  action-angle sampling identities
    fit       slope recovery on synthetic frequency/energy data

Every run writes its outputs plus a ``manifest.json`` echoing the full
resolved configuration and the SHA-256 of each emitted file; reruns
with identical flags and seed are byte-identical.  CSV numbers carry 17
significant digits.  Exit codes: 0 success, 1 assertion failure,
2 usage or configuration error.
"""

import argparse
import csv
import hashlib
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import basis, eigensolver, ensemble, spectrum_fit, stability, variational
from .numerics import make_grid
from .transform import default_conjugate_grid

DEFAULT_C_SWEEP = "0,0.001,0.01,0.1,0.5,0.9,0.99,0.999,1"

_PLOT_SCRIPT = """\
#!/usr/bin/env python3
\"\"\"Render the drift trials: w_i versus trial index, one series per c.

Reads fig1_trials.csv from this script's directory and writes fig1.png
next to it.  Requires matplotlib.
\"\"\"
import csv
from collections import defaultdict
from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = Path(__file__).resolve().parent
series = defaultdict(lambda: ([], []))
with open(here / "fig1_trials.csv", newline="") as fh:
    for row in csv.DictReader(fh):
        xs, ys = series[row["c"]]
        xs.append(int(row["trial_index"]))
        ys.append(float(row["w_i"]))

fig, ax = plt.subplots(figsize=(8, 5))
for c, (xs, ys) in sorted(series.items(), key=lambda kv: float(kv[0])):
    ax.plot(xs, ys, marker=".", linestyle="-", linewidth=0.8, label=f"c = {c}")
ax.set_xlabel("trial index")
ax.set_ylabel("w_i")
ax.set_yscale("symlog", linthresh=1e-9)
ax.legend(fontsize=8, ncol=2)
ax.set_title("normalization drift per trial")
fig.tight_layout()
fig.savefig(here / "fig1.png", dpi=150)
print("wrote", here / "fig1.png")
"""


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.17g}"
    return str(value)


def _write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def _write_manifest(out_dir: Path, command: str, config: dict) -> None:
    outputs = {}
    for p in sorted(out_dir.iterdir()):
        if p.name == "manifest.json" or not p.is_file():
            continue
        outputs[p.name] = hashlib.sha256(p.read_bytes()).hexdigest()
    manifest = {"command": command, "config": config, "outputs": outputs}
    (out_dir / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n")


def _resolved_config(args, keys: list[str]) -> dict:
    config = {}
    for key in keys:
        value = getattr(args, key)
        config[key] = value
    return config


def _oscillator_params(args) -> basis.OscillatorParams:
    return basis.OscillatorParams(omega=args.omega, beta1=args.beta1,
                                  beta2=args.beta2, alpha=args.alpha)


def _parse_dist(spec: str):
    kind, _, rest = spec.partition(":")
    try:
        if kind == "point":
            return ensemble.PointMass(float(rest))
        if kind == "uniform":
            lo, hi = rest.split(",")
            return ensemble.Uniform(float(lo), float(hi))
        if kind == "discrete":
            values, weights = [], []
            for item in rest.split(","):
                v, w = item.split("@")
                values.append(float(v))
                weights.append(float(w))
            return ensemble.DiscreteMixture(tuple(values), tuple(weights))
    except (ValueError, TypeError) as exc:
        raise ValueError(f"bad distribution spec {spec!r}: {exc}") from None
    raise ValueError(f"unknown distribution kind {kind!r} "
                     f"(expected point:, uniform:, or discrete:)")


# ----------------------------------------------------------------------
# subcommands
# ----------------------------------------------------------------------

def cmd_eec(args, out_dir: Path) -> int:
    tolerance = args.tolerance if args.tolerance is not None else 1e-7
    params = _oscillator_params(args)
    qgrid = make_grid(args.b, args.n_points)
    lgrid = default_conjugate_grid(qgrid, params.omega)

    states = [(f"mode{n}", basis.mode_pair(n, params, qgrid, lgrid))
              for n in range(4)]
    states.append(("mixture_c0.5",
                   basis.superposition_pair(0.5, params, qgrid, lgrid)))

    rows = []
    all_ok = True
    for name, pair in states:
        report = variational.eec_report(pair)
        for residual, value in report.residuals().items():
            ok = value <= tolerance
            all_ok = all_ok and ok
            rows.append((name, residual, value, tolerance, ok))
    _write_csv(out_dir / "eec_report.csv",
               ["state", "residual", "value", "tolerance", "passed"], rows)
    return 0 if all_ok else 1


def cmd_eigen(args, out_dir: Path) -> int:
    tolerance = args.tolerance if args.tolerance is not None else 1e-5
    params = _oscillator_params(args)
    grid = make_grid(args.b, args.n_points)
    pairs = eigensolver.solve_coordinate(params, grid, args.k)

    rows = []
    worst = 0.0
    for pair in pairs:
        analytic = (2 * pair.index + 1) * params.beta1 * params.omega / 2.0
        rel_error = abs(pair.eigenvalue - analytic) / analytic
        worst = max(worst, rel_error)
        rows.append((pair.index, pair.eigenvalue, analytic, rel_error))
    _write_csv(out_dir / "eigenvalues.csv",
               ["n", "gamma_numeric", "gamma_analytic", "rel_error"], rows)
    return 0 if worst <= tolerance else 1


def cmd_fig1(args, out_dir: Path) -> int:
    try:
        c_values = [float(tok) for tok in args.c_list.split(",") if tok.strip()]
    except ValueError as exc:
        raise ValueError(f"bad --c-list: {exc}") from None
    if not c_values:
        raise ValueError("--c-list is empty")

    configs = [stability.StabilityConfig(
        c=c, num_modes=args.modes, rho_max=args.rho_max, num_trials=args.trials,
        half_width=args.b, n_points=args.n_points, alpha=args.alpha or 1.0,
        seed=args.seed) for c in c_values]
    results = stability.run_experiment(configs)

    trial_rows = []
    summary_rows = []
    for res in results:
        for i, w in enumerate(res.w):
            trial_rows.append((res.config.c, i, w))
        s = res.summary
        summary_rows.append((res.config.c, s.mean, s.std, s.max_abs))
    _write_csv(out_dir / "fig1_trials.csv", ["c", "trial_index", "w_i"], trial_rows)
    _write_csv(out_dir / "fig1_summary.csv", ["c", "mean", "std", "max_abs"],
               summary_rows)
    (out_dir / "plot_fig1.py").write_text(_PLOT_SCRIPT)
    return 0


def cmd_ladder(args, out_dir: Path) -> int:
    params = _oscillator_params(args)
    lines = ensemble.energy_ladder(params, args.n_max, args.m_max)
    lines = ensemble.consistency_filter(lines, params)
    rows = [(ln.n, ln.m, ln.potential, ln.kinetic, ln.total, ln.mean_action,
             ln.survives) for ln in lines]
    _write_csv(out_dir / "spectrum.csv",
               ["n", "m", "V", "T", "E", "mean_action", "survives"], rows)
    return 0


def cmd_ensemble(args, out_dir: Path) -> int:
    angle_dist = _parse_dist(args.q_dist)
    action_dist = _parse_dist(args.a_dist)
    samples = ensemble.sample_ensemble(angle_dist, action_dist,
                                       args.num_samples, args.omega, args.seed)
    est = ensemble.estimate_vte(samples)
    dev_v = abs(est.potential - est.factored_potential)
    dev_t = abs(est.kinetic - est.factored_kinetic)
    dev_e = abs(est.total / est.mean_action_omega - 1.0)
    _write_csv(out_dir / "ensemble_check.csv",
               ["V", "T", "E", "mean_action_omega", "factored_V", "factored_T",
                "dev_V", "dev_T", "dev_E_rel", "se_V", "se_T"],
               [(est.potential, est.kinetic, est.total, est.mean_action_omega,
                 est.factored_potential, est.factored_kinetic,
                 dev_v, dev_t, dev_e, est.se_potential, est.se_kinetic)])
    return 0


def cmd_fit(args, out_dir: Path) -> int:
    if args.data is not None:
        data = _read_fit_csv(Path(args.data))
    else:
        data = spectrum_fit.synth_data(
            beta_true=args.beta_true, work_function=args.work_function,
            omega_range=(args.omega_min, args.omega_max), n_rows=args.rows,
            noise_level=args.noise, seed=args.seed)
        _write_csv(out_dir / "data.csv", ["omega", "energy"],
                   zip(data.omega, data.energy))
    if data.n_rows == 0:
        raise ValueError("dataset is empty (all rows below threshold)")

    if args.model == "origin":
        result = spectrum_fit.fit_beta(data)
    else:
        result = spectrum_fit.fit_photoelectric(data)

    _write_csv(out_dir / "fit.csv",
               ["model", "beta_hat", "intercept", "rms_residual", "n_rows"],
               [(args.model, result.beta_hat, result.intercept,
                 result.rms_residual, data.n_rows)])
    (out_dir / "fit.txt").write_text(
        f"model={args.model}\n"
        f"beta_hat={result.beta_hat:.17g}\n"
        f"intercept={result.intercept:.17g}\n"
        f"rms_residual={result.rms_residual:.17g}\n"
        f"n_rows={data.n_rows}\n")
    return 0


def _read_fit_csv(path: Path) -> spectrum_fit.FrequencyEnergyData:
    omega, energy = [], []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or \
                {"omega", "energy"} - set(reader.fieldnames):
            raise ValueError(f"{path} must have columns omega,energy")
        for row in reader:
            omega.append(float(row["omega"]))
            energy.append(float(row["energy"]))
    return spectrum_fit.FrequencyEnergyData(np.array(omega), np.array(energy))


# ----------------------------------------------------------------------
# parser plumbing
# ----------------------------------------------------------------------

_COMMON_KEYS = ["b", "n_points", "omega", "beta1", "beta2", "alpha", "seed",
                "tolerance"]

_COMMANDS = {
    "eec": (cmd_eec, []),
    "eigen": (cmd_eigen, ["k"]),
    "fig1": (cmd_fig1, ["c_list", "trials", "modes", "rho_max"]),
    "ladder": (cmd_ladder, ["n_max", "m_max"]),
    "ensemble": (cmd_ensemble, ["num_samples", "q_dist", "a_dist"]),
    "fit": (cmd_fit, ["data", "model", "beta_true", "work_function", "rows",
                      "noise", "omega_min", "omega_max"]),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--b", type=float, default=10.0,
                        help="grid half width (default 10)")
    common.add_argument("--n-points", type=int, default=4001, dest="n_points",
                        help="odd number of grid points (default 4001)")
    common.add_argument("--omega", type=float, default=1.0)
    common.add_argument("--beta1", type=float, default=1.0)
    common.add_argument("--beta2", type=float, default=1.0)
    common.add_argument("--alpha", type=float, default=None,
                        help="basis scale (default sqrt(omega/beta1))")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out-dir", default="out", dest="out_dir")
    common.add_argument("--tolerance", type=float, default=None,
                        help="pass/fail threshold where the subcommand asserts")

    parser = argparse.ArgumentParser(
        prog="oscquant",
        description="seeded oscillator-quantization experiments with CSV output")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("eec", parents=[common],
                   help="equilibrium-condition residual report")

    p_eigen = sub.add_parser("eigen", parents=[common],
                             help="eigenvalue ladder vs analytic values")
    p_eigen.add_argument("--k", type=int, default=8,
                         help="number of modes (default 8)")

    p_fig1 = sub.add_parser("fig1", parents=[common],
                            help="normalization-drift experiment")
    p_fig1.add_argument("--c-list", default=DEFAULT_C_SWEEP, dest="c_list")
    p_fig1.add_argument("--trials", type=int, default=80)
    p_fig1.add_argument("--modes", type=int, default=200)
    p_fig1.add_argument("--rho-max", type=float, default=5e-5, dest="rho_max")

    p_ladder = sub.add_parser("ladder", parents=[common],
                              help="energy levels and consistency filter")
    p_ladder.add_argument("--n-max", type=int, default=3, dest="n_max")
    p_ladder.add_argument("--m-max", type=int, default=3, dest="m_max")

    p_ens = sub.add_parser("ensemble", parents=[common],
                           help="action-angle sampling identities")
    p_ens.add_argument("--num-samples", type=int, default=100000,
                       dest="num_samples")
    p_ens.add_argument("--q-dist", default=f"uniform:0,{2 * math.pi}",
                       dest="q_dist", help="angle law (point:/uniform:/discrete:)")
    p_ens.add_argument("--a-dist", default="point:1.0", dest="a_dist",
                       help="action law (point:/uniform:/discrete:)")

    p_fit = sub.add_parser("fit", parents=[common],
                           help="slope recovery on (omega, energy) data")
    p_fit.add_argument("--data", default=None,
                       help="CSV with columns omega,energy; synthesized if absent")
    p_fit.add_argument("--model", choices=["origin", "photoelectric"],
                       default="photoelectric")
    p_fit.add_argument("--beta-true", type=float, default=1.0545718e-34,
                       dest="beta_true")
    p_fit.add_argument("--work-function", type=float, default=3.5e-19,
                       dest="work_function")
    p_fit.add_argument("--rows", type=int, default=100)
    p_fit.add_argument("--noise", type=float, default=0.0,
                       help="relative Gaussian noise level")
    p_fit.add_argument("--omega-min", type=float, default=4e15, dest="omega_min")
    p_fit.add_argument("--omega-max", type=float, default=8e15, dest="omega_max")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    func, extra_keys = _COMMANDS[args.command]

    out_dir = Path(args.out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        code = func(args, out_dir)
        _write_manifest(out_dir, args.command,
                        _resolved_config(args, _COMMON_KEYS + extra_keys))
    except ValueError as exc:
        print(f"oscquant {args.command}: configuration error: {exc}",
              file=sys.stderr)
        return 2
    return code


if __name__ == "__main__":
    sys.exit(main())
