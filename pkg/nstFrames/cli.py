"""cli

nst_frames: command line front end.

    nst_frames atoms --kind shearlet --index 3 1 5 7 1 --grid 64
    nst_frames gram --p 1.0 --jmax 5
    nst_frames approx --frame shearlet curvelet --seeds 10 --grid 512
    nst_frames separate --grid 512 --scales 3..6
    nst_frames transform --frame wavelet --grid 256 --input f --output c

Every run writes config.json next to its outputs in --out.  Exit codes:
0 success, 1 computational refusal, 2 usage error.

"""

import argparse
from dataclasses import dataclass, field
import json
import logging
from pathlib import Path
import sys
from typing import Optional
import numpy as np

from . import package_version
from .cartoon.approx import approximation_study, sparsity_ratios
from .cartoon.cartoon import make_cartoon
from .frames.atoms import CurveletIndex, ShearletIndex, WaveletIndex
from .gram.cross_gram import (GramSweep, decay_entries, decay_fit, decay_ray, format_index,
                              saturation_ratio, sweep_truncations)
from .gram.quadrature import Quadrature
from .lib.results_log import write_csv, write_json
from .separation.csep import SolverParams
from .separation.mixture import MixtureSpec, default_mixture, render_mixture
from .separation.separate import separation_ratio_curve
from .transform.grid import is_power_of_two, read_grid, write_grid
from .transform.tiles import FRAMES, FrameSpec
from .transform.transform import analyze, render_atom, synthesize
from .utils import constants
from .utils.errors import FrameError, GridMismatch, SliceError

log = logging.getLogger(__name__)

@dataclass
class RunConfig():
    command: str
    options: dict = field(default_factory=dict)
    seed: int = 0
    out: str = "results"
    workers: Optional[int] = None
    version: str = field(default_factory=lambda: package_version()[0])

    def to_dict(self):
        return {"command": self.command, "options": dict(self.options), "seed": self.seed,
                "out": self.out, "workers": self.workers, "version": self.version}

    @property
    def out_dir(self):
        return Path(self.out)

# global flags, not echoed in RunConfig.options
common_flags = ("command", "seed", "out", "workers", "verbose", "quiet", "config", "plot", "quad_samples")

def grid_size(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("grid must be a power of 2")
    if not is_power_of_two(n):
        raise argparse.ArgumentTypeError("grid must be a power of 2")
    return n

def scale_range(text):
    """"3..6" -> [3, 4, 5, 6], "4" -> [4]"""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            scales = list(range(int(lo), int(hi) + 1))
        else:
            scales = [int(text)]
    except ValueError:
        raise argparse.ArgumentTypeError("scales must be j0..j1 or j, got %s" % text)
    if not scales or scales[0] < 0:
        raise argparse.ArgumentTypeError("empty or negative scale range %s" % text)
    return scales

def make_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workers", type=int, default=None, help="worker threads (default: cores)")
    common.add_argument("--seed", type=int, default=0, help="base random seed")
    common.add_argument("--out", default="results", help="output directory")
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug")
    common.add_argument("--quiet", action="store_true", help="no progress bars")
    common.add_argument("--config", help="json file of option defaults")
    common.add_argument("--plot", action="store_true", help="also write a summary figure")
    common.add_argument("--quad-samples", type=int, default=None, help=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="nst_frames",
                                     description="curvelet, shearlet and Meyer wavelet frame experiments")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("atoms", parents=[common], help="sample one discrete atom on a grid")
    p.add_argument("--kind", choices=FRAMES, required=True)
    p.add_argument("--index", type=int, nargs="+", required=True,
                   help="curvelet: j l m1 m2, shearlet: j k m1 m2 cone, wavelet: h j n1 n2")
    p.add_argument("--grid", type=grid_size, default=64)
    p.add_argument("--domain", choices=("space", "frequency"), default="space")
    p.add_argument("--name", default="atom", help="output file stem")

    p = sub.add_parser("gram", parents=[common], help="cross-Grammian norms and decay")
    p.add_argument("--p", type=float, nargs="+", default=[1.0], help="exponents in (0, 1]")
    p.add_argument("--jmax", type=int, default=constants.gram_j_max)
    p.add_argument("--m-radius", type=int, default=constants.gram_m_radius)
    p.add_argument("--jmax-sweep", type=int, nargs="+", help="nondecreasing j_max values")
    p.add_argument("--radius-sweep", type=int, nargs="+", help="nondecreasing m_radius values")
    p.add_argument("--threshold", type=float, default=constants.gram_threshold)
    p.add_argument("--entries-radius", type=int, default=constants.gram_entries_radius)
    p.add_argument("--decay-slice", type=int, nargs=4, metavar=("J", "K", "JT", "L"),
                   default=[constants.decay_scale, 0, constants.decay_scale, 0])
    p.add_argument("--decay-ray", type=int, nargs=3, metavar=("START", "STOP", "COUNT"),
                   default=[constants.decay_ray_start, constants.decay_ray_stop, constants.decay_ray_points],
                   help="geometric shearlet positions (t, 0) the decay slice is fitted on")

    p = sub.add_parser("approx", parents=[common], help="n-term approximation of cartoons")
    p.add_argument("--frame", choices=FRAMES, nargs="+", default=list(FRAMES))
    p.add_argument("--seeds", type=int, default=10, help="number of cartoons, seeds seed..seed+n-1")
    p.add_argument("--nu", type=float, default=constants.cartoon_nu)
    p.add_argument("--grid", type=grid_size, default=constants.approx_grid)
    p.add_argument("--n-list", type=int, nargs="+", default=constants.approx_n_list)
    p.add_argument("--lowpass-scale", type=int, default=constants.approx_lowpass_scale)
    p.add_argument("--lp-grids", type=grid_size, nargs="+", default=[],
                   help="grid sizes for the shearlet / curvelet l_p ratio of every seed")
    p.add_argument("--lp", type=float, default=constants.lp_exponent, help="l_p exponent of the ratio")

    p = sub.add_parser("separate", parents=[common], help="geometric separation of points and curves")
    p.add_argument("--mixture", help="mixture json (default: built in points + ellipse)")
    p.add_argument("--grid", type=grid_size, default=constants.approx_grid)
    p.add_argument("--scales", type=scale_range, default=[3, 4, 5, 6])
    p.add_argument("--max-iter", type=int, default=constants.solver_max_iter)
    p.add_argument("--rel-tol", type=float, default=constants.solver_rel_tol)
    p.add_argument("--no-coherence", action="store_true", help="skip the cluster diagnostics")
    p.add_argument("--no-grids", action="store_true", help="do not write per scale grids")

    p = sub.add_parser("transform", parents=[common], help="analysis or synthesis of a grid file")
    p.add_argument("--frame", choices=FRAMES, required=True)
    p.add_argument("--grid", type=grid_size, default=256)
    p.add_argument("--input", help="space grid (or coefficients with --inverse); default: a cartoon")
    p.add_argument("--output", default="coefficients", help="output file stem inside --out")
    p.add_argument("--inverse", action="store_true", help="synthesize from a coefficient file")
    p.add_argument("--nu", type=float, default=constants.cartoon_nu)
    return parser, sub.choices

def _load_defaults(path):
    with open(path, "r") as f:
        loaded = json.load(f)
    return {key.replace("-", "_"): val for key, val in loaded.items()}

def parse_args(argv):
    parser, subparsers = make_parser()
    if not argv:
        parser.print_usage(sys.stderr)
        raise SystemExit(constants.exit_usage)
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        raise SystemExit(constants.exit_usage)
    if args.config:
        # explicit flags win over the file, so parse again with the file as defaults
        try:
            defaults = _load_defaults(args.config)
        except (OSError, ValueError) as err:
            parser.error("cannot read config %s: %s" % (args.config, err))
        subparsers[args.command].set_defaults(**defaults)
        args = parser.parse_args(argv)
    if args.command in ("approx", "separate", "transform", "atoms") and not is_power_of_two(args.grid):
        parser.error("grid must be a power of 2")
    options = {key: val for key, val in vars(args).items() if key not in common_flags}
    config = RunConfig(args.command, options, args.seed, args.out, args.workers)
    return config, args

def setup_logging(verbose):
    level = logging.WARNING
    if verbose == 1:
        level = logging.INFO
    elif verbose >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger().setLevel(level)

def _quad(args):
    if args.quad_samples is None:
        return None
    return Quadrature(samples=args.quad_samples)

def parse_index(kind, values):
    values = [int(v) for v in values]
    if kind == "curvelet" and len(values) == 4:
        return CurveletIndex(values[0], values[1], (values[2], values[3]))
    if kind == "shearlet" and len(values) == 5:
        return ShearletIndex(values[0], values[1], (values[2], values[3]), values[4])
    if kind == "wavelet" and len(values) == 4:
        return WaveletIndex(values[0], values[1], (values[2], values[3]))
    raise ValueError("%s index needs %d integers, got %d" % (kind, 5 if kind == "shearlet" else 4, len(values)))

def run_atoms(config, args, progress):
    opts = config.options
    index = parse_index(opts["kind"], opts["index"])
    atom = render_atom(index, opts["grid"], opts["domain"])
    provenance = {"index": format_index(index), "kind": opts["kind"], "grid": opts["grid"]}
    write_grid(config.out_dir / opts["name"], atom, opts["domain"], provenance)
    print("atoms: %s on %d x %d, max |value| = %.6g" % (format_index(index), opts["grid"], opts["grid"],
                                                       float(np.max(np.abs(atom)))))

def run_gram(config, args, progress):
    opts = config.options
    for p in opts["p"]:
        if not 0.0 < p <= 1.0:
            raise ValueError("p must be in (0, 1], got %s" % p)
    j_sweep = opts["jmax_sweep"] or [opts["jmax"]]
    r_sweep = opts["radius_sweep"] or [opts["m_radius"]]
    truncations = sweep_truncations(j_sweep, r_sweep)
    quad = _quad(args)
    sweep = GramSweep(truncations, opts["p"], opts["threshold"], opts["entries_radius"], quad)
    table = sweep.run(config.workers, progress)

    def entry_rows():
        for eta, mu, value, b in sweep.records:
            yield {"row_index": format_index(eta), "col_index": format_index(mu),
                   "re": value.real, "im": value.imag, "b": b}

    write_csv(config.out_dir / "gram_entries.csv", entry_rows(),
              ["row_index", "col_index", "re", "im", "b"])
    write_csv(config.out_dir / "convergence.csv", (row._asdict() for row in table),
              ["j_max", "m_radius", "p", "op_p_norm", "row_sup", "col_sup"])

    j, k, jt, ell = opts["decay_slice"]
    ray = decay_ray(*opts["decay_ray"])
    try:
        fit = decay_fit(decay_entries(j, k, jt, ell, ray, quad=quad))
        decay = {"decay_slope": fit.slope, "decay_r2": fit.r2, "decay_count": fit.count}
    except SliceError as err:
        log.warning("decay slice %s: %s", opts["decay_slice"], err)
        decay = {"decay_slope": None, "decay_r2": None, "decay_count": 0}

    primary = opts["p"][0]
    rows = [row for row in table if row.p == primary]
    last = rows[-1]
    summary = {"p": primary, "j_max": last.j_max, "m_radius": last.m_radius,
               "op_p_norm": last.op_p_norm, "row_sup": last.row_sup, "col_sup": last.col_sup,
               "saturation_ratio": saturation_ratio([row.op_p_norm for row in rows]),
               "entries": len(sweep.records),
               "table": [row._asdict() for row in table]}
    summary.update(decay)
    write_json(config.out_dir / "gram_summary.json", summary)
    if args.plot:
        from .lib.plots import plot_convergence
        plot_convergence(table, config.out_dir / "convergence.png")
    print("gram: op_p_norm = %.10g (p = %g, j_max = %d, m_radius = %d), saturation %.4g"
          % (last.op_p_norm, primary, last.j_max, last.m_radius, summary["saturation_ratio"]))

def run_approx(config, args, progress):
    opts = config.options
    if opts["seeds"] < 1:
        raise ValueError("seeds must be >= 1, got %s" % opts["seeds"])
    seeds = list(range(config.seed, config.seed + opts["seeds"]))
    curves = approximation_study(seeds, opts["frame"], opts["nu"], opts["n_list"], opts["grid"],
                                 opts["lowpass_scale"], config.workers, progress)

    def curve_rows():
        for curve in curves:
            for row in curve.rows():
                yield {name: row[name] for name in ("frame", "seed", "N", "sq_error", "full_sq_error")}

    write_csv(config.out_dir / "curve.csv", curve_rows(), ["frame", "seed", "N", "sq_error", "full_sq_error"])
    lp_rows = []
    if opts["lp_grids"]:
        lp_rows = sparsity_ratios(seeds, opts["nu"], opts["lp_grids"], opts["lp"], opts["lowpass_scale"],
                                  workers=config.workers)
        write_csv(config.out_dir / "lp_ratios.csv", lp_rows, ["seed", "grid", "p", "ratio"])
    by_frame = {}
    for frame in opts["frame"]:
        slopes = [c.slope for c in curves if c.frame == frame and np.isfinite(c.slope)]
        decays = [c.decay_exponent for c in curves if c.frame == frame and np.isfinite(c.decay_exponent)]
        by_frame[frame] = {"mean_slope": float(np.mean(slopes)) if slopes else None,
                           "mean_decay_exponent": float(np.mean(decays)) if decays else None,
                           "curves": len([c for c in curves if c.frame == frame])}
    write_json(config.out_dir / "fit_summary.json",
               {"grid": opts["grid"], "nu": opts["nu"], "seeds": seeds, "frames": by_frame,
                "curves": [c.summary() for c in curves], "lp_ratios": lp_rows})
    if args.plot:
        from .lib.plots import plot_rate_curves
        plot_rate_curves(curves, config.out_dir / "rate_curves.png")
    for frame, fit in by_frame.items():
        slope = fit["mean_slope"]
        print("approx: %s mean slope %s over %d seeds" % (frame, "n/a" if slope is None else "%.4f" % slope,
                                                          fit["curves"]))
    for n in opts["lp_grids"]:
        ratios = [row["ratio"] for row in lp_rows if row["grid"] == n]
        print("approx: l_%g ratio shearlet / curvelet on %d x %d in [%.4f, %.4f]"
              % (opts["lp"], n, n, min(ratios), max(ratios)))

def run_separate(config, args, progress):
    opts = config.options
    spec = MixtureSpec.load(opts["mixture"]) if opts["mixture"] else default_mixture()
    write_json(config.out_dir / "mixture.json", spec.to_dict())
    mix = render_mixture(spec, opts["grid"])
    params = SolverParams(max_iter=opts["max_iter"], rel_tol=opts["rel_tol"])
    results = separation_ratio_curve(mix, opts["scales"], params, not opts["no_coherence"],
                                     config.workers, progress)
    if not opts["no_grids"]:
        for r in results:
            provenance = {"j": r.j, "grid": opts["grid"]}
            for name, data in (("W", r.W), ("S", r.S), ("P", r.P), ("C", r.C)):
                write_grid(config.out_dir / "grids" / ("%s_j%d" % (name, r.j)), data, "space",
                           dict(provenance, component=name))
    write_csv(config.out_dir / "ratios.csv", (r.ratio_row() for r in results),
              ["j", "ratio", "point_error", "curve_error", "iterations", "objective", "converged"])
    if not opts["no_coherence"]:
        write_csv(config.out_dir / "coherence.csv", (r.coherence_row() for r in results),
                  ["j", "delta", "mu_c", "bound", "measured_error", "bound_holds"])
    write_json(config.out_dir / "solver_log.json", [r.solver_log() for r in results])
    if args.plot:
        from .lib.plots import plot_separation
        plot_separation(results, config.out_dir / "separation.png")
    for r in results:
        print("separate: j = %d ratio = %.6g iterations = %d%s" % (r.j, r.ratio, r.iterations,
                                                                "" if r.converged else " (not converged)"))

def run_transform(config, args, progress):
    opts = config.options
    n = opts["grid"]
    spec = FrameSpec(opts["frame"])
    if opts["inverse"]:
        if not opts["input"]:
            raise ValueError("--inverse needs --input")
        vector, sidecar = read_grid(opts["input"])
        template = analyze(np.zeros((n, n)), spec)
        if vector.ndim != 1 or vector.size != template.size:
            raise GridMismatch("%s holds %d coefficients, %s on %d x %d needs %d"
                             % (opts["input"], vector.size, spec.kind, n, n, template.size))
        f = synthesize(template.from_vector(vector), config.workers, progress)
        write_grid(config.out_dir / opts["output"], f, "space", {"frame": spec.to_dict(), "grid": n})
        print("transform: synthesized %s grid %d x %d, energy %.10g" % (spec.kind, n, n, float(np.sum(f**2))))
        return
    if opts["input"]:
        f, _ = read_grid(opts["input"])
        f = np.real(f)
        if f.shape != (n, n):
            raise GridMismatch("input grid %s does not match --grid %d" % (f.shape, n))
    else:
        f = make_cartoon(config.seed, opts["nu"]).render(n)
    coeffs = analyze(f, spec, config.workers, progress)
    provenance = coeffs.provenance()
    provenance["tiles"] = [[list(key), list(coeffs.values[key].shape)] for key in coeffs.keys]
    write_grid(config.out_dir / opts["output"], coeffs.to_vector(), "coefficients", provenance)
    residual = np.linalg.norm(synthesize(coeffs, config.workers) - f)
    print("transform: %s %d coefficients, energy %.10g, reconstruction residual %.3g"
          % (spec.kind, coeffs.size, coeffs.energy(), residual))

commands = {
    "atoms": run_atoms,
    "gram": run_gram,
    "approx": run_approx,
    "separate": run_separate,
    "transform": run_transform,
}

def run(config, args):
    progress = not args.quiet and sys.stderr.isatty()
    config.out_dir.mkdir(parents=True, exist_ok=True)
    write_json(config.out_dir / "config.json", config.to_dict())
    try:
        commands[config.command](config, args, progress)
    except FrameError as err:
        log.error("%s refused: %s", config.command, err)
        print("error:", err, file=sys.stderr)
        return constants.exit_refused
    except ValueError as err:
        print("error:", err, file=sys.stderr)
        return constants.exit_usage
    return constants.exit_ok

def main(argv=None):
    if argv is None:
        argv = sys.argv[1:]
    try:
        config, args = parse_args(argv)
    except SystemExit as err:
        return err.code if isinstance(err.code, int) else constants.exit_usage
    setup_logging(args.verbose)
    log.info("nst_frames %s %s", config.version, config.command)
    return run(config, args)

if __name__ == "__main__":
    sys.exit(main())
