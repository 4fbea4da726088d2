"""Command-line front end.

Every run writes its CSV outputs and a JSON manifest into ``--out``.  Exit
status is 0 on success, 1 on configuration errors and 2 on numerical
failures.  ``--manifest FILE`` reruns a previous invocation exactly.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__, ballmc, blocks
from .errors import ConfigError, NumericalError, SepscopeError
from .experiments import reference
from .experiments.config import ExperimentConfig, RunManifest, load_config_file, write_rows_csv
from .experiments.studies import (
    balanced_scatter,
    bloch_constancy,
    class_labels,
    draw_states,
    eight_by_eight_ratio_curve,
    ppt_probability,
    sep_vs_ratio_curve,
)
from .experiments.systems import SYSTEMS
from .figures import RECIPES
from .matcore import Field
from .parallel import ChunkPlan, map_chunks
from .specfun import chi1_closed, chi1_integral, chi2, chi_d
from .specfun.sepprob import sep_prob_dunkl, sep_prob_from_chi, sep_prob_induced, sep_prob_series
from .svg import PlotSpec, Series, write_plot

COMPARISON_COLUMNS = ("figure", "class", "statistic", "reference", "observed", "tolerance", "deviation", "pass")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _common(p: argparse.ArgumentParser, samples: bool = True) -> None:
    p.add_argument("--config", help="flat key = value config file")
    p.add_argument("--seed", type=int, help="master seed (default 0)")
    if samples:
        p.add_argument("--samples", type=float, help="number of draws (accepts 1e6)")
    p.add_argument("--threads", type=int, help="worker threads (default $SEPSCOPE_THREADS or all cores)")
    p.add_argument("--chunk-size", type=int, help="draws per random stream")
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--svg", action="store_true", help="also write an SVG plot")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sepscope", description="Separability probabilities of random bipartite states.")
    parser.add_argument("--version", action="version", version=f"sepscope {__version__}")
    parser.add_argument("--manifest", help="rerun the command recorded in a manifest file")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    systems = sorted(SYSTEMS)

    p = sub.add_parser("sample", help="dump per-state features (class, ratios, singular values, r)")
    _common(p)
    p.add_argument("--system", choices=systems)

    p = sub.add_parser("scatter", help="class-balanced scatter summary")
    _common(p, samples=False)
    p.add_argument("--system", choices=systems)
    p.add_argument("--kind", choices=("ratios", "singular", "w"), default="ratios")
    p.add_argument("--per-class", type=float)

    p = sub.add_parser("curve", help="PPT probability binned by singular-value ratios")
    _common(p)
    p.add_argument("--system", choices=systems)
    p.add_argument("--bins", type=int)

    p = sub.add_parser("ppt", help="PPT probability estimate against the conjectured value")
    _common(p)
    p.add_argument("--system", choices=systems)

    p = sub.add_parser("ball", help="operator-norm ball deformation curve or volume report")
    _common(p)
    p.add_argument("--kind", choices=("2x2", "3x3", "triple-block"), default="2x2")
    p.add_argument("--field", choices=("real", "complex"), default="real")
    p.add_argument("--half-width", type=float)
    p.add_argument("--eps-step", type=float, default=0.01)
    p.add_argument("--volume", type=int, metavar="N", help="report the N x N real ball volume instead")
    p.add_argument("--dump", action="store_true", help="also write surviving matrices")

    p = sub.add_parser("chi", help="evaluate the separability function")
    p.add_argument("--d", type=float, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--form", choices=("auto", "closed", "integral", "hypergeometric", "polynomial"), default="auto")

    p = sub.add_parser("formulas", help="cross-check the closed-form probabilities")
    p.add_argument("--all", action="store_true", help="d = 1, 2, 4 (default)")
    p.add_argument("--d", type=float, action="append")
    p.add_argument("--order", type=int, default=120)
    p.add_argument("--out", default=None)

    p = sub.add_parser("bloch", help="separability probability vs Bloch radius")
    _common(p)
    p.add_argument("--system", choices=systems)
    p.add_argument("--min-trials", type=int, default=100)

    p = sub.add_parser("reproduce-figure", help="regenerate a figure with its data and comparison table")
    p.add_argument("--id", required=True, choices=list(RECIPES))
    p.add_argument("--scale", type=float, default=1.0, help="budget multiplier")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int)
    p.add_argument("--out", default=".")
    return parser


# ---------------------------------------------------------------- helpers


def _experiment_config(args, **extra) -> ExperimentConfig:
    values = load_config_file(args.config) if getattr(args, "config", None) else {}
    overrides = {
        "system": getattr(args, "system", None),
        "seed": getattr(args, "seed", None),
        "samples": getattr(args, "samples", None),
        "threads": getattr(args, "threads", None),
        "chunk_size": getattr(args, "chunk_size", None),
        "per_class": getattr(args, "per_class", None),
        "bins": getattr(args, "bins", None),
    }
    overrides.update(extra)
    for key, value in overrides.items():
        if value is not None:
            values[key] = int(value) if isinstance(value, float) else value
    values.pop("output_dir", None)
    values["output_dir"] = str(args.out)
    return ExperimentConfig.from_mapping(values)


def _outdir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


class _Run:
    """Collects outputs and counts, then writes the manifest."""

    def __init__(self, args, argv):
        self.args = args
        self.argv = list(argv)
        self.start = time.perf_counter()
        self.outputs: list[str] = []
        self.counts: dict = {}
        self.rejected: dict = {}
        self.seed = getattr(args, "seed", None) or 0
        self.chunk_size = None
        self.n_chunks = None

    def add(self, *paths):
        self.outputs.extend(str(p) for p in paths)

    def finish(self, stem: str):
        out = _outdir(self.args)
        manifest = RunManifest(
            command=self.args.command,
            arguments={"argv": self.argv, **{k: v for k, v in vars(self.args).items() if k != "manifest"}},
            seed=self.seed, chunk_size=self.chunk_size, n_chunks=self.n_chunks,
            counts=self.counts, rejected=self.rejected, outputs=self.outputs,
            wall_time=round(time.perf_counter() - self.start, 3),
        )
        path = manifest.write(out / f"{stem}.manifest.json")
        print(f"manifest: {path}")


def _plan_info(run: _Run, cfg: ExperimentConfig, total: int) -> None:
    run.seed = cfg.seed
    run.chunk_size = cfg.chunk_size
    run.n_chunks = ChunkPlan(total, cfg.chunk_size).n_chunks


# --------------------------------------------------------------- commands


def cmd_sample(args, run: _Run) -> None:
    cfg = _experiment_config(args, samples=args.samples or 1000)
    spec = cfg.spec
    _plan_info(run, cfg, cfg.samples)
    sep_name, ent_name = class_labels(spec)

    def work(stream, size):
        rho, ppt = draw_states(spec, stream, size)
        sv, ok = blocks.block_singular_values(rho, spec.block)
        r = blocks.bloch_radius(blocks.bloch_matrix(rho, spec.dA, spec.dB))
        return ppt, sv, ok, r

    rows = []
    k = 0
    rejected = 0
    for ppt, sv, ok, r in map_chunks(work, ChunkPlan(cfg.samples, cfg.chunk_size), cfg.seed, cfg.threads):
        ratios = np.full((len(sv), 3), np.nan)
        if sv.shape[1] >= 3:
            ratios = blocks.ratios_from_singular_values(sv).as_array()
        else:
            ratios[:, 0] = sv[:, 1] / sv[:, 0]
        rejected += int(np.count_nonzero(~ok))
        for i in range(len(ppt)):
            row = {"index": k, "class": sep_name if ppt[i] else ent_name, "r": float(r[i])}
            for j, name in enumerate(("v1", "v2", "v3")):
                row[name] = "" if not np.isfinite(ratios[i, j]) else float(ratios[i, j])
            for j in range(3):
                row[f"s{j + 1}"] = float(sv[i, j]) if j < sv.shape[1] and np.isfinite(sv[i, j]) else ""
            rows.append(row)
            k += 1
    out = _outdir(args)
    path = write_rows_csv(out / f"sample-{spec.label}.csv", rows,
                          ("index", "class", "v1", "v2", "v3", "s1", "s2", "s3", "r"))
    run.add(path)
    run.counts = {"samples": cfg.samples, "ppt": sum(r["class"] == sep_name for r in rows)}
    run.rejected = {"singular_D1": rejected}
    print(f"{cfg.samples} states of {spec.label}: {run.counts['ppt']} PPT -> {path}")
    run.finish(f"sample-{spec.label}")


def cmd_scatter(args, run: _Run) -> None:
    cfg = _experiment_config(args)
    spec = cfg.spec
    run.seed, run.chunk_size = cfg.seed, cfg.chunk_size
    res = balanced_scatter(cfg, args.kind, pooled=(args.kind == "w"))
    s = res.summary
    run.n_chunks = res.chunks
    out = _outdir(args)
    stem = f"scatter-{args.kind}-{spec.label}"
    rows = []
    for cls in s.means:
        for j, name in enumerate(s.features):
            rows.append({"class": cls, "statistic": "mean", "i": name, "j": "", "value": s.means[cls][j]})
        for i, a in enumerate(s.features):
            for j, b in enumerate(s.features):
                rows.append({"class": cls, "statistic": "correlation", "i": a, "j": b,
                             "value": s.correlations[cls][i, j]})
    if s.pooled_correlation is not None:
        cols = [f"{c}:{f}" for c in s.means for f in s.features]
        for i, a in enumerate(cols):
            for j, b in enumerate(cols):
                rows.append({"class": "pooled", "statistic": "correlation", "i": a, "j": b,
                             "value": s.pooled_correlation[i, j]})
    run.add(write_rows_csv(out / f"{stem}-summary.csv", rows, ("class", "statistic", "i", "j", "value")))
    point_rows = [
        {"class": cls, **{f: float(v) for f, v in zip(s.features, p)}} for cls, pts in s.points.items() for p in pts
    ]
    run.add(write_rows_csv(out / f"{stem}-points.csv", point_rows, ("class",) + s.features))
    if args.svg:
        plot = PlotSpec("scatter3d-projection", f"{spec.label} {args.kind}", s.features[0], s.features[1],
                        [Series(c, p[:, 0], p[:, 1], p[:, 2]) for c, p in s.points.items()], zlabel=s.features[2])
        run.add(*write_plot(plot, out / f"{stem}-plot"))
    run.counts = {"draws": res.draws, **{f"class_{k}": v for k, v in s.counts.items()}}
    run.rejected = {"singular_D1": res.rejected}
    for cls, m in s.means.items():
        print(f"{cls:>10} mean " + " ".join(f"{x:.6f}" for x in m))
    if s.pooled_correlation is not None:
        lo, hi = s.off_diagonal_range()
        print(f"pooled correlation off-diagonal range [{lo:.6f}, {hi:.6f}]")
    run.finish(stem)


def cmd_curve(args, run: _Run) -> None:
    cfg = _experiment_config(args)
    spec = cfg.spec
    _plan_info(run, cfg, cfg.samples)
    if spec.block == 3:
        cs = sep_vs_ratio_curve(cfg)
    elif spec.block == 4:
        cs = eight_by_eight_ratio_curve(cfg)
    else:
        raise ConfigError("curve needs a 6x6 or 8x8 system")
    out = _outdir(args)
    stem = f"curve-{spec.label}"
    rows = [row for c in cs.curves.values() for row in c.rows()]
    run.add(write_rows_csv(out / f"{stem}.csv", rows,
                           ("variable", "lo", "hi", "center", "trials", "hits", "p", "stderr")))
    if args.svg:
        plot = PlotSpec("curve", f"{spec.label}: PPT probability vs ratio", "ratio", "PPT probability",
                        [Series(n, c.centers, c.probability, err=c.stderr) for n, c in cs.curves.items()],
                        xrange=(0, 1))
        run.add(*write_plot(plot, out / f"{stem}-plot"))
    run.counts = {"samples": cs.samples, "ppt": cs.ppt}
    run.rejected = {"singular_D1": cs.rejected}
    print(f"overall PPT probability {float(cs.overall):.6f} ({cs.ppt}/{cs.samples - cs.rejected})")
    for name, c in cs.curves.items():
        print(f"{name}: Spearman {c.spearman():+.3f}; bin-weighted average equals overall: "
              f"{c.weighted_average() == cs.overall}")
    run.finish(stem)


def cmd_ppt(args, run: _Run) -> None:
    cfg = _experiment_config(args)
    _plan_info(run, cfg, cfg.samples)
    est = ppt_probability(cfg)
    out = _outdir(args)
    stem = f"ppt-{est.system}"
    row = est.row()
    run.add(write_rows_csv(out / f"{stem}.csv", [row], tuple(row)))
    run.counts = {"samples": est.samples, "ppt": est.hits}
    target = "" if est.target is None else f" vs {est.target} = {float(est.target):.7f} (z = {est.z:+.2f})"
    print(f"{est.system}: {est.p:.7f} +/- {est.stderr:.7f}{target}")
    run.finish(stem)


def cmd_ball(args, run: _Run) -> None:
    out = _outdir(args)
    seed = args.seed or 0
    run.seed = seed
    chunk = args.chunk_size or ballmc.DEFAULT_CHUNK
    run.chunk_size = chunk
    if args.volume is not None:
        samples = int(args.samples or 10**7)
        run.n_chunks = ChunkPlan(samples, chunk).n_chunks
        rep = ballmc.volume_report(args.volume, samples, seed, chunk, args.threads)
        stem = f"ball-volume-{args.volume}"
        row = {"n": rep.n, "samples": rep.samples, "hits": rep.hits, "mc_volume": rep.mc_volume,
               "mc_stderr": rep.mc_stderr, "product_formula": rep.formula_volume,
               "quoted_constant": "" if rep.quoted_volume is None else rep.quoted_volume, "verdict": rep.verdict}
        run.add(write_rows_csv(out / f"{stem}.csv", [row], tuple(row)))
        run.counts = {"samples": rep.samples, "hits": rep.hits}
        print("\n".join(rep.lines()))
        run.finish(stem)
        return
    if not 0 < args.eps_step <= 1:
        raise ConfigError("--eps-step must lie in (0, 1]")
    grid = np.round(np.arange(1, int(round(1 / args.eps_step)) + 1) * args.eps_step, 10)
    grid = grid[grid <= 1.0]
    samples = int(args.samples or 10**6)
    run.n_chunks = ChunkPlan(samples, chunk).n_chunks
    field = Field.parse(args.field)
    if args.kind == "triple-block":
        curve = ballmc.triple_block_curve(field, args.half_width, samples, grid, seed, chunk, args.threads, args.dump)
    else:
        n = 2 if args.kind == "2x2" else 3
        curve = ballmc.ball_chi_curve(n, field, args.half_width, samples, grid, None, seed, chunk,
                                      args.threads, args.dump)
    stem = f"ball-{args.kind}-{field.value}"
    run.add(curve.to_csv(out / f"{stem}.csv"))
    if args.dump and curve.survivors is not None:
        flat = curve.survivors.reshape(len(curve.survivors), -1)
        cols = [f"a{i}{j}" for i in range(curve.n) for j in range(curve.n)]
        rows = [{c: str(v) for c, v in zip(cols, r)} for r in flat]
        run.add(write_rows_csv(out / f"{stem}-survivors.csv", rows, cols))
    if args.svg:
        series = [Series("Monte Carlo", curve.eps_grid, curve.probability, err=curve.stderr)]
        if args.kind == "2x2" and field is Field.REAL:
            series.append(Series("closed form", curve.eps_grid, chi1_closed(curve.eps_grid)))
        plot = PlotSpec("curve", f"{args.kind} {field.value} ball", "eps", "fraction of survivors", series,
                        xrange=(0, 1), yrange=(0, 1))
        run.add(*write_plot(plot, out / f"{stem}-plot"))
    run.counts = {"samples": curve.samples, "trials": curve.trials, "hits": curve.hits.tolist()}
    print(f"{curve.trials} of {curve.samples} box samples have norm < 1 "
          f"(rate {curve.survivor_rate:.4e} +/- {curve.survivor_rate_stderr:.1e}, L = {curve.half_width:g})")
    key = {"2x2": "2x2", "3x3": "3x3", "triple-block": "triple-block"}[args.kind] + f"-{field.value}"
    if key in reference.BALL_REFERENCE_COUNTS and args.half_width is None:
        ref_hits, ref_samples = reference.BALL_REFERENCE_COUNTS[key]
        z = ballmc.survivor_rate_z(curve.trials, curve.samples, ref_hits, ref_samples)
        print(f"reference {ref_hits}/{ref_samples}: two-proportion z = {z:+.2f}")
    if args.kind == "2x2" and field is Field.REAL and curve.trials:
        sup = float(np.max(np.abs(curve.probability - chi1_closed(curve.eps_grid))))
        print(f"sup |curve - closed form| = {sup:.4f}")
    run.finish(stem)


def chi_value(d: float, eps: float, form: str = "auto") -> tuple[float, str]:
    """Value of the separability function and a description of the form used."""
    if form == "auto":
        form = {1.0: "closed", 2.0: "polynomial"}.get(float(d), "hypergeometric")
    if form == "polynomial":
        if d != 2:
            raise ConfigError("the polynomial form exists for d = 2 only")
        return chi2(eps), "polynomial form eps^2 (4 - eps^2) / 3 (complex case)"
    if form == "closed":
        if d != 1:
            raise ConfigError("the dilogarithm closed form exists for d = 1 only")
        return chi1_closed(eps), "dilogarithm closed form (real case)"
    if form == "integral":
        if d != 1:
            raise ConfigError("the integral form exists for d = 1 only")
        return chi1_integral(eps), "Gauss-Legendre quadrature of the defining integral (real case)"
    return chi_d(eps, d), "regularised 3F2 form eps^d G(d+1)^3 / G(d/2+1)^2 3F2~(-d/2, d/2, d; d/2+1, 3d/2+1; eps^2)"


def cmd_chi(args, run) -> None:
    value, form = chi_value(args.d, args.eps, args.form)
    print(f"{value:.12g}")
    print(f"form: {form}")


def cmd_formulas(args, run) -> None:
    from fractions import Fraction

    ds = args.d or [1.0, 2.0, 4.0]
    targets = {1.0: Fraction(29, 64), 2.0: Fraction(8, 33), 4.0: Fraction(26, 323)}
    rows = []
    header = f"{'d':>4} {'target':>8} {'series':>14} {'induced':>14} {'double sum':>14} {'chi integral':>14} {'max rel dev':>12}"
    print(header)
    for d in ds:
        vals = {
            "series": sep_prob_series(d / 2),
            "induced": sep_prob_induced(d),
            "dunkl": sep_prob_dunkl(int(d)) if float(d).is_integer() and int(d) % 2 == 0 else float("nan"),
            "from_chi": sep_prob_from_chi(d, args.order),
        }
        t = targets.get(float(d))
        ref = float(t) if t is not None else vals["series"]
        dev = max(abs(v - ref) / ref for v in vals.values() if np.isfinite(v))
        rows.append({"d": d, "target": "" if t is None else str(t), **vals, "max_rel_dev": dev})
        fmt = lambda v: f"{v:14.10f}" if np.isfinite(v) else f"{'-':>14}"  # noqa: E731
        print(f"{d:>4g} {'' if t is None else str(t):>8} {fmt(vals['series'])} {fmt(vals['induced'])} "
              f"{fmt(vals['dunkl'])} {fmt(vals['from_chi'])} {dev:12.2e}")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        path = write_rows_csv(out / "formulas.csv", rows, tuple(rows[0]))
        print(f"table: {path}")


def cmd_bloch(args, run: _Run) -> None:
    cfg = _experiment_config(args)
    _plan_info(run, cfg, cfg.samples)
    rep = bloch_constancy(cfg, args.min_trials)
    out = _outdir(args)
    stem = f"bloch-{cfg.system}"
    run.add(write_rows_csv(out / f"{stem}.csv", list(rep.rows()),
                           ("variable", "lo", "hi", "center", "trials", "hits", "p", "stderr", "z", "included")))
    if args.svg:
        c = rep.curve
        plot = PlotSpec("histogram", f"{cfg.system}: probability vs Bloch radius", "r", "separability probability",
                        [Series("binned", c.centers, c.probability, err=c.stderr)], xrange=(0, 0.5))
        run.add(*write_plot(plot, out / f"{stem}-plot"))
    run.counts = {"samples": rep.curve.total_trials, "ppt": rep.curve.total_hits}
    run.rejected = {"excluded_bins": len(rep.excluded_bins)}
    print(f"radius: {rep.definition}")
    print(f"pooled {rep.pooled:.6f}; max |z| {rep.max_abs_z:.2f}; chi2 {rep.chi2:.2f} on {rep.dof} dof "
          f"(p = {rep.p_value:.3f}); excluded bins {rep.excluded_bins}")
    run.finish(stem)


def cmd_reproduce(args, run: _Run) -> None:
    recipe = RECIPES[args.id]
    run.seed = args.seed
    res = recipe.run(args.scale, args.seed, args.threads)
    out = _outdir(args)
    stem = f"figure-{recipe.key}"
    run.add(*write_plot(res.plot, out / stem))
    if res.comparison:
        run.add(write_rows_csv(out / f"{stem}-comparison.csv", res.comparison, COMPARISON_COLUMNS))
        for row in res.comparison:
            status = "PASS" if row["pass"] else "FAIL"
            print(f"[{status}] {row['class']} {row['statistic']}: observed {row['observed']} "
                  f"reference {row['reference']} (tol {row['tolerance']})")
    run.counts = res.counts
    run.rejected = res.rejected
    print(f"{recipe.description}: {', '.join(run.outputs)}")
    run.finish(stem)


COMMANDS = {
    "sample": cmd_sample, "scatter": cmd_scatter, "curve": cmd_curve, "ppt": cmd_ppt, "ball": cmd_ball,
    "chi": cmd_chi, "formulas": cmd_formulas, "bloch": cmd_bloch, "reproduce-figure": cmd_reproduce,
}


def _split_manifest(argv: list[str]) -> tuple[str | None, list[str]]:
    """Pull ``--manifest FILE`` (or ``--manifest=FILE``) out of ``argv``."""
    rest, path = [], None
    it = iter(argv)
    for a in it:
        if a == "--manifest":
            path = next(it, None)
            if path is None:
                raise ConfigError("--manifest needs a file")
        elif a.startswith("--manifest="):
            path = a.split("=", 1)[1]
        else:
            rest.append(a)
    return path, rest


def _dispatch(argv: list[str]) -> None:
    manifest_path, rest = _split_manifest(argv)
    if manifest_path is not None:
        stored = list(RunManifest.read(manifest_path).arguments.get("argv", []))
        if not stored:
            raise ConfigError("manifest does not record a command line")
        # later flags override earlier ones, so extra options act as overrides
        argv = stored + rest
    args = build_parser().parse_args(argv)
    if args.command is None:
        raise ConfigError("no subcommand given; see --help")
    if getattr(args, "threads", None) is not None and args.threads < 1:
        raise ConfigError("--threads must be positive")
    COMMANDS[args.command](args, _Run(args, argv))


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        _dispatch(argv)
    except ConfigError as exc:
        print(f"sepscope: configuration error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"sepscope: numerical failure: {exc}", file=sys.stderr)
        return 2
    except (SepscopeError, ValueError) as exc:
        # out-of-domain parameters are configuration errors
        print(f"sepscope: configuration error: {exc}", file=sys.stderr)
        return 1
    return 0

