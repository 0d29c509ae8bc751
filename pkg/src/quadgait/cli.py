"""Batch command line front end.

Subcommands plan a gait, replay it, and write a trace CSV plus two SVG
plots into the configured output directory. Exit codes: 0 success, 1 the
replayed trace contains stability/clearance/workspace violations, 2 config
or I/O problem, 3 the planner reports infeasibility.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from typing import List, Optional

from .config import Config, load_config
from .errors import ConfigError, QuadGaitError
from .model import default_stance
from .simulate import SimTrace, run_case_study, simulate
from .spin import plan_spin
from .svgplot import write_plots_svg
from .terrain import FlatTerrain
from .timeline import TimelineBuilder
from .traceio import read_trace_csv, write_trace_csv
from .transition import plan_wave_transition, run_transition, step_margins
from .wave import plan_level_walk, plan_stair_ascent, plan_stair_descent

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_CONFIG = 2
EXIT_INFEASIBLE = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadgait",
        description="Plan and kinematically replay statically stable "
        "quadruped gaits: level walking, stair climbs and descents, spins "
        "in place, and the full walk-climb-spin-descend scenario.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument(
            "--config", metavar="PATH", default=None, help="config file to load"
        )
        p.add_argument(
            "--set",
            dest="sets",
            metavar="KEY=VALUE",
            action="append",
            default=[],
            help="override a config key (repeatable)",
        )
        return p

    add("scenario", "full scenario: shift, walk, climb, spin, descend")
    add("walk", "wave gait over level ground (level_cycles cycles)")
    add("climb", "wave gait up the configured stair flight")
    add("descend", "wave gait down the configured stair flight")
    add("spin", "spin in place by spin_target_deg")
    add("transition", "shift from centered feet into the forward gait")
    add("check", "validate the configuration and exit")
    plot = add("plot", "re-plot an existing trace CSV")
    plot.add_argument("csv", metavar="TRACE_CSV", help="trace CSV to plot")
    return parser


def _report(trace: SimTrace, cfg: Config, name: str) -> int:
    os.makedirs(cfg.out_dir, exist_ok=True)
    csv_path = os.path.join(cfg.out_dir, f"{name}.csv")
    write_trace_csv(trace, csv_path)
    traj_path, margin_path = write_plots_svg(
        trace, os.path.join(cfg.out_dir, name)
    )
    span = trace.t[-1] - trace.t[0] if trace.n_samples else 0.0
    print(f"samples: {trace.n_samples} over {span:.3f} s (dt={trace.dt:g})")
    print(f"min stability margin: {trace.min_margin:.6g} m")
    for label, t0, t1 in trace.phases:
        print(f"  phase {label:<12} {t0:9.3f} .. {t1:9.3f} s")
    bad = trace.violations
    if bad:
        print(f"violations: {len(bad)}")
        for event in bad[:10]:
            print(f"  t={event.t:.3f}: {event.detail}")
        if len(bad) > 10:
            print(f"  ... and {len(bad) - 10} more")
    else:
        print("violations: none")
    print(f"wrote {csv_path}")
    print(f"wrote {traj_path}")
    print(f"wrote {margin_path}")
    return EXIT_VIOLATIONS if bad else EXIT_OK


def _cmd_scenario(cfg: Config) -> int:
    trace = run_case_study(
        cfg.model(),
        cfg.params(),
        cfg.stairs(),
        level_cycles=cfg.level_cycles,
        spin_target_deg=cfg.spin_target_deg,
        spin_direction=cfg.spin_direction,
        dt=cfg.dt,
    )
    return _report(trace, cfg, "scenario")


def _cmd_walk(cfg: Config) -> int:
    timeline = plan_level_walk(cfg.model(), cfg.params(), cfg.level_cycles)
    trace = simulate(timeline, cfg.model(), FlatTerrain(0.0), cfg.dt)
    return _report(trace, cfg, "walk")


def _cmd_climb(cfg: Config) -> int:
    stairs = cfg.stairs(ascending=True)
    timeline = plan_stair_ascent(cfg.model(), cfg.params(), stairs)
    trace = simulate(timeline, cfg.model(), stairs, cfg.dt)
    return _report(trace, cfg, "climb")


def _cmd_descend(cfg: Config) -> int:
    stairs = cfg.stairs(ascending=False)
    timeline = plan_stair_descent(cfg.model(), cfg.params(), stairs)
    trace = simulate(timeline, cfg.model(), stairs, cfg.dt)
    return _report(trace, cfg, "descend")


def _cmd_spin(cfg: Config) -> int:
    timeline = plan_spin(
        cfg.model(),
        cfg.params(),
        math.radians(cfg.spin_target_deg),
        cfg.spin_direction,
    )
    trace = simulate(timeline, cfg.model(), FlatTerrain(0.0), cfg.dt)
    return _report(trace, cfg, "spin")


def _cmd_transition(cfg: Config) -> int:
    model = cfg.model()
    params = cfg.params()
    plan = plan_wave_transition(model, params)
    margins = step_margins(plan)
    print("transition plan (body-frame targets):")
    for move, margin in zip(plan.moves, margins):
        tx, ty, tz = move.target
        print(
            f"  leg {move.leg} -> ({tx:+.4f}, {ty:+.4f}, {tz:+.4f}), "
            f"margin {margin:.6g} m"
        )
    builder = TimelineBuilder(default_stance(model), params.t_0)
    run_transition(model, params, builder, plan, FlatTerrain(0.0))
    trace = simulate(builder.build(), model, FlatTerrain(0.0), cfg.dt)
    return _report(trace, cfg, "transition")


def _cmd_check(cfg: Config) -> int:
    print("config ok")
    for key in (
        "p_x",
        "p_y",
        "r_x",
        "r_y",
        "r_z",
        "body_height",
        "beta",
        "cycle_time",
        "stroke",
        "delta_h",
        "stair_width",
        "stair_height",
        "stair_count",
        "t_0",
        "dt",
        "level_cycles",
        "spin_target_deg",
        "spin_direction",
        "out_dir",
    ):
        print(f"  {key} = {getattr(cfg, key)}")
    return EXIT_OK


def _cmd_plot(cfg: Config, csv_path: str) -> int:
    trace = read_trace_csv(csv_path)
    prefix = csv_path[:-4] if csv_path.endswith(".csv") else csv_path
    traj_path, margin_path = write_plots_svg(trace, prefix)
    print(f"wrote {traj_path}")
    print(f"wrote {margin_path}")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config, args.sets)
        if args.command == "scenario":
            return _cmd_scenario(cfg)
        if args.command == "walk":
            return _cmd_walk(cfg)
        if args.command == "climb":
            return _cmd_climb(cfg)
        if args.command == "descend":
            return _cmd_descend(cfg)
        if args.command == "spin":
            return _cmd_spin(cfg)
        if args.command == "transition":
            return _cmd_transition(cfg)
        if args.command == "check":
            return _cmd_check(cfg)
        if args.command == "plot":
            return _cmd_plot(cfg, args.csv)
        raise AssertionError(f"unhandled command {args.command}")
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except QuadGaitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
