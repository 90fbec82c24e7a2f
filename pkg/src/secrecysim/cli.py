"""Command-line entry points: grid sweeps to CSV/JSON and policy comparisons."""

import argparse
import json
import os
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__
from .channel import transmit_power_from_corrected
from .policy import PolicyKind
from .scenario_io import (
    BUNDLED_SCENARIOS,
    LoadedScenario,
    ScenarioValidationError,
    bundled_scenario_path,
    load_scenario,
    watt_to_dbm,
    write_heatmap,
    write_summary,
)
from .sweep import ALL_POLICIES, monte_carlo, sweep_eavesdropper

_POLICY_CHOICES = [p.value for p in ALL_POLICIES] + ["all"]


def _resolve_scenario(name_or_path: str) -> tuple[Path, str]:
    """Accept a filesystem path or the name of a bundled scenario."""
    path = Path(name_or_path)
    if path.exists():
        return path, path.stem
    if name_or_path in BUNDLED_SCENARIOS:
        return bundled_scenario_path(name_or_path), name_or_path
    raise ScenarioValidationError(
        f"scenario {name_or_path!r} is neither an existing file nor one of {BUNDLED_SCENARIOS}"
    )


def _default_threads(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get("SECRECY_SIM_THREADS")
    return int(env) if env else 1


def _policy_list(flag: str | None, loaded: LoadedScenario) -> list[PolicyKind]:
    if flag is None:
        return [loaded.sweep.policy]
    if flag == "all":
        return list(ALL_POLICIES)
    return [PolicyKind(flag)]


def _metrics_dict(m) -> dict:
    return {
        "avg_secrecy": m.avg_secrecy,
        "avg_secrecy_truncated": m.avg_secrecy_truncated,
        "avg_eve_capacity": m.avg_eve_capacity,
        "coverage_ratio": m.coverage_ratio,
    }


class _OutputSet:
    """Tracks files written by one command so failures leave nothing behind."""

    def __init__(self):
        self.paths: list[Path] = []

    def add(self, path: Path) -> Path:
        self.paths.append(path)
        return path

    def discard_all(self) -> None:
        for path in self.paths:
            try:
                path.unlink()
            except OSError:
                pass


def _run_sweep(args) -> int:
    outputs = _OutputSet()
    try:
        scenario_path, _ = _resolve_scenario(args.scenario)
        loaded = load_scenario(scenario_path)
        policies = _policy_list(args.policy, loaded)
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)

        mc_summary = None
        mc_wanted = args.monte_carlo_n is not None or (
            loaded.monte_carlo is not None and loaded.monte_carlo.enabled
        )
        if mc_wanted:
            n = args.monte_carlo_n
            if n is None:
                n = loaded.monte_carlo.n
            seed = args.seed
            if seed is None:
                seed = loaded.monte_carlo.seed if loaded.monte_carlo is not None else 0
            mc_summary = monte_carlo(
                loaded.scenario, loaded.sweep, n=n, seed=seed, workers=args.threads
            )

        params = loaded.scenario.params
        for policy in policies:
            summary = sweep_eavesdropper(
                loaded.scenario, _with_policy(loaded, policy), retain_cells=True
            )
            xs = [cell.eve_pos.x for cell in summary.grid]
            ys = [cell.eve_pos.y for cell in summary.grid]
            name = policy.value
            write_heatmap(
                outputs.add(out_dir / f"{name}.secrecy.csv"),
                xs,
                ys,
                [max(cell.selection.secrecy, 0.0) for cell in summary.grid],
            )
            write_heatmap(
                outputs.add(out_dir / f"{name}.eve_capacity.csv"),
                xs,
                ys,
                [cell.selection.cap_eve for cell in summary.grid],
            )
            write_heatmap(
                outputs.add(out_dir / f"{name}.association.csv"),
                xs,
                ys,
                [float(cell.selection.chosen_ap) for cell in summary.grid],
            )
            write_heatmap(
                outputs.add(out_dir / f"{name}.fj_power_dbm.csv"),
                xs,
                ys,
                [
                    watt_to_dbm(transmit_power_from_corrected(cell.selection.fj_power, params))
                    for cell in summary.grid
                ],
            )
            document = {
                "tool_version": __version__,
                "policy": name,
                "avg_secrecy": summary.avg_secrecy,
                "avg_secrecy_truncated": summary.avg_secrecy_truncated,
                "avg_eve_capacity": summary.avg_eve_capacity,
                "coverage_ratio": summary.coverage_ratio,
                "scenario": loaded.echo,
            }
            if mc_summary is not None:
                document["monte_carlo"] = {
                    "n": mc_summary.n_samples,
                    "seed": mc_summary.seed,
                    "means": _metrics_dict(mc_summary.means[policy]),
                }
            write_summary(outputs.add(out_dir / f"{name}.summary.json"), document)
        return 0
    except (ScenarioValidationError, OSError, ValueError) as exc:
        outputs.discard_all()
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _with_policy(loaded: LoadedScenario, policy: PolicyKind):
    if loaded.sweep.policy is policy:
        return loaded.sweep
    return replace(loaded.sweep, policy=policy)


def _run_compare(args) -> int:
    outputs = _OutputSet()
    try:
        rows = []
        mc_mode = args.monte_carlo_n is not None
        seed = args.seed if args.seed is not None else 0
        for entry in args.scenario:
            scenario_path, label = _resolve_scenario(entry)
            loaded = load_scenario(scenario_path)
            metrics = {}
            if mc_mode:
                mc = monte_carlo(
                    loaded.scenario,
                    loaded.sweep,
                    n=args.monte_carlo_n,
                    seed=seed,
                    workers=args.threads,
                )
                for policy in ALL_POLICIES:
                    metrics[policy.value] = _metrics_dict(mc.means[policy])
            else:
                for policy in ALL_POLICIES:
                    summary = sweep_eavesdropper(
                        loaded.scenario, _with_policy(loaded, policy), retain_cells=False
                    )
                    metrics[policy.value] = _metrics_dict(summary)
            rows.append({"scenario": label, "metrics": metrics})
        document = {
            "tool_version": __version__,
            "mode": "monte_carlo" if mc_mode else "sweep",
            "policies": [p.value for p in ALL_POLICIES],
            "rows": rows,
        }
        if mc_mode:
            document["monte_carlo"] = {"n": args.monte_carlo_n, "seed": seed}
        if args.out is not None:
            write_summary(outputs.add(Path(args.out)), document)
        else:
            print(json.dumps(document, indent=2))
        return 0
    except (ScenarioValidationError, OSError, ValueError) as exc:
        outputs.discard_all()
        print(f"error: {exc}", file=sys.stderr)
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="secrecysim",
        description="Secrecy-capacity simulator: smart AP selection with optimal friendly jamming.",
    )
    parser.add_argument("--version", action="version", version=f"secrecysim {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sweep_p = sub.add_parser(
        "sweep", help="sweep the eavesdropper over the grid and write heatmaps + summaries"
    )
    sweep_p.add_argument(
        "--scenario", required=True, help="scenario file path, or a bundled name (scenario1..3)"
    )
    sweep_p.add_argument(
        "--policy",
        choices=_POLICY_CHOICES,
        default=None,
        help="association policy; 'all' runs the three policies (default: the scenario file's)",
    )
    sweep_p.add_argument("--out-dir", required=True, help="directory for the output files")
    sweep_p.add_argument(
        "--monte-carlo-n",
        type=int,
        default=None,
        help="also average metrics over this many random station placements",
    )
    sweep_p.add_argument("--seed", type=int, default=None, help="Monte Carlo seed")
    sweep_p.add_argument(
        "--threads",
        type=int,
        default=None,
        help="Monte Carlo worker processes (default: SECRECY_SIM_THREADS or 1)",
    )
    sweep_p.set_defaults(func=_run_sweep)

    compare_p = sub.add_parser(
        "compare", help="tabulate the three policies across one or more scenarios"
    )
    compare_p.add_argument(
        "--scenario",
        action="append",
        required=True,
        help="scenario file path or bundled name; repeat for more rows",
    )
    compare_p.add_argument(
        "--monte-carlo-n",
        type=int,
        default=None,
        help="compare Monte Carlo means instead of single sweeps",
    )
    compare_p.add_argument("--seed", type=int, default=None, help="Monte Carlo seed (default 0)")
    compare_p.add_argument(
        "--threads",
        type=int,
        default=None,
        help="Monte Carlo worker processes (default: SECRECY_SIM_THREADS or 1)",
    )
    compare_p.add_argument("--out", default=None, help="write the table here instead of stdout")
    compare_p.set_defaults(func=_run_compare)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args.threads = _default_threads(getattr(args, "threads", None))
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
