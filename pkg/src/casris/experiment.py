"""Config-file driven experiment runs: YAML in, CSV/report/figure out.

The config schema is strict: unknown keys anywhere are rejected with a
dotted key path so typos surface as load errors instead of silently
falling back to defaults.  All file writes go through a temp-file rename
in the target directory, so a crashed run never leaves a half-written
artifact behind.
"""

from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass, replace
from pathlib import Path

import yaml

from .analysis import DigammaVariant
from .channel import SystemConfig
from .simulator import Axis, Strategy, StrategyEntry, SweepRow, SweepSpec, run_sweep

__all__ = [
    "SCHEMA_VERSION",
    "SchemaError",
    "ExperimentConfig",
    "OutputBundle",
    "load_config",
    "run_experiment",
    "write_csv",
    "write_text",
    "CSV_COLUMNS",
]

SCHEMA_VERSION = 1

CSV_COLUMNS = ("axis", "strategy", "mean_bits", "std_error",
               "ec_taylor", "ec_highsnr", "ec_largeN")

DEFAULT_TRIALS = 2000
DEFAULT_SEED = 1234


class SchemaError(ValueError):
    """Config file structure or value violates the schema."""


@dataclass(frozen=True)
class ExperimentConfig:
    """Fully validated experiment description."""

    sweep: SweepSpec
    csv_name: str = "sweep.csv"
    plot_name: str | None = None
    report_name: str = "report.txt"


@dataclass(frozen=True)
class OutputBundle:
    """Paths of everything a run produced."""

    csv_path: Path
    report_path: Path
    plot_path: Path | None = None


def _require_mapping(node, path: str) -> dict:
    if not isinstance(node, dict):
        raise SchemaError(f"{path}: expected a mapping, got {type(node).__name__}")
    return node


def _check_keys(node: dict, allowed: set[str], path: str) -> None:
    unknown = sorted(set(node) - allowed)
    if unknown:
        raise SchemaError(f"{path}: unknown key(s) {', '.join(repr(k) for k in unknown)}; "
                          f"allowed: {', '.join(sorted(allowed))}")


def _get(node: dict, key: str, path: str, required: bool = True, default=None):
    if key not in node:
        if required:
            raise SchemaError(f"{path}: missing required key {key!r}")
        return default
    return node[key]


def _as_int(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{path}: expected an integer, got {value!r}")
    return value


def _as_number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"{path}: expected a number, got {value!r}")
    return float(value)


def _parse_system(node, path: str) -> SystemConfig:
    node = _require_mapping(node, path)
    _check_keys(node, {"tx_antennas", "users", "ris_count", "ris_sizes",
                       "elements_per_ris", "power_budget", "noise_var"}, path)
    tx = _as_int(_get(node, "tx_antennas", path), f"{path}.tx_antennas")
    users = _as_int(_get(node, "users", path), f"{path}.users")
    count = _as_int(_get(node, "ris_count", path), f"{path}.ris_count")

    if ("ris_sizes" in node) == ("elements_per_ris" in node):
        raise SchemaError(f"{path}: give exactly one of ris_sizes or elements_per_ris")
    if "ris_sizes" in node:
        raw = node["ris_sizes"]
        if not isinstance(raw, list) or not raw:
            raise SchemaError(f"{path}.ris_sizes: expected a non-empty list")
        sizes = tuple(_as_int(v, f"{path}.ris_sizes[{i}]") for i, v in enumerate(raw))
    else:
        per = _as_int(node["elements_per_ris"], f"{path}.elements_per_ris")
        sizes = (per,) * count

    power = _as_number(_get(node, "power_budget", path), f"{path}.power_budget")
    noise = _as_number(_get(node, "noise_var", path, required=False, default=1.0),
                       f"{path}.noise_var")
    try:
        return SystemConfig(tx_antennas=tx, users=users, ris_count=count,
                            ris_sizes=sizes, power_budget=power, noise_var=noise)
    except ValueError as exc:
        raise SchemaError(f"{path}: {exc}") from exc


def _parse_strategy_entry(node, path: str) -> StrategyEntry:
    if isinstance(node, str):
        try:
            return StrategyEntry(strategy=Strategy(node))
        except ValueError as exc:
            raise SchemaError(f"{path}: unknown strategy {node!r}; valid: "
                              f"{', '.join(s.value for s in Strategy)}") from exc
    node = _require_mapping(node, path)
    _check_keys(node, {"strategy", "ris_count", "label"}, path)
    name = _get(node, "strategy", path)
    if not isinstance(name, str):
        raise SchemaError(f"{path}.strategy: expected a string")
    try:
        strategy = Strategy(name)
    except ValueError as exc:
        raise SchemaError(f"{path}.strategy: unknown strategy {name!r}") from exc
    ris_count = node.get("ris_count")
    if ris_count is not None:
        ris_count = _as_int(ris_count, f"{path}.ris_count")
    label = node.get("label")
    if label is not None and not isinstance(label, str):
        raise SchemaError(f"{path}.label: expected a string")
    return StrategyEntry(strategy=strategy, ris_count=ris_count, label=label)


def _parse_sweep(node, path: str, base: SystemConfig) -> SweepSpec:
    node = _require_mapping(node, path)
    _check_keys(node, {"axis", "points", "strategies", "trials", "seed",
                       "digamma_variant"}, path)
    axis_raw = _get(node, "axis", path)
    try:
        axis = Axis(axis_raw)
    except ValueError as exc:
        raise SchemaError(f"{path}.axis: unknown axis {axis_raw!r}; valid: "
                          f"{', '.join(a.value for a in Axis)}") from exc

    points_raw = _get(node, "points", path)
    if not isinstance(points_raw, list) or not points_raw:
        raise SchemaError(f"{path}.points: expected a non-empty list")
    points = tuple(_as_number(v, f"{path}.points[{i}]")
                   for i, v in enumerate(points_raw))

    strat_raw = _get(node, "strategies", path)
    if not isinstance(strat_raw, list) or not strat_raw:
        raise SchemaError(f"{path}.strategies: expected a non-empty list")
    strategies = tuple(_parse_strategy_entry(v, f"{path}.strategies[{i}]")
                       for i, v in enumerate(strat_raw))

    trials = _as_int(_get(node, "trials", path, required=False,
                          default=DEFAULT_TRIALS), f"{path}.trials")
    seed = _as_int(_get(node, "seed", path, required=False,
                        default=DEFAULT_SEED), f"{path}.seed")

    variant_raw = _get(node, "digamma_variant", path, required=False)
    kwargs = {}
    if variant_raw is not None:
        try:
            kwargs["digamma_variant"] = DigammaVariant(variant_raw)
        except ValueError as exc:
            raise SchemaError(f"{path}.digamma_variant: unknown variant "
                              f"{variant_raw!r}; valid: "
                              f"{', '.join(v.value for v in DigammaVariant)}") from exc
    try:
        return SweepSpec(base=base, axis=axis, points=points,
                         strategies=strategies, trials=trials, seed=seed,
                         **kwargs)
    except ValueError as exc:
        raise SchemaError(f"{path}: {exc}") from exc


def _parse_output(node, path: str) -> dict:
    if node is None:
        return {}
    node = _require_mapping(node, path)
    _check_keys(node, {"csv", "plot", "report"}, path)
    out = {}
    for key, attr in (("csv", "csv_name"), ("plot", "plot_name"),
                      ("report", "report_name")):
        if key in node:
            value = node[key]
            if value is not None and not isinstance(value, str):
                raise SchemaError(f"{path}.{key}: expected a string")
            out[attr] = value
    return out


def parse_config(data, origin: str = "config") -> ExperimentConfig:
    """Validate a loaded YAML document into an ExperimentConfig."""
    data = _require_mapping(data, origin)
    _check_keys(data, {"schema_version", "system", "sweep", "output"}, origin)
    version = _get(data, "schema_version", origin)
    if version != SCHEMA_VERSION:
        raise SchemaError(f"{origin}.schema_version: expected {SCHEMA_VERSION}, "
                          f"got {version!r}")
    base = _parse_system(_get(data, "system", origin), f"{origin}.system")
    sweep = _parse_sweep(_get(data, "sweep", origin), f"{origin}.sweep", base)
    output = _parse_output(data.get("output"), f"{origin}.output")
    return ExperimentConfig(sweep=sweep, **output)


def load_config(path) -> ExperimentConfig:
    """Read and validate a YAML experiment config file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"cannot read config {path}: {exc}") from exc
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise SchemaError(f"{path}: invalid YAML: {exc}") from exc
    return parse_config(data, origin=path.name)


def _atomic_write(path: Path, text: str) -> None:
    # Temp file in the destination directory so os.replace stays atomic.
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _fmt(value: float | None) -> str:
    return "" if value is None else "%.12g" % value


def write_csv(rows, path) -> Path:
    """Atomic CSV dump; blank cells for unavailable values, LF line ends."""
    path = Path(path)
    lines = [",".join(CSV_COLUMNS)]
    for row in rows:
        lines.append(",".join((
            "%.12g" % row.axis_value,
            row.strategy,
            _fmt(row.mean_bits if row.valid else None),
            _fmt(row.std_error if row.valid else None),
            _fmt(row.ec_taylor),
            _fmt(row.ec_highsnr),
            _fmt(row.ec_largen),
        )))
    _atomic_write(path, "\n".join(lines) + "\n")
    return path


def write_text(text: str, path) -> Path:
    path = Path(path)
    _atomic_write(path, text)
    return path


def _describe_run(config: ExperimentConfig, rows: list[SweepRow],
                  workers: int) -> str:
    spec = config.sweep
    base = spec.base
    lines = [
        "sweep report",
        "============",
        f"axis: {spec.axis.value}",
        f"points: {', '.join('%.12g' % p for p in spec.points)}",
        f"strategies: {', '.join(e.resolved_label() for e in spec.strategies)}",
        f"trials per point: {spec.trials}",
        f"seed: {spec.seed}",
        f"workers: {workers}",
        f"digamma variant: {spec.digamma_variant.value}",
        "",
        "base system",
        "-----------",
        f"tx_antennas: {base.tx_antennas}",
        f"users: {base.users}",
        f"ris_count: {base.ris_count}",
        f"ris_sizes: {', '.join(str(n) for n in base.ris_sizes)}",
        f"power_budget: {'%.12g' % base.power_budget}",
        f"noise_var: {'%.12g' % base.noise_var}",
        "",
        f"rows: {len(rows)} ({sum(1 for r in rows if r.valid)} valid)",
    ]
    skipped = [r for r in rows if not r.valid]
    if skipped:
        lines.append("")
        lines.append("skipped points")
        lines.append("--------------")
        for row in skipped:
            lines.append(f"axis={'%.12g' % row.axis_value} "
                         f"strategy={row.strategy}: {row.note}")
    lines.append("")
    return "\n".join(lines)


def run_experiment(config: ExperimentConfig, out_dir, workers: int = 1,
                   seed: int | None = None, trials: int | None = None,
                   plot: bool = False) -> OutputBundle:
    """Execute a sweep and write CSV, report, and (optionally) a figure.

    seed/trials override the config values when given.  A figure is made
    when the config names one or plot=True (default name derives from the
    CSV name).
    """
    spec = config.sweep
    overrides = {}
    if seed is not None:
        overrides["seed"] = seed
    if trials is not None:
        overrides["trials"] = trials
    if overrides:
        spec = replace(spec, **overrides)

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    rows = run_sweep(spec, workers=workers)

    csv_path = write_csv(rows, out_dir / config.csv_name)
    report_path = write_text(
        _describe_run(replace(config, sweep=spec), rows, workers),
        out_dir / config.report_name)

    plot_path = None
    plot_name = config.plot_name
    if plot and plot_name is None:
        plot_name = Path(config.csv_name).stem + ".pdf"
    if plot_name is not None:
        from .plotting import plot_sweep

        plot_path = Path(plot_sweep(rows, spec.axis, out_dir / plot_name))

    return OutputBundle(csv_path=csv_path, report_path=report_path,
                       plot_path=plot_path)
