#  Copyright 2022 Christopher Eltschka
#
#  Licensed under the Apache License, Version 2.0 (the "License");
#  you may not use this file except in compliance with the License.
#  You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
#  Unless required by applicable law or agreed to in writing, software
#  distributed under the License is distributed on an "AS IS" BASIS,
#  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#  See the License for the specific language governing permissions and
#  limitations under the License.


"""
Experiment orchestration: the config document, independent seeded
runs executed in parallel, sweeps over methods, functions and
dimensions, and the ECDF experiment.
"""

import os
import logging
import pathlib
import configparser
import multiprocessing
from copy import deepcopy
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional, Sequence, Tuple

from . import settings
from . import resources
from . import output
from . import plots
from .benchmarks import Problem, make_problem
from .engine import RunConfig, run_method
from .errors import ConfigurationError
from .metrics import (RunRecord, EcdfCurve, best_gaode_fevals, default_targets,
                      default_budget_grid, ecdf, param_heatmap,
                      select_best_run, sp1)
from .oracle import OracleConfig, composite_configs, gaode_composite, gaode_run
from .rng import RngStreams, make_generator, run_seed_sequence

logger = logging.getLogger(__name__)

# keys whose default is None, with the type of their values
optional_keys: Dict[str, type] = {
    "population_size": int,
    "budget": int,
    "output": str
    }


def default_population_size(dimension: int) -> int:
    """
    N = 20 for D <= 4 and N = 5 D from D = 5 on
    """
    if dimension < 2:
        raise ConfigurationError(f"dimension must be at least 2, got {dimension}")
    return settings.small_population.get(dimension,
                                         settings.population_factor * dimension)


def default_document() -> Dict[str, Dict[str, Any]]:
    """
    The configuration document with all built-in defaults
    """
    experiment = deepcopy(settings.protocol)
    experiment.update({
        "method": "jde",
        "function": "sphere",
        "dimension": 2,
        "output": None
        })
    return {
        "experiment": experiment,
        "oracle": deepcopy(settings.oracle),
        "sweep": deepcopy(settings.sweep),
        "ecdf": deepcopy(settings.ecdf),
        "plot": { "heatmap_bins": settings.plot["heatmap_bins"] },
        "methods": deepcopy(settings.methods)
        }


def coerce(key: str, text: str, default: Any) -> Any:
    """
    Convert a config file value to the type of the default it replaces
    """
    text = text.strip()
    try:
        if default is None:
            if text.lower() in ("", "none"):
                return None
            return optional_keys[key](text)
        if isinstance(default, bool):
            return text.lower() in ("1", "yes", "true", "on")
        if isinstance(default, int):
            return int(text)
        if isinstance(default, float):
            return float(text)
        if isinstance(default, (list, tuple)):
            item_type = type(default[0]) if default else str
            items = [ coerce(key, item, item_type()) for item in text.split(",")
                      if item.strip() ]
            return type(default)(items)
        if isinstance(default, dict):
            low, high = (float(item) for item in text.split(","))
            return { "min": low, "max": high }
    except (ValueError, KeyError) as error:
        raise ConfigurationError(f"invalid value {text!r} for {key}") from error
    return text


def parse_document(text: str) -> Dict[str, Dict[str, Any]]:
    """
    Parse a config document into the nested override dictionary.

    Sections are experiment, oracle, sweep, ecdf, plot and one section
    per adaptation method for its meta-parameters.
    """
    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read_string(text)
    except configparser.Error as error:
        raise ConfigurationError(f"cannot parse config: {error}") from error

    defaults = default_document()
    updates: Dict[str, Dict[str, Any]] = {}
    for section in parser.sections():
        if section in defaults and section != "methods":
            target, path = defaults[section], (section,)
        elif section in defaults["methods"]:
            target, path = defaults["methods"][section], ("methods", section)
        else:
            raise ConfigurationError(f"unknown config section [{section}]")

        values = {}
        for key, text in parser.items(section):
            if key not in target:
                raise ConfigurationError(f"unknown key {key!r} in [{section}]")
            values[key] = coerce(key, text, target[key])

        if len(path) == 1:
            updates.setdefault(section, {}).update(values)
        else:
            updates.setdefault("methods", {}).setdefault(section, {}).update(values)
    return updates


@dataclass(frozen=True)
class ExperimentConfig:
    """
    Everything one experiment (one method on one function in one
    dimension) depends on
    """
    method: str
    function: str
    dimension: int
    population_size: int
    runs: int
    budget: int
    threshold: float
    seed: int
    generator: str
    workers: int
    success_criterion: str
    instance_seed: int
    output: pathlib.Path
    oracle: Dict[str, Any] = field(default_factory=dict)
    methods: Dict[str, Dict[str, Any]] = field(default_factory=dict)
    sweep: Dict[str, Any] = field(default_factory=dict)
    ecdf: Dict[str, Any] = field(default_factory=dict)
    heatmap_bins: int = settings.plot["heatmap_bins"]
    budget_per_dimension: int = settings.protocol["budget_per_dimension"]

    def __post_init__(self):
        if self.method not in settings.method_tokens:
            raise ConfigurationError(f"unknown method {self.method!r}; choose "
                                     f"one of {', '.join(settings.method_tokens)}")
        if self.function not in settings.benchmarks:
            raise ConfigurationError(f"unknown function {self.function!r}")
        if self.runs < 1:
            raise ConfigurationError("at least one run is required")
        if self.budget <= 0:
            raise ConfigurationError("the budget must be positive")
        if self.population_size < 4:
            raise ConfigurationError("the population needs at least 4 individuals")
        if self.generator not in settings.generators:
            raise ConfigurationError(f"unknown generator {self.generator!r}")
        if self.heatmap_bins < 1:
            raise ConfigurationError("at least one heatmap bin is required")
        preset = self.oracle.get("preset", "composite")
        if preset not in settings.oracle_modes and \
           preset not in settings.oracle_presets:
            raise ConfigurationError(f"unknown oracle preset {preset!r}")
        if self.oracle:
            # invalid or conflicting ranges fail before anything runs
            self.oracle_configs()

    def run_config(self) -> RunConfig:
        """
        The settings of each single run
        """
        return RunConfig(self.population_size, self.budget, self.threshold,
                         self.success_criterion)

    def directory(self) -> pathlib.Path:
        """
        The directory the experiment writes to
        """
        return self.output / f"{self.method}_{self.function}_D{self.dimension}"

    def oracle_configs(self) -> Tuple[OracleConfig, ...]:
        """
        The oracle configuration(s): one for a preset, two for the
        composite
        """
        lam = int(self.oracle["lambda"])
        preset = self.oracle["preset"]
        f_min = float(self.oracle["f_min"])
        ranges = { key: float(self.oracle[key])
                   for key in ("f_max", "cr_min", "cr_max") }
        if preset == "custom":
            return (OracleConfig(lam, f_min, name="custom", **ranges),)
        # f_min is fixed by the presets; only a changed value conflicts
        if f_min != settings.oracle["f_min"]:
            if preset == "composite":
                raise ConfigurationError(
                    "the composite oracle fixes f_min by its presets; "
                    "use the custom oracle for another f_min")
            ranges["f_min"] = f_min
        if preset == "composite":
            return composite_configs(lam, **ranges)
        return (OracleConfig.preset(preset, lam=lam, **ranges),)

    def describe(self) -> Dict[str, str]:
        """
        The configuration as metadata. The number of workers is left
        out, the results do not depend on it.
        """
        description = {
            "method": self.method,
            "function": self.function,
            "dimension": str(self.dimension),
            "population_size": str(self.population_size),
            "runs": str(self.runs),
            "budget": str(self.budget),
            "threshold": repr(self.threshold),
            "seed": str(self.seed),
            "generator": self.generator,
            "success_criterion": self.success_criterion,
            "instance_seed": str(self.instance_seed)
            }
        if self.method == "gao":
            description.update({ f"oracle.{key}": str(value)
                                 for key, value in self.oracle.items() })
            for cfg in self.oracle_configs():
                description[f"oracle.{cfg.name}.f_range"] = \
                    f"({cfg.f_min!r}, {cfg.f_max!r}]"
                description[f"oracle.{cfg.name}.cr_range"] = \
                    f"[{cfg.cr_min!r}, {cfg.cr_max!r}]"
        elif self.method in self.methods:
            description.update({ f"{self.method}.{key}": repr(value)
                                 for key, value in self.methods[self.method].items() })
        if self.dimension in (4, 5):
            description["population_rule"] = settings.decisions["population_d4_d5"]
        description.update({ f"decision.{key}": value
                             for key, value in settings.decisions.items() })
        return description


def config_from_document(document: Dict[str, Dict[str, Any]]) -> ExperimentConfig:
    """
    Build the experiment configuration from a complete document,
    filling in the dimension dependent defaults
    """
    experiment = document["experiment"]
    dimension = int(experiment["dimension"])
    population_size = experiment.get("population_size")
    if population_size is None:
        population_size = default_population_size(dimension)
    budget = experiment.get("budget")
    if budget is None:
        budget = dimension * int(experiment["budget_per_dimension"])
    workers = int(experiment["workers"]) or (os.cpu_count() or 1)
    out = experiment.get("output")
    out = pathlib.Path(out) if out else resources.get_output_root()

    return ExperimentConfig(
        method = experiment["method"],
        function = experiment["function"],
        dimension = dimension,
        population_size = int(population_size),
        runs = int(experiment["runs"]),
        budget = int(budget),
        threshold = float(experiment["threshold"]),
        seed = int(experiment["seed"]),
        generator = experiment["generator"],
        workers = workers,
        success_criterion = experiment["success_criterion"],
        instance_seed = int(experiment["instance_seed"]),
        output = out,
        oracle = document["oracle"],
        methods = document["methods"],
        sweep = document["sweep"],
        ecdf = document["ecdf"],
        heatmap_bins = int(document["plot"]["heatmap_bins"]),
        budget_per_dimension = int(experiment["budget_per_dimension"]))


def load_config(path: Optional[pathlib.Path] = None,
                overrides: Optional[Dict[str, Dict[str, Any]]] = None
                ) -> ExperimentConfig:
    """
    Read a config document (if given), apply the overrides (typically
    from the command line) and return the experiment configuration
    """
    document = default_document()
    if path is not None:
        try:
            text = pathlib.Path(path).read_text(encoding="utf8")
        except OSError as error:
            raise ConfigurationError(f"cannot read config {path}: {error}") from error
        resources.recursive_update(document, parse_document(text))
    if overrides:
        resources.recursive_update(document, overrides)
    return config_from_document(document)


@dataclass(frozen=True)
class RunTask:
    """
    Everything a worker needs to execute one run
    """
    config: ExperimentConfig
    problem: Problem
    run_index: int


def execute_run(task: RunTask) -> RunRecord:
    """
    Execute one run. This is a module level function so that it can
    be sent to worker processes.
    """
    config = task.config
    run_config = config.run_config()
    if config.method == "gao":
        oracle_configs = config.oracle_configs()
        if len(oracle_configs) == 2:
            return gaode_composite(task.problem, run_config, *oracle_configs,
                                   repeats = int(config.oracle["repeats"]),
                                   master_seed = config.seed,
                                   run_index = task.run_index,
                                   algorithm = config.generator)
        streams = RngStreams.for_run(config.seed, task.run_index, config.generator)
        return gaode_run(task.problem, run_config, oracle_configs[0], streams,
                         task.run_index)

    streams = RngStreams.for_run(config.seed, task.run_index, config.generator)
    return run_method(config.method, task.problem, run_config, streams,
                      task.run_index, config.methods.get(config.method))


def execute_runs(config: ExperimentConfig, problem: Problem) -> List[RunRecord]:
    """
    Execute all runs of an experiment, in parallel if more than one
    worker is configured. The records come back ordered by run index.
    """
    tasks = [ RunTask(config, problem, run_index)
              for run_index in range(config.runs) ]
    workers = min(config.workers, len(tasks))
    if workers <= 1:
        records = [ execute_run(task) for task in tasks ]
    else:
        with multiprocessing.Pool(workers) as pool:
            records = pool.map(execute_run, tasks)
    return sorted(records, key=lambda record: record.run_index)


@dataclass
class ExperimentResult:
    """
    The records and summary of an experiment
    """
    config: ExperimentConfig
    records: List[RunRecord]
    summary: Dict[str, str]
    directory: pathlib.Path


def run_experiment(config: ExperimentConfig, write: bool = True) -> ExperimentResult:
    """
    Run all runs of an experiment and write runs.csv, summary.csv, the
    heatmap of the best run, the plots and meta.txt
    """
    # fail before the runs if the generator or function is unusable
    make_generator(run_seed_sequence(config.seed, 0), config.generator)
    problem = make_problem(config.function, config.dimension, config.instance_seed)
    directory = config.directory()
    if write:
        resources.ensure_directory(directory)

    logger.info("running %s on %s (D=%d): %d runs, budget %d",
                config.method, config.function, config.dimension,
                config.runs, config.budget)
    records = execute_runs(config, problem)
    summary = output.summarize(config.method, records)
    logger.info("%s on %s (D=%d): success rate %s, SP1 %s",
                config.method, config.function, config.dimension,
                summary["success_rate"], summary["sp1"])

    if write:
        metadata = config.describe()
        best = select_best_run(records)
        heatmap = param_heatmap(best.theta_trace, config.heatmap_bins)
        files = settings.files
        output.write_runs_csv(directory / files["runs"], records, metadata)
        output.write_summary_csv(directory / files["summary"], summary, metadata)
        output.write_heatmap_csv(
            directory / files["heatmap"].format(method=config.method),
            heatmap, best.run_index, metadata)
        output.write_meta(directory / files["meta"], metadata)
        plots.plot_heatmap(
            directory / files["heatmap_plot"].format(method=config.method),
            heatmap, f"{config.method}, {config.function}, D={config.dimension}",
            metadata)
        plots.plot_trajectories(directory / files["trajectory_plot"], records,
                                config.method, metadata)
        logger.info("results written to %s", directory)

    return ExperimentResult(config, records, summary, directory)


def expand_sweep(config: ExperimentConfig) -> List[ExperimentConfig]:
    """
    The cross product methods x functions x dimensions of the sweep
    section, with dimension dependent defaults recomputed
    """
    configs = []
    for method in config.sweep["methods"]:
        for function in config.sweep["functions"]:
            for dimension in config.sweep["dimensions"]:
                configs.append(replace(
                    config, method = method, function = function,
                    dimension = dimension,
                    population_size = default_population_size(dimension),
                    budget = dimension * config.budget_per_dimension))
    return configs


def table_value(method: str, records: Sequence[RunRecord]) -> Optional[float]:
    """
    The comparison table entry: SP1, or for the oracle the lowest
    FEvals to success of the composed runs
    """
    if method == "gao":
        value = best_gaode_fevals(records)
        return None if value is None else float(value)
    return sp1(records)


SweepTable = Dict[Tuple[str, int], Dict[str, Optional[float]]]


def sweep(configs: Sequence[ExperimentConfig],
          output_dir: Optional[pathlib.Path] = None) -> SweepTable:
    """
    Run every configuration and collect the comparison table keyed by
    (function, dimension), one entry per method. Writes the table and
    one SP1-vs-D plot per function.
    """
    if not configs:
        raise ConfigurationError("a sweep needs at least one configuration")
    table: SweepTable = {}
    methods: List[str] = []
    for config in configs:
        result = run_experiment(config)
        if config.method not in methods:
            methods.append(config.method)
        table.setdefault((config.function, config.dimension), {})[config.method] = \
            table_value(config.method, result.records)

    if output_dir is None:
        output_dir = configs[0].output / "sweep"
    resources.ensure_directory(output_dir)
    metadata = { "decision." + key: value
                 for key, value in settings.decisions.items() }
    metadata["table"] = "SP1; gao column: lowest FEvals to success"
    output.write_sp1_table(output_dir / settings.files["sp1_table"],
                           table, methods, metadata)
    for function in sorted({ function for function, _ in table }):
        plots.plot_sp1(output_dir / settings.files["sp1_plot"].format(function=function),
                       function, table, methods, metadata)
    logger.info("sweep table written to %s", output_dir)
    return table


def ecdf_experiment(config: ExperimentConfig,
                    output_dir: Optional[pathlib.Path] = None
                    ) -> Dict[str, EcdfCurve]:
    """
    For every method of the ecdf section, pool the runs on all
    configured functions in one dimension and compute the run-length
    ECDF over the log-spaced targets. The oracle is composed with the
    configured number of repeats per variant.
    """
    settings_ecdf = config.ecdf
    for method in settings_ecdf["methods"]:
        if method not in settings.method_tokens:
            raise ConfigurationError(f"unknown method {method!r}")
    for function in settings_ecdf["functions"]:
        if function not in settings.benchmarks:
            raise ConfigurationError(f"unknown function {function!r}")
    dimension = int(settings_ecdf["dimension"])
    budget = dimension * int(settings_ecdf["budget_per_dimension"])
    targets = default_targets(int(settings_ecdf["target_count"]),
                              float(settings_ecdf["target_high"]),
                              float(settings_ecdf["target_low"]))
    grid = default_budget_grid(budget, int(settings_ecdf["grid_points"]))
    if output_dir is None:
        output_dir = config.output / "ecdf"

    curves: Dict[str, EcdfCurve] = {}
    for method in settings_ecdf["methods"]:
        oracle = dict(config.oracle)
        oracle.update({ "preset": "composite",
                        "repeats": int(settings_ecdf["gao_repeats"]) })
        records: List[RunRecord] = []
        for function in settings_ecdf["functions"]:
            cell = replace(config, method = method, function = function,
                           dimension = dimension,
                           population_size = default_population_size(dimension),
                           budget = budget, oracle = oracle,
                           output = output_dir)
            records.extend(run_experiment(cell).records)
        curves[method] = ecdf(records, targets, grid, dimension)

    resources.ensure_directory(output_dir)
    metadata = { "dimension": str(dimension), "budget": str(budget),
                 "targets": f"{len(targets)} log-spaced in "
                            f"[1e{settings_ecdf['target_low']:g}, "
                            f"1e{settings_ecdf['target_high']:g}]",
                 "functions": ",".join(settings_ecdf["functions"]) }
    for method, curve in curves.items():
        output.write_ecdf_csv(output_dir / settings.files["ecdf"].format(method=method),
                              curve, metadata)
    plots.plot_ecdf(output_dir / settings.files["ecdf_plot"], curves, metadata)
    logger.info("ECDF curves written to %s", output_dir)
    return curves
