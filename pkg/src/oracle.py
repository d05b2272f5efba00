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
The greedy approximate oracle (GAO) and the DE driven by it (GAODE).

For every trial event the oracle draws lambda {F, CR} candidates,
builds one virtual trial per candidate from the same frozen parent
indices and crossover uniforms, evaluates all of them and commits the
best one. Only the committed trial is charged to the budget.

GAODE is a diagnostic oracle for analysis only, not a practical
optimizer: its FEvals ignore the lambda - 1 discarded evaluations of
every event.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import settings
from .adaptation import sample_uniform_params
from .benchmarks import Problem
from .engine import (EvaluationTracker, RunConfig, initial_population,
                     run_metadata)
from .errors import ConfigurationError
from .metrics import RunRecord, select_best_run
from .population import (ControlParams, Individual, Population,
                         TrialRandomness, draw_trial_randomness, make_trials,
                         selection_step)
from .rng import RngStreams

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OracleConfig:
    """
    Number of candidates and the ranges (F_min, F_max] and
    [CR_min, CR_max] they are drawn from
    """
    lam: int = settings.oracle["lambda"]
    f_min: float = settings.oracle["f_min"]
    f_max: float = settings.oracle["f_max"]
    cr_min: float = settings.oracle["cr_min"]
    cr_max: float = settings.oracle["cr_max"]
    name: str = "gaode"

    def __post_init__(self):
        if self.lam < 1:
            raise ConfigurationError(f"lambda must be at least 1, got {self.lam}")
        if not 0.0 <= self.f_min < self.f_max <= 1.0:
            raise ConfigurationError(
                f"invalid F range ({self.f_min}, {self.f_max}]")
        if not 0.0 <= self.cr_min <= self.cr_max <= 1.0:
            raise ConfigurationError(
                f"invalid CR range [{self.cr_min}, {self.cr_max}]")

    @classmethod
    def preset(cls, name: str, **overrides) -> "OracleConfig":
        """
        One of the named configurations of settings.oracle_presets,
        with the remaining fields from settings.oracle and overrides.
        The fields a preset fixes cannot be overridden with a
        different value.
        """
        if name not in settings.oracle_presets:
            raise ConfigurationError(f"unknown oracle preset {name!r}")
        fixed = settings.oracle_presets[name]
        for key, value in fixed.items():
            if key in overrides and overrides[key] != value:
                raise ConfigurationError(
                    f"oracle preset {name} fixes {key} = {value}, got "
                    f"{overrides[key]}; use the custom oracle instead")
        values = { "lam": settings.oracle["lambda"],
                   "f_min": settings.oracle["f_min"],
                   "f_max": settings.oracle["f_max"],
                   "cr_min": settings.oracle["cr_min"],
                   "cr_max": settings.oracle["cr_max"] }
        values.update(overrides)
        values.update(fixed)
        return cls(name=name, **values)

    def describe(self) -> Dict[str, str]:
        """
        Metadata describing the oracle
        """
        return {
            "oracle": self.name,
            "oracle.lambda": str(self.lam),
            "oracle.f_range": f"({self.f_min!r}, {self.f_max!r}]",
            "oracle.cr_range": f"[{self.cr_min!r}, {self.cr_max!r}]",
            "oracle.note": "diagnostic oracle, oracle evaluations not counted"
            }


@dataclass
class OracleTrace:
    """
    The committed parameters of every counted trial: entries of
    (counted FEvals, F, CR, objective value), plus the number of
    uncounted oracle evaluations
    """
    entries: List[Tuple[int, float, float, float]] = field(default_factory=list)
    oracle_evals: int = 0


@dataclass
class CandidateSet:
    """
    The lambda candidate pairs of one event
    """
    f_values: np.ndarray
    cr_values: np.ndarray

    def __len__(self):
        return len(self.f_values)

    def __getitem__(self, index: int) -> ControlParams:
        return ControlParams(float(self.f_values[index]),
                             float(self.cr_values[index]))


def sample_candidates(cfg: OracleConfig, param_stream) -> CandidateSet:
    """
    Draw lambda pairs, F uniform on (F_min, F_max], CR uniform on
    [CR_min, CR_max]
    """
    return CandidateSet(*sample_uniform_params(param_stream, cfg.f_min,
                                               cfg.f_max, cfg.cr_min,
                                               cfg.cr_max, cfg.lam))


def evaluate_and_select(population: Population, i: int,
                        trial_randomness: TrialRandomness,
                        candidates: CandidateSet, problem: Problem,
                        trace: Optional[OracleTrace] = None
                        ) -> Tuple[Individual, ControlParams]:
    """
    Build and evaluate the virtual trials of all candidates and return
    the best one with its parameters. The lowest candidate index wins
    ties. The evaluations are added to trace.oracle_evals, never to the
    counted budget.
    """
    trials = make_trials(population, i, trial_randomness,
                         candidates.f_values, candidates.cr_values,
                         problem.lower, problem.upper)
    values = problem(trials)
    if trace is not None:
        trace.oracle_evals += len(candidates)
    best = int(np.argmin(values))
    return Individual.with_value(trials[best], values[best]), candidates[best]


def gaode_run(problem: Problem, run_config: RunConfig, cfg: OracleConfig,
              streams: RngStreams, run_index: int = 0) -> RunRecord:
    """
    Run GAODE: for each individual of each generation, the oracle picks
    the trial, then ordinary one-to-one selection decides whether it
    survives. The committed trial's value is reused, so each event
    costs exactly one counted evaluation.
    """
    tracker = EvaluationTracker(problem, run_config)
    trace = OracleTrace()
    metadata = run_metadata(problem, run_config, streams)
    metadata["method"] = "gao"
    metadata.update(cfg.describe())

    population = initial_population(problem, run_config, streams, tracker)
    size = run_config.population_size

    while population is not None and not tracker.finished():
        survivors = []
        for i in range(size):
            trial_randomness = draw_trial_randomness(i, size, problem.dimension,
                                                     streams.shared_stream)
            candidates = sample_candidates(cfg, streams.param_stream)
            trial, params = evaluate_and_select(population, i, trial_randomness,
                                                candidates, problem, trace)
            tracker.count(trial.fx, params)
            trace.entries.append((tracker.fevals, params.F, params.CR, trial.fx))

            survivor, _ = selection_step(population[i], trial)
            survivors.append(survivor)
            if tracker.finished():
                break

        if tracker.finished():
            break
        population.advance(survivors)

    logger.debug("oracle run %d (%s) finished: success=%s, %d evaluations, "
                 "%d oracle evaluations", run_index, cfg.name,
                 tracker.succeeded(), tracker.fevals, trace.oracle_evals)
    return tracker.record(run_index, metadata,
                          oracle_evals = trace.oracle_evals,
                          oracle_trace = trace)


def gaode_composite(problem: Problem, run_config: RunConfig,
                    cfg00: OracleConfig, cfg04: OracleConfig,
                    repeats: int = 1, master_seed: int = 0,
                    run_index: int = 0,
                    algorithm: str = settings.protocol["generator"]
                    ) -> RunRecord:
    """
    Run both oracle configurations repeats times each, every run with
    its own seed, and return the best record: a success with the fewest
    FEvals or, without success, the lowest final error.
    """
    if repeats < 1:
        raise ConfigurationError(f"repeats must be at least 1, got {repeats}")

    records: List[RunRecord] = []
    for variant, cfg in enumerate((cfg00, cfg04)):
        for repeat in range(repeats):
            seed_sequence = np.random.SeedSequence(
                entropy = master_seed, spawn_key = (run_index, variant, repeat))
            streams = RngStreams.from_seed_sequence(seed_sequence, algorithm)
            records.append(gaode_run(problem, run_config, cfg, streams, run_index))

    best = select_best_run(records)
    metadata = dict(best.metadata)
    metadata["oracle"] = "composite"
    metadata["composite.chosen"] = best.metadata["oracle"]
    metadata["composite.repeats"] = str(repeats)
    metadata["composite.runs"] = str(len(records))
    return replace(best, metadata=metadata)


def composite_configs(lam: int, **ranges) -> Tuple[OracleConfig, OracleConfig]:
    """
    The two presets composed into GAODE, with the given lambda and
    the given f_max, cr_min and cr_max
    """
    return (OracleConfig.preset("gaode00", lam=lam, **ranges),
            OracleConfig.preset("gaode04", lam=lam, **ranges))
