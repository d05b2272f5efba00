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
The adaptive DE: rand/1/bin with the parameters assigned by an
adaptation method, synchronous generations, and the bookkeeping of
counted evaluations that ends a run on success or on an exhausted
budget.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import settings
from .adaptation import AdaptationMethod, make_method
from .benchmarks import Problem
from .errors import ConfigurationError
from .metrics import RunRecord
from .population import (ControlParams, Individual, Population,
                         draw_trial_randomness, initialize_population,
                         make_trials, selection_step)
from .rng import RngStreams

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RunConfig:
    """
    The settings of a single run
    """
    population_size: int
    budget: int
    threshold: float = settings.protocol["threshold"]
    success_criterion: str = settings.protocol["success_criterion"]

    def __post_init__(self):
        if self.population_size < 4:
            raise ConfigurationError(
                f"rand/1 needs at least 4 individuals, got {self.population_size}")
        if self.budget <= 0:
            raise ConfigurationError(f"budget must be positive, got {self.budget}")
        if self.threshold < 0:
            raise ConfigurationError("the success threshold must be non-negative")
        if self.success_criterion not in settings.success_criteria:
            raise ConfigurationError(
                f"unknown success criterion {self.success_criterion!r}")

    def describe(self) -> Dict[str, str]:
        """
        Metadata describing the run settings
        """
        return {
            "population_size": str(self.population_size),
            "budget": str(self.budget),
            "threshold": repr(self.threshold),
            "success_criterion": self.success_criterion
            }


class EvaluationTracker:
    """
    Counts the evaluations charged to the budget and keeps the
    best-so-far error, its trajectory and the parameters of every
    counted trial.
    """
    def __init__(self, problem: Problem, run_config: RunConfig):
        self.problem = problem
        self.run_config = run_config
        self.fevals = 0
        self.best_error = float("inf")
        self.trajectory: List[Tuple[int, float]] = []
        self.theta_trace: List[Tuple[float, float]] = []
        self.fevals_to_success: Optional[int] = None


    def count(self, fx: float, params: Optional[ControlParams] = None):
        """
        Charge one evaluation with objective value fx
        """
        self.fevals += 1
        error = self.problem.error(fx)
        if error < self.best_error:
            self.best_error = error
            self.trajectory.append((self.fevals, error))
        if params is not None:
            self.theta_trace.append(params.as_tuple())
        if self.fevals_to_success is None and error <= self.run_config.threshold:
            self.fevals_to_success = self.fevals


    def succeeded(self) -> bool:
        """
        Returns True once the threshold has been reached
        """
        return self.fevals_to_success is not None


    def finished(self) -> bool:
        """
        Returns True if the run has to stop
        """
        return self.succeeded() or self.fevals >= self.run_config.budget


    def record(self, run_index: int, metadata: Dict[str, str],
               **kwargs) -> RunRecord:
        """
        The run record of everything counted so far
        """
        return RunRecord(run_index = run_index,
                         success = self.succeeded(),
                         fevals_to_success = self.fevals_to_success,
                         fevals = self.fevals,
                         best_error_trajectory = list(self.trajectory),
                         theta_trace = list(self.theta_trace),
                         metadata = metadata,
                         **kwargs)


def evaluate_point(problem: Problem, x: np.ndarray) -> float:
    """
    Evaluate a single point through the batch code path, so that it
    gets bitwise the same value as inside a batch of trials
    """
    return float(problem(x[np.newaxis, :])[0])


def initial_population(problem: Problem, run_config: RunConfig,
                       streams: RngStreams,
                       tracker: EvaluationTracker) -> Optional[Population]:
    """
    Create and evaluate the first population, charging every
    evaluation. Returns None if the run finished during initialization.
    """
    members = []
    for point in initialize_population(problem.lower, problem.upper,
                                       run_config.population_size,
                                       streams.init_stream):
        member = Individual.with_value(point, evaluate_point(problem, point))
        tracker.count(member.fx)
        members.append(member)
        if tracker.finished():
            return None
    return Population(members)


def is_success(criterion: str, parent: Individual, trial: Individual,
               selected: bool) -> bool:
    """
    The success flag reported to the adaptation method. The
    conventional criterion is the selection outcome itself.
    """
    if criterion == "strict":
        return trial.fx < parent.fx
    return selected


def run_metadata(problem: Problem, run_config: RunConfig,
                 streams: RngStreams) -> Dict[str, str]:
    """
    Metadata shared by all kinds of runs
    """
    metadata = dict(problem.describe())
    metadata.update(run_config.describe())
    metadata["generator"] = streams.algorithm
    metadata["seed"] = "/".join(str(part) for part in streams.entropy)
    return metadata


def run_adaptive_de(problem: Problem, run_config: RunConfig,
                    method: AdaptationMethod, streams: RngStreams,
                    run_index: int = 0) -> RunRecord:
    """
    Run the adaptive DE until success or until the budget is used up.

    In every generation the method assigns all parameters first, then
    one trial per individual is built and evaluated, and the method
    observes the outcomes; the survivors replace the population at the
    end of the generation.
    """
    tracker = EvaluationTracker(problem, run_config)
    metadata = run_metadata(problem, run_config, streams)
    metadata.update(method.describe())

    population = initial_population(problem, run_config, streams, tracker)
    size = run_config.population_size

    while population is not None and not tracker.finished():
        generation = population.generation
        assigned = [method.assign(i, generation) for i in range(size)]

        survivors = []
        for i, params in enumerate(assigned):
            trial_randomness = draw_trial_randomness(i, size, problem.dimension,
                                                     streams.shared_stream)
            trial_x = make_trials(population, i, trial_randomness,
                                  np.array([params.F]), np.array([params.CR]),
                                  problem.lower, problem.upper)[0]
            trial = Individual.with_value(trial_x, evaluate_point(problem, trial_x))
            tracker.count(trial.fx, params)

            parent = population[i]
            survivor, selected = selection_step(parent, trial)
            method.observe(i, generation, params,
                           is_success(run_config.success_criterion,
                                      parent, trial, selected),
                           max(parent.fx - trial.fx, 0.0))
            survivors.append(survivor)
            if tracker.finished():
                break

        if tracker.finished():
            break
        method.end_generation(generation)
        population.advance(survivors)
        logger.debug("generation %d: best error %g after %d evaluations",
                     generation, tracker.best_error, tracker.fevals)

    logger.debug("run %d (%s) finished: success=%s, %d evaluations",
                 run_index, method.token, tracker.succeeded(), tracker.fevals)
    return tracker.record(run_index, metadata)


def run_method(token: str, problem: Problem, run_config: RunConfig,
               streams: RngStreams, run_index: int = 0,
               meta: Optional[Dict] = None) -> RunRecord:
    """
    Create the adaptation method named by token on the run's parameter
    stream and run the adaptive DE with it
    """
    method = make_method(token, run_config.population_size,
                         streams.param_stream, meta)
    return run_adaptive_de(problem, run_config, method, streams, run_index)
