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
The differential evolution core: individuals, populations and the
rand/1/bin operators.

All random numbers a trial needs for parent selection and crossover
are drawn up front into a TrialRandomness object. The operators below
never touch a generator, so the same TrialRandomness can be used to
build any number of trials that only differ in F and CR.
"""

from dataclasses import dataclass, field
from typing import List, Tuple, Union

import numpy as np

from .errors import ConfigurationError, ContractViolation

# F and CR are the established names of the control parameters
# pylint: disable=invalid-name

ArrayOrFloat = Union[float, np.ndarray]


@dataclass(frozen=True)
class ControlParams:
    """
    One {F, CR} pair attached to a trial generation event
    """
    F: float
    CR: float

    def __post_init__(self):
        if not 0.0 < self.F <= 1.0:
            raise ContractViolation(f"F={self.F} outside (0, 1]")
        if not 0.0 <= self.CR <= 1.0:
            raise ContractViolation(f"CR={self.CR} outside [0, 1]")

    def as_tuple(self) -> Tuple[float, float]:
        """
        Return the pair as (F, CR)
        """
        return (self.F, self.CR)


@dataclass(eq=False)
class Individual:
    """
    A point of the search space together with its objective value.

    fx is only meaningful when evaluated is True.
    """
    x: np.ndarray
    fx: float = float("nan")
    evaluated: bool = False

    @classmethod
    def with_value(cls, x: np.ndarray, fx: float) -> "Individual":
        """
        Create an already evaluated individual
        """
        return cls(x, float(fx), True)


@dataclass
class Population:
    """
    A DE population: N individuals and the generation counter
    """
    members: List[Individual]
    generation: int = 1

    def __len__(self):
        return len(self.members)

    def __getitem__(self, index: int) -> Individual:
        return self.members[index]

    def values(self) -> np.ndarray:
        """
        The objective values of all members
        """
        return np.array([member.fx for member in self.members])

    def best(self) -> Individual:
        """
        The member with the lowest objective value (first one on ties)
        """
        return self.members[int(np.argmin(self.values()))]

    def advance(self, members: List[Individual]):
        """
        Replace the members by the survivors and start the next generation
        """
        if len(members) != len(self.members):
            raise ContractViolation("population size must stay constant")
        self.members = members
        self.generation += 1


@dataclass(frozen=True, eq=False)
class TrialRandomness:
    """
    The frozen random draws of one trial event: three distinct parent
    indices different from the target, the forced crossover index and
    one uniform per coordinate. Indices are 0-based.
    """
    r1: int
    r2: int
    r3: int
    j_r: int
    mask_uniforms: np.ndarray = field(repr=False)


def draw_trial_randomness(i: int, population_size: int, dimension: int,
                          shared_stream: np.random.Generator
                          ) -> TrialRandomness:
    """
    Draw the parent indices, then the forced index, then the mask
    uniforms of target i from the shared stream.

    Parent indices are sampled by rejection from {0, ..., N-1}.
    Exactly D mask uniforms are drawn whatever CR will be.
    """
    if population_size < 4:
        raise ConfigurationError(
            f"rand/1 needs at least 4 individuals, got {population_size}")
    if dimension < 1:
        raise ConfigurationError(f"dimension must be positive, got {dimension}")

    chosen = [i]
    for _ in range(3):
        index = int(shared_stream.integers(population_size))
        while index in chosen:
            index = int(shared_stream.integers(population_size))
        chosen.append(index)

    j_r = int(shared_stream.integers(dimension))
    mask_uniforms = shared_stream.random(dimension)
    return TrialRandomness(chosen[1], chosen[2], chosen[3], j_r, mask_uniforms)


def rand1_mutation(population: Population, trial_randomness: TrialRandomness,
                   F: ArrayOrFloat) -> np.ndarray:
    """
    v = x_r1 + F (x_r2 - x_r3).

    F may be an array of scale factors, in which case one mutant per
    entry is returned (one row each).
    """
    base = population[trial_randomness.r1].x
    difference = (population[trial_randomness.r2].x
                  - population[trial_randomness.r3].x)
    return base + np.asarray(F, dtype=float)[..., np.newaxis] * difference


def binomial_crossover(parent: np.ndarray, mutant: np.ndarray, CR: ArrayOrFloat,
                       trial_randomness: TrialRandomness) -> np.ndarray:
    """
    Take coordinate j from the mutant if its mask uniform is <= CR or
    j is the forced index, otherwise from the parent.

    With an array of crossover rates, mutant holds one row per rate.
    """
    mask_uniforms = trial_randomness.mask_uniforms
    if mask_uniforms.shape[-1] != parent.shape[-1]:
        raise ContractViolation("one mask uniform per coordinate is required")
    take_mutant = mask_uniforms <= np.asarray(CR, dtype=float)[..., np.newaxis]
    take_mutant[..., trial_randomness.j_r] = True
    return np.where(take_mutant, mutant, parent)


def repair_bounds(trial: np.ndarray, parent: np.ndarray,
                  lower: np.ndarray, upper: np.ndarray) -> np.ndarray:
    """
    Move every coordinate that left the box to the midpoint between
    the parent's coordinate and the violated bound.
    """
    trial = np.where(trial < lower, (lower + parent) / 2.0, trial)
    return np.where(trial > upper, (upper + parent) / 2.0, trial)


def selection_step(parent: Individual,
                   trial: Individual) -> Tuple[Individual, bool]:
    """
    One-to-one survivor selection.

    Returns the survivor and whether the trial was successful, that is
    f(trial) <= f(parent). Ties favour the trial.
    """
    if not (parent.evaluated and trial.evaluated):
        raise ContractViolation("selection needs evaluated individuals")
    if trial.fx <= parent.fx:
        return trial, True
    return parent, False


def initialize_population(lower: np.ndarray, upper: np.ndarray,
                          population_size: int,
                          init_stream: np.random.Generator) -> List[np.ndarray]:
    """
    Uniform random points in the box, one per individual. The points
    are returned unevaluated; evaluating them is the caller's business
    because it is charged to the budget.
    """
    if population_size < 4:
        raise ConfigurationError(
            f"rand/1 needs at least 4 individuals, got {population_size}")
    points = lower + (upper - lower) * init_stream.random(
        (population_size, len(lower)))
    return list(points)


def make_trials(population: Population, i: int,
                trial_randomness: TrialRandomness,
                f_values: np.ndarray, cr_values: np.ndarray,
                lower: np.ndarray, upper: np.ndarray) -> np.ndarray:
    """
    Build one repaired rand/1/bin trial of target i per (F, CR) pair.
    All trials share trial_randomness, so two equal pairs give equal
    trials. Returns an array with one row per pair.
    """
    parent = population[i].x
    mutants = rand1_mutation(population, trial_randomness, f_values)
    trials = binomial_crossover(parent, mutants, cr_values, trial_randomness)
    return repair_bounds(trials, parent, lower, upper)
