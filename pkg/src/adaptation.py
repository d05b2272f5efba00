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
Parameter adaptation methods.

Every method follows the same three step protocol within a generation
t: assign is called once per individual before any trial is built,
observe once per individual after survivor selection, and
end_generation once after all individuals have been observed. The
methods only see F, CR, the success flag and the improvement, so they
are independent of the mutation and crossover operators.

All random numbers come from the parameter stream handed to the
constructor; the shared stream of the run is never touched.
"""

import logging
from collections import deque
from copy import deepcopy
from typing import Any, Deque, Dict, List, Optional, Sequence, Tuple, Type

import numpy as np

from . import settings
from . import resources
from .errors import ConfigurationError, ContractViolation
from .population import ControlParams

logger = logging.getLogger(__name__)


def lehmer_mean(values: Sequence[float],
                weights: Optional[Sequence[float]] = None) -> float:
    """
    The (weighted) Lehmer mean sum(w s^2) / sum(w s).

    Returns 0 if all values are zero.
    """
    values = np.asarray(values, dtype=float)
    if weights is None:
        weights = np.ones_like(values)
    weights = np.asarray(weights, dtype=float)
    denominator = np.sum(weights * values)
    if denominator == 0.0:
        return 0.0
    return float(np.sum(weights * values**2) / denominator)


def power_mean(values: Sequence[float], exponent: float) -> float:
    """
    The power mean (sum(s^n) / |S|)^(1/n)
    """
    values = np.asarray(values, dtype=float)
    return float(np.mean(values**exponent) ** (1.0 / exponent))


def sample_cauchy_f(location: float, scale: float, rng,
                    max_draws: int = settings.cauchy_max_draws) -> float:
    """
    Draw F from a Cauchy distribution. Values <= 0 are discarded and
    drawn again, values > 1 are truncated to 1. After max_draws
    discarded values the location itself is returned.
    """
    for _ in range(max_draws):
        value = location + scale * rng.standard_cauchy()
        if value > 0.0:
            return float(min(value, 1.0))
    logger.warning("no positive Cauchy sample around %g after %d draws",
                   location, max_draws)
    return float(location)


def sample_normal_cr(location: float, scale: float, rng) -> float:
    """
    Draw CR from a normal distribution, clamped to [0, 1]
    """
    return float(np.clip(location + scale * rng.standard_normal(), 0.0, 1.0))


def sample_uniform_params(rng, f_min: float, f_max: float,
                          cr_min: float, cr_max: float,
                          count: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Draw count pairs with F uniform on (f_min, f_max] and CR uniform on
    [cr_min, cr_max].

    The uniforms are drawn pairwise (F of pair 1, CR of pair 1, F of
    pair 2, ...), so the first k pairs of a larger draw are the pairs
    of a draw of size k. An F that lands exactly on f_min is drawn
    again.
    """
    uniforms = rng.random((count, 2))
    f_values = f_max - uniforms[:, 0] * (f_max - f_min)
    cr_values = cr_min + uniforms[:, 1] * (cr_max - cr_min)
    for index in np.flatnonzero(f_values <= f_min):
        while f_values[index] <= f_min:
            f_values[index] = f_max - rng.random() * (f_max - f_min)
    return f_values, cr_values


class AdaptationMethod:
    """
    Base class of all adaptation methods.

    Derived classes implement _assign and may override _observe and
    _end_generation. The public methods enforce the call discipline
    and count the calls.
    """
    token: str = ""

    def __init__(self, population_size: int, param_stream,
                 meta: Optional[Dict[str, Any]] = None):
        if population_size < 1:
            raise ConfigurationError("population size must be positive")
        self.population_size = population_size
        self.rng = param_stream
        self.meta: Dict[str, Any] = deepcopy(settings.methods[self.token])
        if meta:
            resources.recursive_update(self.meta, meta)

        self.assign_calls = 0
        self.observe_calls = 0
        self.__assigned: Dict[int, bool] = {}
        self.__generation: Optional[int] = None


    def assign(self, i: int, t: int) -> ControlParams:
        """
        Step (i): the parameters of individual i in generation t
        """
        if self.__generation is None:
            self.__generation = t
        if t != self.__generation or i in self.__assigned:
            raise ContractViolation(
                f"assign({i}, {t}) called twice or out of generation order")
        self.__assigned[i] = False
        self.assign_calls += 1
        return self._assign(i, t)


    def observe(self, i: int, t: int, params: ControlParams,
                success: bool, delta_f: float):
        """
        Step (iii): report the outcome of the trial of individual i
        """
        if t != self.__generation or self.__assigned.get(i, True):
            raise ContractViolation(
                f"observe({i}, {t}) without a matching assign")
        if delta_f < 0.0:
            raise ContractViolation("improvements must be non-negative")
        self.__assigned[i] = True
        self.observe_calls += 1
        self._observe(i, params, success, delta_f)


    def end_generation(self, t: int):
        """
        Close generation t and update the method's state
        """
        if t != self.__generation:
            raise ContractViolation(f"end_generation({t}) out of order")
        self._end_generation()
        self.__assigned = {}
        self.__generation = t + 1


    def _assign(self, i: int, t: int) -> ControlParams:
        """
        To be supplied by the derived class.
        """
        raise NotImplementedError("Must be supplied by the derived class")


    # pylint: disable=unused-argument
    def _observe(self, i: int, params: ControlParams,
                 success: bool, delta_f: float):
        """
        Does nothing in the base class.
        """


    def _end_generation(self):
        """
        Does nothing in the base class.
        """
    # pylint: enable=unused-argument


    def describe(self) -> Dict[str, str]:
        """
        The method and its meta-parameters, for output metadata
        """
        description = { "method": self.token }
        description.update({ f"{self.token}.{key}": repr(value)
                             for key, value in self.meta.items() })
        return description


class Jde(AdaptationMethod):
    """
    jDE: every individual carries its own F and CR. Each generation
    they are regenerated with probability tau_F resp. tau_CR; values
    that did not lead to a successful trial are discarded again.
    """
    token = "jde"

    def __init__(self, population_size, param_stream, meta=None):
        super().__init__(population_size, param_stream, meta)
        self.f = np.full(population_size, float(self.meta["f_init"]))
        self.cr = np.full(population_size, float(self.meta["cr_init"]))


    def _assign(self, i, t):
        f_value = self.f[i]
        if resources.randomly_true(self.meta["tau_f"], self.rng):
            f_value = self.meta["f_lower"] + self.rng.random() * self.meta["f_upper"]
        cr_value = self.cr[i]
        if resources.randomly_true(self.meta["tau_cr"], self.rng):
            cr_value = self.rng.random()
        return ControlParams(float(f_value), float(cr_value))


    def _observe(self, i, params, success, delta_f):
        if success:
            self.f[i] = params.F
            self.cr[i] = params.CR


class Epsde(AdaptationMethod):
    """
    EPSDE's parameter pools: each individual keeps its pair as long as
    it is successful. Successful pairs are remembered; a failed pair is
    replaced, by a coin flip, either by a remembered pair or by a fresh
    combination from the pools.
    """
    token = "epsde"

    def __init__(self, population_size, param_stream, meta=None):
        super().__init__(population_size, param_stream, meta)
        capacity = int(self.meta["memory_factor"] * population_size)
        self.memory: Deque[Tuple[float, float]] = deque(maxlen=capacity)
        self.pairs: List[Tuple[float, float]] = [
            self.pool_pair() for _ in range(population_size) ]


    def pool_pair(self) -> Tuple[float, float]:
        """
        A random combination of the two pools
        """
        f_pool = self.meta["f_pool"]
        cr_pool = self.meta["cr_pool"]
        return (float(f_pool[int(self.rng.integers(len(f_pool)))]),
                float(cr_pool[int(self.rng.integers(len(cr_pool)))]))


    def _assign(self, i, t):
        return ControlParams(*self.pairs[i])


    def _observe(self, i, params, success, delta_f):
        if success:
            self.memory.append(params.as_tuple())
        elif self.memory and resources.randomly_true(0.5, self.rng):
            self.pairs[i] = self.memory[int(self.rng.integers(len(self.memory)))]
        else:
            self.pairs[i] = self.pool_pair()


class Jade(AdaptationMethod):
    """
    JADE's parameter adaptation (without archive and without the
    current-to-pbest operator)
    """
    token = "jade"

    def __init__(self, population_size, param_stream, meta=None):
        super().__init__(population_size, param_stream, meta)
        self.mu_f = float(self.meta["mu_f"])
        self.mu_cr = float(self.meta["mu_cr"])
        self.s_f: List[float] = []
        self.s_cr: List[float] = []


    def _assign(self, i, t):
        cr_value = sample_normal_cr(self.mu_cr, self.meta["scale_cr"], self.rng)
        f_value = sample_cauchy_f(self.mu_f, self.meta["scale_f"], self.rng)
        return ControlParams(f_value, cr_value)


    def _observe(self, i, params, success, delta_f):
        if success:
            self.s_f.append(params.F)
            self.s_cr.append(params.CR)


    def update(self, s_f: Sequence[float], s_cr: Sequence[float]):
        """
        Move the means towards the Lehmer mean of the successful F
        values and the arithmetic mean of the successful CR values.
        Empty success sets leave the means unchanged.
        """
        c = self.meta["c"]
        if len(s_cr) > 0:
            self.mu_cr = (1 - c) * self.mu_cr + c * float(np.mean(s_cr))
        if len(s_f) > 0:
            self.mu_f = (1 - c) * self.mu_f + c * lehmer_mean(s_f)


    def _end_generation(self):
        self.update(self.s_f, self.s_cr)
        self.s_f = []
        self.s_cr = []


class Mde(AdaptationMethod):
    """
    MDE's parameter adaptation: the means follow the power means of
    the successful values with a random weight on the old mean.
    """
    token = "mde"

    def __init__(self, population_size, param_stream, meta=None):
        super().__init__(population_size, param_stream, meta)
        self.f_m = float(self.meta["f_m"])
        self.cr_m = float(self.meta["cr_m"])
        self.s_f: List[float] = []
        self.s_cr: List[float] = []


    def _assign(self, i, t):
        cr_value = sample_normal_cr(self.cr_m, self.meta["scale_cr"], self.rng)
        f_value = sample_cauchy_f(self.f_m, self.meta["scale_f"], self.rng)
        return ControlParams(f_value, cr_value)


    def _observe(self, i, params, success, delta_f):
        if success:
            self.s_f.append(params.F)
            self.s_cr.append(params.CR)


    def update(self, s_f: Sequence[float], s_cr: Sequence[float]):
        """
        Update F_m and CR_m; nothing (not even a random draw) happens
        for an empty success set.
        """
        exponent = self.meta["exponent"]
        if len(s_f) > 0:
            weight = resources.get_value(self.meta["w_f"], self.rng)
            self.f_m = weight * self.f_m + (1 - weight) * power_mean(s_f, exponent)
        if len(s_cr) > 0:
            weight = resources.get_value(self.meta["w_cr"], self.rng)
            self.cr_m = (weight * self.cr_m
                         + (1 - weight) * power_mean(s_cr, exponent))


    def _end_generation(self):
        self.update(self.s_f, self.s_cr)
        self.s_f = []
        self.s_cr = []


class Shade(AdaptationMethod):
    """
    SHADE's success-history based adaptation with H memory slots
    """
    token = "shade"

    def __init__(self, population_size, param_stream, meta=None):
        super().__init__(population_size, param_stream, meta)
        memory_size = int(self.meta["memory_size"])
        self.memory_f = np.full(memory_size, float(self.meta["memory_init"]))
        self.memory_cr = np.full(memory_size, float(self.meta["memory_init"]))
        self.cursor = 0
        self.successes: List[Tuple[float, float, float]] = []


    def _assign(self, i, t):
        slot = int(self.rng.integers(len(self.memory_f)))
        cr_value = sample_normal_cr(self.memory_cr[slot], self.meta["scale_cr"],
                                    self.rng)
        f_value = sample_cauchy_f(self.memory_f[slot], self.meta["scale_f"],
                                  self.rng)
        return ControlParams(f_value, cr_value)


    def _observe(self, i, params, success, delta_f):
        if success:
            self.successes.append((params.F, params.CR, delta_f))


    def update(self, successes: Sequence[Tuple[float, float, float]]):
        """
        Write the improvement weighted Lehmer means of the successful
        F and CR values to the current memory slot and advance the
        cursor. If no success improved the objective, all successes
        are weighted equally.
        """
        if not successes:
            return
        f_values, cr_values, deltas = (np.array(column, dtype=float)
                                       for column in zip(*successes))
        total = np.sum(deltas)
        if total > 0.0:
            weights = deltas / total
        else:
            weights = np.full(len(deltas), 1.0 / len(deltas))
        self.memory_f[self.cursor] = lehmer_mean(f_values, weights)
        self.memory_cr[self.cursor] = lehmer_mean(cr_values, weights)
        self.cursor = (self.cursor + 1) % len(self.memory_f)


    def _end_generation(self):
        self.update(self.successes)
        self.successes = []


class RandomParams(AdaptationMethod):
    """
    No adaptation at all: F and CR are drawn uniformly for every trial,
    exactly as the oracle draws a single candidate.
    """
    token = "random"

    def _assign(self, i, t):
        f_values, cr_values = sample_uniform_params(
            self.rng, self.meta["f_min"], self.meta["f_max"],
            self.meta["cr_min"], self.meta["cr_max"], 1)
        return ControlParams(float(f_values[0]), float(cr_values[0]))


method_classes: Dict[str, Type[AdaptationMethod]] = {
    cls.token: cls for cls in (Jde, Epsde, Jade, Mde, Shade, RandomParams)
    }


def make_method(token: str, population_size: int, param_stream,
                meta: Optional[Dict[str, Any]] = None) -> AdaptationMethod:
    """
    Create the adaptation method named by token
    """
    if token not in method_classes:
        raise ConfigurationError(f"unknown adaptation method {token!r}; "
                                 f"choose one of {', '.join(method_classes)}")
    return method_classes[token](population_size, param_stream, meta)
