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
The six benchmark functions, their search boxes and optima.

All objective functions take either a single point (shape (D,)) or a
batch of points (shape (k, D)) and return one value per point.
"""

from dataclasses import dataclass
from typing import Callable, Dict, Optional

import numpy as np

from . import settings
from .errors import ConfigurationError, ContractViolation
from .rng import derived_seed


def sphere(x: np.ndarray, rotation: Optional[np.ndarray] = None) -> np.ndarray:
    """
    Sum of squares
    """
    # pylint: disable=unused-argument
    return np.sum(x**2, axis=-1)


def ellipsoid_weights(dimension: int) -> np.ndarray:
    """
    Coefficients 10^(6 (i-1)/(D-1)) of the ellipsoid
    """
    exponents = np.arange(dimension) / (dimension - 1)
    return settings.ellipsoid_condition ** exponents


def ellipsoid(x: np.ndarray, rotation: Optional[np.ndarray] = None) -> np.ndarray:
    """
    Axis parallel ellipsoid, or the rotated one if rotation is given
    """
    if rotation is not None:
        x = x @ rotation.T
    return np.sum(ellipsoid_weights(x.shape[-1]) * x**2, axis=-1)


def rosenbrock(x: np.ndarray, rotation: Optional[np.ndarray] = None) -> np.ndarray:
    """
    The Rosenbrock function, minimum at (1, ..., 1)
    """
    # pylint: disable=unused-argument
    head = x[..., :-1]
    tail = x[..., 1:]
    return np.sum(100.0 * (tail - head**2)**2 + (1.0 - head)**2, axis=-1)


def ackley(x: np.ndarray, rotation: Optional[np.ndarray] = None) -> np.ndarray:
    """
    The Ackley function.

    Written as 20 (1 - exp(a)) + (e - exp(b)) so that both terms are
    non-negative in floating point as well.
    """
    # pylint: disable=unused-argument
    root_mean_square = np.sqrt(np.mean(x**2, axis=-1))
    mean_cos = np.mean(np.cos(2.0 * np.pi * x), axis=-1)
    return (-20.0 * np.expm1(-0.2 * root_mean_square)
            + (np.e - np.exp(mean_cos)))


def rastrigin(x: np.ndarray, rotation: Optional[np.ndarray] = None) -> np.ndarray:
    """
    The Rastrigin function
    """
    # pylint: disable=unused-argument
    dimension = x.shape[-1]
    return 10.0 * dimension + np.sum(x**2 - 10.0 * np.cos(2.0 * np.pi * x),
                                     axis=-1)


functions: Dict[str, Callable[..., np.ndarray]] = {
    "sphere": sphere,
    "ellipsoid": ellipsoid,
    "rot-ellipsoid": ellipsoid,
    "rosenbrock": rosenbrock,
    "ackley": ackley,
    "rastrigin": rastrigin
    }

rotated = { "rot-ellipsoid" }


@dataclass(frozen=True, eq=False)
class Problem:
    """
    A benchmark problem instance. Immutable once built, so it can be
    shared between runs.
    """
    name: str
    dimension: int
    lower: np.ndarray
    upper: np.ndarray
    x_opt: np.ndarray
    f_opt: float = 0.0
    rotation: Optional[np.ndarray] = None

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return evaluate(self, x)

    def error(self, fx: float) -> float:
        """
        The distance |f(x) - f*| of an objective value to the optimum
        """
        return abs(fx - self.f_opt)

    def describe(self) -> Dict[str, str]:
        """
        Metadata describing the instance
        """
        return {
            "function": self.name,
            "dimension": str(self.dimension),
            "lower": repr(float(self.lower[0])),
            "upper": repr(float(self.upper[0])),
            "rotated": str(self.rotation is not None)
            }


def evaluate(problem: Problem, x: np.ndarray) -> np.ndarray:
    """
    Objective value(s) of x on the problem
    """
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != problem.dimension:
        raise ContractViolation(
            f"{problem.name} has dimension {problem.dimension}, "
            f"got a point of dimension {x.shape[-1]}")
    return functions[problem.name](x, problem.rotation)


def make_rotation(dimension: int, seed: int) -> np.ndarray:
    """
    A random orthogonal matrix: Gram-Schmidt orthonormalization of a
    standard normal matrix, obtained as the QR decomposition with the
    signs fixed so that R has a positive diagonal.
    """
    if dimension < 2:
        raise ConfigurationError("rotations need at least two dimensions")
    rng = np.random.default_rng(seed)
    while True:
        matrix = rng.standard_normal((dimension, dimension))
        orthogonal, triangular = np.linalg.qr(matrix)
        diagonal = np.diag(triangular)
        # degenerate draw, redraw
        if np.min(np.abs(diagonal)) > 1e-12 * np.max(np.abs(diagonal)):
            return orthogonal * np.sign(diagonal)


def make_problem(name: str, dimension: int,
                 instance_seed: int = settings.protocol["instance_seed"]
                 ) -> Problem:
    """
    Build a problem instance. The rotation, if any, only depends on
    (name, dimension, instance_seed).
    """
    if name not in functions:
        raise ConfigurationError(f"unknown function {name!r}; choose one of "
                                 f"{', '.join(functions)}")
    if dimension < 2:
        raise ConfigurationError(f"dimension must be at least 2, got {dimension}")

    box = settings.benchmarks[name]
    rotation = None
    if name in rotated:
        function_index = list(functions).index(name)
        rotation = make_rotation(
            dimension, derived_seed(instance_seed, dimension, function_index))

    return Problem(name = name,
                   dimension = dimension,
                   lower = np.full(dimension, box["lower"]),
                   upper = np.full(dimension, box["upper"]),
                   x_opt = np.full(dimension, box["optimum"]),
                   rotation = rotation)
