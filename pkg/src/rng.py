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
Random number streams.

Every run owns three independent generators: the shared stream, from
which the parent indices, the forced crossover index and the crossover
mask uniforms are drawn; the parameter stream, from which F and CR
values are drawn; and the initialization stream for the first
population. Drawing from one of them never advances another, which is
what makes the oracle's candidates comparable and keeps the trial
randomness independent of the number of candidates.
"""

from dataclasses import dataclass, field
from typing import Dict, Sequence

import numpy as np

from . import settings
from .errors import ConfigurationError

# numpy bit generator classes by token
bit_generators: Dict[str, type] = {
    "pcg64": np.random.PCG64,
    "philox": np.random.Philox,
    "sfc64": np.random.SFC64,
    "mt19937": np.random.MT19937
    }

STREAM_NAMES = ("shared", "param", "init")


def make_generator(seed_sequence: np.random.SeedSequence,
                   algorithm: str) -> np.random.Generator:
    """
    Create a generator of the given algorithm from a seed sequence
    """
    if algorithm not in bit_generators:
        raise ConfigurationError(f"unknown generator {algorithm!r}; "
                                 f"choose one of {settings.generators}")
    return np.random.Generator(bit_generators[algorithm](seed_sequence))


def run_seed_sequence(master_seed: int,
                      run_index: int) -> np.random.SeedSequence:
    """
    Derive the seed sequence of one run from the master seed.

    The derivation only depends on the pair (master_seed, run_index),
    so runs can be executed in any order and on any worker.
    """
    if master_seed < 0 or run_index < 0:
        raise ConfigurationError("seeds and run indices must be non-negative")
    return np.random.SeedSequence(entropy=master_seed, spawn_key=(run_index,))


@dataclass
class RngStreams:
    """
    The three random streams of a single run
    """
    shared_stream: np.random.Generator
    param_stream: np.random.Generator
    init_stream: np.random.Generator
    algorithm: str = "pcg64"
    entropy: Sequence[int] = field(default_factory=tuple)

    @classmethod
    def from_seed_sequence(cls, seed_sequence: np.random.SeedSequence,
                           algorithm: str = "pcg64") -> "RngStreams":
        """
        Spawn the three streams from a seed sequence
        """
        children = seed_sequence.spawn(len(STREAM_NAMES))
        shared, param, init = (make_generator(child, algorithm)
                               for child in children)
        return cls(shared, param, init, algorithm,
                   (seed_sequence.entropy, *seed_sequence.spawn_key))

    @classmethod
    def for_run(cls, master_seed: int, run_index: int,
                algorithm: str = "pcg64") -> "RngStreams":
        """
        The streams of run run_index of an experiment seeded with
        master_seed
        """
        return cls.from_seed_sequence(
            run_seed_sequence(master_seed, run_index), algorithm)


def derived_seed(*key: int) -> int:
    """
    A 64 bit seed derived from a tuple of non-negative integers, used
    for things that must not depend on any run (rotation matrices,
    repeat seeds of composed runs).
    """
    return int(np.random.SeedSequence(list(key)).generate_state(
        1, dtype=np.uint64)[0])
