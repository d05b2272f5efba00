"""
All fixtures
"""

# some mock classes only have a few methods; that's not a problem
# pylint: disable=too-few-public-methods

# The way how fixtures work for pytest requires "redefining" outer names
# pylint: disable=redefined-outer-name

import numpy as np
import pytest

from src.benchmarks import make_problem
from src.engine import RunConfig
from src.metrics import RunRecord
from src.population import Individual, Population
from src.rng import RngStreams


def pytest_addoption(parser):
    """
    The reproduction experiments take minutes; they only run on request
    """
    parser.addoption("--runslow", action="store_true", default=False,
                     help="also run the tests marked slow")


def pytest_configure(config):
    """
    Register the slow marker
    """
    config.addinivalue_line("markers", "slow: experiment scale test, "
                                       "needs --runslow")


def pytest_collection_modifyitems(config, items):
    """
    Skip the slow tests unless --runslow is given
    """
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def scripted_generator():
    """
    Fixture to define a class to mock numpy.random.Generator. Every
    method hands out the values it was scripted with, in order.
    """
    class ScriptedGenerator:
        """
        Fake numpy.random.Generator
        """
        def __init__(self, random=(), integers=(), standard_cauchy=(),
                     standard_normal=()):
            self.script = {
                "random": list(random),
                "integers": list(integers),
                "standard_cauchy": list(standard_cauchy),
                "standard_normal": list(standard_normal)
                }
            self.calls = []

        def next_values(self, name, count):
            """
            Take the next count scripted values of a method
            """
            values = self.script[name]
            assert len(values) >= count, f"script for {name} exhausted"
            taken, self.script[name] = values[:count], values[count:]
            self.calls.append(name)
            return taken

        def random(self, size=None):
            """
            Fake uniforms on [0, 1)
            """
            if size is None:
                return self.next_values("random", 1)[0]
            count = int(np.prod(size))
            return np.array(self.next_values("random", count)).reshape(size)

        def integers(self, high):
            """
            Fake integers; checks that the scripted value is in range
            """
            value = self.next_values("integers", 1)[0]
            assert 0 <= value < high
            return value

        def standard_cauchy(self):
            """
            Fake Cauchy samples
            """
            return self.next_values("standard_cauchy", 1)[0]

        def standard_normal(self):
            """
            Fake normal samples
            """
            return self.next_values("standard_normal", 1)[0]

        def exhausted(self):
            """
            Returns True if every scripted value has been used
            """
            return not any(self.script.values())

    return ScriptedGenerator


@pytest.fixture
def population_of():
    """
    Fixture to build an evaluated population (sphere values) from a
    list of points
    """
    def build(points):
        members = [ Individual.with_value(np.array(point, dtype=float),
                                          float(np.sum(np.square(point))))
                    for point in points ]
        return Population(members)
    return build


@pytest.fixture
def sphere2():
    """
    The two dimensional sphere
    """
    return make_problem("sphere", 2)


@pytest.fixture
def small_run_config():
    """
    A run configuration that is small enough for quick tests
    """
    return RunConfig(population_size=20, budget=3000, threshold=1e-8)


@pytest.fixture
def streams():
    """
    Fixture to create the random streams of a run from a seed
    """
    def create(seed=1, run_index=0, algorithm="pcg64"):
        return RngStreams.for_run(seed, run_index, algorithm)
    return create


@pytest.fixture
def make_record():
    """
    Fixture to create run records with only the fields a test cares about
    """
    def create(run_index=0, fevals_to_success=None, fevals=100,
               trajectory=None, theta_trace=None, oracle_evals=0):
        return RunRecord(run_index = run_index,
                         success = fevals_to_success is not None,
                         fevals_to_success = fevals_to_success,
                         fevals = fevals,
                         best_error_trajectory = list(trajectory or []),
                         theta_trace = list(theta_trace or []),
                         oracle_evals = oracle_evals)
    return create


@pytest.fixture
def output_root(tmp_path, monkeypatch):
    """
    Direct all results into a temporary directory
    """
    monkeypatch.setenv("GAOLAB_OUTPUT", str(tmp_path))
    return tmp_path
