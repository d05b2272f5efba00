"""
Test population.py: the rand/1/bin operators
"""

# F and CR are the established names of the control parameters
# pylint: disable=invalid-name

import numpy as np
import pytest
from hypothesis import given, settings as hypothesis_settings
from hypothesis import strategies as st

from src import population
from src.errors import ConfigurationError, ContractViolation
from src.population import (ControlParams, Individual, TrialRandomness,
                            binomial_crossover, draw_trial_randomness,
                            rand1_mutation, repair_bounds, selection_step)


def trial_randomness(r1=1, r2=2, r3=3, j_r=0, mask=(0.5, 0.5)):
    """
    A TrialRandomness with given draws
    """
    return TrialRandomness(r1, r2, r3, j_r, np.array(mask, dtype=float))


@pytest.mark.parametrize("F, CR", [ (0.0, 0.5), (1.5, 0.5), (0.5, -0.1),
                                     (0.5, 1.1) ])
def test_control_params_range(F, CR):
    """
    F must be in (0, 1] and CR in [0, 1]
    """
    with pytest.raises(ContractViolation):
        ControlParams(F, CR)


def test_control_params_edges():
    """
    The closed ends of the ranges are accepted
    """
    assert ControlParams(1.0, 0.0).as_tuple() == (1.0, 0.0)
    assert ControlParams(1e-12, 1.0).as_tuple() == (1e-12, 1.0)


def test_draw_trial_randomness_order(scripted_generator):
    """
    Parent indices are drawn by rejection, then j_r, then D uniforms
    """
    # 0 is the target, 2 is drawn twice
    shared = scripted_generator(integers=[0, 2, 2, 3, 1, 2],
                                random=[0.1, 0.2, 0.3])
    drawn = draw_trial_randomness(0, 5, 3, shared)
    assert (drawn.r1, drawn.r2, drawn.r3) == (2, 3, 1)
    assert drawn.j_r == 2
    assert np.array_equal(drawn.mask_uniforms, [0.1, 0.2, 0.3])
    assert shared.exhausted()


def test_draw_trial_randomness_smallest_population(streams):
    """
    With N = 4 the parents are a permutation of the other three
    """
    shared = streams(5).shared_stream
    for target in range(4):
        drawn = draw_trial_randomness(target, 4, 3, shared)
        assert sorted([drawn.r1, drawn.r2, drawn.r3]) == \
            sorted(set(range(4)) - { target })
        assert len(drawn.mask_uniforms) == 3


def test_draw_trial_randomness_replay(streams):
    """
    Freshly seeded streams replay the same draws
    """
    first = draw_trial_randomness(3, 20, 5, streams(8).shared_stream)
    second = draw_trial_randomness(3, 20, 5, streams(8).shared_stream)
    assert (first.r1, first.r2, first.r3, first.j_r) == \
        (second.r1, second.r2, second.r3, second.j_r)
    assert np.array_equal(first.mask_uniforms, second.mask_uniforms)


@pytest.mark.parametrize("size, dimension", [ (3, 2), (4, 0) ])
def test_draw_trial_randomness_invalid(size, dimension, streams):
    """
    rand/1 needs four individuals and at least one coordinate
    """
    with pytest.raises(ConfigurationError):
        draw_trial_randomness(0, size, dimension, streams().shared_stream)


@given(size=st.integers(4, 30), dimension=st.integers(1, 10),
       seed=st.integers(0, 2**32))
@hypothesis_settings(max_examples=50, deadline=None)
def test_draw_trial_randomness_distinct(size, dimension, seed):
    """
    The target and its three parents are always distinct
    """
    shared = np.random.default_rng(seed)
    target = seed % size
    drawn = draw_trial_randomness(target, size, dimension, shared)
    assert len({ target, drawn.r1, drawn.r2, drawn.r3 }) == 4
    assert 0 <= drawn.j_r < dimension
    assert drawn.mask_uniforms.shape == (dimension,)


def test_rand1_mutation(population_of):
    """
    v = x_r1 + F (x_r2 - x_r3)
    """
    members = population_of([ (9, 9), (0, 0), (1, 0), (0, 1) ])
    mutant = rand1_mutation(members, trial_randomness(), 0.5)
    assert np.allclose(mutant, [0.5, -0.5])


def test_rand1_mutation_zero_difference(population_of):
    """
    Equal difference vectors leave the base vector
    """
    members = population_of([ (9, 9), (3, 4), (1, 1), (1, 1) ])
    assert np.array_equal(rand1_mutation(members, trial_randomness(), 0.7),
                          [3, 4])


def test_rand1_mutation_identity(population_of):
    """
    With F = 1 and zero base and subtrahend the mutant is x_r2
    """
    members = population_of([ (9, 9), (0, 0), (2, -3), (0, 0) ])
    assert np.array_equal(rand1_mutation(members, trial_randomness(), 1.0),
                          [2, -3])


def test_rand1_mutation_vectorized(population_of):
    """
    An array of F values gives one mutant per value
    """
    members = population_of([ (9, 9), (0, 0), (1, 0), (0, 1) ])
    mutants = rand1_mutation(members, trial_randomness(), np.array([0.5, 1.0]))
    assert np.allclose(mutants, [[0.5, -0.5], [1.0, -1.0]])


CROSSOVER_TEST_ARGS = "CR, j_r, mask, expected"

crossover_test_data = [
    # CR = 1 takes everything from the mutant
    ( 1.0, 0, (0.99, 0.5, 1.0), (10, 20, 30) ),

    # CR = 0 only takes the forced coordinate
    ( 0.0, 1, (0.01, 0.5, 0.3), (1, 20, 3) ),

    # the rule per coordinate
    ( 0.5, 1, (0.7, 0.9, 0.1), (1, 20, 30) ),

    # a uniform equal to CR takes the mutant
    ( 0.5, 0, (0.2, 0.5, 0.6), (10, 20, 3) ),
    ]

@pytest.mark.parametrize(CROSSOVER_TEST_ARGS, crossover_test_data)
def test_binomial_crossover(CR, j_r, mask, expected):
    """
    Test binomial crossover
    """
    parent = np.array([1.0, 2.0, 3.0])
    mutant = np.array([10.0, 20.0, 30.0])
    trial = binomial_crossover(parent, mutant, CR,
                               trial_randomness(j_r=j_r, mask=mask))
    assert np.array_equal(trial, expected)


def test_binomial_crossover_mask_length():
    """
    One uniform per coordinate is required
    """
    with pytest.raises(ContractViolation):
        binomial_crossover(np.zeros(3), np.ones(3), 0.5,
                           trial_randomness(mask=(0.1, 0.2)))


REPAIR_TEST_ARGS = "trial, parent, expected"

repair_test_data = [
    # inside the box nothing changes
    ( (1.0, -2.0), (0.0, 0.0), (1.0, -2.0) ),

    # above the upper bound
    ( (7.0, 0.0), (4.0, 0.0), (4.5, 0.0) ),

    # below the lower bound
    ( (0.0, -9.0), (0.0, -4.0), (0.0, -4.5) ),

    # on the bounds nothing changes
    ( (5.0, -5.0), (0.0, 0.0), (5.0, -5.0) ),
    ]

@pytest.mark.parametrize(REPAIR_TEST_ARGS, repair_test_data)
def test_repair_bounds(trial, parent, expected):
    """
    Coordinates outside the box move half way from the parent to the bound
    """
    lower = np.full(2, -5.0)
    upper = np.full(2, 5.0)
    repaired = repair_bounds(np.array(trial), np.array(parent), lower, upper)
    assert np.array_equal(repaired, expected)


@given(trial=st.lists(st.floats(-1e6, 1e6), min_size=3, max_size=3),
       parent=st.lists(st.floats(-5, 5), min_size=3, max_size=3))
def test_repair_bounds_inside(trial, parent):
    """
    Repaired trials are always inside the box
    """
    lower = np.full(3, -5.0)
    upper = np.full(3, 5.0)
    repaired = repair_bounds(np.array(trial), np.array(parent), lower, upper)
    assert np.all(repaired >= lower) and np.all(repaired <= upper)


SELECTION_TEST_ARGS = "trial_value, survivor_is_trial"

selection_test_data = [
    ( 3.0, True ),
    # ties favour the trial
    ( 5.0, True ),
    ( 7.0, False ),
    ]

@pytest.mark.parametrize(SELECTION_TEST_ARGS, selection_test_data)
def test_selection_step(trial_value, survivor_is_trial):
    """
    Test one-to-one selection against a parent with value 5
    """
    parent = Individual.with_value(np.zeros(2), 5.0)
    trial = Individual.with_value(np.ones(2), trial_value)
    survivor, success = selection_step(parent, trial)
    assert success == survivor_is_trial
    assert survivor is (trial if survivor_is_trial else parent)


def test_selection_step_unevaluated():
    """
    Unevaluated individuals cannot be selected
    """
    parent = Individual.with_value(np.zeros(2), 5.0)
    with pytest.raises(ContractViolation):
        selection_step(parent, Individual(np.ones(2)))


def test_population_advance(population_of):
    """
    Advancing replaces the members and counts the generation
    """
    members = population_of([ (0, 0), (1, 1), (2, 2), (3, 3) ])
    assert members.best().fx == 0.0
    survivors = list(reversed(members.members))
    members.advance(survivors)
    assert members.generation == 2
    assert members[0].fx == 18.0
    with pytest.raises(ContractViolation):
        members.advance(survivors[:3])


def test_initialize_population(streams):
    """
    The initial points are uniform in the box
    """
    lower = np.array([-5.0, 0.0])
    upper = np.array([5.0, 1.0])
    points = population.initialize_population(lower, upper, 30,
                                              streams().init_stream)
    assert len(points) == 30
    for point in points:
        assert np.all(point >= lower) and np.all(point < upper)


def test_make_trials_equal_params(population_of):
    """
    Equal parameter pairs give equal trials, since they share the draws
    """
    members = population_of([ (0, 0), (1, 2), (3, -1), (-2, 2) ])
    trials = population.make_trials(members, 0, trial_randomness(mask=(0.3, 0.8)),
                                    np.array([0.4, 0.9, 0.4]),
                                    np.array([0.5, 0.1, 0.5]),
                                    np.full(2, -5.0), np.full(2, 5.0))
    assert trials.shape == (3, 2)
    assert np.array_equal(trials[0], trials[2])
    assert not np.array_equal(trials[0], trials[1])
