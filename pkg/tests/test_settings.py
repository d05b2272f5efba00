"""
Test the validity of entries in settings
"""

import re
from numbers import Number

import pytest

import matplotlib.colors

from src import settings
from src.adaptation import method_classes


def test_lab_info():
    """
    Test the lab_info dictionary
    """
    assert isinstance(settings.lab_info, dict)

    for key in ("name", "title", "version", "author"):
        assert key in settings.lab_info
        assert isinstance(settings.lab_info[key], str)

    version_number_regex = re.compile(r"^[0-9]+(\.[0-9]+)*$")
    assert version_number_regex.match(settings.lab_info["version"]) is not None


def test_protocol():
    """
    Test the experimental protocol defaults
    """
    protocol = settings.protocol
    assert isinstance(protocol["runs"], int) and protocol["runs"] > 0
    assert isinstance(protocol["budget_per_dimension"], int)
    assert protocol["budget_per_dimension"] > 0
    assert isinstance(protocol["threshold"], Number) and protocol["threshold"] > 0
    assert isinstance(protocol["seed"], int) and protocol["seed"] >= 0
    assert protocol["generator"] in settings.generators
    assert protocol["success_criterion"] in settings.success_criteria
    assert isinstance(protocol["workers"], int) and protocol["workers"] >= 0


def test_published_protocol_values():
    """
    The protocol defaults are those of the published comparison
    """
    assert settings.protocol["runs"] == 51
    assert settings.protocol["threshold"] == 1e-8
    assert settings.protocol["budget_per_dimension"] == 10**5
    assert settings.oracle["lambda"] == 200
    assert settings.sweep["dimensions"] == [ 2, 3, 5, 10, 20 ]


def test_small_population():
    """
    Test that the small dimension population sizes allow rand/1
    """
    for dimension, size in settings.small_population.items():
        assert isinstance(dimension, int) and dimension >= 2
        assert isinstance(size, int) and size >= 4


@pytest.mark.parametrize("token", [ token for token in settings.method_tokens
                                    if token != "gao" ])
def test_method_meta_available(token):
    """
    Every adaptation method has its meta-parameters and its class
    """
    assert token in settings.methods
    assert token in method_classes


def test_epsde_pools():
    """
    Test the EPSDE pools
    """
    meta = settings.methods["epsde"]
    assert all(0.0 < value <= 1.0 for value in meta["f_pool"])
    assert all(0.0 <= value <= 1.0 for value in meta["cr_pool"])
    assert meta["memory_factor"] > 0


def test_range_meta_parameters():
    """
    Test that range valued meta-parameters are proper ranges
    """
    for name in ("w_f", "w_cr"):
        value = settings.methods["mde"][name]
        assert set(value) == { "min", "max" }
        assert 0.0 <= value["min"] <= value["max"] <= 1.0


def test_oracle_presets():
    """
    Test the oracle presets
    """
    for mode in settings.oracle_modes:
        assert mode not in settings.oracle_presets
    assert settings.oracle_presets["gaode00"]["f_min"] == 0.0
    assert settings.oracle_presets["gaode04"]["f_min"] == 0.4
    assert settings.oracle["preset"] == "composite"


@pytest.mark.parametrize("name", list(settings.benchmarks))
def test_benchmark_boxes(name):
    """
    Test that the optimum of every function is inside its box
    """
    box = settings.benchmarks[name]
    assert box["lower"] < box["upper"]
    assert box["lower"] <= box["optimum"] <= box["upper"]


def test_sweep_entries_are_known():
    """
    Test that the default sweep and ECDF experiment only name known
    methods and functions
    """
    for section in (settings.sweep, settings.ecdf):
        assert set(section["methods"]) <= set(settings.method_tokens)
        assert set(section["functions"]) <= set(settings.benchmarks)


def test_colours_is_dict():
    """
    Test that colours is a dict
    """
    assert isinstance(settings.colours, dict)


def test_colour_values():
    """
    Test that colour values ultimately lead to valid matplotlib colours
    """
    for value in settings.colours.values():
        if isinstance(value, str):
            # detect infinite loops
            seen_values = { value }

            while value in settings.colours:
                value = settings.colours[value]
                assert value not in seen_values
                seen_values.add(value)

        assert matplotlib.colors.is_color_like(value)


@pytest.mark.parametrize("token", settings.method_tokens)
def test_colour_available(token):
    """
    Test for availability of the colour of every method
    """
    assert token in settings.colours


def test_file_names():
    """
    Test that the file name templates only use known fields
    """
    for template in settings.files.values():
        template.format(method="m", function="f")
