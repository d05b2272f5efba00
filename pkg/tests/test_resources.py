"""
Test resources.py
"""

import pathlib

import pytest

from src import resources
from src.errors import ConfigurationError

COLOUR_TEST_ARGS = "colours, name, result"

colour_test_data = [
    # a colour matplotlib knows directly
    ( { "foo": "red" }, "foo", "red" ),

    # an rgb tuple
    ( { "foo": (0.1, 0.2, 0.3) }, "foo", (0.1, 0.2, 0.3) ),

    # an alias chain
    ( { "foo": "bar", "bar": "baz", "baz": "tab:blue" }, "foo", "tab:blue" ),

    # a name that is not in the settings is handed to matplotlib
    ( { }, "#102030", "#102030" ),
    ]

@pytest.mark.parametrize(COLOUR_TEST_ARGS, colour_test_data)
def test_get_colour(colours, name, result, mocker):
    """
    Test resources.get_colour
    """
    mocker.patch.object(resources.settings, "colours", colours)
    assert resources.get_colour(name) == result


def test_get_colour_cycle_detection(mocker):
    """
    Test that get_colour detects cycles
    """
    mocker.patch.object(resources.settings, "colours", { "foo": "foo" })
    with pytest.raises(ValueError, match="recursive"):
        resources.get_colour("foo")


def test_get_colour_indirect_cycle_detection(mocker):
    """
    Test that get_colour detects indirect cycles
    """
    mocker.patch.object(resources.settings, "colours", {
        "foo": "bar",
        "bar": "baz",
        "baz": "foo"
        })
    with pytest.raises(ValueError, match="recursive"):
        resources.get_colour("foo")


@pytest.mark.parametrize("colour", [ "no such colour", (2.0, 0.0, 0.0), 42 ])
def test_get_colour_invalid(colour, mocker):
    """
    Test that invalid colour specifications are rejected
    """
    mocker.patch.object(resources.settings, "colours", { "foo": colour })
    with pytest.raises(ValueError, match="invalid"):
        resources.get_colour("foo")


def test_get_value(scripted_generator):
    """
    Test resources.get_value
    """
    rng = scripted_generator(random=[0.25])
    assert resources.get_value(42, rng) == 42
    assert resources.get_value({"min": 10, "max": 20}, rng) == 12.5
    assert rng.exhausted()


def test_randomly_true(scripted_generator):
    """
    Test resources.randomly_true
    """
    rng = scripted_generator(random=[0.5, 0.5])
    assert not resources.randomly_true(0.3, rng)
    assert resources.randomly_true(0.7, rng)


def test_get_output_root_from_environment(monkeypatch, tmp_path):
    """
    The environment variable wins over the user data directory
    """
    monkeypatch.setenv(resources.settings.output_env_var, str(tmp_path))
    assert resources.get_output_root() == tmp_path


def test_get_output_root_default(mocker, monkeypatch, tmp_path):
    """
    Without environment variable the user data directory is used
    """
    def mock_user_data_dir(appname, appauthor, version):
        return tmp_path / appname / appauthor / version
    monkeypatch.delenv(resources.settings.output_env_var, raising=False)
    mocker.patch.object(resources.appdirs, "user_data_dir",
                        mock_user_data_dir)
    mocker.patch.object(resources.settings, "lab_info", {
        "name": "Name",
        "author": "Author",
        "version": "Version"
        })
    mocker.patch.object(resources.settings, "results_dir", "Results")

    result = resources.get_output_root()
    assert isinstance(result, pathlib.Path)
    assert result.as_posix() == tmp_path.as_posix() + "/Name/Author/Version/Results"


def test_ensure_directory(tmp_path):
    """
    Test that missing directories are created with their parents
    """
    target = tmp_path / "a" / "b"
    assert resources.ensure_directory(target) == target
    assert target.is_dir()


def test_ensure_directory_not_creatable(tmp_path):
    """
    A path below a regular file cannot become a directory
    """
    blocker = tmp_path / "file"
    blocker.write_text("x")
    with pytest.raises(ConfigurationError, match="cannot create"):
        resources.ensure_directory(blocker / "sub")


def test_check_settings():
    """
    The shipped settings pass the check
    """
    resources.check_settings()


def test_check_settings_missing_method(mocker):
    """
    A method token without meta-parameters is reported
    """
    mocker.patch.object(resources.settings, "method_tokens", [ "gao", "nope" ])
    with pytest.raises(ConfigurationError, match="nope"):
        resources.check_settings()


def test_check_settings_reserved_preset(mocker):
    """
    The oracle modes cannot be used as preset names
    """
    mocker.patch.object(resources.settings, "oracle_presets",
                        { "custom": { "f_min": 0.1 } })
    with pytest.raises(ConfigurationError, match="reserved"):
        resources.check_settings()


DICTIONARY_TEST_ARGS = "old, update, new"

dictionary_test_data = [
    # Updating an empty directory with an empty directory does nothing
    ( { }, { }, { } ),

    # Updating a non-empty directory with an emty directory does nothing
    ( { "foo": 1 }, { }, { "foo": 1 } ),

    # Replacement of one value
    ( { "foo": 1, "bar": 2 }, { "foo": 3 }, { "foo": 3, "bar": 2 } ),

    # Addition of a new value
    ( { "foo": 1 }, { "bar": 2 }, { "foo":1, "bar": 2 } ),

    # Removal of a value
    ( { "foo": 1, "bar": 2 }, { "foo": None }, { "bar": 2 } ),

    # Adding a value to a nested dict
    ( { "foo": { "bar": 3 } }, { "foo": { "baz": 5 } },
      { "foo": { "bar": 3, "baz": 5 } } ),

    # Updating in several levels at once
    ( { "foo": { "bar": { "baz": 1 } } },
      { "foo2": 2, "foo": { "bar2": 3, "bar": { "baz": 5 } } },
      { "foo": { "bar": { "baz": 5 }, "bar2": 3 }, "foo2": 2 } ),

    # Deleting a key whose value is a dict
    ( { "foo": { "bar": 3 } }, { "foo": None }, { } ),
    ]

@pytest.mark.parametrize(DICTIONARY_TEST_ARGS, dictionary_test_data)
def test_recursive_update(old, update, new):
    """
    Test the recursive update function
    """
    resources.recursive_update(old, update)
    assert old == new
