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
This module provides access to various resources: output locations,
plot colours, and helpers to work with the nested settings
dictionaries.
"""

import os
import logging
import pathlib
from typing import Union, Dict, Any, Tuple

import appdirs
import matplotlib.colors

from . import settings
from .errors import ConfigurationError

logger = logging.getLogger(__name__)


def get_colour(name: str) -> Union[str, Tuple[float, ...]]:
    """
    Get the matplotlib colour specification of a named colour.

    The name is looked up in the settings. If the settings give a
    string as colour, that string is again looked up. Anything that is
    not a key of settings.colours is returned as is and must be
    something matplotlib understands (a colour name, a hex string or
    an rgb tuple with entries in [0, 1]).
    """
    previous_names = { name }

    while name in settings.colours:
        colour = settings.colours[name]

        if isinstance(colour, str):
            # prevent endless loop
            if colour in previous_names:
                raise ValueError("recursive colour specification")
            previous_names.add(colour)
            name = colour

        elif isinstance(colour, tuple):
            if not matplotlib.colors.is_color_like(colour):
                raise ValueError("invalid colour specification")
            return colour

        else:
            raise ValueError("invalid colour specification")

    if not matplotlib.colors.is_color_like(name):
        raise ValueError("invalid colour specification")
    return name


def get_value(value_or_range: Union[float, Dict[str, float]], rng) -> float:
    """
    Get a specific or random value from a given specification.

    The specification can either be the value itself, or an interval
    given through a dictionary with the entries \"min\" and \"max\"
    specifying respectively the minimal and maximal value of the
    interval to uniformly choose from. The random number is taken from
    rng, so that the caller decides which stream pays for it.
    """
    if isinstance(value_or_range, dict):
        low = value_or_range["min"]
        return low + (value_or_range["max"] - low) * rng.random()
    return value_or_range


def randomly_true(probability: float, rng) -> bool:
    """
    Return True with a given probability, False otherwise.
    """
    return rng.random() < probability


def get_output_root() -> pathlib.Path:
    """
    Get the directory below which experiment results are written.

    The environment variable named in settings.output_env_var wins;
    otherwise a directory inside the user data directory is used.
    """
    from_env = os.environ.get(settings.output_env_var)
    if from_env:
        return pathlib.Path(from_env)

    user_data_dir = pathlib.Path(appdirs.user_data_dir(
        appname = settings.lab_info["name"],
        appauthor = settings.lab_info["author"],
        version = settings.lab_info["version"]
        ))

    return user_data_dir/settings.results_dir


def ensure_directory(path: pathlib.Path) -> pathlib.Path:
    """
    Create a directory (with parents) and check that it is writable.
    """
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as error:
        raise ConfigurationError(
            f"cannot create output directory {path}: {error}") from error
    if not os.access(path, os.W_OK):
        raise ConfigurationError(f"output directory {path} is not writable")
    return path


def check_settings() -> None:
    """
    This function checks the settings that are only used late in an
    experiment, so that errors show up right away rather than after
    hours of computation.
    """
    # try to resolve all colours
    for colour in settings.colours:
        get_colour(colour)

    for token in settings.method_tokens:
        if token != "gao" and token not in settings.methods:
            raise ConfigurationError(f"no meta-parameters for method {token}")

    for preset in settings.oracle_presets:
        if preset in settings.oracle_modes:
            raise ConfigurationError(f"{preset!r} is reserved")

    logger.debug("settings checked")


def recursive_update(dictionary: dict, updates: dict):
    """
    Recursively update a dictionary.
    """
    for key, value in updates.items():
        if key in dictionary:
            oldvalue = dictionary[key]
            if value is None:
                del dictionary[key]
            elif isinstance(value, dict) and isinstance(oldvalue, dict):
                recursive_update(oldvalue, value)
            else:
                dictionary[key] = value
        else:
            dictionary[key] = value
