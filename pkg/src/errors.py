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
Exceptions used throughout gaolab
"""


class ConfigurationError(ValueError):
    """
    An experiment or run was configured with values it cannot work with
    (unknown tokens, too small populations, invalid ranges, unusable
    output directories).
    """


class ContractViolation(AssertionError):
    """
    A function was called in a way its contract forbids, for example
    selecting between individuals that were never evaluated.
    """
