# Copyright 2026 The hdim Authors
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Subgroups of iterated wreath products and their dimensions."""

from ._hdim import (
    CapacityError,
    ConfigError,
    HdimError,
    InconsistencyError,
    Permutation,
    SelectionInfeasible,
    Sequence,
    dimension_trace,
    goodness,
    group_order,
    is_invariant,
    layer_recursion,
    orbits,
    run_cli,
    trace_csv,
    verify,
)

__all__ = [
    "CapacityError",
    "ConfigError",
    "HdimError",
    "InconsistencyError",
    "Permutation",
    "SelectionInfeasible",
    "Sequence",
    "dimension_trace",
    "goodness",
    "group_order",
    "is_invariant",
    "layer_recursion",
    "orbits",
    "run_cli",
    "trace_csv",
    "verify",
]
__version__ = "0.1.0"


def dimensions(sequence, alpha, levels, **kwargs):
    """Returns [D_1, ..., D_levels] as floats."""
    return [row["d"] for row in dimension_trace(sequence, alpha, levels, **kwargs)]
