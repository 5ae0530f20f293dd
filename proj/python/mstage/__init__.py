# Copyright 2026 The mstage Authors.
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


"""Python access to the mstage solvers.

Instances are plain dicts in the JSON instance format; reports come back
as dicts with the same keys as `mstage solve`.
"""

import json

from . import _mstage
from ._mstage import SchemaError, SolverError, ValidationError, candidate_alphas, two_threshold_round

__all__ = [
    "SchemaError",
    "SolverError",
    "ValidationError",
    "candidate_alphas",
    "generate",
    "oracle",
    "solve",
    "two_threshold_round",
]


def _text(instance):
    return instance if isinstance(instance, str) else json.dumps(instance)


def solve(instance, mode="fixed", matching="exact", with_oracle=False):
    return json.loads(_mstage.solve(_text(instance), mode, matching, with_oracle))


def oracle(instance):
    return json.loads(_mstage.oracle(_text(instance)))


def generate(problem, n, T, seed, volatility=0.3):
    return json.loads(_mstage.generate(problem, n, T, seed, volatility))
