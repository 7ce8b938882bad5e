# Copyright 2026 The qduel Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Dueling search simulator: dense and cluster engines, searches, baselines."""

import json

from ._qduel import (
    Error,
    ProblemInstance,
    __version__,
    clusters,
    complexity_instance,
    grover_success,
    heuristic_search,
    loglog_fit,
    m_sweep,
    preferred_rotations,
    replay,
    run_gas,
    run_length_decode,
    run_length_encode,
    run_rounds,
    table1,
    uniform_solution_count,
)
from ._qduel import problem_from_json as _problem_from_json


def build_problem(n, distribution, v="identity"):
    """Builds an instance from a problem-file style distribution mapping.

    Example: build_problem(8, {"type": "range", "lo": 241, "hi": 256}).
    """
    return _problem_from_json(json.dumps({"n": n, "v": v, "distribution": distribution}))


def load_problem(path):
    """Reads a JSON problem file and returns its instance."""
    with open(path, encoding="utf-8") as fh:
        return _problem_from_json(fh.read())


__all__ = [
    "Error",
    "ProblemInstance",
    "__version__",
    "build_problem",
    "clusters",
    "complexity_instance",
    "grover_success",
    "heuristic_search",
    "load_problem",
    "loglog_fit",
    "m_sweep",
    "preferred_rotations",
    "replay",
    "run_gas",
    "run_length_decode",
    "run_length_encode",
    "run_rounds",
    "table1",
    "uniform_solution_count",
]
