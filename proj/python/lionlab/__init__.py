# Copyright 2026 The LionLab Authors. All Rights Reserved.
#
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
# ==============================================================================
"""Lion optimizer family and benchmark harness.

Thin Python layer over the native ``_lionlab`` module. Structured results
come back as plain dicts; per-step series as numpy arrays.
"""

import json

from lionlab._lionlab import (
    LionlabError,
    Problem,
    sign,
    unbiased_sign,
    verify_suites,
)
from lionlab import _lionlab

__all__ = [
    "LionlabError",
    "Problem",
    "benchmark_problem",
    "constants",
    "fit_power_law",
    "run",
    "schedule_for",
    "sign",
    "unbiased_sign",
    "verify",
    "verify_suites",
]


def constants(problem):
    """Certified L, sigma, G, f_star and delta_f of a problem."""
    return json.loads(problem._constants())


def schedule_for(theorem, T, d, n=1, L=0.0, G=0.0):
    """Theorem schedule as a dict, including the validation report."""
    return json.loads(_lionlab._schedule_for(theorem, T, d, n, L, G))


def fit_power_law(T, y):
    """OLS of ln y on ln T."""
    return json.loads(_lionlab._fit_power_law(list(T), list(y)))


def run(config):
    """Runs a config (dict or JSON text) for every seed.

    Returns (summary, series): the summary dict matches the CLI's
    summary.json without CSV names; series holds one dict of column arrays
    per seed.
    """
    text = config if isinstance(config, str) else json.dumps(config)
    summary, series = _lionlab._run(text)
    return json.loads(summary), series


def verify(suite):
    """Runs a verification suite and returns its report."""
    return json.loads(_lionlab._verify(suite))


def benchmark_problem(n=1):
    """Problem block of the benchmark configuration."""
    return json.loads(_lionlab._benchmark_problem(n))
