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

import math

import numpy as np
import pytest

import lionlab


def minimal_config(**run):
    return {
        "problem": {"kind": "logreg", "d": 4, "n": 1, "samples_per_node": 16,
                    "heterogeneity": 0.0, "nonconvex_reg": 0.1, "seed": 3},
        "algorithm": {"variant": "lion-v1"},
        "schedule": {"theorem_id": "T1"},
        "run": {"T": 100, "seeds": [1, 2], **run},
    }


def test_sign():
    np.testing.assert_array_equal(lionlab.sign([2.0, -3.0, 0.0]), [1, -1, 0])


def test_unbiased_sign_boundary_and_determinism():
    out = lionlab.unbiased_sign([1.5, -1.5], 1.5, seed=4)
    np.testing.assert_array_equal(out, [1, -1])
    a = lionlab.unbiased_sign([0.1] * 32, 1.0, seed=9)
    b = lionlab.unbiased_sign([0.1] * 32, 1.0, seed=9)
    np.testing.assert_array_equal(a, b)


def test_unbiased_sign_range_error():
    with pytest.raises(lionlab.LionlabError) as info:
        lionlab.unbiased_sign([2.0], 1.0, seed=1)
    assert info.value.category == "range-violation"


def test_problem_and_constants():
    p = lionlab.Problem(d=5, n=2, samples_per_node=32, seed=7)
    assert (p.dim, p.nodes, p.samples_per_node) == (5, 2, 32)
    c = lionlab.constants(p)
    assert c["G"] == pytest.approx(1.2)
    assert c["f_star"] == 0.0
    assert c["delta_f"] == pytest.approx(p.value(np.zeros(5)))
    assert p.full_grad(np.zeros(5)).shape == (5,)


def test_schedule_t1():
    s = lionlab.schedule_for("T1", 10_000, 100)
    assert s["beta2"] == pytest.approx(0.01)
    assert s["beta1"] == pytest.approx(0.1)
    assert s["eta"] == pytest.approx(1e-4)
    assert s["lambda"] == pytest.approx(0.5)
    assert all(r["satisfied"] for r in s["validation"])


def test_schedule_side_condition():
    with pytest.raises(lionlab.LionlabError) as info:
        lionlab.schedule_for("T4", 1000, 10, n=100)
    assert info.value.category == "config"
    assert "T ≥ n²" in str(info.value)


def test_fit_power_law_exact():
    T = [10.0 ** e for e in (2, 2.5, 3, 3.5, 4)]
    fit = lionlab.fit_power_law(T, [3 * t ** -0.25 for t in T])
    assert abs(fit["slope"] + 0.25) < 1e-12


def test_run_returns_summary_and_series():
    summary, series = lionlab.run(minimal_config())
    assert len(series) == 2
    assert summary["schedule"]["theorem_id"] == "T1"
    for run, cols in zip(summary["runs"], series):
        assert len(cols["t"]) == 100
        assert run["avg_grad_l1"] == pytest.approx(cols["grad_l1"].mean(), rel=1e-12)
        eta = summary["schedule"]["eta"]
        assert np.all(cols["x_inf"] <= eta * cols["t"])
        assert np.all(cols["step_sq"] <= 4 * eta**2 * 4)


def test_run_is_deterministic():
    _, a = lionlab.run(minimal_config(seeds=[5]))
    _, b = lionlab.run(minimal_config(seeds=[5]))
    np.testing.assert_array_equal(a[0]["grad_l1"], b[0]["grad_l1"])


def test_run_config_error_names_field():
    cfg = minimal_config()
    cfg["algorithm"] = {"variant": "ce-v1", "q2": "sign"}
    cfg["problem"]["n"] = 2
    with pytest.raises(lionlab.LionlabError) as info:
        lionlab.run(cfg)
    assert info.value.category == "config"
    assert "algorithm.q1" in str(info.value)


def test_divergence_carries_step():
    cfg = minimal_config(T=5, seeds=[1])
    cfg["schedule"] = {"eta": 1e308, "lambda": 0.0, "beta1": 0.25,
                       "beta2": 0.25, "B0": 1}
    with pytest.raises(lionlab.LionlabError) as info:
        lionlab.run(cfg)
    assert info.value.category == "divergence"
    assert info.value.step >= 1


def test_verify_bits():
    assert "bits" in lionlab.verify_suites()
    report = lionlab.verify("bits")
    assert report["passed"]


def test_benchmark_problem():
    b = lionlab.benchmark_problem()
    assert (b["d"], b["n"], b["samples_per_node"]) == (20, 1, 256)
    assert math.isclose(b["nonconvex_reg"], 0.1)
