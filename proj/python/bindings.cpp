// Copyright 2026 The LionLab Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// =============================================================================

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "json.hpp"
#include "lionlab/config.hpp"
#include "lionlab/errors.hpp"
#include "lionlab/harness.hpp"
#include "lionlab/problems.hpp"
#include "lionlab/schedules.hpp"
#include "lionlab/vector.hpp"
#include "lionlab/verify.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace lionlab {
namespace {

// JSON crosses the boundary as text; the Python package decodes it.
std::string dump(const json& j) { return j.dump(); }

py::array_t<double> to_array(const Vector& v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.dim()));
  auto w = out.mutable_unchecked<1>();
  for (std::size_t k = 0; k < v.dim(); ++k) w(static_cast<py::ssize_t>(k)) = v[k];
  return out;
}

Vector from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 1) throw Error(ErrorCategory::kShape, "expected a 1-d array");
  return Vector(std::vector<double>(a.data(), a.data() + a.size()));
}

ProblemConfig problem_config(int d, int n, int samples_per_node,
                             double heterogeneity, double nonconvex_reg,
                             std::uint64_t seed) {
  return {d, n, samples_per_node, heterogeneity, nonconvex_reg, seed};
}

py::dict series_columns(const RunRecord& r) {
  const auto T = static_cast<py::ssize_t>(r.series.size());
  py::array_t<std::int64_t> t(T);
  py::array_t<double> grad_l1(T), grad_l2_sq(T), est_err_v(T), est_err_m(T),
      x_inf(T), step_sq(T);
  py::array_t<std::uint64_t> bits_up(T), bits_down(T);
  for (py::ssize_t i = 0; i < T; ++i) {
    const RunRow& row = r.series[static_cast<std::size_t>(i)];
    t.mutable_at(i) = row.t;
    grad_l1.mutable_at(i) = row.grad_l1;
    grad_l2_sq.mutable_at(i) = row.grad_l2_sq;
    est_err_v.mutable_at(i) = row.est_err_v;
    est_err_m.mutable_at(i) = row.est_err_m;
    x_inf.mutable_at(i) = row.x_inf;
    step_sq.mutable_at(i) = row.step_sq;
    bits_up.mutable_at(i) = row.bits_up;
    bits_down.mutable_at(i) = row.bits_down;
  }
  py::dict d;
  d["t"] = t;
  d["grad_l1"] = grad_l1;
  d["grad_l2_sq"] = grad_l2_sq;
  d["est_err_v"] = est_err_v;
  d["est_err_m"] = est_err_m;
  d["x_inf"] = x_inf;
  d["step_sq"] = step_sq;
  d["bits_up"] = bits_up;
  d["bits_down"] = bits_down;
  return d;
}

// Runs every seed of a run config. Returns (summary JSON text, [series]).
py::tuple run_config(const std::string& config_text) {
  const RunConfig config = parse_run_config(json::parse(config_text));
  std::vector<RunRecord> records(config.seeds.size());
  json summary;
  {
    py::gil_scoped_release release;
    const Problem problem = make_logreg_problem(config.problem);
    const Schedule schedule = resolve_schedule(config, problem);
    const ExperimentSpec spec = experiment_spec(config);
    parallel_for(records.size(), [&](std::size_t i) {
      records[i] = run_once(problem, spec, schedule, config.T, config.seeds[i]);
    });
    json runs = json::array();
    for (const auto& r : records) {
      runs.push_back({{"seed", r.config.run_seed},
                      {"avg_grad_l1", r.summary.avg_grad_l1},
                      {"min_grad_l1", r.summary.min_grad_l1},
                      {"wallclock_seconds", r.summary.wallclock_seconds},
                      {"ledger", to_json(r.ledger)}});
    }
    summary = {{"config", to_json(config)},
               {"schedule", to_json(schedule)},
               {"constants", to_json(problem.constants())},
               {"runs", runs}};
  }
  py::list series;
  for (const auto& r : records) series.append(series_columns(r));
  return py::make_tuple(dump(summary), series);
}

}  // namespace
}  // namespace lionlab

PYBIND11_MODULE(_lionlab, m) {
  using namespace lionlab;
  m.doc() = "Lion optimizer family and benchmark harness (native core)";

  // Raised for every library error; carries .category (and .step for
  // divergence).
  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_storage;
  error_storage.call_once_and_store_result([&] {
    return py::exception<Error>(m, "LionlabError", PyExc_RuntimeError);
  });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const py::object& error_type = error_storage.get_stored();
      py::object inst = error_type(e.what());
      inst.attr("category") = std::string(to_string(e.category()));
      if (const auto* div = dynamic_cast<const DivergenceError*>(&e)) {
        inst.attr("step") = div->step();
      }
      PyErr_SetObject(error_type.ptr(), inst.ptr());
    }
  });

  m.def("sign", [](const py::array_t<double, py::array::c_style | py::array::forcecast>& v) {
    return to_array(sign(from_array(v)).to_vector());
  }, py::arg("v"));

  m.def("unbiased_sign",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& v,
           double radius, std::uint64_t seed) {
          RandomStream rng(seed);
          return to_array(unbiased_sign(from_array(v), radius, rng).to_vector());
        },
        py::arg("v"), py::arg("radius"), py::arg("seed"));

  py::class_<Problem>(m, "Problem")
      .def(py::init([](int d, int n, int samples_per_node, double heterogeneity,
                       double nonconvex_reg, std::uint64_t seed) {
             return make_logreg_problem(problem_config(
                 d, n, samples_per_node, heterogeneity, nonconvex_reg, seed));
           }),
           py::arg("d") = 20, py::arg("n") = 1, py::arg("samples_per_node") = 256,
           py::arg("heterogeneity") = 0.0, py::arg("nonconvex_reg") = 0.1,
           py::arg("seed") = 1)
      .def_property_readonly("dim", &Problem::dim)
      .def_property_readonly("nodes", &Problem::nodes)
      .def_property_readonly("samples_per_node", &Problem::samples_per_node)
      .def("_constants", [](const Problem& p) { return dump(to_json(p.constants())); })
      .def("value", [](const Problem& p,
                       const py::array_t<double, py::array::c_style | py::array::forcecast>& x) {
        return p.value(from_array(x));
      }, py::arg("x"))
      .def("full_grad", [](const Problem& p,
                           const py::array_t<double, py::array::c_style | py::array::forcecast>& x) {
        return to_array(p.full_grad(from_array(x)));
      }, py::arg("x"));

  m.def("_schedule_for",
        [](const std::string& theorem, std::int64_t T, int d, int n, double L,
           double G) {
          const auto id = parse_theorem(theorem);
          if (!id) {
            throw Error(ErrorCategory::kConfiguration,
                        "unknown theorem '" + theorem + "'");
          }
          return dump(to_json(schedule_for(*id, {T, d, n, L, G})));
        },
        py::arg("theorem"), py::arg("T"), py::arg("d"), py::arg("n") = 1,
        py::arg("L") = 0.0, py::arg("G") = 0.0);

  m.def("_fit_power_law",
        [](const std::vector<double>& T, const std::vector<double>& y) {
          if (T.size() != y.size()) {
            throw Error(ErrorCategory::kShape, "T and y differ in length");
          }
          std::vector<std::pair<double, double>> samples;
          for (std::size_t i = 0; i < T.size(); ++i) samples.emplace_back(T[i], y[i]);
          return dump(to_json(fit_power_law(samples)));
        },
        py::arg("T"), py::arg("y"));

  m.def("_run", &run_config, py::arg("config_json"));

  m.def("_verify", [](const std::string& suite) {
    SuiteReport report;
    {
      py::gil_scoped_release release;
      report = run_verify_suite(suite);
    }
    return dump(to_json(report));
  }, py::arg("suite"));

  m.def("verify_suites", &verify_suite_names);

  m.def("_benchmark_problem", [](int n) { return dump(to_json(benchmark_problem(n))); },
        py::arg("n") = 1);
}
