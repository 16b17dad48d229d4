/*
 * Copyright 2026 The windstat Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "windstat/correlators.hpp"
#include "windstat/distribution.hpp"
#include "windstat/errors.hpp"
#include "windstat/generators.hpp"
#include "windstat/kitaev.hpp"
#include "windstat/specfun.hpp"
#include "windstat/studies.hpp"

namespace py = pybind11;
using namespace windstat;

namespace {

StreamPlan plan_of(std::uint64_t seed, std::uint32_t streams) {
  StreamPlan plan;
  plan.seed = seed;
  plan.streams = streams;
  return plan;
}

McOptions options_of(const std::string& cls, std::uint64_t seed, std::uint32_t streams) {
  McOptions opts;
  opts.plan = plan_of(seed, streams);
  opts.cls = parse_class(cls);
  return opts;
}

py::dict estimate_dict(const CorrelatorEstimate& e) {
  py::dict d;
  d["points"] = e.points;
  d["mean"] = e.mean;
  d["stderr"] = e.stderr;
  d["median_of_means"] = e.median_of_means;
  d["trials"] = e.trials;
  d["skipped"] = e.skipped;
  d["warning"] = e.warning;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Winding number statistics of chiral random matrices";
  m.attr("__version__") = "0.1.0";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<PhaseTransitionError>(m, "PhaseTransitionError", PyExc_RuntimeError);
  py::register_exception<NearCoincidentError>(m, "NearCoincidentError", PyExc_RuntimeError);

  m.def("incomplete_beta", &specfun::incomplete_beta, py::arg("a"), py::arg("b"), py::arg("x"));
  m.def("u", &specfun::u_fn, py::arg("m"), py::arg("N"), py::arg("q2"));
  m.def("v", &specfun::v_fn, py::arg("m"), py::arg("N"), py::arg("q2"));

  m.def("spectrum",
        [](int N, const std::string& cls, std::uint64_t seed, std::uint32_t stream,
           std::uint32_t draw) {
          return draw_spectrum(N, parse_class(cls), DrawKey{seed, stream, draw, 0}).spectrum.z;
        },
        py::arg("N"), py::arg("cls") = "AIII", py::arg("seed") = 20220101, py::arg("stream") = 0,
        py::arg("draw") = 0, "Eigenvalues of K1^{-1} K2 for one reproducible draw.");

  m.def("winding_numbers",
        [](int N, std::uint64_t draws, const std::string& cls, std::uint64_t seed,
           std::uint32_t streams) {
          const WindingStudy st = winding_study(N, parse_class(cls), draws, plan_of(seed, streams));
          std::vector<int> w;
          for (const WindingDraw& d : st.draws) w.push_back(d.W);
          py::dict out;
          out["W"] = w;
          out["max_residual"] = st.max_residual;
          out["mismatches"] = st.mismatches;
          return out;
        },
        py::arg("N"), py::arg("draws"), py::arg("cls") = "AIII", py::arg("seed") = 20220101,
        py::arg("streams") = 16);

  m.def("winding_pmf",
        [](int N) {
          const WindingPMF pmf = winding_pmf(N);
          py::dict out;
          out["W"] = pmf.support;
          out["p"] = pmf.probs;
          out["mean"] = pmf.mean;
          out["variance"] = pmf.variance;
          return out;
        },
        py::arg("N"));
  m.def("r_direct", &r_direct, py::arg("m"), py::arg("N"));
  m.def("variance_ratio", [](int N) {
    const int ns[1] = {N};
    return gaussian_limit_report(ns).front().ratio;
  });

  m.def("C2", &analytic_C2, py::arg("N"), py::arg("p1"), py::arg("p2"));
  m.def("unfolded_C2", &unfolded_C2, py::arg("N"), py::arg("alpha"), py::arg("psi1"), py::arg("psi2"));
  m.def("f2_limit", &f2_limit, py::arg("alpha"), py::arg("psi1"), py::arg("psi2"));
  m.def("unfolding_sup_distance", &unfolding_sup_distance, py::arg("N"), py::arg("alpha"),
        py::arg("d_lo") = 0.5, py::arg("d_hi") = 5.0, py::arg("samples") = 901);

  m.def("mc_correlator",
        [](const std::vector<double>& points, int N, std::uint64_t trials, const std::string& cls,
           std::uint64_t seed, std::uint32_t streams, bool rotation_average) {
          McOptions opts = options_of(cls, seed, streams);
          if (rotation_average) opts.estimator = CorrelatorEstimator::RotationAverage;
          py::gil_scoped_release release;
          const CorrelatorEstimate e =
              mc_correlator(static_cast<int>(points.size()), points, N, trials, opts);
          py::gil_scoped_acquire acquire;
          return estimate_dict(e);
        },
        py::arg("points"), py::arg("N"), py::arg("trials"), py::arg("cls") = "AIII",
        py::arg("seed") = 20220101, py::arg("streams") = 16, py::arg("rotation_average") = false);

  m.def("generator",
        [](const std::vector<double>& q, const std::vector<double>& p, int N) {
          return analytic_Z_AIII_regularized(q, p, N);
        },
        py::arg("q"), py::arg("p"), py::arg("N"));
  m.def("mc_generator",
        [](const std::vector<double>& q, const std::vector<double>& p, int N, std::uint64_t trials,
           const std::string& cls, std::uint64_t seed, std::uint32_t streams) {
          const GeneratorValue g = mc_generator(q, p, N, trials, options_of(cls, seed, streams));
          return py::make_tuple(g.value, g.stderr);
        },
        py::arg("q"), py::arg("p"), py::arg("N"), py::arg("trials"), py::arg("cls") = "AIII",
        py::arg("seed") = 20220101, py::arg("streams") = 16);
  m.def("fd_correlator",
        [](const std::vector<double>& points, int N) { return fd_correlator_from_Z(points, N); },
        py::arg("points"), py::arg("N"));
  m.def("pfaffian", &pfaffian, py::arg("a"));

  m.def("kitaev_winding",
        [](double t, double mu, double delta) { return kitaev::kitaev_winding({t, mu, delta}); },
        py::arg("t"), py::arg("mu"), py::arg("delta"));
  m.def("kitaev_gap", [](double t, double mu, double delta) { return kitaev::gap({t, mu, delta}); },
        py::arg("t"), py::arg("mu"), py::arg("delta"));
}
