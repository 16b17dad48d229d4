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

// windstat command line: runs one study per subcommand and writes CSV tables
// plus a JSON sidecar into --out-dir.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage error,
// 3 numerical failure.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "windstat/correlators.hpp"
#include "windstat/distribution.hpp"
#include "windstat/errors.hpp"
#include "windstat/generators.hpp"
#include "windstat/io.hpp"
#include "windstat/kitaev.hpp"
#include "windstat/studies.hpp"

using namespace windstat;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flag values as given on the command line; unset ones fall back to the
// per-command defaults in resolve().
struct Flags {
  std::vector<int> n;
  std::string cls = "AIII";
  std::optional<std::uint64_t> trials;
  std::uint64_t seed = 20220101;
  std::uint32_t streams = 16;
  std::optional<double> alpha;
  std::vector<double> points;
  std::optional<int> grid;
  std::string out_dir = ".";
  std::string config;
};

const std::set<std::string> kKeys = {"n",      "class",  "trials", "seed",    "streams",
                                     "alpha",  "points", "grid",   "out_dir", "estimator",
                                     "t",      "mu",     "delta",  "mu_scan", "gaussian_n"};

json resolve(const std::string& command, const Flags& f) {
  json cfg;
  cfg["command"] = command;
  cfg["class"] = f.cls;
  cfg["seed"] = f.seed;
  cfg["streams"] = f.streams;
  cfg["out_dir"] = f.out_dir;
  if (!f.n.empty()) cfg["n"] = f.n;
  if (f.trials) cfg["trials"] = *f.trials;
  if (f.alpha) cfg["alpha"] = *f.alpha;
  if (!f.points.empty()) cfg["points"] = f.points;
  if (f.grid) cfg["grid"] = *f.grid;

  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw UsageError("cannot read config file " + f.config);
    json file;
    try {
      file = json::parse(in);
    } catch (const json::parse_error& e) {
      throw UsageError(std::string("config file: ") + e.what());
    }
    if (!file.is_object()) throw UsageError("config file must hold a JSON object");
    for (const auto& [key, value] : file.items()) {
      if (key == "command") continue;
      if (!kKeys.count(key)) throw UsageError("unknown config key '" + key + "'");
      cfg[key] = value;
    }
  }

  // Per-command defaults.
  auto fill = [&](const char* key, json value) {
    if (!cfg.contains(key)) cfg[key] = std::move(value);
  };
  if (command == "winding") {
    fill("n", {4});
    fill("trials", 1000);
    fill("grid", 4096);
  } else if (command == "dist") {
    fill("n", {6});
    fill("trials", 100000);
    fill("gaussian_n", {10, 50, 100, 400});
  } else if (command == "corr") {
    fill("n", {4});
    fill("trials", 100000);
    fill("estimator", "plain");
  } else if (command == "unfold") {
    fill("alpha", 0.5);
    const bool half = std::abs(cfg["alpha"].get<double>() - 0.5) < 1e-12;
    fill("n", half ? json{2, 5, 7, 10, 15, 20, 50, 100} : json{5, 10, 20, 50, 100, 150, 200, 300, 1000});
    fill("grid", 901);
  } else if (command == "gen") {
    fill("n", {4});
    fill("trials", 100000);
  } else if (command == "kitaev") {
    fill("t", {0.25, 0.5, 1.0});
    fill("mu", 1.0);
    fill("delta", 1.0);
    fill("grid", 1024);
  }
  return cfg;
}

// The hashed config leaves out where the files go.
json hashed(const json& cfg) {
  json h = cfg;
  h.erase("out_dir");
  return h;
}

template <class T>
T get(const json& cfg, const char* key) {
  try {
    return cfg.at(key).get<T>();
  } catch (const json::exception& e) {
    throw UsageError(std::string("config value '") + key + "': " + e.what());
  }
}

McOptions mc_options(const json& cfg) {
  McOptions opts;
  opts.plan.seed = get<std::uint64_t>(cfg, "seed");
  opts.plan.streams = get<std::uint32_t>(cfg, "streams");
  if (opts.plan.streams == 0) throw UsageError("--streams must be positive");
  opts.cls = parse_class(get<std::string>(cfg, "class"));
  return opts;
}

struct Run {
  json cfg;
  fs::path dir;
  json verdicts = json::object();
  json summary = json::object();

  fs::path file(const std::string& name) const { return dir / name; }

  void check(const std::string& name, bool pass, json detail = nullptr) {
    verdicts[name] = {{"pass", pass}};
    if (!detail.is_null()) verdicts[name]["detail"] = std::move(detail);
  }

  int finish(const std::string& command) {
    if (parse_class(cfg.at("class").get<std::string>()) == SymmetryClass::CII &&
        (command == "winding" || command == "corr" || command == "gen")) {
      summary["time_reversal"] = satisfies_time_reversal(LoopFunctions::trig_loop());
    }
    bool all = true;
    for (const auto& [name, v] : verdicts.items()) all = all && v.at("pass").get<bool>();
    json doc = {{"command", command},
                {"config", hashed(cfg)},
                {"config_hash", io::config_hash(hashed(cfg))},
                {"build", std::string(io::git_describe())},
                {"summary", summary},
                {"verdicts", verdicts},
                {"pass", all}};
    io::write_json(file(command + ".json"), doc);
    for (const auto& [name, v] : verdicts.items()) {
      std::printf("%-32s %s\n", name.c_str(), v.at("pass").get<bool>() ? "PASS" : "FAIL");
    }
    return all ? 0 : 1;
  }
};

int cmd_winding(Run& run) {
  const json& cfg = run.cfg;
  const McOptions opts = mc_options(cfg);
  ContourOptions contour;
  contour.grid_size = get<int>(cfg, "grid");
  if (contour.grid_size < 8) throw UsageError("--grid must be at least 8");
  const auto trials = get<std::uint64_t>(cfg, "trials");
  io::CsvWriter csv(run.file("winding.csv"), "winding", hashed(cfg),
                    {"N", "stream", "draw", "W_contour", "W_count", "m", "grid", "residual",
                     "quantized", "resamples"});
  std::uint64_t mismatches = 0, unquantized = 0;
  double worst = 0.0;
  for (int N : get<std::vector<int>>(cfg, "n")) {
    if (N < 1) throw UsageError("--n must be positive");
    const WindingStudy st = winding_study(N, opts.cls, trials, opts.plan, opts.loop, contour);
    for (const WindingDraw& d : st.draws) {
      csv.cell(N).cell(static_cast<long long>(d.stream)).cell(static_cast<long long>(d.index));
      csv.cell(d.W).cell(d.W_count).cell(d.m).cell(d.grid).cell(d.residual);
      csv.cell(d.quantized ? 1 : 0).cell(d.resamples);
      csv.end_row();
    }
    double mean = 0.0;
    for (const WindingDraw& d : st.draws) mean += d.W;
    mean /= std::max<std::size_t>(st.draws.size(), 1);
    run.summary["N=" + std::to_string(N)] = {{"draws", st.draws.size()},
                                             {"max_residual", st.max_residual},
                                             {"mismatches", st.mismatches},
                                             {"non_quantized", st.non_quantized},
                                             {"mean_W", mean}};
    mismatches += st.mismatches;
    unquantized += st.non_quantized;
    worst = std::max(worst, st.max_residual);
  }
  run.check("route_equivalence", mismatches == 0, {{"mismatches", mismatches}});
  run.check("quantization", unquantized == 0 && worst < contour.tolerance,
            {{"max_residual", worst}, {"non_quantized", unquantized}});
  return 0;
}

int cmd_dist(Run& run) {
  const json& cfg = run.cfg;
  const McOptions opts = mc_options(cfg);
  if (opts.cls != SymmetryClass::AIII) throw UsageError("dist supports class AIII");
  const auto trials = get<std::uint64_t>(cfg, "trials");
  io::CsvWriter pmf_csv(run.file("dist_pmf.csv"), "dist pmf", hashed(cfg),
                        {"N", "W", "p_exact", "freq_mc", "freq_stderr"});
  bool tv_ok = true;
  json tv_detail = json::object();
  for (int N : get<std::vector<int>>(cfg, "n")) {
    if (N < 1) throw UsageError("--n must be positive");
    const WindingPMF pmf = winding_pmf(N);
    std::optional<WindingHistogram> hist;
    if (trials > 0) hist = mc_winding_histogram(N, trials, opts.plan);
    for (int W : pmf.support) {
      pmf_csv.cell(N).cell(W).cell(pmf.prob(W));
      if (hist) {
        pmf_csv.cell(hist->frequency(W)).cell(hist->frequency_stderr(W));
      } else {
        pmf_csv.cell("").cell("");
      }
      pmf_csv.end_row();
    }
    json s = {{"variance", pmf.variance}};
    if (hist) {
      const double tv = total_variation(pmf, *hist);
      s["total_variation"] = tv;
      tv_detail["N=" + std::to_string(N)] = tv;
      if (trials >= 100000) tv_ok = tv_ok && tv < 0.01;
    }
    run.summary["N=" + std::to_string(N)] = s;
  }
  if (trials >= 100000) run.check("mc_total_variation_below_0.01", tv_ok, tv_detail);

  const auto gn = get<std::vector<int>>(cfg, "gaussian_n");
  if (!gn.empty()) {
    io::CsvWriter g_csv(run.file("dist_gaussian.csv"), "dist gaussian limit", hashed(cfg),
                        {"N", "variance", "predicted", "ratio", "sup_distance"});
    const auto rows = gaussian_limit_report(gn);
    bool monotone = true;
    double prev = INFINITY;
    for (const auto& r : rows) {
      g_csv.cell(r.N).cell(r.variance).cell(r.predicted).cell(r.ratio).cell(r.sup_distance);
      g_csv.end_row();
      monotone = monotone && std::abs(r.ratio - 1.0) < prev;
      prev = std::abs(r.ratio - 1.0);
    }
    run.check("variance_ratio_monotone", monotone);
    run.check("variance_ratio_within_10pct", std::abs(rows.back().ratio - 1.0) < 0.1,
              {{"N", rows.back().N}, {"ratio", rows.back().ratio}});
  }
  return 0;
}

std::vector<std::vector<double>> default_pairs() {
  std::vector<std::vector<double>> sets;
  const double lo = 0.2, hi = std::numbers::pi - 0.2;
  for (int j = 0; j < 8; ++j) {
    const double d = lo + (hi - lo) * (j + 0.5) / 8.0;
    sets.push_back({std::numbers::pi / 2 - d / 2, std::numbers::pi / 2 + d / 2});
  }
  return sets;
}

int cmd_corr(Run& run) {
  const json& cfg = run.cfg;
  McOptions opts = mc_options(cfg);
  const auto est = get<std::string>(cfg, "estimator");
  if (est == "rotation") {
    opts.estimator = CorrelatorEstimator::RotationAverage;
  } else if (est != "plain") {
    throw UsageError("estimator must be 'plain' or 'rotation'");
  }
  std::vector<std::vector<double>> sets;
  if (cfg.contains("points")) {
    sets.push_back(get<std::vector<double>>(cfg, "points"));
  } else {
    sets = default_pairs();
  }
  std::size_t kmax = 0;
  for (const auto& s : sets) kmax = std::max(kmax, s.size());
  std::vector<std::string> cols = {"N", "k"};
  for (std::size_t i = 1; i <= kmax; ++i) cols.push_back("p" + std::to_string(i));
  for (const char* c : {"mean_re", "mean_im", "stderr", "mom_re", "mom_im", "analytic", "skipped"})
    cols.push_back(c);
  io::CsvWriter csv(run.file("corr.csv"), "corr", hashed(cfg), cols);
  const auto trials = get<std::uint64_t>(cfg, "trials");
  double worst_z = 0.0;
  bool has_reference = false;
  for (int N : get<std::vector<int>>(cfg, "n")) {
    if (N < 1) throw UsageError("--n must be positive");
    for (const CorrelatorEstimate& e : mc_correlator_batch(sets, N, trials, opts)) {
      const std::size_t k = e.points.size();
      std::optional<double> exact;
      if (k == 1) exact = 0.0;
      if (k == 2 && opts.cls == SymmetryClass::AIII && opts.loop.trig)
        exact = analytic_C2(N, e.points[0], e.points[1]);
      csv.cell(N).cell(static_cast<long long>(k));
      for (std::size_t i = 0; i < kmax; ++i) {
        if (i < k) {
          csv.cell(e.points[i]);
        } else {
          csv.cell("");
        }
      }
      csv.cell(e.mean.real()).cell(e.mean.imag()).cell(e.stderr);
      csv.cell(e.median_of_means.real()).cell(e.median_of_means.imag());
      if (exact) {
        csv.cell(*exact);
        has_reference = true;
        worst_z = std::max(worst_z, std::abs(e.mean - *exact) / (e.stderr + 1e-12));
      } else {
        csv.cell("");
      }
      csv.cell(static_cast<long long>(e.skipped));
      csv.end_row();
    }
  }
  if (has_reference) run.check("within_4_stderr", worst_z < 4.0, {{"max_z", worst_z}});
  return 0;
}

int cmd_unfold(Run& run) {
  const json& cfg = run.cfg;
  const double alpha = get<double>(cfg, "alpha");
  const int samples = get<int>(cfg, "grid");
  if (samples < 2) throw UsageError("--grid must be at least 2");
  const auto Ns = get<std::vector<int>>(cfg, "n");
  io::CsvWriter curve(run.file("unfold.csv"), "unfold", hashed(cfg),
                      {"alpha", "N", "delta", "unfolded", "limit"});
  io::CsvWriter sup(run.file("unfold_sup.csv"), "unfold sup distance", hashed(cfg),
                    {"alpha", "N", "sup_distance"});
  const double lo = 0.5, hi = 5.0;
  double prev = INFINITY;
  bool decreasing = true;
  json dists = json::array();
  for (int N : Ns) {
    if (N < 1) throw UsageError("--n must be positive");
    for (int i = 0; i < samples; ++i) {
      const double d = lo + (hi - lo) * i / (samples - 1);
      curve.cell(alpha).cell(N).cell(d).cell(unfolded_C2(N, alpha, d, 0.0)).cell(f2_limit(alpha, d, 0.0));
      curve.end_row();
    }
    const double dist = unfolding_sup_distance(N, alpha, lo, hi, samples);
    sup.cell(alpha).cell(N).cell(dist);
    sup.end_row();
    dists.push_back(dist);
    decreasing = decreasing && dist < prev;
    prev = dist;
  }
  run.summary["sup_distances"] = dists;
  run.check("sup_distance_decreasing", decreasing, {{"distances", dists}});
  return 0;
}

int cmd_gen(Run& run) {
  const json& cfg = run.cfg;
  const McOptions opts = mc_options(cfg);
  std::vector<std::pair<std::vector<double>, std::vector<double>>> sets;
  if (cfg.contains("points")) {
    // --points lists q_1..q_k followed by p_1..p_k.
    const auto pts = get<std::vector<double>>(cfg, "points");
    if (pts.empty() || pts.size() % 2) throw UsageError("gen --points needs q_1..q_k p_1..p_k");
    const std::size_t k = pts.size() / 2;
    sets.push_back({{pts.begin(), pts.begin() + k}, {pts.begin() + k, pts.end()}});
  } else {
    for (double sep : {0.3, 0.7, 1.2, 2.0, 2.8}) sets.push_back({{0.5}, {0.5 + sep}});
  }
  const std::size_t k = sets.front().first.size();
  std::vector<std::string> cols = {"N", "k"};
  for (std::size_t i = 1; i <= k; ++i) cols.push_back("q" + std::to_string(i));
  for (std::size_t i = 1; i <= k; ++i) cols.push_back("p" + std::to_string(i));
  for (const char* c : {"Z_mc_re", "Z_mc_im", "stderr", "Z_analytic_re", "Z_analytic_im"})
    cols.push_back(c);
  io::CsvWriter csv(run.file("gen.csv"), "gen", hashed(cfg), cols);
  const auto trials = get<std::uint64_t>(cfg, "trials");
  double worst_z = 0.0;
  bool has_reference = false;
  for (int N : get<std::vector<int>>(cfg, "n")) {
    if (N < 1) throw UsageError("--n must be positive");
    for (const auto& [q, p] : sets) {
      const GeneratorValue g = mc_generator(q, p, N, trials, opts);
      csv.cell(N).cell(static_cast<long long>(k));
      for (double x : q) csv.cell(x);
      for (double x : p) csv.cell(x);
      csv.cell(g.value.real()).cell(g.value.imag()).cell(g.stderr);
      if (opts.cls == SymmetryClass::AIII) {
        const cdouble z = analytic_Z_AIII_regularized(q, p, N);
        csv.cell(z.real()).cell(z.imag());
        has_reference = true;
        worst_z = std::max(worst_z, std::abs(g.value - z) / (g.stderr + 1e-12));
      } else {
        csv.cell("").cell("");
      }
      csv.end_row();
    }
  }
  if (has_reference) run.check("within_4_stderr", worst_z < 4.0, {{"max_z", worst_z}});
  return 0;
}

int cmd_kitaev(Run& run) {
  const json& cfg = run.cfg;
  const double mu = get<double>(cfg, "mu");
  const double delta = get<double>(cfg, "delta");
  const int grid = get<int>(cfg, "grid");
  if (grid < 8) throw UsageError("--grid must be at least 8");
  io::CsvWriter phases(run.file("kitaev.csv"), "kitaev", hashed(cfg),
                       {"t", "mu", "delta", "gap", "W", "phase"});
  io::CsvWriter disp(run.file("kitaev_dispersion.csv"), "kitaev dispersion", hashed(cfg),
                     {"t", "k", "e_plus", "e_minus"});
  bool consistent = true;
  for (double t : get<std::vector<double>>(cfg, "t")) {
    const kitaev::Params params{t, mu, delta};
    const kitaev::Dispersion d = kitaev::dispersion_and_gap(params, grid);
    for (std::size_t i = 0; i < d.k.size(); ++i) {
      disp.cell(t).cell(d.k[i]).cell(d.e_plus[i]).cell(d.e_minus[i]);
      disp.end_row();
    }
    std::string phase;
    std::string w_text;
    try {
      const int w = kitaev::kitaev_winding(params, grid);
      w_text = std::to_string(w);
      phase = w != 0 ? "topological" : "trivial";
      // Away from the transition the winding is nonzero iff |mu| < 2|t| (delta != 0).
      consistent = consistent && ((w != 0) == (std::abs(mu) < 2 * std::abs(t) && delta != 0.0));
    } catch (const PhaseTransitionError&) {
      phase = "transition";
      consistent = consistent && std::abs(std::abs(mu) - 2 * std::abs(t)) < 1e-6;
    }
    phases.cell(t).cell(mu).cell(delta).cell(d.gap).cell(w_text).cell(phase);
    phases.end_row();
  }
  run.check("phase_rule", consistent);

  if (cfg.contains("mu_scan")) {
    const json& scan = cfg["mu_scan"];
    const double from = get<double>(scan, "from");
    const double to = get<double>(scan, "to");
    const double step = get<double>(scan, "step");
    const double t = scan.contains("t") ? get<double>(scan, "t") : 1.0;
    if (!(step > 0.0) || !(to > from)) throw UsageError("mu_scan needs from < to and step > 0");
    io::CsvWriter sc(run.file("kitaev_scan.csv"), "kitaev mu scan", hashed(cfg),
                     {"t", "mu", "gap", "W"});
    std::optional<int> prev;
    json flips = json::array();
    bool located = true;
    const long steps = std::lround((to - from) / step);
    for (long i = 0; i <= steps; ++i) {
      const double m = from + i * step;
      const kitaev::Params params{t, m, delta};
      std::string w_text = "transition";
      try {
        const int w = kitaev::kitaev_winding(params, grid);
        w_text = std::to_string(w);
        if (prev && *prev != w) {
          const double at = m - step / 2;
          flips.push_back(at);
          located = located && std::abs(std::abs(at) - 2 * std::abs(t)) <= step;
        }
        prev = w;
      } catch (const PhaseTransitionError&) {
      }
      sc.cell(t).cell(m).cell(kitaev::gap(params, grid)).cell(w_text);
      sc.end_row();
    }
    run.summary["mu_flips"] = flips;
    run.check("flip_at_2t", located && !flips.empty(), {{"flips", flips}});
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"windstat: winding number statistics of chiral random matrices"};
  app.require_subcommand(1);
  Flags flags;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"winding", "winding numbers per draw, contour and count routes"},
      {"dist", "exact and sampled winding number distribution, Gaussian limit"},
      {"corr", "Monte Carlo winding density correlators"},
      {"unfold", "unfolded two-point function against its large-N limit"},
      {"gen", "generator of correlators: Monte Carlo against the closed form"},
      {"kitaev", "Kitaev chain gap and winding number"}};
  std::vector<CLI::App*> subs;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--n", flags.n, "matrix size(s) N")->delimiter(',');
    sub->add_option("--class", flags.cls, "symmetry class AIII or CII");
    sub->add_option("--trials", flags.trials, "Monte Carlo draws");
    sub->add_option("--seed", flags.seed, "master seed");
    sub->add_option("--streams", flags.streams, "random streams");
    sub->add_option("--alpha", flags.alpha, "unfolding exponent");
    sub->add_option("--points", flags.points, "evaluation points")->delimiter(',');
    sub->add_option("--grid", flags.grid, "grid size");
    sub->add_option("--out-dir", flags.out_dir, "output directory");
    sub->add_option("--config", flags.config, "JSON file whose values override the flags");
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::string command;
  for (CLI::App* sub : subs) {
    if (sub->parsed()) command = sub->get_name();
  }

  try {
    Run run;
    run.cfg = resolve(command, flags);
    run.dir = get<std::string>(run.cfg, "out_dir");
    parse_class(get<std::string>(run.cfg, "class"));
    fs::create_directories(run.dir);
    int rc = 0;
    if (command == "winding") rc = cmd_winding(run);
    if (command == "dist") rc = cmd_dist(run);
    if (command == "corr") rc = cmd_corr(run);
    if (command == "unfold") rc = cmd_unfold(run);
    if (command == "gen") rc = cmd_gen(run);
    if (command == "kitaev") rc = cmd_kitaev(run);
    const int verdict = run.finish(command);
    return rc != 0 ? rc : verdict;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  }
}
