#include "voteagg/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "voteagg/errors.hpp"
#include "voteagg/rng.hpp"

namespace voteagg {

nlohmann::json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 14];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    h = detail::fnv1a64(std::string_view(buf, static_cast<std::size_t>(in.gcount())), h);
    if (!in) break;
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
  return std::string(hex);
}

nlohmann::json RunManifest::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["version"] = kVersion;
  j["seed"] = seed;
  j["config"] = config;
  nlohmann::json ins = nlohmann::json::object();
  for (const auto& [role, path] : inputs)
    ins[role] = {{"path", path}, {"fnv1a64", file_digest(path)}};
  j["inputs"] = ins;
  j["outputs"] = outputs;
  return j;
}

void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path dir = target.parent_path().empty() ? fs::path(".") : target.parent_path();
  fs::create_directories(dir);
  const fs::path tmp = dir / (target.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError(tmp.string() + ": cannot open for writing");
    out << content;
    if (!out) throw ParseError(tmp.string() + ": write failed");
  }
  fs::rename(tmp, target);
}

namespace {

nlohmann::json trace_to_json(const std::vector<IterationRecord>& trace) {
  nlohmann::json arr = nlohmann::json::array();
  for (const IterationRecord& r : trace)
    arr.push_back({{"marginal_delta", json_number(r.marginal_delta)},
                   {"nll", json_number(r.neg_log_likelihood)},
                   {"c2", json_number(r.cml)},
                   {"pi_delta", json_number(r.pi_delta)}});
  return arr;
}

}  // namespace

nlohmann::json build_run_report(const RunManifest& manifest, const Dataset& d,
                                const AggregationResult& result, const GoldLabels& gold,
                                bool has_gold) {
  nlohmann::json report;
  report["manifest"] = manifest.to_json();
  report["converged"] = result.converged;
  report["iterations"] = result.iterations;
  if (result.switch_iteration)
    report["switch_iteration"] = *result.switch_iteration;
  else
    report["switch_iteration"] = nullptr;
  report["trace"] = trace_to_json(result.trace);
  report["nll"] = json_number(result.final_nll());
  report["nll_finite"] = std::isfinite(result.final_nll());
  // Table-2 style likelihoods are the observed-data marginal, natural log.
  report["likelihood_definition"] = "observed-data marginal, natural log";
  report["degenerate_rows"] = result.degenerate_rows;
  report["warnings"] = result.warnings;

  nlohmann::json labels = nlohmann::json::object();
  for (int q = 0; q < d.num_questions; ++q)
    labels[d.question_names[q]] = d.option_names[result.final_assignment.label_of(q)];
  report["labels"] = labels;

  if (has_gold) {
    std::size_t correct = 0;
    for (const auto& [q, truth] : gold.labels)
      if (result.final_assignment.label_of(q) == truth) ++correct;
    report["accuracy"] =
        static_cast<double>(correct) / static_cast<double>(gold.labels.size());
    report["gold_covered"] = gold.labels.size();
  }
  return report;
}

nlohmann::json sweep_to_json(const SweepReport& sweep) {
  nlohmann::json j;
  j["ks"] = sweep.ks;
  nlohmann::json algs = nlohmann::json::array();
  for (Algorithm a : sweep.algorithms) algs.push_back(algorithm_name(a));
  j["algorithms"] = algs;
  j["repeats"] = sweep.repeats;
  nlohmann::json cells = nlohmann::json::array();
  for (const SweepCell& c : sweep.cells) {
    nlohmann::json cj;
    cj["k"] = c.k;
    cj["algorithm"] = algorithm_name(c.algorithm);
    cj["accuracy"] = json_number(c.accuracy);
    cj["nll"] = json_number(c.nll);
    cj["iterations"] = c.iterations;
    cj["seconds"] = c.seconds;
    cj["converged"] = c.converged;
    if (sweep.repeats > 1) {
      cj["accuracy_sd"] = c.accuracy_sd;
      cj["nll_sd"] = c.nll_sd;
      cj["iterations_sd"] = c.iterations_sd;
      cj["seconds_sd"] = c.seconds_sd;
      nlohmann::json runs = nlohmann::json::array();
      for (const Metrics& m : c.runs)
        runs.push_back({{"accuracy", m.accuracy},
                        {"nll", json_number(m.neg_log_likelihood)},
                        {"iterations", m.iterations},
                        {"seconds", m.seconds},
                        {"converged", m.converged}});
      cj["runs"] = runs;
    }
    cells.push_back(std::move(cj));
  }
  j["cells"] = cells;
  if (!sweep.external.empty()) {
    nlohmann::json ext = nlohmann::json::array();
    for (const ExternalCell& c : sweep.external)
      ext.push_back({{"k", c.k},
                     {"algorithm", c.algorithm},
                     {"accuracy", json_number(c.accuracy)},
                     {"nll", json_number(c.nll)},
                     {"iterations", c.iterations},
                     {"seconds", c.seconds},
                     {"converged", c.converged}});
    j["external"] = ext;
  }
  return j;
}

}  // namespace voteagg
