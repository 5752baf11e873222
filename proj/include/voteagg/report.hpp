#ifndef VOTEAGG_REPORT_HPP
#define VOTEAGG_REPORT_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "voteagg/aggregate.hpp"
#include "voteagg/dataset.hpp"
#include "voteagg/sweep.hpp"

namespace voteagg {

inline constexpr const char* kVersion = "0.1.0";

/// Full reproducibility record embedded in every report: command, config
/// echo, seed, input digests, library version, output paths. Two runs with
/// equal manifests produce byte-identical reports.
struct RunManifest {
  std::string command;
  nlohmann::json config = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> inputs;  // (role, path)
  std::vector<std::string> outputs;

  nlohmann::json to_json() const;  // hashes the inputs
};

/// FNV-1a 64-bit digest of a file's bytes, as a fixed-width hex string.
std::string file_digest(const std::string& path);

/// Writes via a temp file in the same directory plus an atomic rename.
void atomic_write(const std::string& path, const std::string& content);

/// JSON run report for one aggregation: manifest, convergence metadata,
/// per-iteration trace, labels keyed by original question ids, and accuracy
/// when gold is present (pass has_gold=false to omit).
nlohmann::json build_run_report(const RunManifest& manifest, const Dataset& d,
                                const AggregationResult& result, const GoldLabels& gold,
                                bool has_gold);

nlohmann::json sweep_to_json(const SweepReport& sweep);

/// NaN-safe: NaN/inf become JSON null (nlohmann would emit them as null
/// anyway; this keeps the intent explicit at the call sites).
nlohmann::json json_number(double v);

}  // namespace voteagg

#endif  // VOTEAGG_REPORT_HPP
