#ifndef VOTEAGG_AGGREGATE_HPP
#define VOTEAGG_AGGREGATE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "voteagg/dataset.hpp"
#include "voteagg/estimation.hpp"

namespace voteagg {

enum class Algorithm { mv, ds, fds, hybrid };

Algorithm algorithm_from_name(const std::string& name);
std::string algorithm_name(Algorithm a);

struct AggregationConfig {
  Algorithm algorithm = Algorithm::fds;
  double marginal_tolerance = 1e-4;  // L1 delta of class marginals
  double hybrid_gamma = 0.005;       // DS -> FDS switch threshold
  int max_iterations = 100;
  std::uint64_t seed = 0;
  double alpha = 0.0;  // additive smoothing of confusion counts

  void validate() const;
};

struct IterationRecord {
  double marginal_delta;      // NaN on the first iteration (no predecessor)
  double neg_log_likelihood;  // observed-data, at this iteration's parameters
  double cml;                 // C2 of the hard assignment; NaN while soft
  double pi_delta;            // L1 over all confusion entries; NaN first iteration
};

struct AggregationResult {
  Assignment final_assignment;  // always hard
  std::optional<Assignment> soft_posteriors;  // retained for DS
  Parameters parameters;
  int iterations = 0;
  bool converged = false;
  std::optional<int> switch_iteration;  // hybrid only
  std::vector<IterationRecord> trace;   // one record per iteration
  std::size_t degenerate_rows = 0;      // rows that underflowed in any E-step
  std::vector<std::string> warnings;

  double final_nll() const { return trace.back().neg_log_likelihood; }
};

/// True when the L1 distance between consecutive class marginals is below tol.
bool check_convergence(const std::vector<double>& p_prev, const std::vector<double>& p_cur,
                       double tol);

AggregationResult run_mv(const Dataset& d, const AggregationConfig& cfg);
AggregationResult run_ds(const Dataset& d, const AggregationConfig& cfg);
AggregationResult run_fds(const Dataset& d, const AggregationConfig& cfg);
AggregationResult run_hybrid(const Dataset& d, const AggregationConfig& cfg);

/// Dispatches on cfg.algorithm.
AggregationResult run(const Dataset& d, const AggregationConfig& cfg);

}  // namespace voteagg

#endif  // VOTEAGG_AGGREGATE_HPP
