#ifndef VOTEAGG_SIMULATE_HPP
#define VOTEAGG_SIMULATE_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "voteagg/aggregate.hpp"
#include "voteagg/dataset.hpp"

namespace voteagg {

/// Planted-truth generator settings. Confusion is either one explicit
/// A x C x C table set or a scalar diagonal accuracy with the off-diagonal
/// mass spread uniformly.
struct SimulationConfig {
  int num_questions = 0;
  int num_annotators = 0;
  int num_options = 0;
  int votes_per_question = 0;
  std::vector<double> class_prior;    // empty means uniform
  double diagonal_accuracy = -1.0;    // used when `confusion` is empty
  std::vector<double> confusion;      // optional explicit A x C x C tables
  std::uint64_t seed = 0;

  void validate() const;
};

/// Draws gold labels from the prior, picks k annotators per question without
/// replacement, and draws each vote from the annotator's confusion row for
/// the gold class. Fully deterministic per seed (stream `simulate`).
std::pair<Dataset, GoldLabels> simulate(const SimulationConfig& cfg);

struct Metrics {
  double accuracy = 0.0;  // over gold-covered questions only
  double neg_log_likelihood = 0.0;
  int iterations = 0;
  double seconds = 0.0;
  bool converged = false;
};

/// Scores an aggregation run against gold. `elapsed` is the caller-measured
/// wall time of the aggregation call alone.
Metrics evaluate(const AggregationResult& result, const GoldLabels& gold, double elapsed);

}  // namespace voteagg

#endif  // VOTEAGG_SIMULATE_HPP
