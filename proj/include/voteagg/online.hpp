#ifndef VOTEAGG_ONLINE_HPP
#define VOTEAGG_ONLINE_HPP

#include <string>
#include <vector>

#include "voteagg/aggregate.hpp"
#include "voteagg/dataset.hpp"
#include "voteagg/estimation.hpp"
#include "voteagg/rng.hpp"

namespace voteagg {

/// One incoming vote with ids as they appear on the wire; annotators and
/// options new to the state are admitted (options only up to the known C when
/// the state was built from a fixed option set).
struct IncomingVote {
  std::string annotator;
  int option = 0;
};

/// Streaming aggregation state: a batch FDS solution plus the accumulated
/// dataset. Parameters and assignment are always consistent with one trailing
/// m_step over the accumulated dataset. Single writer; ingests are serialized.
class OnlineState {
 public:
  OnlineState(const Dataset& initial, const AggregationConfig& cfg);

  /// Incorporates one new question: majority vote for the new row, M-step
  /// over the grown dataset, E-step for the new question only, and a final
  /// M-step. Returns the chosen option id.
  int ingest_question(const std::string& question_name, const std::vector<IncomingVote>& votes);

  const Dataset& dataset() const { return dataset_; }
  const Parameters& parameters() const { return params_; }
  const Assignment& assignment() const { return assignment_; }
  const AggregationResult& initial_result() const { return initial_result_; }
  int questions_ingested() const { return questions_ingested_; }
  int new_annotators_seen() const { return new_annotators_seen_; }

 private:
  Dataset dataset_;
  Parameters params_;
  Assignment assignment_;
  AggregationConfig cfg_;
  AggregationResult initial_result_;
  Rng tie_rng_;
  int questions_ingested_ = 0;
  int new_annotators_seen_ = 0;
};

}  // namespace voteagg

#endif  // VOTEAGG_ONLINE_HPP
