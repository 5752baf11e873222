#include "voteagg/online.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "voteagg/errors.hpp"

namespace voteagg {

OnlineState::OnlineState(const Dataset& initial, const AggregationConfig& cfg)
    : dataset_(initial),
      cfg_(cfg),
      initial_result_(run_fds(initial, cfg)),
      tie_rng_(derive_seed(cfg.seed, "online-mv-ties")) {
  params_ = initial_result_.parameters;
  assignment_ = initial_result_.final_assignment;
}

int OnlineState::ingest_question(const std::string& question_name,
                                 const std::vector<IncomingVote>& votes) {
  if (votes.empty()) throw ValidationError("ingest needs at least one vote");

  std::unordered_map<std::string, int> annotator_index;
  for (int a = 0; a < dataset_.num_annotators; ++a)
    annotator_index.emplace(dataset_.annotator_names[a], a);

  std::vector<Vote> row;
  for (const IncomingVote& v : votes) {
    if (v.option < 0 || v.option >= dataset_.num_options)
      throw ValidationError("option id out of range in streamed vote");
    auto it = annotator_index.find(v.annotator);
    int a;
    if (it == annotator_index.end()) {
      a = dataset_.num_annotators++;
      dataset_.annotator_names.push_back(v.annotator);
      annotator_index.emplace(v.annotator, a);
      ++new_annotators_seen_;
    } else {
      a = it->second;
    }
    for (const Vote& existing : row)
      if (existing.annotator == a)
        throw ValidationError("duplicate vote by annotator '" + v.annotator +
                              "' in streamed question");
    row.push_back({a, v.option});
  }

  const int q = dataset_.num_questions++;
  dataset_.votes.push_back(std::move(row));
  dataset_.question_names.push_back(question_name);

  // Majority vote for the new question only; ties consume the state stream.
  std::vector<int> counts(dataset_.num_options, 0);
  for (const Vote& v : dataset_.votes[q]) ++counts[v.option];
  const int best = *std::max_element(counts.begin(), counts.end());
  std::vector<int> tied;
  for (int c = 0; c < dataset_.num_options; ++c)
    if (counts[c] == best) tied.push_back(c);
  const int mv_choice =
      tied.size() == 1 ? tied[0]
                       : tied[tie_rng_.bounded(static_cast<std::uint64_t>(tied.size()))];

  // Grow the assignment by the majority-vote row.
  std::vector<int> labels = assignment_.labels();
  labels.push_back(mv_choice);
  assignment_ = Assignment::hard_from_labels(labels, dataset_.num_options);

  // M-step over everything, E-step for this question only, final M-step.
  params_ = m_step(dataset_, assignment_, cfg_.alpha);
  const int C = dataset_.num_options;
  std::vector<double> joint(C);
  for (int c = 0; c < C; ++c) joint[c] = std::log(params_.class_marginals[c]);
  for (const Vote& v : dataset_.votes[q])
    for (int c = 0; c < C; ++c) joint[c] += std::log(params_.error_rate(v.annotator, c, v.option));
  int chosen = 0;
  for (int c = 1; c < C; ++c)
    if (joint[c] > joint[chosen]) chosen = c;
  labels[q] = chosen;
  assignment_ = Assignment::hard_from_labels(labels, dataset_.num_options);
  params_ = m_step(dataset_, assignment_, cfg_.alpha);

  ++questions_ingested_;
  return chosen;
}

}  // namespace voteagg
