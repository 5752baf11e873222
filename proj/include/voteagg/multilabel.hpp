#ifndef VOTEAGG_MULTILABEL_HPP
#define VOTEAGG_MULTILABEL_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "voteagg/aggregate.hpp"
#include "voteagg/dataset.hpp"

namespace voteagg {

/// One annotator's answer to a multi-choice question: the set of options
/// selected. An empty set is a valid answer (all options declined).
struct MultiAnswer {
  int annotator = 0;
  std::vector<int> selected;  // sorted, unique
  friend bool operator==(const MultiAnswer&, const MultiAnswer&) = default;
};

/// Vote table where each question may have several correct options.
struct MultiDataset {
  int num_questions = 0;
  int num_annotators = 0;
  int num_options = 0;
  std::vector<std::vector<MultiAnswer>> answers;  // per question, file order

  std::vector<std::string> question_names;
  std::vector<std::string> annotator_names;
  std::vector<std::string> option_names;

  std::size_t total_answer_events() const;
  void validate() const;
};

/// Per-(question, option) true/false decisions with the binary run behind them.
struct MultiLabelResult {
  int num_questions = 0;
  int num_options = 0;
  std::vector<std::vector<bool>> decisions;  // [question][option]
  AggregationResult binary_result;
};

/// Loads the `question,annotator,option,selected` CSV. Every row marks the
/// annotator as having answered the question; rows with selected=1 add the
/// option to their selection set.
MultiDataset load_multilabel(const std::string& path);

/// Turns each (question, option) pair into a separate binary question:
/// Q questions with C options become Q*C questions with options {0, 1}. Every
/// annotator who answered question q casts one binary vote per pair, an
/// explicit 0 when the option was not selected. Binary question (q, c) has
/// dense id q*C + c.
Dataset binarize(const MultiDataset& md);

/// Inverse of binarize given the original option count; reconstructs the
/// selection sets (names are not recovered).
MultiDataset regroup(const Dataset& binary, int num_options);

/// One pooled binary aggregation job over all Q*C pairs.
MultiLabelResult aggregate_multilabel(const MultiDataset& md, const AggregationConfig& cfg);

/// Keeps exactly `k` answer events per question, drawn uniformly without
/// replacement from the `subsample` stream of `seed`.
MultiDataset multilabel_subsample(const MultiDataset& md, int k, std::uint64_t seed);

/// Writes decisions as `question,option,selected` rows.
void save_decisions_csv(const MultiLabelResult& res, const MultiDataset& md,
                        const std::string& path);

/// Per-pair gold decisions, same `question,option,selected` format as the
/// decisions CSV. Rows for questions absent from `md` are skipped.
struct MultiGold {
  std::map<std::pair<int, int>, bool> pairs;  // (question, option) -> selected
};

MultiGold load_multilabel_gold(const std::string& path, const MultiDataset& md);

/// Fraction of gold-covered (question, option) pairs decided correctly.
double multilabel_accuracy(const MultiLabelResult& res, const MultiGold& gold);

}  // namespace voteagg

#endif  // VOTEAGG_MULTILABEL_HPP
