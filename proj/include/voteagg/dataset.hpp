#ifndef VOTEAGG_DATASET_HPP
#define VOTEAGG_DATASET_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace voteagg {

struct Vote {
  int annotator = 0;
  int option = 0;
  friend bool operator==(const Vote&, const Vote&) = default;
};

/// Immutable vote table. Question, annotator and option ids are dense 0-based
/// integers; the *_names sidecars map them back to the ids found in the input
/// file. Vote order within a question is the file order, and all downstream
/// reductions iterate in that order.
struct Dataset {
  int num_questions = 0;
  int num_annotators = 0;
  int num_options = 0;
  std::vector<std::vector<Vote>> votes;  // one entry per question

  std::vector<std::string> question_names;
  std::vector<std::string> annotator_names;
  std::vector<std::string> option_names;

  std::size_t total_votes() const;

  // Throws ValidationError if any invariant is broken: every question has at
  // least one vote, no duplicate (question, annotator) pair, ids in range.
  void validate() const;
};

/// Gold labels for a subset of questions, keyed by dense question id.
struct GoldLabels {
  std::map<int, int> labels;
};

enum class VoteFormat { csv, json };

/// Loads a vote table. CSV needs the header `question,annotator,option`; an
/// optional `# options=<n>` comment line pins the number of options. JSON is
/// either an array of vote objects with the same keys or an object
/// `{"options": n, "votes": [...]}`. Question and annotator ids are densified
/// by first appearance. Option tokens that all parse as nonnegative integers
/// are kept verbatim (so they stay aligned with gold files); otherwise options
/// are densified by first appearance too.
Dataset load_dataset(const std::string& path, VoteFormat format = VoteFormat::csv);

void save_dataset_csv(const Dataset& d, const std::string& path);

/// Loads gold labels (`question,label` CSV) against an existing dataset.
/// Entries whose question is not present in `d` are skipped; the skip count is
/// reported through `skipped` when given. Throws if no entry survives.
GoldLabels load_gold(const std::string& path, const Dataset& d, std::size_t* skipped = nullptr);

void save_gold_csv(const GoldLabels& gold, const Dataset& d, const std::string& path);

/// Keeps only questions with at least `threshold` votes, re-densifying
/// question ids (and annotator ids, when an annotator loses all votes).
Dataset filter_min_annotators(const Dataset& d, int threshold);

/// Keeps exactly `k` votes per question, drawn uniformly without replacement
/// from the `subsample` stream of `seed`. Selected votes keep their file
/// order. Every question must have at least k votes.
Dataset subsample_annotators(const Dataset& d, int k, std::uint64_t seed);

/// Drops all votes for `dead_option`, re-densifies the remaining option ids
/// and drops questions left without votes (count reported via
/// `dropped_questions`).
Dataset remove_class(const Dataset& d, int dead_option, std::size_t* dropped_questions = nullptr);

}  // namespace voteagg

#endif  // VOTEAGG_DATASET_HPP
