#include "voteagg/simulate.hpp"

#include <cmath>
#include <string>

#include "voteagg/errors.hpp"
#include "voteagg/rng.hpp"

namespace voteagg {

namespace {
// Categorical draw from a probability row using one uniform variate.
int draw_categorical(const double* row, int n, Rng& rng) {
  const double u = rng.uniform01();
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    acc += row[i];
    if (u < acc) return i;
  }
  return n - 1;  // guard against accumulated rounding
}
}  // namespace

void SimulationConfig::validate() const {
  if (num_questions < 1) throw ValidationError("need at least one question");
  if (num_annotators < 1) throw ValidationError("need at least one annotator");
  if (num_options < 2) throw ValidationError("need at least two options");
  if (votes_per_question < 1 || votes_per_question > num_annotators)
    throw ValidationError("votes per question must be in [1, annotators]");
  if (!class_prior.empty()) {
    if (static_cast<int>(class_prior.size()) != num_options)
      throw ValidationError("prior length must equal the option count");
    double s = 0.0;
    for (double p : class_prior) {
      if (p < 0.0) throw ValidationError("prior entries must be nonnegative");
      s += p;
    }
    if (std::abs(s - 1.0) > 1e-9) throw ValidationError("prior must sum to 1");
  }
  if (confusion.empty()) {
    if (diagonal_accuracy < 0.0 || diagonal_accuracy > 1.0)
      throw ValidationError("diagonal accuracy must be in [0, 1]");
  } else {
    const std::size_t want = static_cast<std::size_t>(num_annotators) * num_options * num_options;
    if (confusion.size() != want)
      throw ValidationError("confusion tables must be A x C x C");
    for (std::size_t base = 0; base < want; base += num_options) {
      double s = 0.0;
      for (int l = 0; l < num_options; ++l) {
        if (confusion[base + l] < 0.0) throw ValidationError("confusion entries must be >= 0");
        s += confusion[base + l];
      }
      if (std::abs(s - 1.0) > 1e-9) throw ValidationError("confusion rows must sum to 1");
    }
  }
}

std::pair<Dataset, GoldLabels> simulate(const SimulationConfig& cfg) {
  cfg.validate();
  Rng rng = substream(cfg.seed, "simulate");
  const int C = cfg.num_options;
  const int A = cfg.num_annotators;

  std::vector<double> prior = cfg.class_prior;
  if (prior.empty()) prior.assign(C, 1.0 / C);

  std::vector<double> confusion = cfg.confusion;
  if (confusion.empty()) {
    const double off = C > 1 ? (1.0 - cfg.diagonal_accuracy) / (C - 1) : 0.0;
    confusion.assign(static_cast<std::size_t>(A) * C * C, off);
    for (int a = 0; a < A; ++a)
      for (int c = 0; c < C; ++c)
        confusion[(static_cast<std::size_t>(a) * C + c) * C + c] = cfg.diagonal_accuracy;
  }

  Dataset d;
  d.num_questions = cfg.num_questions;
  d.num_annotators = A;
  d.num_options = C;
  d.votes.resize(cfg.num_questions);
  for (int q = 0; q < cfg.num_questions; ++q) d.question_names.push_back("q" + std::to_string(q));
  for (int a = 0; a < A; ++a) d.annotator_names.push_back("a" + std::to_string(a));
  for (int c = 0; c < C; ++c) d.option_names.push_back(std::to_string(c));

  GoldLabels gold;
  std::vector<int> pool(A);
  for (int q = 0; q < cfg.num_questions; ++q) {
    const int truth = draw_categorical(prior.data(), C, rng);
    gold.labels[q] = truth;

    for (int a = 0; a < A; ++a) pool[a] = a;
    for (int i = 0; i < cfg.votes_per_question; ++i) {
      const int j = i + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(A - i)));
      std::swap(pool[i], pool[j]);
      const int a = pool[i];
      const double* row = &confusion[(static_cast<std::size_t>(a) * C + truth) * C];
      d.votes[q].push_back({a, draw_categorical(row, C, rng)});
    }
  }
  return {std::move(d), std::move(gold)};
}

Metrics evaluate(const AggregationResult& result, const GoldLabels& gold, double elapsed) {
  if (gold.labels.empty()) throw ValidationError("gold labels are empty");
  std::size_t correct = 0;
  for (const auto& [q, truth] : gold.labels) {
    if (q < 0 || q >= result.final_assignment.num_questions)
      throw ValidationError("gold references question " + std::to_string(q) +
                            " outside the result");
    if (result.final_assignment.label_of(q) == truth) ++correct;
  }
  Metrics m;
  m.accuracy = static_cast<double>(correct) / static_cast<double>(gold.labels.size());
  m.neg_log_likelihood = result.final_nll();
  m.iterations = result.iterations;
  m.seconds = elapsed;
  m.converged = result.converged;
  return m;
}

}  // namespace voteagg
