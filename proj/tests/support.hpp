#ifndef VOTEAGG_TESTS_SUPPORT_HPP
#define VOTEAGG_TESTS_SUPPORT_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "voteagg/multilabel.hpp"

namespace voteagg::testsupport {

// Planted multi-label instance: per-(question, option) Bernoulli gold, each
// answering annotator flips every per-option decision independently with
// flip_prob. Test-side generator, independent of the library's simulator.
struct MultiPlant {
  MultiDataset md;
  std::vector<std::vector<bool>> gold;  // [question][option]
};

inline MultiPlant plant_multilabel(int Q, int A, int C, int k, double select_prob,
                                   double flip_prob, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  MultiPlant plant;
  MultiDataset& md = plant.md;
  md.num_questions = Q;
  md.num_annotators = A;
  md.num_options = C;
  md.answers.resize(Q);
  for (int q = 0; q < Q; ++q) md.question_names.push_back("q" + std::to_string(q));
  for (int a = 0; a < A; ++a) md.annotator_names.push_back("a" + std::to_string(a));
  for (int c = 0; c < C; ++c) md.option_names.push_back(std::to_string(c));

  plant.gold.assign(Q, std::vector<bool>(C, false));
  std::vector<int> pool(A);
  for (int q = 0; q < Q; ++q) {
    for (int c = 0; c < C; ++c) plant.gold[q][c] = unif(rng) < select_prob;
    for (int a = 0; a < A; ++a) pool[a] = a;
    for (int i = 0; i < k; ++i) {
      std::uniform_int_distribution<int> pick(i, A - 1);
      std::swap(pool[i], pool[pick(rng)]);
      MultiAnswer ans;
      ans.annotator = pool[i];
      for (int c = 0; c < C; ++c) {
        const bool truth = plant.gold[q][c];
        const bool says = unif(rng) < flip_prob ? !truth : truth;
        if (says) ans.selected.push_back(c);
      }
      md.answers[q].push_back(std::move(ans));
    }
  }
  md.validate();
  return plant;
}

// Random valid MultiDataset for round-trip style properties.
inline MultiDataset random_multilabel(std::mt19937_64& rng) {
  const int Q = 1 + static_cast<int>(rng() % 6);
  const int A = 1 + static_cast<int>(rng() % 5);
  const int C = 1 + static_cast<int>(rng() % 4);
  MultiDataset md;
  md.num_questions = Q;
  md.num_annotators = A;
  md.num_options = C;
  md.answers.resize(Q);
  for (int q = 0; q < Q; ++q) md.question_names.push_back("q" + std::to_string(q));
  for (int a = 0; a < A; ++a) md.annotator_names.push_back("a" + std::to_string(a));
  for (int c = 0; c < C; ++c) md.option_names.push_back(std::to_string(c));
  for (int q = 0; q < Q; ++q) {
    for (int a = 0; a < A; ++a) {
      if (rng() % 3 == 0 && !(a == A - 1 && md.answers[q].empty())) continue;
      MultiAnswer ans;
      ans.annotator = a;
      for (int c = 0; c < C; ++c)
        if (rng() % 2 == 0) ans.selected.push_back(c);
      md.answers[q].push_back(std::move(ans));
    }
  }
  md.validate();
  return md;
}

}  // namespace voteagg::testsupport

#endif  // VOTEAGG_TESTS_SUPPORT_HPP
