#ifndef VOTEAGG_ESTIMATION_HPP
#define VOTEAGG_ESTIMATION_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "voteagg/dataset.hpp"

namespace voteagg {

/// Class marginals and per-annotator confusion tables.
/// error_rate(a, c, l) is the probability that annotator a chooses option l
/// when c is the true option. Rows an annotator was never seen with under the
/// current assignment are uniform (see m_step).
struct Parameters {
  int num_annotators = 0;
  int num_options = 0;
  std::vector<double> class_marginals;  // length C
  std::vector<double> error_rates;      // A x C x C, row-major

  double error_rate(int a, int c, int l) const {
    return error_rates[(static_cast<std::size_t>(a) * num_options + c) * num_options + l];
  }
  double& error_rate(int a, int c, int l) {
    return error_rates[(static_cast<std::size_t>(a) * num_options + c) * num_options + l];
  }

  void validate() const;  // row sums to 1 +- 1e-9, entries in [0,1]
};

/// Per-question label belief: a Q x C row-stochastic matrix. Hard mode keeps
/// each row one-hot.
struct Assignment {
  enum class Mode { hard, soft };
  Mode mode = Mode::hard;
  int num_questions = 0;
  int num_options = 0;
  std::vector<double> belief;  // row-major Q x C

  double at(int q, int c) const {
    return belief[static_cast<std::size_t>(q) * num_options + c];
  }
  double& at(int q, int c) {
    return belief[static_cast<std::size_t>(q) * num_options + c];
  }

  bool is_hard() const { return mode == Mode::hard; }

  /// Hard mode only: the option whose entry is 1.
  int label_of(int q) const;
  std::vector<int> labels() const;

  static Assignment hard_from_labels(const std::vector<int>& labels, int num_options);

  void validate() const;
};

/// First E and C step in one: each question takes the option with the most
/// votes, ties broken by a uniform draw from the `mv-ties` stream of `seed`.
Assignment majority_vote(const Dataset& d, std::uint64_t seed);

/// Maximum likelihood parameters given an assignment. With a hard assignment
/// every numerator and denominator is an integer count before division.
/// Confusion rows with a zero denominator are set to the uniform row 1/C;
/// `alpha` adds optional additive smoothing to the confusion counts.
Parameters m_step(const Dataset& d, const Assignment& t, double alpha = 0.0);

/// Posterior label distribution per question, computed in log space with a
/// log-sum-exp normalization. Rows whose every class underflows to log-zero
/// are set uniform; `degenerate_rows` counts them when given.
Assignment e_step_soft(const Dataset& d, const Parameters& params,
                       std::size_t* degenerate_rows = nullptr);

/// Hardens a soft assignment at the per-row argmax; exact ties go to the
/// lowest option id so EM trajectories stay deterministic.
Assignment c_step(const Assignment& soft);

/// Observed-data log likelihood, marginalized over classes:
/// sum_q log sum_c p[c] * prod_{(a,l) in votes(q)} pi[a][c][l].
/// Natural log; -inf is a legal return when some question has zero joint mass
/// for every class.
double log_likelihood(const Dataset& d, const Parameters& params);

/// Classification maximum likelihood criterion of a hard assignment:
/// sum_q ( log p[c_q] + sum_{(a,l) in votes(q)} log pi[a][c_q][l] ).
/// This is the quantity the hard EM drives upward. -inf is legal.
double cml_criterion(const Dataset& d, const Assignment& t, const Parameters& params);

/// L1 distance between two equally sized probability vectors.
double l1_delta(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace voteagg

#endif  // VOTEAGG_ESTIMATION_HPP
