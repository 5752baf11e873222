#include "voteagg/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "voteagg/errors.hpp"
#include "voteagg/rng.hpp"

namespace voteagg {

namespace {
constexpr double kRowSumTolerance = 1e-9;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_shapes(const Dataset& d, const Assignment& t) {
  if (t.num_questions != d.num_questions || t.num_options != d.num_options)
    throw std::invalid_argument("assignment shape does not match dataset");
}

void check_shapes(const Dataset& d, const Parameters& params) {
  if (params.num_annotators != d.num_annotators || params.num_options != d.num_options)
    throw std::invalid_argument("parameter shape does not match dataset");
}
}  // namespace

void Parameters::validate() const {
  double total = 0.0;
  for (double p : class_marginals) {
    if (p < 0.0 || p > 1.0) throw ValidationError("class marginal outside [0,1]");
    total += p;
  }
  if (std::abs(total - 1.0) > kRowSumTolerance)
    throw ValidationError("class marginals do not sum to 1");
  for (int a = 0; a < num_annotators; ++a) {
    for (int c = 0; c < num_options; ++c) {
      double row = 0.0;
      for (int l = 0; l < num_options; ++l) {
        const double v = error_rate(a, c, l);
        if (v < 0.0 || v > 1.0) throw ValidationError("error rate outside [0,1]");
        row += v;
      }
      if (std::abs(row - 1.0) > kRowSumTolerance)
        throw ValidationError("confusion row does not sum to 1");
    }
  }
}

int Assignment::label_of(int q) const {
  if (!is_hard()) throw std::invalid_argument("label_of requires a hard assignment");
  for (int c = 0; c < num_options; ++c)
    if (at(q, c) == 1.0) return c;
  throw std::invalid_argument("hard assignment row has no unit entry");
}

std::vector<int> Assignment::labels() const {
  std::vector<int> out(num_questions);
  for (int q = 0; q < num_questions; ++q) out[q] = label_of(q);
  return out;
}

Assignment Assignment::hard_from_labels(const std::vector<int>& labels, int num_options) {
  Assignment t;
  t.mode = Mode::hard;
  t.num_questions = static_cast<int>(labels.size());
  t.num_options = num_options;
  t.belief.assign(static_cast<std::size_t>(t.num_questions) * num_options, 0.0);
  for (int q = 0; q < t.num_questions; ++q) t.at(q, labels[q]) = 1.0;
  return t;
}

void Assignment::validate() const {
  for (int q = 0; q < num_questions; ++q) {
    double row = 0.0;
    int ones = 0;
    for (int c = 0; c < num_options; ++c) {
      const double v = at(q, c);
      if (v < 0.0) throw ValidationError("negative belief entry");
      if (v == 1.0) ++ones;
      row += v;
    }
    if (std::abs(row - 1.0) > kRowSumTolerance)
      throw ValidationError("belief row does not sum to 1");
    if (is_hard() && ones != 1) throw ValidationError("hard row is not one-hot");
  }
}

Assignment majority_vote(const Dataset& d, std::uint64_t seed) {
  Rng rng = substream(seed, "mv-ties");
  std::vector<int> labels(d.num_questions);
  std::vector<int> counts(d.num_options);
  std::vector<int> tied;
  for (int q = 0; q < d.num_questions; ++q) {
    std::fill(counts.begin(), counts.end(), 0);
    for (const Vote& v : d.votes[q]) ++counts[v.option];
    const int best = *std::max_element(counts.begin(), counts.end());
    tied.clear();
    for (int c = 0; c < d.num_options; ++c)
      if (counts[c] == best) tied.push_back(c);
    labels[q] = tied.size() == 1
                    ? tied[0]
                    : tied[rng.bounded(static_cast<std::uint64_t>(tied.size()))];
  }
  return Assignment::hard_from_labels(labels, d.num_options);
}

Parameters m_step(const Dataset& d, const Assignment& t, double alpha) {
  check_shapes(d, t);
  if (alpha < 0.0) throw std::invalid_argument("alpha must be >= 0");

  Parameters params;
  params.num_annotators = d.num_annotators;
  params.num_options = d.num_options;
  const int C = d.num_options;

  // p[c] = sum_q T[q][c] / Q
  params.class_marginals.assign(C, 0.0);
  for (int q = 0; q < d.num_questions; ++q)
    for (int c = 0; c < C; ++c) params.class_marginals[c] += t.at(q, c);
  for (int c = 0; c < C; ++c) params.class_marginals[c] /= d.num_questions;

  // pi[a][c][l] = sum_q T[q][c] * [a chose l on q], normalized per (a, c) row.
  params.error_rates.assign(static_cast<std::size_t>(d.num_annotators) * C * C, 0.0);
  for (int q = 0; q < d.num_questions; ++q)
    for (const Vote& v : d.votes[q])
      for (int c = 0; c < C; ++c) params.error_rate(v.annotator, c, v.option) += t.at(q, c);

  for (int a = 0; a < d.num_annotators; ++a) {
    for (int c = 0; c < C; ++c) {
      double denom = 0.0;
      for (int l = 0; l < C; ++l) denom += params.error_rate(a, c, l);
      if (denom == 0.0 && alpha == 0.0) {
        // Annotator never seen with this true class: uninformative row.
        for (int l = 0; l < C; ++l) params.error_rate(a, c, l) = 1.0 / C;
      } else {
        denom += C * alpha;
        for (int l = 0; l < C; ++l)
          params.error_rate(a, c, l) = (params.error_rate(a, c, l) + alpha) / denom;
      }
    }
  }
  return params;
}

Assignment e_step_soft(const Dataset& d, const Parameters& params,
                       std::size_t* degenerate_rows) {
  check_shapes(d, params);
  const int C = d.num_options;

  std::vector<double> log_p(C);
  for (int c = 0; c < C; ++c) log_p[c] = std::log(params.class_marginals[c]);
  std::vector<double> log_pi(params.error_rates.size());
  for (std::size_t i = 0; i < log_pi.size(); ++i) log_pi[i] = std::log(params.error_rates[i]);
  const auto log_pi_at = [&](int a, int c, int l) {
    return log_pi[(static_cast<std::size_t>(a) * C + c) * C + l];
  };

  Assignment t;
  t.mode = Assignment::Mode::soft;
  t.num_questions = d.num_questions;
  t.num_options = C;
  t.belief.resize(static_cast<std::size_t>(d.num_questions) * C);

  std::size_t degenerate = 0;
  std::vector<double> joint(C);
  for (int q = 0; q < d.num_questions; ++q) {
    for (int c = 0; c < C; ++c) joint[c] = log_p[c];
    for (const Vote& v : d.votes[q])
      for (int c = 0; c < C; ++c) joint[c] += log_pi_at(v.annotator, c, v.option);

    const double m = *std::max_element(joint.begin(), joint.end());
    if (m == kNegInf) {
      ++degenerate;
      for (int c = 0; c < C; ++c) t.at(q, c) = 1.0 / C;
      continue;
    }
    double z = 0.0;
    for (int c = 0; c < C; ++c) z += std::exp(joint[c] - m);
    for (int c = 0; c < C; ++c) t.at(q, c) = std::exp(joint[c] - m) / z;
  }
  if (degenerate_rows) *degenerate_rows = degenerate;
  return t;
}

Assignment c_step(const Assignment& soft) {
  std::vector<int> labels(soft.num_questions);
  for (int q = 0; q < soft.num_questions; ++q) {
    int best = 0;
    for (int c = 1; c < soft.num_options; ++c)
      if (soft.at(q, c) > soft.at(q, best)) best = c;  // ties keep the lowest id
    labels[q] = best;
  }
  return Assignment::hard_from_labels(labels, soft.num_options);
}

double log_likelihood(const Dataset& d, const Parameters& params) {
  check_shapes(d, params);
  const int C = d.num_options;
  std::vector<double> log_p(C);
  for (int c = 0; c < C; ++c) log_p[c] = std::log(params.class_marginals[c]);
  std::vector<double> log_pi(params.error_rates.size());
  for (std::size_t i = 0; i < log_pi.size(); ++i) log_pi[i] = std::log(params.error_rates[i]);
  const auto log_pi_at = [&](int a, int c, int l) {
    return log_pi[(static_cast<std::size_t>(a) * C + c) * C + l];
  };

  double total = 0.0;
  std::vector<double> joint(C);
  for (int q = 0; q < d.num_questions; ++q) {
    for (int c = 0; c < C; ++c) joint[c] = log_p[c];
    for (const Vote& v : d.votes[q])
      for (int c = 0; c < C; ++c) joint[c] += log_pi_at(v.annotator, c, v.option);
    const double m = *std::max_element(joint.begin(), joint.end());
    if (m == kNegInf) return kNegInf;
    double z = 0.0;
    for (int c = 0; c < C; ++c) z += std::exp(joint[c] - m);
    total += m + std::log(z);
  }
  return total;
}

double cml_criterion(const Dataset& d, const Assignment& t, const Parameters& params) {
  check_shapes(d, t);
  check_shapes(d, params);
  if (!t.is_hard()) throw std::invalid_argument("cml_criterion requires a hard assignment");

  double total = 0.0;
  for (int q = 0; q < d.num_questions; ++q) {
    const int c = t.label_of(q);
    total += std::log(params.class_marginals[c]);
    for (const Vote& v : d.votes[q]) total += std::log(params.error_rate(v.annotator, c, v.option));
  }
  return total;
}

double l1_delta(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("marginal vectors differ in length");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

}  // namespace voteagg
