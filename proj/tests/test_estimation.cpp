#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <vector>

#include "voteagg/dataset.hpp"
#include "voteagg/estimation.hpp"

using namespace voteagg;

namespace {

Dataset make_dataset(int num_options, const std::vector<std::vector<Vote>>& votes,
                     int num_annotators) {
  Dataset d;
  d.num_questions = static_cast<int>(votes.size());
  d.num_annotators = num_annotators;
  d.num_options = num_options;
  d.votes = votes;
  for (int q = 0; q < d.num_questions; ++q) d.question_names.push_back("q" + std::to_string(q));
  for (int a = 0; a < num_annotators; ++a) d.annotator_names.push_back("a" + std::to_string(a));
  for (int c = 0; c < num_options; ++c) d.option_names.push_back(std::to_string(c));
  d.validate();
  return d;
}

Parameters make_params(int A, int C, const std::vector<double>& p,
                       const std::vector<double>& pi) {
  Parameters params;
  params.num_annotators = A;
  params.num_options = C;
  params.class_marginals = p;
  params.error_rates = pi;
  params.validate();
  return params;
}

// Direct linear-space posterior, the independent oracle for e_step_soft.
std::vector<double> direct_posterior(const Dataset& d, const Parameters& params, int q) {
  const int C = d.num_options;
  std::vector<double> row(C);
  for (int c = 0; c < C; ++c) {
    double joint = params.class_marginals[c];
    for (const Vote& v : d.votes[q]) joint *= params.error_rate(v.annotator, c, v.option);
    row[c] = joint;
  }
  double z = 0.0;
  for (double v : row) z += v;
  if (z > 0.0)
    for (double& v : row) v /= z;
  else
    for (double& v : row) v = 1.0 / C;
  return row;
}

// Random but well-formed parameters for property tests.
Parameters random_params(int A, int C, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.05, 1.0);
  Parameters params;
  params.num_annotators = A;
  params.num_options = C;
  params.class_marginals.resize(C);
  double z = 0.0;
  for (int c = 0; c < C; ++c) z += params.class_marginals[c] = unif(rng);
  for (int c = 0; c < C; ++c) params.class_marginals[c] /= z;
  params.error_rates.resize(static_cast<std::size_t>(A) * C * C);
  for (int a = 0; a < A; ++a)
    for (int c = 0; c < C; ++c) {
      double rz = 0.0;
      for (int l = 0; l < C; ++l) rz += params.error_rate(a, c, l) = unif(rng);
      for (int l = 0; l < C; ++l) params.error_rate(a, c, l) /= rz;
    }
  return params;
}

Dataset random_dataset(int Q, int A, int C, std::mt19937_64& rng) {
  std::vector<std::vector<Vote>> votes(Q);
  for (int q = 0; q < Q; ++q) {
    // each annotator answers with probability 2/3, at least one guaranteed
    for (int a = 0; a < A; ++a)
      if (rng() % 3 != 0) votes[q].push_back({a, static_cast<int>(rng() % C)});
    if (votes[q].empty()) votes[q].push_back({0, static_cast<int>(rng() % C)});
  }
  return make_dataset(C, votes, A);
}

}  // namespace

TEST_CASE("majority vote picks the plurality option") {
  const Dataset d = make_dataset(
      3, {{{0, 1}, {1, 1}, {2, 1}}, {{0, 0}, {1, 0}, {2, 1}, {3, 2}}}, 4);
  const Assignment t = majority_vote(d, 0);
  CHECK(t.label_of(0) == 1);  // unanimity
  CHECK(t.label_of(1) == 0);  // 2 > 1 = 1
}

TEST_CASE("majority vote breaks ties with the seed, reproducibly") {
  const Dataset d = make_dataset(2, {{{0, 0}, {1, 1}}}, 2);
  std::set<int> outcomes;
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    const Assignment a = majority_vote(d, seed);
    const Assignment b = majority_vote(d, seed);
    CHECK(a.belief == b.belief);
    outcomes.insert(a.label_of(0));
  }
  CHECK(outcomes == std::set<int>{0, 1});  // both sides of the tie reachable
}

TEST_CASE("m_step on the two-question hand instance") {
  // q0 -> class 0, q1 -> class 1; annotator 0 voted 0 on both.
  const Dataset d = make_dataset(2, {{{0, 0}}, {{0, 0}}}, 1);
  const Assignment t = Assignment::hard_from_labels({0, 1}, 2);
  const Parameters params = m_step(d, t);
  CHECK(params.class_marginals[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(params.class_marginals[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(params.error_rate(0, 0, 0) == 1.0);
  CHECK(params.error_rate(0, 0, 1) == 0.0);
  CHECK(params.error_rate(0, 1, 0) == 1.0);
  CHECK(params.error_rate(0, 1, 1) == 0.0);
}

TEST_CASE("m_step: consistent annotator yields the identity confusion") {
  const Dataset d = make_dataset(2, {{{0, 0}}, {{0, 1}}, {{0, 1}}}, 1);
  const Assignment t = Assignment::hard_from_labels({0, 1, 1}, 2);
  const Parameters params = m_step(d, t);
  CHECK(params.error_rate(0, 0, 0) == 1.0);
  CHECK(params.error_rate(0, 1, 1) == 1.0);
  CHECK(params.class_marginals[0] == doctest::Approx(1.0 / 3).epsilon(1e-12));
}

TEST_CASE("m_step: unseen true class gives the uniform row") {
  const Dataset d = make_dataset(3, {{{0, 0}}, {{1, 1}}}, 2);
  const Assignment t = Assignment::hard_from_labels({0, 1}, 3);
  const Parameters params = m_step(d, t);
  for (int l = 0; l < 3; ++l) {
    CHECK(params.error_rate(0, 2, l) == doctest::Approx(1.0 / 3));  // class 2 never assigned
    CHECK(params.error_rate(0, 1, l) == doctest::Approx(1.0 / 3));  // a0 never saw class 1
  }
}

TEST_CASE("m_step with hard labels is exact integer counting") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int Q = 3 + static_cast<int>(rng() % 8);
    const int A = 1 + static_cast<int>(rng() % 3);
    const int C = 2 + static_cast<int>(rng() % 2);
    const Dataset d = random_dataset(Q, A, C, rng);
    std::vector<int> labels(Q);
    for (int q = 0; q < Q; ++q) labels[q] = static_cast<int>(rng() % C);
    const Parameters params = m_step(d, Assignment::hard_from_labels(labels, C));

    // recompute with integer counters and exact division
    std::vector<long> class_count(C, 0);
    for (int q = 0; q < Q; ++q) ++class_count[labels[q]];
    for (int c = 0; c < C; ++c)
      CHECK(params.class_marginals[c] == static_cast<double>(class_count[c]) / Q);
    for (int a = 0; a < A; ++a)
      for (int c = 0; c < C; ++c) {
        std::vector<long> n(C, 0);
        long denom = 0;
        for (int q = 0; q < Q; ++q)
          for (const Vote& v : d.votes[q])
            if (v.annotator == a && labels[q] == c) {
              ++n[v.option];
              ++denom;
            }
        for (int l = 0; l < C; ++l) {
          const double expected =
              denom == 0 ? 1.0 / C : static_cast<double>(n[l]) / static_cast<double>(denom);
          CHECK(params.error_rate(a, c, l) == expected);
        }
      }
  }
}

TEST_CASE("e_step on the single-vote hand instance") {
  const Dataset d = make_dataset(2, {{{0, 0}}}, 1);
  const Parameters params = make_params(1, 2, {0.6, 0.4}, {0.9, 0.1, 0.2, 0.8});
  const Assignment t = e_step_soft(d, params);
  // joint = (0.6*0.9, 0.4*0.2) = (0.54, 0.08), normalized
  CHECK(t.at(0, 0) == doctest::Approx(0.870968).epsilon(1e-6));
  CHECK(t.at(0, 1) == doctest::Approx(0.129032).epsilon(1e-6));

  SUBCASE("log likelihood is log(0.54 + 0.08)") {
    CHECK(log_likelihood(d, params) == doctest::Approx(std::log(0.62)).epsilon(1e-12));
    CHECK(log_likelihood(d, params) == doctest::Approx(-0.478036).epsilon(1e-6));
  }
  SUBCASE("cml at class 0 is log(0.54)") {
    const Assignment hard = Assignment::hard_from_labels({0}, 2);
    CHECK(cml_criterion(d, hard, params) == doctest::Approx(std::log(0.54)).epsilon(1e-12));
    CHECK(cml_criterion(d, hard, params) == doctest::Approx(-0.616186).epsilon(1e-6));
  }
  SUBCASE("c_step hardens at the argmax") {
    CHECK(c_step(t).label_of(0) == 0);
    Assignment flipped = t;
    flipped.at(0, 0) = 0.129032;
    flipped.at(0, 1) = 0.870968;
    CHECK(c_step(flipped).label_of(0) == 1);
  }
}

TEST_CASE("uniform parameters give uniform posteriors") {
  const Dataset d = make_dataset(2, {{{0, 0}, {1, 1}}, {{0, 1}}}, 2);
  const Parameters params =
      make_params(2, 2, {0.5, 0.5}, {0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5});
  const Assignment t = e_step_soft(d, params);
  for (int q = 0; q < 2; ++q)
    for (int c = 0; c < 2; ++c) CHECK(t.at(q, c) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("identity confusion rows pin the posterior to the unanimous vote") {
  const Dataset d = make_dataset(2, {{{0, 1}, {1, 1}}}, 2);
  const Parameters params =
      make_params(2, 2, {0.5, 0.5}, {1, 0, 0, 1, 1, 0, 0, 1});
  const Assignment t = e_step_soft(d, params);
  CHECK(t.at(0, 1) == 1.0);
  CHECK(t.at(0, 0) == 0.0);
}

TEST_CASE("degenerate rows go uniform and are counted") {
  // Annotator votes an option that has zero probability under every class.
  const Dataset d = make_dataset(2, {{{0, 1}}}, 1);
  const Parameters params = make_params(1, 2, {0.5, 0.5}, {1, 0, 1, 0});
  std::size_t degenerate = 0;
  const Assignment t = e_step_soft(d, params, &degenerate);
  CHECK(degenerate == 1);
  CHECK(t.at(0, 0) == doctest::Approx(0.5));
  CHECK(t.at(0, 1) == doctest::Approx(0.5));
  CHECK(log_likelihood(d, params) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("c_step resolves exact ties toward the lowest option id") {
  Assignment soft;
  soft.mode = Assignment::Mode::soft;
  soft.num_questions = 1;
  soft.num_options = 3;
  soft.belief = {0.25, 0.5, 0.25};
  CHECK(c_step(soft).label_of(0) == 1);
  soft.belief = {0.5, 0.5, 0.0};
  CHECK(c_step(soft).label_of(0) == 0);
}

TEST_CASE("probability-1 model scores zero log likelihood and zero cml") {
  const Dataset d = make_dataset(2, {{{0, 1}}, {{0, 1}}}, 1);
  const Parameters params = make_params(1, 2, {0.0, 1.0}, {0.5, 0.5, 0.0, 1.0});
  CHECK(log_likelihood(d, params) == 0.0);
  const Assignment t = Assignment::hard_from_labels({1, 1}, 2);
  CHECK(cml_criterion(d, t, params) == 0.0);
}

TEST_CASE("oracle equivalence: log-space e_step matches the direct product") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const int Q = 1 + static_cast<int>(rng() % 6);
    const int A = 1 + static_cast<int>(rng() % 3);
    const int C = 2 + static_cast<int>(rng() % 2);
    const Dataset d = random_dataset(Q, A, C, rng);
    const Parameters params = random_params(A, C, rng);
    const Assignment t = e_step_soft(d, params);
    for (int q = 0; q < Q; ++q) {
      const auto expected = direct_posterior(d, params, q);
      for (int c = 0; c < C; ++c) CHECK(t.at(q, c) == doctest::Approx(expected[c]).epsilon(1e-9));
    }
  }
}

TEST_CASE("cml never exceeds the marginal log likelihood") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int Q = 1 + static_cast<int>(rng() % 5);
    const int A = 1 + static_cast<int>(rng() % 3);
    const int C = 2 + static_cast<int>(rng() % 2);
    const Dataset d = random_dataset(Q, A, C, rng);
    const Parameters params = random_params(A, C, rng);
    std::vector<int> labels(Q);
    for (int q = 0; q < Q; ++q) labels[q] = static_cast<int>(rng() % C);
    const Assignment t = Assignment::hard_from_labels(labels, C);
    CHECK(cml_criterion(d, t, params) <= log_likelihood(d, params) + 1e-12);
  }
}

TEST_CASE("c_step output maximizes cml over all hard assignments") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const int Q = 1 + static_cast<int>(rng() % 4);
    const int A = 1 + static_cast<int>(rng() % 3);
    const int C = 2 + static_cast<int>(rng() % 2);
    const Dataset d = random_dataset(Q, A, C, rng);
    const Parameters params = random_params(A, C, rng);
    const Assignment chosen = c_step(e_step_soft(d, params));
    const double achieved = cml_criterion(d, chosen, params);

    double best = -std::numeric_limits<double>::infinity();
    std::vector<int> labels(Q, 0);
    long total = 1;
    for (int q = 0; q < Q; ++q) total *= C;
    for (long code = 0; code < total; ++code) {
      long rest = code;
      for (int q = 0; q < Q; ++q) {
        labels[q] = static_cast<int>(rest % C);
        rest /= C;
      }
      best = std::max(best, cml_criterion(d, Assignment::hard_from_labels(labels, C), params));
    }
    CHECK(achieved == doctest::Approx(best).epsilon(1e-9));
  }
}

TEST_CASE("label permutation equivariance on tie-free instances") {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 30; ++trial) {
    const int Q = 2 + static_cast<int>(rng() % 5);
    const int A = 1 + static_cast<int>(rng() % 3);
    const int C = 3;
    const Dataset d = random_dataset(Q, A, C, rng);
    const Assignment mv = majority_vote(d, 5);

    std::vector<int> perm = {2, 0, 1};
    Dataset pd = d;
    for (auto& qs : pd.votes)
      for (Vote& v : qs) v.option = perm[v.option];

    const Parameters params = m_step(d, mv);
    Assignment pmv = mv;
    for (int q = 0; q < Q; ++q)
      for (int c = 0; c < C; ++c) pmv.at(q, perm[c]) = mv.at(q, c);
    const Parameters pparams = m_step(pd, pmv);

    for (int c = 0; c < C; ++c)
      CHECK(pparams.class_marginals[perm[c]] ==
            doctest::Approx(params.class_marginals[c]).epsilon(1e-12));
    for (int a = 0; a < A; ++a)
      for (int c = 0; c < C; ++c)
        for (int l = 0; l < C; ++l)
          CHECK(pparams.error_rate(a, perm[c], perm[l]) ==
                doctest::Approx(params.error_rate(a, c, l)).epsilon(1e-12));

    const Assignment e = e_step_soft(d, params);
    const Assignment pe = e_step_soft(pd, pparams);
    bool tie_free = true;
    for (int q = 0; q < Q && tie_free; ++q) {
      for (int c = 0; c < C; ++c)
        for (int c2 = c + 1; c2 < C; ++c2)
          if (std::abs(e.at(q, c) - e.at(q, c2)) < 1e-12) tie_free = false;
    }
    for (int q = 0; q < Q; ++q)
      for (int c = 0; c < C; ++c)
        CHECK(pe.at(q, perm[c]) == doctest::Approx(e.at(q, c)).epsilon(1e-9));
    if (tie_free) {
      const Assignment h = c_step(e);
      const Assignment ph = c_step(pe);
      for (int q = 0; q < Q; ++q) CHECK(ph.label_of(q) == perm[h.label_of(q)]);
    }
  }
}

TEST_CASE("normalization invariants hold on random instances") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int Q = 2 + static_cast<int>(rng() % 10);
    const int A = 1 + static_cast<int>(rng() % 4);
    const int C = 2 + static_cast<int>(rng() % 3);
    const Dataset d = random_dataset(Q, A, C, rng);
    const Assignment mv = majority_vote(d, trial);
    mv.validate();
    const Parameters params = m_step(d, mv);
    params.validate();
    const Assignment soft = e_step_soft(d, params);
    soft.validate();
    c_step(soft).validate();
  }
}

TEST_CASE("shape mismatches are rejected") {
  const Dataset d = make_dataset(2, {{{0, 0}}}, 1);
  const Assignment wrong = Assignment::hard_from_labels({0, 1}, 2);
  CHECK_THROWS_AS(m_step(d, wrong), std::invalid_argument);
  const Assignment soft = e_step_soft(d, m_step(d, Assignment::hard_from_labels({0}, 2)));
  CHECK_THROWS_AS(cml_criterion(d, soft, m_step(d, Assignment::hard_from_labels({0}, 2))),
                  std::invalid_argument);
  CHECK_THROWS_AS(l1_delta({0.5, 0.5}, {1.0}), std::invalid_argument);
}
