#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <vector>

#include "voteagg/errors.hpp"
#include "voteagg/simulate.hpp"
#include "voteagg/svg_plot.hpp"
#include "voteagg/sweep.hpp"

using namespace voteagg;

namespace {

SimulationConfig basic_cfg(int Q, int A, int C, int k, double acc, std::uint64_t seed) {
  SimulationConfig cfg;
  cfg.num_questions = Q;
  cfg.num_annotators = A;
  cfg.num_options = C;
  cfg.votes_per_question = k;
  cfg.diagonal_accuracy = acc;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("perfect annotators reproduce the gold labels exactly") {
  const auto [d, gold] = simulate(basic_cfg(50, 6, 3, 4, 1.0, 5));
  for (int q = 0; q < d.num_questions; ++q)
    for (const Vote& v : d.votes[q]) CHECK(v.option == gold.labels.at(q));
}

TEST_CASE("simulation is a pure function of the seed") {
  const auto [d1, g1] = simulate(basic_cfg(80, 7, 4, 5, 0.8, 9));
  const auto [d2, g2] = simulate(basic_cfg(80, 7, 4, 5, 0.8, 9));
  CHECK(d1.votes == d2.votes);
  CHECK(g1.labels == g2.labels);
  const auto [d3, g3] = simulate(basic_cfg(80, 7, 4, 5, 0.8, 10));
  CHECK(d1.votes != d3.votes);
}

TEST_CASE("uniform confusion leaves vote-gold agreement near chance") {
  const int Q = 4000, k = 5, C = 4;
  const auto [d, gold] = simulate(basic_cfg(Q, 10, C, k, 1.0 / C, 13));
  std::size_t agree = 0;
  for (int q = 0; q < Q; ++q)
    for (const Vote& v : d.votes[q])
      if (v.option == gold.labels.at(q)) ++agree;
  const double n = static_cast<double>(Q) * k;
  const double p = 1.0 / C;
  const double sigma = std::sqrt(p * (1 - p) / n);
  CHECK(std::abs(agree / n - p) <= 3 * sigma);
}

TEST_CASE("empirical confusion matches explicit tables within 0.02 per cell") {
  const int A = 4, C = 3, Q = 25000, k = 4;  // Q*k = 1e5 votes
  SimulationConfig cfg = basic_cfg(Q, A, C, k, -1.0, 99);
  cfg.confusion.resize(static_cast<std::size_t>(A) * C * C);
  // distinct, asymmetric rows per annotator
  for (int a = 0; a < A; ++a)
    for (int c = 0; c < C; ++c) {
      const double diag = 0.55 + 0.08 * a;
      const double rest = (1.0 - diag) / (C - 1);
      for (int l = 0; l < C; ++l)
        cfg.confusion[(static_cast<std::size_t>(a) * C + c) * C + l] = (l == c) ? diag : rest;
    }
  const auto [d, gold] = simulate(cfg);

  std::vector<double> counts(static_cast<std::size_t>(A) * C * C, 0.0);
  std::vector<double> denom(static_cast<std::size_t>(A) * C, 0.0);
  for (int q = 0; q < Q; ++q) {
    const int truth = gold.labels.at(q);
    for (const Vote& v : d.votes[q]) {
      counts[(static_cast<std::size_t>(v.annotator) * C + truth) * C + v.option] += 1.0;
      denom[static_cast<std::size_t>(v.annotator) * C + truth] += 1.0;
    }
  }
  for (int a = 0; a < A; ++a)
    for (int c = 0; c < C; ++c)
      for (int l = 0; l < C; ++l) {
        const double m = denom[static_cast<std::size_t>(a) * C + c];
        REQUIRE(m > 0);
        const double emp = counts[(static_cast<std::size_t>(a) * C + c) * C + l] / m;
        CHECK(std::abs(emp - cfg.confusion[(static_cast<std::size_t>(a) * C + c) * C + l]) <=
              0.02);
      }
}

TEST_CASE("bad simulation configs are rejected") {
  CHECK_THROWS_AS(simulate(basic_cfg(0, 5, 2, 3, 0.8, 0)), ValidationError);
  CHECK_THROWS_AS(simulate(basic_cfg(10, 5, 2, 6, 0.8, 0)), ValidationError);  // k > A
  CHECK_THROWS_AS(simulate(basic_cfg(10, 5, 1, 3, 0.8, 0)), ValidationError);  // C < 2
  SimulationConfig cfg = basic_cfg(10, 5, 2, 3, 0.8, 0);
  cfg.class_prior = {0.7, 0.7};
  CHECK_THROWS_AS(simulate(cfg), ValidationError);
}

TEST_CASE("evaluate computes the fraction of gold-covered questions matched") {
  const auto [d, gold] = simulate(basic_cfg(20, 5, 2, 3, 1.0, 3));
  AggregationConfig cfg;
  cfg.seed = 3;
  const AggregationResult res = run_fds(d, cfg);

  SUBCASE("perfect labels score 1.0") {
    const Metrics m = evaluate(res, gold, 0.25);
    CHECK(m.accuracy == 1.0);
    CHECK(m.iterations == res.iterations);
    CHECK(m.seconds == 0.25);
    CHECK(m.converged);
  }
  SUBCASE("3 of 4 covered questions right scores 0.75") {
    GoldLabels partial;
    for (int q = 0; q < 4; ++q) partial.labels[q] = gold.labels.at(q);
    // poison one entry
    partial.labels[0] = 1 - partial.labels[0];
    const Metrics m = evaluate(res, partial, 0.0);
    CHECK(m.accuracy == doctest::Approx(0.75));
  }
  SUBCASE("empty gold is an error") {
    CHECK_THROWS_AS(evaluate(res, GoldLabels{}, 0.0), ValidationError);
  }
}

TEST_CASE("sweep: every method coincides at k=1 and the report is reproducible") {
  const auto [d, gold] = simulate(basic_cfg(150, 8, 3, 5, 0.7, 7));
  AggregationConfig cfg;
  cfg.seed = 7;
  const std::vector<Algorithm> algs = {Algorithm::mv, Algorithm::ds, Algorithm::fds,
                                       Algorithm::hybrid};
  const SweepReport sweep =
      sweep_annotators(d, gold, algs, cfg, /*k_max=*/1, /*repeats=*/1, /*record_timing=*/false);

  const double mv_acc = sweep.cell(1, Algorithm::mv).accuracy;
  for (Algorithm a : algs) CHECK(sweep.cell(1, a).accuracy == doctest::Approx(mv_acc));

  const SweepReport again =
      sweep_annotators(d, gold, algs, cfg, 1, 1, /*record_timing=*/false);
  CHECK(sweep_to_csv(sweep) == sweep_to_csv(again));
}

TEST_CASE("sweep shares the subsample across algorithms at each k") {
  const auto [d, gold] = simulate(basic_cfg(200, 10, 3, 6, 0.75, 11));
  AggregationConfig cfg;
  cfg.seed = 11;
  const SweepReport sweep = sweep_annotators(d, gold, {Algorithm::fds, Algorithm::ds}, cfg, 4, 1,
                                             /*record_timing=*/false);
  CHECK(sweep.ks == std::vector<int>{1, 2, 3, 4});
  CHECK(sweep.cells.size() == 8);
  // identical seed across methods at k=1 means identical labels, so identical accuracy
  CHECK(sweep.cell(1, Algorithm::fds).accuracy ==
        doctest::Approx(sweep.cell(1, Algorithm::ds).accuracy));
}

TEST_CASE("speedup of a method over itself is exactly 1") {
  const auto [d, gold] = simulate(basic_cfg(100, 8, 3, 4, 0.7, 19));
  AggregationConfig cfg;
  cfg.seed = 19;
  const SweepReport sweep =
      sweep_annotators(d, gold, {Algorithm::fds}, cfg, 3, 1, /*record_timing=*/true);
  const auto [time_ratio, iter_ratio] = speedup_report(sweep, Algorithm::fds, Algorithm::fds);
  CHECK(time_ratio == doctest::Approx(1.0));
  CHECK(iter_ratio == doctest::Approx(1.0));
  CHECK_THROWS_AS(speedup_report(sweep, Algorithm::ds, Algorithm::fds), ValidationError);
}

TEST_CASE("informative annotators put the em methods at or above mv") {
  std::map<std::string, double> mean_acc = {{"mv", 0}, {"ds", 0}, {"fds", 0}, {"hybrid", 0}};
  const int seeds = 20;
  for (std::uint64_t seed = 0; seed < seeds; ++seed) {
    // Annotators of mixed quality, every diagonal above 1/C + 0.2, k = 5. The
    // reliability spread is what the confusion model can exploit over mv.
    const int A = 10, C = 3;
    SimulationConfig sim = basic_cfg(200, A, C, 5, -1.0, seed);
    sim.confusion.resize(static_cast<std::size_t>(A) * C * C);
    for (int a = 0; a < A; ++a) {
      const double diag = 0.55 + 0.40 * a / (A - 1);
      const double off = (1.0 - diag) / (C - 1);
      for (int c = 0; c < C; ++c)
        for (int l = 0; l < C; ++l)
          sim.confusion[(static_cast<std::size_t>(a) * C + c) * C + l] = (l == c) ? diag : off;
    }
    const auto [d, gold] = simulate(sim);
    for (Algorithm alg : {Algorithm::mv, Algorithm::ds, Algorithm::fds, Algorithm::hybrid}) {
      AggregationConfig cfg;
      cfg.seed = seed;
      cfg.algorithm = alg;
      const AggregationResult res = run(d, cfg);
      std::size_t ok = 0;
      for (const auto& [q, truth] : gold.labels)
        if (res.final_assignment.label_of(q) == truth) ++ok;
      mean_acc[algorithm_name(alg)] += static_cast<double>(ok) / gold.labels.size();
    }
  }
  CHECK(mean_acc["ds"] >= mean_acc["mv"]);
  CHECK(mean_acc["fds"] >= mean_acc["mv"]);
  CHECK(mean_acc["hybrid"] >= mean_acc["mv"]);
}

TEST_CASE("repeats produce means with standard deviations") {
  const auto [d, gold] = simulate(basic_cfg(120, 8, 3, 4, 0.7, 23));
  AggregationConfig cfg;
  cfg.seed = 23;
  const SweepReport sweep = sweep_annotators(d, gold, {Algorithm::fds}, cfg, 2, /*repeats=*/3,
                                             /*record_timing=*/false);
  for (const SweepCell& cell : sweep.cells) {
    CHECK(cell.runs.size() == 3);
    CHECK(cell.accuracy_sd >= 0.0);
    double m = 0;
    for (const Metrics& r : cell.runs) m += r.accuracy;
    CHECK(cell.accuracy == doctest::Approx(m / 3));
  }
}

TEST_CASE("external baseline rows merge into the sweep outputs") {
  const auto path = std::filesystem::temp_directory_path() / "iwmv_results.csv";
  {
    std::ofstream out(path);
    out << "k,algorithm,accuracy,nll,iterations,seconds,converged\n"
           "1,iwmv,0.71,1234.5,3,0.01,true\n"
           "2,iwmv,0.74,1200.25,4,0.02,true\n";
  }
  const auto rows = load_external_results(path.string());
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].algorithm == "iwmv");
  CHECK(rows[1].accuracy == doctest::Approx(0.74));

  const auto [d, gold] = simulate(basic_cfg(60, 6, 3, 4, 0.8, 31));
  AggregationConfig cfg;
  cfg.seed = 31;
  SweepReport sweep = sweep_annotators(d, gold, {Algorithm::mv}, cfg, 2, 1, false);
  sweep.external = rows;
  const std::string csv = sweep_to_csv(sweep);
  CHECK(csv.find("1,iwmv,0.71") != std::string::npos);
  CHECK(csv.find("2,iwmv,0.74") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("svg panels render a polyline per algorithm") {
  const auto [d, gold] = simulate(basic_cfg(60, 6, 3, 4, 0.8, 29));
  AggregationConfig cfg;
  cfg.seed = 29;
  const SweepReport sweep = sweep_annotators(d, gold, {Algorithm::mv, Algorithm::fds}, cfg, 3, 1,
                                             /*record_timing=*/false);
  std::vector<PlotSeries> series;
  for (Algorithm a : sweep.algorithms) {
    PlotSeries s;
    s.name = algorithm_name(a);
    for (int k : sweep.ks) {
      s.x.push_back(k);
      s.y.push_back(sweep.cell(k, a).accuracy);
    }
    series.push_back(s);
  }
  const std::string svg = render_line_chart("accuracy vs annotators", "k", "accuracy", series);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);
  CHECK(svg.find("mv") != std::string::npos);
  CHECK(svg.find("fds") != std::string::npos);
}
