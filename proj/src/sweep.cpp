#include "voteagg/sweep.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "voteagg/errors.hpp"

namespace voteagg {

namespace {

double mean(const std::vector<double>& xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double sample_sd(const std::vector<double>& xs, double m) {
  if (xs.size() < 2) return 0.0;
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);  // shortest round-trip
  return std::string(buf, ptr);
}

}  // namespace

const SweepCell& SweepReport::cell(int k, Algorithm a) const {
  for (const SweepCell& c : cells)
    if (c.k == k && c.algorithm == a) return c;
  throw ValidationError("sweep has no cell for k=" + std::to_string(k) + ", algorithm " +
                        algorithm_name(a));
}

SweepReport sweep_annotators(const Dataset& d, const GoldLabels& gold,
                             const std::vector<Algorithm>& algorithms,
                             const AggregationConfig& cfg, int k_max, int repeats,
                             bool record_timing) {
  if (algorithms.empty()) throw ValidationError("sweep needs at least one algorithm");
  if (k_max < 1) throw ValidationError("k_max must be >= 1");
  if (repeats < 1) throw ValidationError("repeats must be >= 1");
  for (int q = 0; q < d.num_questions; ++q)
    if (static_cast<int>(d.votes[q].size()) < k_max)
      throw ValidationError("question " + d.question_names[q] + " has fewer than k_max votes; "
                            "filter the dataset first");

  SweepReport report;
  report.algorithms = algorithms;
  report.repeats = repeats;

  for (int k = 1; k <= k_max; ++k) {
    report.ks.push_back(k);
    std::vector<std::vector<Metrics>> per_alg(algorithms.size());
    for (int rep = 0; rep < repeats; ++rep) {
      const std::uint64_t run_seed = cfg.seed + static_cast<std::uint64_t>(rep);
      const Dataset sub = subsample_annotators(d, k, run_seed);
      for (std::size_t i = 0; i < algorithms.size(); ++i) {
        AggregationConfig run_cfg = cfg;
        run_cfg.algorithm = algorithms[i];
        run_cfg.seed = run_seed;
        const auto start = std::chrono::steady_clock::now();
        const AggregationResult result = run(sub, run_cfg);
        const double elapsed =
            record_timing
                ? std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()
                : 0.0;
        per_alg[i].push_back(evaluate(result, gold, elapsed));
      }
    }
    for (std::size_t i = 0; i < algorithms.size(); ++i) {
      SweepCell cell;
      cell.k = k;
      cell.algorithm = algorithms[i];
      cell.runs = per_alg[i];
      std::vector<double> acc, nll, iters, secs;
      cell.converged = true;
      for (const Metrics& m : cell.runs) {
        acc.push_back(m.accuracy);
        nll.push_back(m.neg_log_likelihood);
        iters.push_back(static_cast<double>(m.iterations));
        secs.push_back(m.seconds);
        cell.converged = cell.converged && m.converged;
      }
      cell.accuracy = mean(acc);
      cell.nll = mean(nll);
      cell.iterations = mean(iters);
      cell.seconds = mean(secs);
      cell.accuracy_sd = sample_sd(acc, cell.accuracy);
      cell.nll_sd = sample_sd(nll, cell.nll);
      cell.iterations_sd = sample_sd(iters, cell.iterations);
      cell.seconds_sd = sample_sd(secs, cell.seconds);
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

std::pair<double, double> speedup_report(const SweepReport& sweep, Algorithm baseline,
                                         Algorithm target) {
  double time_ratio = 0.0;
  double iter_ratio = 0.0;
  for (int k : sweep.ks) {
    const SweepCell& b = sweep.cell(k, baseline);
    const SweepCell& t = sweep.cell(k, target);
    time_ratio += b.seconds / t.seconds;
    iter_ratio += b.iterations / t.iterations;
  }
  const double n = static_cast<double>(sweep.ks.size());
  return {time_ratio / n, iter_ratio / n};
}

std::string sweep_to_csv(const SweepReport& sweep) {
  std::ostringstream out;
  out << "k,algorithm,accuracy,nll,iterations,seconds,converged\n";
  for (const SweepCell& c : sweep.cells)
    out << c.k << ',' << algorithm_name(c.algorithm) << ',' << format_double(c.accuracy) << ','
        << format_double(c.nll) << ',' << format_double(c.iterations) << ','
        << format_double(c.seconds) << ',' << (c.converged ? "true" : "false") << '\n';
  for (const ExternalCell& c : sweep.external)
    out << c.k << ',' << c.algorithm << ',' << format_double(c.accuracy) << ','
        << format_double(c.nll) << ',' << format_double(c.iterations) << ','
        << format_double(c.seconds) << ',' << (c.converged ? "true" : "false") << '\n';
  return out.str();
}

std::vector<ExternalCell> load_external_results(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::vector<ExternalCell> rows;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) fields.push_back(tok);
    if (!header_seen) {
      if (fields.size() != 7 || fields[0] != "k" || fields[1] != "algorithm")
        throw ParseError(path + ":" + std::to_string(lineno) +
                         ": expected header 'k,algorithm,accuracy,nll,iterations,seconds,"
                         "converged'");
      header_seen = true;
      continue;
    }
    if (fields.size() != 7)
      throw ParseError(path + ":" + std::to_string(lineno) + ": expected 7 fields");
    try {
      ExternalCell c;
      c.k = std::stoi(fields[0]);
      c.algorithm = fields[1];
      c.accuracy = std::stod(fields[2]);
      c.nll = std::stod(fields[3]);
      c.iterations = std::stod(fields[4]);
      c.seconds = std::stod(fields[5]);
      c.converged = fields[6] == "true" || fields[6] == "1";
      rows.push_back(std::move(c));
    } catch (const std::exception&) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": bad numeric field");
    }
  }
  if (!header_seen) throw ParseError(path + ": missing header line");
  return rows;
}

}  // namespace voteagg
