#ifndef VOTEAGG_SWEEP_HPP
#define VOTEAGG_SWEEP_HPP

#include <string>
#include <utility>
#include <vector>

#include "voteagg/aggregate.hpp"
#include "voteagg/dataset.hpp"
#include "voteagg/simulate.hpp"

namespace voteagg {

/// One (k, algorithm) cell of an annotator sweep, aggregated over repeats.
struct SweepCell {
  int k = 0;
  Algorithm algorithm = Algorithm::mv;
  double accuracy = 0.0;   // means over repeats
  double nll = 0.0;
  double iterations = 0.0;
  double seconds = 0.0;
  bool converged = false;  // true when every repeat converged
  double accuracy_sd = 0.0;
  double nll_sd = 0.0;
  double iterations_sd = 0.0;
  double seconds_sd = 0.0;
  std::vector<Metrics> runs;  // per-repeat detail
};

/// A row imported from an external implementation's results (IWMV, GLAD, ...),
/// carried alongside the native cells for comparison.
struct ExternalCell {
  int k = 0;
  std::string algorithm;
  double accuracy = 0.0;
  double nll = 0.0;
  double iterations = 0.0;
  double seconds = 0.0;
  bool converged = false;
};

struct SweepReport {
  std::vector<int> ks;
  std::vector<Algorithm> algorithms;
  int repeats = 1;
  std::vector<SweepCell> cells;  // ordered by (k, algorithm list order)
  std::vector<ExternalCell> external;

  const SweepCell& cell(int k, Algorithm a) const;
};

/// Runs every algorithm at k = 1..k_max annotators per question. At each
/// (k, repeat) the data is subsampled once and shared across algorithms, with
/// the same seed, so the methods see identical inputs. Repeat j shifts the
/// master seed by j. Every question in d must have at least k_max votes.
/// `record_timing` off writes zero seconds so reports stay byte-reproducible.
SweepReport sweep_annotators(const Dataset& d, const GoldLabels& gold,
                             const std::vector<Algorithm>& algorithms,
                             const AggregationConfig& cfg, int k_max, int repeats = 1,
                             bool record_timing = true);

/// Mean over k of time(baseline)/time(target) and
/// iterations(baseline)/iterations(target).
std::pair<double, double> speedup_report(const SweepReport& sweep, Algorithm baseline,
                                         Algorithm target);

/// Tidy CSV: `k,algorithm,accuracy,nll,iterations,seconds,converged`.
/// External rows, when present, follow the native cells.
std::string sweep_to_csv(const SweepReport& sweep);

/// Reads baseline results produced elsewhere, in the same tidy CSV layout the
/// sweep emits. Algorithm names are free-form (e.g. iwmv, glad).
std::vector<ExternalCell> load_external_results(const std::string& path);

}  // namespace voteagg

#endif  // VOTEAGG_SWEEP_HPP
