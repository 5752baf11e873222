#include "voteagg/aggregate.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "voteagg/errors.hpp"

namespace voteagg {

namespace {
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double pi_l1(const Parameters& a, const Parameters& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.error_rates.size(); ++i)
    d += std::abs(a.error_rates[i] - b.error_rates[i]);
  return d;
}
}  // namespace

Algorithm algorithm_from_name(const std::string& name) {
  if (name == "mv") return Algorithm::mv;
  if (name == "ds") return Algorithm::ds;
  if (name == "fds") return Algorithm::fds;
  if (name == "hybrid") return Algorithm::hybrid;
  throw ValidationError("unknown algorithm '" + name + "'");
}

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::mv: return "mv";
    case Algorithm::ds: return "ds";
    case Algorithm::fds: return "fds";
    case Algorithm::hybrid: return "hybrid";
  }
  throw std::invalid_argument("bad algorithm enum");
}

void AggregationConfig::validate() const {
  if (!(marginal_tolerance > 0.0 && marginal_tolerance < 1.0))
    throw ValidationError("marginal tolerance must be in (0, 1)");
  if (!(hybrid_gamma > 0.0 && hybrid_gamma < 1.0))
    throw ValidationError("hybrid gamma must be in (0, 1)");
  if (max_iterations < 1) throw ValidationError("max iterations must be >= 1");
  if (alpha < 0.0) throw ValidationError("alpha must be >= 0");
}

bool check_convergence(const std::vector<double>& p_prev, const std::vector<double>& p_cur,
                       double tol) {
  return l1_delta(p_prev, p_cur) < tol;
}

AggregationResult run_mv(const Dataset& d, const AggregationConfig& cfg) {
  cfg.validate();
  d.validate();
  AggregationResult res;
  res.final_assignment = majority_vote(d, cfg.seed);
  res.parameters = m_step(d, res.final_assignment, cfg.alpha);
  res.iterations = 1;
  res.converged = true;
  res.trace.push_back({kNan, -log_likelihood(d, res.parameters),
                       cml_criterion(d, res.final_assignment, res.parameters), kNan});
  return res;
}

AggregationResult run_fds(const Dataset& d, const AggregationConfig& cfg) {
  cfg.validate();
  d.validate();
  AggregationResult res;

  Assignment t = majority_vote(d, cfg.seed);  // first E and C step
  std::vector<double> prev_p;
  Parameters prev_params;
  for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
    Parameters params = m_step(d, t, cfg.alpha);
    std::size_t degenerate = 0;
    Assignment next = c_step(e_step_soft(d, params, &degenerate));
    res.degenerate_rows += degenerate;

    const bool first = prev_p.empty();
    res.trace.push_back({first ? kNan : l1_delta(prev_p, params.class_marginals),
                         -log_likelihood(d, params), cml_criterion(d, next, params),
                         first ? kNan : pi_l1(prev_params, params)});

    const bool marginals_settled =
        !first && check_convergence(prev_p, params.class_marginals, cfg.marginal_tolerance);
    const bool assignment_stable = next.belief == t.belief;

    res.iterations = iter;
    prev_p = params.class_marginals;
    prev_params = std::move(params);
    t = std::move(next);
    if (marginals_settled || assignment_stable) {
      res.converged = true;
      break;
    }
  }
  if (!res.converged)
    res.warnings.push_back("fds did not converge within " +
                           std::to_string(cfg.max_iterations) + " iterations");
  res.parameters = std::move(prev_params);
  res.final_assignment = std::move(t);
  return res;
}

AggregationResult run_ds(const Dataset& d, const AggregationConfig& cfg) {
  cfg.validate();
  d.validate();
  AggregationResult res;

  Assignment t = majority_vote(d, cfg.seed);  // hard start, per the MV initialization
  std::vector<double> prev_p;
  Parameters prev_params;
  for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
    Parameters params = m_step(d, t, cfg.alpha);
    std::size_t degenerate = 0;
    t = e_step_soft(d, params, &degenerate);
    res.degenerate_rows += degenerate;

    const bool first = prev_p.empty();
    res.trace.push_back({first ? kNan : l1_delta(prev_p, params.class_marginals),
                         -log_likelihood(d, params), kNan,
                         first ? kNan : pi_l1(prev_params, params)});
    res.iterations = iter;

    const bool settled =
        !first && check_convergence(prev_p, params.class_marginals, cfg.marginal_tolerance);
    prev_p = params.class_marginals;
    prev_params = std::move(params);
    if (settled) {
      res.converged = true;
      break;
    }
  }
  if (!res.converged)
    res.warnings.push_back("ds did not converge within " + std::to_string(cfg.max_iterations) +
                           " iterations");
  res.parameters = std::move(prev_params);
  res.final_assignment = c_step(t);
  res.soft_posteriors = std::move(t);
  return res;
}

AggregationResult run_hybrid(const Dataset& d, const AggregationConfig& cfg) {
  cfg.validate();
  d.validate();
  AggregationResult res;

  Assignment t = majority_vote(d, cfg.seed);
  bool ds_phase = true;
  std::vector<double> prev_p;
  Parameters prev_params;
  std::vector<double> prev_hard_labels;  // belief of the last hard assignment, FDS phase

  for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
    Parameters params = m_step(d, t, cfg.alpha);
    std::size_t degenerate = 0;
    const bool first = prev_p.empty();
    res.iterations = iter;

    if (ds_phase) {
      t = e_step_soft(d, params, &degenerate);
      res.degenerate_rows += degenerate;
      res.trace.push_back({first ? kNan : l1_delta(prev_p, params.class_marginals),
                           -log_likelihood(d, params), kNan,
                           first ? kNan : pi_l1(prev_params, params)});
      // Switch once the running marginal delta drops below gamma; the first
      // iteration has no predecessor, so the check starts at iteration 2.
      if (!first && l1_delta(prev_p, params.class_marginals) < cfg.hybrid_gamma) {
        ds_phase = false;
        res.switch_iteration = iter;
      } else if (iter == cfg.max_iterations) {
        ds_phase = false;
        res.switch_iteration = iter;
        res.warnings.push_back("hybrid reached max iterations before the switch threshold");
      }
    } else {
      Assignment next = c_step(e_step_soft(d, params, &degenerate));
      res.degenerate_rows += degenerate;
      res.trace.push_back({first ? kNan : l1_delta(prev_p, params.class_marginals),
                           -log_likelihood(d, params), cml_criterion(d, next, params),
                           first ? kNan : pi_l1(prev_params, params)});
      const bool marginals_settled =
          !first && check_convergence(prev_p, params.class_marginals, cfg.marginal_tolerance);
      const bool assignment_stable =
          !prev_hard_labels.empty() && next.belief == prev_hard_labels;
      prev_hard_labels = next.belief;
      t = std::move(next);
      if (marginals_settled || assignment_stable) {
        prev_p = params.class_marginals;
        prev_params = std::move(params);
        res.converged = true;
        break;
      }
    }
    prev_p = params.class_marginals;
    prev_params = std::move(params);
  }
  if (!res.converged)
    res.warnings.push_back("hybrid did not converge within " +
                           std::to_string(cfg.max_iterations) + " iterations");
  res.parameters = std::move(prev_params);
  if (!t.is_hard()) {
    // DS phase exhausted the budget: harden for label output.
    res.soft_posteriors = t;
    res.final_assignment = c_step(t);
  } else {
    res.final_assignment = std::move(t);
  }
  return res;
}

AggregationResult run(const Dataset& d, const AggregationConfig& cfg) {
  switch (cfg.algorithm) {
    case Algorithm::mv: return run_mv(d, cfg);
    case Algorithm::ds: return run_ds(d, cfg);
    case Algorithm::fds: return run_fds(d, cfg);
    case Algorithm::hybrid: return run_hybrid(d, cfg);
  }
  throw std::invalid_argument("bad algorithm enum");
}

}  // namespace voteagg
