// voteagg: aggregate crowdsourced votes into consensus labels.
//
// Subcommands: aggregate (mv/ds/fds/hybrid, single- or multi-label votes),
// simulate (planted synthetic data), online (streaming replay), sweep
// (annotator-count benchmark with optional SVG plots).

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "voteagg/aggregate.hpp"
#include "voteagg/dataset.hpp"
#include "voteagg/errors.hpp"
#include "voteagg/multilabel.hpp"
#include "voteagg/online.hpp"
#include "voteagg/report.hpp"
#include "voteagg/simulate.hpp"
#include "voteagg/svg_plot.hpp"
#include "voteagg/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNotConverged = 3;
constexpr int kExitUsage = 64;

bool verbose() {
  const char* v = std::getenv("VOTEAGG_LOG");
  return v != nullptr && std::string(v) != "quiet";
}

void log_info(const std::string& msg) {
  if (verbose()) std::cerr << "voteagg: " << msg << "\n";
}

voteagg::VoteFormat format_for(const std::string& path, const std::string& declared) {
  if (declared == "csv") return voteagg::VoteFormat::csv;
  if (declared == "json") return voteagg::VoteFormat::json;
  return std::filesystem::path(path).extension() == ".json" ? voteagg::VoteFormat::json
                                                            : voteagg::VoteFormat::csv;
}

void emit_report(const nlohmann::json& report, const std::string& output_path) {
  const std::string text = report.dump(2) + "\n";
  if (output_path.empty()) {
    std::cout << text;
  } else {
    voteagg::atomic_write(output_path, text);
    log_info("wrote " + output_path);
  }
}

struct AggregateArgs {
  std::string input, format, gold, output, drop_class, decisions;
  std::string algorithm = "fds";
  double tol = 1e-4;
  double gamma = 0.005;
  int max_iters = 100;
  std::uint64_t seed = 0;
  double alpha = 0.0;
  int min_annotators = 0;
  int subsample = 0;
  bool strict = false;
  bool multilabel = false;
};

voteagg::AggregationConfig make_config(const AggregateArgs& a) {
  voteagg::AggregationConfig cfg;
  cfg.algorithm = voteagg::algorithm_from_name(a.algorithm);
  cfg.marginal_tolerance = a.tol;
  cfg.hybrid_gamma = a.gamma;
  cfg.max_iterations = a.max_iters;
  cfg.seed = a.seed;
  cfg.alpha = a.alpha;
  cfg.validate();
  return cfg;
}

nlohmann::json config_echo(const AggregateArgs& a) {
  return {{"algorithm", a.algorithm}, {"tol", a.tol},           {"gamma", a.gamma},
          {"max_iters", a.max_iters}, {"alpha", a.alpha},       {"strict", a.strict},
          {"subsample", a.subsample}, {"min_annotators", a.min_annotators},
          {"drop_class", a.drop_class}, {"multilabel", a.multilabel}};
}

int run_aggregate_multilabel(const AggregateArgs& args) {
  const voteagg::AggregationConfig cfg = make_config(args);
  voteagg::MultiDataset md = voteagg::load_multilabel(args.input);
  log_info("loaded " + std::to_string(md.num_questions) + " questions, " +
           std::to_string(md.num_annotators) + " annotators, " +
           std::to_string(md.num_options) + " options (multi-label)");
  if (args.subsample > 0) md = voteagg::multilabel_subsample(md, args.subsample, args.seed);

  const voteagg::MultiLabelResult res = voteagg::aggregate_multilabel(md, cfg);

  voteagg::RunManifest manifest;
  manifest.command = "aggregate";
  manifest.seed = args.seed;
  manifest.config = config_echo(args);
  manifest.inputs.emplace_back("votes", args.input);
  if (!args.gold.empty()) manifest.inputs.emplace_back("gold", args.gold);
  if (!args.output.empty()) manifest.outputs.push_back(args.output);
  if (!args.decisions.empty()) manifest.outputs.push_back(args.decisions);

  nlohmann::json report;
  report["manifest"] = manifest.to_json();
  report["converged"] = res.binary_result.converged;
  report["iterations"] = res.binary_result.iterations;
  report["nll"] = voteagg::json_number(res.binary_result.final_nll());
  report["binary_questions"] = md.num_questions * md.num_options;
  report["warnings"] = res.binary_result.warnings;

  nlohmann::json decisions = nlohmann::json::object();
  for (int q = 0; q < md.num_questions; ++q) {
    nlohmann::json chosen = nlohmann::json::array();
    for (int c = 0; c < md.num_options; ++c)
      if (res.decisions[q][c]) chosen.push_back(md.option_names[c]);
    decisions[md.question_names[q]] = chosen;
  }
  report["decisions"] = decisions;

  if (!args.gold.empty()) {
    // Multi-label gold uses the decisions format: question,option,selected.
    const voteagg::MultiGold gold = voteagg::load_multilabel_gold(args.gold, md);
    report["accuracy"] = voteagg::multilabel_accuracy(res, gold);
    report["gold_pairs"] = gold.pairs.size();
  }

  if (!args.decisions.empty()) {
    voteagg::save_decisions_csv(res, md, args.decisions);
    log_info("wrote " + args.decisions);
  }
  emit_report(report, args.output);
  if (args.strict && !res.binary_result.converged) return kExitNotConverged;
  return kExitOk;
}

int run_aggregate(const AggregateArgs& args) {
  if (args.multilabel) return run_aggregate_multilabel(args);
  const voteagg::AggregationConfig cfg = make_config(args);

  voteagg::Dataset d = voteagg::load_dataset(args.input, format_for(args.input, args.format));
  log_info("loaded " + std::to_string(d.num_questions) + " questions, " +
           std::to_string(d.num_annotators) + " annotators, " +
           std::to_string(d.num_options) + " options");

  nlohmann::json preprocessing = nlohmann::json::object();
  if (!args.drop_class.empty()) {
    int dead = -1;
    for (int c = 0; c < d.num_options; ++c)
      if (d.option_names[c] == args.drop_class) dead = c;
    if (dead < 0) throw voteagg::ValidationError("unknown option '" + args.drop_class + "'");
    std::size_t dropped = 0;
    d = voteagg::remove_class(d, dead, &dropped);
    preprocessing["dropped_class"] = args.drop_class;
    preprocessing["questions_dropped_by_class_removal"] = dropped;
    log_info("removed class '" + args.drop_class + "', dropped " + std::to_string(dropped) +
             " fully-'" + args.drop_class + "' questions");
  }
  if (args.min_annotators > 0) {
    const int before = d.num_questions;
    d = voteagg::filter_min_annotators(d, args.min_annotators);
    preprocessing["min_annotators"] = args.min_annotators;
    preprocessing["questions_dropped_by_filter"] = before - d.num_questions;
  }
  if (args.subsample > 0) {
    d = voteagg::subsample_annotators(d, args.subsample, args.seed);
    preprocessing["subsample"] = args.subsample;
  }

  voteagg::GoldLabels gold;
  std::size_t gold_skipped = 0;
  const bool has_gold = !args.gold.empty();
  if (has_gold) gold = voteagg::load_gold(args.gold, d, &gold_skipped);

  const voteagg::AggregationResult result = voteagg::run(d, cfg);

  voteagg::RunManifest manifest;
  manifest.command = "aggregate";
  manifest.seed = args.seed;
  manifest.config = config_echo(args);
  manifest.inputs.emplace_back("votes", args.input);
  if (has_gold) manifest.inputs.emplace_back("gold", args.gold);
  if (!args.output.empty()) manifest.outputs.push_back(args.output);

  nlohmann::json report = voteagg::build_run_report(manifest, d, result, gold, has_gold);
  preprocessing["gold_entries_skipped"] = gold_skipped;
  report["preprocessing"] = preprocessing;

  emit_report(report, args.output);
  if (args.strict && !result.converged) {
    std::cerr << "voteagg: did not converge within " << cfg.max_iterations << " iterations\n";
    return kExitNotConverged;
  }
  return kExitOk;
}

int run_simulate(int questions, int annotators, int options, int votes_per_question,
                 double accuracy, const std::string& prior_csv, std::uint64_t seed,
                 const std::string& out, const std::string& gold_out) {
  voteagg::SimulationConfig cfg;
  cfg.num_questions = questions;
  cfg.num_annotators = annotators;
  cfg.num_options = options;
  cfg.votes_per_question = votes_per_question;
  cfg.diagonal_accuracy = accuracy;
  cfg.seed = seed;
  if (!prior_csv.empty()) {
    std::stringstream ss(prior_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) cfg.class_prior.push_back(std::stod(tok));
  }

  const auto [d, gold] = voteagg::simulate(cfg);
  {
    std::ostringstream votes_csv;
    votes_csv << "# options=" << d.num_options << "\nquestion,annotator,option\n";
    for (int q = 0; q < d.num_questions; ++q)
      for (const voteagg::Vote& v : d.votes[q])
        votes_csv << d.question_names[q] << ',' << d.annotator_names[v.annotator] << ','
                  << d.option_names[v.option] << '\n';
    voteagg::atomic_write(out, votes_csv.str());
  }
  {
    std::ostringstream gold_csv;
    gold_csv << "question,label\n";
    for (const auto& [q, c] : gold.labels)
      gold_csv << d.question_names[q] << ',' << d.option_names[c] << '\n';
    voteagg::atomic_write(gold_out, gold_csv.str());
  }

  voteagg::RunManifest manifest;
  manifest.command = "simulate";
  manifest.seed = seed;
  manifest.config = {{"questions", questions},
                     {"annotators", annotators},
                     {"options", options},
                     {"votes_per_question", votes_per_question},
                     {"accuracy", accuracy},
                     {"prior", prior_csv}};
  manifest.outputs = {out, gold_out};
  manifest.inputs.emplace_back("votes", out);
  manifest.inputs.emplace_back("gold", gold_out);
  std::cout << nlohmann::json{{"manifest", manifest.to_json()}}.dump(2) << "\n";
  return kExitOk;
}

int run_online(const std::string& input, int initial, std::uint64_t seed,
               const std::string& gold_path, const std::string& output, double tol,
               int max_iters, double alpha) {
  voteagg::AggregationConfig cfg;
  cfg.algorithm = voteagg::Algorithm::fds;
  cfg.marginal_tolerance = tol;
  cfg.max_iterations = max_iters;
  cfg.seed = seed;
  cfg.alpha = alpha;
  cfg.validate();

  const voteagg::Dataset full = voteagg::load_dataset(input, format_for(input, ""));
  if (initial < 1) throw voteagg::ValidationError("--initial must be >= 1");
  if (initial >= full.num_questions)
    throw voteagg::ValidationError("--initial must be smaller than the question count (" +
                                   std::to_string(full.num_questions) + ")");

  // First N questions in file order form the batch; the rest stream.
  voteagg::Dataset init;
  init.num_options = full.num_options;
  init.option_names = full.option_names;
  std::vector<int> annotator_map(full.num_annotators, -1);
  for (int q = 0; q < initial; ++q) {
    init.votes.emplace_back();
    init.question_names.push_back(full.question_names[q]);
    for (const voteagg::Vote& v : full.votes[q]) {
      int& a = annotator_map[v.annotator];
      if (a < 0) {
        a = init.num_annotators++;
        init.annotator_names.push_back(full.annotator_names[v.annotator]);
      }
      init.votes.back().push_back({a, v.option});
    }
  }
  init.num_questions = initial;

  voteagg::OnlineState state(init, cfg);
  log_info("initial fds: " + std::to_string(state.initial_result().iterations) + " iterations");

  std::ostringstream lines;
  for (int q = initial; q < full.num_questions; ++q) {
    std::vector<voteagg::IncomingVote> votes;
    for (const voteagg::Vote& v : full.votes[q])
      votes.push_back({full.annotator_names[v.annotator], v.option});
    const int chosen = state.ingest_question(full.question_names[q], votes);
    lines << nlohmann::json{{"question", full.question_names[q]},
                            {"label", full.option_names[chosen]},
                            {"votes", votes.size()}}
                 .dump()
          << "\n";
  }

  voteagg::RunManifest manifest;
  manifest.command = "online";
  manifest.seed = seed;
  manifest.config = {{"initial", initial}, {"tol", tol}, {"max_iters", max_iters},
                     {"alpha", alpha}};
  manifest.inputs.emplace_back("votes", input);
  if (!gold_path.empty()) manifest.inputs.emplace_back("gold", gold_path);
  if (!output.empty()) manifest.outputs.push_back(output);

  nlohmann::json summary;
  summary["manifest"] = manifest.to_json();
  summary["questions_total"] = state.dataset().num_questions;
  summary["questions_streamed"] = state.questions_ingested();
  summary["new_annotators"] = state.new_annotators_seen();
  summary["initial_converged"] = state.initial_result().converged;
  if (!gold_path.empty()) {
    const voteagg::GoldLabels gold = voteagg::load_gold(gold_path, state.dataset());
    std::size_t correct = 0, streamed_correct = 0, streamed_covered = 0;
    for (const auto& [q, truth] : gold.labels) {
      const bool ok = state.assignment().label_of(q) == truth;
      if (ok) ++correct;
      if (q >= initial) {
        ++streamed_covered;
        if (ok) ++streamed_correct;
      }
    }
    summary["accuracy"] = static_cast<double>(correct) / gold.labels.size();
    if (streamed_covered > 0)
      summary["accuracy_streamed"] =
          static_cast<double>(streamed_correct) / static_cast<double>(streamed_covered);
  }
  lines << nlohmann::json{{"summary", summary}}.dump() << "\n";

  if (output.empty())
    std::cout << lines.str();
  else
    voteagg::atomic_write(output, lines.str());
  return kExitOk;
}

int run_sweep(const std::string& input, const std::string& gold_path,
              const std::string& algorithms_csv, int k_max, std::uint64_t seed, int repeats,
              const std::string& out, const std::string& plot_dir, double tol, double gamma,
              int max_iters, double alpha, bool no_timing,
              const std::vector<std::string>& external_paths) {
  voteagg::AggregationConfig cfg;
  cfg.marginal_tolerance = tol;
  cfg.hybrid_gamma = gamma;
  cfg.max_iterations = max_iters;
  cfg.seed = seed;
  cfg.alpha = alpha;
  cfg.validate();

  std::vector<voteagg::Algorithm> algorithms;
  {
    std::stringstream ss(algorithms_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) algorithms.push_back(voteagg::algorithm_from_name(tok));
  }

  voteagg::Dataset d = voteagg::load_dataset(input, format_for(input, ""));
  const int before = d.num_questions;
  d = voteagg::filter_min_annotators(d, k_max);  // sweep requires >= k_max votes everywhere
  log_info("filtered to " + std::to_string(d.num_questions) + " of " + std::to_string(before) +
           " questions with >= " + std::to_string(k_max) + " votes");
  const voteagg::GoldLabels gold = voteagg::load_gold(gold_path, d);

  voteagg::SweepReport sweep = voteagg::sweep_annotators(
      d, gold, algorithms, cfg, k_max, repeats, /*record_timing=*/!no_timing);
  for (const std::string& path : external_paths) {
    const auto rows = voteagg::load_external_results(path);
    sweep.external.insert(sweep.external.end(), rows.begin(), rows.end());
    log_info("merged " + std::to_string(rows.size()) + " external rows from " + path);
  }

  voteagg::RunManifest manifest;
  manifest.command = "sweep";
  manifest.seed = seed;
  manifest.config = {{"algorithms", algorithms_csv}, {"k_max", k_max},   {"repeats", repeats},
                     {"tol", tol},                   {"gamma", gamma},   {"max_iters", max_iters},
                     {"alpha", alpha},               {"no_timing", no_timing}};
  manifest.inputs.emplace_back("votes", input);
  manifest.inputs.emplace_back("gold", gold_path);
  for (std::size_t i = 0; i < external_paths.size(); ++i)
    manifest.inputs.emplace_back("external" + std::to_string(i), external_paths[i]);

  const std::string json_path =
      out.empty() ? "" : (std::filesystem::path(out).replace_extension(".json").string());
  if (!out.empty()) manifest.outputs.push_back(out);
  if (!json_path.empty()) manifest.outputs.push_back(json_path);

  nlohmann::json report;
  report["manifest"] = manifest.to_json();
  report["sweep"] = voteagg::sweep_to_json(sweep);

  // Table-1 style ratios whenever the involved algorithms took part.
  const auto has = [&](voteagg::Algorithm a) {
    for (voteagg::Algorithm x : algorithms)
      if (x == a) return true;
    return false;
  };
  nlohmann::json speedups = nlohmann::json::object();
  const auto add_speedup = [&](const char* key, voteagg::Algorithm baseline,
                               voteagg::Algorithm target) {
    const auto [time_ratio, iter_ratio] = voteagg::speedup_report(sweep, baseline, target);
    speedups[key] = {{"time", voteagg::json_number(time_ratio)},
                     {"iterations", voteagg::json_number(iter_ratio)}};
  };
  if (has(voteagg::Algorithm::ds) && has(voteagg::Algorithm::fds))
    add_speedup("fds_over_ds", voteagg::Algorithm::ds, voteagg::Algorithm::fds);
  if (has(voteagg::Algorithm::ds) && has(voteagg::Algorithm::hybrid))
    add_speedup("hybrid_over_ds", voteagg::Algorithm::ds, voteagg::Algorithm::hybrid);
  report["speedup"] = speedups;

  if (out.empty()) {
    std::cout << report.dump(2) << "\n";
  } else {
    voteagg::atomic_write(out, voteagg::sweep_to_csv(sweep));
    voteagg::atomic_write(json_path, report.dump(2) + "\n");
    log_info("wrote " + out + " and " + json_path);
  }
  if (!plot_dir.empty()) {
    voteagg::write_sweep_plots(sweep, plot_dir);
    log_info("wrote plots to " + plot_dir);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Crowdsourced vote aggregation (majority vote, Dawid-Skene, fast "
               "hard-assignment EM, and a hybrid of the two)"};
  app.set_version_flag("--version", voteagg::kVersion);
  app.require_subcommand(1);

  // aggregate
  AggregateArgs agg;
  auto* cmd_agg = app.add_subcommand("aggregate", "Aggregate a votes file into labels");
  cmd_agg->add_option("--input", agg.input, "Votes file (CSV or JSON)")->required();
  cmd_agg->add_option("--format", agg.format, "Input format: csv or json (default: by extension)")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd_agg->add_option("--algorithm", agg.algorithm, "mv, ds, fds, or hybrid")
      ->check(CLI::IsMember({"mv", "ds", "fds", "hybrid"}));
  cmd_agg->add_option("--gold", agg.gold, "Gold labels CSV for accuracy reporting");
  cmd_agg->add_option("--tol", agg.tol, "Convergence tolerance on class marginals");
  cmd_agg->add_option("--gamma", agg.gamma, "Hybrid DS->FDS switch threshold");
  cmd_agg->add_option("--max-iters", agg.max_iters, "Iteration cap");
  cmd_agg->add_option("--seed", agg.seed, "Master seed for all randomized steps");
  cmd_agg->add_option("--alpha", agg.alpha, "Additive smoothing for confusion counts");
  cmd_agg->add_option("--min-annotators", agg.min_annotators,
                      "Drop questions with fewer votes than this");
  cmd_agg->add_option("--subsample", agg.subsample, "Keep exactly K votes per question");
  cmd_agg->add_option("--drop-class", agg.drop_class, "Remove this option before aggregating");
  cmd_agg->add_option("--output", agg.output, "Report path (default: stdout)");
  cmd_agg->add_flag("--strict", agg.strict, "Exit 3 when the run does not converge");
  cmd_agg->add_flag("--multilabel", agg.multilabel,
                    "Input is multi-label (question,annotator,option,selected)");
  cmd_agg->add_option("--decisions", agg.decisions,
                      "Multi-label decisions CSV output path");

  // simulate
  int sim_q = 0, sim_a = 0, sim_c = 0, sim_k = 0;
  double sim_acc = 0.0;
  std::string sim_prior, sim_out, sim_gold_out;
  std::uint64_t sim_seed = 0;
  auto* cmd_sim = app.add_subcommand("simulate", "Generate planted synthetic votes");
  cmd_sim->add_option("--questions", sim_q)->required();
  cmd_sim->add_option("--annotators", sim_a)->required();
  cmd_sim->add_option("--options", sim_c)->required();
  cmd_sim->add_option("--votes-per-question", sim_k)->required();
  cmd_sim->add_option("--accuracy", sim_acc, "Diagonal confusion mass per annotator")
      ->required();
  cmd_sim->add_option("--prior", sim_prior, "Comma-separated class prior (default uniform)");
  cmd_sim->add_option("--seed", sim_seed);
  cmd_sim->add_option("--out", sim_out, "Votes CSV path")->required();
  cmd_sim->add_option("--gold-out", sim_gold_out, "Gold CSV path")->required();

  // online
  std::string on_input, on_gold, on_output;
  int on_initial = 0, on_max_iters = 100;
  double on_tol = 1e-4, on_alpha = 0.0;
  std::uint64_t on_seed = 0;
  auto* cmd_on = app.add_subcommand("online", "Replay a votes file through streaming FDS");
  cmd_on->add_option("--input", on_input, "Votes file, sorted by arrival")->required();
  cmd_on->add_option("--initial", on_initial, "Size of the initial batch")->required();
  cmd_on->add_option("--seed", on_seed);
  cmd_on->add_option("--gold", on_gold, "Gold labels CSV for the final summary");
  cmd_on->add_option("--output", on_output, "JSON-lines output path (default: stdout)");
  cmd_on->add_option("--tol", on_tol, "Convergence tolerance for the initial batch");
  cmd_on->add_option("--max-iters", on_max_iters);
  cmd_on->add_option("--alpha", on_alpha);

  // sweep
  std::string sw_input, sw_gold, sw_algorithms = "mv,ds,fds,hybrid", sw_out, sw_plot;
  int sw_kmax = 0, sw_repeats = 1, sw_max_iters = 100;
  double sw_tol = 1e-4, sw_gamma = 0.005, sw_alpha = 0.0;
  std::uint64_t sw_seed = 0;
  bool sw_no_timing = false;
  std::vector<std::string> sw_external;
  auto* cmd_sw = app.add_subcommand("sweep", "Run algorithms across annotator counts");
  cmd_sw->add_option("--input", sw_input)->required();
  cmd_sw->add_option("--gold", sw_gold)->required();
  cmd_sw->add_option("--algorithms", sw_algorithms, "Comma-separated list");
  cmd_sw->add_option("--k-max", sw_kmax, "Sweep k = 1..k_max annotators per question")
      ->required();
  cmd_sw->add_option("--seed", sw_seed);
  cmd_sw->add_option("--repeats", sw_repeats, "Repeats per cell; seed shifts by repeat index");
  cmd_sw->add_option("--out", sw_out, "Sweep CSV path; JSON report lands next to it");
  cmd_sw->add_option("--plot", sw_plot, "Directory for SVG panels");
  cmd_sw->add_option("--tol", sw_tol);
  cmd_sw->add_option("--gamma", sw_gamma);
  cmd_sw->add_option("--max-iters", sw_max_iters);
  cmd_sw->add_option("--alpha", sw_alpha);
  cmd_sw->add_flag("--no-timing", sw_no_timing,
                   "Record zero seconds so reports are byte-reproducible");
  cmd_sw->add_option("--external", sw_external,
                     "Tidy CSV of baseline results (iwmv, glad, ...) to merge; repeatable");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the usage message
    return kExitUsage;
  }

  try {
    if (cmd_agg->parsed()) return run_aggregate(agg);
    if (cmd_sim->parsed())
      return run_simulate(sim_q, sim_a, sim_c, sim_k, sim_acc, sim_prior, sim_seed, sim_out,
                          sim_gold_out);
    if (cmd_on->parsed())
      return run_online(on_input, on_initial, on_seed, on_gold, on_output, on_tol, on_max_iters,
                        on_alpha);
    if (cmd_sw->parsed())
      return run_sweep(sw_input, sw_gold, sw_algorithms, sw_kmax, sw_seed, sw_repeats, sw_out,
                       sw_plot, sw_tol, sw_gamma, sw_max_iters, sw_alpha, sw_no_timing,
                       sw_external);
  } catch (const std::exception& e) {
    std::cerr << "voteagg: error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitUsage;
}
