#include "voteagg/multilabel.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "voteagg/errors.hpp"
#include "voteagg/rng.hpp"

namespace voteagg {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

bool parse_nonneg_int(const std::string& s, long& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && out >= 0;
}

}  // namespace

std::size_t MultiDataset::total_answer_events() const {
  std::size_t n = 0;
  for (const auto& qs : answers) n += qs.size();
  return n;
}

void MultiDataset::validate() const {
  if (num_questions <= 0) throw ValidationError("multilabel dataset has no questions");
  if (num_annotators <= 0) throw ValidationError("multilabel dataset has no annotators");
  if (num_options < 1) throw ValidationError("multilabel dataset has no options");
  if (static_cast<int>(answers.size()) != num_questions)
    throw ValidationError("answer table size disagrees with question count");
  for (int q = 0; q < num_questions; ++q) {
    if (answers[q].empty())
      throw ValidationError("question " + std::to_string(q) + " has no answers");
    std::set<int> seen;
    for (const MultiAnswer& ans : answers[q]) {
      if (ans.annotator < 0 || ans.annotator >= num_annotators)
        throw ValidationError("annotator id out of range on question " + std::to_string(q));
      if (!seen.insert(ans.annotator).second)
        throw ValidationError("annotator " + std::to_string(ans.annotator) +
                              " answered question " + std::to_string(q) + " twice");
      for (std::size_t i = 0; i < ans.selected.size(); ++i) {
        if (ans.selected[i] < 0 || ans.selected[i] >= num_options)
          throw ValidationError("selected option out of range");
        if (i > 0 && ans.selected[i] <= ans.selected[i - 1])
          throw ValidationError("selection set not sorted/unique");
      }
    }
  }
}

MultiDataset load_multilabel(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");

  MultiDataset md;
  std::map<std::string, int> questions, annotators;
  long declared_options = -1;
  bool all_numeric = true;
  std::vector<std::string> option_tokens;  // first-appearance order
  std::map<std::string, int> option_index;
  long max_numeric = -1;

  struct Row {
    int q, a;
    std::string option;
    bool selected;
  };
  std::vector<Row> rows;
  std::set<std::tuple<int, int, std::string>> seen;

  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      const auto eq = t.find('=');
      if (t.find("options") != std::string::npos && eq != std::string::npos) {
        long n;
        if (!parse_nonneg_int(trim(t.substr(eq + 1)), n) || n < 1)
          throw ParseError(path + ":" + std::to_string(lineno) + ": bad options declaration");
        declared_options = n;
      }
      continue;
    }
    auto fields = split_csv_line(t);
    if (!header_seen) {
      if (fields.size() != 4 || fields[0] != "question" || fields[1] != "annotator" ||
          fields[2] != "option" || fields[3] != "selected")
        throw ParseError(path + ":" + std::to_string(lineno) +
                         ": expected header 'question,annotator,option,selected'");
      header_seen = true;
      continue;
    }
    if (fields.size() != 4)
      throw ParseError(path + ":" + std::to_string(lineno) + ": expected 4 fields");
    if (fields[3] != "0" && fields[3] != "1")
      throw ParseError(path + ":" + std::to_string(lineno) + ": selected must be 0 or 1");

    auto [qit, qnew] = questions.try_emplace(fields[0], static_cast<int>(questions.size()));
    if (qnew) md.question_names.push_back(fields[0]);
    auto [ait, anew] = annotators.try_emplace(fields[1], static_cast<int>(annotators.size()));
    if (anew) md.annotator_names.push_back(fields[1]);
    if (!seen.insert({qit->second, ait->second, fields[2]}).second)
      throw ValidationError(path + ":" + std::to_string(lineno) + ": duplicate row for (" +
                            fields[0] + ", " + fields[1] + ", " + fields[2] + ")");
    long value;
    if (!parse_nonneg_int(fields[2], value)) all_numeric = false;
    if (option_index.try_emplace(fields[2], static_cast<int>(option_tokens.size())).second)
      option_tokens.push_back(fields[2]);
    rows.push_back({qit->second, ait->second, fields[2], fields[3] == "1"});
  }
  if (!header_seen) throw ParseError(path + ": missing header line");
  if (rows.empty()) throw ValidationError(path + ": no rows");

  if (all_numeric) {
    option_index.clear();
    for (const auto& tok : option_tokens) {
      long value;
      parse_nonneg_int(tok, value);
      if (declared_options >= 0 && value >= declared_options)
        throw ValidationError(path + ": option " + tok + " out of range");
      option_index[tok] = static_cast<int>(value);
      max_numeric = std::max(max_numeric, value);
    }
    md.num_options =
        declared_options >= 0 ? static_cast<int>(declared_options) : static_cast<int>(max_numeric + 1);
    for (int c = 0; c < md.num_options; ++c) md.option_names.push_back(std::to_string(c));
  } else {
    if (declared_options >= 0 && static_cast<long>(option_tokens.size()) > declared_options)
      throw ValidationError(path + ": more distinct options than declared");
    md.num_options = declared_options >= 0 ? static_cast<int>(declared_options)
                                           : static_cast<int>(option_tokens.size());
    md.option_names = option_tokens;
    for (int c = static_cast<int>(md.option_names.size()); c < md.num_options; ++c)
      md.option_names.push_back("option" + std::to_string(c));
  }

  md.num_questions = static_cast<int>(questions.size());
  md.num_annotators = static_cast<int>(annotators.size());
  md.answers.resize(md.num_questions);
  // One answer event per (question, annotator), option sets gathered in file order.
  std::map<std::pair<int, int>, std::size_t> event_of;
  for (const Row& r : rows) {
    auto key = std::make_pair(r.q, r.a);
    auto it = event_of.find(key);
    if (it == event_of.end()) {
      it = event_of.emplace(key, md.answers[r.q].size()).first;
      md.answers[r.q].push_back({r.a, {}});
    }
    if (r.selected) md.answers[r.q][it->second].selected.push_back(option_index.at(r.option));
  }
  for (auto& qs : md.answers)
    for (auto& ans : qs) std::sort(ans.selected.begin(), ans.selected.end());

  md.validate();
  return md;
}

Dataset binarize(const MultiDataset& md) {
  md.validate();
  Dataset d;
  d.num_questions = md.num_questions * md.num_options;
  d.num_annotators = md.num_annotators;
  d.num_options = 2;
  d.annotator_names = md.annotator_names;
  d.option_names = {"0", "1"};
  d.votes.resize(d.num_questions);
  d.question_names.resize(d.num_questions);

  for (int q = 0; q < md.num_questions; ++q) {
    for (int c = 0; c < md.num_options; ++c) {
      const int bq = q * md.num_options + c;
      d.question_names[bq] = md.question_names[q] + "|" + md.option_names[c];
      for (const MultiAnswer& ans : md.answers[q]) {
        const bool chosen =
            std::binary_search(ans.selected.begin(), ans.selected.end(), c);
        d.votes[bq].push_back({ans.annotator, chosen ? 1 : 0});
      }
    }
  }
  return d;
}

MultiDataset regroup(const Dataset& binary, int num_options) {
  if (num_options < 1 || binary.num_questions % num_options != 0)
    throw ValidationError("binary question count is not a multiple of the option count");
  if (binary.num_options != 2) throw ValidationError("regroup expects a binary dataset");

  MultiDataset md;
  md.num_questions = binary.num_questions / num_options;
  md.num_annotators = binary.num_annotators;
  md.num_options = num_options;
  md.annotator_names = binary.annotator_names;
  for (int c = 0; c < num_options; ++c) md.option_names.push_back(std::to_string(c));
  md.answers.resize(md.num_questions);
  for (int q = 0; q < md.num_questions; ++q) {
    md.question_names.push_back("q" + std::to_string(q));
    // Answer events and their order come from the first pair's votes.
    const auto& first = binary.votes[q * num_options];
    for (const Vote& v : first) md.answers[q].push_back({v.annotator, {}});
    for (int c = 0; c < num_options; ++c) {
      const auto& votes = binary.votes[q * num_options + c];
      if (votes.size() != first.size())
        throw ValidationError("pairs of one question disagree on who answered");
      for (std::size_t i = 0; i < votes.size(); ++i) {
        if (votes[i].annotator != first[i].annotator)
          throw ValidationError("pairs of one question disagree on who answered");
        if (votes[i].option == 1) md.answers[q][i].selected.push_back(c);
      }
    }
  }
  md.validate();
  return md;
}

MultiLabelResult aggregate_multilabel(const MultiDataset& md, const AggregationConfig& cfg) {
  const Dataset binary = binarize(md);
  MultiLabelResult res;
  res.num_questions = md.num_questions;
  res.num_options = md.num_options;
  res.binary_result = run(binary, cfg);
  res.decisions.assign(md.num_questions, std::vector<bool>(md.num_options, false));
  for (int q = 0; q < md.num_questions; ++q)
    for (int c = 0; c < md.num_options; ++c)
      res.decisions[q][c] =
          res.binary_result.final_assignment.label_of(q * md.num_options + c) == 1;
  return res;
}

MultiDataset multilabel_subsample(const MultiDataset& md, int k, std::uint64_t seed) {
  if (k < 1) throw ValidationError("k must be >= 1");
  Rng rng = substream(seed, "subsample");
  MultiDataset out = md;
  for (int q = 0; q < md.num_questions; ++q) {
    const int n = static_cast<int>(md.answers[q].size());
    if (n < k)
      throw ValidationError("question " + md.question_names[q] + " has " + std::to_string(n) +
                            " answers, fewer than k=" + std::to_string(k));
    if (n == k) continue;
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    for (int i = 0; i < k; ++i) {
      const int j = i + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(n - i)));
      std::swap(idx[i], idx[j]);
    }
    std::sort(idx.begin(), idx.begin() + k);
    std::vector<MultiAnswer> kept;
    kept.reserve(k);
    for (int i = 0; i < k; ++i) kept.push_back(md.answers[q][idx[i]]);
    out.answers[q] = std::move(kept);
  }
  return out;
}

MultiGold load_multilabel_gold(const std::string& path, const MultiDataset& md) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");

  std::map<std::string, int> question_index, option_index;
  for (int q = 0; q < md.num_questions; ++q) question_index.emplace(md.question_names[q], q);
  for (int c = 0; c < md.num_options; ++c) option_index.emplace(md.option_names[c], c);

  MultiGold gold;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto fields = split_csv_line(t);
    if (!header_seen) {
      if (fields.size() != 3 || fields[0] != "question" || fields[1] != "option" ||
          fields[2] != "selected")
        throw ParseError(path + ":" + std::to_string(lineno) +
                         ": expected header 'question,option,selected'");
      header_seen = true;
      continue;
    }
    if (fields.size() != 3)
      throw ParseError(path + ":" + std::to_string(lineno) + ": expected 3 fields");
    if (fields[2] != "0" && fields[2] != "1")
      throw ParseError(path + ":" + std::to_string(lineno) + ": selected must be 0 or 1");
    auto qit = question_index.find(fields[0]);
    if (qit == question_index.end()) continue;
    auto cit = option_index.find(fields[1]);
    if (cit == option_index.end())
      throw ValidationError(path + ":" + std::to_string(lineno) + ": unknown option '" +
                            fields[1] + "'");
    gold.pairs[{qit->second, cit->second}] = fields[2] == "1";
  }
  if (!header_seen) throw ParseError(path + ": missing header line");
  if (gold.pairs.empty()) throw ValidationError(path + ": no gold pair matches the dataset");
  return gold;
}

double multilabel_accuracy(const MultiLabelResult& res, const MultiGold& gold) {
  if (gold.pairs.empty()) throw ValidationError("gold pairs are empty");
  std::size_t correct = 0;
  for (const auto& [pair, truth] : gold.pairs) {
    const auto& [q, c] = pair;
    if (q < 0 || q >= res.num_questions || c < 0 || c >= res.num_options)
      throw ValidationError("gold pair out of range");
    if (res.decisions[q][c] == truth) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(gold.pairs.size());
}

void save_decisions_csv(const MultiLabelResult& res, const MultiDataset& md,
                        const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open for writing");
  out << "question,option,selected\n";
  for (int q = 0; q < res.num_questions; ++q)
    for (int c = 0; c < res.num_options; ++c)
      out << md.question_names[q] << ',' << md.option_names[c] << ','
          << (res.decisions[q][c] ? 1 : 0) << '\n';
}

}  // namespace voteagg
