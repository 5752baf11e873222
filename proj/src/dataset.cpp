#include "voteagg/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

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
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && out >= 0;
}

// Builds dense ids for question/annotator names by first appearance.
struct Densifier {
  std::unordered_map<std::string, int> index;
  std::vector<std::string> names;

  int id_of(const std::string& name) {
    auto it = index.find(name);
    if (it != index.end()) return it->second;
    const int id = static_cast<int>(names.size());
    index.emplace(name, id);
    names.push_back(name);
    return id;
  }
};

struct RawVote {
  std::string question, annotator, option;
};

Dataset assemble(const std::vector<RawVote>& raw, long declared_options, const std::string& origin) {
  Dataset d;
  Densifier questions, annotators;

  // Option ids: keep numeric tokens verbatim so they line up with gold files
  // and a declared option count; densify only when strings are involved.
  bool all_numeric = true;
  for (const auto& v : raw) {
    long value;
    if (!parse_nonneg_int(v.option, value)) {
      all_numeric = false;
      break;
    }
  }
  Densifier options;
  long max_numeric_option = -1;

  std::set<std::pair<int, int>> seen;  // (question, annotator)
  for (const auto& v : raw) {
    const int q = questions.id_of(v.question);
    const int a = annotators.id_of(v.annotator);
    int c;
    if (all_numeric) {
      long value;
      parse_nonneg_int(v.option, value);
      if (declared_options >= 0 && value >= declared_options)
        throw ValidationError(origin + ": option " + v.option + " out of range, " +
                              std::to_string(declared_options) + " options declared");
      c = static_cast<int>(value);
      max_numeric_option = std::max(max_numeric_option, value);
    } else {
      c = options.id_of(v.option);
      if (declared_options >= 0 && c >= declared_options)
        throw ValidationError(origin + ": more distinct options than the declared " +
                              std::to_string(declared_options));
    }
    if (!seen.insert({q, a}).second)
      throw ValidationError(origin + ": duplicate vote by annotator '" + v.annotator +
                            "' on question '" + v.question + "'");
    if (q == d.num_questions) {
      d.votes.emplace_back();
      ++d.num_questions;
    }
    d.votes[q].push_back({a, c});
  }

  d.num_annotators = static_cast<int>(annotators.names.size());
  d.question_names = std::move(questions.names);
  d.annotator_names = std::move(annotators.names);
  if (declared_options >= 0) {
    d.num_options = static_cast<int>(declared_options);
  } else {
    d.num_options = all_numeric ? static_cast<int>(max_numeric_option + 1)
                                : static_cast<int>(options.names.size());
  }
  if (all_numeric) {
    for (int c = 0; c < d.num_options; ++c) d.option_names.push_back(std::to_string(c));
  } else {
    d.option_names = std::move(options.names);
    for (int c = static_cast<int>(d.option_names.size()); c < d.num_options; ++c)
      d.option_names.push_back("option" + std::to_string(c));
  }

  d.validate();
  return d;
}

Dataset load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");

  std::vector<RawVote> raw;
  long declared_options = -1;
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
      if (fields.size() != 3 || fields[0] != "question" || fields[1] != "annotator" ||
          fields[2] != "option")
        throw ParseError(path + ":" + std::to_string(lineno) +
                         ": expected header 'question,annotator,option'");
      header_seen = true;
      continue;
    }
    if (fields.size() != 3)
      throw ParseError(path + ":" + std::to_string(lineno) + ": expected 3 fields, got " +
                       std::to_string(fields.size()));
    raw.push_back({fields[0], fields[1], fields[2]});
  }
  if (!header_seen) throw ParseError(path + ": missing header line");
  if (raw.empty()) throw ValidationError(path + ": no votes");
  return assemble(raw, declared_options, path);
}

std::string json_scalar_to_string(const nlohmann::json& v, const std::string& context) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw ParseError(context + ": ids must be strings or integers");
}

Dataset load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }

  long declared_options = -1;
  const nlohmann::json* votes = &j;
  if (j.is_object()) {
    if (j.contains("options")) declared_options = j.at("options").get<long>();
    if (!j.contains("votes")) throw ParseError(path + ": object form needs a 'votes' array");
    votes = &j.at("votes");
  }
  if (!votes->is_array()) throw ParseError(path + ": expected an array of vote objects");

  std::vector<RawVote> raw;
  for (const auto& v : *votes) {
    if (!v.is_object() || !v.contains("question") || !v.contains("annotator") ||
        !v.contains("option"))
      throw ParseError(path + ": each vote needs question/annotator/option keys");
    raw.push_back({json_scalar_to_string(v.at("question"), path),
                   json_scalar_to_string(v.at("annotator"), path),
                   json_scalar_to_string(v.at("option"), path)});
  }
  if (raw.empty()) throw ValidationError(path + ": no votes");
  return assemble(raw, declared_options, path);
}

}  // namespace

std::size_t Dataset::total_votes() const {
  std::size_t n = 0;
  for (const auto& qs : votes) n += qs.size();
  return n;
}

void Dataset::validate() const {
  if (num_questions <= 0) throw ValidationError("dataset has no questions");
  if (num_annotators <= 0) throw ValidationError("dataset has no annotators");
  if (num_options < 1) throw ValidationError("dataset has no options");
  if (static_cast<int>(votes.size()) != num_questions)
    throw ValidationError("vote table size disagrees with question count");
  for (int q = 0; q < num_questions; ++q) {
    if (votes[q].empty())
      throw ValidationError("question " + std::to_string(q) + " has no votes");
    std::unordered_set<int> seen;
    for (const Vote& v : votes[q]) {
      if (v.annotator < 0 || v.annotator >= num_annotators)
        throw ValidationError("annotator id out of range on question " + std::to_string(q));
      if (v.option < 0 || v.option >= num_options)
        throw ValidationError("option id out of range on question " + std::to_string(q));
      if (!seen.insert(v.annotator).second)
        throw ValidationError("duplicate vote by annotator " + std::to_string(v.annotator) +
                              " on question " + std::to_string(q));
    }
  }
}

Dataset load_dataset(const std::string& path, VoteFormat format) {
  return format == VoteFormat::csv ? load_csv(path) : load_json(path);
}

void save_dataset_csv(const Dataset& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open for writing");
  out << "# options=" << d.num_options << "\n";
  out << "question,annotator,option\n";
  for (int q = 0; q < d.num_questions; ++q)
    for (const Vote& v : d.votes[q])
      out << d.question_names[q] << ',' << d.annotator_names[v.annotator] << ','
          << d.option_names[v.option] << '\n';
}

GoldLabels load_gold(const std::string& path, const Dataset& d, std::size_t* skipped) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");

  std::unordered_map<std::string, int> question_index;
  for (int q = 0; q < d.num_questions; ++q) question_index.emplace(d.question_names[q], q);
  std::unordered_map<std::string, int> option_index;
  for (int c = 0; c < d.num_options; ++c) option_index.emplace(d.option_names[c], c);

  GoldLabels gold;
  std::size_t skip_count = 0;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto fields = split_csv_line(t);
    if (!header_seen) {
      if (fields.size() != 2 || fields[0] != "question" || fields[1] != "label")
        throw ParseError(path + ":" + std::to_string(lineno) +
                         ": expected header 'question,label'");
      header_seen = true;
      continue;
    }
    if (fields.size() != 2)
      throw ParseError(path + ":" + std::to_string(lineno) + ": expected 2 fields");
    auto qit = question_index.find(fields[0]);
    if (qit == question_index.end()) {
      ++skip_count;  // question dropped by preprocessing or absent from votes
      continue;
    }
    auto cit = option_index.find(fields[1]);
    if (cit == option_index.end())
      throw ValidationError(path + ":" + std::to_string(lineno) + ": unknown label '" +
                            fields[1] + "'");
    gold.labels[qit->second] = cit->second;
  }
  if (!header_seen) throw ParseError(path + ": missing header line");
  if (skipped) *skipped = skip_count;
  if (gold.labels.empty()) throw ValidationError(path + ": no gold label matches the dataset");
  return gold;
}

void save_gold_csv(const GoldLabels& gold, const Dataset& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open for writing");
  out << "question,label\n";
  for (const auto& [q, c] : gold.labels)
    out << d.question_names[q] << ',' << d.option_names[c] << '\n';
}

Dataset filter_min_annotators(const Dataset& d, int threshold) {
  if (threshold < 1) throw ValidationError("threshold must be >= 1");

  std::vector<bool> question_kept(d.num_questions, false);
  std::vector<bool> annotator_seen(d.num_annotators, false);
  int kept_questions = 0;
  for (int q = 0; q < d.num_questions; ++q) {
    if (static_cast<int>(d.votes[q].size()) < threshold) continue;
    question_kept[q] = true;
    ++kept_questions;
    for (const Vote& v : d.votes[q]) annotator_seen[v.annotator] = true;
  }
  if (kept_questions == 0)
    throw ValidationError("no question has " + std::to_string(threshold) + " votes");

  // Surviving annotators keep their relative order, so threshold 1 is the
  // identity on any valid dataset.
  std::vector<int> annotator_map(d.num_annotators, -1);
  Dataset out;
  for (int a = 0; a < d.num_annotators; ++a) {
    if (!annotator_seen[a]) continue;
    annotator_map[a] = out.num_annotators++;
    out.annotator_names.push_back(d.annotator_names[a]);
  }
  out.num_options = d.num_options;
  out.option_names = d.option_names;
  for (int q = 0; q < d.num_questions; ++q) {
    if (!question_kept[q]) continue;
    out.votes.emplace_back();
    out.question_names.push_back(d.question_names[q]);
    for (const Vote& v : d.votes[q])
      out.votes.back().push_back({annotator_map[v.annotator], v.option});
  }
  out.num_questions = static_cast<int>(out.votes.size());
  return out;
}

Dataset subsample_annotators(const Dataset& d, int k, std::uint64_t seed) {
  if (k < 1) throw ValidationError("k must be >= 1");
  Rng rng = substream(seed, "subsample");

  Dataset out = d;
  for (int q = 0; q < d.num_questions; ++q) {
    const int n = static_cast<int>(d.votes[q].size());
    if (n < k)
      throw ValidationError("question " + d.question_names[q] + " has " + std::to_string(n) +
                            " votes, fewer than k=" + std::to_string(k));
    if (n == k) continue;
    // Partial Fisher-Yates over vote indices, then restore file order.
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    for (int i = 0; i < k; ++i) {
      const int j = i + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(n - i)));
      std::swap(idx[i], idx[j]);
    }
    std::sort(idx.begin(), idx.begin() + k);
    std::vector<Vote> kept;
    kept.reserve(k);
    for (int i = 0; i < k; ++i) kept.push_back(d.votes[q][idx[i]]);
    out.votes[q] = std::move(kept);
  }
  return out;
}

Dataset remove_class(const Dataset& d, int dead_option, std::size_t* dropped_questions) {
  if (dead_option < 0 || dead_option >= d.num_options)
    throw ValidationError("option id " + std::to_string(dead_option) + " out of range");
  if (d.num_options <= 1) throw ValidationError("cannot remove the only option");

  Dataset out;
  out.num_annotators = d.num_annotators;
  out.annotator_names = d.annotator_names;
  out.num_options = d.num_options - 1;
  for (int c = 0; c < d.num_options; ++c)
    if (c != dead_option) out.option_names.push_back(d.option_names[c]);

  std::size_t dropped = 0;
  for (int q = 0; q < d.num_questions; ++q) {
    std::vector<Vote> kept;
    for (const Vote& v : d.votes[q]) {
      if (v.option == dead_option) continue;
      kept.push_back({v.annotator, v.option > dead_option ? v.option - 1 : v.option});
    }
    if (kept.empty()) {
      ++dropped;
      continue;
    }
    out.votes.push_back(std::move(kept));
    out.question_names.push_back(d.question_names[q]);
  }
  out.num_questions = static_cast<int>(out.votes.size());
  if (dropped_questions) *dropped_questions = dropped;
  if (out.num_questions == 0) throw ValidationError("removing the class left no questions");
  return out;
}

}  // namespace voteagg
