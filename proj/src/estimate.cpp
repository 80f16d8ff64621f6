#include "coocfeat/estimate.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <map>
#include <sstream>
#include <unordered_set>

#include "coocfeat/error.hpp"
#include "json.hpp"

namespace coocfeat {

namespace {

bool is_space(char ch) { return ch == ' ' || ch == '\t' || ch == '\r' || ch == '\v' || ch == '\f' || ch == '\n'; }

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) {
    if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch - 'A' + 'a');
  }
  return out;
}

void split_tokens(std::string_view text, std::vector<std::string_view>& out) {
  out.clear();
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) out.push_back(text.substr(start, i - start));
  }
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto pos = text.find('\n', start);
    if (pos == std::string_view::npos) {
      if (start < text.size()) lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  return lines;
}

// Resolved labelling configuration shared by all shards.
struct LabelPlan {
  std::vector<std::string> tasks;
  const Lexicon* lexicon = nullptr;
  std::unordered_map<std::string, std::vector<std::uint8_t>> lowered;  // lexicon keys after lowercasing
  bool occurrence = false;
  char separator = '/';
  bool lowercase = false;

  const std::vector<std::uint8_t>* lookup(const std::string& word) const {
    const auto& table = lowercase ? lowered : lexicon->labels;
    const auto it = table.find(word);
    return it == table.end() ? nullptr : &it->second;
  }
};

// Unfiltered counts for one shard, in first-appearance order.
struct ShardCounts {
  std::unordered_map<std::string, std::uint32_t> ids;
  std::vector<std::string> words;
  std::vector<std::uint64_t> n;
  std::vector<std::uint64_t> nc;
  std::vector<std::uint64_t> ny;
  std::map<std::string, std::uint64_t> unknown;  // lexicon misses: word -> tokens
  std::uint64_t raw_tokens = 0;
};

class ShardCounter {
 public:
  ShardCounter(const ContextSpec& spec, const std::unordered_map<std::string, std::uint32_t>& features,
               const LabelPlan& labels)
      : spec_(spec), features_(features), labels_(labels), stamp_(features.size(), 0) {}

  void count_segment(std::string_view segment) {
    split_tokens(segment, raw_);
    if (raw_.empty()) return;
    const std::size_t len = raw_.size();
    words_.resize(len);
    bits_.resize(len);
    feature_at_.assign(len, -1);
    for (std::size_t i = 0; i < len; ++i) {
      std::string_view tok = raw_[i];
      bits_[i] = {};
      if (labels_.occurrence) {
        const auto pos = tok.rfind(labels_.separator);
        if (pos == std::string_view::npos || pos == 0) {
          throw Error(ErrorKind::ParseError, "token '" + std::string(tok) + "' has no label annotation");
        }
        bits_[i] = tok.substr(pos + 1);
        if (bits_[i].size() != labels_.tasks.size() ||
            !std::all_of(bits_[i].begin(), bits_[i].end(), [](char ch) { return ch == '0' || ch == '1'; })) {
          throw Error(ErrorKind::ParseError, "token '" + std::string(tok) + "' needs one 0/1 per task");
        }
        tok = tok.substr(0, pos);
      }
      words_[i] = spec_.lowercase ? lower_ascii(tok) : std::string(tok);
      const auto it = features_.find(words_[i]);
      if (it != features_.end()) feature_at_[i] = static_cast<int>(it->second);
    }

    const std::size_t nf = features_.size();
    const std::size_t nt = labels_.tasks.size();
    for (std::size_t i = 0; i < len; ++i) {
      ++out_.raw_tokens;
      const std::vector<std::uint8_t>* lex = nullptr;
      if (!labels_.occurrence) {
        lex = labels_.lookup(words_[i]);
        if (lex == nullptr) {
          ++out_.unknown[words_[i]];
          continue;
        }
      }
      const auto [it, inserted] = out_.ids.try_emplace(words_[i], static_cast<std::uint32_t>(out_.words.size()));
      if (inserted) {
        out_.words.push_back(words_[i]);
        out_.n.push_back(0);
        out_.nc.resize(out_.nc.size() + nf, 0);
        out_.ny.resize(out_.ny.size() + nt, 0);
      }
      const std::size_t id = it->second;
      ++out_.n[id];

      ++epoch_;
      const std::size_t lo = i >= spec_.window ? i - spec_.window : 0;
      const std::size_t hi = std::min(len - 1, i + spec_.window);
      for (std::size_t j = lo; j <= hi; ++j) {
        if (j == i || feature_at_[j] < 0) continue;
        const auto k = static_cast<std::size_t>(feature_at_[j]);
        if (stamp_[k] == epoch_) continue;
        stamp_[k] = epoch_;
        ++out_.nc[id * nf + k];
      }
      for (std::size_t t = 0; t < nt; ++t) {
        const bool positive = labels_.occurrence ? bits_[i][t] == '1' : (*lex)[t] != 0;
        if (positive) ++out_.ny[id * nt + t];
      }
    }
  }

  ShardCounts take() { return std::move(out_); }

 private:
  const ContextSpec& spec_;
  const std::unordered_map<std::string, std::uint32_t>& features_;
  const LabelPlan& labels_;
  std::vector<std::uint64_t> stamp_;
  std::uint64_t epoch_ = 0;
  std::vector<std::string_view> raw_;
  std::vector<std::string> words_;
  std::vector<std::string_view> bits_;
  std::vector<int> feature_at_;
  ShardCounts out_;
};

EmpiricalModel to_model(ShardCounts&& counts, const ContextSpec& spec, const std::vector<std::string>& features,
                        const std::vector<std::string>& tasks) {
  const std::size_t m = counts.words.size();
  const std::size_t nf = features.size();
  const std::size_t nt = tasks.size();
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return counts.words[a] < counts.words[b]; });
  std::vector<std::string> vocab(m);
  std::vector<std::uint64_t> n(m), nc(m * nf), ny(m * nt);
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t i = order[r];
    vocab[r] = std::move(counts.words[i]);
    n[r] = counts.n[i];
    std::copy_n(counts.nc.begin() + static_cast<std::ptrdiff_t>(i * nf), nf, nc.begin() + static_cast<std::ptrdiff_t>(r * nf));
    std::copy_n(counts.ny.begin() + static_cast<std::ptrdiff_t>(i * nt), nt, ny.begin() + static_cast<std::ptrdiff_t>(r * nt));
  }
  return EmpiricalModel(spec, features, tasks, std::move(vocab), std::move(n), std::move(nc), std::move(ny));
}

std::vector<std::string_view> shard_corpus(std::string_view corpus, unsigned shards) {
  std::vector<std::string_view> out;
  if (shards <= 1 || corpus.empty()) {
    out.push_back(corpus);
    return out;
  }
  const std::size_t target = corpus.size() / shards + 1;
  std::size_t start = 0;
  while (start < corpus.size()) {
    std::size_t end = std::min(corpus.size(), start + target);
    if (end < corpus.size()) {
      const auto nl = corpus.find('\n', end);
      end = nl == std::string_view::npos ? corpus.size() : nl + 1;
    }
    out.push_back(corpus.substr(start, end - start));
    start = end;
  }
  return out;
}

}  // namespace

BuildResult build_model(std::string_view corpus, const ContextSpec& spec, std::span<const std::string> features,
                        const LabelSource& labels, unsigned threads) {
  spec.validate();
  if (features.empty()) throw Error(ErrorKind::InvalidArgument, "at least one context feature is required");

  std::vector<std::string> feature_names;
  std::unordered_map<std::string, std::uint32_t> feature_ids;
  for (const auto& f : features) {
    std::string name = spec.lowercase ? lower_ascii(f) : f;
    if (name.empty() || std::any_of(name.begin(), name.end(), is_space)) {
      throw Error(ErrorKind::InvalidArgument, "feature '" + f + "' must be a single non-empty word");
    }
    if (!feature_ids.try_emplace(name, static_cast<std::uint32_t>(feature_names.size())).second) {
      throw Error(ErrorKind::InvalidArgument, "duplicate feature '" + name + "'");
    }
    feature_names.push_back(std::move(name));
  }

  LabelPlan plan;
  plan.lowercase = spec.lowercase;
  if (const auto* lex = std::get_if<Lexicon>(&labels)) {
    plan.tasks = lex->tasks;
    plan.lexicon = lex;
    for (const auto& [word, row] : lex->labels) {
      if (row.size() != lex->tasks.size()) {
        throw Error(ErrorKind::InvalidArgument, "lexicon row for '" + word + "' has the wrong number of labels");
      }
      if (spec.lowercase) {
        const auto [it, inserted] = plan.lowered.try_emplace(lower_ascii(word), row);
        if (!inserted && it->second != row) {
          throw Error(ErrorKind::InvalidArgument, "lexicon entries conflict after lowercasing: '" + word + "'");
        }
      }
    }
  } else {
    const auto& occ = std::get<OccurrenceLabels>(labels);
    plan.tasks = occ.tasks;
    plan.occurrence = true;
    plan.separator = occ.separator;
  }
  if (plan.tasks.empty()) throw Error(ErrorKind::InvalidArgument, "at least one task is required");

  // Windows may only be sharded where they cannot straddle a shard edge.
  const unsigned shard_count = spec.boundary ? std::max(1u, threads) : 1u;
  const auto shards = shard_corpus(corpus, shard_count);

  auto count_one = [&](std::string_view text) {
    ShardCounter counter(spec, feature_ids, plan);
    if (spec.boundary) {
      for (auto line : split_lines(text)) counter.count_segment(line);
    } else {
      counter.count_segment(text);
    }
    return counter.take();
  };

  std::vector<ShardCounts> parts;
  if (shards.size() == 1) {
    parts.push_back(count_one(shards.front()));
  } else {
    std::vector<std::future<ShardCounts>> futures;
    futures.reserve(shards.size());
    for (auto shard : shards) futures.push_back(std::async(std::launch::async, count_one, shard));
    for (auto& f : futures) parts.push_back(f.get());
  }

  BuildReport report;
  std::map<std::string, std::uint64_t> unknown;
  ContextSpec raw_spec = spec;
  EmpiricalModel merged(raw_spec, feature_names, plan.tasks, {}, {}, {}, {});
  for (auto& part : parts) {
    report.raw_tokens += part.raw_tokens;
    for (const auto& [w, c] : part.unknown) unknown[w] += c;
    merged = merge_counts(merged, to_model(std::move(part), raw_spec, feature_names, plan.tasks));
  }
  if (report.raw_tokens == 0) throw Error(ErrorKind::EmptyCorpus, "corpus contains no tokens");
  report.unknown_label_words = unknown.size();
  for (const auto& [w, c] : unknown) report.unknown_label_tokens += c;

  const std::uint64_t before = merged.total_tokens();
  EmpiricalModel filtered = apply_min_count(merged, spec.min_count, &report.dropped_words);
  report.dropped_tokens = before - filtered.total_tokens();
  if (filtered.empty()) throw Error(ErrorKind::EmptyCorpus, "no words remain after filtering");
  return BuildResult{std::move(filtered), report};
}

EmpiricalModel merge_counts(const EmpiricalModel& a, const EmpiricalModel& b) {
  if (!(a.spec() == b.spec())) throw Error(ErrorKind::SchemaMismatch, "context specs differ");
  if (a.feature_names() != b.feature_names()) throw Error(ErrorKind::SchemaMismatch, "feature lists differ");
  if (a.task_names() != b.task_names()) throw Error(ErrorKind::SchemaMismatch, "task lists differ");
  const std::size_t nf = a.feature_count();
  const std::size_t nt = a.task_count();
  std::vector<std::string> vocab;
  std::vector<std::uint64_t> n, nc, ny;
  vocab.reserve(a.word_count() + b.word_count());
  auto append = [&](const EmpiricalModel& src, std::size_t i) {
    vocab.push_back(src.vocab()[i]);
    n.push_back(src.n(i));
    for (std::size_t k = 0; k < nf; ++k) nc.push_back(src.n_c(i, k));
    for (std::size_t t = 0; t < nt; ++t) ny.push_back(src.n_y(i, t));
  };
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.word_count() || j < b.word_count()) {
    if (j == b.word_count() || (i < a.word_count() && a.vocab()[i] < b.vocab()[j])) {
      append(a, i++);
    } else if (i == a.word_count() || b.vocab()[j] < a.vocab()[i]) {
      append(b, j++);
    } else {
      append(a, i);
      n.back() += b.n(j);
      for (std::size_t k = 0; k < nf; ++k) nc[nc.size() - nf + k] += b.n_c(j, k);
      for (std::size_t t = 0; t < nt; ++t) ny[ny.size() - nt + t] += b.n_y(j, t);
      ++i;
      ++j;
    }
  }
  return EmpiricalModel(a.spec(), a.feature_names(), a.task_names(), std::move(vocab), std::move(n), std::move(nc),
                        std::move(ny));
}

EmpiricalModel apply_min_count(const EmpiricalModel& model, std::uint64_t min_count, std::size_t* dropped) {
  const std::size_t nf = model.feature_count();
  const std::size_t nt = model.task_count();
  std::vector<std::string> vocab;
  std::vector<std::uint64_t> n, nc, ny;
  std::size_t removed = 0;
  for (std::size_t i = 0; i < model.word_count(); ++i) {
    if (model.n(i) < min_count) {
      ++removed;
      continue;
    }
    vocab.push_back(model.vocab()[i]);
    n.push_back(model.n(i));
    for (std::size_t k = 0; k < nf; ++k) nc.push_back(model.n_c(i, k));
    for (std::size_t t = 0; t < nt; ++t) ny.push_back(model.n_y(i, t));
  }
  if (dropped) *dropped = removed;
  return EmpiricalModel(model.spec(), model.feature_names(), model.task_names(), std::move(vocab), std::move(n),
                        std::move(nc), std::move(ny));
}

using ordered_json = nlohmann::ordered_json;

std::string serialize_model(const EmpiricalModel& model) {
  const auto& spec = model.spec();
  ordered_json spec_json;
  spec_json["window"] = spec.window;
  spec_json["lowercase"] = spec.lowercase;
  spec_json["min_count"] = spec.min_count;
  spec_json["boundary"] = spec.boundary;

  std::string out = "{\"version\":1,\"spec\":" + spec_json.dump() + ",\"features\":" +
                    ordered_json(model.feature_names()).dump() + ",\"tasks\":" +
                    ordered_json(model.task_names()).dump() +
                    ",\"total_tokens\":" + std::to_string(model.total_tokens()) + ",\"vocab\":[";
  for (std::size_t i = 0; i < model.word_count(); ++i) {
    ordered_json entry;
    entry["w"] = model.vocab()[i];
    entry["n"] = model.n(i);
    auto c = ordered_json::array();
    for (std::size_t k = 0; k < model.feature_count(); ++k) c.push_back(model.n_c(i, k));
    auto y = ordered_json::array();
    for (std::size_t t = 0; t < model.task_count(); ++t) y.push_back(model.n_y(i, t));
    entry["c"] = std::move(c);
    entry["y"] = std::move(y);
    out += i == 0 ? "\n" : ",\n";
    out += entry.dump();
  }
  out += "\n]}\n";
  return out;
}

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

const nlohmann::json& field(const nlohmann::json& obj, const char* name, const std::string& where) {
  if (!obj.is_object()) parse_fail(where + " is not an object");
  const auto it = obj.find(name);
  if (it == obj.end()) parse_fail(where + " is missing field '" + name + "'");
  return *it;
}

std::uint64_t count_value(const nlohmann::json& v, const std::string& where) {
  if (!v.is_number_unsigned()) parse_fail(where + " must be a non-negative integer");
  return v.get<std::uint64_t>();
}

std::vector<std::string> string_list(const nlohmann::json& v, const std::string& where) {
  if (!v.is_array()) parse_fail(where + " must be an array");
  std::vector<std::string> out;
  for (const auto& s : v) {
    if (!s.is_string()) parse_fail(where + " must contain strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

std::string location(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col) + " (offset " + std::to_string(byte) + ")";
}

}  // namespace

EmpiricalModel parse_model(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    parse_fail("malformed model file at " + location(text, byte));
  }
  const auto& version = field(doc, "version", "model");
  if (!version.is_number_integer()) parse_fail("version must be an integer");
  if (version.get<std::int64_t>() != 1) {
    throw Error(ErrorKind::VersionMismatch, "unsupported model version " + version.dump());
  }

  const auto& spec_json = field(doc, "spec", "model");
  ContextSpec spec;
  spec.window = static_cast<std::size_t>(count_value(field(spec_json, "window", "spec"), "spec.window"));
  const auto& lower = field(spec_json, "lowercase", "spec");
  const auto& boundary = field(spec_json, "boundary", "spec");
  if (!lower.is_boolean() || !boundary.is_boolean()) parse_fail("spec flags must be booleans");
  spec.lowercase = lower.get<bool>();
  spec.boundary = boundary.get<bool>();
  spec.min_count = count_value(field(spec_json, "min_count", "spec"), "spec.min_count");
  if (spec.window < 1 || spec.min_count < 1) parse_fail("spec.window and spec.min_count must be >= 1");

  auto features = string_list(field(doc, "features", "model"), "features");
  auto tasks = string_list(field(doc, "tasks", "model"), "tasks");
  const std::uint64_t total = count_value(field(doc, "total_tokens", "model"), "total_tokens");

  const auto& vocab_json = field(doc, "vocab", "model");
  if (!vocab_json.is_array()) parse_fail("vocab must be an array");
  std::vector<std::string> vocab;
  std::vector<std::uint64_t> n, nc, ny;
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < vocab_json.size(); ++i) {
    const auto& entry = vocab_json[i];
    const std::string where = "vocab entry " + std::to_string(i);
    const auto& w = field(entry, "w", where);
    if (!w.is_string()) parse_fail(where + ": w must be a string");
    const auto occ = count_value(field(entry, "n", where), where + ".n");
    if (occ == 0) parse_fail(where + ": n must be > 0");
    const auto& c = field(entry, "c", where);
    const auto& y = field(entry, "y", where);
    if (!c.is_array() || c.size() != features.size()) parse_fail(where + ": c needs one count per feature");
    if (!y.is_array() || y.size() != tasks.size()) parse_fail(where + ": y needs one count per task");
    for (const auto& v : c) {
      const auto x = count_value(v, where + ".c");
      if (x > occ) parse_fail(where + ": feature count exceeds n");
      nc.push_back(x);
    }
    for (const auto& v : y) {
      const auto x = count_value(v, where + ".y");
      if (x > occ) parse_fail(where + ": label count exceeds n");
      ny.push_back(x);
    }
    vocab.push_back(w.get<std::string>());
    if (i > 0 && !(vocab[i - 1] < vocab[i])) parse_fail(where + ": vocab not sorted ascending");
    n.push_back(occ);
    sum += occ;
  }
  if (sum != total) parse_fail("total_tokens " + std::to_string(total) + " != sum of n " + std::to_string(sum));
  try {
    return EmpiricalModel(spec, std::move(features), std::move(tasks), std::move(vocab), std::move(n), std::move(nc),
                          std::move(ny));
  } catch (const Error& e) {
    parse_fail(e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path.string() + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorKind::IoError, "write failed for '" + path.string() + "'");
}

void save_model(const EmpiricalModel& model, const std::filesystem::path& path) {
  write_file(path, serialize_model(model));
}

EmpiricalModel load_model(const std::filesystem::path& path) { return parse_model(read_file(path)); }

std::string export_tsv(const EmpiricalModel& model) {
  std::string out = "word\tn";
  for (const auto& t : model.task_names()) out += "\ty_" + t;
  for (const auto& f : model.feature_names()) out += "\tc_" + f;
  out += '\n';
  for (std::size_t i = 0; i < model.word_count(); ++i) {
    out += model.vocab()[i];
    out += '\t' + std::to_string(model.n(i));
    for (std::size_t t = 0; t < model.task_count(); ++t) out += '\t' + std::to_string(model.n_y(i, t));
    for (std::size_t k = 0; k < model.feature_count(); ++k) out += '\t' + std::to_string(model.n_c(i, k));
    out += '\n';
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find('\t', start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

std::vector<std::string> parse_feature_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t line_no = 0;
  for (auto line : split_lines(text)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    if (std::any_of(line.begin(), line.end(), is_space)) {
      parse_fail("feature file line " + std::to_string(line_no) + ": one word per line");
    }
    out.emplace_back(line);
  }
  return out;
}

LabelSource parse_label_source(std::string_view text) {
  const auto lines = split_lines(text);
  std::size_t idx = 0;
  while (idx < lines.size() && trim(lines[idx]).empty()) ++idx;
  if (idx == lines.size()) parse_fail("label file is empty");
  const auto header = split_tabs(lines[idx]);
  if (header.size() < 2) parse_fail("label file header needs at least one task column");
  std::vector<std::string> tasks;
  std::unordered_set<std::string> seen;
  for (std::size_t c = 1; c < header.size(); ++c) {
    if (header[c].empty() || !seen.emplace(header[c]).second) parse_fail("label header has an empty or duplicate task");
    tasks.emplace_back(header[c]);
  }
  if (header[0] == "@occurrence") {
    OccurrenceLabels occ;
    occ.tasks = std::move(tasks);
    return occ;
  }
  if (header[0] != "word") parse_fail("label header must start with 'word' or '@occurrence'");
  Lexicon lex;
  lex.tasks = std::move(tasks);
  for (std::size_t i = idx + 1; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    const auto cols = split_tabs(lines[i]);
    const std::string where = "label file line " + std::to_string(i + 1);
    if (cols.size() != lex.tasks.size() + 1) parse_fail(where + ": expected " + std::to_string(lex.tasks.size() + 1) + " columns");
    std::vector<std::uint8_t> row;
    for (std::size_t c = 1; c < cols.size(); ++c) {
      if (cols[c] != "0" && cols[c] != "1") parse_fail(where + ": labels must be 0 or 1");
      row.push_back(cols[c] == "1" ? 1 : 0);
    }
    if (!lex.labels.try_emplace(std::string(cols[0]), std::move(row)).second) {
      parse_fail(where + ": duplicate word '" + std::string(cols[0]) + "'");
    }
  }
  return lex;
}

}  // namespace coocfeat
