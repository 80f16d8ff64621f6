#pragma once

// Corpus ingestion: whitespace tokenization, windowed binary context-feature
// detection and label counting into an EmpiricalModel.

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "coocfeat/model.hpp"

namespace coocfeat {

// Word-level labels: every occurrence of a word carries the word's label.
struct Lexicon {
  std::vector<std::string> tasks;
  std::unordered_map<std::string, std::vector<std::uint8_t>> labels;  // one 0/1 per task
};

// Occurrence-level labels: every corpus token is written `word/bits` with one
// '0' or '1' per task, e.g. `bank/1`.
struct OccurrenceLabels {
  std::vector<std::string> tasks;
  char separator = '/';
};

using LabelSource = std::variant<Lexicon, OccurrenceLabels>;

struct BuildReport {
  std::uint64_t raw_tokens = 0;            // every token seen, before any exclusion
  std::size_t dropped_words = 0;           // below min_count
  std::uint64_t dropped_tokens = 0;
  std::size_t unknown_label_words = 0;     // absent from the lexicon
  std::uint64_t unknown_label_tokens = 0;
};

struct BuildResult {
  EmpiricalModel model;
  BuildReport report;
};

// Counts the corpus. With spec.boundary set and threads > 1 the corpus is
// split at line boundaries and the shards are merged; the result is
// identical to the sequential count.
BuildResult build_model(std::string_view corpus, const ContextSpec& spec, std::span<const std::string> features,
                        const LabelSource& labels, unsigned threads = 1);

// Adds counts per word. Requires identical spec, features and tasks.
// Exact against a single-pass count when the inputs were not min_count
// filtered (filter afterwards with apply_min_count).
EmpiricalModel merge_counts(const EmpiricalModel& a, const EmpiricalModel& b);

EmpiricalModel apply_min_count(const EmpiricalModel& model, std::uint64_t min_count, std::size_t* dropped = nullptr);

// Model file: one JSON document, see README.
std::string serialize_model(const EmpiricalModel& model);
EmpiricalModel parse_model(std::string_view text);
void save_model(const EmpiricalModel& model, const std::filesystem::path& path);
EmpiricalModel load_model(const std::filesystem::path& path);

// `word n y_<task>... c_<feature>...`, tab separated, LF line endings.
std::string export_tsv(const EmpiricalModel& model);

// Feature file: one feature word per line; blank lines and lines starting
// with '#' are skipped.
std::vector<std::string> parse_feature_list(std::string_view text);

// Label file, tab separated. A header `word<TAB>task...` selects lexicon
// mode, with one `word<TAB>0|1...` row per word. A header
// `@occurrence<TAB>task...` selects occurrence mode and carries no rows.
LabelSource parse_label_source(std::string_view text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace coocfeat
