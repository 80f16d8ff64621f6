#include "cli.hpp"

#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "coocfeat/error.hpp"
#include "coocfeat/estimate.hpp"
#include "coocfeat/exact.hpp"
#include "coocfeat/reports.hpp"
#include "coocfeat/select.hpp"
#include "coocfeat/theorems.hpp"
#include "coocfeat/verify.hpp"

namespace coocfeat::cli {

namespace {

struct RunConfig {
  std::string input;
  std::string features_path;
  std::string labels_path;
  std::size_t window = 2;
  bool lowercase = false;
  std::uint64_t min_count = 1;
  bool boundary = true;
  std::string task;
  std::string method = "raw-corr";
  std::string feature;
  std::string function = "identity";
  double epsilon = 1e-9;
  std::size_t budget = 0;
  std::size_t top = 0;  // 0 = all
  std::size_t trials = 200;
  std::uint64_t seed = 7;
  std::string suite;
  std::string format;
  std::string out_path;
  double fault = 0.0;
};

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out_path.empty()) {
    out << text;
  } else {
    write_file(cfg.out_path, text);
  }
}

bool tsv(const RunConfig& cfg) { return cfg.format == "tsv"; }

std::size_t resolve_task(const ProfileModel& model, const std::string& name) {
  if (name.empty()) {
    if (model.task_count() == 0) throw Error(ErrorKind::InvalidArgument, "model has no tasks");
    return 0;
  }
  return model.task_index(name);
}

ScoreFunction parse_function(const std::string& spec, const ProfileModel& model, std::size_t k, std::size_t t,
                             double epsilon) {
  if (spec == "identity") return ScoreFunction::identity();
  if (spec == "pmi" || spec == "log-pmi") return pmi_function(model, k, epsilon);
  if (spec == "square") return ScoreFunction::power(2.0);
  if (spec == "posterior") return grouped_posterior_function(model, k, t);
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty()) throw Error(ErrorKind::InvalidArgument, "bad number '" + s + "' in --function");
    return v;
  };
  if (spec.rfind("power:", 0) == 0) return ScoreFunction::power(number(spec.substr(6)));
  if (spec.rfind("affine:", 0) == 0) {
    const auto rest = spec.substr(7);
    const auto comma = rest.find(',');
    if (comma == std::string::npos) throw Error(ErrorKind::InvalidArgument, "affine needs a,b");
    return ScoreFunction::affine(number(rest.substr(0, comma)), number(rest.substr(comma + 1)));
  }
  throw Error(ErrorKind::InvalidArgument, "unknown --function '" + spec +
                                              "' (identity, pmi, square, posterior, power:E, affine:A,B)");
}

int cmd_count(const RunConfig& cfg, std::ostream& out) {
  ContextSpec spec;
  spec.window = cfg.window;
  spec.lowercase = cfg.lowercase;
  spec.min_count = cfg.min_count;
  spec.boundary = cfg.boundary;
  spec.validate();
  const auto corpus = read_file(cfg.input);
  const auto features = parse_feature_list(read_file(cfg.features_path));
  const auto labels = parse_label_source(read_file(cfg.labels_path));
  const auto result = build_model(corpus, spec, features, labels, std::thread::hardware_concurrency());
  write_file(cfg.out_path, tsv(cfg) ? export_tsv(result.model) : serialize_model(result.model));
  out << "words\t" << result.model.word_count() << "\n"
      << "total_tokens\t" << result.model.total_tokens() << "\n"
      << "dropped_words\t" << result.report.dropped_words << "\n"
      << "unknown_label_words\t" << result.report.unknown_label_words << "\n";
  return kOk;
}

int cmd_score(const RunConfig& cfg, std::ostream& out) {
  const auto counts = load_model(cfg.input);
  const auto model = to_profiles(counts);
  const auto t = resolve_task(model, cfg.task);
  auto report = rank_features(model, t, parse_rank_method(cfg.method), &counts);
  if (cfg.top > 0 && report.entries.size() > cfg.top) report.entries.resize(cfg.top);
  emit(cfg, tsv(cfg) ? to_tsv(report) : to_json(report), out);
  return kOk;
}

int cmd_decompose(const RunConfig& cfg, std::ostream& out) {
  const auto counts = load_model(cfg.input);
  const auto model = to_profiles(counts);
  const auto t = resolve_task(model, cfg.task);
  const auto k = model.feature_index(cfg.feature);
  const auto f = parse_function(cfg.function, model, k, t, cfg.epsilon);
  const auto report = decompose_theorem2(model, k, t, f);
  std::string bound_exact;
  if (exact::permitted(counts)) {
    const std::size_t subset[] = {k};
    if (auto b = exact::vector_bound(counts, subset, t)) bound_exact = exact::to_string(*b);
  }
  emit(cfg, tsv(cfg) ? to_tsv(report, bound_exact) : to_json(report, bound_exact), out);
  return kOk;
}

int cmd_select(const RunConfig& cfg, std::ostream& out) {
  const auto counts = load_model(cfg.input);
  const auto model = to_profiles(counts);
  const auto t = resolve_task(model, cfg.task);
  const auto budget = std::min(cfg.budget, model.feature_count());
  const auto result = greedy_select(model, t, budget, &counts);
  emit(cfg, tsv(cfg) ? to_tsv(result) : to_json(result), out);
  return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  VerifyOptions options;
  options.trials = cfg.trials;
  options.seed = cfg.seed;
  options.fault = cfg.fault;
  const auto report = run_suite(parse_suite(cfg.suite), options);
  emit(cfg, cfg.format == "json" ? to_json(report) : to_tsv(report), out);
  if (report.passed()) return kOk;
  for (const auto& c : report.checks) {
    if (c.passed()) continue;
    err << "FAIL " << c.name << ": " << c.failures << " of " << c.checked << " exceed " << c.tolerance
        << "; reproduce with --suite " << report.suite << " --seed " << report.seed << " (instance "
        << *c.failing_instance << ", derived seed " << *c.failing_seed << ")\n";
  }
  return kVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Co-occurrence feature analysis: counting, scoring, bounds and verification"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  const std::vector<std::string> formats = {"json", "tsv"};

  auto* count = app.add_subcommand("count", "Count a corpus into a model file");
  count->add_option("corpus", cfg.input, "Corpus text, one segment per line")->required();
  count->add_option("--features", cfg.features_path, "Feature word list")->required();
  count->add_option("--labels", cfg.labels_path, "Label file (lexicon or @occurrence header)")->required();
  count->add_option("--window", cfg.window, "Tokens on each side")->check(CLI::PositiveNumber);
  count->add_flag("--lowercase", cfg.lowercase, "Lowercase tokens, features and lexicon words");
  count->add_option("--min-count", cfg.min_count, "Drop words seen fewer times")->check(CLI::PositiveNumber);
  count->add_option("--boundary", cfg.boundary, "Windows stop at newlines (true/false)");
  count->add_option("--out", cfg.out_path, "Model file to write")->required();
  count->add_option("--format", cfg.format, "json model or tsv export")->check(CLI::IsMember(formats));

  auto* score = app.add_subcommand("score", "Rank context features for a task");
  score->add_option("model", cfg.input, "Model file")->required();
  score->add_option("--task", cfg.task, "Task name (default: first)");
  score->add_option("--method", cfg.method, "raw-corr, closed-form or upper-bound")
      ->check(CLI::IsMember({"raw-corr", "closed-form", "upper-bound"}));
  score->add_option("--top", cfg.top, "Rows to keep (0 = all)");
  score->add_option("--format", cfg.format)->check(CLI::IsMember(formats));
  score->add_option("--out", cfg.out_path, "Write the report here instead of stdout");

  auto* decompose = app.add_subcommand("decompose", "Split Corr^2 into fit and bound factors");
  decompose->add_option("model", cfg.input, "Model file")->required();
  decompose->add_option("--task", cfg.task, "Task name (default: first)");
  decompose->add_option("--feature", cfg.feature, "Feature name")->required();
  decompose->add_option("--function", cfg.function, "identity, pmi, square, posterior, power:E, affine:A,B");
  decompose->add_option("--epsilon", cfg.epsilon, "log-pmi floor for zero profile values")->check(CLI::PositiveNumber);
  decompose->add_option("--format", cfg.format)->check(CLI::IsMember(formats));
  decompose->add_option("--out", cfg.out_path, "Write the report here instead of stdout");

  auto* select = app.add_subcommand("select", "Greedy feature subset selection on the vector bound");
  select->add_option("model", cfg.input, "Model file")->required();
  select->add_option("--task", cfg.task, "Task name (default: first)");
  select->add_option("--budget", cfg.budget, "Maximum subset size")->required()->check(CLI::PositiveNumber);
  select->add_option("--format", cfg.format)->check(CLI::IsMember(formats));
  select->add_option("--out", cfg.out_path, "Write the report here instead of stdout");

  auto* verify = app.add_subcommand("verify", "Run a randomized certification suite");
  verify->add_option("--suite", cfg.suite, "lemma1, theorem1, theorem2, theorem34 or oracle")
      ->required()
      ->check(CLI::IsMember({"lemma1", "theorem1", "theorem2", "theorem34", "oracle"}));
  verify->add_option("--trials", cfg.trials, "Instances (oracle: random f per instance)");
  verify->add_option("--seed", cfg.seed, "Base seed");
  verify->add_option("--format", cfg.format)->check(CLI::IsMember(formats));
  verify->add_option("--out", cfg.out_path, "Write the report here instead of stdout");
  verify->add_option("--inject-fault", cfg.fault, "Offset every identity's left side (failure-path self-test)")
      ->group("");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (count->parsed()) return cmd_count(cfg, out);
    if (score->parsed()) return cmd_score(cfg, out);
    if (decompose->parsed()) return cmd_decompose(cfg, out);
    if (select->parsed()) return cmd_select(cfg, out);
    if (verify->parsed()) return cmd_verify(cfg, out, err);
  } catch (const coocfeat::Error& e) {
    err << e.what() << "\n";
    return is_statistical(e.kind()) ? kPreconditionError : kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace coocfeat::cli
