#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coocfeat/model.hpp"
#include "coocfeat/probcore.hpp"

namespace coocfeat {

enum class RankMethod { RawCorr, ClosedForm, UpperBound };

std::string_view to_string(RankMethod method);
RankMethod parse_rank_method(std::string_view name);

struct FeatureScore {
  std::string feature;
  std::size_t index = 0;
  double score = 0.0;
  RankMethod method = RankMethod::RawCorr;
  bool degenerate = false;
  std::optional<std::string> exact;  // reduced fraction when computed from counts
};

// Sorted by score descending, ties by feature name ascending.
struct FeatureScoreReport {
  std::string task;
  RankMethod method = RankMethod::RawCorr;
  std::vector<FeatureScore> entries;
};

// Constant-profile features are flagged degenerate with score 0. When
// `counts` is given, exact fractions accompany each score.
FeatureScoreReport rank_features(const ProfileModel& model, std::size_t task, RankMethod method,
                                 const EmpiricalModel* counts = nullptr);

struct SelectionStep {
  std::size_t feature = 0;
  std::string name;
  double bound = 0.0;  // vector bound after adding this feature
  std::optional<std::string> exact;
};

struct SelectionResult {
  std::string task;
  std::size_t budget = 0;
  std::vector<SelectionStep> steps;

  std::vector<std::size_t> selected() const;
  std::vector<double> trace() const;
};

inline constexpr double kMinGain = 1e-12;

// Greedy forward selection on the vector bound; stops early once the best
// marginal gain drops below 1e-12.
SelectionResult greedy_select(const ProfileModel& model, std::size_t task, std::size_t budget,
                              const EmpiricalModel* counts = nullptr);

struct Predictor {
  enum class Kind { GroupedPosterior, ScoredProfile };
  Kind kind = Kind::GroupedPosterior;
  ScoreFunction function;  // ScoredProfile only; applied to the single feature in K

  static Predictor grouped_posterior() { return Predictor{}; }
  static Predictor scored(ScoreFunction f) { return Predictor{Kind::ScoredProfile, std::move(f)}; }
};

struct PredictorEvaluation {
  std::optional<double> corr_sq;  // empty when the prediction is constant
  bool degenerate = false;
  double accuracy = 0.0;  // P(X)-weighted, prediction >= 0.5 means class 1
};

PredictorEvaluation evaluate_predictor(const ProfileModel& model, std::size_t task,
                                       std::span<const std::size_t> features, const Predictor& predictor);

}  // namespace coocfeat
