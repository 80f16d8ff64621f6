#include "coocfeat/select.hpp"

#include <algorithm>
#include <cmath>

#include "coocfeat/error.hpp"
#include "coocfeat/exact.hpp"
#include "coocfeat/theorems.hpp"

namespace coocfeat {

std::string_view to_string(RankMethod method) {
  switch (method) {
    case RankMethod::RawCorr: return "raw-corr";
    case RankMethod::ClosedForm: return "closed-form";
    case RankMethod::UpperBound: return "upper-bound";
  }
  return "raw-corr";
}

RankMethod parse_rank_method(std::string_view name) {
  if (name == "raw-corr") return RankMethod::RawCorr;
  if (name == "closed-form") return RankMethod::ClosedForm;
  if (name == "upper-bound") return RankMethod::UpperBound;
  throw Error(ErrorKind::InvalidArgument, "unknown method '" + std::string(name) +
                                              "' (expected raw-corr, closed-form or upper-bound)");
}

namespace {

void require_target(const ProfileModel& model, std::size_t task) {
  if (is_degenerate(model.posterior(task))) {
    throw Error(ErrorKind::DegenerateTarget, "posterior of task '" + model.task(task).name + "' is constant");
  }
}

}  // namespace

FeatureScoreReport rank_features(const ProfileModel& model, std::size_t task, RankMethod method,
                                 const EmpiricalModel* counts) {
  if (model.feature_count() == 0) throw Error(ErrorKind::InvalidArgument, "model has no features");
  if (method == RankMethod::ClosedForm && !model.is_y_functional(task)) {
    throw Error(ErrorKind::NotDeterministicLabel,
                "closed-form ranking needs a 0/1 label per word; task '" + model.task(task).name + "' is fractional");
  }
  require_target(model, task);
  const bool with_exact = counts != nullptr && exact::permitted(*counts);

  FeatureScoreReport report;
  report.task = model.task(task).name;
  report.method = method;
  for (std::size_t k = 0; k < model.feature_count(); ++k) {
    FeatureScore entry;
    entry.feature = model.feature(k).name;
    entry.index = k;
    entry.method = method;
    if (is_degenerate(model.profile(k))) {
      entry.degenerate = true;
      report.entries.push_back(std::move(entry));
      continue;
    }
    std::optional<exact::BigRational> fraction;
    switch (method) {
      case RankMethod::RawCorr:
        entry.score = raw_corr_score(model, k, task);
        if (with_exact) fraction = exact::raw_corr_score(*counts, k, task);
        break;
      case RankMethod::ClosedForm:
        entry.score = corollary1_score(model, k, task);
        // The closed form equals the raw correlation in this regime.
        if (with_exact) fraction = exact::raw_corr_score(*counts, k, task);
        break;
      case RankMethod::UpperBound: {
        entry.score = upper_bound_single(model, k, task);
        const std::size_t subset[] = {k};
        if (with_exact) fraction = exact::vector_bound(*counts, subset, task);
        break;
      }
    }
    if (fraction) {
      // The correctly rounded exact value: rounding noise must not reorder ties.
      entry.score = exact::to_double(*fraction);
      entry.exact = exact::to_string(*fraction);
    }
    report.entries.push_back(std::move(entry));
  }
  std::sort(report.entries.begin(), report.entries.end(), [](const FeatureScore& a, const FeatureScore& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.feature < b.feature;
  });
  return report;
}

std::vector<std::size_t> SelectionResult::selected() const {
  std::vector<std::size_t> out;
  for (const auto& s : steps) out.push_back(s.feature);
  return out;
}

std::vector<double> SelectionResult::trace() const {
  std::vector<double> out;
  for (const auto& s : steps) out.push_back(s.bound);
  return out;
}

SelectionResult greedy_select(const ProfileModel& model, std::size_t task, std::size_t budget,
                              const EmpiricalModel* counts) {
  if (budget < 1 || budget > model.feature_count()) {
    throw Error(ErrorKind::InvalidArgument, "budget must be between 1 and the number of features (" +
                                                std::to_string(model.feature_count()) + ")");
  }
  require_target(model, task);

  // Candidates are visited in name order so that ties resolve to the
  // smallest name under a strict comparison.
  std::vector<std::size_t> by_name(model.feature_count());
  for (std::size_t k = 0; k < by_name.size(); ++k) by_name[k] = k;
  std::sort(by_name.begin(), by_name.end(),
            [&](std::size_t a, std::size_t b) { return model.feature(a).name < model.feature(b).name; });

  SelectionResult result;
  result.task = model.task(task).name;
  result.budget = budget;
  std::vector<std::size_t> chosen;
  std::vector<bool> used(model.feature_count(), false);
  double current = 0.0;
  while (chosen.size() < budget) {
    std::optional<std::size_t> best;
    double best_bound = current;
    for (auto k : by_name) {
      if (used[k]) continue;
      chosen.push_back(k);
      const double b = vector_bound(model, chosen, task);
      chosen.pop_back();
      if (!best || b > best_bound) {
        best = k;
        best_bound = b;
      }
    }
    if (!best || best_bound - current < kMinGain) break;
    used[*best] = true;
    chosen.push_back(*best);
    current = best_bound;
    SelectionStep step{*best, model.feature(*best).name, best_bound, std::nullopt};
    if (counts != nullptr && exact::permitted(*counts)) {
      if (auto fr = exact::vector_bound(*counts, chosen, task)) step.exact = exact::to_string(*fr);
    }
    result.steps.push_back(std::move(step));
  }
  return result;
}

PredictorEvaluation evaluate_predictor(const ProfileModel& model, std::size_t task,
                                       std::span<const std::size_t> features, const Predictor& predictor) {
  if (features.empty()) throw Error(ErrorKind::InvalidArgument, "feature subset must be non-empty");
  if (!model.is_y_functional(task)) {
    throw Error(ErrorKind::NotDeterministicLabel, "accuracy needs a 0/1 label per word");
  }
  const auto posterior = model.posterior(task);
  std::optional<WeightedSeries> prediction;
  if (predictor.kind == Predictor::Kind::GroupedPosterior) {
    prediction = grouped_posterior(profile_grouping(model, features), posterior);
  } else {
    if (features.size() != 1) throw Error(ErrorKind::InvalidArgument, "f(profile) takes exactly one feature");
    const auto k = features.front();
    prediction = predictor.function.apply(model.profile(k), model.profile_keys(k));
  }

  PredictorEvaluation eval;
  if (is_degenerate(*prediction) || is_degenerate(posterior)) {
    eval.degenerate = true;
  } else {
    eval.corr_sq = weighted_corr_sq(*prediction, posterior);
  }
  const auto w = posterior.weights();
  for (std::size_t i = 0; i < w.size(); ++i) {
    const bool predicted = (*prediction)[i] >= 0.5;
    const bool actual = posterior[i] > 0.5;
    if (predicted == actual) eval.accuracy += w[i];
  }
  return eval;
}

}  // namespace coocfeat
