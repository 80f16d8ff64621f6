#include "coocfeat/theorems.hpp"

#include <algorithm>
#include <cmath>

#include "coocfeat/error.hpp"
#include "util.hpp"

namespace coocfeat {

namespace {

void require_variance(const WeightedSeries& s, const std::string& what) {
  const double var = weighted_variance(s);
  if (var <= kDegenerateVariance) {
    throw Error(ErrorKind::DegenerateVariance, what + " is constant (variance " + format_double(var) + ")");
  }
}

double corr_sq_named(const WeightedSeries& a, const std::string& a_name, const WeightedSeries& b,
                     const std::string& b_name) {
  require_variance(a, a_name);
  require_variance(b, b_name);
  return weighted_corr_sq(a, b);
}

std::string posterior_name(const ProfileModel& model, std::size_t t) {
  return "posterior P(" + model.task(t).name + "=1|X)";
}

std::string profile_name(const ProfileModel& model, std::size_t k) {
  return "profile P(" + model.feature(k).name + "=1|X)";
}

void require_y_functional(const ProfileModel& model, std::size_t t) {
  if (!model.is_y_functional(t)) {
    throw Error(ErrorKind::NotDeterministicLabel,
                "task '" + model.task(t).name + "' has fractional P(Y=1|X); the closed forms need a 0/1 label per word");
  }
}

}  // namespace

double raw_corr_score(const ProfileModel& model, std::size_t feature, std::size_t task) {
  return corr_sq_named(model.posterior(task), posterior_name(model, task), model.profile(feature),
                       profile_name(model, feature));
}

Grouping profile_grouping(const ProfileModel& model, std::span<const std::size_t> features) {
  std::vector<std::span<const Rational>> columns;
  columns.reserve(features.size());
  for (auto k : features) columns.push_back(model.profile_keys(k));
  return group_by_columns(columns, model.word_count());
}

double vector_bound(const ProfileModel& model, std::span<const std::size_t> features, std::size_t task) {
  if (features.empty()) throw Error(ErrorKind::InvalidArgument, "feature subset must be non-empty");
  const auto posterior = model.posterior(task);
  const double var_q = weighted_variance(posterior);
  if (var_q <= kDegenerateVariance) {
    throw Error(ErrorKind::DegenerateVariance, posterior_name(model, task) + " is constant");
  }
  const auto grouped = grouped_posterior(profile_grouping(model, features), posterior);
  return weighted_variance(grouped) / var_q;
}

double upper_bound_single(const ProfileModel& model, std::size_t feature, std::size_t task) {
  const std::size_t subset[] = {feature};
  return vector_bound(model, subset, task);
}

double DecompositionReport::residual() const { return std::fabs(total - fit_part * bound_part); }

DecompositionReport decompose_theorem2(const ProfileModel& model, std::size_t feature, std::size_t task,
                                       const ScoreFunction& f) {
  const auto posterior = model.posterior(task);
  const auto scored = f.apply(model.profile(feature), model.profile_keys(feature));
  const std::size_t subset[] = {feature};
  const auto grouped = grouped_posterior(profile_grouping(model, subset), posterior);

  DecompositionReport r;
  r.feature = model.feature(feature).name;
  r.task = model.task(task).name;
  r.function = f.describe();
  const std::string f_name = "f(profile) with f = " + r.function;
  r.total = corr_sq_named(posterior, posterior_name(model, task), scored, f_name);
  r.fit_part = corr_sq_named(grouped, "grouped posterior P(Y=1|S)", scored, f_name);
  r.bound_part = upper_bound_single(model, feature, task);
  return r;
}

ScoreFunction grouped_posterior_function(const ProfileModel& model, std::size_t feature, std::size_t task) {
  const std::size_t subset[] = {feature};
  const auto g = profile_grouping(model, subset);
  const auto means = group_means(g, model.posterior(task));
  std::map<Rational, double> table;
  for (std::size_t j = 0; j < g.group_count(); ++j) table.emplace(g.group_keys[j].front(), means[j]);
  return ScoreFunction::tabulated(std::move(table));
}

ScoreFunction pmi_function(const ProfileModel& model, std::size_t feature, double floor) {
  const double p_c1 = weighted_mean(model.profile(feature));
  if (!(p_c1 > 0.0)) {
    throw Error(ErrorKind::DegenerateVariance, "feature '" + model.feature(feature).name + "' never occurs");
  }
  return ScoreFunction::log_pmi(p_c1, floor);
}

CoMarginals co_marginals(const ProfileModel& model, std::size_t feature, std::size_t task) {
  const auto& w = *model.weights();
  const auto& p = model.feature(feature).values;
  const auto& q = model.task(task).values;
  CoMarginals out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    out.p_c1 += w[i] * p[i];
    out.p_y1 += w[i] * q[i];
    out.p_c1y1 += w[i] * q[i] * p[i];
  }
  return out;
}

namespace {

// Shared preconditions of the closed-form scores.
CoMarginals closed_form_inputs(const ProfileModel& model, std::size_t feature, std::size_t task, double& var_p) {
  require_y_functional(model, task);
  const auto cm = co_marginals(model, feature, task);
  if (cm.p_y1 <= kDegenerateVariance || cm.p_y1 >= 1.0 - kDegenerateVariance) {
    throw Error(ErrorKind::DegenerateTarget, "P(" + model.task(task).name + "=1) = " + format_double(cm.p_y1));
  }
  var_p = weighted_variance(model.profile(feature));
  if (var_p <= kDegenerateVariance) {
    throw Error(ErrorKind::ConstantProfile, profile_name(model, feature) + " is constant");
  }
  return cm;
}

}  // namespace

double corollary1_score(const ProfileModel& model, std::size_t feature, std::size_t task) {
  double var_p = 0.0;
  const auto cm = closed_form_inputs(model, feature, task, var_p);
  const double dep = cm.p_c1y1 - cm.p_c1 * cm.p_y1;
  return dep * dep / (cm.p_y1 * (1.0 - cm.p_y1) * var_p);
}

double mi_style_score(const ProfileModel& model, std::size_t feature, std::size_t task, MiSum sum) {
  double var_p = 0.0;
  const auto cm = closed_form_inputs(model, feature, task, var_p);
  const double label_lift = cm.p_c1y1 / (cm.p_c1 * cm.p_y1) - 1.0;
  const double numerator = cm.p_y1 / (1.0 - cm.p_y1) * label_lift * label_lift;
  const auto& w = *model.weights();
  const auto& p = model.feature(feature).values;
  double denominator = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    // P(C=1, x_i) / (P(C=1) P(x_i)) = P(C=1|x_i) / P(C=1)
    const double lift = p[i] / cm.p_c1 - 1.0;
    denominator += (sum == MiSum::Weighted ? w[i] : 1.0) * lift * lift;
  }
  return numerator / denominator;
}

Theorem3Report theorem3_factors(const ProfileModel& model, std::size_t feature, std::size_t task) {
  require_y_functional(model, task);
  const auto cm = co_marginals(model, feature, task);
  if (cm.p_y1 <= kDegenerateVariance || cm.p_y1 >= 1.0 - kDegenerateVariance) {
    throw Error(ErrorKind::DegenerateVariance, posterior_name(model, task) + " is constant");
  }
  const double c_given_y1 = cm.p_c1y1 / cm.p_y1;
  const double c_given_y0 = (cm.p_c1 - cm.p_c1y1) / (1.0 - cm.p_y1);

  // Two-point distribution of Y: index 0 is Y=1, index 1 is Y=0.
  const WeightedSeries label_values({1.0, 0.0}, std::vector<double>{cm.p_y1, 1.0 - cm.p_y1});
  const auto c_given_label = label_values.with_values({c_given_y1, c_given_y0});

  const auto& q = model.task(task).values;
  std::vector<double> lifted(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) lifted[i] = q[i] > 0.5 ? c_given_y1 : c_given_y0;
  const auto profile = model.profile(feature);

  Theorem3Report r;
  r.label_side = corr_sq_named(label_values, "P(Y=1|Y)", c_given_label, "P(C=1|Y)");
  r.profile_side = corr_sq_named(profile, profile_name(model, feature), profile.with_values(std::move(lifted)),
                                 "P(C=1|Y(X))");
  r.product = r.label_side * r.profile_side;
  return r;
}

double RatioCheck::residual() const { return std::fabs(lhs - rhs); }

RatioCheck theorem4_ratio_check(const ProfileModel& model, std::span<const std::size_t> features, std::size_t task,
                                std::size_t member) {
  if (std::find(features.begin(), features.end(), member) == features.end()) {
    throw Error(ErrorKind::InvalidArgument, "member feature is not in the subset");
  }
  const auto posterior = model.posterior(task);
  const auto by_vector = grouped_posterior(profile_grouping(model, features), posterior);
  const std::size_t single[] = {member};
  const auto by_member = grouped_posterior(profile_grouping(model, single), posterior);

  RatioCheck r;
  r.lhs = vector_bound(model, features, task);
  r.rhs = corr_sq_named(posterior, posterior_name(model, task), by_member, "P(Y=1|S_k)") /
          corr_sq_named(by_vector, "P(Y=1|x)", by_member, "P(Y=1|S_k)");
  return r;
}

double IdentityPair::residual() const { return skipped ? 0.0 : std::fabs(lhs - rhs); }

double Lemma1Report::max_residual() const {
  double worst = 0.0;
  for (const auto& p : identities) worst = std::max(worst, p.residual());
  return worst;
}

Lemma1Report lemma1_identities(const WeightedSeries& target, const Grouping& g, std::span<const double> f_per_group) {
  const auto grouped = grouped_posterior(g, target);
  const auto f_of_s = compose_on_groups(g, f_per_group, target);
  const double var_t = weighted_variance(target);
  const double var_g = weighted_variance(grouped);
  const double var_f = weighted_variance(f_of_s);

  Lemma1Report r;
  r.identities[0] = {weighted_cov(target, f_of_s), weighted_cov(grouped, f_of_s), false};
  r.identities[1] = {weighted_cov(target, grouped), var_g, false};
  if (var_t > kDegenerateVariance && var_g > kDegenerateVariance) {
    r.identities[2] = {weighted_corr(target, grouped), std::sqrt(var_g) / std::sqrt(var_t), false};
  } else {
    r.identities[2].skipped = true;
  }
  if (var_t > kDegenerateVariance && var_g > kDegenerateVariance && var_f > kDegenerateVariance) {
    r.identities[3] = {weighted_corr(target, f_of_s), weighted_corr(grouped, f_of_s) * weighted_corr(target, grouped),
                       false};
  } else {
    r.identities[3].skipped = true;
  }
  return r;
}

bool Theorem1Report::holds(double tolerance) const {
  return std::fabs(corr_sq - 1.0) <= tolerance && std::fabs(slope_fit - slope_analytic) <= tolerance &&
         std::fabs(intercept_fit - intercept_analytic) <= tolerance;
}

Theorem1Report theorem1_verify(const SyntheticJoint& joint) {
  const auto jm = joint_marginals(joint);
  const double dep = jm.p_c1y1 - jm.p_c1 * jm.p_y1;
  if (std::fabs(dep) <= kDegenerateVariance) {
    throw Error(ErrorKind::IndependentCY, "P(C=1,Y=1) = P(C=1)P(Y=1); the feature carries no label information");
  }
  const auto model = joint_to_model(joint);
  const auto posterior = model.posterior(0);
  const auto profile = model.profile(0);

  Theorem1Report r;
  r.corr_sq = corr_sq_named(posterior, "posterior", profile, "profile");
  const auto mq = weighted_moments(posterior);
  r.slope_fit = weighted_cov(posterior, profile) / mq.variance;
  r.intercept_fit = weighted_mean(profile) - r.slope_fit * mq.mean;
  r.slope_analytic = dep / (jm.p_y1 * (1.0 - jm.p_y1));
  r.intercept_analytic = (jm.p_c1 - jm.p_c1y1) / (1.0 - jm.p_y1);
  return r;
}

}  // namespace coocfeat
