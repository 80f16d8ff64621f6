#pragma once

// Scores, bounds and decompositions for the correlation between the best
// word-level predictor P(Y=1|X) and features built from co-occurrence
// profiles P(C=1|X). Every function requires non-degenerate series and
// reports violations as typed errors rather than NaN or 0.

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "coocfeat/joint.hpp"
#include "coocfeat/model.hpp"
#include "coocfeat/probcore.hpp"

namespace coocfeat {

inline constexpr double kIdentityTolerance = 1e-10;
inline constexpr double kBoundSlack = 1e-12;

// Corr(P(Y=1|X), P(C=1|X))^2.
double raw_corr_score(const ProfileModel& model, std::size_t feature, std::size_t task);

// Grouping of the vocabulary by the exact tuple of profile values over the
// given features.
Grouping profile_grouping(const ProfileModel& model, std::span<const std::size_t> features);

// Var(P(Y=1|S)) / Var(P(Y=1|X)) with S the profile value of one feature:
// the ceiling on Corr(P(Y=1|X), f(P(C=1|X)))^2 over every f.
double upper_bound_single(const ProfileModel& model, std::size_t feature, std::size_t task);

struct DecompositionReport {
  double total = 0.0;       // Corr(P(Y=1|X), f(profile))^2
  double fit_part = 0.0;    // Corr(P(Y=1|S), f(profile))^2
  double bound_part = 0.0;  // Corr(P(Y=1|X), P(Y=1|S))^2
  std::string feature;
  std::string function;
  std::string task;

  double residual() const;
  bool identity_ok() const { return residual() <= kIdentityTolerance; }
};

DecompositionReport decompose_theorem2(const ProfileModel& model, std::size_t feature, std::size_t task,
                                       const ScoreFunction& f);

// f = P(Y=1|S) tabulated on the feature's exact profile values.
ScoreFunction grouped_posterior_function(const ProfileModel& model, std::size_t feature, std::size_t task);
// log(max(P(C=1|X), floor) / P(C=1)).
ScoreFunction pmi_function(const ProfileModel& model, std::size_t feature, double floor = 1e-9);

// P(C=1), P(Y=1) and P(C=1,Y=1) = sum_i P(x_i) q_i p_i. The joint term is
// exact only when Y is a function of X.
struct CoMarginals {
  double p_c1 = 0.0;
  double p_y1 = 0.0;
  double p_c1y1 = 0.0;
};
CoMarginals co_marginals(const ProfileModel& model, std::size_t feature, std::size_t task);

// (P(C=1,Y=1) - P(C=1)P(Y=1))^2 / (P(Y=1) P(Y=0) Var(P(C=1|X))).
double corollary1_score(const ProfileModel& model, std::size_t feature, std::size_t task);

enum class MiSum {
  Weighted,    // sum_i P(x_i) (ratio_i - 1)^2, equal to the closed form
  Unweighted,  // sum_i (ratio_i - 1)^2, diagnostic only
};
double mi_style_score(const ProfileModel& model, std::size_t feature, std::size_t task,
                      MiSum sum = MiSum::Weighted);

struct Theorem3Report {
  double label_side = 0.0;    // Corr(P(Y=1|Y), P(C=1|Y))^2 under (P(Y=1), P(Y=0))
  double profile_side = 0.0;  // Corr(P(C=1|X), P(C=1|Y))^2 under P(X)
  double product = 0.0;
};
Theorem3Report theorem3_factors(const ProfileModel& model, std::size_t feature, std::size_t task);

// Var(P(Y=1|x)) / Var(P(Y=1|X)) where x is the tuple of profile values
// over the feature subset.
double vector_bound(const ProfileModel& model, std::span<const std::size_t> features, std::size_t task);

struct RatioCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual() const;
};
// lhs = vector_bound(K); rhs = Corr(q, P(Y|S_k))^2 / Corr(P(Y|x), P(Y|S_k))^2.
RatioCheck theorem4_ratio_check(const ProfileModel& model, std::span<const std::size_t> features, std::size_t task,
                                std::size_t member);

struct IdentityPair {
  double lhs = 0.0;
  double rhs = 0.0;
  bool skipped = false;
  double residual() const;
};

// The four covariance/correlation identities for a function S = g(X):
//   (1) Cov(t, f(S)) = Cov(P(t|S), f(S))
//   (2) Cov(t, P(t|S)) = Var(P(t|S))
//   (3) Corr(t, P(t|S)) = sd(P(t|S)) / sd(t)
//   (4) Corr(t, f(S)) = Corr(P(t|S), f(S)) Corr(t, P(t|S))
// (3) and (4) are skipped when a variance they divide by is degenerate.
struct Lemma1Report {
  std::array<IdentityPair, 4> identities;
  double max_residual() const;
};
Lemma1Report lemma1_identities(const WeightedSeries& target, const Grouping& g, std::span<const double> f_per_group);

struct Theorem1Report {
  double corr_sq = 0.0;
  double slope_fit = 0.0;  // weighted least squares of profile on posterior
  double intercept_fit = 0.0;
  double slope_analytic = 0.0;  // (P(C=1,Y=1) - P(C=1)P(Y=1)) / (P(Y=1)P(Y=0))
  double intercept_analytic = 0.0;  // P(C=1|Y=0)

  // corr_sq within 1e-9 of 1 and both coefficients within 1e-9.
  bool holds(double tolerance = 1e-9) const;
};
// Throws IndependentCY when P(C=1,Y=1) = P(C=1)P(Y=1).
Theorem1Report theorem1_verify(const SyntheticJoint& joint);

}  // namespace coocfeat
