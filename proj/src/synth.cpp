#include "coocfeat/synth.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "coocfeat/error.hpp"
#include "coocfeat/theorems.hpp"

namespace coocfeat {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "Rng::below(0)");
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  for (;;) {
    const std::uint64_t x = engine_();
    if (x < limit) return x % n;
  }
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

// Exponential spacings give a uniform point on the simplex.
std::vector<double> random_simplex(Rng& rng, std::size_t m) {
  std::vector<double> v(m);
  double sum = 0.0;
  for (auto& x : v) {
    x = -std::log(1.0 - rng.uniform()) + 1e-3;
    sum += x;
  }
  for (auto& x : v) x /= sum;
  return v;
}

}  // namespace

SyntheticJoint gen_cond_indep(std::size_t m, std::uint64_t seed, CondIndepOptions options) {
  if (m < 2) throw Error(ErrorKind::InvalidArgument, "need at least two words");
  Rng rng(seed);
  SyntheticJoint::Factored f;
  f.p_y1 = rng.uniform(0.1, 0.9);
  f.p_c1_given_y[0] = rng.uniform(0.02, 0.98);
  if (options.equal_feature_rates) {
    f.p_c1_given_y[1] = f.p_c1_given_y[0];
  } else {
    do {
      f.p_c1_given_y[1] = rng.uniform(0.02, 0.98);
    } while (std::fabs(f.p_c1_given_y[1] - f.p_c1_given_y[0]) < 0.05);
  }
  f.p_x_given_y[0] = random_simplex(rng, m);
  f.p_x_given_y[1] = random_simplex(rng, m);
  SyntheticJoint joint{std::move(f)};
  joint.validate();
  return joint;
}

SyntheticJoint gen_random_joint(std::size_t m, std::uint64_t seed) {
  if (m < 2) throw Error(ErrorKind::InvalidArgument, "need at least two words");
  Rng rng(seed);
  SyntheticJoint::Table t;
  t.cells.resize(m);
  double sum = 0.0;
  for (auto& row : t.cells) {
    for (auto& c : row) {
      c = 0.01 + rng.uniform();
      sum += c;
    }
  }
  for (auto& row : t.cells) {
    for (auto& c : row) c /= sum;
  }
  SyntheticJoint joint{std::move(t)};
  joint.validate();
  return joint;
}

EmpiricalModel gen_random_counts(const RandomCountsOptions& options, std::uint64_t seed) {
  if (options.words < 2 || options.features < 1 || options.tasks < 1 || options.max_count < 1) {
    throw Error(ErrorKind::InvalidArgument, "random count model needs >= 2 words, >= 1 feature and task");
  }
  Rng rng(seed);
  const std::size_t m = options.words;
  const std::size_t nf = options.features;
  const std::size_t nt = options.tasks;
  std::vector<std::string> vocab(m);
  const std::size_t digits = std::to_string(m).size();
  for (std::size_t i = 0; i < m; ++i) {
    std::string id = std::to_string(i);
    vocab[i] = "w" + std::string(digits - id.size(), '0') + id;
  }
  std::vector<std::uint64_t> n(m), nc(m * nf), ny(m * nt);
  for (std::size_t i = 0; i < m; ++i) {
    n[i] = rng.between(1, options.max_count);
    for (std::size_t k = 0; k < nf; ++k) nc[i * nf + k] = rng.between(0, n[i]);
  }
  for (std::size_t t = 0; t < nt; ++t) {
    if (options.y_functional) {
      std::vector<std::uint8_t> label(m);
      for (auto& l : label) l = static_cast<std::uint8_t>(rng.below(2));
      // Both classes present, so P(Y=1) is strictly inside (0, 1).
      const std::size_t pos = rng.below(m);
      const std::size_t neg = (pos + 1 + rng.below(m - 1)) % m;
      label[pos] = 1;
      label[neg] = 0;
      for (std::size_t i = 0; i < m; ++i) ny[i * nt + t] = label[i] ? n[i] : 0;
    } else {
      for (std::size_t i = 0; i < m; ++i) ny[i * nt + t] = rng.between(0, n[i]);
    }
  }
  std::vector<std::string> features(nf), tasks(nt);
  for (std::size_t k = 0; k < nf; ++k) features[k] = "f" + std::to_string(k);
  for (std::size_t t = 0; t < nt; ++t) tasks[t] = "y" + std::to_string(t);
  return EmpiricalModel(ContextSpec{}, std::move(features), std::move(tasks), std::move(vocab), std::move(n),
                        std::move(nc), std::move(ny));
}

OracleResult brute_force_upper_bound(const ProfileModel& model, std::span<const std::size_t> features,
                                     std::size_t task, std::size_t trials, std::uint64_t seed) {
  const auto posterior = model.posterior(task);
  if (is_degenerate(posterior)) {
    throw Error(ErrorKind::DegenerateVariance, "posterior of task '" + model.task(task).name + "' is constant");
  }
  const auto g = profile_grouping(model, features);
  OracleResult r;
  r.trials = trials;
  r.bound = vector_bound(model, features, task);
  if (g.group_count() == 1) {
    r.all_degenerate = true;
    r.degenerate_trials = trials;
    return r;
  }

  std::vector<double> f(g.group_count());
  bool any = false;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng rng(derive_seed(seed, trial));
    for (auto& v : f) v = rng.uniform(-1.0, 1.0);
    const auto scored = compose_on_groups(g, f, posterior);
    if (is_degenerate(scored)) {
      ++r.degenerate_trials;
      continue;
    }
    const double score = weighted_corr_sq(posterior, scored);
    if (score > r.bound + kIdentityTolerance) ++r.violations;
    r.best_found = any ? std::max(r.best_found, score) : score;
    any = true;
  }

  const auto grouped = grouped_posterior(g, posterior);
  if (is_degenerate(grouped)) {
    // Each group has the same mean label: the bound is 0 and every f scores 0.
    r.posterior_score = 0.0;
    r.attained_by_posterior = std::fabs(r.bound) <= 1e-9;
  } else {
    r.posterior_score = weighted_corr_sq(posterior, grouped);
    r.attained_by_posterior = std::fabs(r.posterior_score - r.bound) <= 1e-9;
  }
  return r;
}

SubsetOracleResult exhaustive_subset_oracle(const ProfileModel& model, std::size_t task) {
  const std::size_t nf = model.feature_count();
  if (nf == 0 || nf > 12) throw Error(ErrorKind::InvalidArgument, "exhaustive oracle supports 1..12 features");
  SubsetOracleResult r;
  std::vector<std::size_t> subset;
  for (std::uint32_t mask = 1; mask < (1u << nf); ++mask) {
    subset.clear();
    for (std::size_t k = 0; k < nf; ++k) {
      if (mask & (1u << k)) subset.push_back(k);
    }
    const double b = vector_bound(model, subset, task);
    if (r.best_subset.empty() || b > r.best) {
      r.best = b;
      r.best_subset = subset;
    }
    if (subset.size() == nf) r.full = b;
  }
  return r;
}

}  // namespace coocfeat
