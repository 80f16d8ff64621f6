#pragma once

// Synthetic distributions and brute-force oracles that check the analytic
// scores extensionally.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "coocfeat/joint.hpp"
#include "coocfeat/model.hpp"

namespace coocfeat {

// mt19937_64 has a fully specified output sequence; the real-valued draws
// are derived from its raw output here rather than through <random>
// distributions, whose algorithms are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform on 0..n-1 (n > 0), rejection sampled.
  std::uint64_t below(std::uint64_t n);
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 of (seed, stream): independent per-instance seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

struct CondIndepOptions {
  // Diagnostic: force P(C=1|Y=1) = P(C=1|Y=0).
  bool equal_feature_rates = false;
};

// P(Y=1) ~ U[0.1, 0.9], |P(C=1|Y=1) - P(C=1|Y=0)| >= 0.05, random simplex
// vectors for P(X|Y); C is conditionally independent of X given Y.
SyntheticJoint gen_cond_indep(std::size_t m, std::uint64_t seed, CondIndepOptions options = {});

// General m x 2 x 2 table from normalized positive random numbers.
SyntheticJoint gen_random_joint(std::size_t m, std::uint64_t seed);

// A random count model: n_i ~ U{1..max_count}, n_c ~ U{0..n_i}. Small counts
// make repeated profile values, hence non-trivial groupings.
struct RandomCountsOptions {
  std::size_t words = 20;
  std::size_t features = 3;
  std::size_t tasks = 1;
  std::uint64_t max_count = 6;
  // Each word gets label 0 or 1 on every occurrence; both labels appear.
  bool y_functional = true;
};
EmpiricalModel gen_random_counts(const RandomCountsOptions& options, std::uint64_t seed);

struct OracleResult {
  double bound = 0.0;        // analytic Var(P(Y|S)) / Var(P(Y|X))
  double best_found = 0.0;   // max over random f of Corr(q, f(S))^2
  double posterior_score = 0.0;
  bool attained_by_posterior = false;  // f = P(Y|S) reaches the bound within 1e-9
  bool all_degenerate = false;         // single group: every f is constant
  std::size_t trials = 0;
  std::size_t degenerate_trials = 0;
  std::size_t violations = 0;          // samples above bound + 1e-10
};

// Random tabulated f over the groups of the profile tuple over `features`,
// f values uniform on [-1, 1] with one derived seed per trial. Throws
// DegenerateVariance for a constant posterior.
OracleResult brute_force_upper_bound(const ProfileModel& model, std::span<const std::size_t> features,
                                     std::size_t task, std::size_t trials, std::uint64_t seed);

struct SubsetOracleResult {
  double best = 0.0;
  std::vector<std::size_t> best_subset;
  double full = 0.0;  // vector bound of every feature
};

// Enumerates every non-empty feature subset (at most 12 features).
SubsetOracleResult exhaustive_subset_oracle(const ProfileModel& model, std::size_t task);

}  // namespace coocfeat
