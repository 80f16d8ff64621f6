#include <cmath>
#include <set>

#include "coocfeat/error.hpp"
#include "coocfeat/synth.hpp"
#include "coocfeat/theorems.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace coocfeat;

TEST_CASE("Rng is pinned to the raw engine output") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  std::mt19937_64 ref(7);
  Rng r(7);
  CHECK(r.next() == ref());
  const double u = r.uniform();
  CHECK(u == static_cast<double>(ref() >> 11) * 0x1.0p-53);
  for (int i = 0; i < 1000; ++i) {
    const auto v = r.below(5);
    CHECK(v < 5);
    const double x = r.uniform(-1, 1);
    CHECK(x >= -1.0);
    CHECK(x < 1.0);
  }
  CHECK(derive_seed(7, 0) != derive_seed(7, 1));
  CHECK(derive_seed(7, 3) == derive_seed(7, 3));
}

TEST_CASE("conditionally independent generator") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto joint = gen_cond_indep(3 + seed % 10, seed);
    joint.validate();
    const auto& fj = std::get<FactoredJoint>(joint.form);
    CHECK(fj.p_y1 >= 0.1);
    CHECK(fj.p_y1 <= 0.9);
    CHECK(std::fabs(fj.p_c1_given_y[1] - fj.p_c1_given_y[0]) >= 0.05);
    CHECK(theorem1_verify(joint).holds());
  }
  CHECK(joint_to_json(gen_cond_indep(6, 1)) != joint_to_json(gen_cond_indep(6, 2)));
  CHECK(joint_to_json(gen_cond_indep(6, 1)) == joint_to_json(gen_cond_indep(6, 1)));

  const auto forced = gen_cond_indep(5, 3, CondIndepOptions{true});
  try {
    theorem1_verify(forced);
    FAIL("expected IndependentCY");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IndependentCY);
  }
}

TEST_CASE("general random joints are rarely affine") {
  std::size_t rejected = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto joint = gen_random_joint(8, seed);
    joint.validate();
    try {
      if (!theorem1_verify(joint).holds()) ++rejected;
    } catch (const Error&) {
      ++rejected;
    }
  }
  CHECK(rejected >= 190);
}

TEST_CASE("random count models") {
  RandomCountsOptions opt;
  opt.words = 12;
  opt.features = 4;
  opt.tasks = 2;
  const auto m = gen_random_counts(opt, 11);
  CHECK(m.word_count() == 12);
  CHECK(m.feature_count() == 4);
  CHECK(m.task_count() == 2);
  CHECK(m == gen_random_counts(opt, 11));
  CHECK_FALSE(m == gen_random_counts(opt, 12));
  const auto p = to_profiles(m);
  for (std::size_t t = 0; t < 2; ++t) {
    CHECK(p.is_y_functional(t));
    CHECK_FALSE(is_degenerate(p.posterior(t)));
  }
  opt.y_functional = false;
  opt.max_count = 20;
  bool fractional = false;
  for (std::uint64_t s = 0; s < 10; ++s) fractional |= !to_profiles(gen_random_counts(opt, s)).is_y_functional(0);
  CHECK(fractional);
}

TEST_CASE("brute-force oracle on the four-word fixture") {
  const auto m = fixtures::t4();
  const std::vector<std::size_t> p1 = {0};
  const auto r = brute_force_upper_bound(m, p1, 0, 1000, 3);
  CHECK(r.bound == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r.best_found <= 1.0 + 1e-10);
  CHECK(r.best_found > 0.5);
  CHECK(r.attained_by_posterior);
  CHECK(r.violations == 0);
  CHECK(r.trials == 1000);

  const std::vector<std::size_t> p3 = {2};
  const auto flat = brute_force_upper_bound(m, p3, 0, 100, 3);
  CHECK(flat.bound == doctest::Approx(0.0));
  CHECK_FALSE(flat.all_degenerate);

  const auto cf = to_profiles(parse_model(read_file(fixtures::fixture_path("constant_feature.json"))));
  const std::vector<std::size_t> flat_feature = {0};
  const auto single = brute_force_upper_bound(cf, flat_feature, 0, 50, 3);
  CHECK(single.all_degenerate);
  CHECK(single.degenerate_trials == 50);
  CHECK(single.bound == 0.0);
}

TEST_CASE("brute-force oracle on random models") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RandomCountsOptions opt;
    opt.words = 15;
    const auto m = to_profiles(gen_random_counts(opt, seed));
    const std::vector<std::size_t> k = {seed % 3};
    const auto r = brute_force_upper_bound(m, k, 0, 300, seed);
    CHECK(r.violations == 0);
    CHECK(r.best_found <= r.bound + 1e-10);
    if (!r.all_degenerate) CHECK(r.attained_by_posterior);
  }
}

TEST_CASE("exhaustive subset oracle") {
  const auto t4 = fixtures::t4();
  const auto r = exhaustive_subset_oracle(t4, 0);
  CHECK(r.best == doctest::Approx(1.0));
  CHECK(r.full == doctest::Approx(1.0));
  CHECK(r.best_subset == std::vector<std::size_t>{0});

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RandomCountsOptions opt;
    opt.features = 5;
    const auto m = to_profiles(gen_random_counts(opt, seed));
    const auto s = exhaustive_subset_oracle(m, 0);
    CHECK(s.full >= s.best - 1e-12);
  }
}
