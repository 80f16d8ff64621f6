#include <cmath>
#include <random>

#include "coocfeat/error.hpp"
#include "coocfeat/probcore.hpp"
#include "coocfeat/synth.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace coocfeat;

namespace {

WeightedSeries uniform4(std::vector<double> v) { return WeightedSeries(std::move(v), std::vector<double>(4, 0.25)); }

template <typename Fn>
void expect_error(ErrorKind kind, Fn&& fn) {
  try {
    fn();
    FAIL("expected " << to_string(kind));
  } catch (const Error& e) {
    CHECK(e.kind() == kind);
  }
}

// Random positive weights and values in [0,1] on m words.
WeightedSeries random_series(Rng& rng, std::size_t m) {
  std::vector<double> w(m), v(m);
  double sum = 0;
  for (auto& x : w) sum += (x = 0.05 + rng.uniform());
  for (auto& x : w) x /= sum;
  for (auto& x : v) x = rng.uniform();
  return WeightedSeries(std::move(v), std::move(w));
}

Grouping random_grouping(Rng& rng, std::size_t m) {
  const auto groups = rng.between(1, m);
  std::vector<std::size_t> labels(m);
  for (auto& l : labels) l = rng.below(groups);
  return grouping_from_labels(labels);
}

}  // namespace

TEST_CASE("Rational keys are reduced and ordered") {
  CHECK(Rational::make(6, 10) == Rational::make(3, 5));
  CHECK(Rational::make(3, -6) == Rational{-1, 2});
  CHECK(Rational::make(1, 3) < Rational::make(1, 2));
  CHECK(Rational::quantize(0.1) == Rational::make(1, 10));
  // Values agreeing to 12 digits share a key.
  CHECK(Rational::quantize(0.3) == Rational::quantize(0.1 + 0.2));
  CHECK(Rational::quantize(1.0 / 3.0) != Rational::make(1, 3));
}

TEST_CASE("weighted_moments") {
  const auto m = weighted_moments(uniform4({1, 1, 0, 0}));
  CHECK(m.mean == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(m.variance == doctest::Approx(0.25).epsilon(1e-15));

  const auto c = weighted_moments(uniform4({0.3, 0.3, 0.3, 0.3}));
  CHECK(c.mean == doctest::Approx(0.3));
  CHECK(c.variance == doctest::Approx(0.0));
}

TEST_CASE("weighted series invariants") {
  expect_error(ErrorKind::InvalidSeries, [] { WeightedSeries({1, 2}, std::vector<double>{0.5, 0.4}); });
  expect_error(ErrorKind::InvalidSeries, [] { WeightedSeries({1, 2}, std::vector<double>{1.0, 0.0}); });
  expect_error(ErrorKind::InvalidSeries, [] { WeightedSeries({1}, std::vector<double>{0.5, 0.5}); });
  expect_error(ErrorKind::InvalidSeries, [] { WeightedSeries({}, std::vector<double>{}); });
}

TEST_CASE("weighted_cov") {
  const auto q = uniform4({1, 1, 0, 0});
  const auto p1 = uniform4({0.9, 0.7, 0.2, 0.2});
  CHECK(weighted_cov(q, p1) == doctest::Approx(0.15).epsilon(1e-14));
  CHECK(weighted_cov(p1, q) == weighted_cov(q, p1));
  CHECK(weighted_cov(p1, p1) == doctest::Approx(weighted_variance(p1)));
  CHECK(std::fabs(weighted_cov(p1, uniform4({2, 2, 2, 2}))) < 1e-16);

  const WeightedSeries other({1, 0, 0, 0}, std::vector<double>{0.1, 0.2, 0.3, 0.4});
  expect_error(ErrorKind::MismatchedSupport, [&] { weighted_cov(q, other); });
  const WeightedSeries shorter({1, 0}, std::vector<double>{0.5, 0.5});
  expect_error(ErrorKind::MismatchedSupport, [&] { weighted_cov(q, shorter); });
}

TEST_CASE("weighted_corr_sq") {
  const auto q = uniform4({1, 1, 0, 0});
  const auto p1 = uniform4({0.9, 0.7, 0.2, 0.2});
  CHECK(weighted_corr_sq(q, p1) == doctest::Approx(18.0 / 19.0).epsilon(1e-14));
  CHECK(weighted_corr_sq(p1, p1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(weighted_corr_sq(p1, p1.map([](double x) { return -3.0 * x + 7.0; })) == doctest::Approx(1.0).epsilon(1e-14));
  expect_error(ErrorKind::DegenerateVariance, [&] { weighted_corr_sq(q, uniform4({0.5, 0.5, 0.5, 0.5})); });
  expect_error(ErrorKind::DegenerateVariance, [&] { weighted_corr_sq(uniform4({0, 0, 0, 0}), p1); });
}

TEST_CASE("group_by_key") {
  std::vector<Rational> distinct = {Rational::make(1, 2), Rational::make(1, 3), Rational::make(1, 4)};
  CHECK(group_by_key(distinct).group_count() == 3);

  std::vector<Rational> same(5, Rational::make(2, 7));
  const auto single = group_by_key(same);
  CHECK(single.group_count() == 1);
  CHECK(single.group_index == std::vector<std::size_t>(5, 0));

  std::vector<Rational> p3 = {Rational::make(3, 5), Rational::make(1, 5), Rational::make(6, 10), Rational::make(2, 10)};
  const auto g = group_by_key(p3);
  CHECK(g.group_count() == 2);
  CHECK(g.group_index == std::vector<std::size_t>{0, 1, 0, 1});
  CHECK(g.group_keys[0].front() == Rational::make(3, 5));

  // Tuple keys refine single keys.
  std::vector<Rational> p2 = {Rational::make(1, 2), Rational::make(1, 10), Rational::make(1, 10), Rational::make(1, 2)};
  const std::span<const Rational> cols[] = {p3, p2};
  CHECK(group_by_columns(cols, 4).group_count() == 4);
}

TEST_CASE("grouped_posterior") {
  const auto q = uniform4({1, 1, 0, 0});
  const auto id = grouped_posterior(identity_grouping(4), q);
  CHECK(std::vector<double>(id.values().begin(), id.values().end()) == std::vector<double>{1, 1, 0, 0});

  const auto one = grouped_posterior(group_by_key(std::vector<Rational>(4, Rational{1, 1})), q);
  for (double v : one.values()) CHECK(v == doctest::Approx(0.5));

  std::vector<Rational> p3 = {Rational::make(3, 5), Rational::make(1, 5), Rational::make(3, 5), Rational::make(1, 5)};
  const auto by_p3 = grouped_posterior(group_by_key(p3), q);
  for (double v : by_p3.values()) CHECK(v == doctest::Approx(0.5));
  CHECK(by_p3.weight_vector() == q.weight_vector());
}

TEST_CASE("score functions") {
  const auto p = uniform4({0.9, 0.7, 0.0, 0.2});
  std::vector<Rational> keys;
  for (double v : p.values()) keys.push_back(Rational::quantize(v));

  const auto pmi = ScoreFunction::log_pmi(0.45, 1e-9).apply(p, keys);
  CHECK(pmi[0] == doctest::Approx(std::log(2.0)));
  CHECK(pmi[2] == doctest::Approx(std::log(1e-9 / 0.45)));
  CHECK(ScoreFunction::affine(2, 1).apply(p, keys)[1] == doctest::Approx(2.4));
  CHECK(ScoreFunction::power(2).apply(p, keys)[0] == doctest::Approx(0.81));

  std::map<Rational, double> table = {{Rational::make(9, 10), 1.0}, {Rational::make(7, 10), 2.0}, {Rational{0, 1}, 3.0}};
  expect_error(ErrorKind::MissingKey, [&] { ScoreFunction::tabulated(table).apply(p, keys); });
  table[Rational::make(1, 5)] = 4.0;
  CHECK(ScoreFunction::tabulated(table).apply(p, keys)[3] == 4.0);

  expect_error(ErrorKind::InvalidArgument, [] { ScoreFunction::log_pmi(0.5, 0.0); });
  CHECK(ScoreFunction::log_pmi(0.5).describe() == "log-pmi(marginal=0.5,floor=1e-09)");
}

TEST_CASE("probcore matches the exact oracle on random series") {
  Rng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = rng.between(2, 30);
    const auto a = random_series(rng, m);
    std::vector<double> bv(m);
    for (auto& x : bv) x = rng.uniform(-2, 2);
    const auto b = a.with_values(bv);

    std::vector<oracle::Q> w, av, bq;
    for (std::size_t i = 0; i < m; ++i) {
      w.emplace_back(a.weights()[i]);
      av.emplace_back(a[i]);
      bq.emplace_back(b[i]);
    }
    // Weights as doubles sum to 1 only approximately; normalize the oracle.
    oracle::Q total = 0;
    for (const auto& x : w) total += x;
    for (auto& x : w) x /= total;

    CHECK(std::fabs(weighted_cov(a, b) - oracle::d(oracle::cov(w, av, bq))) < 1e-13);
    CHECK(std::fabs(weighted_corr_sq(a, b) - oracle::d(oracle::corr_sq(w, av, bq))) < 1e-12);
  }
}

// Grouping identities on random series, partitions and f.
TEST_CASE("grouping properties") {
  Rng rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = rng.between(1, 40);
    const auto t = random_series(rng, m);
    const auto g = random_grouping(rng, m);
    const auto gp = grouped_posterior(g, t);
    std::vector<double> f(g.group_count());
    for (auto& x : f) x = rng.uniform(-1, 1);
    const auto fs = compose_on_groups(g, f, t);

    CHECK(weighted_variance(gp) <= weighted_variance(t) + 1e-15);
    CHECK(std::fabs(weighted_mean(gp) - weighted_mean(t)) < 1e-14);
    CHECK(std::fabs(weighted_cov(t, fs) - weighted_cov(gp, fs)) <= 1e-10);
    CHECK(std::fabs(weighted_cov(t, gp) - weighted_variance(gp)) <= 1e-10);
    if (!is_degenerate(t) && !is_degenerate(gp)) {
      CHECK(std::fabs(weighted_corr_sq(t, gp) - weighted_variance(gp) / weighted_variance(t)) <= 1e-10);
      if (!is_degenerate(fs)) {
        CHECK(std::fabs(weighted_corr_sq(t, fs) - weighted_corr_sq(gp, fs) * weighted_corr_sq(t, gp)) <= 1e-10);
      }
    }
    if (!is_degenerate(t) && m >= 2) {
      const auto other = t.map([&](double x) { return x * x + 0.1 * x; });
      if (!is_degenerate(other)) {
        const double base = weighted_corr_sq(t, other);
        const double a = rng.uniform(0.1, 5.0) * (rng.below(2) ? 1 : -1);
        const double shifted = weighted_corr_sq(t.map([&](double x) { return a * x + 3.0; }), other);
        CHECK(std::fabs(base - shifted) < 1e-10);
      }
    }
  }
}
