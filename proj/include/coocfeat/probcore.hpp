#pragma once

// Weighted statistics over functions of a discrete word variable, and the
// grouping machinery for variables that are themselves functions of it.
//
// Every expectation here is taken under the word distribution P(X): a series
// is a vector of per-word values paired with that weight vector.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace coocfeat {

inline constexpr double kDegenerateVariance = 1e-12;
inline constexpr double kWeightSumTolerance = 1e-9;
inline constexpr double kSupportTolerance = 1e-12;

// Reduced fraction with a positive denominator. Used as an exact grouping key.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den);
  // Rounds to 12 decimal digits, then reduces.
  static Rational quantize(double value);

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);
};

using KeyTuple = std::vector<Rational>;

struct KeyTupleHash {
  std::size_t operator()(const KeyTuple& key) const noexcept;
};

using WeightVector = std::shared_ptr<const std::vector<double>>;

// Validates (each weight > 0, sum 1 within 1e-9) and shares.
WeightVector make_weights(std::vector<double> weights);

class WeightedSeries {
 public:
  WeightedSeries(std::vector<double> values, WeightVector weights);
  WeightedSeries(std::vector<double> values, std::vector<double> weights);

  std::span<const double> values() const { return values_; }
  std::span<const double> weights() const { return *weights_; }
  const WeightVector& weight_vector() const { return weights_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  // Same support, new values.
  WeightedSeries with_values(std::vector<double> values) const;
  // Pointwise transform on the same support.
  WeightedSeries map(const std::function<double(double)>& fn) const;

 private:
  std::vector<double> values_;
  WeightVector weights_;
};

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

Moments weighted_moments(const WeightedSeries& s);
double weighted_mean(const WeightedSeries& s);
double weighted_variance(const WeightedSeries& s);

// Throws MismatchedSupport when the two series do not share their weights.
double weighted_cov(const WeightedSeries& a, const WeightedSeries& b);

// Squared Pearson correlation. Throws DegenerateVariance when either variance
// is at or below 1e-12.
double weighted_corr_sq(const WeightedSeries& a, const WeightedSeries& b);
// Signed correlation, same preconditions.
double weighted_corr(const WeightedSeries& a, const WeightedSeries& b);

bool is_degenerate(const WeightedSeries& s);

void require_same_support(const WeightedSeries& a, const WeightedSeries& b);

// A partition of the vocabulary: group_index[i] is the group of word i.
// Groups are numbered in order of first appearance.
struct Grouping {
  std::vector<std::size_t> group_index;
  std::vector<KeyTuple> group_keys;

  std::size_t word_count() const { return group_index.size(); }
  std::size_t group_count() const { return group_keys.size(); }
};

Grouping group_by_key(std::span<const KeyTuple> keys);
// One key per word from a single column.
Grouping group_by_key(std::span<const Rational> keys);
// Key tuple per word assembled from several columns of equal length.
Grouping group_by_columns(std::span<const std::span<const Rational>> columns, std::size_t word_count);
// Every word in its own group.
Grouping identity_grouping(std::size_t word_count);
// Grouping from an explicit group label per word (labels need not be dense).
Grouping grouping_from_labels(std::span<const std::size_t> labels);

// Per group: weighted mean of the target over the group's words.
std::vector<double> group_means(const Grouping& g, const WeightedSeries& target);
// P(target | S) broadcast back onto the words.
WeightedSeries grouped_posterior(const Grouping& g, const WeightedSeries& target);
// f(g(X)) for f given as one value per group.
WeightedSeries compose_on_groups(const Grouping& g, std::span<const double> per_group,
                                 const WeightedSeries& support);

// A transform applied pointwise to profile values.
class ScoreFunction {
 public:
  struct Identity {};
  // log(max(value, floor) / marginal): PMI of the feature with the word.
  struct LogPmi {
    double marginal = 1.0;
    double floor = 1e-9;
  };
  struct Affine {
    double a = 1.0;
    double b = 0.0;
  };
  struct Power {
    double exponent = 1.0;
  };
  // Keyed on the exact profile value; a missing key is an error.
  struct Tabulated {
    std::map<Rational, double> table;
  };
  using Kind = std::variant<Identity, LogPmi, Affine, Power, Tabulated>;

  ScoreFunction() = default;
  explicit ScoreFunction(Kind kind);

  static ScoreFunction identity() { return ScoreFunction(Identity{}); }
  static ScoreFunction log_pmi(double marginal, double floor = 1e-9);
  static ScoreFunction affine(double a, double b) { return ScoreFunction(Affine{a, b}); }
  static ScoreFunction power(double exponent) { return ScoreFunction(Power{exponent}); }
  static ScoreFunction tabulated(std::map<Rational, double> table);

  const Kind& kind() const { return kind_; }
  std::string describe() const;

  double operator()(double value, const Rational& key) const;
  WeightedSeries apply(const WeightedSeries& profile, std::span<const Rational> keys) const;

 private:
  Kind kind_ = Identity{};
};

}  // namespace coocfeat
