#include "coocfeat/probcore.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "coocfeat/error.hpp"
#include "util.hpp"

namespace coocfeat {

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational{num, den};
}

Rational Rational::quantize(double value) {
  constexpr double kScale = 1e12;
  const double scaled = std::round(value * kScale);
  if (!std::isfinite(scaled) || std::fabs(scaled) > 9.0e18) {
    throw Error(ErrorKind::InvalidArgument, "value out of range for a quantized key: " + format_double(value));
  }
  return make(static_cast<std::int64_t>(scaled), static_cast<std::int64_t>(kScale));
}

std::string Rational::to_string() const {
  return std::to_string(num) + "/" + std::to_string(den);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const __int128 lhs = static_cast<__int128>(a.num) * b.den;
  const __int128 rhs = static_cast<__int128>(b.num) * a.den;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::size_t KeyTupleHash::operator()(const KeyTuple& key) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (const auto& r : key) {
    h ^= static_cast<std::uint64_t>(r.num) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= static_cast<std::uint64_t>(r.den) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

WeightVector make_weights(std::vector<double> weights) {
  if (weights.empty()) throw Error(ErrorKind::InvalidSeries, "empty weight vector");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw Error(ErrorKind::InvalidSeries, "weights must be finite and > 0");
    }
    sum += w;
  }
  if (std::fabs(sum - 1.0) > kWeightSumTolerance) {
    throw Error(ErrorKind::InvalidSeries, "weights sum to " + format_double(sum) + ", expected 1");
  }
  return std::make_shared<const std::vector<double>>(std::move(weights));
}

namespace {

void check_values(const std::vector<double>& values, const WeightVector& weights) {
  if (!weights) throw Error(ErrorKind::InvalidSeries, "null weight vector");
  if (values.size() != weights->size()) {
    throw Error(ErrorKind::InvalidSeries, "values and weights differ in length");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidSeries, "non-finite series value");
  }
}

}  // namespace

WeightedSeries::WeightedSeries(std::vector<double> values, WeightVector weights)
    : values_(std::move(values)), weights_(std::move(weights)) {
  check_values(values_, weights_);
}

WeightedSeries::WeightedSeries(std::vector<double> values, std::vector<double> weights)
    : WeightedSeries(std::move(values), make_weights(std::move(weights))) {}

WeightedSeries WeightedSeries::with_values(std::vector<double> values) const {
  return WeightedSeries(std::move(values), weights_);
}

WeightedSeries WeightedSeries::map(const std::function<double(double)>& fn) const {
  std::vector<double> out(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) out[i] = fn(values_[i]);
  return with_values(std::move(out));
}

double weighted_mean(const WeightedSeries& s) {
  const auto v = s.values();
  const auto w = s.weights();
  double mean = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) mean += w[i] * v[i];
  return mean;
}

Moments weighted_moments(const WeightedSeries& s) {
  const auto v = s.values();
  const auto w = s.weights();
  Moments m;
  m.mean = weighted_mean(s);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double d = v[i] - m.mean;
    m.variance += w[i] * d * d;
  }
  return m;
}

double weighted_variance(const WeightedSeries& s) { return weighted_moments(s).variance; }

bool is_degenerate(const WeightedSeries& s) { return weighted_variance(s) <= kDegenerateVariance; }

void require_same_support(const WeightedSeries& a, const WeightedSeries& b) {
  if (a.weight_vector() == b.weight_vector()) return;
  if (a.size() != b.size()) {
    throw Error(ErrorKind::MismatchedSupport, "series lengths differ: " + std::to_string(a.size()) + " vs " +
                                                  std::to_string(b.size()));
  }
  const auto wa = a.weights();
  const auto wb = b.weights();
  for (std::size_t i = 0; i < wa.size(); ++i) {
    if (std::fabs(wa[i] - wb[i]) > kSupportTolerance) {
      throw Error(ErrorKind::MismatchedSupport, "weights differ at index " + std::to_string(i));
    }
  }
}

double weighted_cov(const WeightedSeries& a, const WeightedSeries& b) {
  require_same_support(a, b);
  const double ma = weighted_mean(a);
  const double mb = weighted_mean(b);
  const auto va = a.values();
  const auto vb = b.values();
  const auto w = a.weights();
  double cov = 0.0;
  for (std::size_t i = 0; i < va.size(); ++i) cov += w[i] * (va[i] - ma) * (vb[i] - mb);
  return cov;
}

namespace {

std::pair<double, double> checked_variances(const WeightedSeries& a, const WeightedSeries& b) {
  require_same_support(a, b);
  const double var_a = weighted_variance(a);
  const double var_b = weighted_variance(b);
  if (var_a <= kDegenerateVariance) {
    throw Error(ErrorKind::DegenerateVariance, "first series is constant (variance " + format_double(var_a) + ")");
  }
  if (var_b <= kDegenerateVariance) {
    throw Error(ErrorKind::DegenerateVariance, "second series is constant (variance " + format_double(var_b) + ")");
  }
  return {var_a, var_b};
}

}  // namespace

double weighted_corr_sq(const WeightedSeries& a, const WeightedSeries& b) {
  const auto [var_a, var_b] = checked_variances(a, b);
  const double cov = weighted_cov(a, b);
  return (cov * cov) / (var_a * var_b);
}

double weighted_corr(const WeightedSeries& a, const WeightedSeries& b) {
  const auto [var_a, var_b] = checked_variances(a, b);
  return weighted_cov(a, b) / (std::sqrt(var_a) * std::sqrt(var_b));
}

Grouping group_by_key(std::span<const KeyTuple> keys) {
  Grouping g;
  g.group_index.resize(keys.size());
  std::unordered_map<KeyTuple, std::size_t, KeyTupleHash> seen;
  seen.reserve(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    auto [it, inserted] = seen.try_emplace(keys[i], g.group_keys.size());
    if (inserted) g.group_keys.push_back(keys[i]);
    g.group_index[i] = it->second;
  }
  return g;
}

Grouping group_by_key(std::span<const Rational> keys) {
  std::vector<KeyTuple> tuples;
  tuples.reserve(keys.size());
  for (const auto& k : keys) tuples.push_back(KeyTuple{k});
  return group_by_key(std::span<const KeyTuple>(tuples));
}

Grouping group_by_columns(std::span<const std::span<const Rational>> columns, std::size_t word_count) {
  std::vector<KeyTuple> tuples(word_count);
  for (const auto& column : columns) {
    if (column.size() != word_count) throw Error(ErrorKind::InvalidArgument, "key column length mismatch");
  }
  for (std::size_t i = 0; i < word_count; ++i) {
    tuples[i].reserve(columns.size());
    for (const auto& column : columns) tuples[i].push_back(column[i]);
  }
  return group_by_key(std::span<const KeyTuple>(tuples));
}

Grouping identity_grouping(std::size_t word_count) {
  Grouping g;
  g.group_index.resize(word_count);
  g.group_keys.resize(word_count);
  for (std::size_t i = 0; i < word_count; ++i) {
    g.group_index[i] = i;
    g.group_keys[i] = KeyTuple{Rational{static_cast<std::int64_t>(i), 1}};
  }
  return g;
}

Grouping grouping_from_labels(std::span<const std::size_t> labels) {
  std::vector<KeyTuple> tuples;
  tuples.reserve(labels.size());
  for (auto label : labels) tuples.push_back(KeyTuple{Rational{static_cast<std::int64_t>(label), 1}});
  return group_by_key(std::span<const KeyTuple>(tuples));
}

std::vector<double> group_means(const Grouping& g, const WeightedSeries& target) {
  if (g.word_count() != target.size()) {
    throw Error(ErrorKind::MismatchedSupport, "grouping and series cover different vocabularies");
  }
  std::vector<double> mass(g.group_count(), 0.0);
  std::vector<double> sum(g.group_count(), 0.0);
  const auto v = target.values();
  const auto w = target.weights();
  for (std::size_t i = 0; i < v.size(); ++i) {
    mass[g.group_index[i]] += w[i];
    sum[g.group_index[i]] += w[i] * v[i];
  }
  for (std::size_t j = 0; j < sum.size(); ++j) sum[j] /= mass[j];
  return sum;
}

WeightedSeries grouped_posterior(const Grouping& g, const WeightedSeries& target) {
  const auto means = group_means(g, target);
  std::vector<double> out(target.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = means[g.group_index[i]];
  return target.with_values(std::move(out));
}

WeightedSeries compose_on_groups(const Grouping& g, std::span<const double> per_group,
                                 const WeightedSeries& support) {
  if (per_group.size() != g.group_count()) {
    throw Error(ErrorKind::MissingKey, "function defined on " + std::to_string(per_group.size()) + " of " +
                                           std::to_string(g.group_count()) + " groups");
  }
  if (g.word_count() != support.size()) {
    throw Error(ErrorKind::MismatchedSupport, "grouping and series cover different vocabularies");
  }
  std::vector<double> out(support.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = per_group[g.group_index[i]];
  return support.with_values(std::move(out));
}

ScoreFunction::ScoreFunction(Kind kind) : kind_(std::move(kind)) {
  if (const auto* pmi = std::get_if<LogPmi>(&kind_)) {
    if (!(pmi->floor > 0.0)) throw Error(ErrorKind::InvalidArgument, "log-pmi floor must be > 0");
    if (!(pmi->marginal > 0.0)) throw Error(ErrorKind::InvalidArgument, "log-pmi marginal must be > 0");
  }
}

ScoreFunction ScoreFunction::log_pmi(double marginal, double floor) { return ScoreFunction(LogPmi{marginal, floor}); }

ScoreFunction ScoreFunction::tabulated(std::map<Rational, double> table) {
  return ScoreFunction(Tabulated{std::move(table)});
}

std::string ScoreFunction::describe() const {
  struct Visitor {
    std::string operator()(const Identity&) const { return "identity"; }
    std::string operator()(const LogPmi& f) const {
      return "log-pmi(marginal=" + format_double(f.marginal) + ",floor=" + format_double(f.floor) + ")";
    }
    std::string operator()(const Affine& f) const {
      return "affine(a=" + format_double(f.a) + ",b=" + format_double(f.b) + ")";
    }
    std::string operator()(const Power& f) const { return "power(" + format_double(f.exponent) + ")"; }
    std::string operator()(const Tabulated& f) const {
      return "tabulated(" + std::to_string(f.table.size()) + " keys)";
    }
  };
  return std::visit(Visitor{}, kind_);
}

double ScoreFunction::operator()(double value, const Rational& key) const {
  struct Visitor {
    double value;
    const Rational& key;
    double operator()(const Identity&) const { return value; }
    double operator()(const LogPmi& f) const { return std::log(std::max(value, f.floor) / f.marginal); }
    double operator()(const Affine& f) const { return f.a * value + f.b; }
    double operator()(const Power& f) const { return std::pow(value, f.exponent); }
    double operator()(const Tabulated& f) const {
      const auto it = f.table.find(key);
      if (it == f.table.end()) {
        throw Error(ErrorKind::MissingKey, "tabulated function has no value for key " + key.to_string());
      }
      return it->second;
    }
  };
  return std::visit(Visitor{value, key}, kind_);
}

WeightedSeries ScoreFunction::apply(const WeightedSeries& profile, std::span<const Rational> keys) const {
  if (keys.size() != profile.size()) throw Error(ErrorKind::InvalidArgument, "one key per word required");
  std::vector<double> out(profile.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = (*this)(profile[i], keys[i]);
    if (!std::isfinite(out[i])) {
      throw Error(ErrorKind::InvalidArgument, describe() + " is not finite at value " + format_double(profile[i]));
    }
  }
  return profile.with_values(std::move(out));
}

}  // namespace coocfeat
