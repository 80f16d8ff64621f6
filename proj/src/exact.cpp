#include "coocfeat/exact.hpp"

#include <map>
#include <numeric>
#include <vector>

#include "coocfeat/error.hpp"

namespace coocfeat::exact {

namespace {

using BigInt = boost::multiprecision::cpp_int;

// Accumulates sum_i num_i / den_i by first summing numerators that share a
// denominator; word counts repeat heavily so this keeps the number of
// rational additions small.
class FractionSum {
 public:
  void add(const BigInt& num, std::uint64_t den) { by_den_[den] += num; }
  BigRational value() const {
    BigRational sum = 0;
    for (const auto& [den, num] : by_den_) sum += BigRational(num, BigInt(den));
    return sum;
  }

 private:
  std::map<std::uint64_t, BigInt> by_den_;
};

}  // namespace

bool permitted(const EmpiricalModel& model) { return model.word_count() <= kMaxExactWords; }

std::optional<BigRational> raw_corr_score(const EmpiricalModel& model, std::size_t feature, std::size_t task) {
  // With w_i = n_i/N, a_i = c_i/n_i, b_i = y_i/n_i:
  //   E[a] = sum c_i / N,  E[ab] = sum (c_i y_i / n_i) / N.
  BigInt sum_c = 0;
  BigInt sum_y = 0;
  FractionSum cc, yy, cy;
  for (std::size_t i = 0; i < model.word_count(); ++i) {
    const BigInt c = model.n_c(i, feature);
    const BigInt y = model.n_y(i, task);
    sum_c += c;
    sum_y += y;
    cc.add(c * c, model.n(i));
    yy.add(y * y, model.n(i));
    cy.add(c * y, model.n(i));
  }
  const BigRational total = BigRational(BigInt(model.total_tokens()));
  const BigRational mean_c = BigRational(sum_c) / total;
  const BigRational mean_y = BigRational(sum_y) / total;
  const BigRational var_c = cc.value() / total - mean_c * mean_c;
  const BigRational var_y = yy.value() / total - mean_y * mean_y;
  if (var_c == 0 || var_y == 0) return std::nullopt;
  const BigRational cov = cy.value() / total - mean_c * mean_y;
  return cov * cov / (var_c * var_y);
}

std::optional<BigRational> vector_bound(const EmpiricalModel& model, std::span<const std::size_t> features,
                                        std::size_t task) {
  if (features.empty()) throw Error(ErrorKind::InvalidArgument, "feature subset must be non-empty");
  // Words with equal profile tuples: equal reduced fractions c_i/n_i per feature.
  struct Group {
    BigInt n = 0;
    BigInt y = 0;
  };
  std::map<std::vector<std::pair<std::uint64_t, std::uint64_t>>, Group> groups;
  BigInt sum_y = 0;
  FractionSum yy;
  for (std::size_t i = 0; i < model.word_count(); ++i) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> key;
    key.reserve(features.size());
    for (auto k : features) {
      std::uint64_t num = model.n_c(i, k);
      std::uint64_t den = model.n(i);
      const std::uint64_t g = std::gcd(num, den);
      key.emplace_back(num / g, den / g);
    }
    auto& grp = groups[key];
    grp.n += model.n(i);
    grp.y += model.n_y(i, task);
    const BigInt y = model.n_y(i, task);
    sum_y += y;
    yy.add(y * y, model.n(i));
  }
  const BigRational total = BigRational(BigInt(model.total_tokens()));
  const BigRational mean_y = BigRational(sum_y) / total;
  const BigRational var_y = yy.value() / total - mean_y * mean_y;
  if (var_y == 0) return std::nullopt;
  BigRational grouped = 0;
  for (const auto& [key, grp] : groups) grouped += BigRational(grp.y * grp.y, grp.n);
  const BigRational var_g = grouped / total - mean_y * mean_y;
  return var_g / var_y;
}

std::string to_string(const BigRational& value) {
  return boost::multiprecision::numerator(value).str() + "/" + boost::multiprecision::denominator(value).str();
}

double to_double(const BigRational& value) { return value.convert_to<double>(); }

}  // namespace coocfeat::exact
