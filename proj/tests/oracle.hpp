#pragma once

// Test-only oracle: exact rational arithmetic over explicit (weight, value)
// tables with naive loops. Shares nothing with the library's statistics.

#include <map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Q = boost::multiprecision::cpp_rational;

struct Table {
  std::vector<Q> w;
  std::vector<Q> v;
};

inline Q mean(const std::vector<Q>& w, const std::vector<Q>& v) {
  Q s = 0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * v[i];
  return s;
}

inline Q cov(const std::vector<Q>& w, const std::vector<Q>& a, const std::vector<Q>& b) {
  const Q ma = mean(w, a);
  const Q mb = mean(w, b);
  Q s = 0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * (a[i] - ma) * (b[i] - mb);
  return s;
}

inline Q var(const std::vector<Q>& w, const std::vector<Q>& a) { return cov(w, a, a); }

inline Q corr_sq(const std::vector<Q>& w, const std::vector<Q>& a, const std::vector<Q>& b) {
  const Q c = cov(w, a, b);
  return c * c / (var(w, a) * var(w, b));
}

// P(target | key) per word, grouping by exact key equality.
template <typename Key>
std::vector<Q> grouped(const std::vector<Q>& w, const std::vector<Key>& keys, const std::vector<Q>& target) {
  std::map<Key, std::pair<Q, Q>> acc;
  for (std::size_t i = 0; i < w.size(); ++i) {
    auto& a = acc[keys[i]];
    a.first += w[i];
    a.second += w[i] * target[i];
  }
  std::vector<Q> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto& a = acc[keys[i]];
    out[i] = a.second / a.first;
  }
  return out;
}

inline double d(const Q& q) { return q.convert_to<double>(); }

}  // namespace oracle
