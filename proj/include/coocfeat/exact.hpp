#pragma once

// Exact rational evaluation of the count-based scores. These run on the
// integer counts directly and share no code with the floating-point path.

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "coocfeat/model.hpp"

namespace coocfeat::exact {

using BigRational = boost::multiprecision::cpp_rational;

// Beyond this vocabulary size the fractions are not produced.
inline constexpr std::size_t kMaxExactWords = 20000;

bool permitted(const EmpiricalModel& model);

// nullopt when either variance is exactly zero.
std::optional<BigRational> raw_corr_score(const EmpiricalModel& model, std::size_t feature, std::size_t task);
// nullopt when the posterior variance is exactly zero.
std::optional<BigRational> vector_bound(const EmpiricalModel& model, std::span<const std::size_t> features,
                                        std::size_t task);

std::string to_string(const BigRational& value);
double to_double(const BigRational& value);

}  // namespace coocfeat::exact
