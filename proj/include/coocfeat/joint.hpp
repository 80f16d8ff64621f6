#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "coocfeat/model.hpp"

namespace coocfeat {

// P(x, c, y) = P(y) P(x|y) P(c|y): C is conditionally independent of X given Y.
// Arrays are indexed by y, so p_c1_given_y[1] is P(C=1|Y=1).
struct FactoredJoint {
  double p_y1 = 0.5;
  std::array<double, 2> p_c1_given_y{0.5, 0.5};
  std::array<std::vector<double>, 2> p_x_given_y;
};

// One row per word: P(x, C=0, Y=0), P(x, C=0, Y=1), P(x, C=1, Y=0), P(x, C=1, Y=1).
struct TableJoint {
  std::vector<std::array<double, 4>> cells;
};

// An explicit distribution P(X, C, Y) over m words and binary C, Y.
struct SyntheticJoint {
  using Factored = FactoredJoint;
  using Table = TableJoint;

  std::variant<Factored, Table> form;

  std::size_t word_count() const;
  // Materialized m x 4 table; validates the joint first.
  std::vector<std::array<double, 4>> table() const;
  // Non-negative cells, total mass 1 within 1e-12, every word with mass > 0.
  void validate() const;
};

enum : std::size_t { kC0Y0 = 0, kC0Y1 = 1, kC1Y0 = 2, kC1Y1 = 3 };

// Marginals of the joint computed directly from the table.
struct JointMarginals {
  double p_c1 = 0.0;
  double p_y1 = 0.0;
  double p_c1y1 = 0.0;
};
JointMarginals joint_marginals(const SyntheticJoint& joint);

// Words x1..xm, one feature "C", one task "Y"; keys quantized to 12 digits.
ProfileModel joint_to_model(const SyntheticJoint& joint);

std::string joint_to_json(const SyntheticJoint& joint);
SyntheticJoint joint_from_json(const std::string& text);

}  // namespace coocfeat
