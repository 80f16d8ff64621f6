#include "coocfeat/joint.hpp"

#include <algorithm>
#include <cmath>

#include "coocfeat/error.hpp"
#include "json.hpp"

namespace coocfeat {

namespace {

constexpr double kMassTolerance = 1e-12;

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::InvalidArgument, std::string(what) + " must lie in [0,1]");
}

std::vector<std::array<double, 4>> materialize(const SyntheticJoint::Factored& f) {
  const std::size_t m = f.p_x_given_y[0].size();
  if (f.p_x_given_y[1].size() != m) throw Error(ErrorKind::InvalidArgument, "P(X|Y) vectors differ in length");
  const std::array<double, 2> p_y{1.0 - f.p_y1, f.p_y1};
  std::vector<std::array<double, 4>> cells(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (int y = 0; y < 2; ++y) {
      const double mass = p_y[y] * f.p_x_given_y[y][i];
      cells[i][y == 0 ? kC1Y0 : kC1Y1] = mass * f.p_c1_given_y[y];
      cells[i][y == 0 ? kC0Y0 : kC0Y1] = mass * (1.0 - f.p_c1_given_y[y]);
    }
  }
  return cells;
}

}  // namespace

std::size_t SyntheticJoint::word_count() const {
  if (const auto* f = std::get_if<Factored>(&form)) return f->p_x_given_y[0].size();
  return std::get<Table>(form).cells.size();
}

void SyntheticJoint::validate() const {
  if (const auto* f = std::get_if<Factored>(&form)) {
    check_probability(f->p_y1, "p_y1");
    check_probability(f->p_c1_given_y[0], "p_c1_given_y[0]");
    check_probability(f->p_c1_given_y[1], "p_c1_given_y[1]");
    for (const auto& vec : f->p_x_given_y) {
      double sum = 0.0;
      for (double p : vec) {
        check_probability(p, "p_x_given_y entry");
        sum += p;
      }
      if (std::fabs(sum - 1.0) > kMassTolerance) throw Error(ErrorKind::InvalidArgument, "P(X|Y) must sum to 1");
    }
  }
  const auto cells = std::holds_alternative<Factored>(form) ? materialize(std::get<Factored>(form))
                                                           : std::get<Table>(form).cells;
  if (cells.size() < 1) throw Error(ErrorKind::InvalidArgument, "joint has no words");
  double total = 0.0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    double word_mass = 0.0;
    for (double c : cells[i]) {
      if (!(c >= 0.0) || !std::isfinite(c)) throw Error(ErrorKind::InvalidArgument, "joint cells must be >= 0");
      word_mass += c;
    }
    if (!(word_mass > 0.0)) throw Error(ErrorKind::ZeroMassWord, "word x" + std::to_string(i + 1) + " has zero mass");
    total += word_mass;
  }
  if (std::fabs(total - 1.0) > kMassTolerance) throw Error(ErrorKind::InvalidArgument, "joint mass must sum to 1");
}

std::vector<std::array<double, 4>> SyntheticJoint::table() const {
  validate();
  if (const auto* f = std::get_if<Factored>(&form)) return materialize(*f);
  return std::get<Table>(form).cells;
}

JointMarginals joint_marginals(const SyntheticJoint& joint) {
  JointMarginals out;
  for (const auto& row : joint.table()) {
    out.p_c1 += row[kC1Y0] + row[kC1Y1];
    out.p_y1 += row[kC0Y1] + row[kC1Y1];
    out.p_c1y1 += row[kC1Y1];
  }
  return out;
}

ProfileModel joint_to_model(const SyntheticJoint& joint) {
  const auto cells = joint.table();
  const std::size_t m = cells.size();
  std::vector<std::string> words(m);
  std::vector<double> p_x(m);
  ProfileColumn profile{"C", std::vector<double>(m), std::vector<Rational>(m)};
  ProfileColumn posterior{"Y", std::vector<double>(m), std::vector<Rational>(m)};
  for (std::size_t i = 0; i < m; ++i) {
    const auto& r = cells[i];
    words[i] = "x" + std::to_string(i + 1);
    p_x[i] = r[kC0Y0] + r[kC0Y1] + r[kC1Y0] + r[kC1Y1];
    profile.values[i] = std::min(1.0, (r[kC1Y0] + r[kC1Y1]) / p_x[i]);
    posterior.values[i] = std::min(1.0, (r[kC0Y1] + r[kC1Y1]) / p_x[i]);
    profile.keys[i] = Rational::quantize(profile.values[i]);
    posterior.keys[i] = Rational::quantize(posterior.values[i]);
  }
  return ProfileModel(std::move(words), std::move(p_x), {std::move(profile)}, {std::move(posterior)});
}

std::string joint_to_json(const SyntheticJoint& joint) {
  nlohmann::ordered_json doc;
  if (const auto* f = std::get_if<SyntheticJoint::Factored>(&joint.form)) {
    doc["p_y1"] = f->p_y1;
    doc["p_c1_given_y"] = {f->p_c1_given_y[0], f->p_c1_given_y[1]};
    doc["p_x_given_y"] = {f->p_x_given_y[0], f->p_x_given_y[1]};
  } else {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : std::get<SyntheticJoint::Table>(joint.form).cells) rows.push_back({r[0], r[1], r[2], r[3]});
    doc["table"] = std::move(rows);
  }
  return doc.dump();
}

SyntheticJoint joint_from_json(const std::string& text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    SyntheticJoint joint;
    if (doc.contains("table")) {
      SyntheticJoint::Table t;
      for (const auto& row : doc.at("table")) {
        if (row.size() != 4) throw Error(ErrorKind::ParseError, "table rows need 4 cells");
        t.cells.push_back({row[0].get<double>(), row[1].get<double>(), row[2].get<double>(), row[3].get<double>()});
      }
      joint.form = std::move(t);
    } else {
      SyntheticJoint::Factored f;
      f.p_y1 = doc.at("p_y1").get<double>();
      const auto& c = doc.at("p_c1_given_y");
      const auto& x = doc.at("p_x_given_y");
      if (c.size() != 2 || x.size() != 2) throw Error(ErrorKind::ParseError, "expected two entries, one per y");
      f.p_c1_given_y = {c[0].get<double>(), c[1].get<double>()};
      f.p_x_given_y = {x[0].get<std::vector<double>>(), x[1].get<std::vector<double>>()};
      joint.form = std::move(f);
    }
    joint.validate();
    return joint;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("synthetic joint: ") + e.what());
  }
}

}  // namespace coocfeat
