#include "coocfeat/model.hpp"

#include <algorithm>
#include <cmath>

#include "coocfeat/error.hpp"

namespace coocfeat {

void ContextSpec::validate() const {
  if (window < 1) throw Error(ErrorKind::InvalidArgument, "window must be >= 1");
  if (min_count < 1) throw Error(ErrorKind::InvalidArgument, "min_count must be >= 1");
}

EmpiricalModel::EmpiricalModel(ContextSpec spec, std::vector<std::string> feature_names,
                               std::vector<std::string> task_names, std::vector<std::string> vocab,
                               std::vector<std::uint64_t> occurrences, std::vector<std::uint64_t> feature_counts,
                               std::vector<std::uint64_t> label_counts)
    : spec_(spec),
      feature_names_(std::move(feature_names)),
      task_names_(std::move(task_names)),
      vocab_(std::move(vocab)),
      occurrences_(std::move(occurrences)),
      feature_counts_(std::move(feature_counts)),
      label_counts_(std::move(label_counts)) {
  spec_.validate();
  const std::size_t m = vocab_.size();
  const std::size_t nf = feature_names_.size();
  const std::size_t nt = task_names_.size();
  if (occurrences_.size() != m || feature_counts_.size() != m * nf || label_counts_.size() != m * nt) {
    throw Error(ErrorKind::InvalidArgument, "count arrays do not match vocabulary size");
  }
  for (std::size_t i = 1; i < m; ++i) {
    if (!(vocab_[i - 1] < vocab_[i])) {
      throw Error(ErrorKind::InvalidArgument, "vocabulary not strictly sorted at '" + vocab_[i] + "'");
    }
  }
  total_tokens_ = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto n = occurrences_[i];
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "word '" + vocab_[i] + "' has zero occurrences");
    for (std::size_t k = 0; k < nf; ++k) {
      if (feature_counts_[i * nf + k] > n) {
        throw Error(ErrorKind::InvalidArgument, "feature count exceeds occurrences for '" + vocab_[i] + "'");
      }
    }
    for (std::size_t t = 0; t < nt; ++t) {
      if (label_counts_[i * nt + t] > n) {
        throw Error(ErrorKind::InvalidArgument, "label count exceeds occurrences for '" + vocab_[i] + "'");
      }
    }
    total_tokens_ += n;
  }
}

std::optional<std::size_t> EmpiricalModel::find_word(const std::string& word) const {
  const auto it = std::lower_bound(vocab_.begin(), vocab_.end(), word);
  if (it == vocab_.end() || *it != word) return std::nullopt;
  return static_cast<std::size_t>(it - vocab_.begin());
}

namespace {

std::size_t index_of(const std::vector<std::string>& names, const std::string& name, const char* what) {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw Error(ErrorKind::InvalidArgument, std::string("unknown ") + what + " '" + name + "'");
  return static_cast<std::size_t>(it - names.begin());
}

}  // namespace

std::size_t EmpiricalModel::feature_index(const std::string& name) const {
  return index_of(feature_names_, name, "feature");
}

std::size_t EmpiricalModel::task_index(const std::string& name) const { return index_of(task_names_, name, "task"); }

ProfileModel::ProfileModel(std::vector<std::string> words, std::vector<double> p_x,
                           std::vector<ProfileColumn> features, std::vector<ProfileColumn> tasks)
    : words_(std::move(words)),
      weights_(make_weights(std::move(p_x))),
      features_(std::move(features)),
      tasks_(std::move(tasks)) {
  const std::size_t m = words_.size();
  if (weights_->size() != m) throw Error(ErrorKind::InvalidArgument, "P(X) length differs from vocabulary");
  auto check = [m](const ProfileColumn& c) {
    if (c.values.size() != m || c.keys.size() != m) {
      throw Error(ErrorKind::InvalidArgument, "column '" + c.name + "' has wrong length");
    }
    for (double v : c.values) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw Error(ErrorKind::InvalidArgument, "column '" + c.name + "' has a value outside [0,1]");
      }
    }
  };
  for (const auto& c : features_) check(c);
  for (const auto& c : tasks_) check(c);
}

WeightedSeries ProfileModel::profile(std::size_t k) const { return WeightedSeries(features_.at(k).values, weights_); }

WeightedSeries ProfileModel::posterior(std::size_t t) const { return WeightedSeries(tasks_.at(t).values, weights_); }

std::size_t ProfileModel::feature_index(const std::string& name) const {
  for (std::size_t k = 0; k < features_.size(); ++k) {
    if (features_[k].name == name) return k;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown feature '" + name + "'");
}

std::size_t ProfileModel::task_index(const std::string& name) const {
  for (std::size_t t = 0; t < tasks_.size(); ++t) {
    if (tasks_[t].name == name) return t;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown task '" + name + "'");
}

bool ProfileModel::is_y_functional(std::size_t t) const {
  for (double v : tasks_.at(t).values) {
    if (std::fabs(v) > 1e-9 && std::fabs(v - 1.0) > 1e-9) return false;
  }
  return true;
}

ProfileModel to_profiles(const EmpiricalModel& model) {
  const std::size_t m = model.word_count();
  if (m == 0) throw Error(ErrorKind::EmptyCorpus, "model has no words");
  std::vector<double> p_x(m);
  const double total = static_cast<double>(model.total_tokens());
  for (std::size_t i = 0; i < m; ++i) p_x[i] = static_cast<double>(model.n(i)) / total;

  auto column = [&](const std::string& name, auto count_of) {
    ProfileColumn c{name, std::vector<double>(m), std::vector<Rational>(m)};
    for (std::size_t i = 0; i < m; ++i) {
      const auto num = count_of(i);
      const auto den = model.n(i);
      c.values[i] = static_cast<double>(num) / static_cast<double>(den);
      c.keys[i] = Rational::make(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
    }
    return c;
  };

  std::vector<ProfileColumn> features;
  for (std::size_t k = 0; k < model.feature_count(); ++k) {
    features.push_back(column(model.feature_names()[k], [&](std::size_t i) { return model.n_c(i, k); }));
  }
  std::vector<ProfileColumn> tasks;
  for (std::size_t t = 0; t < model.task_count(); ++t) {
    tasks.push_back(column(model.task_names()[t], [&](std::size_t i) { return model.n_y(i, t); }));
  }
  return ProfileModel(model.vocab(), std::move(p_x), std::move(features), std::move(tasks));
}

}  // namespace coocfeat
