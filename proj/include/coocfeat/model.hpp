#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coocfeat/probcore.hpp"

namespace coocfeat {

struct ContextSpec {
  std::size_t window = 2;  // tokens on each side
  bool lowercase = false;
  std::uint64_t min_count = 1;
  bool boundary = true;  // windows never cross newlines

  void validate() const;
  friend bool operator==(const ContextSpec&, const ContextSpec&) = default;
};

// Integer co-occurrence counts. Probabilities are always derived from these,
// never stored. Vocabulary is sorted by byte-wise string order.
class EmpiricalModel {
 public:
  EmpiricalModel() = default;
  // Validates every invariant; throws InvalidArgument on violation.
  EmpiricalModel(ContextSpec spec, std::vector<std::string> feature_names, std::vector<std::string> task_names,
                 std::vector<std::string> vocab, std::vector<std::uint64_t> occurrences,
                 std::vector<std::uint64_t> feature_counts, std::vector<std::uint64_t> label_counts);

  const ContextSpec& spec() const { return spec_; }
  const std::vector<std::string>& feature_names() const { return feature_names_; }
  const std::vector<std::string>& task_names() const { return task_names_; }
  const std::vector<std::string>& vocab() const { return vocab_; }

  std::size_t word_count() const { return vocab_.size(); }
  std::size_t feature_count() const { return feature_names_.size(); }
  std::size_t task_count() const { return task_names_.size(); }
  std::uint64_t total_tokens() const { return total_tokens_; }

  std::uint64_t n(std::size_t word) const { return occurrences_[word]; }
  std::uint64_t n_c(std::size_t word, std::size_t feature) const {
    return feature_counts_[word * feature_names_.size() + feature];
  }
  std::uint64_t n_y(std::size_t word, std::size_t task) const {
    return label_counts_[word * task_names_.size() + task];
  }

  const std::vector<std::uint64_t>& occurrences() const { return occurrences_; }
  // Row-major word x feature.
  const std::vector<std::uint64_t>& feature_counts() const { return feature_counts_; }
  // Row-major word x task.
  const std::vector<std::uint64_t>& label_counts() const { return label_counts_; }

  std::optional<std::size_t> find_word(const std::string& word) const;
  std::size_t feature_index(const std::string& name) const;
  std::size_t task_index(const std::string& name) const;

  bool empty() const { return vocab_.empty(); }

  friend bool operator==(const EmpiricalModel&, const EmpiricalModel&) = default;

 private:
  ContextSpec spec_;
  std::vector<std::string> feature_names_;
  std::vector<std::string> task_names_;
  std::vector<std::string> vocab_;
  std::vector<std::uint64_t> occurrences_;
  std::vector<std::uint64_t> feature_counts_;
  std::vector<std::uint64_t> label_counts_;
  std::uint64_t total_tokens_ = 0;
};

// One conditional-probability column over the vocabulary: P(C_k=1|X) or
// P(Y_t=1|X), with the exact key used to decide value equality.
struct ProfileColumn {
  std::string name;
  std::vector<double> values;
  std::vector<Rational> keys;
};

// The analytic view every theorem operates on: P(X) plus profile and
// posterior columns. Built from counts or from a synthetic joint.
class ProfileModel {
 public:
  ProfileModel(std::vector<std::string> words, std::vector<double> p_x, std::vector<ProfileColumn> features,
               std::vector<ProfileColumn> tasks);

  std::size_t word_count() const { return words_.size(); }
  std::size_t feature_count() const { return features_.size(); }
  std::size_t task_count() const { return tasks_.size(); }

  const std::vector<std::string>& words() const { return words_; }
  const WeightVector& weights() const { return weights_; }
  const ProfileColumn& feature(std::size_t k) const { return features_.at(k); }
  const ProfileColumn& task(std::size_t t) const { return tasks_.at(t); }

  WeightedSeries profile(std::size_t k) const;
  WeightedSeries posterior(std::size_t t) const;
  std::span<const Rational> profile_keys(std::size_t k) const { return features_.at(k).keys; }
  std::span<const Rational> posterior_keys(std::size_t t) const { return tasks_.at(t).keys; }

  std::size_t feature_index(const std::string& name) const;
  std::size_t task_index(const std::string& name) const;

  // Every posterior value within 1e-9 of 0 or 1.
  bool is_y_functional(std::size_t t) const;

 private:
  std::vector<std::string> words_;
  WeightVector weights_;
  std::vector<ProfileColumn> features_;
  std::vector<ProfileColumn> tasks_;
};

// Exact keys n_c/n as reduced fractions; values as correctly rounded doubles.
ProfileModel to_profiles(const EmpiricalModel& model);

}  // namespace coocfeat
