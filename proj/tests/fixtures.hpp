#pragma once

#include <string>

#include "coocfeat/estimate.hpp"
#include "coocfeat/model.hpp"

namespace fixtures {

// Four words with equal mass, labels (1,1,0,0) and three features:
//   p1 = (0.9, 0.7, 0.2, 0.2), p2 = (0.5, 0.1, 0.1, 0.5), p3 = (0.6, 0.2, 0.6, 0.2)
// realized as counts with n = 10 per word.
inline coocfeat::EmpiricalModel t4_counts() {
  return coocfeat::EmpiricalModel(coocfeat::ContextSpec{}, {"p1", "p2", "p3"}, {"y"}, {"x1", "x2", "x3", "x4"},
                                  {10, 10, 10, 10}, {9, 5, 6, 7, 1, 2, 2, 1, 6, 2, 5, 2}, {10, 10, 0, 0});
}

inline coocfeat::ProfileModel t4() { return coocfeat::to_profiles(t4_counts()); }

inline const std::string kThreeLineCorpus = "cat purrs softly\ndog barks loudly\ncat meows softly\n";

inline coocfeat::Lexicon three_line_lexicon() {
  coocfeat::Lexicon lex;
  lex.tasks = {"animal_cat"};
  lex.labels = {{"cat", {1}}, {"dog", {0}}, {"purrs", {0}}, {"softly", {0}},
                {"barks", {0}}, {"loudly", {0}}, {"meows", {0}}};
  return lex;
}

inline std::string fixture_path(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

}  // namespace fixtures
