#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace coocfeat {

enum class ErrorKind {
  InvalidSeries,
  MismatchedSupport,
  DegenerateVariance,
  MissingKey,
  InvalidArgument,
  EmptyCorpus,
  SchemaMismatch,
  ParseError,
  VersionMismatch,
  IoError,
  NotDeterministicLabel,
  DegenerateTarget,
  ConstantProfile,
  IndependentCY,
  ZeroMassWord,
};

std::string_view to_string(ErrorKind kind);

// True for errors that signal a statistical precondition on the data
// (constant profile, non-deterministic labels, ...) rather than bad input.
bool is_statistical(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace coocfeat
