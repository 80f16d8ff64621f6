#include "coocfeat/error.hpp"

namespace coocfeat {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidSeries: return "InvalidSeries";
    case ErrorKind::MismatchedSupport: return "MismatchedSupport";
    case ErrorKind::DegenerateVariance: return "DegenerateVariance";
    case ErrorKind::MissingKey: return "MissingKey";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::EmptyCorpus: return "EmptyCorpus";
    case ErrorKind::SchemaMismatch: return "SchemaMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::VersionMismatch: return "VersionMismatch";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::NotDeterministicLabel: return "NotDeterministicLabel";
    case ErrorKind::DegenerateTarget: return "DegenerateTarget";
    case ErrorKind::ConstantProfile: return "ConstantProfile";
    case ErrorKind::IndependentCY: return "IndependentCY";
    case ErrorKind::ZeroMassWord: return "ZeroMassWord";
  }
  return "Unknown";
}

bool is_statistical(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateVariance:
    case ErrorKind::NotDeterministicLabel:
    case ErrorKind::DegenerateTarget:
    case ErrorKind::ConstantProfile:
    case ErrorKind::IndependentCY:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace coocfeat
