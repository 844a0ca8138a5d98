#pragma once

#include <stdexcept>
#include <string>

namespace floerhf {

// Error codes shared across the pipeline. The CLI maps them to exit codes.
enum class errc {
  not_contained,
  malformed_complex,
  degree_mismatch,
  not_closed,
  genus_too_small,
  syntax_error,
  not_squarefree,
  irrational_branch,
  order_bound_too_small,
  not_separated,
  malformed_data,
  non_terminating,
  property_violation,
  bad_embedding,
  verification_failed,
  invalid_input,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::not_contained: return "NotContained";
    case errc::malformed_complex: return "MalformedComplex";
    case errc::degree_mismatch: return "DegreeMismatch";
    case errc::not_closed: return "NotClosed";
    case errc::genus_too_small: return "GenusTooSmall";
    case errc::syntax_error: return "SyntaxError";
    case errc::not_squarefree: return "NotSquarefree";
    case errc::irrational_branch: return "IrrationalBranch";
    case errc::order_bound_too_small: return "OrderBoundTooSmall";
    case errc::not_separated: return "NotSeparated";
    case errc::malformed_data: return "MalformedData";
    case errc::non_terminating: return "NonTerminating";
    case errc::property_violation: return "PropertyViolation";
    case errc::bad_embedding: return "BadEmbedding";
    case errc::verification_failed: return "VerificationFailed";
    case errc::invalid_input: return "InvalidInput";
  }
  return "UnknownError";
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

}  // namespace floerhf
