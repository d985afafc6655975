// Error taxonomy shared across the library; kinds map onto CLI exit codes.
#pragma once

#include <stdexcept>
#include <string>

namespace polypart {

enum class ErrorKind {
  Parse,            // malformed input document
  SearchFailed,     // cut or zero search exhausted its budget
  BoundViolation,   // a certified count bound failed verification
  Budget,           // term/size budget exceeded
  NoCandidate,      // exact bisection enumeration found no valid hyperplane
  GenericPosition,  // tau-band hit where generic position is required
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Process exit codes: 0 ok, 2 parse, 3 search failed, 4 bound violation,
// 5 budget exceeded, 1 anything else.
inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return 2;
    case ErrorKind::SearchFailed: return 3;
    case ErrorKind::NoCandidate: return 3;
    case ErrorKind::BoundViolation: return 4;
    case ErrorKind::Budget: return 5;
    default: return 1;
  }
}

}  // namespace polypart
