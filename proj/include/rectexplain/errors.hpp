#pragma once

#include <stdexcept>

namespace rectexplain {

// Raised when a configured size limit or search budget stops an exact solver.
// Distinct from std::invalid_argument (malformed input) so callers can map the
// two to different exit codes.
class limit_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rectexplain
