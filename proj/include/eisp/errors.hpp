#ifndef EISP_ERRORS_HPP
#define EISP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace eisp {

// Rejected input (bad scenario document, infeasible budget, ...). CLI exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Broken internal invariant (should be unreachable on valid input). CLI exit code 3.
class InvariantError : public std::runtime_error {
 public:
  explicit InvariantError(const std::string& msg) : std::runtime_error(msg) {}
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitInvariant = 3;

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw ValidationError(msg);
}

inline void invariant(bool cond, const std::string& msg) {
  if (!cond) throw InvariantError(msg);
}

}  // namespace eisp

#endif  // EISP_ERRORS_HPP
