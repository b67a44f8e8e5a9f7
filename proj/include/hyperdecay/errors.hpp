#ifndef HYPERDECAY_ERRORS_HPP
#define HYPERDECAY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hyperdecay {

/// Violated precondition: argument outside the domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical procedure did not reach its tolerance. Carries the error
/// estimate it did achieve.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double achieved_error)
      : std::runtime_error(what + " (achieved error estimate " +
                           std::to_string(achieved_error) + ")"),
        achieved_error_(achieved_error) {}

  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

}  // namespace hyperdecay

#endif  // HYPERDECAY_ERRORS_HPP
