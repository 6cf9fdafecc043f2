#ifndef EHKIT_ERROR_HPP_
#define EHKIT_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace ehkit {

// Exit-code classes used by the command line front end:
//   InputError -> 1, GuardError -> 2, TheoremViolation -> 3.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input or a violated precondition.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A configured resource bound (points, carrier size, search space) would be
/// exceeded.
class GuardError : public Error {
 public:
  using Error::Error;
};

/// Raised when a construction would need G-sets larger than the cutoff of the
/// encoding it lives in.
class CutoffOverflow : public GuardError {
 public:
  using GuardError::GuardError;
};

/// A post-condition that a theorem guarantees has failed on concrete data.
/// Carries the falsifying witness; never caught and repaired internally.
class TheoremViolation : public Error {
 public:
  TheoremViolation(std::string claim, std::string witness)
      : Error("theorem violation: " + claim + " (witness: " + witness + ")"),
        claim_(std::move(claim)),
        witness_(std::move(witness)) {}

  const std::string& claim() const noexcept { return claim_; }
  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string claim_;
  std::string witness_;
};

/// Outcome of an exhaustive axiom check. On failure `axiom` names the first
/// violated law and `witness` describes the offending tuple.
struct ValidityReport {
  bool valid = true;
  std::string axiom;
  std::string witness;

  static ValidityReport ok() { return {}; }
  static ValidityReport fail(std::string axiom, std::string witness) {
    return {false, std::move(axiom), std::move(witness)};
  }

  explicit operator bool() const noexcept { return valid; }
};

}  // namespace ehkit

#endif  // EHKIT_ERROR_HPP_
