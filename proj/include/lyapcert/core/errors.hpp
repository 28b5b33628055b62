#pragma once

#include <stdexcept>
#include <string>

namespace lyapcert {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-domain numeric input (empty interval, log of a
// non-positive interval, overflow to infinity, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

// A proof step could not be completed. Never means "the claim is false".
class VerificationError : public Error {
 public:
  using Error::Error;
};

class ClusterError : public VerificationError {
 public:
  using VerificationError::VerificationError;
};

class HomotopyStalled : public VerificationError {
 public:
  using VerificationError::VerificationError;
};

class PositivityFailed : public VerificationError {
 public:
  using VerificationError::VerificationError;
};

class BracketFailure : public VerificationError {
 public:
  using VerificationError::VerificationError;
};

// Floating-point preprocessing (eigensolver, Newton) did not converge.
class ApproxFailure : public Error {
 public:
  using Error::Error;
};

class OracleFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace lyapcert
