#pragma once

#include <stdexcept>
#include <string>

namespace gaugelab {

// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or contradictory input (bad parameters, bad descriptors).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Evaluation or path sample fell into the excluded set of a patch.
class DomainError : public Error {
 public:
  using Error::Error;
};

class OutsideDomain : public DomainError {
 public:
  using DomainError::DomainError;
};

class OnSolenoidShell : public DomainError {
 public:
  using DomainError::DomainError;
};

class PathTouchesAxis : public DomainError {
 public:
  using DomainError::DomainError;
};

class FieldSingularOnSurface : public DomainError {
 public:
  using DomainError::DomainError;
};

class NotClosed : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class MultipleInterceptions : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class InvalidN : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

}  // namespace gaugelab
