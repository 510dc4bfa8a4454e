#pragma once

#include <stdexcept>
#include <string>

namespace restab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input: bad JSON, ill-formed markets, files that
// reference unknown agents. Maps to CLI exit code 1.
class InputError : public Error {
 public:
  using Error::Error;
};

// A violated operation precondition: matching not stable where stability is
// required, Set Offering input not firm quasi-stable, etc. Exit code 2.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// An exhaustive check was asked to run on an instance larger than its cap.
class SizeGuardError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// Firm-side comparison of two worker sets that the responsive order does not
// determine (different cardinalities outside the stable set).
class IncomparableError : public Error {
 public:
  using Error::Error;
};

}  // namespace restab
