#pragma once

#include <stdexcept>
#include <string>

namespace fracsub {

// Failure classes mirror the CLI exit codes.
enum class ErrorClass {
  config = 1,          // unparseable or semantically invalid configuration
  assumption = 2,      // a standing hypothesis is violated (beta <= N, N <= 2*sigma, ...)
  non_convergence = 3, // an iteration failed to converge or a stepper went unstable
  check_failure = 4,   // a verification check ran and missed its threshold
  invalid = 5,         // bad argument at the API boundary
  io = 6,              // file system trouble
};

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& what) : std::runtime_error(what), cls_(cls) {}
  ErrorClass cls() const { return cls_; }

 private:
  ErrorClass cls_;
};

[[noreturn]] inline void fail(ErrorClass cls, const std::string& msg) { throw Error(cls, msg); }

}  // namespace fracsub
