#pragma once

#include <stdexcept>
#include <string>

namespace symdyn {

// Invalid input: alphabet mismatch, out-of-range parameter, malformed text.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured cap (enumeration size, symbol budget) would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, double estimate, double cap)
      : std::runtime_error(what), estimate_(estimate), cap_(cap) {}
  double estimate() const { return estimate_; }
  double cap() const { return cap_; }

 private:
  double estimate_;
  double cap_;
};

// A construction could not be completed with the requested parameters.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact comparison could not be decided within the working precision.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// No family member lies within the mistake-function radius.
class ApproachabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace symdyn
