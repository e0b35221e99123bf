#ifndef HETCLAW_ERRORS_HPP_
#define HETCLAW_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace hetclaw {

// Base class for all library failures so callers can catch the whole family.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Jump magnitude at or below the configured floor where a genuine jump is required.
class DegenerateJump : public Error {
 public:
  using Error::Error;
};

// Safeguarded Newton failed to converge; signals a malformed flux.
class NewtonDivergence : public Error {
 public:
  using Error::Error;
};

class CflViolation : public Error {
 public:
  using Error::Error;
};

class NonFiniteState : public Error {
 public:
  using Error::Error;
};

class OutOfDomain : public Error {
 public:
  using Error::Error;
};

// Tracked jump fell below the floor without a merge; tracking failure.
class LostShock : public Error {
 public:
  using Error::Error;
};

class NoIntersection : public Error {
 public:
  using Error::Error;
};

// xi_plus overtook xi_minus beyond tolerance; heterogeneity sign or resolution problem.
class OrderingViolation : public Error {
 public:
  using Error::Error;
};

class ShockFormedEarly : public Error {
 public:
  using Error::Error;
};

// Dynamic-programming minimiser landed on the search bracket edge.
class ConeTooNarrow : public Error {
 public:
  using Error::Error;
};

class GridMismatch : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace hetclaw

#endif  // HETCLAW_ERRORS_HPP_
