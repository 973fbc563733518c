#pragma once

#include <stdexcept>
#include <string>

namespace polyfam {

// Base class for all recoverable domain errors thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An operation that requires a nonzero polynomial received the zero polynomial.
struct ZeroPolynomialError : Error {
  ZeroPolynomialError() : Error("operation undefined for the zero polynomial") {}
};

// A family operation that excludes zero members received one.
struct ZeroMemberError : Error {
  explicit ZeroMemberError(int index)
      : Error("family member " + std::to_string(index) + " is the zero polynomial") {}
};

// An input polynomial was required to be real-rooted but is not.
struct NotRealRootedError : Error {
  explicit NotRealRootedError(double margin)
      : Error("input polynomial is not real-rooted (margin " + std::to_string(margin) + ")"),
        margin(margin) {}
  double margin;
};

// Mismatched lengths or ambient degrees.
struct DimensionError : Error {
  using Error::Error;
};

// A family operation required properness (no convex combination is zero).
struct NotProperError : Error {
  NotProperError() : Error("family is not proper: a convex combination is the zero polynomial") {}
};

// A perturbation required the family to share no root.
struct CommonRootError : Error {
  explicit CommonRootError(double location)
      : Error("family members share a root near " + std::to_string(location)), location(location) {}
  double location;
};

// A perturbation required 3-compatibility and a triple failed.
struct NotThreeCompatibleError : Error {
  NotThreeCompatibleError() : Error("family is not 3-compatible") {}
};

// A perturbation required full compatibility and the family failed.
struct NotCompatibleError : Error {
  NotCompatibleError() : Error("family is not compatible") {}
};

// An epsilon-shrinking loop ran out of retries without a verified result.
struct RetryBudgetError : Error {
  RetryBudgetError() : Error("retry budget exhausted") {}
};

// Bad tolerance configuration.
struct ToleranceError : Error {
  using Error::Error;
};

}  // namespace polyfam
