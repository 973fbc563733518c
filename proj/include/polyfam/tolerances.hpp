#pragma once

#include <cstdint>
#include <string>

#include "polyfam/errors.hpp"

namespace polyfam {

// Numeric policy shared by every tolerance-aware operation.
//
// All root-space thresholds are relative: they are multiplied by the root
// spread (max root modulus clamped to >= 1) before being compared against
// absolute quantities. Coefficient thresholds are relative to the max
// absolute coefficient of the polynomial they apply to.
struct Tolerances {
  double tau_zero = 1e-12;       // relative coefficient-zero threshold
  double tau_root = 1e-6;        // root clustering radius / imaginary-part budget
  double tau_sign = 1e-8;        // sign-test margin
  double tau_proper = 1e-9;      // properness residual threshold
  double epsilon_perturb = 1e-3; // default epsilon for perturbation routines
  int max_retries = 24;          // budget for epsilon-shrinking loops
  bool exact = false;            // run zero-combination searches in exact rational arithmetic
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;  // seed for internal deterministic sampling

  void validate() const {
    if (!(tau_zero > 0 && tau_root > 0 && tau_sign > 0 && tau_proper > 0))
      throw ToleranceError("all tolerance thresholds must be strictly positive");
    if (!(epsilon_perturb > 0 && epsilon_perturb < 1))
      throw ToleranceError("epsilon_perturb must lie in (0, 1)");
    if (max_retries < 0) throw ToleranceError("max_retries must be nonnegative");
  }

  // Named profiles, selectable through the POLYFAM_TOL_PROFILE environment
  // variable and the CLI.
  static Tolerances profile(const std::string& name) {
    Tolerances t;
    if (name.empty() || name == "default") return t;
    if (name == "strict") {
      t.tau_zero = 1e-13;
      t.tau_root = 1e-8;
      t.tau_sign = 1e-10;
      t.tau_proper = 1e-11;
      return t;
    }
    if (name == "loose") {
      t.tau_zero = 1e-10;
      t.tau_root = 1e-4;
      t.tau_sign = 1e-6;
      t.tau_proper = 1e-7;
      return t;
    }
    throw ToleranceError("unknown tolerance profile: " + name);
  }
};

}  // namespace polyfam
