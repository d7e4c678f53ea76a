#pragma once

// Oracle checks for a set of operators at a fixed torus resolution.

#include <optional>
#include <string>
#include <vector>

#include "lfa/expr.hpp"

namespace lfa {

struct CheckResult {
  std::string check;
  std::string subject;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed() const { return residual <= tolerance; }
};

struct VerifyTolerances {
  double translation = 1e-10;
  double spectrum = 1e-8;
  double orthonormality = 1e-12;
  double harmonics = 1e-10;
  double adjoint = 1e-12;
};

/// Runs translation invariance, symbol-versus-dense spectrum, wave basis
/// orthonormality, harmonic invariance and adjointness checks on every
/// operator, plus a dense evaluation of expr when one is given.
std::vector<CheckResult> run_verification(const Environment& env,
                                          const std::vector<std::string>& self_adjoint,
                                          const std::optional<std::string>& expr,
                                          const IntMatrix& m, const VerifyTolerances& tol = {});

/// Largest entrywise deviation between m^(y) and (m^(-y))^*; infinite when
/// domain and codomain differ.
double adjoint_defect(const MultiplicationOperator& op);

}  // namespace lfa
