#pragma once

// Symbols of multiplication operators and the spectrum driver.
//
// Convention: L_k = sum_y m^(y) exp(+2 pi i <k, y>). With k = A^{-T} k_frac
// and y = A j this is exp(2 pi i <k_frac, j>), which is what gets evaluated.

#include <optional>
#include <string>
#include <vector>

#include "lfa/operator.hpp"

namespace lfa {

class Expr;

/// exp(2 pi i r), exact at multiples of 1/4.
Complex unit_root(const Rational& r);

CMatrix symbol_at(const MultiplicationOperator& l, const FracPoint& k_frac);
CMatrix symbol_at(const MultiplicationOperator& l, const DualSample& k);
/// Evaluated from a physical wave vector in floating point.
CMatrix symbol_at_physical(const MultiplicationOperator& l, const Eigen::VectorXd& k_phys);

/// Default cutoff max(rows, cols) * eps * sigma_max.
double default_rank_tol(const CMatrix& s, double sigma_max);

/// Moore-Penrose pseudo-inverse by SVD. Singular values not above
/// rank_tol are dropped; rank_tol defaults to default_rank_tol.
CMatrix symbol_pinv(const CMatrix& s, std::optional<double> rank_tol = std::nullopt);

/// All eigenvalues of a square complex matrix, unordered.
std::vector<Complex> eigenvalues(const CMatrix& m);

/// Sorts by real part, then imaginary part.
void sort_lexicographic(std::vector<Complex>& values);

struct SpectrumRecord {
  DualSample k;
  std::vector<Complex> eigenvalues;  // sorted by (re, im)
};

struct SpectrumResult {
  std::vector<SpectrumRecord> records;  // sorted by k_frac
  double rho_max = 0.0;
  IntMatrix resolution;
  Lattice lattice;  // common lattice the samples refer to
  StructureElement se;
  std::string expression;
};

struct SpectrumOptions {
  unsigned threads = 1;
  std::optional<double> rank_tol;
};

/// Rewrites the referenced operators on a common lattice C, samples the dual
/// torus of Z = C M, evaluates the expression symbolwise and collects the
/// eigenvalues.
SpectrumResult compute_spectrum(const Expr& expr,
                                const std::map<std::string, MultiplicationOperator>& env,
                                const IntMatrix& m, const SpectrumOptions& options = {});

}  // namespace lfa
