#pragma once

// Dense brute-force counterparts of the frequency-space machinery.
//
// A multiplication operator on the torus T = L(A) / L(A M) becomes a dense
// matrix whose rows and columns are indexed by point * m + structure index,
// with the points listed as in elements_in_quotient.

#include <vector>

#include "lfa/expr.hpp"
#include "lfa/operator.hpp"

namespace lfa {

inline constexpr std::size_t kMaxOraclePoints = 10000;

struct DenseTorusOperator {
  IntMatrix relation;             // M with Z = A M
  std::vector<IntVector> points;  // torus listing, integer coordinates of A
  CMatrix matrix;
};

DenseTorusOperator assemble_dense(const MultiplicationOperator& l, const IntMatrix& m);

std::vector<Complex> dense_spectrum(const DenseTorusOperator& d);
std::vector<Complex> dense_spectrum(const CMatrix& m);

/// Wave functions on the torus listing, ordered by sample then structure
/// index. Entry (i * m + j) of e_{l,k} is delta_{jl} exp(2 pi i <k_frac, j_i>).
std::vector<Eigen::VectorXcd> wave_basis(const Lattice& a, const IntMatrix& m,
                                         const StructureElement& se);

/// Gram matrix under <f, g> = (1/|T|) sum_i f_i conj(g_i).
CMatrix scaled_gram(const std::vector<Eigen::VectorXcd>& vectors, std::size_t torus_points);

/// Dense shift by one primitive vector, f(x) -> f(x + a_d), for m unknowns
/// per point.
CMatrix translation_matrix(const std::vector<IntVector>& points, const IntMatrix& m,
                           std::size_t direction, std::size_t unknowns);

/// Largest Frobenius norm of L T_d - T_d L over the primitive directions.
double check_translation_invariance(const MultiplicationOperator& l, const IntMatrix& m);
/// Same check for an arbitrary dense matrix on the torus of relation m with
/// the given unknowns per point (square case).
double check_translation_invariance(const CMatrix& dense, const IntMatrix& m,
                                    std::size_t unknowns);

/// Largest residual of L e_{l,k} after projecting onto the codomain
/// harmonics of the same k.
double harmonic_invariance_residual(const MultiplicationOperator& l, const IntMatrix& m);

/// Dense evaluation of an expression on the torus of relation m over the
/// common lattice; pinv becomes the dense pseudo-inverse.
CMatrix eval_dense(const Expr& e, const Environment& env, const IntMatrix& m);

/// Largest distance between two multisets after sorting both by (re, im).
double sorted_distance(std::vector<Complex> a, std::vector<Complex> b);
/// Largest distance of a greedy nearest-neighbour matching; robust for
/// non-normal spectra where sorting by real part can interleave.
double matched_distance(const std::vector<Complex>& a, const std::vector<Complex>& b);

}  // namespace lfa
