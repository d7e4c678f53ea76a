#pragma once

// Lattices, crystals, quotient tori and dual-torus sampling.

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "lfa/intlat.hpp"

namespace lfa {

/// Integer coordinates with respect to a lattice basis.
using IntVector = std::vector<std::int64_t>;
/// Exact fractional coordinates with respect to a lattice basis.
using FracPoint = std::vector<Rational>;

/// Ordered intra-cell positions. Order is significant; nothing is sorted or
/// reduced on construction.
using StructureElement = std::vector<FracPoint>;

class Lattice {
 public:
  Lattice() = default;
  /// Columns are the primitive vectors. Throws LatticeError if the basis is
  /// numerically singular.
  explicit Lattice(Eigen::MatrixXd basis);

  static Lattice identity(std::size_t n);

  std::size_t dim() const { return static_cast<std::size_t>(basis_.rows()); }
  const Eigen::MatrixXd& basis() const { return basis_; }

  /// Basis A * M of the sublattice described by an integral relation M.
  Lattice times(const IntMatrix& m) const;
  Lattice times(const RationalMatrix& m) const;

  Eigen::VectorXd to_physical(const FracPoint& frac) const;
  Eigen::VectorXd to_physical(const IntVector& j) const;

 private:
  Eigen::MatrixXd basis_;
};

struct Crystal {
  Lattice lattice;
  StructureElement se;
};

/// A sampled wave vector.
struct DualSample {
  FracPoint k_frac;        // coordinates w.r.t. the dual basis, in [0,1)^n
  Eigen::VectorXd k_phys;  // A^{-T} k_frac
};

/// Exact relation A^{-1} C, reconstructed from floating point. Throws
/// LatticeError when the lattices are not rationally related.
RationalMatrix lattice_relation(const Lattice& a, const Lattice& c);

bool is_sublattice(const Lattice& a, const Lattice& c);
bool lattice_equal(const Lattice& a, const Lattice& c);

/// Representatives of Z^n / R Z^n for integral nonsingular R, as integer
/// vectors j in the box of diag(hnf(R)). The first coordinate varies fastest.
std::vector<IntVector> quotient_representatives(const IntMatrix& relation);

/// Canonical representative of w modulo the columns of an upper triangular
/// HNF matrix h, lying in the box of its diagonal.
IntVector reduce_representative(IntVector w, const IntMatrix& h);

/// Representatives of L(A) / L(C) in integer coordinates of A.
std::vector<IntVector> elements_in_quotient(const Lattice& a, const Lattice& c);

/// Common sublattice of least determinant. Returns a basis of a (or b)
/// unchanged when it already is a sublattice of the other input.
Lattice lcm_lattice(const Lattice& a, const Lattice& b);

/// Lattice with basis A^{-T}.
Lattice dual_basis(const Lattice& a);

/// The |det M| wave vectors of the dual torus for Z = A M, sorted by k_frac.
std::vector<DualSample> sample_dual_torus(const Lattice& a, const IntMatrix& m);

/// Componentwise q - floor(q).
FracPoint fractional_part(const FracPoint& p);

/// True when every coordinate of p - q is an integer.
bool congruent(const FracPoint& p, const FracPoint& q);

IntVector to_int_vector(const FracPoint& p);
FracPoint to_frac(const IntVector& j);

/// Exact product of a rational matrix with a point.
FracPoint mat_vec(const RationalMatrix& m, const FracPoint& p);
IntVector mat_vec(const IntMatrix& m, const IntVector& j);

}  // namespace lfa
