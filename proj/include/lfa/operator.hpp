#pragma once

// Multiplication (block stencil) operators on crystals and their
// position-space rewritings.
//
// The action is (L f)(x + t_i) = sum_y sum_j (m^(y))_ij f(x + y + s_j), with
// s the domain and t the codomain structure element. Offsets y are stored as
// integer coordinates of the lattice basis.

#include <complex>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lfa/crystal.hpp"

namespace lfa {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

class MultiplicationOperator {
 public:
  using MultiplierMap = std::map<IntVector, CMatrix>;

  MultiplicationOperator() = default;
  MultiplicationOperator(Lattice lattice, StructureElement domain, StructureElement codomain);

  /// Identity on the crystal (lattice, se).
  static MultiplicationOperator identity(const Lattice& lattice, const StructureElement& se);

  const Lattice& lattice() const { return lattice_; }
  const StructureElement& domain_se() const { return domain_; }
  const StructureElement& codomain_se() const { return codomain_; }
  std::size_t dim() const { return lattice_.dim(); }
  std::size_t rows() const { return codomain_.size(); }
  std::size_t cols() const { return domain_.size(); }

  const MultiplierMap& multipliers() const { return multipliers_; }
  /// Multiplier at an offset, or a zero matrix.
  CMatrix at(const IntVector& offset) const;

  /// Adds m to the multiplier at offset. Exactly zero results are dropped.
  void accumulate(const IntVector& offset, const CMatrix& m);
  /// Replaces the multiplier at offset (dropping it when exactly zero).
  void set(const IntVector& offset, const CMatrix& m);

  bool empty() const { return multipliers_.empty(); }

 private:
  void check_shape(const IntVector& offset, const CMatrix& m) const;

  Lattice lattice_;
  StructureElement domain_;
  StructureElement codomain_;
  MultiplierMap multipliers_;
};

/// Same lattice basis, structure elements and multiplier map (exact).
bool identical(const MultiplicationOperator& a, const MultiplicationOperator& b);

MultiplicationOperator add(const MultiplicationOperator& l, const MultiplicationOperator& g);
MultiplicationOperator subtract(const MultiplicationOperator& l, const MultiplicationOperator& g);
/// l * g, acting as g first.
MultiplicationOperator mul(const MultiplicationOperator& l, const MultiplicationOperator& g);
MultiplicationOperator adjoint(const MultiplicationOperator& l);
MultiplicationOperator scale(Complex c, const MultiplicationOperator& l);

/// Congruent operator with domain u and codomain v. Each target point is
/// matched to the first unused congruent point. Throws IncompatibleError when
/// the structure elements are not congruent.
MultiplicationOperator change_structure_element(const MultiplicationOperator& l,
                                                const StructureElement& u,
                                                const StructureElement& v);

/// Structure elements reduced into [0,1)^n and sorted lexicographically
/// (stable, so ties keep their original order).
StructureElement normal_structure_element(const StructureElement& se);
MultiplicationOperator normalize(const MultiplicationOperator& l);

/// The same operator on the sublattice c. The new structure elements are
/// t_1 + s, t_2 + s, ... for the quotient representatives t_i, in fractional
/// coordinates of c.
MultiplicationOperator lattice_coarsening(const MultiplicationOperator& l, const Lattice& c);

/// Rewrites every operator on the lcm of all lattices, in normal form.
std::vector<MultiplicationOperator> make_compatible(const std::vector<MultiplicationOperator>& ops);

/// Total order on offsets: compares coordinates from most to least
/// significant. The default puts the last coordinate first, so rows of the
/// grid are ordered bottom to top and left to right within a row.
struct LexOrder {
  std::vector<std::size_t> priority;  // most significant axis first

  static LexOrder bottom_to_top(std::size_t dim);
  bool less(const IntVector& a, const IntVector& b) const;
  bool negative(const IntVector& y) const;
};

/// Keeps multipliers with y < 0 and the lower triangle (with diagonal) of
/// the central multiplier.
MultiplicationOperator triangular_splitting(const MultiplicationOperator& l, const LexOrder& order);

/// Single central multiplier P m^(0) P with P = diag(mask).
MultiplicationOperator mask_central(const MultiplicationOperator& l, const std::vector<bool>& mask);

std::string to_string(const StructureElement& se);

}  // namespace lfa
