#include "lfa/operator.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "lfa/error.hpp"

namespace lfa {

namespace {

IntVector operator+(IntVector a, const IntVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

IntVector operator-(IntVector a, const IntVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

IntVector negated(IntVector a) {
  for (auto& v : a) v = -v;
  return a;
}

bool all_zero(const CMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i)
    if (m.data()[i] != Complex(0.0, 0.0)) return false;
  return true;
}

// Puts g on l's basis when the two bases span the same lattice.
MultiplicationOperator on_same_basis(const MultiplicationOperator& l,
                                     const MultiplicationOperator& g, const char* what) {
  if (l.lattice().basis() == g.lattice().basis()) return g;
  if (!lattice_equal(l.lattice(), g.lattice()))
    throw IncompatibleError(std::string("incompatible operators in ") + what + ": lattices differ");
  return lattice_coarsening(g, l.lattice());
}

struct Matching {
  std::vector<std::size_t> index;  // source point -> target point
  std::vector<IntVector> shift;    // source - target, integral
};

Matching match_points(const StructureElement& source, const StructureElement& target) {
  if (source.size() != target.size()) throw IncompatibleError("structure elements not congruent");
  Matching out;
  std::vector<bool> used(target.size(), false);
  for (const FracPoint& p : source) {
    std::size_t found = target.size();
    for (std::size_t l = 0; l < target.size(); ++l)
      if (!used[l] && congruent(p, target[l])) {
        found = l;
        break;
      }
    if (found == target.size()) throw IncompatibleError("structure elements not congruent");
    used[found] = true;
    FracPoint diff(p.size());
    for (std::size_t d = 0; d < p.size(); ++d) diff[d] = p[d] - target[found][d];
    out.index.push_back(found);
    out.shift.push_back(to_int_vector(diff));
  }
  return out;
}

}  // namespace

MultiplicationOperator::MultiplicationOperator(Lattice lattice, StructureElement domain,
                                               StructureElement codomain)
    : lattice_(std::move(lattice)), domain_(std::move(domain)), codomain_(std::move(codomain)) {
  for (const auto* se : {&domain_, &codomain_})
    for (const FracPoint& p : *se)
      if (p.size() != lattice_.dim())
        throw IncompatibleError("structure element point has wrong dimension");
}

MultiplicationOperator MultiplicationOperator::identity(const Lattice& lattice,
                                                        const StructureElement& se) {
  MultiplicationOperator op(lattice, se, se);
  const auto m = static_cast<Eigen::Index>(se.size());
  op.set(IntVector(lattice.dim(), 0), CMatrix::Identity(m, m));
  return op;
}

CMatrix MultiplicationOperator::at(const IntVector& offset) const {
  auto it = multipliers_.find(offset);
  if (it != multipliers_.end()) return it->second;
  return CMatrix::Zero(static_cast<Eigen::Index>(rows()), static_cast<Eigen::Index>(cols()));
}

void MultiplicationOperator::check_shape(const IntVector& offset, const CMatrix& m) const {
  if (offset.size() != dim()) throw IncompatibleError("offset has wrong dimension");
  if (m.rows() != static_cast<Eigen::Index>(rows()) || m.cols() != static_cast<Eigen::Index>(cols()))
    throw IncompatibleError("multiplier shape does not match structure elements");
}

void MultiplicationOperator::accumulate(const IntVector& offset, const CMatrix& m) {
  check_shape(offset, m);
  auto it = multipliers_.find(offset);
  if (it == multipliers_.end()) {
    if (!all_zero(m)) multipliers_.emplace(offset, m);
    return;
  }
  it->second += m;
  if (all_zero(it->second)) multipliers_.erase(it);
}

void MultiplicationOperator::set(const IntVector& offset, const CMatrix& m) {
  check_shape(offset, m);
  if (all_zero(m))
    multipliers_.erase(offset);
  else
    multipliers_[offset] = m;
}

bool identical(const MultiplicationOperator& a, const MultiplicationOperator& b) {
  if (a.dim() != b.dim() || a.lattice().basis() != b.lattice().basis()) return false;
  if (a.domain_se() != b.domain_se() || a.codomain_se() != b.codomain_se()) return false;
  if (a.multipliers().size() != b.multipliers().size()) return false;
  for (const auto& [y, m] : a.multipliers()) {
    auto it = b.multipliers().find(y);
    if (it == b.multipliers().end() || it->second != m) return false;
  }
  return true;
}

MultiplicationOperator add(const MultiplicationOperator& l, const MultiplicationOperator& g) {
  MultiplicationOperator h = on_same_basis(l, g, "add");
  if (l.domain_se() != h.domain_se())
    throw IncompatibleError("incompatible operators in add: domain structure elements differ");
  if (l.codomain_se() != h.codomain_se())
    throw IncompatibleError("incompatible operators in add: codomain structure elements differ");
  MultiplicationOperator out = l;
  for (const auto& [y, m] : h.multipliers()) out.accumulate(y, m);
  return out;
}

MultiplicationOperator subtract(const MultiplicationOperator& l, const MultiplicationOperator& g) {
  return add(l, scale(-1.0, g));
}

MultiplicationOperator mul(const MultiplicationOperator& l, const MultiplicationOperator& g) {
  MultiplicationOperator h = on_same_basis(l, g, "mul");
  if (l.domain_se() != h.codomain_se())
    throw IncompatibleError(
        "incompatible operators in mul: domain of the left factor differs from codomain of the "
        "right factor");
  MultiplicationOperator out(l.lattice(), h.domain_se(), l.codomain_se());
  for (const auto& [y, ml] : l.multipliers())
    for (const auto& [w, mg] : h.multipliers()) out.accumulate(y + w, ml * mg);
  return out;
}

MultiplicationOperator adjoint(const MultiplicationOperator& l) {
  MultiplicationOperator out(l.lattice(), l.codomain_se(), l.domain_se());
  for (const auto& [y, m] : l.multipliers()) out.set(negated(y), m.adjoint());
  return out;
}

MultiplicationOperator scale(Complex c, const MultiplicationOperator& l) {
  MultiplicationOperator out(l.lattice(), l.domain_se(), l.codomain_se());
  for (const auto& [y, m] : l.multipliers()) out.set(y, c * m);
  return out;
}

MultiplicationOperator change_structure_element(const MultiplicationOperator& l,
                                                const StructureElement& u,
                                                const StructureElement& v) {
  // s_j = u_pi(j) + e_j and t_i = v_sigma(i) + f_i, so the coefficient
  // (m^(y))_ij moves to row sigma(i), column pi(j) of offset y - f_i + e_j.
  const Matching dom = match_points(l.domain_se(), u);
  const Matching cod = match_points(l.codomain_se(), v);

  std::map<IntVector, CMatrix> out;
  const auto rows = static_cast<Eigen::Index>(v.size());
  const auto cols = static_cast<Eigen::Index>(u.size());
  for (const auto& [y, m] : l.multipliers())
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        if (m(i, j) == Complex(0.0, 0.0)) continue;
        IntVector target = y - cod.shift[static_cast<std::size_t>(i)] +
                           dom.shift[static_cast<std::size_t>(j)];
        auto it = out.try_emplace(std::move(target), CMatrix::Zero(rows, cols)).first;
        it->second(static_cast<Eigen::Index>(cod.index[static_cast<std::size_t>(i)]),
                   static_cast<Eigen::Index>(dom.index[static_cast<std::size_t>(j)])) += m(i, j);
      }

  MultiplicationOperator result(l.lattice(), u, v);
  for (auto& [y, m] : out) result.set(y, m);
  return result;
}

StructureElement normal_structure_element(const StructureElement& se) {
  StructureElement out;
  out.reserve(se.size());
  for (const FracPoint& p : se) out.push_back(fractional_part(p));
  std::stable_sort(out.begin(), out.end());
  return out;
}

MultiplicationOperator normalize(const MultiplicationOperator& l) {
  return change_structure_element(l, normal_structure_element(l.domain_se()),
                                  normal_structure_element(l.codomain_se()));
}

MultiplicationOperator lattice_coarsening(const MultiplicationOperator& l, const Lattice& c) {
  const RationalMatrix rel = lattice_relation(l.lattice(), c);
  if (!is_integral(rel)) throw LatticeError("not a sublattice");
  const IntMatrix r = to_integer(rel);
  const IntMatrix h = hnf(r).H;
  const RationalMatrix r_inv = inverse(rel);
  const std::vector<IntVector> reps = quotient_representatives(r);

  std::map<IntVector, std::size_t> index;
  for (std::size_t i = 0; i < reps.size(); ++i) index.emplace(reps[i], i);

  auto blocked = [&](const StructureElement& se) {
    StructureElement out;
    for (const IntVector& t : reps)
      for (const FracPoint& s : se) {
        FracPoint p = to_frac(t);
        for (std::size_t d = 0; d < p.size(); ++d) p[d] += s[d];
        out.push_back(mat_vec(r_inv, p));
      }
    return out;
  };

  const auto mt = static_cast<Eigen::Index>(l.rows());
  const auto ms = static_cast<Eigen::Index>(l.cols());
  const auto p = static_cast<Eigen::Index>(reps.size());

  // Codomain point x + t_i + t'_b reads the value at x + t_i + z + s_a.
  // Writing t_i + z = y + t_k with y in the sublattice puts m^(z) into
  // block (i, k) of the coarse multiplier at y.
  std::map<IntVector, CMatrix> out;
  for (const auto& [z, m] : l.multipliers())
    for (Eigen::Index i = 0; i < p; ++i) {
      const IntVector w = reps[static_cast<std::size_t>(i)] + z;
      const IntVector tk = reduce_representative(w, h);
      const auto k = static_cast<Eigen::Index>(index.at(tk));
      const IntVector y = to_int_vector(mat_vec(r_inv, to_frac(w - tk)));
      auto it = out.try_emplace(y, CMatrix::Zero(p * mt, p * ms)).first;
      it->second.block(i * mt, k * ms, mt, ms) += m;
    }

  MultiplicationOperator result(c, blocked(l.domain_se()), blocked(l.codomain_se()));
  for (auto& [y, m] : out) result.set(y, m);
  return result;
}

std::vector<MultiplicationOperator> make_compatible(
    const std::vector<MultiplicationOperator>& ops) {
  if (ops.empty()) return {};
  Lattice common = ops.front().lattice();
  for (std::size_t i = 1; i < ops.size(); ++i) common = lcm_lattice(common, ops[i].lattice());
  std::vector<MultiplicationOperator> out;
  out.reserve(ops.size());
  for (const auto& op : ops) out.push_back(normalize(lattice_coarsening(op, common)));
  return out;
}

LexOrder LexOrder::bottom_to_top(std::size_t dim) {
  LexOrder order;
  for (std::size_t d = dim; d-- > 0;) order.priority.push_back(d);
  return order;
}

bool LexOrder::less(const IntVector& a, const IntVector& b) const {
  for (std::size_t d : priority) {
    if (a[d] < b[d]) return true;
    if (a[d] > b[d]) return false;
  }
  return false;
}

bool LexOrder::negative(const IntVector& y) const {
  return less(y, IntVector(y.size(), 0));
}

MultiplicationOperator triangular_splitting(const MultiplicationOperator& l,
                                            const LexOrder& order) {
  if (l.rows() != l.cols())
    throw IncompatibleError("triangular splitting needs square multipliers");
  if (order.priority.size() != l.dim())
    throw IncompatibleError("order has wrong dimension");
  MultiplicationOperator out(l.lattice(), l.domain_se(), l.codomain_se());
  const IntVector zero(l.dim(), 0);
  for (const auto& [y, m] : l.multipliers()) {
    if (y == zero)
      out.set(y, m.triangularView<Eigen::Lower>().toDenseMatrix());
    else if (order.negative(y))
      out.set(y, m);
  }
  return out;
}

MultiplicationOperator mask_central(const MultiplicationOperator& l,
                                    const std::vector<bool>& mask) {
  if (l.rows() != l.cols()) throw IncompatibleError("mask needs square multipliers");
  if (mask.size() != l.rows()) throw IncompatibleError("mask size does not match structure element");
  CMatrix p = CMatrix::Zero(static_cast<Eigen::Index>(mask.size()),
                            static_cast<Eigen::Index>(mask.size()));
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i]) p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
  MultiplicationOperator out(l.lattice(), l.domain_se(), l.codomain_se());
  const IntVector zero(l.dim(), 0);
  out.set(zero, p * l.at(zero) * p);
  return out;
}

std::string to_string(const StructureElement& se) {
  std::string out = "(";
  for (std::size_t i = 0; i < se.size(); ++i) {
    if (i) out += ", ";
    out += "(";
    for (std::size_t d = 0; d < se[i].size(); ++d) {
      if (d) out += ", ";
      out += to_string(se[i][d]);
    }
    out += ")";
  }
  return out + ")";
}

}  // namespace lfa
