#include "lfa/crystal.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <Eigen/LU>

#include "lfa/error.hpp"

namespace lfa {

Lattice::Lattice(Eigen::MatrixXd basis) : basis_(std::move(basis)) {
  if (basis_.rows() != basis_.cols() || basis_.rows() == 0)
    throw LatticeError("lattice basis must be a nonempty square matrix");
  double scale = 1.0;
  for (Eigen::Index j = 0; j < basis_.cols(); ++j) scale *= basis_.col(j).norm();
  if (!(std::abs(basis_.determinant()) > 1e-12 * scale))
    throw LatticeError("singular lattice basis");
}

Lattice Lattice::identity(std::size_t n) {
  const auto k = static_cast<Eigen::Index>(n);
  return Lattice(Eigen::MatrixXd::Identity(k, k));
}

Lattice Lattice::times(const IntMatrix& m) const { return Lattice(basis_ * to_eigen(m)); }

Lattice Lattice::times(const RationalMatrix& m) const {
  return Lattice(basis_ * to_eigen(m));
}

Eigen::VectorXd Lattice::to_physical(const FracPoint& frac) const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(frac.size()));
  for (std::size_t i = 0; i < frac.size(); ++i) v(static_cast<Eigen::Index>(i)) = to_double(frac[i]);
  return basis_ * v;
}

Eigen::VectorXd Lattice::to_physical(const IntVector& j) const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = static_cast<double>(j[i]);
  return basis_ * v;
}

RationalMatrix lattice_relation(const Lattice& a, const Lattice& c) {
  if (a.dim() != c.dim()) throw LatticeError("lattices of different dimension");
  const Eigen::MatrixXd rel = a.basis().partialPivLu().solve(c.basis());
  const double scale = std::max(1.0, rel.cwiseAbs().maxCoeff());
  RationalMatrix out = rational_reconstruct(rel, kDefaultMaxDenominator, kDefaultReconstructTol * scale);
  // A floating-point relation between rational lattices is exact to rounding;
  // a merely close convergent (e.g. of sqrt 2) is not.
  if ((to_eigen(out) - rel).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw LatticeError("lattices not rationally related");
  return out;
}

bool is_sublattice(const Lattice& a, const Lattice& c) {
  if (a.dim() != c.dim()) return false;
  try {
    return is_integral(lattice_relation(a, c));
  } catch (const LatticeError&) {
    return false;
  }
}

bool lattice_equal(const Lattice& a, const Lattice& c) {
  if (a.dim() != c.dim()) return false;
  RationalMatrix rel;
  try {
    rel = lattice_relation(a, c);
  } catch (const LatticeError&) {
    return false;
  }
  if (!is_integral(rel)) return false;
  return hnf(to_integer(rel)).H == IntMatrix::identity(a.dim());
}

std::vector<IntVector> quotient_representatives(const IntMatrix& relation) {
  const IntMatrix h = hnf(relation).H;
  const std::size_t n = h.size();
  BigInt count = 1;
  for (std::size_t d = 0; d < n; ++d) count *= h(d, d);
  const auto total = count.convert_to<std::int64_t>();

  std::vector<IntVector> out;
  out.reserve(static_cast<std::size_t>(total));
  for (std::int64_t i = 0; i < total; ++i) {
    IntVector j(n);
    std::int64_t k = i;
    for (std::size_t d = 0; d < n; ++d) {
      const auto hd = h(d, d).convert_to<std::int64_t>();
      j[d] = k % hd;
      k /= hd;
    }
    out.push_back(std::move(j));
  }
  return out;
}

IntVector reduce_representative(IntVector w, const IntMatrix& h) {
  const std::size_t n = h.size();
  for (std::size_t l = n; l-- > 0;) {
    const auto hll = h(l, l).convert_to<std::int64_t>();
    std::int64_t q = w[l] / hll;
    if (w[l] % hll != 0 && (w[l] < 0)) --q;
    if (q == 0) continue;
    for (std::size_t i = 0; i <= l; ++i) w[i] -= q * h(i, l).convert_to<std::int64_t>();
  }
  return w;
}

std::vector<IntVector> elements_in_quotient(const Lattice& a, const Lattice& c) {
  RationalMatrix rel = lattice_relation(a, c);
  if (!is_integral(rel)) throw LatticeError("not a sublattice");
  return quotient_representatives(to_integer(rel));
}

Lattice lcm_lattice(const Lattice& a, const Lattice& b) {
  RationalMatrix rel;
  try {
    rel = lattice_relation(a, b);
  } catch (const LatticeError&) {
    throw LatticeError("no common sublattice");
  }
  if (is_integral(rel)) return b;
  if (is_integral(inverse(rel))) return a;

  const BigInt r = denominator_lcm(rel);
  RationalMatrix scaled = rel;
  for (std::size_t i = 0; i < rel.size(); ++i)
    for (std::size_t j = 0; j < rel.size(); ++j) scaled(i, j) *= Rational(r);
  auto [s, u, v] = snf(to_integer(scaled));
  (void)v;

  IntMatrix un = u;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const BigInt factor = r / boost::multiprecision::gcd(r, s(i, i));
    for (std::size_t row = 0; row < un.size(); ++row) un(row, i) *= factor;
  }
  return b.times(hnf(un).H);
}

Lattice dual_basis(const Lattice& a) {
  return Lattice(a.basis().inverse().transpose());
}

std::vector<DualSample> sample_dual_torus(const Lattice& a, const IntMatrix& m) {
  if (m.size() != a.dim()) throw LatticeError("resolution matrix has wrong dimension");
  if (determinant(m) == 0) throw LatticeError("singular resolution matrix");

  const RationalMatrix m_inv_t = inverse(to_rational(m.transpose()));
  const Eigen::MatrixXd dual = a.basis().inverse().transpose();

  std::vector<DualSample> out;
  for (const IntVector& j : quotient_representatives(m.transpose())) {
    DualSample s;
    s.k_frac = fractional_part(mat_vec(m_inv_t, to_frac(j)));
    Eigen::VectorXd kf(static_cast<Eigen::Index>(s.k_frac.size()));
    for (std::size_t i = 0; i < s.k_frac.size(); ++i)
      kf(static_cast<Eigen::Index>(i)) = to_double(s.k_frac[i]);
    s.k_phys = dual * kf;
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(),
            [](const DualSample& x, const DualSample& y) { return x.k_frac < y.k_frac; });
  return out;
}

FracPoint fractional_part(const FracPoint& p) {
  FracPoint out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = fractional_part(p[i]);
  return out;
}

bool congruent(const FracPoint& p, const FracPoint& q) {
  if (p.size() != q.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (denominator(Rational(p[i] - q[i])) != 1) return false;
  return true;
}

IntVector to_int_vector(const FracPoint& p) {
  IntVector out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (denominator(p[i]) != 1) throw LatticeError("point is not a lattice vector");
    out[i] = numerator(p[i]).convert_to<std::int64_t>();
  }
  return out;
}

FracPoint to_frac(const IntVector& j) {
  FracPoint out(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out[i] = Rational(j[i]);
  return out;
}

FracPoint mat_vec(const RationalMatrix& m, const FracPoint& p) {
  FracPoint out(m.size(), Rational(0));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out[i] += m(i, j) * p[j];
  return out;
}

IntVector mat_vec(const IntMatrix& m, const IntVector& j) {
  IntVector out(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t k = 0; k < m.size(); ++k) out[i] += m(i, k).convert_to<std::int64_t>() * j[k];
  return out;
}

}  // namespace lfa
