#include "lfa/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "lfa/error.hpp"
#include "lfa/expr.hpp"

namespace lfa {

Complex unit_root(const Rational& r) {
  // Split off the quarter turns so that they are applied exactly.
  const Rational f = fractional_part(r);
  const BigInt quarter = floor(Rational(f * 4));
  const Rational rest = f - Rational(quarter, 4);
  const double angle = 2.0 * M_PI * to_double(rest);
  Complex z(std::cos(angle), std::sin(angle));
  switch (quarter.convert_to<int>()) {
    case 1:
      return {-z.imag(), z.real()};
    case 2:
      return {-z.real(), -z.imag()};
    case 3:
      return {z.imag(), -z.real()};
    default:
      return z;
  }
}

CMatrix symbol_at(const MultiplicationOperator& l, const FracPoint& k_frac) {
  if (k_frac.size() != l.dim()) throw LatticeError("wave vector has wrong dimension");
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(l.rows()),
                              static_cast<Eigen::Index>(l.cols()));
  for (const auto& [j, m] : l.multipliers()) {
    Rational phase = 0;
    for (std::size_t d = 0; d < j.size(); ++d) phase += k_frac[d] * j[d];
    out += unit_root(phase) * m;
  }
  return out;
}

CMatrix symbol_at(const MultiplicationOperator& l, const DualSample& k) {
  return symbol_at(l, k.k_frac);
}

CMatrix symbol_at_physical(const MultiplicationOperator& l, const Eigen::VectorXd& k_phys) {
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(l.rows()),
                              static_cast<Eigen::Index>(l.cols()));
  for (const auto& [j, m] : l.multipliers()) {
    const double angle = 2.0 * M_PI * k_phys.dot(l.lattice().to_physical(j));
    out += Complex(std::cos(angle), std::sin(angle)) * m;
  }
  return out;
}

double default_rank_tol(const CMatrix& s, double sigma_max) {
  return static_cast<double>(std::max(s.rows(), s.cols())) *
         std::numeric_limits<double>::epsilon() * sigma_max;
}

CMatrix symbol_pinv(const CMatrix& s, std::optional<double> rank_tol) {
  if (s.size() == 0) return CMatrix::Zero(s.cols(), s.rows());
  Eigen::JacobiSVD<CMatrix> svd(s, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  const double sigma_max = sigma.size() ? sigma(0) : 0.0;
  const double tol = rank_tol ? *rank_tol : default_rank_tol(s, sigma_max);
  CMatrix out = CMatrix::Zero(s.cols(), s.rows());
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (!(sigma(i) > tol)) continue;
    out += (svd.matrixV().col(i) / sigma(i)) * svd.matrixU().col(i).adjoint();
  }
  return out;
}

std::vector<Complex> eigenvalues(const CMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eigenvalues: matrix is not square");
  if (m.size() == 0) return {};
  Eigen::ComplexEigenSolver<CMatrix> solver(m, false);
  if (solver.info() != Eigen::Success) throw Error("eigenvalue iteration did not converge");
  const auto& ev = solver.eigenvalues();
  return std::vector<Complex>(ev.data(), ev.data() + ev.size());
}

void sort_lexicographic(std::vector<Complex>& values) {
  std::sort(values.begin(), values.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

SpectrumResult compute_spectrum(const Expr& expr,
                                const std::map<std::string, MultiplicationOperator>& env,
                                const IntMatrix& m, const SpectrumOptions& options) {
  TypedExpr typed(std::make_shared<Expr>(expr), compatible_environment(expr, env));
  if (typed.domain() != typed.codomain())
    throw ExpressionError("expression does not map a crystal to itself; no eigenvalues");

  SpectrumResult result;
  result.resolution = m;
  result.lattice = typed.lattice();
  result.se = typed.domain();
  result.expression = render(expr);

  std::vector<DualSample> samples = sample_dual_torus(typed.lattice(), m);
  result.records.resize(samples.size());

  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < samples.size(); i += stride) {
      SpectrumRecord& rec = result.records[i];
      rec.k = samples[i];
      rec.eigenvalues = eigenvalues(eval_symbol(typed, rec.k.k_frac, options.rank_tol));
      sort_lexicographic(rec.eigenvalues);
    }
  };

  const unsigned threads = std::max(1u, options.threads);
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        try {
          work(t, threads);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  for (const auto& rec : result.records)
    for (const Complex& z : rec.eigenvalues) result.rho_max = std::max(result.rho_max, std::abs(z));
  return result;
}

}  // namespace lfa
