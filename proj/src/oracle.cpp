#include "lfa/oracle.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "lfa/error.hpp"
#include "lfa/symbol.hpp"

namespace lfa {

namespace {

struct Torus {
  std::vector<IntVector> points;
  IntMatrix h;
  std::map<IntVector, std::size_t> index;

  explicit Torus(const IntMatrix& m) {
    if (determinant(m) == 0) throw LatticeError("singular resolution matrix");
    if (abs(determinant(m)) > kMaxOraclePoints)
      throw LatticeError("torus too large for the dense oracle");
    points = quotient_representatives(m);
    h = hnf(m).H;
    for (std::size_t i = 0; i < points.size(); ++i) index.emplace(points[i], i);
  }

  std::size_t locate(IntVector w) const { return index.at(reduce_representative(std::move(w), h)); }
};

IntVector shifted(IntVector x, const IntVector& y) {
  for (std::size_t d = 0; d < x.size(); ++d) x[d] += y[d];
  return x;
}

}  // namespace

DenseTorusOperator assemble_dense(const MultiplicationOperator& l, const IntMatrix& m) {
  if (m.size() != l.dim()) throw LatticeError("resolution matrix has wrong dimension");
  const Torus torus(m);
  const auto n = static_cast<Eigen::Index>(torus.points.size());
  const auto mt = static_cast<Eigen::Index>(l.rows());
  const auto ms = static_cast<Eigen::Index>(l.cols());

  DenseTorusOperator out;
  out.relation = m;
  out.points = torus.points;
  out.matrix = CMatrix::Zero(n * mt, n * ms);
  for (Eigen::Index i = 0; i < n; ++i)
    for (const auto& [y, mult] : l.multipliers()) {
      const auto j = static_cast<Eigen::Index>(
          torus.locate(shifted(torus.points[static_cast<std::size_t>(i)], y)));
      out.matrix.block(i * mt, j * ms, mt, ms) += mult;
    }
  return out;
}

std::vector<Complex> dense_spectrum(const DenseTorusOperator& d) { return dense_spectrum(d.matrix); }

std::vector<Complex> dense_spectrum(const CMatrix& m) { return eigenvalues(m); }

std::vector<Eigen::VectorXcd> wave_basis(const Lattice& a, const IntMatrix& m,
                                         const StructureElement& se) {
  const Torus torus(m);
  const auto n = static_cast<Eigen::Index>(torus.points.size());
  const auto ms = static_cast<Eigen::Index>(se.size());
  std::vector<Eigen::VectorXcd> out;
  for (const DualSample& k : sample_dual_torus(a, m))
    for (Eigen::Index l = 0; l < ms; ++l) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n * ms);
      for (Eigen::Index i = 0; i < n; ++i) {
        const IntVector& j = torus.points[static_cast<std::size_t>(i)];
        Rational phase = 0;
        for (std::size_t d = 0; d < j.size(); ++d) phase += k.k_frac[d] * j[d];
        v(i * ms + l) = unit_root(phase);
      }
      out.push_back(std::move(v));
    }
  return out;
}

CMatrix scaled_gram(const std::vector<Eigen::VectorXcd>& vectors, std::size_t torus_points) {
  const auto count = static_cast<Eigen::Index>(vectors.size());
  CMatrix g(count, count);
  for (Eigen::Index r = 0; r < count; ++r)
    for (Eigen::Index c = 0; c < count; ++c)
      g(r, c) = vectors[static_cast<std::size_t>(c)].dot(vectors[static_cast<std::size_t>(r)]) /
                static_cast<double>(torus_points);
  return g;
}

CMatrix translation_matrix(const std::vector<IntVector>& points, const IntMatrix& m,
                           std::size_t direction, std::size_t unknowns) {
  const Torus torus(m);
  const auto n = static_cast<Eigen::Index>(points.size());
  const auto u = static_cast<Eigen::Index>(unknowns);
  CMatrix t = CMatrix::Zero(n * u, n * u);
  for (Eigen::Index i = 0; i < n; ++i) {
    IntVector x = points[static_cast<std::size_t>(i)];
    x[direction] += 1;
    const auto j = static_cast<Eigen::Index>(torus.locate(std::move(x)));
    t.block(i * u, j * u, u, u).setIdentity();
  }
  return t;
}

double check_translation_invariance(const MultiplicationOperator& l, const IntMatrix& m) {
  const DenseTorusOperator d = assemble_dense(l, m);
  double worst = 0.0;
  for (std::size_t dir = 0; dir < l.dim(); ++dir) {
    const CMatrix t_dom = translation_matrix(d.points, m, dir, l.cols());
    const CMatrix t_cod = translation_matrix(d.points, m, dir, l.rows());
    worst = std::max(worst, (d.matrix * t_dom - t_cod * d.matrix).norm());
  }
  return worst;
}

double check_translation_invariance(const CMatrix& dense, const IntMatrix& m,
                                    std::size_t unknowns) {
  const std::vector<IntVector> points = quotient_representatives(m);
  if (dense.rows() != static_cast<Eigen::Index>(points.size() * unknowns) ||
      dense.cols() != dense.rows())
    throw std::invalid_argument("dense matrix does not fit the torus");
  double worst = 0.0;
  for (std::size_t dir = 0; dir < m.size(); ++dir) {
    const CMatrix t = translation_matrix(points, m, dir, unknowns);
    worst = std::max(worst, (dense * t - t * dense).norm());
  }
  return worst;
}

double harmonic_invariance_residual(const MultiplicationOperator& l, const IntMatrix& m) {
  const DenseTorusOperator d = assemble_dense(l, m);
  const auto dom = wave_basis(l.lattice(), m, l.domain_se());
  const auto cod = wave_basis(l.lattice(), m, l.codomain_se());
  const std::size_t n = d.points.size();
  const std::size_t ms = l.cols(), mt = l.rows();
  const double scale = static_cast<double>(n);

  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t a = 0; a < ms; ++a) {
      const Eigen::VectorXcd image = d.matrix * dom[k * ms + a];
      Eigen::VectorXcd proj = Eigen::VectorXcd::Zero(image.size());
      for (std::size_t b = 0; b < mt; ++b) {
        const Eigen::VectorXcd& w = cod[k * mt + b];
        proj += w * (w.dot(image) / scale);
      }
      worst = std::max(worst, (image - proj).norm() / std::sqrt(scale));
    }
  return worst;
}

CMatrix eval_dense(const Expr& e, const Environment& env, const IntMatrix& m) {
  TypedExpr t(std::make_shared<Expr>(e), compatible_environment(e, env));
  const std::size_t n = quotient_representatives(m).size();
  std::map<std::string, CMatrix> dense;
  for (const auto& [name, op] : t.env()) dense.emplace(name, assemble_dense(op, m).matrix);

  std::function<CMatrix(const Expr&)> eval = [&](const Expr& x) -> CMatrix {
    using K = Expr::Kind;
    switch (x.kind) {
      case K::Ident:
        return dense.at(x.name);
      case K::Identity: {
        const auto size = static_cast<Eigen::Index>(n * t.identity_se(x).size());
        return CMatrix::Identity(size, size);
      }
      case K::Add:
        return eval(*x.children[0]) + eval(*x.children[1]);
      case K::Sub:
        return eval(*x.children[0]) - eval(*x.children[1]);
      case K::Mul:
        return eval(*x.children[0]) * eval(*x.children[1]);
      case K::Neg:
        return -eval(*x.children[0]);
      case K::Scalar:
        return x.scalar * eval(*x.children[0]);
      case K::Adjoint:
        return eval(*x.children[0]).adjoint();
      case K::Pinv:
        return symbol_pinv(eval(*x.children[0]));
    }
    return {};
  };
  return eval(t.expr());
}

double sorted_distance(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  sort_lexicographic(a);
  sort_lexicographic(b);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double matched_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const Complex& z : a) {
    std::size_t best = b.size();
    double dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!used[j] && std::abs(z - b[j]) < dist) {
        dist = std::abs(z - b[j]);
        best = j;
      }
    used[best] = true;
    worst = std::max(worst, dist);
  }
  return worst;
}

}  // namespace lfa
