#include <doctest.h>

#include <cmath>

#include "lfa/error.hpp"
#include "lfa/expr.hpp"
#include "lfa/gallery.hpp"
#include "lfa/oracle.hpp"
#include "lfa/symbol.hpp"
#include "support.hpp"

using namespace lfa;

namespace {

// Characteristic polynomial by Faddeev-LeVerrier, roots by Durand-Kerner.
std::vector<Complex> polynomial_roots_oracle(const CMatrix& a) {
  const Eigen::Index n = a.rows();
  std::vector<Complex> c(static_cast<std::size_t>(n + 1));  // monic, c[0] = 1
  c[0] = 1;
  CMatrix m = CMatrix::Zero(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    m = a * m + c[static_cast<std::size_t>(k - 1)] * CMatrix::Identity(n, n);
    c[static_cast<std::size_t>(k)] = -(a * m).trace() / static_cast<double>(k);
  }
  auto p = [&](Complex z) {
    Complex v = 0;
    for (const auto& coef : c) v = v * z + coef;
    return v;
  };
  std::vector<Complex> roots;
  for (Eigen::Index i = 0; i < n; ++i) roots.push_back(std::pow(Complex(0.4, 0.9), static_cast<double>(i)));
  for (int it = 0; it < 2000; ++it)
    for (std::size_t i = 0; i < roots.size(); ++i) {
      Complex den = 1;
      for (std::size_t j = 0; j < roots.size(); ++j)
        if (j != i) den *= roots[i] - roots[j];
      roots[i] -= p(roots[i]) / den;
    }
  return roots;
}

}  // namespace

TEST_CASE("unit roots are exact at quarter turns") {
  CHECK(unit_root(0) == Complex(1, 0));
  CHECK(unit_root(Rational(1, 4)) == Complex(0, 1));
  CHECK(unit_root(Rational(1, 2)) == Complex(-1, 0));
  CHECK(unit_root(Rational(-1, 4)) == Complex(0, -1));
  CHECK(std::abs(unit_root(Rational(1, 3)) - std::exp(Complex(0, 2 * M_PI / 3))) < 1e-15);
}

TEST_CASE("laplacian symbol") {
  const double h = 0.5;
  const auto l = laplacian_5pt(h);
  CHECK(testing::max_abs(symbol_at(l, FracPoint{0, 0})) == 0);
  CHECK(symbol_at(l, FracPoint{Rational(1, 2), Rational(1, 2)})(0, 0) == Complex(8 / (h * h)));
  for (int trial = 0; trial < 20; ++trial) {
    const FracPoint k = testing::random_frac_point(2, 101);
    const double k1 = to_double(k[0]), k2 = to_double(k[1]);
    const double closed = (4 - 2 * std::cos(2 * M_PI * k1) - 2 * std::cos(2 * M_PI * k2)) / (h * h);
    CHECK(std::abs(symbol_at(l, k)(0, 0) - closed) < 1e-12);
    // physical evaluation agrees with the fractional one
    const Eigen::VectorXd kp = dual_basis(l.lattice()).basis() * Eigen::Vector2d(k1, k2);
    CHECK(testing::max_abs(symbol_at_physical(l, kp) - symbol_at(l, k)) < 1e-12);
  }
}

TEST_CASE("graphene symbol vanishes at the Dirac points") {
  const auto l = graphene_hamiltonian();
  for (const FracPoint& k : {FracPoint{Rational(1, 3), Rational(2, 3)}, FracPoint{Rational(2, 3), Rational(1, 3)}})
    CHECK(std::abs(symbol_at(l, k).determinant()) < 1e-10);
  CHECK(std::abs(symbol_at(l, FracPoint{0, 0}).determinant()) > 1);
}

TEST_CASE("pseudo-inverse examples") {
  CMatrix a(2, 2);
  a << 2, 1, 1, 3;
  CHECK(testing::max_abs(a * symbol_pinv(a) - CMatrix::Identity(2, 2)) < 1e-12);
  CHECK(testing::max_abs(symbol_pinv(CMatrix::Zero(3, 2))) == 0);
  CHECK(symbol_pinv(CMatrix::Zero(3, 2)).rows() == 2);
  const double h = 0.5;
  CMatrix sr = CMatrix::Zero(2, 2);
  sr(0, 0) = 4 / (h * h);
  CMatrix expect = CMatrix::Zero(2, 2);
  expect(0, 0) = h * h / 4;
  CHECK(testing::max_abs(symbol_pinv(sr) - expect) < 1e-15);
}

TEST_CASE("property: Penrose axioms") {
  for (int trial = 0; trial < 100; ++trial) {
    const auto r = testing::uniform_int(1, 5), c = testing::uniform_int(1, 5);
    const auto rank = testing::uniform_int(0, std::min(r, c));
    const CMatrix s = testing::random_cmatrix(r, rank) * testing::random_cmatrix(rank, c);
    const CMatrix p = symbol_pinv(s);
    CHECK(testing::max_abs(s * p * s - s) < 1e-10);
    CHECK(testing::max_abs(p * s * p - p) < 1e-10);
    CHECK(testing::max_abs((s * p).adjoint() - s * p) < 1e-10);
    CHECK(testing::max_abs((p * s).adjoint() - p * s) < 1e-10);
  }
}

TEST_CASE("eigenvalue examples") {
  const auto id = eigenvalues(CMatrix::Identity(3, 3));
  CHECK(id.size() == 3);
  for (const auto& z : id) CHECK(std::abs(z - 1.0) < 1e-15);
  CMatrix nil(2, 2);
  nil << 0, 1, 0, 0;
  for (const auto& z : eigenvalues(nil)) CHECK(std::abs(z) == 0);
  CHECK_THROWS(eigenvalues(CMatrix::Zero(2, 3)));
}

TEST_CASE("property: eigenvalues against polynomial roots") {
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = testing::uniform_int(1, 4);
    const CMatrix a = testing::random_cmatrix(n, n);
    CHECK(matched_distance(eigenvalues(a), polynomial_roots_oracle(a)) < 1e-8);
  }
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrix a = testing::random_cmatrix(8, 8);
    const auto ev = eigenvalues(a);
    Complex sum = 0, prod = 1;
    for (const auto& z : ev) {
      sum += z;
      prod *= z;
    }
    CHECK(std::abs(sum - a.trace()) < 1e-10);
    CHECK(std::abs(prod - a.determinant()) < 1e-10 * std::max(1.0, std::abs(a.determinant())));
  }
}

TEST_CASE("property: symbol calculus homomorphism") {
  const Lattice a = graphene_hamiltonian().lattice();
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = testing::random_se(2, 2), t = testing::random_se(2, 3);
    const auto l = testing::random_operator(a, s, t), g = testing::random_operator(a, s, t);
    const auto q = testing::random_operator(a, t, s);
    const auto sum = add(l, g), prod = mul(q, l), adj = adjoint(l);
    for (int ki = 0; ki < 20; ++ki) {
      const FracPoint k = testing::random_frac_point(2, 1009);
      CHECK(testing::max_abs(symbol_at(sum, k) - symbol_at(l, k) - symbol_at(g, k)) < 1e-12);
      CHECK(testing::max_abs(symbol_at(prod, k) - symbol_at(q, k) * symbol_at(l, k)) < 1e-12);
      CHECK(testing::max_abs(symbol_at(adj, k) - symbol_at(l, k).adjoint()) < 1e-12);
    }
  }
}

TEST_CASE("spectrum of the laplacian matches the dense torus") {
  Environment fine{{"L", laplacian_5pt(1)}};
  for (long long n : {3, 4, 6}) {
    const IntMatrix m{{n, 0}, {0, n}};
    const auto r = compute_spectrum(*parse("L"), fine, m);
    std::vector<Complex> all;
    for (const auto& rec : r.records) all.insert(all.end(), rec.eigenvalues.begin(), rec.eigenvalues.end());
    CHECK(all.size() == static_cast<std::size_t>(n * n));
    CHECK(sorted_distance(all, dense_spectrum(assemble_dense(fine.at("L"), m))) < 1e-8);
  }
}

TEST_CASE("red-black propagator has a zero eigenvalue at every sample") {
  const auto e = laplacian_rb(1);
  const auto r = compute_spectrum(*parse(e.expressions.at("rbgs")), e.operators, IntMatrix{{16, 0}, {0, 16}});
  CHECK(r.records.size() == 256);
  for (const auto& rec : r.records) {
    double smallest = 1e300;
    for (const auto& z : rec.eigenvalues) smallest = std::min(smallest, std::abs(z));
    CHECK(smallest < 1e-10);
  }
}

TEST_CASE("spectrum records are sorted and independent of thread count") {
  const auto e = laplacian_rb(1);
  const auto ex = parse(e.expressions.at("rbgs"));
  const IntMatrix m{{5, 1}, {0, 3}};
  const auto one = compute_spectrum(*ex, e.operators, m);
  SpectrumOptions opts;
  opts.threads = 3;
  const auto three = compute_spectrum(*ex, e.operators, m, opts);
  REQUIRE(one.records.size() == three.records.size());
  for (std::size_t i = 0; i < one.records.size(); ++i) {
    CHECK(one.records[i].k.k_frac == three.records[i].k.k_frac);
    CHECK(one.records[i].eigenvalues == three.records[i].eigenvalues);
    if (i) CHECK(one.records[i - 1].k.k_frac < one.records[i].k.k_frac);
  }
  CHECK(one.rho_max == three.rho_max);
}

TEST_CASE("spectrum of a non-square expression is rejected") {
  const auto g = graphene(0.5);
  CHECK_THROWS_AS(compute_spectrum(*parse("R"), g.operators, IntMatrix{{2, 0}, {0, 2}}), ExpressionError);
}
