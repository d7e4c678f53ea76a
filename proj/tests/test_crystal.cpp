#include <doctest.h>

#include <cmath>
#include <set>

#include "lfa/crystal.hpp"
#include "lfa/error.hpp"
#include "support.hpp"

using namespace lfa;

namespace {

Lattice lat(std::initializer_list<std::initializer_list<double>> rows) {
  Eigen::MatrixXd b(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (double v : r) b(i, j++) = v;
    ++i;
  }
  return Lattice(b);
}

Lattice graphene_lattice() {
  return lat({{1.5, 1.5}, {std::sqrt(3.0) / 2, -std::sqrt(3.0) / 2}});
}

}  // namespace

TEST_CASE("singular basis is rejected") {
  CHECK_THROWS_AS(lat({{1, 2}, {2, 4}}), LatticeError);
}

TEST_CASE("sublattice tests") {
  const Lattice id = Lattice::identity(2);
  CHECK(is_sublattice(id, lat({{2, 0}, {0, 2}})));
  CHECK(is_sublattice(id, lat({{1, 1}, {1, -1}})));
  CHECK_FALSE(is_sublattice(lat({{2, 0}, {0, 2}}), id));
  CHECK_FALSE(is_sublattice(id, lat({{0.5, 0}, {0, 1}})));
}

TEST_CASE("lattice equality") {
  const Lattice id = Lattice::identity(2);
  CHECK(lattice_equal(id, lat({{1, 2}, {0, 1}})));
  CHECK_FALSE(lattice_equal(id, lat({{2, 0}, {0, 2}})));
  const Lattice g = graphene_lattice();
  for (int trial = 0; trial < 20; ++trial)
    CHECK(lattice_equal(g, g.times(testing::random_unimodular(2))));
}

TEST_CASE("quotient listing") {
  const Lattice id = Lattice::identity(2);
  const auto q = elements_in_quotient(id, lat({{2, 3}, {2, -2}}));
  CHECK(q.size() == 10);
  std::set<IntVector> expected;
  for (int j1 = 0; j1 < 5; ++j1)
    for (int j2 = 0; j2 < 2; ++j2) expected.insert({j1, j2});
  CHECK(std::set<IntVector>(q.begin(), q.end()) == expected);

  CHECK(elements_in_quotient(id, id) == std::vector<IntVector>{{0, 0}});
  CHECK(elements_in_quotient(id, lat({{2, 0}, {0, 2}})) ==
        std::vector<IntVector>{{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  CHECK_THROWS_AS(elements_in_quotient(lat({{2, 0}, {0, 2}}), id), LatticeError);
}

TEST_CASE("property: quotient size and inequivalence") {
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = static_cast<std::size_t>(testing::uniform_int(1, 3));
    IntMatrix m;
    BigInt det;
    do {
      m = testing::random_int_matrix(n, -4, 4);
      det = abs(determinant(m));
    } while (det == 0 || det > 60);
    const Lattice a = n == 2 ? graphene_lattice() : Lattice::identity(n);
    const Lattice c = a.times(m);
    const auto reps = elements_in_quotient(a, c);
    CHECK(BigInt(reps.size()) == det);

    const RationalMatrix minv = inverse(to_rational(m));
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (std::size_t j = i + 1; j < reps.size(); ++j) {
        FracPoint diff;
        for (std::size_t d = 0; d < n; ++d) diff.push_back(Rational(reps[i][d] - reps[j][d]));
        const FracPoint coords = mat_vec(minv, diff);
        bool integral = true;
        for (const auto& v : coords) integral = integral && denominator(v) == 1;
        CHECK_FALSE(integral);
      }
  }
}

TEST_CASE("lcm lattice") {
  const Lattice id = Lattice::identity(2);
  CHECK(lattice_equal(lcm_lattice(id, id), id));
  CHECK(lattice_equal(lcm_lattice(id, lat({{2, 0}, {0, 2}})), lat({{2, 0}, {0, 2}})));
  CHECK(lattice_equal(lcm_lattice(lat({{2, 0}, {0, 1}}), lat({{1, 0}, {0, 3}})), lat({{2, 0}, {0, 3}})));
  CHECK_THROWS_AS(lcm_lattice(id, lat({{std::sqrt(2.0), 0}, {0, 1}})), LatticeError);
}

TEST_CASE("property: lcm lattice against brute-force intersection") {
  for (int trial = 0; trial < 60; ++trial) {
    RationalMatrix ra(2), rb(2);
    do {
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
          ra(i, j) = Rational(testing::uniform_int(-6, 6), testing::uniform_int(1, 4));
          rb(i, j) = Rational(testing::uniform_int(-6, 6), testing::uniform_int(1, 4));
        }
    } while (determinant(ra) == 0 || determinant(rb) == 0);
    const Lattice a(to_eigen(ra)), b(to_eigen(rb));
    const Lattice c = lcm_lattice(a, b);
    CHECK(is_sublattice(a, c));
    CHECK(is_sublattice(b, c));
    const double brute = to_double(testing::brute_force_intersection_det(ra, rb));
    CHECK(std::abs(std::abs(c.basis().determinant()) - brute) <= 1e-9 * brute);
  }
}

TEST_CASE("dual basis") {
  CHECK((dual_basis(Lattice::identity(2)).basis() - Eigen::Matrix2d::Identity()).norm() < 1e-15);
  const double h = 0.125;
  const Lattice fine(Eigen::Matrix2d::Identity() / h);
  CHECK((dual_basis(fine).basis() - h * Eigen::Matrix2d::Identity()).norm() < 1e-15);

  const Lattice g = graphene_lattice();
  const Eigen::MatrixXd b = dual_basis(g).basis();
  CHECK((b.transpose() * g.basis() - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((dual_basis(dual_basis(g)).basis() - g.basis()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("dual torus sampling") {
  const Lattice id = Lattice::identity(2);
  const auto s = sample_dual_torus(id, IntMatrix{{2, 0}, {0, 2}});
  REQUIRE(s.size() == 4);
  std::set<std::pair<double, double>> phys;
  for (const auto& k : s) phys.insert({k.k_phys(0), k.k_phys(1)});
  CHECK(phys == std::set<std::pair<double, double>>{{0, 0}, {0.5, 0}, {0, 0.5}, {0.5, 0.5}});

  CHECK(sample_dual_torus(id, IntMatrix{{2, 3}, {2, -2}}).size() == 10);

  const auto single = sample_dual_torus(graphene_lattice(), IntMatrix::identity(2));
  REQUIRE(single.size() == 1);
  CHECK(single[0].k_frac == FracPoint{0, 0});
}

TEST_CASE("property: dual torus samples are distinct and dual to the torus") {
  for (int trial = 0; trial < 40; ++trial) {
    IntMatrix m;
    BigInt det;
    do {
      m = testing::random_int_matrix(2, -5, 5);
      det = abs(determinant(m));
    } while (det == 0 || det > 60);
    const auto s = sample_dual_torus(graphene_lattice(), m);
    CHECK(BigInt(s.size()) == det);
    std::set<FracPoint> seen;
    for (const auto& k : s) {
      seen.insert(k.k_frac);
      for (const auto& c : k.k_frac) CHECK((c >= 0 && c < 1));
      // exp(2 pi i <k, z>) = 1 for every column z of M
      for (std::size_t col = 0; col < 2; ++col) {
        Rational p = 0;
        for (std::size_t d = 0; d < 2; ++d) p += k.k_frac[d] * m(d, col);
        CHECK(denominator(p) == 1);
      }
    }
    CHECK(seen.size() == s.size());
  }
}

TEST_CASE("fractional points") {
  CHECK(fractional_part(FracPoint{Rational(-1, 2), Rational(5, 4)}) ==
        FracPoint{Rational(1, 2), Rational(1, 4)});
  CHECK(congruent(FracPoint{Rational(1, 2), 0}, FracPoint{Rational(-1, 2), 3}));
  CHECK_FALSE(congruent(FracPoint{Rational(1, 2), 0}, FracPoint{0, Rational(1, 2)}));
}
