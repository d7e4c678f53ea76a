#pragma once

// Shared helpers for the test binaries: seeded generators and small
// brute-force oracles that do not go through the library code under test.

#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "lfa/crystal.hpp"
#include "lfa/intlat.hpp"
#include "lfa/operator.hpp"

namespace testing {

using lfa::BigInt;
using lfa::CMatrix;
using lfa::Complex;
using lfa::IntMatrix;
using lfa::Rational;

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline int uniform_int(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng());
}

inline double uniform_real(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline IntMatrix random_int_matrix(std::size_t n, int lo, int hi) {
  IntMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = uniform_int(lo, hi);
  return m;
}

inline IntMatrix random_nonsingular(std::size_t n, int lo, int hi) {
  for (;;) {
    IntMatrix m = random_int_matrix(n, lo, hi);
    if (lfa::determinant(m) != 0) return m;
  }
}

// Product of random elementary column operations and sign flips.
inline IntMatrix random_unimodular(std::size_t n, int steps = 8) {
  IntMatrix u = IntMatrix::identity(n);
  for (int s = 0; s < steps; ++s) {
    const auto i = static_cast<std::size_t>(uniform_int(0, static_cast<int>(n) - 1));
    auto j = static_cast<std::size_t>(uniform_int(0, static_cast<int>(n) - 1));
    if (n > 1)
      while (j == i) j = static_cast<std::size_t>(uniform_int(0, static_cast<int>(n) - 1));
    const int c = uniform_int(-2, 2);
    if (i == j || c == 0) {
      for (std::size_t r = 0; r < n; ++r) u(r, i) = -u(r, i);
      continue;
    }
    for (std::size_t r = 0; r < n; ++r) u(r, i) += c * u(r, j);
  }
  return u;
}

// Determinant of an integer matrix by cofactor expansion.
inline BigInt cofactor_det(const std::vector<std::vector<BigInt>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  BigInt sum = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<BigInt>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<BigInt> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(a[r][k]);
      minor.push_back(row);
    }
    const BigInt term = a[0][c] * cofactor_det(minor);
    sum += (c % 2 == 0) ? term : BigInt(-term);
  }
  return sum;
}

// gcd of all k x k minors, for every k. Elementary divisors are ratios of
// consecutive entries.
inline std::vector<BigInt> minor_gcds(const IntMatrix& m) {
  const std::size_t n = m.size();
  std::vector<BigInt> out;
  for (std::size_t k = 1; k <= n; ++k) {
    BigInt g = 0;
    for (unsigned rows = 0; rows < (1u << n); ++rows) {
      if (static_cast<std::size_t>(__builtin_popcount(rows)) != k) continue;
      for (unsigned cols = 0; cols < (1u << n); ++cols) {
        if (static_cast<std::size_t>(__builtin_popcount(cols)) != k) continue;
        std::vector<std::vector<BigInt>> sub;
        for (std::size_t r = 0; r < n; ++r) {
          if (!(rows >> r & 1u)) continue;
          std::vector<BigInt> row;
          for (std::size_t c = 0; c < n; ++c)
            if (cols >> c & 1u) row.push_back(m(r, c));
          sub.push_back(row);
        }
        BigInt d = cofactor_det(sub);
        if (d < 0) d = -d;
        g = boost::multiprecision::gcd(g, d);
      }
    }
    out.push_back(g);
  }
  return out;
}

// |det| of L(A) cap L(B) by counting: u in Z^n gives A u in L(B) iff
// (B^{-1} A) u is integral, a condition periodic modulo the denominator d.
inline Rational brute_force_intersection_det(const lfa::RationalMatrix& a,
                                             const lfa::RationalMatrix& b) {
  const std::size_t n = a.size();
  const lfa::RationalMatrix q = lfa::inverse(b) * a;
  const BigInt d_big = lfa::denominator_lcm(q);
  const auto d = static_cast<std::int64_t>(d_big);
  std::vector<std::vector<std::int64_t>> p(n, std::vector<std::int64_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational v = q(i, j) * d;
      p[i][j] = static_cast<std::int64_t>(((numerator(v) % d) + d) % d);
    }
  std::int64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= d;
  std::int64_t count = 0;
  std::vector<std::int64_t> u(n, 0);
  for (std::int64_t it = 0; it < total; ++it) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < n; ++j) s = (s + p[i][j] * u[j]) % d;
      ok = s == 0;
    }
    count += ok;
    for (std::size_t j = 0; j < n; ++j) {
      if (++u[j] < d) break;
      u[j] = 0;
    }
  }
  return abs(lfa::determinant(a)) * Rational(total, count);
}

inline CMatrix random_cmatrix(Eigen::Index rows, Eigen::Index cols) {
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(uniform_real(-1, 1), uniform_real(-1, 1));
  return m;
}

inline lfa::FracPoint random_frac_point(std::size_t dim, int den = 12) {
  lfa::FracPoint p;
  for (std::size_t d = 0; d < dim; ++d) p.push_back(Rational(uniform_int(0, den - 1), den));
  return p;
}

inline lfa::StructureElement random_se(std::size_t dim, std::size_t count) {
  lfa::StructureElement se;
  while (se.size() < count) {
    lfa::FracPoint p = random_frac_point(dim);
    bool fresh = true;
    for (const auto& q : se)
      if (lfa::congruent(p, q)) fresh = false;
    if (fresh) se.push_back(p);
  }
  return se;
}

// Random operator with offsets in [-1, 1]^dim.
inline lfa::MultiplicationOperator random_operator(const lfa::Lattice& a,
                                                   const lfa::StructureElement& dom,
                                                   const lfa::StructureElement& cod,
                                                   int terms = 4) {
  lfa::MultiplicationOperator op(a, dom, cod);
  for (int t = 0; t < terms; ++t) {
    lfa::IntVector y;
    for (std::size_t d = 0; d < a.dim(); ++d) y.push_back(uniform_int(-1, 1));
    op.accumulate(y, random_cmatrix(static_cast<Eigen::Index>(cod.size()),
                                    static_cast<Eigen::Index>(dom.size())));
  }
  return op;
}

inline double max_abs(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace testing
