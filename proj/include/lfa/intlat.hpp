#pragma once

// Exact integer and rational linear algebra for lattice relations.
//
// Matrices here are tiny (n <= 4 in practice) but entries can grow during
// elimination, so everything is arbitrary precision.

#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

namespace lfa {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Dense square matrix over an exact ring, row-major.
template <class T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n) : n_(n), a_(n * n, T(0)) {}
  SquareMatrix(std::initializer_list<std::initializer_list<T>> rows);

  static SquareMatrix identity(std::size_t n) {
    SquareMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t size() const { return n_; }

  T& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return a_[i * n_ + j];
  }

  SquareMatrix transpose() const {
    SquareMatrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> a_;
};

template <class T>
SquareMatrix<T>::SquareMatrix(std::initializer_list<std::initializer_list<T>> rows)
    : SquareMatrix(rows.size()) {
  std::size_t i = 0;
  for (const auto& row : rows) {
    std::size_t j = 0;
    for (const auto& v : row) {
      if (j < n_) (*this)(i, j) = v;
      ++j;
    }
    ++i;
  }
}

template <class T>
SquareMatrix<T> operator*(const SquareMatrix<T>& a, const SquareMatrix<T>& b) {
  const std::size_t n = a.size();
  SquareMatrix<T> c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

using IntMatrix = SquareMatrix<BigInt>;
using RationalMatrix = SquareMatrix<Rational>;

/// A * U = H with H in Hermite normal form (upper triangular, non-negative,
/// every row's maximum on the diagonal) and U unimodular.
template <class T>
struct HnfResult {
  SquareMatrix<T> H;
  IntMatrix U;
};

/// V * A * U = S with S in Smith normal form and U, V unimodular.
template <class T>
struct SnfResult {
  SquareMatrix<T> S;
  IntMatrix U;
  IntMatrix V;
};

HnfResult<BigInt> hnf(const IntMatrix& a);
/// Scales by the lcm of the denominators, reduces, and scales back.
HnfResult<Rational> hnf(const RationalMatrix& a);

SnfResult<BigInt> snf(const IntMatrix& a);
SnfResult<Rational> snf(const RationalMatrix& a);

/// Fraction-free (Bareiss) determinant.
BigInt determinant(const IntMatrix& a);
Rational determinant(const RationalMatrix& a);

bool is_unimodular(const IntMatrix& u);

/// Throws LatticeError("singular lattice relation") for singular input.
RationalMatrix inverse(const RationalMatrix& a);

bool is_integral(const RationalMatrix& a);
/// Throws LatticeError when an entry is not an integer.
IntMatrix to_integer(const RationalMatrix& a);
RationalMatrix to_rational(const IntMatrix& a);
/// Least common multiple of all entry denominators.
BigInt denominator_lcm(const RationalMatrix& a);

BigInt floor(const Rational& q);
/// q - floor(q), in [0, 1).
Rational fractional_part(const Rational& q);

inline constexpr long long kDefaultMaxDenominator = 1000000;
inline constexpr double kDefaultReconstructTol = 1e-9;

/// Smallest-denominator continued-fraction convergent of x within tol whose
/// denominator does not exceed max_denominator. Throws LatticeError when no
/// such convergent exists.
Rational rational_reconstruct(double x,
                              long long max_denominator = kDefaultMaxDenominator,
                              double tol = kDefaultReconstructTol);

/// Entrywise rational_reconstruct of a real square matrix. Throws
/// LatticeError("lattices not rationally related") on failure.
RationalMatrix rational_reconstruct(const Eigen::MatrixXd& x,
                                    long long max_denominator = kDefaultMaxDenominator,
                                    double tol = kDefaultReconstructTol);

double to_double(const Rational& q);
Eigen::MatrixXd to_eigen(const RationalMatrix& a);
Eigen::MatrixXd to_eigen(const IntMatrix& a);

/// "p/q" or "p" for integers.
std::string to_string(const Rational& q);
/// Accepts "p/q", integers and plain decimals such as "0.25".
/// Throws std::invalid_argument on malformed text.
Rational parse_rational(std::string_view text);

template <class T>
std::string to_string(const SquareMatrix<T>& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j) out += ", ";
      if constexpr (std::is_same_v<T, Rational>)
        out += to_string(m(i, j));
      else
        out += m(i, j).str();
    }
    out += "]";
  }
  return out + "]";
}

}  // namespace lfa
