#include "lfa/intlat.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "lfa/error.hpp"

namespace lfa {

namespace {

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  BigInt r = a - q * b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

void swap_columns(IntMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t i = 0; i < m.size(); ++i) std::swap(m(i, a), m(i, b));
}

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  for (std::size_t j = 0; j < m.size(); ++j) std::swap(m(a, j), m(b, j));
}

// col_dst -= q * col_src
void sub_column(IntMatrix& m, std::size_t dst, std::size_t src, const BigInt& q) {
  for (std::size_t i = 0; i < m.size(); ++i) m(i, dst) -= q * m(i, src);
}

// row_dst -= q * row_src
void sub_row(IntMatrix& m, std::size_t dst, std::size_t src, const BigInt& q) {
  for (std::size_t j = 0; j < m.size(); ++j) m(dst, j) -= q * m(src, j);
}

Rational exact_rational(double x) {
  if (!std::isfinite(x)) throw LatticeError("non-finite value in lattice relation");
  int exp = 0;
  double mant = std::frexp(x, &exp);
  // x = mant * 2^exp, |mant| in [0.5, 1): scale mantissa to a 53-bit integer.
  auto m = static_cast<long long>(std::ldexp(mant, 53));
  exp -= 53;
  BigInt num(m);
  BigInt den(1);
  if (exp >= 0)
    num <<= exp;
  else
    den <<= -exp;
  return Rational(num, den);
}

}  // namespace

HnfResult<BigInt> hnf(const IntMatrix& a) {
  const std::size_t n = a.size();
  IntMatrix h = a;
  IntMatrix u = IntMatrix::identity(n);

  // Bottom row first: column Euclid leaves a single nonzero at (i, i).
  for (std::size_t ii = n; ii-- > 0;) {
    while (true) {
      std::size_t pivot = n;
      for (std::size_t j = 0; j <= ii; ++j) {
        if (h(ii, j) == 0) continue;
        if (pivot == n || abs(h(ii, j)) < abs(h(ii, pivot))) pivot = j;
      }
      if (pivot == n) throw LatticeError("singular lattice relation");
      if (pivot != ii) {
        swap_columns(h, pivot, ii);
        swap_columns(u, pivot, ii);
      }
      bool clear = true;
      for (std::size_t j = 0; j < ii; ++j) {
        if (h(ii, j) == 0) continue;
        BigInt q = floor_div(h(ii, j), h(ii, ii));
        sub_column(h, j, ii, q);
        sub_column(u, j, ii, q);
        if (h(ii, j) != 0) clear = false;
      }
      if (clear) break;
    }
    if (h(ii, ii) < 0) {
      for (std::size_t i = 0; i < n; ++i) {
        h(i, ii) = -h(i, ii);
        u(i, ii) = -u(i, ii);
      }
    }
  }

  // Reduce entries right of the diagonal into [0, h_ii), bottom row first so
  // that finished rows are not touched again.
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t j = ii + 1; j < n; ++j) {
      BigInt q = floor_div(h(ii, j), h(ii, ii));
      if (q == 0) continue;
      sub_column(h, j, ii, q);
      sub_column(u, j, ii, q);
    }
  }
  return {std::move(h), std::move(u)};
}

HnfResult<Rational> hnf(const RationalMatrix& a) {
  const BigInt d = denominator_lcm(a);
  RationalMatrix scaled = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) scaled(i, j) *= Rational(d);
  auto [h, u] = hnf(to_integer(scaled));
  RationalMatrix hr = to_rational(h);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) hr(i, j) /= Rational(d);
  return {std::move(hr), std::move(u)};
}

SnfResult<BigInt> snf(const IntMatrix& a) {
  const std::size_t n = a.size();
  IntMatrix s = a;
  IntMatrix u = IntMatrix::identity(n);
  IntMatrix v = IntMatrix::identity(n);

  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      std::size_t pi = n, pj = n;
      for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (s(i, j) == 0) continue;
          if (pi == n || abs(s(i, j)) < abs(s(pi, pj))) {
            pi = i;
            pj = j;
          }
        }
      if (pi == n) break;  // remaining block is zero
      if (pi != t) {
        swap_rows(s, pi, t);
        swap_rows(v, pi, t);
      }
      if (pj != t) {
        swap_columns(s, pj, t);
        swap_columns(u, pj, t);
      }

      bool clear = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        if (s(i, t) == 0) continue;
        BigInt q = s(i, t) / s(t, t);
        sub_row(s, i, t, q);
        sub_row(v, i, t, q);
        if (s(i, t) != 0) clear = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (s(t, j) == 0) continue;
        BigInt q = s(t, j) / s(t, t);
        sub_column(s, j, t, q);
        sub_column(u, j, t, q);
        if (s(t, j) != 0) clear = false;
      }
      if (!clear) continue;

      // The pivot must divide the whole remaining block; otherwise pull an
      // offending row in and reduce again.
      std::size_t bad = n;
      for (std::size_t i = t + 1; i < n && bad == n; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (s(i, j) % s(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == n) break;
      sub_row(s, t, bad, BigInt(-1));
      sub_row(v, t, bad, BigInt(-1));
    }
    if (s(t, t) < 0) {
      for (std::size_t j = 0; j < n; ++j) {
        s(t, j) = -s(t, j);
        v(t, j) = -v(t, j);
      }
    }
  }
  return {std::move(s), std::move(u), std::move(v)};
}

SnfResult<Rational> snf(const RationalMatrix& a) {
  const BigInt d = denominator_lcm(a);
  RationalMatrix scaled = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) scaled(i, j) *= Rational(d);
  auto [s, u, v] = snf(to_integer(scaled));
  RationalMatrix sr = to_rational(s);
  for (std::size_t i = 0; i < a.size(); ++i) sr(i, i) /= Rational(d);
  return {std::move(sr), std::move(u), std::move(v)};
}

BigInt determinant(const IntMatrix& a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  IntMatrix m = a;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      swap_rows(m, k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

Rational determinant(const RationalMatrix& a) {
  const std::size_t n = a.size();
  RationalMatrix m = a;
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(k, j));
      det = -det;
    }
    det *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m(i, k) == 0) continue;
      Rational f = m(i, k) / m(k, k);
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

bool is_unimodular(const IntMatrix& u) {
  return abs(determinant(u)) == 1;
}

RationalMatrix inverse(const RationalMatrix& a) {
  const std::size_t n = a.size();
  RationalMatrix m = a;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) throw LatticeError("singular lattice relation");
    if (p != k)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(p, j), m(k, j));
        std::swap(inv(p, j), inv(k, j));
      }
    const Rational pivot = m(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      m(k, j) /= pivot;
      inv(k, j) /= pivot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || m(i, k) == 0) continue;
      const Rational f = m(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

bool is_integral(const RationalMatrix& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (denominator(a(i, j)) != 1) return false;
  return true;
}

IntMatrix to_integer(const RationalMatrix& a) {
  IntMatrix out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (denominator(a(i, j)) != 1)
        throw LatticeError("lattice relation is not integral");
      out(i, j) = numerator(a(i, j));
    }
  return out;
}

RationalMatrix to_rational(const IntMatrix& a) {
  RationalMatrix out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) out(i, j) = Rational(a(i, j));
  return out;
}

BigInt denominator_lcm(const RationalMatrix& a) {
  BigInt d = 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) d = boost::multiprecision::lcm(d, denominator(a(i, j)));
  return d;
}

BigInt floor(const Rational& q) {
  return floor_div(numerator(q), denominator(q));
}

Rational fractional_part(const Rational& q) { return q - Rational(floor(q)); }

Rational rational_reconstruct(double x, long long max_denominator, double tol) {
  if (max_denominator < 1 || !(tol > 0))
    throw std::invalid_argument("rational_reconstruct: need max_denominator >= 1 and tol > 0");
  const Rational exact = exact_rational(x);
  BigInt p = numerator(exact);
  BigInt q = denominator(exact);
  BigInt h1 = 1, h2 = 0, k1 = 0, k2 = 1;
  while (q != 0) {
    BigInt a = floor_div(p, q);
    BigInt h = a * h1 + h2;
    BigInt k = a * k1 + k2;
    if (k > max_denominator) break;
    Rational approx(h, k);
    if (std::abs(to_double(approx - exact)) <= tol) return approx;
    BigInt r = p - a * q;
    p = q;
    q = r;
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
  }
  throw LatticeError("lattices not rationally related");
}

RationalMatrix rational_reconstruct(const Eigen::MatrixXd& x, long long max_denominator,
                                    double tol) {
  if (x.rows() != x.cols()) throw std::invalid_argument("rational_reconstruct: matrix not square");
  RationalMatrix out(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      out(i, j) = rational_reconstruct(x(i, j), max_denominator, tol);
  return out;
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

Eigen::MatrixXd to_eigen(const RationalMatrix& a) {
  const auto n = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = to_double(a(i, j));
  return out;
}

Eigen::MatrixXd to_eigen(const IntMatrix& a) {
  const auto n = static_cast<Eigen::Index>(a.size());
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = a(i, j).convert_to<double>();
  return out;
}

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

Rational parse_rational(std::string_view text) {
  auto fail = [&] {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  };
  auto parse_int = [&](std::string_view s) -> BigInt {
    if (s.empty()) fail();
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) fail();
    for (std::size_t k = i; k < s.size(); ++k)
      if (s[k] < '0' || s[k] > '9') fail();
    BigInt v(std::string(s.substr(i)));
    return s[0] == '-' ? BigInt(-v) : v;
  };

  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt den = parse_int(text.substr(slash + 1));
    if (den == 0) fail();
    return Rational(parse_int(text.substr(0, slash)), den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view frac = text.substr(dot + 1);
    std::string_view whole = text.substr(0, dot);
    bool negative = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole = "0";
    if (frac.empty()) fail();
    BigInt w = parse_int(whole);
    BigInt f = parse_int(frac);
    if (frac[0] == '-' || frac[0] == '+') fail();
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
    Rational r = Rational(abs(w)) + Rational(f, scale);
    return negative ? Rational(-r) : r;
  }
  return Rational(parse_int(text));
}

}  // namespace lfa
