#include <doctest.h>

#include <functional>

#include <Eigen/SVD>

#include "lfa/error.hpp"
#include "lfa/expr.hpp"
#include "lfa/gallery.hpp"
#include "lfa/symbol.hpp"
#include "support.hpp"

using namespace lfa;
using K = Expr::Kind;

namespace {

ExprPtr random_expr(int depth) {
  static const std::vector<std::string> names = {"A", "B", "Sr", "L_2", "x"};
  const int pick = depth <= 0 ? testing::uniform_int(0, 2) : testing::uniform_int(0, 9);
  switch (pick) {
    case 0:
    case 1:
      return Expr::ident(names[static_cast<std::size_t>(testing::uniform_int(0, 4))]);
    case 2:
      return testing::uniform_int(0, 1) ? Expr::identity() : Expr::identity("B");
    case 3:
      return Expr::binary(K::Add, random_expr(depth - 1), random_expr(depth - 1));
    case 4:
      return Expr::binary(K::Sub, random_expr(depth - 1), random_expr(depth - 1));
    case 5:
    case 6:
      return Expr::binary(K::Mul, random_expr(depth - 1), random_expr(depth - 1));
    case 7:
      return Expr::unary(testing::uniform_int(0, 1) ? K::Pinv : K::Adjoint, random_expr(depth - 1));
    case 8:
      return Expr::unary(K::Neg, random_expr(depth - 1));
    default: {
      const Complex c(testing::uniform_real(-3, 3), testing::uniform_int(0, 1) ? testing::uniform_real(-3, 3) : 0.0);
      return Expr::scaled(c, random_expr(depth - 1));
    }
  }
}

}  // namespace

TEST_CASE("parse simple forms") {
  CHECK(*parse("L") == *Expr::ident("L"));
  CHECK(*parse("  L  ") == *Expr::ident("L"));
  CHECK(*parse("I") == *Expr::identity());
  CHECK(*parse("I(L)") == *Expr::identity("L"));
  CHECK(*parse("adj(R)") == *Expr::unary(K::Adjoint, Expr::ident("R")));
  CHECK(*parse("-L") == *Expr::unary(K::Neg, Expr::ident("L")));
  CHECK(*parse("0.5*L") == *Expr::scaled(0.5, Expr::ident("L")));
  CHECK(*parse("-2*L") == *Expr::scaled(-2.0, Expr::ident("L")));
  CHECK(*parse("3i*L") == *Expr::scaled(Complex(0, 3), Expr::ident("L")));
  CHECK(*parse("(1-2.5i)*L") == *Expr::scaled(Complex(1, -2.5), Expr::ident("L")));
  CHECK(*parse("1e-3*L") == *Expr::scaled(1e-3, Expr::ident("L")));
}

TEST_CASE("precedence and associativity") {
  const auto a = Expr::ident("A"), b = Expr::ident("B"), c = Expr::ident("C");
  CHECK(*parse("A+B*C") == *Expr::binary(K::Add, a, Expr::binary(K::Mul, b, c)));
  CHECK(*parse("A-B-C") == *Expr::binary(K::Sub, Expr::binary(K::Sub, a, b), c));
  CHECK(*parse("A*B*C") == *Expr::binary(K::Mul, Expr::binary(K::Mul, a, b), c));
  CHECK(*parse("(A+B)*C") == *Expr::binary(K::Mul, Expr::binary(K::Add, a, b), c));
  CHECK(*parse("2*A*B") == *Expr::binary(K::Mul, Expr::scaled(2.0, a), b));
}

TEST_CASE("red-black propagator") {
  const auto side = [](const char* s) {
    return Expr::binary(K::Sub, Expr::identity(),
                        Expr::binary(K::Mul, Expr::unary(K::Pinv, Expr::ident(s)), Expr::ident("L")));
  };
  CHECK(*parse("(I - pinv(Sb)*L)*(I - pinv(Sr)*L)") == *Expr::binary(K::Mul, side("Sb"), side("Sr")));
}

TEST_CASE("syntax errors carry offsets") {
  auto offset_of = [](const char* text) -> std::size_t {
    try {
      parse(text);
    } catch (const ExpressionError& e) {
      return e.offset();
    }
    return std::string::npos;
  };
  CHECK(offset_of("(I -") == 4);
  CHECK(offset_of("") == 0);
  CHECK(offset_of("A +* B") == 3);
  CHECK(offset_of("pinv L") == 5);
  CHECK(offset_of("A B") == 2);
  CHECK(offset_of("2 A") == 2);
  CHECK(offset_of("A $") == 2);
  try {
    parse("(I -");
  } catch (const ExpressionError& e) {
    CHECK_FALSE(e.expected().empty());
  }
}

TEST_CASE("round trip through render") {
  const std::vector<std::string> fixed = {
      "(I - pinv(Sb)*L)*(I - pinv(Sr)*L)", "I - 0.25*L", "-(A)", "(2+3i)*adj(R)*R",
      "I(L) + -0.1*pinv(adj(L)*L)", "1e-300*A", "0.1*A"};
  for (const auto& t : fixed) {
    const auto e = parse(t);
    CHECK(*parse(render(*e)) == *e);
  }
  for (int i = 0; i < 50; ++i) {
    const auto e = random_expr(4);
    INFO(render(*e));
    CHECK(*parse(render(*e)) == *e);
  }
}

TEST_CASE("identifiers and pinv detection") {
  const auto e = parse("adj(R)*pinv(R*L*adj(R))*R*I(Q)");
  CHECK(identifiers(*e) == std::vector<std::string>{"R", "L", "Q"});
  CHECK(contains_pinv(*e));
  CHECK_FALSE(contains_pinv(*parse("R*L")));
}

TEST_CASE("typing errors") {
  const auto g = graphene(0.5);
  CHECK_THROWS_AS(compatible_environment(*parse("X*L"), g.operators), ExpressionError);
  CHECK_THROWS_AS(eval_symbol(*parse("L*R"), g.operators, FracPoint{0, 0}), ExpressionError);
  CHECK_THROWS_AS(eval_symbol(*parse("L+R"), g.operators, FracPoint{0, 0}), ExpressionError);
  CHECK_THROWS_AS(eval_symbol(*parse("I"), g.operators, FracPoint{0, 0}), ExpressionError);
  CHECK_THROWS_AS(eval_symbol(*parse("I*I"), g.operators, FracPoint{0, 0}), ExpressionError);
  CHECK_NOTHROW(eval_symbol(*parse("I(L)"), g.operators, FracPoint{0, 0}));
  CHECK_NOTHROW(eval_symbol(*parse("R*(I - L)"), g.operators, FracPoint{0, 0}));
  try {
    eval_symbol(*parse("L + R"), g.operators, FracPoint{0, 0});
  } catch (const ExpressionError& e) {
    CHECK(std::string(e.what()).find("(L + R)") != std::string::npos);
  }
}

TEST_CASE("symbol evaluation") {
  const auto l = graphene_hamiltonian();
  const Environment env{{"L", l}};
  for (int trial = 0; trial < 20; ++trial) {
    const FracPoint k = testing::random_frac_point(2, 97);
    CHECK(testing::max_abs(eval_symbol(*parse("L"), env, k) - symbol_at(l, k)) == 0);
    CHECK(testing::max_abs(eval_symbol(*parse("adj(L)"), env, k) - symbol_at(l, k).adjoint()) == 0);
    const CMatrix s = symbol_at(l, k);
    CHECK(testing::max_abs(eval_symbol(*parse("I - (0.5+1i)*pinv(L)*L"), env, k) -
                           (CMatrix::Identity(2, 2) - Complex(0.5, 1) * symbol_pinv(s) * s)) < 1e-12);
  }
}

TEST_CASE("position-space evaluation") {
  const auto g = graphene(0.5);
  const auto& r = g.operators.at("R");
  const auto p = eval_position(*parse("adj(R)"), g.operators);
  CHECK(identical(p, normalize(adjoint(r))));

  const auto lc = eval_position(*parse("R*L*adj(R)"), g.operators);
  const Environment common = compatible_environment(*parse("R*L"), g.operators);
  for (int trial = 0; trial < 20; ++trial) {
    const FracPoint k = testing::random_frac_point(2, 97);
    const CMatrix rk = symbol_at(common.at("R"), k);
    CHECK(testing::max_abs(symbol_at(lc, k) - rk * symbol_at(common.at("L"), k) * rk.adjoint()) < 1e-12);
    // Galerkin coarse operator of a self-adjoint operator is self-adjoint
    const CMatrix lck = symbol_at(lc, k);
    CHECK(testing::max_abs(lck - lck.adjoint()) < 1e-12);
  }
  CHECK_THROWS_AS(eval_position(*parse("pinv(L)"), g.operators), ExpressionError);
}

TEST_CASE("property: position and symbol evaluation agree") {
  const auto c = curlcurl(0.01);
  const auto g = graphene(0.5);
  const std::vector<std::pair<const GalleryEntry*, std::string>> cases = {
      {&c, "K - 2*SE*adj(SE) + (0.5-1i)*adj(RN)*RN"},
      {&c, "R*K*adj(R)"},
      {&c, "(I - adj(RN)*RN*K)*(I - SE)"},
      {&g, "R*(L - 0.5*S1*S2)*adj(R) + I"},
      {&g, "-L*L*S3 + adj(S4)"}};
  for (const auto& [entry, text] : cases) {
    INFO(text);
    const auto e = parse(text);
    const auto op = eval_position(*e, entry->operators);
    for (int trial = 0; trial < 20; ++trial) {
      const FracPoint k = testing::random_frac_point(2, 97);
      CHECK(testing::max_abs(symbol_at(op, k) - eval_symbol(*e, entry->operators, k)) < 1e-12);
    }
  }
}

TEST_CASE("graphene coarse correction near the Dirac point") {
  const auto g = graphene(0.5);
  const Environment common = compatible_environment(*parse("R*L"), g.operators);
  // the Dirac point (1/3, 2/3) of A in coordinates of 2A
  const FracPoint k{Rational(2, 3), Rational(1, 3)};
  const CMatrix lk = symbol_at(common.at("L"), k);
  const CMatrix ek = eval_symbol(*parse(g.expressions.at("coarse")), g.operators, k);

  Eigen::JacobiSVD<CMatrix> svd(lk, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  CHECK(sv(sv.size() - 1) < 1e-10);
  const Eigen::VectorXcd v = svd.matrixV().col(sv.size() - 1);
  // a kernel mode of L is left untouched by the coarse correction
  CHECK((ek * v - v).norm() < 1e-8);
  // while away from the Dirac points the range of the prolongation is removed
  const FracPoint generic{Rational(1, 7), Rational(2, 5)};
  CHECK(testing::max_abs(eval_symbol(*parse(g.expressions.at("coarse") + "*adj(R)"), g.operators, generic)) < 1e-8);

  const auto tg = compute_spectrum(*parse(g.expressions.at("twogrid")), g.operators, IntMatrix{{3, 0}, {0, 3}});
  const CMatrix m = eval_symbol(*parse(g.expressions.at("twogrid")), g.operators, k);
  double rho = 0;
  for (const auto& z : eigenvalues(m)) rho = std::max(rho, std::abs(z));
  CHECK(rho <= tg.rho_max + 1e-12);
}
