#include "lfa/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <utility>

#include "lfa/error.hpp"

namespace lfa {

ExprPtr Expr::ident(std::string name, std::size_t offset) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Ident;
  e->name = std::move(name);
  e->offset = offset;
  return e;
}

ExprPtr Expr::identity(std::string name, std::size_t offset) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Identity;
  e->name = std::move(name);
  e->offset = offset;
  return e;
}

ExprPtr Expr::unary(Kind kind, ExprPtr child, std::size_t offset) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->children = {std::move(child)};
  e->offset = offset;
  return e;
}

ExprPtr Expr::binary(Kind kind, ExprPtr lhs, ExprPtr rhs, std::size_t offset) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->children = {std::move(lhs), std::move(rhs)};
  e->offset = offset;
  return e;
}

ExprPtr Expr::scaled(Complex c, ExprPtr child, std::size_t offset) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Scalar;
  e->scalar = c;
  e->children = {std::move(child)};
  e->offset = offset;
  return e;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.name != b.name || a.scalar != b.scalar) return false;
  if (a.children.size() != b.children.size()) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!(*a.children[i] == *b.children[i])) return false;
  return true;
}

// ---------------------------------------------------------------- parsing

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

const std::vector<std::string> kAtomStart = {"identifier", "number", "'I'",  "'pinv'",
                                             "'adj'",      "'('",    "'-'"};

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  ExprPtr run() {
    ExprPtr e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail({"'+'", "'-'", "'*'", "end of input"});
    return e;
  }

 private:
  [[noreturn]] void fail(std::vector<std::string> expected) const {
    std::string msg = "syntax error at offset " + std::to_string(pos_) + ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += expected[i];
    }
    msg += pos_ < s_.size() ? ", found '" + std::string(1, s_[pos_]) + "'" : ", found end of input";
    throw ExpressionError(msg, pos_, std::move(expected));
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail({std::string("'") + c + "'"});
  }

  std::string word() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  bool number_at(std::size_t p) const {
    if (p < s_.size() && digit(s_[p])) return true;
    return p + 1 < s_.size() && s_[p] == '.' && digit(s_[p + 1]);
  }

  // Scans an unsigned decimal at p. Returns the end position or npos.
  std::size_t scan_number(std::size_t p, double& value) const {
    if (!number_at(p)) return std::string_view::npos;
    std::size_t q = p;
    while (q < s_.size() && digit(s_[q])) ++q;
    if (q < s_.size() && s_[q] == '.') {
      ++q;
      while (q < s_.size() && digit(s_[q])) ++q;
    }
    if (q < s_.size() && (s_[q] == 'e' || s_[q] == 'E')) {
      std::size_t r = q + 1;
      if (r < s_.size() && (s_[r] == '+' || s_[r] == '-')) ++r;
      if (r < s_.size() && digit(s_[r])) {
        while (r < s_.size() && digit(s_[r])) ++r;
        q = r;
      }
    }
    value = std::strtod(std::string(s_.substr(p, q - p)).c_str(), nullptr);
    return q;
  }

  std::size_t ws_from(std::size_t p) const {
    while (p < s_.size() && std::isspace(static_cast<unsigned char>(s_[p]))) ++p;
    return p;
  }

  // ['-'] NUMBER ['i'] starting at p; returns end or npos.
  std::size_t scan_real_or_imag(std::size_t p, Complex& value) const {
    bool negative = false;
    if (p < s_.size() && s_[p] == '-') {
      negative = true;
      p = ws_from(p + 1);
    }
    double v = 0.0;
    std::size_t q = scan_number(p, v);
    if (q == std::string_view::npos) return q;
    if (negative) v = -v;
    if (q < s_.size() && s_[q] == 'i' && !(q + 1 < s_.size() && ident_char(s_[q + 1]))) {
      value = Complex(0.0, v);
      return q + 1;
    }
    value = Complex(v, 0.0);
    return q;
  }

  // '(' ['-'] NUMBER ('+'|'-') NUMBER 'i' ')' starting at p; returns end or npos.
  std::size_t scan_complex(std::size_t p, Complex& value) const {
    constexpr auto npos = std::string_view::npos;
    if (p >= s_.size() || s_[p] != '(') return npos;
    p = ws_from(p + 1);
    bool negative = false;
    if (p < s_.size() && s_[p] == '-') {
      negative = true;
      p = ws_from(p + 1);
    }
    double re = 0.0;
    p = scan_number(p, re);
    if (p == npos) return npos;
    p = ws_from(p);
    if (p >= s_.size() || (s_[p] != '+' && s_[p] != '-')) return npos;
    const double sign = s_[p] == '-' ? -1.0 : 1.0;
    p = ws_from(p + 1);
    double im = 0.0;
    p = scan_number(p, im);
    if (p == npos || p >= s_.size() || s_[p] != 'i') return npos;
    p = ws_from(p + 1);
    if (p >= s_.size() || s_[p] != ')') return npos;
    value = Complex(negative ? -re : re, sign * im);
    return p + 1;
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    while (true) {
      skip_ws();
      const std::size_t at = pos_;
      if (accept('+'))
        lhs = Expr::binary(Expr::Kind::Add, lhs, term(), at);
      else if (accept('-'))
        lhs = Expr::binary(Expr::Kind::Sub, lhs, term(), at);
      else
        return lhs;
    }
  }

  ExprPtr term() {
    ExprPtr lhs = factor();
    while (true) {
      skip_ws();
      const std::size_t at = pos_;
      if (!accept('*')) return lhs;
      lhs = Expr::binary(Expr::Kind::Mul, lhs, factor(), at);
    }
  }

  ExprPtr factor() {
    skip_ws();
    const std::size_t at = pos_;
    Complex c;
    std::size_t end = scan_complex(pos_, c);
    if (end == std::string_view::npos) end = scan_real_or_imag(pos_, c);
    if (end != std::string_view::npos) {
      pos_ = end;
      expect('*');
      return Expr::scaled(c, factor(), at);
    }
    if (accept('-')) return Expr::unary(Expr::Kind::Neg, atom(), at);
    return atom();
  }

  ExprPtr atom() {
    skip_ws();
    const std::size_t at = pos_;
    if (accept('(')) {
      ExprPtr e = expr();
      expect(')');
      return e;
    }
    if (pos_ >= s_.size() || !ident_start(s_[pos_])) fail(kAtomStart);
    const std::string w = word();
    if (w == "I") {
      const std::size_t save = pos_;
      if (accept('(')) {
        skip_ws();
        if (pos_ >= s_.size() || !ident_start(s_[pos_])) fail({"identifier"});
        const std::size_t name_at = pos_;
        std::string name = word();
        if (name == "I" || name == "pinv" || name == "adj") {
          pos_ = name_at;
          fail({"identifier"});
        }
        expect(')');
        return Expr::identity(std::move(name), at);
      }
      pos_ = save;
      return Expr::identity({}, at);
    }
    if (w == "pinv" || w == "adj") {
      expect('(');
      ExprPtr e = expr();
      expect(')');
      return Expr::unary(w == "pinv" ? Expr::Kind::Pinv : Expr::Kind::Adjoint, e, at);
    }
    return Expr::ident(w, at);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string number_text(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string scalar_text(Complex c) {
  if (c.imag() == 0.0) return number_text(c.real());
  const char sign = std::signbit(c.imag()) ? '-' : '+';
  return "(" + number_text(c.real()) + sign + number_text(std::abs(c.imag())) + "i)";
}

}  // namespace

ExprPtr parse(std::string_view text) { return Parser(text).run(); }

std::string render(const Expr& e) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::Ident:
      return e.name;
    case K::Identity:
      return e.name.empty() ? "I" : "I(" + e.name + ")";
    case K::Add:
      return "(" + render(*e.children[0]) + " + " + render(*e.children[1]) + ")";
    case K::Sub:
      return "(" + render(*e.children[0]) + " - " + render(*e.children[1]) + ")";
    case K::Mul:
      return "(" + render(*e.children[0]) + " * " + render(*e.children[1]) + ")";
    case K::Neg:
      return "(-" + render(*e.children[0]) + ")";
    case K::Scalar:
      return "(" + scalar_text(e.scalar) + " * " + render(*e.children[0]) + ")";
    case K::Adjoint:
      return "adj(" + render(*e.children[0]) + ")";
    case K::Pinv:
      return "pinv(" + render(*e.children[0]) + ")";
  }
  return {};
}

std::vector<std::string> identifiers(const Expr& e) {
  std::vector<std::string> out;
  std::function<void(const Expr&)> walk = [&](const Expr& n) {
    if ((n.kind == Expr::Kind::Ident || n.kind == Expr::Kind::Identity) && !n.name.empty()) {
      if (std::find(out.begin(), out.end(), n.name) == out.end()) out.push_back(n.name);
    }
    for (const auto& c : n.children) walk(*c);
  };
  walk(e);
  return out;
}

bool contains_pinv(const Expr& e) {
  if (e.kind == Expr::Kind::Pinv) return true;
  for (const auto& c : e.children)
    if (contains_pinv(*c)) return true;
  return false;
}

Environment compatible_environment(const Expr& e, const Environment& env) {
  const std::vector<std::string> names = identifiers(e);
  std::vector<MultiplicationOperator> ops;
  for (const auto& name : names) {
    auto it = env.find(name);
    if (it == env.end()) throw ExpressionError("unbound identifier '" + name + "'");
    ops.push_back(it->second);
  }
  std::vector<MultiplicationOperator> compat = make_compatible(ops);
  Environment out;
  for (std::size_t i = 0; i < names.size(); ++i) out.emplace(names[i], std::move(compat[i]));
  return out;
}

// ---------------------------------------------------------------- typing

namespace {

struct Type {
  StructureElement codomain;
  StructureElement domain;
};

}  // namespace

class Typer {
 public:
  explicit Typer(TypedExpr& t) : t_(t) {}

  std::optional<Type> infer(const Expr& e) {
    using K = Expr::Kind;
    switch (e.kind) {
      case K::Ident: {
        const auto& op = lookup(e);
        return Type{op.codomain_se(), op.domain_se()};
      }
      case K::Identity: {
        if (e.name.empty()) return std::nullopt;
        const auto& op = lookup(e);
        t_.identities_[&e] = op.codomain_se();
        return Type{op.codomain_se(), op.codomain_se()};
      }
      case K::Neg:
      case K::Scalar:
        return infer(*e.children[0]);
      case K::Adjoint:
      case K::Pinv: {
        auto c = infer(*e.children[0]);
        if (!c) return c;
        return Type{c->domain, c->codomain};
      }
      case K::Add:
      case K::Sub: {
        auto a = infer(*e.children[0]);
        auto b = infer(*e.children[1]);
        if (a && b) {
          if (a->codomain != b->codomain || a->domain != b->domain)
            mismatch(e, "operands of a sum map between different crystals");
          return a;
        }
        if (!a && !b) return std::nullopt;
        const Type& known = a ? *a : *b;
        check(*e.children[a ? 1 : 0], known, e);
        return known;
      }
      case K::Mul: {
        auto a = infer(*e.children[0]);
        auto b = infer(*e.children[1]);
        if (a && b) {
          if (a->domain != b->codomain)
            mismatch(e, "domain of the left factor differs from codomain of the right factor");
          return Type{a->codomain, b->domain};
        }
        if (a) {
          check(*e.children[1], Type{a->domain, a->domain}, e);
          return a;
        }
        if (b) {
          check(*e.children[0], Type{b->codomain, b->codomain}, e);
          return b;
        }
        return std::nullopt;
      }
    }
    return std::nullopt;
  }

  // Pushes a type into a subtree built only from bare identities.
  void check(const Expr& e, const Type& ty, const Expr& context) {
    using K = Expr::Kind;
    if (ty.codomain != ty.domain) mismatch(context, "identity used with a non-square operator");
    switch (e.kind) {
      case K::Identity:
        t_.identities_[&e] = ty.codomain;
        return;
      case K::Neg:
      case K::Scalar:
      case K::Adjoint:
      case K::Pinv:
        check(*e.children[0], ty, context);
        return;
      case K::Add:
      case K::Sub:
      case K::Mul:
        check(*e.children[0], ty, context);
        check(*e.children[1], ty, context);
        return;
      case K::Ident:
        return;
    }
  }

  [[noreturn]] static void mismatch(const Expr& e, const std::string& why) {
    throw ExpressionError("shape mismatch in '" + render(e) + "' at offset " +
                          std::to_string(e.offset) + ": " + why);
  }

 private:
  const MultiplicationOperator& lookup(const Expr& e) {
    auto it = t_.env_.find(e.name);
    if (it == t_.env_.end())
      throw ExpressionError("unbound identifier '" + e.name + "' at offset " +
                            std::to_string(e.offset));
    return it->second;
  }

  TypedExpr& t_;
};

TypedExpr::TypedExpr(ExprPtr e, Environment compatible_env)
    : expr_(std::move(e)), env_(std::move(compatible_env)) {
  if (!env_.empty()) lattice_ = env_.begin()->second.lattice();
  for (const auto& [name, op] : env_)
    if (op.lattice().basis() != lattice_.basis())
      throw IncompatibleError("operator '" + name + "' is not on the common lattice");
  Typer typer(*this);
  auto ty = typer.infer(*expr_);
  if (!ty) throw ExpressionError("ambiguous identity: write I(name) to fix its crystal");
  codomain_ = ty->codomain;
  domain_ = ty->domain;
}

const StructureElement& TypedExpr::identity_se(const Expr& node) const {
  auto it = identities_.find(&node);
  if (it == identities_.end()) throw ExpressionError("identity has no resolved crystal");
  return it->second;
}

// ---------------------------------------------------------------- evaluation

namespace {

// Upper bound for the spectral norm of the symbol of e over all k, or nullopt
// below a pinv. Sum of multiplier Frobenius norms for an operator.
std::optional<double> symbol_norm_bound(const Expr& e, const Environment& env) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::Ident: {
      double b = 0;
      for (const auto& [y, m] : env.at(e.name).multipliers()) b += m.norm();
      return b;
    }
    case K::Identity:
      return 1.0;
    case K::Add:
    case K::Sub:
    case K::Mul: {
      const auto a = symbol_norm_bound(*e.children[0], env);
      const auto b = symbol_norm_bound(*e.children[1], env);
      if (!a || !b) return std::nullopt;
      return e.kind == K::Mul ? *a * *b : *a + *b;
    }
    case K::Neg:
    case K::Adjoint:
      return symbol_norm_bound(*e.children[0], env);
    case K::Scalar: {
      const auto a = symbol_norm_bound(*e.children[0], env);
      if (!a) return a;
      return std::abs(e.scalar) * *a;
    }
    case K::Pinv:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

CMatrix eval_symbol(const TypedExpr& t, const FracPoint& k_frac, std::optional<double> rank_tol) {
  std::map<std::string, CMatrix> cache;
  std::function<CMatrix(const Expr&)> eval = [&](const Expr& e) -> CMatrix {
    using K = Expr::Kind;
    switch (e.kind) {
      case K::Ident: {
        auto it = cache.find(e.name);
        if (it == cache.end())
          it = cache.emplace(e.name, symbol_at(t.env().at(e.name), k_frac)).first;
        return it->second;
      }
      case K::Identity: {
        const auto m = static_cast<Eigen::Index>(t.identity_se(e).size());
        return CMatrix::Identity(m, m);
      }
      case K::Add:
        return eval(*e.children[0]) + eval(*e.children[1]);
      case K::Sub:
        return eval(*e.children[0]) - eval(*e.children[1]);
      case K::Mul:
        return eval(*e.children[0]) * eval(*e.children[1]);
      case K::Neg:
        return -eval(*e.children[0]);
      case K::Scalar:
        return e.scalar * eval(*e.children[0]);
      case K::Adjoint:
        return eval(*e.children[0]).adjoint();
      case K::Pinv: {
        const CMatrix c = eval(*e.children[0]);
        if (rank_tol) return symbol_pinv(c, rank_tol);
        // Cut off relative to the largest the symbol gets over the torus, so a
        // block that vanishes at some k (up to rounding) has pinv zero there.
        const auto bound = symbol_norm_bound(*e.children[0], t.env());
        if (!bound) return symbol_pinv(c);
        return symbol_pinv(c, static_cast<double>(std::max(c.rows(), c.cols())) *
                                  std::numeric_limits<double>::epsilon() * *bound);
      }
    }
    return {};
  };
  return eval(t.expr());
}

CMatrix eval_symbol(const Expr& e, const Environment& env, const FracPoint& k_frac,
                    std::optional<double> rank_tol) {
  auto copy = std::make_shared<Expr>(e);
  TypedExpr t(copy, compatible_environment(e, env));
  return eval_symbol(t, k_frac, rank_tol);
}

MultiplicationOperator eval_position(const Expr& e, const Environment& env) {
  if (contains_pinv(e)) throw ExpressionError("pseudo-inverse not available in position space");
  auto copy = std::make_shared<Expr>(e);
  TypedExpr t(copy, compatible_environment(e, env));

  std::function<MultiplicationOperator(const Expr&)> eval =
      [&](const Expr& n) -> MultiplicationOperator {
    using K = Expr::Kind;
    switch (n.kind) {
      case K::Ident:
        return t.env().at(n.name);
      case K::Identity:
        return MultiplicationOperator::identity(t.lattice(), t.identity_se(n));
      case K::Add:
        return add(eval(*n.children[0]), eval(*n.children[1]));
      case K::Sub:
        return subtract(eval(*n.children[0]), eval(*n.children[1]));
      case K::Mul:
        return mul(eval(*n.children[0]), eval(*n.children[1]));
      case K::Neg:
        return scale(-1.0, eval(*n.children[0]));
      case K::Scalar:
        return scale(n.scalar, eval(*n.children[0]));
      case K::Adjoint:
        return adjoint(eval(*n.children[0]));
      case K::Pinv:
        break;
    }
    throw ExpressionError("pseudo-inverse not available in position space");
  };
  return eval(t.expr());
}

}  // namespace lfa
