#pragma once

// Operator composition expressions.
//
//   expr   := term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := scalar '*' factor | ['-'] atom
//   atom   := IDENT | 'I' ['(' IDENT ')'] | 'pinv' '(' expr ')'
//           | 'adj' '(' expr ')' | '(' expr ')'
//   scalar := ['-'] NUMBER ['i'] | '(' ['-'] NUMBER ('+' | '-') NUMBER 'i' ')'
//
// A bare I takes its crystal from the operators it is added to or
// multiplied with.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lfa/operator.hpp"
#include "lfa/symbol.hpp"

namespace lfa {

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;
using Environment = std::map<std::string, MultiplicationOperator>;

class Expr {
 public:
  enum class Kind { Ident, Identity, Add, Sub, Mul, Neg, Scalar, Adjoint, Pinv };

  Kind kind = Kind::Ident;
  std::string name;           // Ident, or Identity with an explicit crystal
  Complex scalar{0.0, 0.0};   // Scalar
  std::vector<ExprPtr> children;
  std::size_t offset = 0;     // byte offset in the source text

  static ExprPtr ident(std::string name, std::size_t offset = 0);
  static ExprPtr identity(std::string name = {}, std::size_t offset = 0);
  static ExprPtr unary(Kind kind, ExprPtr child, std::size_t offset = 0);
  static ExprPtr binary(Kind kind, ExprPtr lhs, ExprPtr rhs, std::size_t offset = 0);
  static ExprPtr scaled(Complex c, ExprPtr child, std::size_t offset = 0);
};

/// Structural equality; offsets are ignored.
bool operator==(const Expr& a, const Expr& b);

/// Throws ExpressionError with the byte offset and the expected tokens.
ExprPtr parse(std::string_view text);

/// Fully parenthesized text that parses back to the same tree.
std::string render(const Expr& e);

/// Operator names in order of first appearance, including I(name).
std::vector<std::string> identifiers(const Expr& e);

bool contains_pinv(const Expr& e);

/// The referenced operators of env rewritten on their common lattice in
/// normal form. Throws ExpressionError for unbound names.
Environment compatible_environment(const Expr& e, const Environment& env);

/// Checks shapes and resolves every bare I. Expects a compatible
/// environment. Throws ExpressionError naming the offending node.
class TypedExpr {
 public:
  TypedExpr(ExprPtr e, Environment compatible_env);

  const Expr& expr() const { return *expr_; }
  const Environment& env() const { return env_; }
  const StructureElement& domain() const { return domain_; }
  const StructureElement& codomain() const { return codomain_; }
  /// Crystal of an identity node.
  const StructureElement& identity_se(const Expr& node) const;
  const Lattice& lattice() const { return lattice_; }

 private:
  ExprPtr expr_;
  Environment env_;
  Lattice lattice_;
  StructureElement domain_;
  StructureElement codomain_;
  std::unordered_map<const Expr*, StructureElement> identities_;

  friend class Typer;
};

CMatrix eval_symbol(const TypedExpr& t, const FracPoint& k_frac,
                    std::optional<double> rank_tol = std::nullopt);

/// Convenience form: makes env compatible and type checks first.
CMatrix eval_symbol(const Expr& e, const Environment& env, const FracPoint& k_frac,
                    std::optional<double> rank_tol = std::nullopt);

/// Evaluates a pinv-free expression in position space on the common
/// lattice. Throws ExpressionError when the expression contains pinv.
MultiplicationOperator eval_position(const Expr& e, const Environment& env);

}  // namespace lfa
