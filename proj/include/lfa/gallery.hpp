#pragma once

// Built-in operator sets for the standard worked examples.

#include <map>
#include <string>
#include <vector>

#include "lfa/expr.hpp"
#include "lfa/operator.hpp"

namespace lfa {

struct GalleryEntry {
  std::string name;
  std::string description;
  std::map<std::string, std::string> params;  // effective parameter values
  Environment operators;
  std::map<std::string, std::string> expressions;  // named analysis expressions
  std::string default_expression;                  // key into expressions
  IntMatrix default_resolution;
  std::vector<std::string> self_adjoint;  // operators expected to equal their adjoint
};

struct ExampleInfo {
  std::string name;
  std::string description;
  std::map<std::string, std::string> defaults;
};

std::vector<ExampleInfo> list_examples();

/// Builds a named example. Unknown names or parameters throw SchemaError;
/// out-of-range values throw std::invalid_argument.
GalleryEntry make_example(const std::string& name,
                          const std::map<std::string, std::string>& params = {});

/// Five-point Laplacian on A = (1/h) I with one unknown per cell.
MultiplicationOperator laplacian_5pt(double h);

/// Red-black Laplacian set: L, Sr, Sb on C = [a1 + a2, a1 - a2].
GalleryEntry laplacian_rb(double h);

/// Nearest-neighbour tight-binding Hamiltonian of graphene.
MultiplicationOperator graphene_hamiltonian();
/// L, S1..S4 (four-colour hexagon blocks) and R; expressions smoother,
/// coarse and twogrid.
GalleryEntry graphene(double omega);

/// Edge-element curl-curl operator K = K_cc + sigma_h M on A = I.
MultiplicationOperator curlcurl_operator(double sigma_h);
/// K, Khat, SE, RN, KN, SN and R; expressions smoother and twogrid.
/// ordering selects the post-smoother: "same" or "reversed".
GalleryEntry curlcurl(double sigma_h, const std::string& ordering = "same");

}  // namespace lfa
