#pragma once

// Operator files, resolution parsing and spectrum serialization.
//
// Operator file layout:
//   {
//     "dim": 2,
//     "operators": {
//       "L": {
//         "lattice": [[1, 0], [0, 1]],          row-major, columns are a_i
//         "domain_se": [["1/2", "0"], ...],     exact fractions as strings
//         "codomain_se": [["1/2", "0"], ...],
//         "multipliers": [{"offset": [0, 0], "matrix": [[[re, im], ...], ...]}],
//         "hermitian": true                     optional claim, checked by verify
//       }
//     },
//     "expr": "L",
//     "resolution": 8                           or an integer matrix
//   }

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lfa/expr.hpp"
#include "lfa/symbol.hpp"

namespace lfa {

struct OperatorFile {
  std::size_t dim = 0;
  Environment operators;
  std::vector<std::string> self_adjoint;
  std::string expr;
  std::optional<IntMatrix> resolution;
};

/// Throws SchemaError on any structural problem.
OperatorFile parse_operator_file(const nlohmann::json& j);
OperatorFile load_operator_file(const std::string& path);

nlohmann::json operator_to_json(const MultiplicationOperator& op, bool hermitian = false);
nlohmann::json operator_file_to_json(const OperatorFile& file);

/// "N" for N * identity, or a JSON integer matrix such as "[[2,3],[2,-2]]".
IntMatrix parse_resolution(const std::string& text, std::size_t dim);
IntMatrix resolution_from_json(const nlohmann::json& j, std::size_t dim);

void write_spectrum_csv(std::ostream& out, const SpectrumResult& r);
nlohmann::json spectrum_to_json(const SpectrumResult& r);

/// Gnuplot script plotting |lambda| over k_phys from a CSV file.
std::string gnuplot_script(const std::string& csv_path, std::size_t dim);

/// Multiplier tables, one offset per block, for human inspection.
std::string describe_operator(const std::string& name, const MultiplicationOperator& op);

}  // namespace lfa
