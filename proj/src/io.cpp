#include "lfa/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "lfa/error.hpp"

namespace lfa {

using nlohmann::json;

namespace {

[[noreturn]] void schema(const std::string& where, const std::string& what) {
  throw SchemaError(where + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) schema(where, std::string("missing '") + key + "'");
  return obj.at(key);
}

double number_of(const json& v, const std::string& where) {
  if (!v.is_number()) schema(where, "expected a number");
  return v.get<double>();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_fmt(Complex z) {
  char buf[96];
  if (z.imag() == 0.0)
    std::snprintf(buf, sizeof buf, "%.10g", z.real() == 0.0 ? 0.0 : z.real());
  else
    std::snprintf(buf, sizeof buf, "%.10g%+.10gi", z.real(), z.imag());
  return buf;
}

StructureElement se_from_json(const json& j, std::size_t dim, const std::string& where) {
  if (!j.is_array() || j.empty()) schema(where, "expected a nonempty list of points");
  StructureElement se;
  for (const json& p : j) {
    if (!p.is_array() || p.size() != dim) schema(where, "point has wrong dimension");
    FracPoint point;
    for (const json& c : p) {
      try {
        if (c.is_string())
          point.push_back(parse_rational(c.get<std::string>()));
        else if (c.is_number_integer())
          point.push_back(Rational(c.get<long long>()));
        else
          schema(where, "coordinates must be fraction strings or integers");
      } catch (const std::invalid_argument& e) {
        schema(where, e.what());
      }
    }
    se.push_back(std::move(point));
  }
  return se;
}

json se_to_json(const StructureElement& se) {
  json out = json::array();
  for (const FracPoint& p : se) {
    json point = json::array();
    for (const Rational& c : p) point.push_back(to_string(c));
    out.push_back(point);
  }
  return out;
}

CMatrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols,
                         const std::string& where) {
  if (!j.is_array() || j.size() != rows) schema(where, "matrix has wrong number of rows");
  CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = j[r];
    if (!row.is_array() || row.size() != cols) schema(where, "matrix has wrong number of columns");
    for (std::size_t c = 0; c < cols; ++c) {
      const json& v = row[c];
      Complex z;
      if (v.is_number())
        z = Complex(v.get<double>(), 0.0);
      else if (v.is_array() && v.size() == 2)
        z = Complex(number_of(v[0], where), number_of(v[1], where));
      else
        schema(where, "entries must be numbers or [re, im] pairs");
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = z;
    }
  }
  return m;
}

}  // namespace

OperatorFile parse_operator_file(const json& j) {
  OperatorFile file;
  const json& dim = field(j, "dim", "file");
  if (!dim.is_number_integer() || dim.get<long long>() < 1) schema("dim", "expected a positive integer");
  file.dim = static_cast<std::size_t>(dim.get<long long>());
  const std::size_t n = file.dim;

  const json& ops = field(j, "operators", "file");
  if (!ops.is_object() || ops.empty()) schema("operators", "expected a nonempty object");
  for (const auto& [name, desc] : ops.items()) {
    const std::string where = "operator '" + name + "'";
    const json& lat = field(desc, "lattice", where);
    if (!lat.is_array() || lat.size() != n) schema(where, "lattice must be a dim x dim matrix");
    Eigen::MatrixXd basis(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < n; ++r) {
      if (!lat[r].is_array() || lat[r].size() != n) schema(where, "lattice must be a dim x dim matrix");
      for (std::size_t c = 0; c < n; ++c)
        basis(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = number_of(lat[r][c], where);
    }
    Lattice lattice;
    try {
      lattice = Lattice(basis);
    } catch (const LatticeError& e) {
      schema(where, e.what());
    }
    StructureElement dom = se_from_json(field(desc, "domain_se", where), n, where);
    StructureElement cod = se_from_json(field(desc, "codomain_se", where), n, where);
    MultiplicationOperator op(lattice, dom, cod);

    const json& mults = field(desc, "multipliers", where);
    if (!mults.is_array()) schema(where, "multipliers must be a list");
    for (const json& entry : mults) {
      const json& off = field(entry, "offset", where);
      if (!off.is_array() || off.size() != n) schema(where, "offset has wrong dimension");
      IntVector y;
      for (const json& c : off) {
        if (!c.is_number_integer()) schema(where, "offsets must be integers");
        y.push_back(c.get<std::int64_t>());
      }
      if (op.multipliers().count(y)) schema(where, "duplicate offset");
      op.set(y, matrix_from_json(field(entry, "matrix", where), cod.size(), dom.size(), where));
    }
    if (desc.contains("hermitian")) {
      if (!desc["hermitian"].is_boolean()) schema(where, "hermitian must be a boolean");
      if (desc["hermitian"].get<bool>()) file.self_adjoint.push_back(name);
    }
    file.operators.emplace(name, std::move(op));
  }

  if (j.contains("expr")) {
    if (!j["expr"].is_string()) schema("expr", "expected a string");
    file.expr = j["expr"].get<std::string>();
  }
  if (j.contains("resolution")) file.resolution = resolution_from_json(j["resolution"], n);
  return file;
}

OperatorFile load_operator_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open operator file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw SchemaError("'" + path + "' is not valid JSON: " + e.what());
  }
  return parse_operator_file(j);
}

json operator_to_json(const MultiplicationOperator& op, bool hermitian) {
  json out;
  json lat = json::array();
  for (Eigen::Index r = 0; r < op.lattice().basis().rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < op.lattice().basis().cols(); ++c) row.push_back(op.lattice().basis()(r, c));
    lat.push_back(row);
  }
  out["lattice"] = lat;
  out["domain_se"] = se_to_json(op.domain_se());
  out["codomain_se"] = se_to_json(op.codomain_se());
  json mults = json::array();
  for (const auto& [y, m] : op.multipliers()) {
    json mat = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
      mat.push_back(row);
    }
    mults.push_back({{"offset", y}, {"matrix", mat}});
  }
  out["multipliers"] = mults;
  if (hermitian) out["hermitian"] = true;
  return out;
}

json operator_file_to_json(const OperatorFile& file) {
  json out;
  out["dim"] = file.dim;
  json ops = json::object();
  for (const auto& [name, op] : file.operators) {
    const bool herm = std::find(file.self_adjoint.begin(), file.self_adjoint.end(), name) !=
                      file.self_adjoint.end();
    ops[name] = operator_to_json(op, herm);
  }
  out["operators"] = ops;
  if (!file.expr.empty()) out["expr"] = file.expr;
  if (file.resolution) {
    json m = json::array();
    for (std::size_t r = 0; r < file.resolution->size(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < file.resolution->size(); ++c)
        row.push_back((*file.resolution)(r, c).convert_to<long long>());
      m.push_back(row);
    }
    out["resolution"] = m;
  }
  return out;
}

IntMatrix resolution_from_json(const json& j, std::size_t dim) {
  IntMatrix m(dim);
  if (j.is_number_integer()) {
    const long long n = j.get<long long>();
    if (n < 1) schema("resolution", "must be positive");
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = n;
    return m;
  }
  if (!j.is_array() || j.size() != dim) schema("resolution", "expected an integer or a dim x dim matrix");
  for (std::size_t r = 0; r < dim; ++r) {
    if (!j[r].is_array() || j[r].size() != dim) schema("resolution", "expected a dim x dim matrix");
    for (std::size_t c = 0; c < dim; ++c) {
      if (!j[r][c].is_number_integer()) schema("resolution", "entries must be integers");
      m(r, c) = j[r][c].get<long long>();
    }
  }
  if (determinant(m) == 0) schema("resolution", "matrix is singular");
  return m;
}

IntMatrix parse_resolution(const std::string& text, std::size_t dim) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception&) {
    schema("resolution", "cannot parse '" + text + "'");
  }
  return resolution_from_json(j, dim);
}

void write_spectrum_csv(std::ostream& out, const SpectrumResult& r) {
  const std::size_t n = r.lattice.dim();
  for (std::size_t d = 0; d < n; ++d) out << "k_frac_" << d + 1 << ",";
  for (std::size_t d = 0; d < n; ++d) out << "k_phys_" << d + 1 << ",";
  out << "eig_index,re,im,abs\n";
  for (const SpectrumRecord& rec : r.records) {
    std::string prefix;
    for (const Rational& c : rec.k.k_frac) prefix += fmt(to_double(c)) + ",";
    for (Eigen::Index d = 0; d < rec.k.k_phys.size(); ++d) prefix += fmt(rec.k.k_phys(d)) + ",";
    for (std::size_t i = 0; i < rec.eigenvalues.size(); ++i) {
      const Complex z = rec.eigenvalues[i];
      out << prefix << i << "," << fmt(z.real()) << "," << fmt(z.imag()) << "," << fmt(std::abs(z))
          << "\n";
    }
  }
}

json spectrum_to_json(const SpectrumResult& r) {
  json out;
  out["expression"] = r.expression;
  out["rho_max"] = r.rho_max;
  json lat = json::array();
  for (Eigen::Index i = 0; i < r.lattice.basis().rows(); ++i) {
    json row = json::array();
    for (Eigen::Index c = 0; c < r.lattice.basis().cols(); ++c) row.push_back(r.lattice.basis()(i, c));
    lat.push_back(row);
  }
  out["lattice"] = lat;
  out["structure_element"] = se_to_json(r.se);
  json res = json::array();
  for (std::size_t i = 0; i < r.resolution.size(); ++i) {
    json row = json::array();
    for (std::size_t c = 0; c < r.resolution.size(); ++c)
      row.push_back(r.resolution(i, c).convert_to<long long>());
    res.push_back(row);
  }
  out["resolution"] = res;
  json records = json::array();
  for (const SpectrumRecord& rec : r.records) {
    json k_frac = json::array();
    for (const Rational& c : rec.k.k_frac) k_frac.push_back(to_string(c));
    json k_phys = json::array();
    for (Eigen::Index d = 0; d < rec.k.k_phys.size(); ++d) k_phys.push_back(rec.k.k_phys(d));
    json eig = json::array();
    for (const Complex& z : rec.eigenvalues) eig.push_back({z.real(), z.imag()});
    records.push_back({{"k_frac", k_frac}, {"k_phys", k_phys}, {"eigenvalues", eig}});
  }
  out["records"] = records;
  return out;
}

std::string gnuplot_script(const std::string& csv_path, std::size_t dim) {
  std::ostringstream s;
  s << "set datafile separator ','\n"
    << "set key off\n"
    << "set title 'eigenvalue modulus over the sampled wave vectors'\n";
  if (dim == 1) {
    s << "set xlabel 'k'\nset ylabel '|lambda|'\n"
      << "plot '" << csv_path << "' using 2:6 skip 1 with points pt 7 ps 0.5\n";
  } else {
    const std::size_t abs_col = 2 * dim + 4;
    s << "set xlabel 'k_1'\nset ylabel 'k_2'\nset cblabel '|lambda|'\nset size ratio -1\n"
      << "plot '" << csv_path << "' using " << dim + 1 << ":" << dim + 2 << ":" << abs_col
      << " skip 1 with points pt 7 ps 0.5 palette\n";
  }
  s << "pause mouse close\n";
  return s.str();
}

std::string describe_operator(const std::string& name, const MultiplicationOperator& op) {
  std::ostringstream s;
  s << "operator " << name << "\n";
  s << "  lattice basis (columns are primitive vectors):\n";
  for (Eigen::Index r = 0; r < op.lattice().basis().rows(); ++r) {
    s << "    [";
    for (Eigen::Index c = 0; c < op.lattice().basis().cols(); ++c)
      s << (c ? ", " : "") << short_fmt(op.lattice().basis()(r, c));
    s << "]\n";
  }
  s << "  domain structure element:   " << to_string(op.domain_se()) << "\n";
  s << "  codomain structure element: " << to_string(op.codomain_se()) << "\n";
  s << "  multipliers (" << op.multipliers().size() << "):\n";
  for (const auto& [y, m] : op.multipliers()) {
    s << "    m^(";
    for (std::size_t d = 0; d < y.size(); ++d) s << (d ? ", " : "") << y[d];
    s << ") =\n";
    std::vector<std::string> cells;
    std::size_t width = 0;
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        cells.push_back(short_fmt(m(r, c)));
        width = std::max(width, cells.back().size());
      }
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      s << "      [";
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        const std::string& cell = cells[static_cast<std::size_t>(r * m.cols() + c)];
        s << (c ? " " : "") << std::string(width - cell.size(), ' ') << cell;
      }
      s << "]\n";
    }
  }
  return s.str();
}

}  // namespace lfa
