// lfa: local Fourier analysis of operator compositions on crystals.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lfa/error.hpp"
#include "lfa/gallery.hpp"
#include "lfa/io.hpp"
#include "lfa/verify.hpp"

namespace {

enum Exit { kOk = 0, kSchema = 1, kLattice = 2, kExpression = 3, kVerifyFailed = 4 };

struct Source {
  std::string example;
  std::string input;
  std::vector<std::string> params;
};

struct Loaded {
  lfa::Environment operators;
  std::vector<std::string> self_adjoint;
  std::map<std::string, std::string> expressions;
  std::string default_expr;
  std::optional<lfa::IntMatrix> resolution;
  std::size_t dim = 0;
  std::map<std::string, std::string> params;
};

void add_source_options(CLI::App* cmd, Source& src) {
  auto* ex = cmd->add_option("--example", src.example, "gallery example name");
  auto* in = cmd->add_option("--input", src.input, "operator file (JSON)");
  ex->excludes(in);
  cmd->add_option("--param", src.params, "example parameter key=value (repeatable)");
}

Loaded load(const Source& src) {
  if (src.example.empty() == src.input.empty())
    throw lfa::SchemaError("give exactly one of --example or --input");
  Loaded out;
  if (!src.example.empty()) {
    std::map<std::string, std::string> params;
    for (const std::string& p : src.params) {
      const auto eq = p.find('=');
      if (eq == std::string::npos || eq == 0)
        throw lfa::SchemaError("parameter '" + p + "' is not of the form key=value");
      params[p.substr(0, eq)] = p.substr(eq + 1);
    }
    lfa::GalleryEntry e;
    try {
      e = lfa::make_example(src.example, params);
    } catch (const std::invalid_argument& err) {
      throw lfa::SchemaError(err.what());
    }
    out.operators = e.operators;
    out.self_adjoint = e.self_adjoint;
    out.expressions = e.expressions;
    out.default_expr = e.expressions.at(e.default_expression);
    out.resolution = e.default_resolution;
    out.dim = e.default_resolution.size();
    out.params = e.params;
  } else {
    if (!src.params.empty()) throw lfa::SchemaError("--param only applies to --example");
    lfa::OperatorFile f = lfa::load_operator_file(src.input);
    out.operators = f.operators;
    out.self_adjoint = f.self_adjoint;
    out.default_expr = f.expr;
    out.resolution = f.resolution;
    out.dim = f.dim;
  }
  return out;
}

std::string pick_expression(const Loaded& l, const std::string& flag) {
  if (flag.empty()) {
    if (l.default_expr.empty()) throw lfa::SchemaError("no expression given and none in the input");
    return l.default_expr;
  }
  auto it = l.expressions.find(flag);
  return it != l.expressions.end() ? it->second : flag;
}

lfa::IntMatrix pick_resolution(const Loaded& l, const std::string& flag,
                               std::optional<long long> fallback = std::nullopt) {
  if (!flag.empty()) return lfa::parse_resolution(flag, l.dim);
  if (fallback) return lfa::parse_resolution(std::to_string(*fallback), l.dim);
  if (l.resolution) return *l.resolution;
  throw lfa::SchemaError("no resolution given and none in the input");
}

int cmd_list() {
  for (const auto& info : lfa::list_examples()) {
    std::cout << info.name << "  " << info.description;
    std::string sep = "  [";
    for (const auto& [k, v] : info.defaults) {
      std::cout << sep << k << "=" << v;
      sep = ", ";
    }
    std::cout << (info.defaults.empty() ? "" : "]") << "\n";
  }
  return kOk;
}

int cmd_describe(const Source& src, const std::string& op_name, const std::string& format,
                 const std::string& output) {
  const Loaded l = load(src);
  std::vector<std::string> names;
  if (op_name.empty()) {
    for (const auto& [name, op] : l.operators) names.push_back(name);
  } else {
    if (!l.operators.count(op_name)) throw lfa::SchemaError("no operator named '" + op_name + "'");
    names.push_back(op_name);
  }

  std::string text;
  if (format == "json") {
    lfa::OperatorFile f;
    f.dim = l.dim;
    for (const auto& n : names) f.operators.emplace(n, l.operators.at(n));
    for (const auto& n : l.self_adjoint)
      if (f.operators.count(n)) f.self_adjoint.push_back(n);
    f.expr = op_name.empty() ? l.default_expr : std::string();
    if (op_name.empty()) f.resolution = l.resolution;
    text = lfa::operator_file_to_json(f).dump(2) + "\n";
  } else {
    if (!src.example.empty()) {
      text += "example " + src.example;
      for (const auto& [k, v] : l.params) text += "  " + k + "=" + v;
      text += "\n";
      for (const auto& [k, v] : l.expressions) text += "  expression " + k + ": " + v + "\n";
      text += "\n";
    }
    for (const auto& n : names) text += lfa::describe_operator(n, l.operators.at(n)) + "\n";
  }

  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output);
    if (!out) throw lfa::SchemaError("cannot write '" + output + "'");
    out << text;
  }
  return kOk;
}

int cmd_spectrum(const Source& src, const std::string& expr_flag, const std::string& res_flag,
                 const std::string& output, const std::string& format, const std::string& plot,
                 unsigned threads) {
  const Loaded l = load(src);
  const std::string text = pick_expression(l, expr_flag);
  const lfa::IntMatrix m = pick_resolution(l, res_flag);
  const lfa::ExprPtr e = lfa::parse(text);

  lfa::SpectrumOptions opts;
  opts.threads = threads;
  const lfa::SpectrumResult r = lfa::compute_spectrum(*e, l.operators, m, opts);

  std::string csv_path = output;
  if (!output.empty()) {
    std::ofstream out(output);
    if (!out) throw lfa::SchemaError("cannot write '" + output + "'");
    if (format == "json")
      out << lfa::spectrum_to_json(r).dump(2) << "\n";
    else
      lfa::write_spectrum_csv(out, r);
  }
  if (!plot.empty()) {
    if (output.empty() || format == "json") {
      csv_path = plot + ".csv";
      std::ofstream out(csv_path);
      if (!out) throw lfa::SchemaError("cannot write '" + csv_path + "'");
      lfa::write_spectrum_csv(out, r);
    }
    std::ofstream out(plot);
    if (!out) throw lfa::SchemaError("cannot write '" + plot + "'");
    out << lfa::gnuplot_script(csv_path, r.lattice.dim());
  }

  char line[64];
  std::snprintf(line, sizeof line, "rho_max = %.8f", r.rho_max);
  std::cout << line << "\n";
  return kOk;
}

int cmd_verify(const Source& src, const std::string& expr_flag, const std::string& res_flag,
               bool no_expr) {
  const Loaded l = load(src);
  const lfa::IntMatrix m = pick_resolution(l, res_flag, 4);
  std::optional<std::string> expr;
  if (!no_expr && (!expr_flag.empty() || !l.default_expr.empty()))
    expr = pick_expression(l, expr_flag);

  const auto results = lfa::run_verification(l.operators, l.self_adjoint, expr, m);
  bool ok = true;
  for (const auto& c : results) {
    char line[512];
    std::snprintf(line, sizeof line, "%-4s %-30s %-20s residual %.3e (tol %.0e)",
                  c.passed() ? "ok" : "FAIL", c.check.c_str(), c.subject.c_str(), c.residual,
                  c.tolerance);
    std::cout << line << "\n";
    ok = ok && c.passed();
  }
  std::cout << (ok ? "verify: all checks passed" : "verify: some checks failed") << "\n";
  return ok ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local Fourier analysis of operator compositions on crystals"};
  app.require_subcommand(1);

  app.add_subcommand("list", "list gallery examples");

  Source describe_src;
  std::string describe_op, describe_format = "text", describe_out;
  auto* describe = app.add_subcommand("describe", "print operators and their multipliers");
  add_source_options(describe, describe_src);
  describe->add_option("--operator", describe_op, "operator to show (default: all)");
  describe->add_option("--format", describe_format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  describe->add_option("--output", describe_out, "write to a file instead of stdout");

  Source spec_src;
  std::string spec_expr, spec_res, spec_out, spec_format = "csv", spec_plot;
  unsigned spec_threads = 1;
  auto* spectrum = app.add_subcommand("spectrum", "sample the spectrum of an expression");
  add_source_options(spectrum, spec_src);
  spectrum->add_option("--expr", spec_expr, "expression or name of a predefined expression");
  spectrum->add_option("--resolution", spec_res, "N or an integer matrix such as [[2,3],[2,-2]]");
  spectrum->add_option("--output", spec_out, "write the spectrum to this file");
  spectrum->add_option("--format", spec_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  spectrum->add_option("--emit-plot", spec_plot, "write a gnuplot script");
  spectrum->add_option("--threads", spec_threads, "worker threads")->check(CLI::Range(1u, 1024u));

  Source ver_src;
  std::string ver_expr, ver_res;
  bool ver_no_expr = false;
  auto* verify = app.add_subcommand("verify", "check operators against the dense oracle");
  add_source_options(verify, ver_src);
  verify->add_option("--expr", ver_expr, "expression to check densely");
  verify->add_option("--resolution", ver_res, "N or an integer matrix (default 4)");
  verify->add_flag("--operators-only", ver_no_expr, "skip the expression check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kSchema;
  }

  try {
    if (app.got_subcommand("list")) return cmd_list();
    if (app.got_subcommand(describe))
      return cmd_describe(describe_src, describe_op, describe_format, describe_out);
    if (app.got_subcommand(spectrum))
      return cmd_spectrum(spec_src, spec_expr, spec_res, spec_out, spec_format, spec_plot,
                          spec_threads);
    if (app.got_subcommand(verify)) return cmd_verify(ver_src, ver_expr, ver_res, ver_no_expr);
  } catch (const lfa::ExpressionError& e) {
    std::cerr << "expression error: " << e.what() << "\n";
    return kExpression;
  } catch (const lfa::LatticeError& e) {
    std::cerr << "lattice error: " << e.what() << "\n";
    return kLattice;
  } catch (const lfa::IncompatibleError& e) {
    std::cerr << "incompatible operators: " << e.what() << "\n";
    return kLattice;
  } catch (const lfa::SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSchema;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSchema;
  }
  return kOk;
}
