#include "lfa/gallery.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "lfa/error.hpp"

namespace lfa {

namespace {

CMatrix real_matrix(std::initializer_list<std::initializer_list<double>> rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = static_cast<Eigen::Index>(rows.begin()->size());
  CMatrix m = CMatrix::Zero(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

FracPoint point(Rational x, Rational y) { return {std::move(x), std::move(y)}; }

IntMatrix scalar_resolution(long long n) {
  IntMatrix m(2);
  m(0, 0) = n;
  m(1, 1) = n;
  return m;
}

std::string number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_number(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v))
    throw std::invalid_argument("parameter " + key + " expects a number, got '" + text + "'");
  return v;
}

std::map<std::string, std::string> merge(const std::string& example,
                                         const std::map<std::string, std::string>& defaults,
                                         const std::map<std::string, std::string>& given) {
  std::map<std::string, std::string> out = defaults;
  for (const auto& [k, v] : given) {
    if (!defaults.count(k))
      throw SchemaError("example '" + example + "' has no parameter '" + k + "'");
    out[k] = v;
  }
  return out;
}

const std::vector<ExampleInfo>& examples() {
  static const std::vector<ExampleInfo> list = {
      {"laplacian-rb", "red-black Gauss-Seidel for the five-point Laplacian", {{"h", "1"}}},
      {"graphene", "four-colour hexagon block smoother and two-grid for graphene",
       {{"omega", "0.5"}}},
      {"curlcurl", "hybrid smoother and two-grid for the curl-curl edge discretization",
       {{"sigma_h", "0.01"}, {"ordering", "same"}}},
  };
  return list;
}

}  // namespace

std::vector<ExampleInfo> list_examples() { return examples(); }

GalleryEntry make_example(const std::string& name,
                          const std::map<std::string, std::string>& params) {
  for (const auto& info : examples()) {
    if (info.name != name) continue;
    const auto p = merge(name, info.defaults, params);
    GalleryEntry entry;
    if (name == "laplacian-rb")
      entry = laplacian_rb(parse_number("h", p.at("h")));
    else if (name == "graphene")
      entry = graphene(parse_number("omega", p.at("omega")));
    else
      entry = curlcurl(parse_number("sigma_h", p.at("sigma_h")), p.at("ordering"));
    entry.params = p;
    return entry;
  }
  throw SchemaError("unknown example '" + name + "'");
}

MultiplicationOperator laplacian_5pt(double h) {
  if (!(h > 0)) throw std::invalid_argument("laplacian: h must be positive");
  const double s = 1.0 / (h * h);
  MultiplicationOperator l(Lattice(Eigen::Matrix2d::Identity() / h), {point(0, 0)}, {point(0, 0)});
  l.set({0, 0}, real_matrix({{4 * s}}));
  for (IntVector y : {IntVector{1, 0}, IntVector{-1, 0}, IntVector{0, 1}, IntVector{0, -1}})
    l.set(y, real_matrix({{-s}}));
  return l;
}

GalleryEntry laplacian_rb(double h) {
  const MultiplicationOperator fine = laplacian_5pt(h);
  const Lattice c = fine.lattice().times(IntMatrix{{1, 1}, {1, -1}});
  const MultiplicationOperator l = normalize(lattice_coarsening(fine, c));

  const double s = 4.0 / (h * h);
  MultiplicationOperator sr(c, l.domain_se(), l.codomain_se());
  sr.set({0, 0}, real_matrix({{s, 0}, {0, 0}}));
  MultiplicationOperator sb(c, l.domain_se(), l.codomain_se());
  sb.set({0, 0}, real_matrix({{0, 0}, {0, s}}));

  GalleryEntry e;
  e.name = "laplacian-rb";
  e.description = "red-black Gauss-Seidel for the five-point Laplacian";
  e.operators = {{"L", l}, {"Sr", sr}, {"Sb", sb}};
  e.expressions = {{"rbgs", "(I - pinv(Sb)*L)*(I - pinv(Sr)*L)"},
                   {"jacobi", "I - " + number(h * h / 4) + "*L"},
                   {"L", "L"}};
  e.default_expression = "rbgs";
  e.default_resolution = scalar_resolution(16);
  e.self_adjoint = {"L", "Sr", "Sb"};
  return e;
}

MultiplicationOperator graphene_hamiltonian() {
  Eigen::Matrix2d a;
  a << 1.5, 1.5, std::sqrt(3.0) / 2, -std::sqrt(3.0) / 2;
  const StructureElement s = {point(Rational(1, 3), Rational(1, 3)),
                              point(Rational(2, 3), Rational(2, 3))};
  MultiplicationOperator l(Lattice(a), s, s);
  l.set({0, 0}, real_matrix({{0, -1}, {-1, 0}}));
  l.set({0, -1}, real_matrix({{0, -1}, {0, 0}}));
  l.set({-1, 0}, real_matrix({{0, -1}, {0, 0}}));
  l.set({1, 0}, real_matrix({{0, 0}, {-1, 0}}));
  l.set({0, 1}, real_matrix({{0, 0}, {-1, 0}}));
  return l;
}

GalleryEntry graphene(double omega) {
  if (!(omega > 0 && omega <= 1)) throw std::invalid_argument("graphene: omega must be in (0, 1]");
  const MultiplicationOperator l = graphene_hamiltonian();
  const Lattice c = l.lattice().times(IntMatrix{{2, 0}, {0, 2}});
  const MultiplicationOperator coarse = lattice_coarsening(l, c);
  const StructureElement& t = coarse.domain_se();  // s, s + a1, s + a2, s + a1 + a2

  GalleryEntry e;
  e.name = "graphene";
  e.description = "four-colour hexagon block smoother and two-grid for graphene";
  e.operators["L"] = l;

  // Colour l is the hexagon around the cell shifted by tau_l; the six atoms
  // of t + tau_l other than the first and last form the block.
  const std::vector<FracPoint> tau = {point(0, 0), point(Rational(1, 2), 0),
                                      point(0, Rational(1, 2)),
                                      point(Rational(1, 2), Rational(1, 2))};
  const std::vector<bool> mask = {false, true, true, true, true, true, true, false};
  for (std::size_t c_idx = 0; c_idx < tau.size(); ++c_idx) {
    StructureElement shifted = t;
    for (FracPoint& p : shifted)
      for (std::size_t d = 0; d < p.size(); ++d) p[d] += tau[c_idx][d];
    const auto lhat = change_structure_element(coarse, shifted, shifted);
    e.operators["S" + std::to_string(c_idx + 1)] = mask_central(lhat, mask);
  }

  const StructureElement coarse_se = {point(Rational(1, 3), Rational(1, 3)),
                                      point(Rational(2, 3), Rational(2, 3))};
  MultiplicationOperator r(c, t, coarse_se);
  const double q = 0.25, hf = 0.5;
  r.set({0, 0}, real_matrix({{0, 1, 0, -hf, 0, -hf, 0, q}, {q, 0, -hf, 0, -hf, 0, 1, 0}}));
  r.set({1, -1}, real_matrix({{0, 0, 0, 0, 0, q, 0, 0}, {0, 0, 0, 0, q, 0, 0, 0}}));
  r.set({0, -1}, real_matrix({{0, 0, 0, q, 0, -hf, 0, -hf}, {0, 0, 0, 0, 0, 0, 0, 0}}));
  r.set({1, 0}, real_matrix({{0, 0, 0, 0, 0, 0, 0, 0}, {-hf, 0, q, 0, -hf, 0, 0, 0}}));
  r.set({-1, -1}, real_matrix({{0, 0, 0, 0, 0, 0, 0, q}, {0, 0, 0, 0, 0, 0, 0, 0}}));
  r.set({1, 1}, real_matrix({{0, 0, 0, 0, 0, 0, 0, 0}, {q, 0, 0, 0, 0, 0, 0, 0}}));
  r.set({-1, 0}, real_matrix({{0, 0, 0, -hf, 0, q, 0, -hf}, {0, 0, 0, 0, 0, 0, 0, 0}}));
  r.set({0, 1}, real_matrix({{0, 0, 0, 0, 0, 0, 0, 0}, {-hf, 0, -hf, 0, q, 0, 0, 0}}));
  r.set({-1, 1}, real_matrix({{0, 0, 0, q, 0, 0, 0, 0}, {0, 0, q, 0, 0, 0, 0, 0}}));
  e.operators["R"] = r;

  const std::string w = number(omega);
  std::string g;
  for (int c_idx = 1; c_idx <= 4; ++c_idx) {
    if (!g.empty()) g += "*";
    g += "(I - " + w + "*pinv(S" + std::to_string(c_idx) + ")*L)";
  }
  const std::string coarse_corr = "(I - adj(R)*pinv(R*L*adj(R))*R*L)";
  e.expressions = {{"smoother", g},
                   {"coarse", coarse_corr},
                   {"twogrid", g + "*" + coarse_corr + "*" + g},
                   {"L", "L"}};
  e.default_expression = "twogrid";
  e.default_resolution = scalar_resolution(41);
  e.self_adjoint = {"L", "S1", "S2", "S3", "S4"};
  return e;
}

MultiplicationOperator curlcurl_operator(double sigma_h) {
  if (!(sigma_h >= 0)) throw std::invalid_argument("curlcurl: sigma_h must be non-negative");
  const double d = -1 + sigma_h / 6;
  const double c = 2 + 2 * sigma_h / 3;
  const StructureElement e = {point(Rational(1, 2), 0), point(0, Rational(1, 2))};
  MultiplicationOperator k(Lattice::identity(2), e, e);
  k.set({-1, 1}, real_matrix({{0, 0}, {-1, 0}}));
  k.set({0, 1}, real_matrix({{d, 0}, {1, 0}}));
  k.set({-1, 0}, real_matrix({{0, 0}, {1, d}}));
  k.set({0, 0}, real_matrix({{c, -1}, {-1, c}}));
  k.set({1, 0}, real_matrix({{0, 1}, {0, d}}));
  k.set({0, -1}, real_matrix({{d, 1}, {0, 0}}));
  k.set({1, -1}, real_matrix({{0, -1}, {0, 0}}));
  return k;
}

GalleryEntry curlcurl(double sigma_h, const std::string& ordering) {
  if (ordering != "same" && ordering != "reversed")
    throw std::invalid_argument("curlcurl: ordering must be 'same' or 'reversed'");
  const MultiplicationOperator k = curlcurl_operator(sigma_h);
  const Lattice& a = k.lattice();
  const LexOrder order = LexOrder::bottom_to_top(2);

  // Vertical edge taken from the cell to the lower right, so that a
  // horizontal edge is updated before the vertical edge it shares a node with.
  const StructureElement ehat = {point(Rational(1, 2), 0), point(1, Rational(-1, 2))};
  const MultiplicationOperator khat = change_structure_element(k, ehat, ehat);
  const MultiplicationOperator se = triangular_splitting(khat, order);

  MultiplicationOperator rn(a, k.domain_se(), {point(0, 0)});
  rn.set({-1, 0}, real_matrix({{1, 0}}));
  rn.set({0, 0}, real_matrix({{-1, -1}}));
  rn.set({0, -1}, real_matrix({{0, 1}}));

  const MultiplicationOperator kn = eval_position(*parse("RN*K*adj(RN)"), {{"RN", rn}, {"K", k}});
  const MultiplicationOperator sn = triangular_splitting(kn, order);

  const Lattice c = a.times(IntMatrix{{2, 0}, {0, 2}});
  const StructureElement f = {
      point(Rational(1, 4), 0),                point(0, Rational(1, 4)),
      point(Rational(3, 4), 0),                point(Rational(1, 2), Rational(1, 4)),
      point(Rational(1, 4), Rational(1, 2)),   point(0, Rational(3, 4)),
      point(Rational(3, 4), Rational(1, 2)),   point(Rational(1, 2), Rational(3, 4))};
  const StructureElement coarse_se = {point(Rational(1, 2), 0), point(0, Rational(1, 2))};
  MultiplicationOperator r(c, f, coarse_se);
  const double q = 0.25, hf = 0.5;
  r.set({-1, 0}, real_matrix({{0, 0, 0, 0, 0, 0, 0, 0}, {0, 0, 0, q, 0, 0, 0, q}}));
  r.set({0, 0}, real_matrix({{hf, 0, hf, 0, q, 0, q, 0}, {0, hf, 0, q, 0, hf, 0, q}}));
  r.set({0, -1}, real_matrix({{0, 0, 0, 0, q, 0, q, 0}, {0, 0, 0, 0, 0, 0, 0, 0}}));

  GalleryEntry e;
  e.name = "curlcurl";
  e.description = "hybrid smoother and two-grid for the curl-curl edge discretization";
  e.operators = {{"K", k}, {"Khat", khat}, {"SE", se}, {"RN", rn},
                 {"KN", kn}, {"SN", sn},   {"R", r}};

  const std::string g_edge = "(I - pinv(SE)*K)";
  const std::string g_node = "(I - adj(RN)*pinv(SN)*RN*K)";
  const std::string g = g_node + "*" + g_edge;
  const std::string g_post = ordering == "same" ? g : g_edge + "*" + g_node;
  const std::string coarse_corr = "(I - adj(R)*pinv(R*K*adj(R))*R*K)";
  e.expressions = {{"smoother", g},
                   {"coarse", coarse_corr},
                   {"twogrid", g_post + "*" + coarse_corr + "*" + g},
                   {"K", "K"}};
  e.default_expression = "smoother";
  e.default_resolution = scalar_resolution(16);
  e.self_adjoint = {"K", "Khat", "KN"};
  return e;
}

}  // namespace lfa
