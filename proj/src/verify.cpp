#include "lfa/verify.hpp"

#include <cmath>
#include <limits>

#include "lfa/oracle.hpp"
#include "lfa/symbol.hpp"

namespace lfa {

double adjoint_defect(const MultiplicationOperator& op) {
  if (op.domain_se() != op.codomain_se()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const auto& [y, m] : op.multipliers()) {
    IntVector neg = y;
    for (auto& v : neg) v = -v;
    worst = std::max(worst, (m - op.at(neg).adjoint()).cwiseAbs().maxCoeff());
  }
  return worst;
}

std::vector<CheckResult> run_verification(const Environment& env,
                                          const std::vector<std::string>& self_adjoint,
                                          const std::optional<std::string>& expr,
                                          const IntMatrix& m, const VerifyTolerances& tol) {
  std::vector<CheckResult> out;
  for (const auto& [name, op] : env) {
    out.push_back({"translation-invariance", name, check_translation_invariance(op, m),
                   tol.translation});
    out.push_back({"harmonic-invariance", name, harmonic_invariance_residual(op, m), tol.harmonics});

    const CMatrix gram = scaled_gram(wave_basis(op.lattice(), m, op.domain_se()),
                                     quotient_representatives(m).size());
    const auto size = gram.rows();
    out.push_back({"wave-basis-orthonormality", name,
                   (gram - CMatrix::Identity(size, size)).cwiseAbs().maxCoeff(),
                   tol.orthonormality});

    if (op.rows() == op.cols()) {
      std::vector<Complex> symbols;
      for (const DualSample& k : sample_dual_torus(op.lattice(), m))
        for (const Complex& z : eigenvalues(symbol_at(op, k))) symbols.push_back(z);
      out.push_back({"symbol-spectrum-vs-dense", name,
                     matched_distance(symbols, dense_spectrum(assemble_dense(op, m))),
                     tol.spectrum});
    }
  }
  for (const std::string& name : self_adjoint) {
    auto it = env.find(name);
    if (it == env.end()) continue;
    out.push_back({"self-adjoint", name, adjoint_defect(it->second), tol.adjoint});
  }
  if (expr) {
    const ExprPtr e = parse(*expr);
    const SpectrumResult r = compute_spectrum(*e, env, m);
    std::vector<Complex> symbols;
    for (const auto& rec : r.records)
      symbols.insert(symbols.end(), rec.eigenvalues.begin(), rec.eigenvalues.end());
    out.push_back({"expression-spectrum-vs-dense", render(*e),
                   matched_distance(symbols, dense_spectrum(eval_dense(*e, env, m))),
                   tol.spectrum});
  }
  return out;
}

}  // namespace lfa
