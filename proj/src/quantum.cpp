#include "commdim/quantum.hpp"

#include <cmath>
#include <numbers>

namespace commdim {

namespace {

// 2x2 symmetric PSD test: nonnegative trace and determinant.
bool psd2(const Eigen::Matrix2d& A, double tol) {
  const double tr = A.trace();
  const double det = A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
  return tr >= -tol && det >= -tol;
}

}  // namespace

Eigen::Matrix2d BlochOperator::dense() const {
  Eigen::Matrix2d M;
  M << coeff_id + coeff_z, coeff_x, coeff_x, coeff_id - coeff_z;
  return M;
}

QubitEnsemble qubit_implementation(int n) {
  if (n < 2) throw Error(Err::InvalidSize, "qubit implementation needs n >= 2");
  QubitEnsemble ens;
  ens.states.reserve(static_cast<std::size_t>(n));
  ens.effects.reserve(static_cast<std::size_t>(n));
  for (int a = 1; a <= n; ++a) {
    const double ang = 2.0 * a * std::numbers::pi / n;
    const double rx = std::cos(ang), rz = std::sin(ang);
    ens.states.push_back(BlochOperator{0.5, 0.5 * rx, 0.5 * rz});
    ens.effects.push_back(BlochOperator{1.0 / n, -rx / n, -rz / n});
  }
  return ens;
}

VerificationReport verify_ensemble(const QubitEnsemble& ens, const Tolerances& tol) {
  tol.check();
  VerificationReport rep;
  rep.pass = true;

  for (const auto& s : ens.states) {
    const Eigen::Matrix2d D = s.dense();
    StateCheck c;
    c.trace_one = std::abs(D.trace() - 1.0) <= tol.nonneg_tol;
    c.psd = psd2(D, tol.nonneg_tol);
    c.pure = std::abs(D(0, 0) * D(1, 1) - D(0, 1) * D(1, 0)) <= tol.nonneg_tol;
    rep.pass = rep.pass && c.trace_one && c.psd && c.pure;
    rep.states.push_back(c);
  }

  Eigen::Matrix2d sum = Eigen::Matrix2d::Zero();
  for (const auto& e : ens.effects) {
    const Eigen::Matrix2d D = e.dense();
    EffectCheck c;
    c.psd = psd2(D, tol.nonneg_tol);
    c.complement_psd = psd2(Eigen::Matrix2d::Identity() - D, tol.nonneg_tol);
    rep.pass = rep.pass && c.psd && c.complement_psd;
    rep.effects.push_back(c);
    sum += D;
  }

  rep.povm_complete =
      (sum - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() <= tol.nonneg_tol;
  rep.pass = rep.pass && rep.povm_complete && !ens.states.empty() && !ens.effects.empty();
  return rep;
}

CommMatrix gram(const QubitEnsemble& ens, const Tolerances& tol) {
  const VerificationReport rep = verify_ensemble(ens, tol);
  if (!rep.pass) throw Error(Err::InvalidEnsemble, "ensemble fails state/effect/POVM checks");

  const auto n = static_cast<Eigen::Index>(ens.states.size());
  const auto m = static_cast<Eigen::Index>(ens.effects.size());
  Matrix G(n, m);
  for (Eigen::Index a = 0; a < n; ++a) {
    const Eigen::Matrix2d S = ens.states[static_cast<std::size_t>(a)].dense();
    for (Eigen::Index b = 0; b < m; ++b) {
      const Eigen::Matrix2d M = ens.effects[static_cast<std::size_t>(b)].dense();
      G(a, b) = (S * M).trace();
    }
  }
  return validate(G, tol);
}

int quantum_dim_lower_bound(const CommMatrix& C, const Tolerances& tol) {
  tol.check();
  for (Eigen::Index i = 1; i < C.rows(); ++i)
    if ((C.m.row(i) - C.m.row(0)).cwiseAbs().maxCoeff() > tol.entry_eq_tol) return 2;
  return 1;
}

}  // namespace commdim
