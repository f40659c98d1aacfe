#include "commdim/shared_randomness.hpp"

#include <cmath>
#include <sstream>

namespace commdim {

namespace {

void check_stochastic(const Matrix& M, const Tolerances& tol, const char* what) {
  if (M.minCoeff() < -tol.nonneg_tol) {
    std::ostringstream os;
    os << what << " has negative entries";
    throw Error(Err::InvalidParams, os.str());
  }
  for (Eigen::Index i = 0; i < M.rows(); ++i)
    if (std::abs(M.row(i).sum() - 1.0) > tol.row_sum_tol) {
      std::ostringstream os;
      os << what << " row " << i + 1 << " does not sum to 1";
      throw Error(Err::InvalidParams, os.str());
    }
}

}  // namespace

void validate_protocol(const SRProtocol& p, const Tolerances& tol) {
  tol.check();
  if (p.parts.empty()) throw Error(Err::InvalidParams, "protocol has no parts");
  if (p.d < 1) throw Error(Err::InvalidParams, "protocol dimension must be >= 1");

  const Eigen::Index n = p.parts.front().impl.L.rows();
  const Eigen::Index m = p.parts.front().impl.R.cols();
  double wsum = 0.0;
  for (const auto& part : p.parts) {
    // weights are rejected, never renormalized
    if (part.weight < 0.0) throw Error(Err::InvalidParams, "negative part weight");
    wsum += part.weight;
    if (part.impl.L.rows() != n || part.impl.L.cols() != p.d || part.impl.R.rows() != p.d ||
        part.impl.R.cols() != m)
      throw Error(Err::ShapeMismatch, "protocol parts have inconsistent shapes");
    check_stochastic(part.impl.L, tol, "part L");
    check_stochastic(part.impl.R, tol, "part R");
  }
  if (std::abs(wsum - 1.0) > tol.row_sum_tol)
    throw Error(Err::InvalidParams, "part weights do not sum to 1");
}

CommMatrix mix(const SRProtocol& p, const Tolerances& tol) {
  validate_protocol(p, tol);
  const Eigen::Index n = p.parts.front().impl.L.rows();
  const Eigen::Index m = p.parts.front().impl.R.cols();
  Matrix M = Matrix::Zero(n, m);
  for (const auto& part : p.parts) M += part.weight * (part.impl.L * part.impl.R);
  return validate(M, tol);
}

StochasticFactorization block_factorization(const SRProtocol& p, const Tolerances& tol) {
  validate_protocol(p, tol);
  const auto k = static_cast<Eigen::Index>(p.parts.size());
  const Eigen::Index n = p.parts.front().impl.L.rows();
  const Eigen::Index m = p.parts.front().impl.R.cols();
  const Eigen::Index d = p.d;

  Matrix L(n, d * k), R(d * k, m);
  for (Eigen::Index kk = 0; kk < k; ++kk) {
    const auto& part = p.parts[static_cast<std::size_t>(kk)];
    L.middleCols(kk * d, d) = part.weight * part.impl.L;
    R.middleRows(kk * d, d) = part.impl.R;
  }
  return StochasticFactorization{std::move(L), std::move(R)};
}

long long min_coordinated_actions(long long nrank_lb, long long d) {
  if (nrank_lb < 1 || d < 1)
    throw Error(Err::InvalidParams, "min_coordinated_actions needs nrank_lb >= 1 and d >= 1");
  return (nrank_lb + d - 1) / d;
}

}  // namespace commdim
