#include "commdim/factor.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "commdim/rng.hpp"

namespace commdim {

namespace {

constexpr double kDegenerate = 1e-14;
constexpr double kMuFloor = 1e-16;
constexpr int kStallWindow = 100;
constexpr double kStallRelImprovement = 1e-12;
constexpr int kInnerSweeps = 3;

struct RestartOutcome {
  Matrix W, H;
  double residual = std::numeric_limits<double>::infinity();
  int iterations = 0;
};

double max_residual(const Matrix& C, const Matrix& W, const Matrix& H) {
  return (C - W * H).cwiseAbs().maxCoeff();
}

RestartOutcome run_restart(const Matrix& C, int r, Rng rng, const NmfConfig& cfg) {
  const Eigen::Index n = C.rows(), m = C.cols();

  Vector row_norm(n), col_norm(m);
  for (Eigen::Index i = 0; i < n; ++i) row_norm(i) = C.row(i).norm();
  for (Eigen::Index j = 0; j < m; ++j) col_norm(j) = C.col(j).norm();
  const double rs = std::sqrt(static_cast<double>(r));

  // uniform (0,1] entries scaled by the row/column norms of C
  Matrix W(n, r), H(r, m);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index l = 0; l < r; ++l) W(i, l) = rng.uniform_pos() * row_norm(i) / rs;
  for (Eigen::Index l = 0; l < r; ++l)
    for (Eigen::Index j = 0; j < m; ++j) H(l, j) = rng.uniform_pos() * col_norm(j) / rs;

  RestartOutcome best;
  std::vector<double> best_history;
  best_history.reserve(static_cast<std::size_t>(cfg.max_iter));

  for (int it = 0; it < cfg.max_iter; ++it) {
    for (int sweep = 0; sweep < kInnerSweeps; ++sweep) {
      const Matrix WtW = W.transpose() * W;
      const Matrix WtC = W.transpose() * C;
      for (Eigen::Index l = 0; l < r; ++l) {
        const double denom = WtW(l, l);
        if (denom > kDegenerate) {
          H.row(l) = (H.row(l) + (WtC.row(l) - WtW.row(l) * H) / denom).cwiseMax(0.0);
        } else {
          // dead component: multiplicative rescue keeps nonnegativity
          const Eigen::RowVectorXd numer = WtC.row(l).cwiseMax(0.0);
          Eigen::RowVectorXd den = (WtW * H).row(l);
          den.array() += kMuFloor;
          H.row(l) = H.row(l).cwiseProduct(numer.cwiseQuotient(den));
        }
      }
    }
    for (int sweep = 0; sweep < kInnerSweeps; ++sweep) {
      const Matrix HHt = H * H.transpose();
      const Matrix CHt = C * H.transpose();
      for (Eigen::Index l = 0; l < r; ++l) {
        const double denom = HHt(l, l);
        if (denom > kDegenerate) {
          W.col(l) = (W.col(l) + (CHt.col(l) - W * HHt.col(l)) / denom).cwiseMax(0.0);
        } else {
          const Vector numer = CHt.col(l).cwiseMax(0.0);
          Vector den = (W * HHt).col(l);
          den.array() += kMuFloor;
          W.col(l) = W.col(l).cwiseProduct(numer.cwiseQuotient(den));
        }
      }
    }

    const double res = max_residual(C, W, H);
    if (res < best.residual) {
      best.residual = res;
      best.W = W;
      best.H = H;
      best.iterations = it + 1;
    }
    if (best.residual <= cfg.target_residual) break;

    best_history.push_back(best.residual);
    const int k = static_cast<int>(best_history.size());
    if (k > kStallWindow) {
      const double before = best_history[static_cast<std::size_t>(k - 1 - kStallWindow)];
      if (before - best.residual < kStallRelImprovement * std::max(before, 1.0)) break;
    }
  }
  return best;
}

}  // namespace

NmfResult nmf(const CommMatrix& C, int r, const NmfConfig& config) {
  if (r < 1 || r > std::min(C.rows(), C.cols()))
    throw Error(Err::InvalidParams, "nmf inner dimension must be in [1, min(n, m)]");
  if (config.max_iter < 1 || config.restarts < 1)
    throw Error(Err::InvalidParams, "nmf needs max_iter >= 1 and restarts >= 1");

  const int restarts = config.restarts;
  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(restarts));

  int threads = config.threads > 0 ? config.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, restarts);

  std::atomic<int> next{0};
  auto worker = [&] {
    int t;
    while ((t = next.fetch_add(1)) < restarts)
      outcomes[static_cast<std::size_t>(t)] =
          run_restart(C.m, r, Rng::derive(config.seed, static_cast<std::uint64_t>(t)), config);
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // merge independent of completion order: lowest residual, then lowest index
  int best = 0;
  for (int t = 1; t < restarts; ++t)
    if (outcomes[static_cast<std::size_t>(t)].residual <
        outcomes[static_cast<std::size_t>(best)].residual)
      best = t;

  auto& o = outcomes[static_cast<std::size_t>(best)];
  NmfResult result;
  result.success = o.residual <= config.target_residual;
  result.factorization = NonnegFactorization{std::move(o.W),     std::move(o.H), o.residual, r,
                                             config.seed,        o.iterations,   restarts};
  return result;
}

std::optional<int> nmf_rank_search(const CommMatrix& C, int r_lo, int r_hi,
                                   const NmfConfig& config) {
  if (r_lo > r_hi || r_lo < 1 || r_hi > std::min(C.rows(), C.cols()))
    throw Error(Err::InvalidParams, "nmf_rank_search needs 1 <= r_lo <= r_hi <= min(n, m)");
  for (int r = r_lo; r <= r_hi; ++r)
    if (nmf(C, r, config).success) return r;
  return std::nullopt;
}

StochasticFactorization stochastic_normalize(const Matrix& W, const Matrix& H,
                                             const Tolerances& tol) {
  tol.check();
  if (W.cols() != H.rows())
    throw Error(Err::ShapeMismatch, "inner dimensions of W and H differ");
  if (W.minCoeff() < -tol.nonneg_tol || H.minCoeff() < -tol.nonneg_tol)
    throw Error(Err::NotStochasticProduct, "factors have negative entries");

  const Matrix Wc = W.cwiseMax(0.0);
  const Matrix Hc = H.cwiseMax(0.0);
  try {
    validate(Wc * Hc, tol);
  } catch (const Error& e) {
    throw Error(Err::NotStochasticProduct,
                std::string("product is not row-stochastic: ") + e.what());
  }

  std::vector<Eigen::Index> keep;
  for (Eigen::Index l = 0; l < Hc.rows(); ++l)
    if (Hc.row(l).sum() >= tol.nonneg_tol) keep.push_back(l);
  if (keep.empty()) throw Error(Err::NotStochasticProduct, "all inner dimensions are dead");

  const auto d = static_cast<Eigen::Index>(keep.size());
  Matrix L(Wc.rows(), d), R(d, Hc.cols());
  for (Eigen::Index k = 0; k < d; ++k) {
    const double s = Hc.row(keep[static_cast<std::size_t>(k)]).sum();
    R.row(k) = Hc.row(keep[static_cast<std::size_t>(k)]) / s;
    L.col(k) = Wc.col(keep[static_cast<std::size_t>(k)]) * s;
  }

  for (Eigen::Index i = 0; i < L.rows(); ++i)
    if (std::abs(L.row(i).sum() - 1.0) > tol.row_sum_tol)
      throw Error(Err::NotStochasticProduct, "left factor rows do not sum to 1");

  return StochasticFactorization{std::move(L), std::move(R)};
}

std::pair<Matrix, Matrix> a7_explicit() {
  const double pi = std::numbers::pi;
  const double i = (2.0 / 7.0) * std::pow(std::sin(pi / 7.0), 2);
  const double j = (2.0 / 7.0) * std::pow(std::sin(2.0 * pi / 7.0), 2);
  const double k = (2.0 / 7.0) * std::pow(std::sin(3.0 * pi / 7.0), 2);

  const double q = 2.0 * i * k / (k - j);        // recurring column entry
  const double t = 2.0 * k * (j - i) / (k - j);  // recurring column entry
  const double u = 2.0 * (k - i * i / (k - j));
  const double w = 2.0 * (i + j) - q;
  const double h1 = (j - 0.5 * (k - i * i / (k - j))) / w;
  const double h2 = (j - i * k / (k - j)) / w;

  Matrix W(7, 6);
  W.row(0) << 2 * k, 2 * j, 0, 0, 2 * i, 0;
  W.row(1) << 0, 2 * k, 0, 0, q, w;
  W.row(2) << 0, 2 * j, 2 * k, 0, 2 * i, 0;
  W.row(3) << 0, 2 * i, t, 0, 0, 0;
  W(3, 3) = 1.0 - W.row(3).sum();  // the "one minus rest of row" cell
  W.row(4) << 0, 0, q, u, 0, w;
  W(4, 4) = 1.0 - W.row(4).sum();
  W.row(5) << q, 0, 0, u, 0, w;
  W(5, 4) = 1.0 - W.row(5).sum();
  W.row(6) << t, 2 * i, 0, 0, 0, 0;
  W(6, 3) = 1.0 - W.row(6).sum();

  Matrix H(6, 7);
  H.row(0) << 0, i / (2 * k), j / (2 * k), (k - i) / (2 * k), (k - j) / (2 * k), 0, 0;
  H.row(1) << 0, 0, 0, 0, 0.5, 0.5, 0;
  H.row(2) << j / (2 * k), i / (2 * k), 0, 0, 0, (k - j) / (2 * k), (k - i) / (2 * k);
  H.row(3) << 0.25, 0.5, 0.25, 0, 0, 0, 0;
  H.row(4) << 0, 0, 0, 0.5, 0, 0, 0.5;
  H.row(5) << h1, 0, h1, h2, 0, 0, h2;

  return {std::move(W), std::move(H)};
}

FactorizationReport verify_factorization(const CommMatrix& C, const Matrix& W, const Matrix& H,
                                         const Tolerances& tol) {
  tol.check();
  if (W.rows() != C.rows() || H.cols() != C.cols() || W.cols() != H.rows()) {
    std::ostringstream os;
    os << "factor shapes " << W.rows() << "x" << W.cols() << " * " << H.rows() << "x" << H.cols()
       << " do not match " << C.rows() << "x" << C.cols();
    throw Error(Err::ShapeMismatch, os.str());
  }

  FactorizationReport rep;
  rep.min_entry = std::min(W.minCoeff(), H.minCoeff());
  rep.nonneg_ok = rep.min_entry >= -tol.nonneg_tol;
  rep.residual = (C.m - W * H).cwiseAbs().maxCoeff();
  rep.residual_ok = rep.residual <= tol.recon_tol;
  rep.pass = rep.nonneg_ok && rep.residual_ok;
  if (!rep.nonneg_ok) {
    std::ostringstream os;
    os << "negative factor entry " << rep.min_entry;
    rep.violations.push_back(os.str());
  }
  if (!rep.residual_ok) {
    std::ostringstream os;
    os << "residual " << rep.residual << " exceeds " << tol.recon_tol;
    rep.violations.push_back(os.str());
  }
  return rep;
}

}  // namespace commdim
