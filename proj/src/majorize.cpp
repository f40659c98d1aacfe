#include "commdim/majorize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "commdim/rng.hpp"
#include "commdim/simplex.hpp"

namespace commdim {

const char* to_string(MajAnswer a) {
  switch (a) {
    case MajAnswer::Yes: return "yes";
    case MajAnswer::No: return "no";
    case MajAnswer::Unknown: return "unknown";
  }
  return "?";
}

namespace {

// extend a witness to a larger inner dimension: zero-weight symbols on the
// left, arbitrary (uniform) rows on the right
void pad_witness(Matrix& L, Matrix& R, Eigen::Index d) {
  const Eigen::Index have = L.cols();
  if (have >= d) return;
  Matrix L2 = Matrix::Zero(L.rows(), d);
  L2.leftCols(have) = L;
  Matrix R2(d, R.cols());
  R2.topRows(have) = R;
  R2.bottomRows(d - have).setConstant(1.0 / static_cast<double>(R.cols()));
  L = std::move(L2);
  R = std::move(R2);
}

Matrix random_stochastic_rows(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  Matrix M(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < cols; ++j) {
      M(i, j) = -std::log(rng.uniform_pos());  // Dirichlet(1) via exponentials
      sum += M(i, j);
    }
    M.row(i) /= sum;
  }
  return M;
}

Matrix random_vertex_rows(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  Matrix M = Matrix::Zero(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    M(i, static_cast<Eigen::Index>(rng.next() % static_cast<std::uint64_t>(cols))) = 1.0;
  return M;
}

// Match every row of C to the row of D with the nearest sorted entry profile.
// Sorting makes the match invariant under column permutations, so this lands
// the exact pre-processing for instances that are D with shuffled rows and
// columns.
Matrix row_profile_match(const Matrix& C, const Matrix& D) {
  Matrix L = Matrix::Zero(C.rows(), D.rows());
  std::vector<std::vector<double>> dsorted(static_cast<std::size_t>(D.rows()));
  for (Eigen::Index j = 0; j < D.rows(); ++j) {
    auto& v = dsorted[static_cast<std::size_t>(j)];
    v.assign(D.row(j).begin(), D.row(j).end());
    std::sort(v.begin(), v.end());
  }
  std::vector<double> c;
  for (Eigen::Index i = 0; i < C.rows(); ++i) {
    c.assign(C.row(i).begin(), C.row(i).end());
    std::sort(c.begin(), c.end());
    Eigen::Index best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < D.rows(); ++j) {
      double dist = 0.0;
      for (std::size_t k = 0; k < c.size(); ++k) {
        const double diff = c[k] - dsorted[static_cast<std::size_t>(j)][k];
        dist += diff * diff;
      }
      if (dist < best_dist) {
        best_dist = dist;
        best = j;
      }
    }
    L(i, best) = 1.0;
  }
  return L;
}

}  // namespace

MajorizationResult uw_leq_identity(const CommMatrix& C, int d, const Tolerances& tol,
                                   const std::optional<NmfConfig>& nmf_config) {
  if (d < 1) throw Error(Err::InvalidParams, "identity dimension must be >= 1");
  tol.check();

  // proved obstruction first; the reason names the bound that fires
  const BoundReport bounds = classical_dim_bounds(C, tol, std::nullopt);
  if (bounds.lb > d) {
    std::ostringstream os;
    os << to_string(bounds.lb_source()) << " lower bound " << bounds.lb << " exceeds d = " << d;
    return MajorizationResult{MajAnswer::No, std::nullopt, os.str()};
  }

  const Eigen::Index n = C.rows(), m = C.cols();
  const auto minnm = static_cast<int>(std::min(n, m));

  if (d >= minnm) {
    // exact witness: factor through the smaller side, then pad
    Matrix W, H;
    if (m <= n) {
      W = C.m;
      H = Matrix::Identity(m, m);
    } else {
      W = Matrix::Identity(n, n);
      H = C.m;
    }
    StochasticFactorization sf = stochastic_normalize(W, H, tol);
    pad_witness(sf.L, sf.R, d);
    const double res = (C.m - sf.L * sf.R).cwiseAbs().maxCoeff();
    return MajorizationResult{MajAnswer::Yes,
                              MajorizationWitness{std::move(sf.L), std::move(sf.R), res}, ""};
  }

  const NmfConfig cfg = nmf_config.value_or(NmfConfig{});
  const NmfResult res = nmf(C, d, cfg);
  if (res.success) {
    // the factorization is only target_residual-exact, so its product's row
    // sums drift by up to m * target from 1; normalize under that allowance
    Tolerances loose = tol;
    loose.row_sum_tol = std::max(
        tol.row_sum_tol, 4.0 * static_cast<double>(C.cols()) * cfg.target_residual + 1e-12);
    StochasticFactorization sf =
        stochastic_normalize(res.factorization.W, res.factorization.H, loose);
    for (Eigen::Index i = 0; i < sf.L.rows(); ++i) sf.L.row(i) /= sf.L.row(i).sum();
    pad_witness(sf.L, sf.R, d);
    const double r = (C.m - sf.L * sf.R).cwiseAbs().maxCoeff();
    return MajorizationResult{MajAnswer::Yes, MajorizationWitness{std::move(sf.L), std::move(sf.R), r},
                              ""};
  }
  std::ostringstream os;
  os << "nmf at inner dimension " << d << " reached residual " << res.factorization.residual
     << " only";
  return MajorizationResult{MajAnswer::Unknown, std::nullopt, os.str()};
}

MajorizationResult uw_leq(const CommMatrix& C, const CommMatrix& D, const Tolerances& tol,
                          const MajorizeConfig& config) {
  tol.check();
  if (config.max_alternations < 1 || config.restarts < 1)
    throw Error(Err::InvalidParams, "uw_leq needs positive alternations and restarts");

  const Eigen::Index nc = C.rows(), mc = C.cols();
  const Eigen::Index nd = D.rows(), md = D.cols();

  if (nc == nd && mc == md) {
    const double diff = (C.m - D.m).cwiseAbs().maxCoeff();
    if (diff <= tol.recon_tol) {
      return MajorizationResult{
          MajAnswer::Yes,
          MajorizationWitness{Matrix::Identity(nc, nd), Matrix::Identity(md, mc), diff}, ""};
    }
  }

  double best_residual = std::numeric_limits<double>::infinity();
  for (int t = 0; t < config.restarts; ++t) {
    Rng rng = Rng::derive(config.seed, static_cast<std::uint64_t>(t));
    Matrix L = Matrix::Constant(nc, nd, 1.0 / static_cast<double>(nd));
    Matrix R;
    bool solve_r_first = false;
    // restart schedule: uniform rows first, then the trivial pre/post
    // processing guesses where shapes allow, then random vertex and interior
    // points (solutions of the bilinear problem tend to sit on faces)
    if (t == 0) {
      R = Matrix::Constant(md, mc, 1.0 / static_cast<double>(mc));
    } else if (t == 1 && md == mc) {
      R = Matrix::Identity(md, mc);
    } else if (t == 2 && nc == nd) {
      L = Matrix::Identity(nc, nd);
      R = Matrix::Constant(md, mc, 1.0 / static_cast<double>(mc));
      solve_r_first = true;
    } else if (t == 3 && mc == md) {
      L = row_profile_match(C.m, D.m);
      R = Matrix::Constant(md, mc, 1.0 / static_cast<double>(mc));
      solve_r_first = true;
    } else if (t % 2 == 1) {
      R = random_vertex_rows(md, mc, rng);
    } else {
      R = random_stochastic_rows(md, mc, rng);
    }
    if (solve_r_first) solve_right_stochastic(C.m, L * D.m, R, config.inner_iterations);

    double prev = std::numeric_limits<double>::infinity();
    int stall = 0;
    for (int alt = 0; alt < config.max_alternations; ++alt) {
      solve_left_stochastic(C.m, D.m * R, L, config.inner_iterations);
      solve_right_stochastic(C.m, L * D.m, R, config.inner_iterations);
      const double res = (C.m - L * D.m * R).cwiseAbs().maxCoeff();
      if (res <= tol.recon_tol)
        return MajorizationResult{MajAnswer::Yes,
                                  MajorizationWitness{std::move(L), std::move(R), res}, ""};
      if (prev - res < 1e-14) {
        if (++stall >= 10) break;
      } else {
        stall = 0;
      }
      prev = std::min(prev, res);
      best_residual = std::min(best_residual, res);
    }
  }

  std::ostringstream os;
  os << "alternating search reached residual " << best_residual << " only";
  return MajorizationResult{MajAnswer::Unknown, std::nullopt, os.str()};
}

bool uw_equivalent_deterministic(const CommMatrix& C, const CommMatrix& D,
                                 const Tolerances& tol) {
  return deterministic_dimension(C, tol) == deterministic_dimension(D, tol);
}

}  // namespace commdim
