#ifndef COMMDIM_FACTOR_HPP
#define COMMDIM_FACTOR_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "commdim/matrix.hpp"

namespace commdim {

struct NmfConfig {
  int max_iter = 5000;
  int restarts = 32;
  std::uint64_t seed = 42;
  double target_residual = 1e-6;  // max-entry norm of C - W H
  int threads = 0;                // <= 0: hardware concurrency
};

struct NonnegFactorization {
  Matrix W;  // n x r
  Matrix H;  // r x m
  double residual = 0.0;
  int inner_dim = 0;
  std::uint64_t seed = 0;
  int iterations = 0;
  int restarts_used = 0;
};

struct NmfResult {
  bool success = false;  // residual <= target; failure still carries the best attempt
  NonnegFactorization factorization;
};

/// Row-stochastic pair certifying a classical implementation: C = L I_d R.
struct StochasticFactorization {
  Matrix L;  // n x d
  Matrix R;  // d x m
};

struct FactorizationReport {
  double min_entry = 0.0;
  double residual = 0.0;
  bool nonneg_ok = false;
  bool residual_ok = false;
  bool pass = false;
  std::vector<std::string> violations;
};

/// Multi-restart HALS with multiplicative fallback for degenerate columns.
/// Restart t draws its stream from (seed, t); the merge takes the lowest
/// residual, ties broken by lowest restart index, so the result does not
/// depend on scheduling.
NmfResult nmf(const CommMatrix& C, int r, const NmfConfig& config = {});

/// Smallest r in [r_lo, r_hi] whose factorization reaches the target residual.
std::optional<int> nmf_rank_search(const CommMatrix& C, int r_lo, int r_hi,
                                   const NmfConfig& config = {});

/// Rescale a nonnegative factorization of a row-stochastic product into a pair
/// of row-stochastic factors, dropping dead inner dimensions.
StochasticFactorization stochastic_normalize(const Matrix& W, const Matrix& H,
                                             const Tolerances& tol = {});

/// The built-in exact 7x6 * 6x7 factorization of antidist_matrix(7).
std::pair<Matrix, Matrix> a7_explicit();

FactorizationReport verify_factorization(const CommMatrix& C, const Matrix& W,
                                         const Matrix& H, const Tolerances& tol = {});

}  // namespace commdim

#endif
