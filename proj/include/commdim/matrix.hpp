#ifndef COMMDIM_MATRIX_HPP
#define COMMDIM_MATRIX_HPP

#include <Eigen/Dense>

#include "commdim/types.hpp"

namespace commdim {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Row-stochastic matrix of conditional probabilities C(a,b) = p(b|a).
/// Build one through validate(); everything downstream assumes the
/// invariants (entries >= 0, rows sum to 1 within row_sum_tol) hold.
struct CommMatrix {
  Matrix m;

  Eigen::Index rows() const { return m.rows(); }
  Eigen::Index cols() const { return m.cols(); }
  double operator()(Eigen::Index a, Eigen::Index b) const { return m(a, b); }
};

/// Canonical-form reduction: zero columns removed, duplicate rows collapsed
/// onto their first occurrence. The 0/1 selectors reconstruct the input:
/// row_selector * reduced * col_injector == original.
struct ReductionResult {
  CommMatrix reduced;
  Matrix row_selector;  // n x n'
  Matrix col_injector;  // m' x m
};

CommMatrix validate(const Matrix& raw, const Tolerances& tol = {});

/// Singular values above rank_rel_tol * sigma_max.
int numerical_rank(const CommMatrix& M, const Tolerances& tol = {});

ReductionResult reduce(const CommMatrix& C, const Tolerances& tol = {});

/// Every entry within entry_eq_tol of 0 or 1.
bool is_deterministic(const CommMatrix& C, const Tolerances& tol = {});

/// Size of the permuted identity a deterministic matrix reduces to.
int deterministic_dimension(const CommMatrix& C, const Tolerances& tol = {});

}  // namespace commdim

#endif
