#ifndef COMMDIM_SIMPLEX_HPP
#define COMMDIM_SIMPLEX_HPP

#include "commdim/matrix.hpp"

namespace commdim {

/// Euclidean projection onto { x >= 0, sum x = 1 }.
void project_row_simplex(Eigen::Ref<Eigen::RowVectorXd> v);

/// minimize ||A - X B||_F over X with every row on the probability simplex.
/// Rows decouple; each is solved by FISTA plus an active-set polish that lands
/// on the exact KKT point when the support is identified. X is warm-started
/// in place. Returns the final Frobenius-gradient-free objective residual
/// max-entry |A - X B|.
double solve_left_stochastic(const Matrix& A, const Matrix& B, Matrix& X, int max_iterations);

/// minimize ||A - B Y||_F over Y with every row on the probability simplex.
/// Rows are coupled through B; solved by matrix FISTA with per-row projection
/// and a joint KKT polish on the identified support (skipped for very large
/// supports). Returns max-entry |A - B Y|.
double solve_right_stochastic(const Matrix& A, const Matrix& B, Matrix& Y, int max_iterations);

}  // namespace commdim

#endif
