#include "commdim/matrix.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <sstream>
#include <vector>

namespace commdim {

CommMatrix validate(const Matrix& raw, const Tolerances& tol) {
  tol.check();
  if (raw.rows() < 1 || raw.cols() < 1)
    throw Error(Err::InvalidSize, "matrix must have at least one row and one column");

  Matrix m = raw;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double e = m(i, j);
      if (e < -tol.nonneg_tol) {
        std::ostringstream os;
        os << "negative entry " << e << " at (" << i + 1 << ", " << j + 1 << ")";
        throw Error(Err::NegativeEntry, os.str());
      }
      if (e < 0.0) m(i, j) = 0.0;
    }
    const double s = m.row(i).sum();
    if (std::abs(s - 1.0) > tol.row_sum_tol) {
      std::ostringstream os;
      os << "row " << i + 1 << " sums to " << s << ", expected 1";
      throw Error(Err::RowSumViolation, os.str());
    }
  }
  return CommMatrix{std::move(m)};
}

int numerical_rank(const CommMatrix& M, const Tolerances& tol) {
  tol.check();
  Eigen::JacobiSVD<Matrix> svd(M.m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const double cutoff = tol.rank_rel_tol * sv(0);
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++r;
  return r;
}

ReductionResult reduce(const CommMatrix& C, const Tolerances& tol) {
  tol.check();
  const Matrix& M = C.m;
  const Eigen::Index n = M.rows(), m = M.cols();

  std::vector<Eigen::Index> kept_cols;
  for (Eigen::Index j = 0; j < m; ++j)
    if (M.col(j).maxCoeff() >= tol.nonneg_tol) kept_cols.push_back(j);
  // a valid CommMatrix always keeps at least one column (rows sum to 1)

  Matrix T(n, static_cast<Eigen::Index>(kept_cols.size()));
  for (std::size_t j = 0; j < kept_cols.size(); ++j) T.col(j) = M.col(kept_cols[j]);

  // duplicate rows collapse onto their first occurrence
  std::vector<Eigen::Index> kept_rows;   // representative original index per class
  std::vector<Eigen::Index> row_class(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index cls = -1;
    for (std::size_t k = 0; k < kept_rows.size(); ++k) {
      if ((T.row(i) - T.row(kept_rows[k])).cwiseAbs().maxCoeff() <= tol.entry_eq_tol) {
        cls = static_cast<Eigen::Index>(k);
        break;
      }
    }
    if (cls < 0) {
      cls = static_cast<Eigen::Index>(kept_rows.size());
      kept_rows.push_back(i);
    }
    row_class[i] = cls;
  }

  const Eigen::Index np = static_cast<Eigen::Index>(kept_rows.size());
  const Eigen::Index mp = static_cast<Eigen::Index>(kept_cols.size());

  Matrix reduced(np, mp);
  for (Eigen::Index k = 0; k < np; ++k) reduced.row(k) = T.row(kept_rows[k]);

  Matrix row_selector = Matrix::Zero(n, np);
  for (Eigen::Index i = 0; i < n; ++i) row_selector(i, row_class[i]) = 1.0;

  Matrix col_injector = Matrix::Zero(mp, m);
  for (Eigen::Index k = 0; k < mp; ++k) col_injector(k, kept_cols[k]) = 1.0;

  return ReductionResult{validate(reduced, tol), std::move(row_selector), std::move(col_injector)};
}

bool is_deterministic(const CommMatrix& C, const Tolerances& tol) {
  tol.check();
  for (Eigen::Index i = 0; i < C.rows(); ++i)
    for (Eigen::Index j = 0; j < C.cols(); ++j) {
      const double e = C.m(i, j);
      if (std::abs(e) > tol.entry_eq_tol && std::abs(e - 1.0) > tol.entry_eq_tol) return false;
    }
  return true;
}

int deterministic_dimension(const CommMatrix& C, const Tolerances& tol) {
  if (!is_deterministic(C, tol))
    throw Error(Err::NotDeterministic, "matrix has entries away from 0 and 1");

  const ReductionResult red = reduce(C, tol);
  const Matrix& D = red.reduced.m;
  if (D.rows() != D.cols())
    throw Error(Err::NotPermutation, "reduced matrix is not square");

  const Eigen::Index d = D.rows();
  std::vector<int> col_hits(d, 0);
  for (Eigen::Index i = 0; i < d; ++i) {
    int ones = 0;
    for (Eigen::Index j = 0; j < d; ++j) {
      if (std::abs(D(i, j) - 1.0) <= tol.entry_eq_tol) {
        ++ones;
        ++col_hits[j];
      } else if (std::abs(D(i, j)) > tol.entry_eq_tol) {
        throw Error(Err::NotPermutation, "reduced matrix has a non 0/1 entry");
      }
    }
    if (ones != 1) throw Error(Err::NotPermutation, "reduced matrix row is not a unit vector");
  }
  for (int h : col_hits)
    if (h != 1) throw Error(Err::NotPermutation, "reduced matrix column is not a unit vector");

  return static_cast<int>(d);
}

}  // namespace commdim
