#include "commdim/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace commdim {

void project_row_simplex(Eigen::Ref<Eigen::RowVectorXd> v) {
  const Eigen::Index p = v.size();
  std::vector<double> u(v.data(), v.data() + p);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double css = 0.0, tau = 0.0;
  for (Eigen::Index j = 0; j < p; ++j) {
    css += u[static_cast<std::size_t>(j)];
    const double t = (css - 1.0) / static_cast<double>(j + 1);
    if (u[static_cast<std::size_t>(j)] - t > 0.0) tau = t;
  }
  for (Eigen::Index i = 0; i < p; ++i) v(i) = std::max(v(i) - tau, 0.0);
}

namespace {

constexpr double kSupportEps = 1e-11;
constexpr double kNegDrop = -1e-12;
constexpr int kPolishRounds = 64;
constexpr int kMaxPolishSystem = 600;

double row_objective(const Matrix& G, const Eigen::RowVectorXd& c, const Eigen::RowVectorXd& x) {
  return 0.5 * (x * G).dot(x) - c.dot(x);
}

// FISTA on 0.5 x G x^T - c x^T over the simplex.
void fista_row(const Matrix& G, const Eigen::RowVectorXd& c, Eigen::RowVectorXd& x, double lip,
               int iters) {
  project_row_simplex(x);
  if (lip <= 0.0 || iters <= 0) return;
  Eigen::RowVectorXd cur = x, y = x;
  double tk = 1.0;
  int quiet = 0;
  for (int it = 0; it < iters; ++it) {
    Eigen::RowVectorXd xn = y - (y * G - c) / lip;
    project_row_simplex(xn);
    const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * tk * tk));
    y = xn + ((tk - 1.0) / tn) * (xn - cur);
    const double step = (xn - cur).cwiseAbs().maxCoeff();
    cur = xn;
    tk = tn;
    if (step < 1e-15) {
      if (++quiet >= 3) break;
    } else {
      quiet = 0;
    }
  }
  x = cur;
}

// Exact KKT solve on the identified support. Drops negative coordinates one
// at a time; accepts only if the quadratic objective does not get worse.
void polish_row(const Matrix& G, const Eigen::RowVectorXd& c, Eigen::RowVectorXd& x) {
  const Eigen::Index p = x.size();
  std::vector<Eigen::Index> support;
  for (Eigen::Index l = 0; l < p; ++l)
    if (x(l) > kSupportEps) support.push_back(l);
  if (support.empty()) return;

  const double base_obj = row_objective(G, c, x);
  for (int round = 0; round < kPolishRounds && !support.empty(); ++round) {
    const auto s = static_cast<Eigen::Index>(support.size());
    Matrix K = Matrix::Zero(s + 1, s + 1);
    Vector rhs(s + 1);
    for (Eigen::Index a = 0; a < s; ++a) {
      for (Eigen::Index b = 0; b < s; ++b)
        K(a, b) = G(support[static_cast<std::size_t>(a)], support[static_cast<std::size_t>(b)]);
      K(a, s) = 1.0;
      K(s, a) = 1.0;
      rhs(a) = c(support[static_cast<std::size_t>(a)]);
    }
    rhs(s) = 1.0;

    const Vector sol = K.completeOrthogonalDecomposition().solve(rhs);
    if ((K * sol - rhs).cwiseAbs().maxCoeff() > 1e-9) return;  // inconsistent system

    Eigen::Index worst = -1;
    double worst_val = kNegDrop;
    for (Eigen::Index a = 0; a < s; ++a)
      if (sol(a) < worst_val) {
        worst_val = sol(a);
        worst = a;
      }
    if (worst >= 0) {
      support.erase(support.begin() + worst);
      continue;
    }

    Eigen::RowVectorXd cand = Eigen::RowVectorXd::Zero(p);
    for (Eigen::Index a = 0; a < s; ++a)
      cand(support[static_cast<std::size_t>(a)]) = std::max(sol(a), 0.0);
    const double csum = cand.sum();
    if (csum > 0.5) cand /= csum;
    if (row_objective(G, c, cand) <= base_obj + 1e-15 * (1.0 + std::abs(base_obj))) x = cand;
    return;
  }
}

}  // namespace

double solve_left_stochastic(const Matrix& A, const Matrix& B, Matrix& X, int max_iterations) {
  if (A.rows() != X.rows() || X.cols() != B.rows() || B.cols() != A.cols())
    throw Error(Err::ShapeMismatch, "solve_left_stochastic shape mismatch");

  const Matrix G = B * B.transpose();
  const double lip = G.cwiseAbs().rowwise().sum().maxCoeff();
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    const Eigen::RowVectorXd c = A.row(i) * B.transpose();
    Eigen::RowVectorXd x = X.row(i);
    fista_row(G, c, x, lip, max_iterations);
    polish_row(G, c, x);
    X.row(i) = x;
  }
  return (A - X * B).cwiseAbs().maxCoeff();
}

double solve_right_stochastic(const Matrix& A, const Matrix& B, Matrix& Y, int max_iterations) {
  if (A.rows() != B.rows() || B.cols() != Y.rows() || Y.cols() != A.cols())
    throw Error(Err::ShapeMismatch, "solve_right_stochastic shape mismatch");

  const Eigen::Index p = Y.rows(), q = Y.cols();
  const Matrix G = B.transpose() * B;
  const Matrix C2 = B.transpose() * A;
  const double lip = G.cwiseAbs().rowwise().sum().maxCoeff();

  for (Eigen::Index l = 0; l < p; ++l) {
    Eigen::RowVectorXd row = Y.row(l);
    project_row_simplex(row);
    Y.row(l) = row;
  }
  if (lip > 0.0 && max_iterations > 0) {
    Matrix cur = Y, y = Y;
    double tk = 1.0;
    int quiet = 0;
    for (int it = 0; it < max_iterations; ++it) {
      Matrix yn = y - (G * y - C2) / lip;
      for (Eigen::Index l = 0; l < p; ++l) {
        Eigen::RowVectorXd row = yn.row(l);
        project_row_simplex(row);
        yn.row(l) = row;
      }
      const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * tk * tk));
      y = yn + ((tk - 1.0) / tn) * (yn - cur);
      const double step = (yn - cur).cwiseAbs().maxCoeff();
      cur = yn;
      tk = tn;
      if (step < 1e-15) {
        if (++quiet >= 3) break;
      } else {
        quiet = 0;
      }
    }
    Y = cur;
  }

  // joint support polish: exact KKT point for the frozen sparsity pattern
  struct Entry {
    Eigen::Index l, j;
  };
  std::vector<Entry> support;
  std::vector<int> per_row(static_cast<std::size_t>(p), 0);
  for (Eigen::Index l = 0; l < p; ++l)
    for (Eigen::Index j = 0; j < q; ++j)
      if (Y(l, j) > kSupportEps) {
        support.push_back({l, j});
        ++per_row[static_cast<std::size_t>(l)];
      }
  const auto s = static_cast<Eigen::Index>(support.size());
  if (s == 0 || s + p > kMaxPolishSystem) return (A - B * Y).cwiseAbs().maxCoeff();
  for (int hits : per_row)
    if (hits == 0) return (A - B * Y).cwiseAbs().maxCoeff();

  const double base_obj = 0.5 * (A - B * Y).squaredNorm();
  std::vector<Entry> sup = support;
  for (int round = 0; round < kPolishRounds && !sup.empty(); ++round) {
    const auto sz = static_cast<Eigen::Index>(sup.size());
    Matrix K = Matrix::Zero(sz + p, sz + p);
    Vector rhs = Vector::Zero(sz + p);
    for (Eigen::Index a = 0; a < sz; ++a) {
      for (Eigen::Index b = 0; b < sz; ++b)
        if (sup[static_cast<std::size_t>(a)].j == sup[static_cast<std::size_t>(b)].j)
          K(a, b) = G(sup[static_cast<std::size_t>(a)].l, sup[static_cast<std::size_t>(b)].l);
      K(a, sz + sup[static_cast<std::size_t>(a)].l) = 1.0;
      K(sz + sup[static_cast<std::size_t>(a)].l, a) = 1.0;
      rhs(a) = C2(sup[static_cast<std::size_t>(a)].l, sup[static_cast<std::size_t>(a)].j);
    }
    for (Eigen::Index l = 0; l < p; ++l) rhs(sz + l) = 1.0;

    const Vector sol = K.completeOrthogonalDecomposition().solve(rhs);
    if ((K * sol - rhs).cwiseAbs().maxCoeff() > 1e-9) break;

    Eigen::Index worst = -1;
    double worst_val = kNegDrop;
    for (Eigen::Index a = 0; a < sz; ++a)
      if (sol(a) < worst_val) {
        worst_val = sol(a);
        worst = a;
      }
    if (worst >= 0) {
      // dropping the last entry of a row would make the row sum infeasible
      int remaining = 0;
      for (const auto& e : sup)
        if (e.l == sup[static_cast<std::size_t>(worst)].l) ++remaining;
      if (remaining <= 1) break;
      sup.erase(sup.begin() + worst);
      continue;
    }

    Matrix cand = Matrix::Zero(p, q);
    for (Eigen::Index a = 0; a < sz; ++a)
      cand(sup[static_cast<std::size_t>(a)].l, sup[static_cast<std::size_t>(a)].j) =
          std::max(sol(a), 0.0);
    for (Eigen::Index l = 0; l < p; ++l) {
      const double rs = cand.row(l).sum();
      if (rs > 0.5) cand.row(l) /= rs;
    }
    if (0.5 * (A - B * cand).squaredNorm() <= base_obj + 1e-15 * (1.0 + base_obj)) Y = cand;
    break;
  }

  return (A - B * Y).cwiseAbs().maxCoeff();
}

}  // namespace commdim
