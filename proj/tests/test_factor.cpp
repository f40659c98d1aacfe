#include <doctest.h>

#include "commdim/ensembles.hpp"
#include "commdim/factor.hpp"
#include "test_support.hpp"

using namespace commdim;
using test_support::error_code_of;

TEST_CASE("explicit A_7 factorization") {
  const auto [W, H] = a7_explicit();
  REQUIRE(W.rows() == 7);
  REQUIRE(W.cols() == 6);
  REQUIRE(H.rows() == 6);
  REQUIRE(H.cols() == 7);

  CHECK(W(0, 0) == doctest::Approx(0.5431339622578341).epsilon(1e-14));  // 2k
  CHECK(W.minCoeff() >= 0.0);
  CHECK(H.minCoeff() >= 0.0);
  for (Eigen::Index l = 0; l < 6; ++l)
    CHECK(H.row(l).sum() == doctest::Approx(1.0).epsilon(1e-12));
  for (Eigen::Index i = 0; i < 7; ++i)
    CHECK(W.row(i).sum() == doctest::Approx(1.0).epsilon(1e-12));

  const FactorizationReport rep = verify_factorization(antidist_matrix(7), W, H);
  CHECK(rep.pass);
  CHECK(rep.residual <= 1e-10);
}

TEST_CASE("verify_factorization flags violations") {
  const CommMatrix I2 = validate(Matrix::Identity(2, 2));
  const FactorizationReport ok = verify_factorization(I2, Matrix::Identity(2, 2),
                                                      Matrix::Identity(2, 2));
  CHECK(ok.pass);
  CHECK(ok.residual == 0.0);

  const auto [W, H] = a7_explicit();
  Matrix Wbad = W;
  Wbad(0, 0) = -Wbad(0, 0);
  const FactorizationReport bad = verify_factorization(antidist_matrix(7), Wbad, H);
  CHECK_FALSE(bad.nonneg_ok);
  CHECK_FALSE(bad.pass);
  CHECK(!bad.violations.empty());

  CHECK(error_code_of([&] {
          verify_factorization(antidist_matrix(7), W.topRows(6), H);
        }) == Err::ShapeMismatch);
}

TEST_CASE("nmf factors the identity exactly") {
  NmfConfig cfg;
  cfg.target_residual = 1e-10;
  const NmfResult res = nmf(validate(Matrix::Identity(3, 3)), 3, cfg);
  CHECK(res.success);
  CHECK(res.factorization.residual <= 1e-10);
  CHECK(res.factorization.W.minCoeff() >= 0.0);
  CHECK(res.factorization.H.minCoeff() >= 0.0);
}

TEST_CASE("nmf is deterministic, independent of thread count") {
  const CommMatrix A7 = antidist_matrix(7);
  NmfConfig cfg;
  cfg.restarts = 4;
  cfg.max_iter = 300;
  cfg.seed = 9001;

  const NmfResult a = nmf(A7, 5, cfg);
  const NmfResult b = nmf(A7, 5, cfg);
  NmfConfig cfg1 = cfg;
  cfg1.threads = 1;
  const NmfResult c = nmf(A7, 5, cfg1);

  CHECK(a.factorization.residual == b.factorization.residual);
  CHECK((a.factorization.W - b.factorization.W).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.factorization.H - b.factorization.H).cwiseAbs().maxCoeff() == 0.0);
  CHECK(a.factorization.residual == c.factorization.residual);
  CHECK((a.factorization.W - c.factorization.W).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("nmf on A_7: succeeds at r = 6, fails at r = 3") {
  const CommMatrix A7 = antidist_matrix(7);

  const NmfResult six = nmf(A7, 6);
  CHECK(six.success);
  CHECK(six.factorization.residual <= 1e-6);
  const FactorizationReport rep =
      verify_factorization(A7, six.factorization.W, six.factorization.H,
                           Tolerances{.recon_tol = 1e-6});
  CHECK(rep.pass);

  const NmfResult three = nmf(A7, 3);
  CHECK_FALSE(three.success);
  CHECK(three.factorization.residual > 1e-6);  // best residual is still reported
}

TEST_CASE("nmf rank search") {
  CHECK(nmf_rank_search(validate(Matrix::Identity(4, 4)), 1, 4) == 4);
  CHECK(nmf_rank_search(gate_matrix(Gate::AMBIG3), 1, 2) == 2);
  CHECK(nmf_rank_search(antidist_matrix(7), 3, 7) == 6);
  CHECK(error_code_of([] {
          nmf_rank_search(gate_matrix(Gate::AMBIG3), 2, 1);
        }) == Err::InvalidParams);
}

TEST_CASE("rank search never undercuts the linear rank") {
  for (int trial = 0; trial < 6; ++trial) {
    Rng rng = Rng::derive(47, static_cast<std::uint64_t>(trial));
    const auto n = static_cast<Eigen::Index>(2 + rng.next() % 4);
    const auto m = static_cast<Eigen::Index>(2 + rng.next() % 4);
    const CommMatrix C = validate(test_support::random_stochastic(n, m, rng));
    NmfConfig cfg;
    cfg.restarts = 8;
    if (const auto r = nmf_rank_search(C, 1, static_cast<int>(std::min(n, m)), cfg))
      CHECK(*r >= numerical_rank(C));
  }
}

TEST_CASE("nmf rejects out-of-range inner dimension") {
  CHECK(error_code_of([] { nmf(gate_matrix(Gate::AMBIG3), 3); }) == Err::InvalidParams);
  CHECK(error_code_of([] { nmf(gate_matrix(Gate::AMBIG3), 0); }) == Err::InvalidParams);
}

TEST_CASE("stochastic normalization rescales and drops dead rows") {
  const StochasticFactorization sf =
      stochastic_normalize(Matrix{{2, 0}, {0, 2}}, 0.5 * Matrix::Identity(2, 2));
  CHECK((sf.L - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((sf.R - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);

  const StochasticFactorization dead =
      stochastic_normalize(Matrix{{1, 0}, {1, 0}}, Matrix{{1, 0}, {0, 0}});
  CHECK(dead.L.cols() == 1);
  CHECK(dead.R.rows() == 1);
  CHECK((dead.L * dead.R - Matrix{{1, 0}, {1, 0}}).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("stochastic normalization rejections") {
  CHECK(error_code_of([] {
          stochastic_normalize(Matrix{{-1, 2}, {0, 2}}, 0.5 * Matrix::Identity(2, 2));
        }) == Err::NotStochasticProduct);
  CHECK(error_code_of([] {
          stochastic_normalize(Matrix::Identity(2, 2), Matrix{{1, 0}, {0, 2}});
        }) == Err::NotStochasticProduct);
  CHECK(error_code_of([] {
          stochastic_normalize(Matrix::Identity(2, 2), Matrix::Identity(3, 3));
        }) == Err::ShapeMismatch);
}

TEST_CASE("the explicit A_7 factors normalize to a stochastic pair reproducing A_7") {
  const auto [W, H] = a7_explicit();
  const StochasticFactorization sf = stochastic_normalize(W, H);
  CHECK(sf.L.rows() == 7);
  CHECK(sf.L.cols() == 6);
  CHECK(sf.R.rows() == 6);
  CHECK(sf.R.cols() == 7);
  CHECK((sf.L * sf.R - antidist_matrix(7).m).cwiseAbs().maxCoeff() <= 1e-10);
  for (Eigen::Index l = 0; l < 6; ++l)
    CHECK(sf.R.row(l).sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("stochastic normalization preserves the product on random inputs") {
  for (int trial = 0; trial < 100; ++trial) {
    Rng rng = Rng::derive(23, static_cast<std::uint64_t>(trial));
    const auto n = static_cast<Eigen::Index>(2 + rng.next() % 5);
    const auto d = static_cast<Eigen::Index>(1 + rng.next() % 4);
    const auto m = static_cast<Eigen::Index>(2 + rng.next() % 5);
    const Matrix L0 = test_support::random_stochastic(n, d, rng);
    const Matrix R0 = test_support::random_stochastic(d, m, rng);
    // scale inner dimensions: W H stays row-stochastic
    Matrix W = L0, H = R0;
    for (Eigen::Index l = 0; l < d; ++l) {
      const double s = 0.25 + 1.5 * rng.uniform01();
      W.col(l) *= s;
      H.row(l) /= s;
    }
    const StochasticFactorization sf = stochastic_normalize(W, H);
    CHECK((sf.L * sf.R - W * H).cwiseAbs().maxCoeff() <= 1e-10);
    for (Eigen::Index i = 0; i < sf.L.rows(); ++i)
      CHECK(sf.L.row(i).sum() == doctest::Approx(1.0).epsilon(1e-9));
    for (Eigen::Index l = 0; l < sf.R.rows(); ++l)
      CHECK(sf.R.row(l).sum() == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("nmf success implies a passing verification at the same tolerance") {
  for (int trial = 0; trial < 5; ++trial) {
    Rng rng = Rng::derive(31, static_cast<std::uint64_t>(trial));
    const auto n = static_cast<Eigen::Index>(2 + rng.next() % 4);
    const auto m = static_cast<Eigen::Index>(2 + rng.next() % 4);
    const CommMatrix C = validate(test_support::random_stochastic(n, m, rng));
    const int r = static_cast<int>(std::min(n, m));
    const NmfResult res = nmf(C, r);
    if (res.success) {
      Tolerances tol;
      tol.recon_tol = 1e-6;
      CHECK(verify_factorization(C, res.factorization.W, res.factorization.H, tol).pass);
    }
  }
}
