#include <doctest.h>

#include "commdim/ensembles.hpp"
#include "commdim/factor.hpp"
#include "commdim/shared_randomness.hpp"
#include "test_support.hpp"

using namespace commdim;
using test_support::error_code_of;

namespace {

SRProtocol random_protocol(std::uint64_t seed) {
  Rng rng = Rng::derive(97, seed);
  const int k = 1 + static_cast<int>(rng.next() % 5);
  const int d = 1 + static_cast<int>(rng.next() % 4);
  const auto n = static_cast<Eigen::Index>(2 + rng.next() % 7);
  const auto m = static_cast<Eigen::Index>(2 + rng.next() % 7);
  const auto weights = test_support::random_weights(k, rng);
  SRProtocol p;
  p.d = d;
  for (int kk = 0; kk < k; ++kk) {
    SRPart part;
    part.weight = weights[static_cast<std::size_t>(kk)];
    part.impl.L = test_support::random_stochastic(n, d, rng);
    part.impl.R = test_support::random_stochastic(d, m, rng);
    p.parts.push_back(std::move(part));
  }
  return p;
}

}  // namespace

TEST_CASE("mix of a single part is the part itself") {
  SRProtocol p;
  p.d = 2;
  p.parts.push_back(SRPart{1.0, {gate_matrix(Gate::AMBIG3).m, Matrix::Identity(2, 2)}});
  const CommMatrix M = mix(p);
  CHECK((M.m - gate_matrix(Gate::AMBIG3).m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("uniform mixture of identity and NOT flattens") {
  SRProtocol p;
  p.d = 2;
  p.parts.push_back(SRPart{0.5, {Matrix::Identity(2, 2), Matrix::Identity(2, 2)}});
  p.parts.push_back(SRPart{0.5, {gate_matrix(Gate::NOT).m, Matrix::Identity(2, 2)}});
  const CommMatrix M = mix(p);
  CHECK((M.m - Matrix{{0.5, 0.5}, {0.5, 0.5}}).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("block factorization has inner dimension d*k and reproduces the mixture") {
  const SRProtocol p = random_protocol(1);
  const StochasticFactorization bf = block_factorization(p);
  CHECK(bf.L.cols() == p.d * static_cast<Eigen::Index>(p.parts.size()));
  CHECK((bf.L * bf.R - mix(p).m).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("three bit-pair parts built from the explicit A_7 factorization") {
  const auto [W, H] = a7_explicit();
  const StochasticFactorization sf = stochastic_normalize(W, H);

  SRProtocol p;
  p.d = 2;
  for (int kk = 0; kk < 3; ++kk) {
    const Matrix P = sf.L.middleCols(2 * kk, 2);  // a pair of inner symbols
    SRPart part;
    part.weight = P.sum() / static_cast<double>(P.rows());
    Matrix Lk(P.rows(), 2);
    for (Eigen::Index i = 0; i < P.rows(); ++i) {
      const double s = P.row(i).sum();
      if (s > 1e-15)
        Lk.row(i) = P.row(i) / s;
      else
        Lk.row(i).setConstant(0.5);
    }
    part.impl.L = Lk;
    part.impl.R = sf.R.middleRows(2 * kk, 2);
    p.parts.push_back(std::move(part));
  }

  // weights sum to 1 because every row of L sums to 1 across the three pairs
  const StochasticFactorization bf = block_factorization(p);
  CHECK(bf.L.cols() == 6);  // consistent with the rank-6 sandwich for A_7
  CHECK((bf.L * bf.R - mix(p).m).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("mixture identity over 100 random protocols") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const SRProtocol p = random_protocol(seed);
    const StochasticFactorization bf = block_factorization(p);
    CHECK(bf.L.cols() == p.d * static_cast<Eigen::Index>(p.parts.size()));
    CHECK((bf.L * bf.R - mix(p).m).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("minimal coordinated actions") {
  CHECK(min_coordinated_actions(6, 2) == 3);
  CHECK(min_coordinated_actions(4, 4) == 1);
  const long long expected[] = {1, 2, 2, 3, 3};  // ceil(m/2) for m = 2..6
  for (long long m = 2; m <= 6; ++m) CHECK(min_coordinated_actions(m, 2) == expected[m - 2]);
  for (long long lb = 1; lb < 20; ++lb)
    CHECK(min_coordinated_actions(lb, 3) <= min_coordinated_actions(lb + 1, 3));
  for (long long d = 1; d < 8; ++d)
    CHECK(min_coordinated_actions(10, d) >= min_coordinated_actions(10, d + 1));
  CHECK(error_code_of([] { min_coordinated_actions(0, 2); }) == Err::InvalidParams);
}

TEST_CASE("protocol validation rejects bad weights and shapes") {
  SRProtocol neg;
  neg.d = 2;
  neg.parts.push_back(SRPart{1.5, {Matrix::Identity(2, 2), Matrix::Identity(2, 2)}});
  neg.parts.push_back(SRPart{-0.5, {Matrix::Identity(2, 2), Matrix::Identity(2, 2)}});
  CHECK(error_code_of([&] { mix(neg); }) == Err::InvalidParams);

  SRProtocol sum;
  sum.d = 2;
  sum.parts.push_back(SRPart{0.4, {Matrix::Identity(2, 2), Matrix::Identity(2, 2)}});
  sum.parts.push_back(SRPart{0.4, {Matrix::Identity(2, 2), Matrix::Identity(2, 2)}});
  CHECK(error_code_of([&] { mix(sum); }) == Err::InvalidParams);

  SRProtocol shape;
  shape.d = 2;
  shape.parts.push_back(SRPart{0.5, {Matrix::Identity(2, 2), Matrix::Identity(2, 2)}});
  shape.parts.push_back(SRPart{0.5, {Matrix::Identity(3, 3), Matrix::Identity(3, 3)}});
  CHECK(error_code_of([&] { mix(shape); }) == Err::ShapeMismatch);
}
