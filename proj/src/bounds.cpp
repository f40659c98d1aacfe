#include "commdim/bounds.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <sstream>
#include <vector>

#include "commdim/ensembles.hpp"

namespace commdim {

const char* to_string(LowerSource s) {
  switch (s) {
    case LowerSource::RANK: return "RANK";
    case LowerSource::FACES_PHI_PRIME: return "FACES_PHI_PRIME";
    case LowerSource::FACES_PHI_R: return "FACES_PHI_R";
    case LowerSource::LOG2_RNRANK: return "LOG2_RNRANK";
  }
  return "?";
}

const char* to_string(UpperSource s) {
  switch (s) {
    case UpperSource::SIZE: return "SIZE";
    case UpperSource::NMF: return "NMF";
    case UpperSource::EXPLICIT: return "EXPLICIT";
  }
  return "?";
}

LowerSource BoundReport::lb_source() const {
  for (const auto& b : lower_bounds)
    if (b.value == lb) return b.source;
  return LowerSource::RANK;
}

namespace {

using u128 = unsigned __int128;

constexpr long long kMaxLL = std::numeric_limits<long long>::max();

// Exact binomial; the multiplicative form keeps every intermediate an integer.
long long binomial(long long p, long long q) {
  if (q < 0 || q > p) return 0;
  q = std::min(q, p - q);
  u128 acc = 1;
  for (long long i = 1; i <= q; ++i) {
    acc = acc * static_cast<u128>(p - q + i) / static_cast<u128>(i);
    if (acc > static_cast<u128>(kMaxLL))
      throw Error(Err::Overflow, "binomial coefficient exceeds 64-bit range");
  }
  return static_cast<long long>(acc);
}

long long checked_to_ll(u128 v, const char* what) {
  if (v > static_cast<u128>(kMaxLL)) throw Error(Err::Overflow, what);
  return static_cast<long long>(v);
}

// faces() extended with the "whole polytope" convention faces(n, d, d) = 1,
// used by the phi scans where face_dim can hit the dimension itself.
long long faces_or_polytope(long long n, long long d, long long k) {
  return k == d ? 1 : faces(n, d, k);
}

}  // namespace

long long faces(long long n, long long d, long long k) {
  if (d < 0 || n < d + 1 || k < 0 || k > d - 1) {
    std::ostringstream os;
    os << "faces(" << n << ", " << d << ", " << k << ") out of range";
    throw Error(Err::InvalidParams, os.str());
  }

  u128 total = 0;
  const long long half = d / 2;
  for (long long i = 0; i <= half; ++i) {
    const u128 mult = static_cast<u128>(binomial(n - d - 1 + i, i));
    if (d % 2 == 0 && i == half) {
      // at i = d/2 the two binomials coincide, so half the term is one of them
      total += static_cast<u128>(binomial(d - i, k + 1 - i)) * mult;
    } else {
      const u128 pair = static_cast<u128>(binomial(d - i, k + 1 - i)) +
                        static_cast<u128>(binomial(i, k + 1 - d + i));
      total += pair * mult;
    }
    // keep the running sum within 64 bits so it cannot wrap across terms
    total = static_cast<u128>(checked_to_ll(total, "face count exceeds 64-bit range"));
  }
  return static_cast<long long>(total);
}

long long phi_r(long long r_plus, long long r) {
  if (r < 1 || r > r_plus) throw Error(Err::InvalidParams, "phi_r needs 1 <= r <= r_plus");
  long long best = 0;
  for (long long ru = r; ru <= r_plus; ++ru)
    best = std::max(best, faces_or_polytope(r_plus, ru - 1, ru - r));
  return best;
}

long long phi_prime(long long r_plus) {
  if (r_plus < 3) throw Error(Err::InvalidParams, "phi_prime needs r_plus >= 3");
  long long best = 0;
  for (long long ru = 3; ru <= r_plus; ++ru) {
    const long long f0 = faces_or_polytope(r_plus, ru - 1, ru - 3);
    const long long f1 = faces_or_polytope(r_plus, ru - 1, ru - 2);
    best = std::max(best, std::min(f0, f1));
  }
  return best;
}

bool column_sparsity_disjoint(const CommMatrix& C, const Tolerances& tol) {
  tol.check();
  const Eigen::Index n = C.rows(), m = C.cols();
  std::vector<std::vector<bool>> zero(static_cast<std::size_t>(m),
                                      std::vector<bool>(static_cast<std::size_t>(n)));
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      zero[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
          C.m(i, j) < tol.nonneg_tol;

  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) {
      if (a == b) continue;
      bool subset = true;
      for (Eigen::Index i = 0; i < n && subset; ++i)
        if (zero[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] &&
            !zero[static_cast<std::size_t>(b)][static_cast<std::size_t>(i)])
          subset = false;
      if (subset) return false;  // zero set of column a contained in column b's
    }
  }
  return true;
}

long long rnrank_rank3_disjoint(const CommMatrix& C, const Tolerances& tol) {
  if (C.rows() != C.cols())
    throw Error(Err::PreconditionFailed, "matrix is not square");
  const int r = numerical_rank(C, tol);
  if (r != 3) {
    std::ostringstream os;
    os << "numerical rank is " << r << ", need 3";
    throw Error(Err::PreconditionFailed, os.str());
  }
  if (!column_sparsity_disjoint(C, tol))
    throw Error(Err::PreconditionFailed, "column sparsity patterns are not disjoint");
  return C.rows();
}

long long nrank_lb_from_rnrank(long long rnrank_value, long long rank) {
  if (rank < 1 || rnrank_value < rank)
    throw Error(Err::InvalidParams, "need rnrank_value >= rank >= 1");
  // phi grows at least linearly in r_plus for rank >= 2, so r_plus =
  // rnrank_value always terminates the scan; rank 1 only admits rnrank 1.
  const long long cap = std::max(rank, rnrank_value);
  for (long long rp = rank; rp <= cap; ++rp) {
    const long long bound = (rank == 3) ? phi_prime(rp) : phi_r(rp, rank);
    if (bound >= rnrank_value) return rp;
  }
  throw Error(Err::InvalidParams, "no r_plus satisfies the face bound");
}

int nrank_lb_log(long long rnrank_value) {
  if (rnrank_value < 1) throw Error(Err::InvalidParams, "need rnrank_value >= 1");
  const auto v = static_cast<unsigned long long>(rnrank_value);
  const int floor_log = std::bit_width(v) - 1;
  return floor_log + ((v & (v - 1)) != 0 ? 1 : 0);
}

BoundReport classical_dim_bounds(const CommMatrix& C, const Tolerances& tol,
                                 const std::optional<NmfConfig>& nmf_config) {
  BoundReport rep;
  rep.rank = numerical_rank(C, tol);
  rep.lower_bounds.push_back({rep.rank, LowerSource::RANK});

  if (C.rows() == C.cols() && rep.rank == 3 && column_sparsity_disjoint(C, tol)) {
    const long long rn = C.rows();
    rep.rnrank = rn;
    rep.lower_bounds.push_back({nrank_lb_from_rnrank(rn, 3), LowerSource::FACES_PHI_PRIME});
    rep.lower_bounds.push_back({nrank_lb_log(rn), LowerSource::LOG2_RNRANK});
  }

  rep.upper_bounds.push_back({std::min(C.rows(), C.cols()), UpperSource::SIZE});

  if (C.rows() == 7 && C.cols() == 7) {
    const CommMatrix a7 = antidist_matrix(7, tol);
    if ((C.m - a7.m).cwiseAbs().maxCoeff() <= tol.entry_eq_tol)
      rep.upper_bounds.push_back({6, UpperSource::EXPLICIT});
  }

  if (nmf_config) {
    const int hi = static_cast<int>(std::min(C.rows(), C.cols()));
    const int lo = std::max(1, rep.rank);
    if (auto r = nmf_rank_search(C, lo, hi, *nmf_config))
      rep.upper_bounds.push_back({*r, UpperSource::NMF});
  }

  rep.lb = 0;
  for (const auto& b : rep.lower_bounds) rep.lb = std::max(rep.lb, b.value);
  rep.ub = std::numeric_limits<long long>::max();
  for (const auto& b : rep.upper_bounds) rep.ub = std::min(rep.ub, b.value);
  return rep;
}

}  // namespace commdim
