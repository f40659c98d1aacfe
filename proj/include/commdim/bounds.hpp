#ifndef COMMDIM_BOUNDS_HPP
#define COMMDIM_BOUNDS_HPP

#include <optional>
#include <vector>

#include "commdim/factor.hpp"
#include "commdim/matrix.hpp"

namespace commdim {

enum class LowerSource { RANK, FACES_PHI_PRIME, FACES_PHI_R, LOG2_RNRANK };
enum class UpperSource { SIZE, NMF, EXPLICIT };

const char* to_string(LowerSource s);
const char* to_string(UpperSource s);

struct LowerBound {
  long long value;
  LowerSource source;
};

struct UpperBound {
  long long value;
  UpperSource source;
};

/// Sandwich on the nonnegative rank (classical dimension) of a matrix.
struct BoundReport {
  int rank = 0;
  std::optional<long long> rnrank;  // restricted nonnegative rank, when derivable
  std::vector<LowerBound> lower_bounds;
  std::vector<UpperBound> upper_bounds;
  long long lb = 0;
  long long ub = 0;

  LowerSource lb_source() const;  // first source attaining lb
};

/// Maximal number of k-faces of a d-polytope with n vertices (cyclic polytope
/// count). Sum convention: terms i = 0..floor(d/2); for even d the i = d/2
/// term is halved. Exact integer arithmetic, overflow checked.
long long faces(long long n, long long d, long long k);

/// max over r <= r_u <= r_plus of faces(r_plus, r_u - 1, r_u - r).
long long phi_r(long long r_plus, long long r);

/// Sharper rank-3 variant: max over 3 <= r_u <= r_plus of
/// min_{i=0,1} faces(r_plus, r_u - 1, r_u - 3 + i).
long long phi_prime(long long r_plus);

/// True iff no column's zero set is contained in another column's zero set.
bool column_sparsity_disjoint(const CommMatrix& C, const Tolerances& tol = {});

/// Restricted nonnegative rank of a rank-3 square matrix with disjoint column
/// sparsity patterns: equals its size.
long long rnrank_rank3_disjoint(const CommMatrix& C, const Tolerances& tol = {});

/// Smallest r_plus >= rank whose face bound reaches rnrank_value; that value
/// lower-bounds the nonnegative rank. Uses phi_prime when rank == 3,
/// phi_r otherwise.
long long nrank_lb_from_rnrank(long long rnrank_value, long long rank);

/// ceil(log2(rnrank_value)), from rnrank <= 2^nrank.
int nrank_lb_log(long long rnrank_value);

/// Assemble every applicable lower/upper bound into one report.
BoundReport classical_dim_bounds(const CommMatrix& C, const Tolerances& tol = {},
                                 const std::optional<NmfConfig>& nmf_config = std::nullopt);

}  // namespace commdim

#endif
