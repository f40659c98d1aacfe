#ifndef COMMDIM_MAJORIZE_HPP
#define COMMDIM_MAJORIZE_HPP

#include <optional>
#include <string>

#include "commdim/bounds.hpp"
#include "commdim/factor.hpp"
#include "commdim/matrix.hpp"

namespace commdim {

enum class MajAnswer { Yes, No, Unknown };

const char* to_string(MajAnswer a);

struct MajorizationWitness {
  Matrix L;  // row-stochastic pre-processing
  Matrix R;  // row-stochastic post-processing
  double residual = 0.0;
};

struct MajorizeConfig {
  int max_alternations = 200;
  int restarts = 8;
  std::uint64_t seed = 42;
  int inner_iterations = 400;
};

struct MajorizationResult {
  MajAnswer answer = MajAnswer::Unknown;
  std::optional<MajorizationWitness> witness;  // present iff answer == Yes
  std::string reason;
};

/// Is C implementable with a d-symbol classical system, i.e. C = L I_d R?
/// Yes ships a witness; No cites a proved lower bound; Unknown otherwise.
MajorizationResult uw_leq_identity(const CommMatrix& C, int d, const Tolerances& tol = {},
                                   const std::optional<NmfConfig>& nmf_config = std::nullopt);

/// Heuristic test of C = L D R for row-stochastic L, R (alternating
/// simplex-constrained least squares). Sound but incomplete: never answers No.
MajorizationResult uw_leq(const CommMatrix& C, const CommMatrix& D, const Tolerances& tol = {},
                          const MajorizeConfig& config = {});

/// Exact decision for deterministic matrices: equal reduced identity sizes.
bool uw_equivalent_deterministic(const CommMatrix& C, const CommMatrix& D,
                                 const Tolerances& tol = {});

}  // namespace commdim

#endif
