#ifndef COMMDIM_SHARED_RANDOMNESS_HPP
#define COMMDIM_SHARED_RANDOMNESS_HPP

#include <vector>

#include "commdim/factor.hpp"
#include "commdim/matrix.hpp"

namespace commdim {

/// One coordinated action: a classical implementation sampled with `weight`.
struct SRPart {
  double weight = 0.0;
  StochasticFactorization impl;  // L: n x d, R: d x m
};

/// Shared-randomness protocol: a correlated variable selects among k parts,
/// all with the same classical dimension d and outer shape n x m.
struct SRProtocol {
  int d = 0;
  std::vector<SRPart> parts;
};

void validate_protocol(const SRProtocol& p, const Tolerances& tol = {});

/// The mixture sum_k weight_k (L_k R_k), validated as a communication matrix.
CommMatrix mix(const SRProtocol& p, const Tolerances& tol = {});

/// Block factorization [w_1 L_1 ... w_k L_k] * [R_1; ...; R_k] of the mixture.
/// Inner dimension is exactly d*k, certifying nrank(mix) <= d*k.
StochasticFactorization block_factorization(const SRProtocol& p, const Tolerances& tol = {});

/// Least k not excluded by nrank(C) <= d*k, i.e. ceil(nrank_lb / d).
long long min_coordinated_actions(long long nrank_lb, long long d);

}  // namespace commdim

#endif
