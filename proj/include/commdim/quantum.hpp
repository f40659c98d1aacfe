#ifndef COMMDIM_QUANTUM_HPP
#define COMMDIM_QUANTUM_HPP

#include <vector>

#include "commdim/matrix.hpp"

namespace commdim {

/// Real linear combination coeff_id * I + coeff_x * sigma_x + coeff_z * sigma_z.
/// Restricting to the XZ plane keeps every operator a real symmetric 2x2 matrix.
struct BlochOperator {
  double coeff_id = 0.0;
  double coeff_x = 0.0;
  double coeff_z = 0.0;

  Eigen::Matrix2d dense() const;
};

struct QubitEnsemble {
  std::vector<BlochOperator> states;   // pure states (1/2)(I + r_a . sigma)
  std::vector<BlochOperator> effects;  // POVM effects (1/n)(I - r_b . sigma)
};

struct StateCheck {
  bool trace_one = false;
  bool psd = false;
  bool pure = false;  // det ~ 0, i.e. |Bloch vector| = 1
};

struct EffectCheck {
  bool psd = false;
  bool complement_psd = false;  // I - effect is PSD
};

struct VerificationReport {
  std::vector<StateCheck> states;
  std::vector<EffectCheck> effects;
  bool povm_complete = false;  // sum of effects equals the identity
  bool pass = false;
};

/// States at Bloch angles 2a*pi/n in the XZ plane with the matching effects.
QubitEnsemble qubit_implementation(int n);

VerificationReport verify_ensemble(const QubitEnsemble& ens, const Tolerances& tol = {});

/// Matrix of tr(s_a M_b), computed with dense 2x2 matrix algebra.
CommMatrix gram(const QubitEnsemble& ens, const Tolerances& tol = {});

/// 1 if all rows coincide (a 1-dimensional system forces identical rows), else 2.
int quantum_dim_lower_bound(const CommMatrix& C, const Tolerances& tol = {});

}  // namespace commdim

#endif
