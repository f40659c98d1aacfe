#ifndef COMMDIM_ENSEMBLES_HPP
#define COMMDIM_ENSEMBLES_HPP

#include <string>

#include "commdim/matrix.hpp"

namespace commdim {

enum class Gate { NOT, XOR, AMBIG3 };

/// The n x n antidistinguishability matrix: entry (a,b) = (2/n) sin^2((a-b)pi/n),
/// a,b in {1,...,n}. Circulant, symmetric, doubly stochastic, zero diagonal.
CommMatrix antidist_matrix(int n, const Tolerances& tol = {});

CommMatrix gate_matrix(Gate g, const Tolerances& tol = {});
Gate gate_from_name(const std::string& name);

struct NamedMatrix {
  std::string name;
  CommMatrix matrix;
};

/// Accepts "NOT", "XOR", "AMBIG3" or "ANTIDIST(n)".
NamedMatrix named_matrix(const std::string& name, const Tolerances& tol = {});

}  // namespace commdim

#endif
