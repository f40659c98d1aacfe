#include "commdim/ensembles.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace commdim {

CommMatrix antidist_matrix(int n, const Tolerances& tol) {
  if (n < 2) throw Error(Err::InvalidSize, "antidist matrix needs n >= 2");

  // One circulant profile c[g] = (2/n) sin^2(g pi / n), mirrored so that
  // c[g] == c[n-g] holds exactly and the diagonal is exactly zero. The exact
  // zeros matter for the sparsity-pattern bounds downstream.
  std::vector<double> c(static_cast<std::size_t>(n), 0.0);
  for (int g = 1; g <= n / 2; ++g) {
    const double s = std::sin(g * std::numbers::pi / n);
    const double v = (2.0 / n) * s * s;
    c[static_cast<std::size_t>(g)] = v;
    c[static_cast<std::size_t>(n - g)] = v;
  }

  Matrix M(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) M(a, b) = c[static_cast<std::size_t>(((a - b) % n + n) % n)];
  return validate(M, tol);
}

CommMatrix gate_matrix(Gate g, const Tolerances& tol) {
  Matrix M;
  switch (g) {
    case Gate::NOT:
      M = Matrix{{0, 1}, {1, 0}};
      break;
    case Gate::XOR:
      M = Matrix{{1, 0}, {0, 1}, {0, 1}, {1, 0}};
      break;
    case Gate::AMBIG3:
      M = Matrix{{1, 0}, {0, 1}, {0.5, 0.5}};
      break;
  }
  return validate(M, tol);
}

Gate gate_from_name(const std::string& name) {
  if (name == "NOT") return Gate::NOT;
  if (name == "XOR") return Gate::XOR;
  if (name == "AMBIG3") return Gate::AMBIG3;
  throw Error(Err::UnknownName, "unknown gate name: " + name);
}

NamedMatrix named_matrix(const std::string& name, const Tolerances& tol) {
  if (name.rfind("ANTIDIST(", 0) == 0 && name.back() == ')') {
    const std::string inner = name.substr(9, name.size() - 10);
    int n = 0;
    try {
      n = std::stoi(inner);
    } catch (const std::exception&) {
      throw Error(Err::UnknownName, "bad antidist size in: " + name);
    }
    return NamedMatrix{name, antidist_matrix(n, tol)};
  }
  return NamedMatrix{name, gate_matrix(gate_from_name(name), tol)};
}

}  // namespace commdim
