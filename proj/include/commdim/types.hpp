#ifndef COMMDIM_TYPES_HPP
#define COMMDIM_TYPES_HPP

#include <stdexcept>
#include <string>

namespace commdim {

enum class Err {
  NegativeEntry,
  RowSumViolation,
  InvalidSize,
  UnknownName,
  InvalidParams,
  PreconditionFailed,
  NotDeterministic,
  NotPermutation,
  InvalidEnsemble,
  ShapeMismatch,
  NotStochasticProduct,
  Overflow,
  BadFile,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Err code() const { return code_; }
  const char* code_name() const { return err_name(code_); }

 private:
  Err code_;
};

/// Numeric tolerances shared across the library. All must be strictly positive.
struct Tolerances {
  double row_sum_tol = 1e-9;    // |row sum - 1| allowed for stochastic rows
  double nonneg_tol = 1e-12;    // entries below this count as zero; clip floor
  double entry_eq_tol = 1e-9;   // entrywise equality (duplicate rows, 0/1 tests)
  double rank_rel_tol = 1e-9;   // relative singular value cutoff
  double recon_tol = 1e-10;     // max-entry residual accepted for factorizations

  void check() const;
};

}  // namespace commdim

#endif
