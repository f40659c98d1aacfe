#include "commdim/types.hpp"

namespace commdim {

const char* err_name(Err e) {
  switch (e) {
    case Err::NegativeEntry: return "NegativeEntry";
    case Err::RowSumViolation: return "RowSumViolation";
    case Err::InvalidSize: return "InvalidSize";
    case Err::UnknownName: return "UnknownName";
    case Err::InvalidParams: return "InvalidParams";
    case Err::PreconditionFailed: return "PreconditionFailed";
    case Err::NotDeterministic: return "NotDeterministic";
    case Err::NotPermutation: return "NotPermutation";
    case Err::InvalidEnsemble: return "InvalidEnsemble";
    case Err::ShapeMismatch: return "ShapeMismatch";
    case Err::NotStochasticProduct: return "NotStochasticProduct";
    case Err::Overflow: return "Overflow";
    case Err::BadFile: return "BadFile";
  }
  return "Unknown";
}

void Tolerances::check() const {
  const double vals[] = {row_sum_tol, nonneg_tol, entry_eq_tol, rank_rel_tol, recon_tol};
  for (double v : vals) {
    if (!(v > 0.0)) throw Error(Err::InvalidParams, "tolerances must be strictly positive");
  }
}

}  // namespace commdim
