#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "commdim/bounds.hpp"
#include "commdim/ensembles.hpp"
#include "commdim/factor.hpp"
#include "commdim/majorize.hpp"
#include "commdim/matrix.hpp"
#include "commdim/quantum.hpp"
#include "commdim/shared_randomness.hpp"

namespace py = pybind11;
using namespace commdim;

namespace {

py::object optional_witness(const MajorizationResult& r) {
  if (!r.witness) return py::none();
  return py::make_tuple(r.witness->L, r.witness->R, r.witness->residual);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "communication matrix toolkit: classical/quantum dimension bounds, "
            "nonnegative factorization, majorization, shared randomness";

  py::register_exception<Error>(m, "CommdimError");

  py::class_<Tolerances>(m, "Tolerances")
      .def(py::init<>())
      .def_readwrite("row_sum_tol", &Tolerances::row_sum_tol)
      .def_readwrite("nonneg_tol", &Tolerances::nonneg_tol)
      .def_readwrite("entry_eq_tol", &Tolerances::entry_eq_tol)
      .def_readwrite("rank_rel_tol", &Tolerances::rank_rel_tol)
      .def_readwrite("recon_tol", &Tolerances::recon_tol);

  py::class_<CommMatrix>(m, "CommMatrix")
      .def_property_readonly("matrix", [](const CommMatrix& c) { return c.m; })
      .def_property_readonly("rows", &CommMatrix::rows)
      .def_property_readonly("cols", &CommMatrix::cols)
      .def("__repr__", [](const CommMatrix& c) {
        return "CommMatrix(" + std::to_string(c.rows()) + "x" + std::to_string(c.cols()) + ")";
      });

  py::class_<ReductionResult>(m, "ReductionResult")
      .def_property_readonly("reduced", [](const ReductionResult& r) { return r.reduced; })
      .def_readonly("row_selector", &ReductionResult::row_selector)
      .def_readonly("col_injector", &ReductionResult::col_injector);

  m.def("validate", &validate, py::arg("raw"), py::arg("tol") = Tolerances{});
  m.def("numerical_rank", &numerical_rank, py::arg("matrix"), py::arg("tol") = Tolerances{});
  m.def("reduce", &reduce, py::arg("matrix"), py::arg("tol") = Tolerances{});
  m.def("is_deterministic", &is_deterministic, py::arg("matrix"), py::arg("tol") = Tolerances{});
  m.def("deterministic_dimension", &deterministic_dimension, py::arg("matrix"),
        py::arg("tol") = Tolerances{});

  m.def("antidist_matrix", &antidist_matrix, py::arg("n"), py::arg("tol") = Tolerances{});
  m.def(
      "gate_matrix",
      [](const std::string& name, const Tolerances& tol) {
        return gate_matrix(gate_from_name(name), tol);
      },
      py::arg("name"), py::arg("tol") = Tolerances{});

  py::class_<BlochOperator>(m, "BlochOperator")
      .def_readonly("coeff_id", &BlochOperator::coeff_id)
      .def_readonly("coeff_x", &BlochOperator::coeff_x)
      .def_readonly("coeff_z", &BlochOperator::coeff_z)
      .def("dense", &BlochOperator::dense);

  py::class_<QubitEnsemble>(m, "QubitEnsemble")
      .def_readonly("states", &QubitEnsemble::states)
      .def_readonly("effects", &QubitEnsemble::effects);

  py::class_<StateCheck>(m, "StateCheck")
      .def_readonly("trace_one", &StateCheck::trace_one)
      .def_readonly("psd", &StateCheck::psd)
      .def_readonly("pure", &StateCheck::pure);

  py::class_<EffectCheck>(m, "EffectCheck")
      .def_readonly("psd", &EffectCheck::psd)
      .def_readonly("complement_psd", &EffectCheck::complement_psd);

  py::class_<VerificationReport>(m, "VerificationReport")
      .def_readonly("states", &VerificationReport::states)
      .def_readonly("effects", &VerificationReport::effects)
      .def_readonly("povm_complete", &VerificationReport::povm_complete)
      .def_readonly("pass_", &VerificationReport::pass)
      .def("__bool__", [](const VerificationReport& r) { return r.pass; });

  m.def("qubit_implementation", &qubit_implementation, py::arg("n"));
  m.def("verify_ensemble", &verify_ensemble, py::arg("ensemble"), py::arg("tol") = Tolerances{});
  m.def("gram", &gram, py::arg("ensemble"), py::arg("tol") = Tolerances{});
  m.def("quantum_dim_lower_bound", &quantum_dim_lower_bound, py::arg("matrix"),
        py::arg("tol") = Tolerances{});

  py::class_<BoundReport>(m, "BoundReport")
      .def_readonly("rank", &BoundReport::rank)
      .def_property_readonly("rnrank",
                             [](const BoundReport& r) -> py::object {
                               if (r.rnrank) return py::int_(*r.rnrank);
                               return py::none();
                             })
      .def_readonly("lb", &BoundReport::lb)
      .def_readonly("ub", &BoundReport::ub)
      .def_property_readonly("lower_bounds",
                             [](const BoundReport& r) {
                               py::list out;
                               for (const auto& b : r.lower_bounds)
                                 out.append(py::make_tuple(b.value, to_string(b.source)));
                               return out;
                             })
      .def_property_readonly("upper_bounds", [](const BoundReport& r) {
        py::list out;
        for (const auto& b : r.upper_bounds)
          out.append(py::make_tuple(b.value, to_string(b.source)));
        return out;
      });

  m.def("faces", &faces, py::arg("n"), py::arg("d"), py::arg("k"));
  m.def("phi_r", &phi_r, py::arg("r_plus"), py::arg("r"));
  m.def("phi_prime", &phi_prime, py::arg("r_plus"));
  m.def("column_sparsity_disjoint", &column_sparsity_disjoint, py::arg("matrix"),
        py::arg("tol") = Tolerances{});
  m.def("rnrank_rank3_disjoint", &rnrank_rank3_disjoint, py::arg("matrix"),
        py::arg("tol") = Tolerances{});
  m.def("nrank_lb_from_rnrank", &nrank_lb_from_rnrank, py::arg("rnrank_value"), py::arg("rank"));
  m.def("nrank_lb_log", &nrank_lb_log, py::arg("rnrank_value"));
  m.def("classical_dim_bounds", &classical_dim_bounds, py::arg("matrix"),
        py::arg("tol") = Tolerances{}, py::arg("nmf_config") = std::nullopt);

  py::class_<NmfConfig>(m, "NmfConfig")
      .def(py::init<>())
      .def_readwrite("max_iter", &NmfConfig::max_iter)
      .def_readwrite("restarts", &NmfConfig::restarts)
      .def_readwrite("seed", &NmfConfig::seed)
      .def_readwrite("target_residual", &NmfConfig::target_residual)
      .def_readwrite("threads", &NmfConfig::threads);

  py::class_<NonnegFactorization>(m, "NonnegFactorization")
      .def_readonly("W", &NonnegFactorization::W)
      .def_readonly("H", &NonnegFactorization::H)
      .def_readonly("residual", &NonnegFactorization::residual)
      .def_readonly("inner_dim", &NonnegFactorization::inner_dim)
      .def_readonly("seed", &NonnegFactorization::seed)
      .def_readonly("iterations", &NonnegFactorization::iterations)
      .def_readonly("restarts_used", &NonnegFactorization::restarts_used);

  py::class_<NmfResult>(m, "NmfResult")
      .def_readonly("success", &NmfResult::success)
      .def_readonly("factorization", &NmfResult::factorization)
      .def("__bool__", [](const NmfResult& r) { return r.success; });

  py::class_<StochasticFactorization>(m, "StochasticFactorization")
      .def(py::init([](const Matrix& L, const Matrix& R) {
             return StochasticFactorization{L, R};
           }),
           py::arg("L"), py::arg("R"))
      .def_readonly("L", &StochasticFactorization::L)
      .def_readonly("R", &StochasticFactorization::R);

  py::class_<FactorizationReport>(m, "FactorizationReport")
      .def_readonly("min_entry", &FactorizationReport::min_entry)
      .def_readonly("residual", &FactorizationReport::residual)
      .def_readonly("nonneg_ok", &FactorizationReport::nonneg_ok)
      .def_readonly("residual_ok", &FactorizationReport::residual_ok)
      .def_readonly("pass_", &FactorizationReport::pass)
      .def_readonly("violations", &FactorizationReport::violations)
      .def("__bool__", [](const FactorizationReport& r) { return r.pass; });

  m.def("nmf", &nmf, py::arg("matrix"), py::arg("r"), py::arg("config") = NmfConfig{});
  m.def("nmf_rank_search", &nmf_rank_search, py::arg("matrix"), py::arg("r_lo"), py::arg("r_hi"),
        py::arg("config") = NmfConfig{});
  m.def("stochastic_normalize",
        [](const Matrix& W, const Matrix& H, const Tolerances& tol) {
          auto sf = stochastic_normalize(W, H, tol);
          return py::make_tuple(sf.L, sf.R);
        },
        py::arg("W"), py::arg("H"), py::arg("tol") = Tolerances{});
  m.def("a7_explicit", []() {
    auto [W, H] = a7_explicit();
    return py::make_tuple(W, H);
  });
  m.def("verify_factorization", &verify_factorization, py::arg("matrix"), py::arg("W"),
        py::arg("H"), py::arg("tol") = Tolerances{});

  py::class_<MajorizeConfig>(m, "MajorizeConfig")
      .def(py::init<>())
      .def_readwrite("max_alternations", &MajorizeConfig::max_alternations)
      .def_readwrite("restarts", &MajorizeConfig::restarts)
      .def_readwrite("seed", &MajorizeConfig::seed)
      .def_readwrite("inner_iterations", &MajorizeConfig::inner_iterations);

  py::class_<MajorizationResult>(m, "MajorizationResult")
      .def_property_readonly("answer",
                             [](const MajorizationResult& r) { return to_string(r.answer); })
      .def_property_readonly("witness", &optional_witness)
      .def_readonly("reason", &MajorizationResult::reason);

  m.def("uw_leq_identity", &uw_leq_identity, py::arg("matrix"), py::arg("d"),
        py::arg("tol") = Tolerances{}, py::arg("nmf_config") = std::nullopt);
  m.def("uw_leq", &uw_leq, py::arg("c"), py::arg("d"), py::arg("tol") = Tolerances{},
        py::arg("config") = MajorizeConfig{});
  m.def("uw_equivalent_deterministic", &uw_equivalent_deterministic, py::arg("c"), py::arg("d"),
        py::arg("tol") = Tolerances{});

  py::class_<SRPart>(m, "SRPart")
      .def(py::init([](double weight, const Matrix& L, const Matrix& R) {
             return SRPart{weight, StochasticFactorization{L, R}};
           }),
           py::arg("weight"), py::arg("L"), py::arg("R"))
      .def_readonly("weight", &SRPart::weight)
      .def_property_readonly("L", [](const SRPart& p) { return p.impl.L; })
      .def_property_readonly("R", [](const SRPart& p) { return p.impl.R; });

  py::class_<SRProtocol>(m, "SRProtocol")
      .def(py::init([](int d, const std::vector<SRPart>& parts) {
             return SRProtocol{d, parts};
           }),
           py::arg("d"), py::arg("parts"))
      .def_readonly("d", &SRProtocol::d)
      .def_readonly("parts", &SRProtocol::parts);

  m.def("mix", &mix, py::arg("protocol"), py::arg("tol") = Tolerances{});
  m.def("block_factorization",
        [](const SRProtocol& p, const Tolerances& tol) {
          auto bf = block_factorization(p, tol);
          return py::make_tuple(bf.L, bf.R);
        },
        py::arg("protocol"), py::arg("tol") = Tolerances{});
  m.def("min_coordinated_actions", &min_coordinated_actions, py::arg("nrank_lb"), py::arg("d"));
}
