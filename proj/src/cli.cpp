#include "commdim/cli.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include "commdim/bounds.hpp"
#include "commdim/ensembles.hpp"
#include "commdim/factor.hpp"
#include "commdim/io.hpp"
#include "commdim/majorize.hpp"
#include "commdim/matrix.hpp"
#include "commdim/quantum.hpp"
#include "commdim/shared_randomness.hpp"

namespace commdim::cli {

namespace {

using io::json;

bool parse_range(const std::string& s, long long& lo, long long& hi) {
  const auto pos = s.find("..");
  try {
    if (pos == std::string::npos) {
      lo = hi = std::stoll(s);
    } else {
      lo = std::stoll(s.substr(0, pos));
      hi = std::stoll(s.substr(pos + 2));
    }
  } catch (const std::exception&) {
    return false;
  }
  return true;
}

void emit_matrix(std::ostream& out, const Matrix& m, const std::string& out_path, bool json_mode) {
  if (!out_path.empty()) {
    io::save_matrix(out_path, m);
    if (json_mode)
      out << json{{"written", out_path}, {"rows", m.rows()}, {"cols", m.cols()}}.dump() << "\n";
    else
      out << "wrote " << m.rows() << "x" << m.cols() << " matrix to " << out_path << "\n";
  } else if (json_mode) {
    out << io::matrix_to_json(m).dump() << "\n";
  } else {
    out << io::matrix_to_csv(m);
  }
}

int cmd_table(std::ostream& out, std::ostream& err, const std::string& rplus, bool json_mode) {
  long long lo = 0, hi = 0;
  if (!parse_range(rplus, lo, hi) || lo < 3 || lo > hi) {
    err << "invalid --rplus range '" << rplus << "' (expected e.g. 3..7 with lo >= 3)\n";
    return kUsageError;
  }
  if (json_mode) {
    json rows = json::array();
    for (long long rp = lo; rp <= hi; ++rp)
      rows.push_back(json{{"r_plus", rp}, {"phi_prime", phi_prime(rp)}, {"phi_3", phi_r(rp, 3)}});
    out << rows.dump() << "\n";
  } else {
    out << std::left << std::setw(8) << "r_plus" << std::setw(11) << "phi_prime" << "phi_3\n";
    for (long long rp = lo; rp <= hi; ++rp)
      out << std::left << std::setw(8) << rp << std::setw(11) << phi_prime(rp) << phi_r(rp, 3)
          << "\n";
  }
  return kOk;
}

void print_bound_report(std::ostream& out, const BoundReport& rep, bool json_mode) {
  if (json_mode) {
    out << io::bound_report_to_json(rep).dump() << "\n";
    return;
  }
  out << "rank " << rep.rank << "\n";
  if (rep.rnrank) out << "rnrank " << *rep.rnrank << "\n";
  out << "lower bounds:";
  for (const auto& b : rep.lower_bounds) out << " " << to_string(b.source) << "=" << b.value;
  out << "\nupper bounds:";
  for (const auto& b : rep.upper_bounds) out << " " << to_string(b.source) << "=" << b.value;
  out << "\nlb " << rep.lb << "  ub " << rep.ub << "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"communication matrix toolkit: generation, quantum verification, "
               "nonnegative-rank bounds, factorization, majorization, shared randomness"};
  app.fallthrough();
  app.require_subcommand(1);

  bool json_mode = false;
  std::string tol_path;
  app.add_flag("--json", json_mode, "machine-readable JSON output");
  app.add_option("--tolerances", tol_path, "JSON file overriding default tolerances");

  // gen
  auto* gen = app.add_subcommand("gen", "generate a named communication matrix");
  gen->require_subcommand(1);
  int gen_n = 0;
  std::string gen_out, gate_name, gate_out;
  auto* gen_anti = gen->add_subcommand("antidist", "antidistinguishability matrix A_n");
  gen_anti->add_option("--n", gen_n, "matrix size")->required();
  gen_anti->add_option("--out", gen_out, "output file (.json or .csv)");
  auto* gen_gate = gen->add_subcommand("gate", "NOT, XOR or AMBIG3");
  gen_gate->add_option("--name", gate_name, "gate name")->required();
  gen_gate->add_option("--out", gate_out, "output file (.json or .csv)");

  // quantum
  auto* quantum = app.add_subcommand("quantum", "qubit implementation of A_n");
  quantum->require_subcommand(1);
  int q_verify_n = 0, q_gram_n = 0;
  std::string q_gram_out;
  auto* q_verify = quantum->add_subcommand("verify", "check states, effects and POVM");
  q_verify->add_option("--n", q_verify_n, "ensemble size")->required();
  auto* q_gram = quantum->add_subcommand("gram", "matrix of tr(s_a M_b)");
  q_gram->add_option("--n", q_gram_n, "ensemble size")->required();
  q_gram->add_option("--out", q_gram_out, "output file");

  // rank
  auto* rank_cmd = app.add_subcommand("rank", "numerical rank of a matrix");
  std::string rank_in;
  rank_cmd->add_option("--in", rank_in, "input matrix file")->required();

  // reduce
  auto* reduce_cmd = app.add_subcommand("reduce", "drop zero columns and duplicate rows");
  std::string reduce_in, reduce_out;
  reduce_cmd->add_option("--in", reduce_in, "input matrix file")->required();
  reduce_cmd->add_option("--out", reduce_out, "file for the reduced matrix");

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "nonnegative-rank sandwich report");
  std::string bounds_in, bounds_rplus;
  bool bounds_nmf = false;
  NmfConfig bounds_cfg;
  bounds_cmd->add_option("--in", bounds_in, "input matrix file");
  bounds_cmd->add_flag("--nmf", bounds_nmf, "add an NMF search upper bound");
  bounds_cmd->add_option("--seed", bounds_cfg.seed, "NMF seed")->default_val(42);
  bounds_cmd->add_option("--restarts", bounds_cfg.restarts, "NMF restarts")->default_val(32);
  bounds_cmd->add_option("--max-iter", bounds_cfg.max_iter, "NMF iterations per restart")
      ->default_val(5000);
  bounds_cmd->add_option("--target", bounds_cfg.target_residual, "NMF target residual")
      ->default_val(1e-6);
  auto* bounds_table = bounds_cmd->add_subcommand("table", "phi_prime / phi_3 table");
  bounds_table->add_option("--rplus", bounds_rplus, "range, e.g. 3..7")->required();

  // nmf
  auto* nmf_cmd = app.add_subcommand("nmf", "nonnegative factorization at a fixed inner dimension");
  std::string nmf_in, nmf_out;
  int nmf_r = 0;
  NmfConfig nmf_cfg;
  nmf_cmd->add_option("--in", nmf_in, "input matrix file")->required();
  nmf_cmd->add_option("--r", nmf_r, "inner dimension")->required();
  nmf_cmd->add_option("--seed", nmf_cfg.seed, "seed")->default_val(42);
  nmf_cmd->add_option("--restarts", nmf_cfg.restarts, "restarts")->default_val(32);
  nmf_cmd->add_option("--max-iter", nmf_cfg.max_iter, "iterations per restart")->default_val(5000);
  nmf_cmd->add_option("--target", nmf_cfg.target_residual, "target residual")->default_val(1e-6);
  nmf_cmd->add_option("--out", nmf_out, "factorization output file");

  // factor-check-a7
  auto* a7_cmd = app.add_subcommand("factor-check-a7", "verify the built-in explicit factorization");

  // majorize
  auto* maj_cmd = app.add_subcommand("majorize", "ultraweak majorization check");
  std::string maj_c, maj_d;
  int maj_identity = 0;
  MajorizeConfig maj_cfg;
  NmfConfig maj_nmf_cfg;
  maj_cmd->add_option("--c", maj_c, "left matrix file")->required();
  auto* maj_d_opt = maj_cmd->add_option("--d", maj_d, "right matrix file");
  auto* maj_id_opt = maj_cmd->add_option("--identity", maj_identity, "compare against I_d");
  maj_d_opt->excludes(maj_id_opt);
  maj_cmd->add_option("--seed", maj_cfg.seed, "seed")->default_val(42);
  maj_cmd->add_option("--restarts", maj_cfg.restarts, "restarts")->default_val(8);
  maj_cmd->add_option("--alternations", maj_cfg.max_alternations, "max alternations")
      ->default_val(200);

  // sr
  auto* sr_cmd = app.add_subcommand("sr", "shared-randomness protocols");
  sr_cmd->require_subcommand(1);
  std::string sr_mix_proto, sr_mix_out, sr_bound_proto;
  long long sr_lb = 0, sr_d = 0;
  auto* sr_mix = sr_cmd->add_subcommand("mix", "mixture of the protocol parts");
  sr_mix->add_option("--protocol", sr_mix_proto, "protocol json")->required();
  sr_mix->add_option("--out", sr_mix_out, "output matrix file");
  auto* sr_bound = sr_cmd->add_subcommand("bound", "block factorization and the d*k bound");
  sr_bound->add_option("--protocol", sr_bound_proto, "protocol json")->required();
  auto* sr_witness = sr_cmd->add_subcommand("witness", "least k with nrank <= d*k");
  sr_witness->add_option("--lb", sr_lb, "nonnegative rank lower bound")->required();
  sr_witness->add_option("--d", sr_d, "classical dimension per part")->required();

  // table
  auto* table_cmd = app.add_subcommand("table", "phi_prime / phi_3 table");
  std::string table_rplus;
  table_cmd->add_option("--rplus", table_rplus, "range, e.g. 3..7")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsageError;
  }

  try {
    const Tolerances tol = tol_path.empty() ? Tolerances{} : io::load_tolerances(tol_path);

    if (gen->parsed()) {
      const CommMatrix M = gen_anti->parsed() ? antidist_matrix(gen_n, tol)
                                              : gate_matrix(gate_from_name(gate_name), tol);
      emit_matrix(out, M.m, gen_anti->parsed() ? gen_out : gate_out, json_mode);
      return kOk;
    }

    if (quantum->parsed()) {
      if (q_verify->parsed()) {
        const VerificationReport rep = verify_ensemble(qubit_implementation(q_verify_n), tol);
        if (json_mode) {
          out << io::verification_report_to_json(rep).dump() << "\n";
        } else {
          out << "states " << rep.states.size() << ", effects " << rep.effects.size()
              << ", povm_complete " << (rep.povm_complete ? "yes" : "no") << ", pass "
              << (rep.pass ? "yes" : "no") << "\n";
        }
        return rep.pass ? kOk : kFail;
      }
      const CommMatrix G = gram(qubit_implementation(q_gram_n), tol);
      emit_matrix(out, G.m, q_gram_out, json_mode);
      return kOk;
    }

    if (rank_cmd->parsed()) {
      const int r = numerical_rank(io::load_comm_matrix(rank_in, tol), tol);
      if (json_mode)
        out << json{{"rank", r}}.dump() << "\n";
      else
        out << "rank " << r << "\n";
      return kOk;
    }

    if (reduce_cmd->parsed()) {
      const ReductionResult red = reduce(io::load_comm_matrix(reduce_in, tol), tol);
      if (!reduce_out.empty()) io::save_matrix(reduce_out, red.reduced.m);
      if (json_mode)
        out << io::reduction_to_json(red).dump() << "\n";
      else
        out << "reduced to " << red.reduced.rows() << "x" << red.reduced.cols() << "\n";
      return kOk;
    }

    if (bounds_cmd->parsed()) {
      if (bounds_table->parsed()) return cmd_table(out, err, bounds_rplus, json_mode);
      if (bounds_in.empty()) {
        err << "bounds requires --in (or the table subcommand)\n";
        return kUsageError;
      }
      const CommMatrix C = io::load_comm_matrix(bounds_in, tol);
      const std::optional<NmfConfig> cfg =
          bounds_nmf ? std::optional<NmfConfig>(bounds_cfg) : std::nullopt;
      const BoundReport rep = classical_dim_bounds(C, tol, cfg);
      if (json_mode) {
        json j = io::bound_report_to_json(rep);
        if (bounds_nmf) j["seed"] = bounds_cfg.seed;
        out << j.dump() << "\n";
      } else {
        print_bound_report(out, rep, json_mode);
        if (bounds_nmf) out << "seed " << bounds_cfg.seed << "\n";
      }
      return kOk;
    }

    if (nmf_cmd->parsed()) {
      const CommMatrix C = io::load_comm_matrix(nmf_in, tol);
      const NmfResult res = nmf(C, nmf_r, nmf_cfg);
      if (!nmf_out.empty()) io::save_factorization(nmf_out, res.factorization);
      if (json_mode) {
        json j{{"success", res.success},
               {"residual", res.factorization.residual},
               {"r", nmf_r},
               {"seed", res.factorization.seed},
               {"iterations", res.factorization.iterations},
               {"restarts_used", res.factorization.restarts_used}};
        if (!nmf_out.empty()) j["written"] = nmf_out;
        out << j.dump() << "\n";
      } else {
        out << (res.success ? "success" : "failure") << ", residual "
            << res.factorization.residual << ", seed " << res.factorization.seed << "\n";
      }
      return res.success ? kOk : kFail;
    }

    if (a7_cmd->parsed()) {
      const auto [W, H] = a7_explicit();
      const FactorizationReport rep = verify_factorization(antidist_matrix(7, tol), W, H, tol);
      if (json_mode)
        out << io::factorization_report_to_json(rep).dump() << "\n";
      else
        out << (rep.pass ? "pass" : "fail") << ", residual " << rep.residual << ", min entry "
            << rep.min_entry << "\n";
      return rep.pass ? kOk : kFail;
    }

    if (maj_cmd->parsed()) {
      const CommMatrix C = io::load_comm_matrix(maj_c, tol);
      MajorizationResult res;
      maj_nmf_cfg.seed = maj_cfg.seed;
      if (maj_id_opt->count() > 0) {
        res = uw_leq_identity(C, maj_identity, tol, maj_nmf_cfg);
      } else if (!maj_d.empty()) {
        res = uw_leq(C, io::load_comm_matrix(maj_d, tol), tol, maj_cfg);
      } else {
        err << "majorize requires --d or --identity\n";
        return kUsageError;
      }
      if (json_mode) {
        json j = io::majorization_result_to_json(res);
        j["seed"] = maj_cfg.seed;
        out << j.dump() << "\n";
      } else {
        out << to_string(res.answer);
        if (res.witness) out << ", residual " << res.witness->residual;
        if (!res.reason.empty()) out << ", " << res.reason;
        out << "\n";
      }
      switch (res.answer) {
        case MajAnswer::Yes: return kOk;
        case MajAnswer::No: return kFail;
        case MajAnswer::Unknown: return kUnknown;
      }
    }

    if (sr_cmd->parsed()) {
      if (sr_mix->parsed()) {
        const CommMatrix M = mix(io::load_protocol(sr_mix_proto), tol);
        emit_matrix(out, M.m, sr_mix_out, json_mode);
        return kOk;
      }
      if (sr_bound->parsed()) {
        const SRProtocol p = io::load_protocol(sr_bound_proto);
        const StochasticFactorization bf = block_factorization(p, tol);
        const CommMatrix M = mix(p, tol);
        const double res = (M.m - bf.L * bf.R).cwiseAbs().maxCoeff();
        const long long inner = bf.L.cols();
        if (json_mode)
          out << json{{"inner_dim", inner},
                      {"parts", p.parts.size()},
                      {"d", p.d},
                      {"residual", res}}
                     .dump()
              << "\n";
        else
          out << "nrank(mix) <= d*k = " << inner << ", residual " << res << "\n";
        return kOk;
      }
      const long long k = min_coordinated_actions(sr_lb, sr_d);
      if (json_mode)
        out << json{{"min_actions", k}, {"lb", sr_lb}, {"d", sr_d}}.dump() << "\n";
      else
        out << "at least " << k << " coordinated actions\n";
      return kOk;
    }

    if (table_cmd->parsed()) return cmd_table(out, err, table_rplus, json_mode);
  } catch (const Error& e) {
    err << e.code_name() << ": " << e.what() << "\n";
    return kDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  }

  err << "no command\n";
  return kUsageError;
}

}  // namespace commdim::cli
