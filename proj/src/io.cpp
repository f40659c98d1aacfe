#include "commdim/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace commdim::io {

namespace {

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Err::BadFile, origin + ": " + e.what());
  }
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Err::BadFile, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Err::BadFile, "cannot write " + path);
  out << text;
}

json matrix_to_json(const Matrix& m) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(m(i, j));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Matrix matrix_from_json(const json& j) {
  try {
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    const auto& data = j.at("data");
    if (rows < 1 || cols < 1 || static_cast<Eigen::Index>(data.size()) != rows * cols)
      throw Error(Err::BadFile, "matrix dimensions do not match data length");
    Matrix m(rows, cols);
    Eigen::Index idx = 0;
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index jj = 0; jj < cols; ++jj) m(i, jj) = data.at(idx++).get<double>();
    return m;
  } catch (const json::exception& e) {
    throw Error(Err::BadFile, std::string("bad matrix json: ") + e.what());
  }
}

std::string matrix_to_csv(const Matrix& m) {
  std::ostringstream os;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << format_double(m(i, j));
    }
    os << '\n';
  }
  return os.str();
}

Matrix matrix_from_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw Error(Err::BadFile, "bad csv cell: " + cell);
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw Error(Err::BadFile, "csv rows have different lengths");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(Err::BadFile, "csv file has no rows");
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return m;
}

void save_matrix(const std::string& path, const Matrix& m) {
  if (ends_with(path, ".csv"))
    write_file(path, matrix_to_csv(m));
  else
    write_file(path, matrix_to_json(m).dump() + "\n");
}

Matrix load_matrix(const std::string& path) {
  const std::string text = read_file(path);
  if (ends_with(path, ".csv")) return matrix_from_csv(text);
  return matrix_from_json(parse_json(text, path));
}

CommMatrix load_comm_matrix(const std::string& path, const Tolerances& tol) {
  return validate(load_matrix(path), tol);
}

Tolerances load_tolerances(const std::string& path) {
  const json j = parse_json(read_file(path), path);
  Tolerances tol;
  try {
    if (j.contains("row_sum_tol")) tol.row_sum_tol = j.at("row_sum_tol").get<double>();
    if (j.contains("nonneg_tol")) tol.nonneg_tol = j.at("nonneg_tol").get<double>();
    if (j.contains("entry_eq_tol")) tol.entry_eq_tol = j.at("entry_eq_tol").get<double>();
    if (j.contains("rank_rel_tol")) tol.rank_rel_tol = j.at("rank_rel_tol").get<double>();
    if (j.contains("recon_tol")) tol.recon_tol = j.at("recon_tol").get<double>();
  } catch (const json::exception& e) {
    throw Error(Err::BadFile, std::string("bad tolerances json: ") + e.what());
  }
  tol.check();
  return tol;
}

json factorization_to_json(const NonnegFactorization& f) {
  return json{{"W", matrix_to_json(f.W)},
              {"H", matrix_to_json(f.H)},
              {"residual", f.residual},
              {"seed", f.seed}};
}

void save_factorization(const std::string& path, const NonnegFactorization& f) {
  write_file(path, factorization_to_json(f).dump() + "\n");
}

NonnegFactorization load_factorization(const std::string& path) {
  const json j = parse_json(read_file(path), path);
  try {
    NonnegFactorization f;
    f.W = matrix_from_json(j.at("W"));
    f.H = matrix_from_json(j.at("H"));
    f.residual = j.at("residual").get<double>();
    f.seed = j.at("seed").get<std::uint64_t>();
    f.inner_dim = static_cast<int>(f.W.cols());
    return f;
  } catch (const json::exception& e) {
    throw Error(Err::BadFile, std::string("bad factorization json: ") + e.what());
  }
}

SRProtocol protocol_from_json(const json& j) {
  try {
    SRProtocol p;
    p.d = j.at("d").get<int>();
    for (const auto& part : j.at("parts")) {
      SRPart sp;
      sp.weight = part.at("weight").get<double>();
      sp.impl.L = matrix_from_json(part.at("L"));
      sp.impl.R = matrix_from_json(part.at("R"));
      p.parts.push_back(std::move(sp));
    }
    return p;
  } catch (const json::exception& e) {
    throw Error(Err::BadFile, std::string("bad protocol json: ") + e.what());
  }
}

SRProtocol load_protocol(const std::string& path) {
  return protocol_from_json(parse_json(read_file(path), path));
}

json protocol_to_json(const SRProtocol& p) {
  json parts = json::array();
  for (const auto& part : p.parts)
    parts.push_back(json{{"weight", part.weight},
                         {"L", matrix_to_json(part.impl.L)},
                         {"R", matrix_to_json(part.impl.R)}});
  return json{{"d", p.d}, {"parts", std::move(parts)}};
}

json bound_report_to_json(const BoundReport& r) {
  json lower = json::array();
  for (const auto& b : r.lower_bounds)
    lower.push_back(json{{"value", b.value}, {"source", to_string(b.source)}});
  json upper = json::array();
  for (const auto& b : r.upper_bounds)
    upper.push_back(json{{"value", b.value}, {"source", to_string(b.source)}});
  json out{{"rank", r.rank},
           {"lower_bounds", std::move(lower)},
           {"upper_bounds", std::move(upper)},
           {"lb", r.lb},
           {"ub", r.ub}};
  if (r.rnrank)
    out["rnrank"] = *r.rnrank;
  else
    out["rnrank"] = nullptr;
  return out;
}

json verification_report_to_json(const VerificationReport& r) {
  json states = json::array();
  for (const auto& s : r.states)
    states.push_back(json{{"trace_one", s.trace_one}, {"psd", s.psd}, {"pure", s.pure}});
  json effects = json::array();
  for (const auto& e : r.effects)
    effects.push_back(json{{"psd", e.psd}, {"complement_psd", e.complement_psd}});
  return json{{"states", std::move(states)},
              {"effects", std::move(effects)},
              {"povm_complete", r.povm_complete},
              {"pass", r.pass}};
}

json majorization_result_to_json(const MajorizationResult& r) {
  json out{{"answer", to_string(r.answer)}};
  if (r.witness) {
    out["residual"] = r.witness->residual;
    out["witness"] = json{{"L", matrix_to_json(r.witness->L)}, {"R", matrix_to_json(r.witness->R)}};
  }
  if (!r.reason.empty()) out["reason"] = r.reason;
  return out;
}

json reduction_to_json(const ReductionResult& r) {
  return json{{"reduced", matrix_to_json(r.reduced.m)},
              {"row_selector", matrix_to_json(r.row_selector)},
              {"col_injector", matrix_to_json(r.col_injector)}};
}

json factorization_report_to_json(const FactorizationReport& r) {
  return json{{"min_entry", r.min_entry},
              {"residual", r.residual},
              {"nonneg_ok", r.nonneg_ok},
              {"residual_ok", r.residual_ok},
              {"pass", r.pass},
              {"violations", r.violations}};
}

}  // namespace commdim::io
