#ifndef COMMDIM_IO_HPP
#define COMMDIM_IO_HPP

#include <string>

#include <json.hpp>

#include "commdim/bounds.hpp"
#include "commdim/factor.hpp"
#include "commdim/majorize.hpp"
#include "commdim/matrix.hpp"
#include "commdim/quantum.hpp"
#include "commdim/shared_randomness.hpp"

namespace commdim::io {

using nlohmann::json;

// Matrix interchange: JSON object {"rows": n, "cols": m, "data": [row-major]}
// or CSV with one row per line. Format picked from the file extension
// (".csv" -> CSV, anything else -> JSON).
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);
std::string matrix_to_csv(const Matrix& m);
Matrix matrix_from_csv(const std::string& text);

void save_matrix(const std::string& path, const Matrix& m);
Matrix load_matrix(const std::string& path);
CommMatrix load_comm_matrix(const std::string& path, const Tolerances& tol = {});

Tolerances load_tolerances(const std::string& path);

json factorization_to_json(const NonnegFactorization& f);
void save_factorization(const std::string& path, const NonnegFactorization& f);
NonnegFactorization load_factorization(const std::string& path);

SRProtocol protocol_from_json(const json& j);
SRProtocol load_protocol(const std::string& path);
json protocol_to_json(const SRProtocol& p);

json bound_report_to_json(const BoundReport& r);
json verification_report_to_json(const VerificationReport& r);
json majorization_result_to_json(const MajorizationResult& r);
json reduction_to_json(const ReductionResult& r);
json factorization_report_to_json(const FactorizationReport& r);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace commdim::io

#endif
