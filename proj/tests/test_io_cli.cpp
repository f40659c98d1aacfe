#include <doctest.h>

#include <filesystem>
#include <sstream>
#include <vector>

#include "commdim/cli.hpp"
#include "commdim/ensembles.hpp"
#include "commdim/io.hpp"

using namespace commdim;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("commdim");
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return CliRun{code, out.str(), err.str()};
}

fs::path tmp_dir() {
  const fs::path dir = fs::temp_directory_path() / "commdim_cli_test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("matrix json round trip is byte stable") {
  const Matrix A = antidist_matrix(7).m;
  const std::string s1 = io::matrix_to_json(A).dump();
  const Matrix B = io::matrix_from_json(io::json::parse(s1));
  CHECK((A - B).cwiseAbs().maxCoeff() == 0.0);
  CHECK(io::matrix_to_json(B).dump() == s1);
}

TEST_CASE("matrix csv round trip is byte stable") {
  const Matrix A = antidist_matrix(5).m;
  const std::string s1 = io::matrix_to_csv(A);
  const Matrix B = io::matrix_from_csv(s1);
  CHECK((A - B).cwiseAbs().maxCoeff() == 0.0);
  CHECK(io::matrix_to_csv(B) == s1);
}

TEST_CASE("tolerances config overrides only listed fields") {
  const fs::path p = tmp_dir() / "tol.json";
  io::write_file(p.string(), "{\"row_sum_tol\": 1e-6, \"recon_tol\": 1e-8}\n");
  const Tolerances tol = io::load_tolerances(p.string());
  CHECK(tol.row_sum_tol == 1e-6);
  CHECK(tol.recon_tol == 1e-8);
  CHECK(tol.nonneg_tol == 1e-12);
  CHECK(tol.rank_rel_tol == 1e-9);
}

TEST_CASE("factorization file round trip") {
  NonnegFactorization f;
  f.W = Matrix{{1, 0}, {0, 1}};
  f.H = Matrix{{0.5, 0.5}, {0, 1}};
  f.residual = 1e-9;
  f.seed = 42;
  const fs::path p = tmp_dir() / "wh.json";
  io::save_factorization(p.string(), f);
  const NonnegFactorization g = io::load_factorization(p.string());
  CHECK((f.W - g.W).cwiseAbs().maxCoeff() == 0.0);
  CHECK((f.H - g.H).cwiseAbs().maxCoeff() == 0.0);
  CHECK(g.residual == f.residual);
  CHECK(g.seed == 42);
}

TEST_CASE("protocol json round trip") {
  const std::string text =
      "{\"d\": 2, \"parts\": [{\"weight\": 0.5, "
      "\"L\": {\"rows\": 2, \"cols\": 2, \"data\": [1, 0, 0, 1]}, "
      "\"R\": {\"rows\": 2, \"cols\": 2, \"data\": [1, 0, 0, 1]}}, "
      "{\"weight\": 0.5, "
      "\"L\": {\"rows\": 2, \"cols\": 2, \"data\": [0, 1, 1, 0]}, "
      "\"R\": {\"rows\": 2, \"cols\": 2, \"data\": [1, 0, 0, 1]}}]}";
  const SRProtocol p = io::protocol_from_json(io::json::parse(text));
  CHECK(p.d == 2);
  CHECK(p.parts.size() == 2);
  const io::json again = io::protocol_to_json(p);
  const SRProtocol q = io::protocol_from_json(again);
  CHECK(q.parts[1].impl.L(0, 1) == 1.0);
}

TEST_CASE("cli: gen, bounds, rank round trip through files") {
  const fs::path dir = tmp_dir();
  const std::string a7 = (dir / "a7.json").string();

  CHECK(run_cli({"gen", "antidist", "--n", "7", "--out", a7}).code == cli::kOk);

  // byte-stable re-emission
  const std::string bytes1 = io::read_file(a7);
  io::save_matrix(a7, io::load_matrix(a7));
  CHECK(io::read_file(a7) == bytes1);

  const CliRun bounds = run_cli({"bounds", "--in", a7, "--json"});
  CHECK(bounds.code == cli::kOk);
  const io::json rep = io::json::parse(bounds.out);
  CHECK(rep.at("lb") == 6);
  CHECK(rep.at("ub") == 6);
  CHECK(rep.at("rnrank") == 7);

  const CliRun rank = run_cli({"rank", "--in", a7, "--json"});
  CHECK(rank.code == cli::kOk);
  CHECK(io::json::parse(rank.out).at("rank") == 3);
}

TEST_CASE("cli: bounds with the NMF search upper bound") {
  const fs::path dir = tmp_dir();
  const std::string a7 = (dir / "a7nmf.json").string();
  REQUIRE(run_cli({"gen", "antidist", "--n", "7", "--out", a7}).code == cli::kOk);

  const CliRun r = run_cli({"bounds", "--in", a7, "--nmf", "--json"});
  CHECK(r.code == cli::kOk);
  const io::json rep = io::json::parse(r.out);
  CHECK(rep.at("lb") == 6);
  CHECK(rep.at("ub") == 6);
  CHECK(rep.at("seed") == 42);
  bool has_nmf = false;
  for (const auto& b : rep.at("upper_bounds"))
    if (b.at("source") == "NMF") has_nmf = (b.at("value") == 6);
  CHECK(has_nmf);
}

TEST_CASE("cli: csv re-emission is byte stable") {
  const fs::path dir = tmp_dir();
  const std::string p = (dir / "a5.csv").string();
  REQUIRE(run_cli({"gen", "antidist", "--n", "5", "--out", p}).code == cli::kOk);
  const std::string bytes1 = io::read_file(p);
  io::save_matrix(p, io::load_matrix(p));
  CHECK(io::read_file(p) == bytes1);
}

TEST_CASE("cli: global tolerances file applies") {
  const fs::path dir = tmp_dir();
  const std::string tolf = (dir / "loose.json").string();
  const std::string mat = (dir / "loose_mat.json").string();
  io::write_file(tolf, "{\"row_sum_tol\": 0.1}\n");
  io::save_matrix(mat, Matrix{{0.55, 0.5}});  // row sum 1.05
  CHECK(run_cli({"rank", "--in", mat}).code == cli::kDataError);
  CHECK(run_cli({"rank", "--in", mat, "--tolerances", tolf}).code == cli::kOk);
}

TEST_CASE("cli: help exits cleanly") {
  const CliRun h = run_cli({"--help"});
  CHECK(h.code == cli::kOk);
  CHECK(h.out.find("bounds") != std::string::npos);
}

TEST_CASE("cli: reduce and gate generation") {
  const fs::path dir = tmp_dir();
  const std::string xor_path = (dir / "xor.csv").string();
  CHECK(run_cli({"gen", "gate", "--name", "XOR", "--out", xor_path}).code == cli::kOk);

  const std::string reduced_path = (dir / "xor_reduced.json").string();
  const CliRun red = run_cli({"reduce", "--in", xor_path, "--json", "--out", reduced_path});
  CHECK(red.code == cli::kOk);
  const io::json j = io::json::parse(red.out);
  CHECK(j.at("reduced").at("rows") == 2);
  CHECK(j.at("reduced").at("cols") == 2);
  CHECK((io::load_matrix(reduced_path) - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);

  CHECK(run_cli({"reduce", "--in", xor_path, "--bogus-flag"}).code == cli::kUsageError);
}

TEST_CASE("cli: quantum subcommands") {
  const CliRun verify = run_cli({"quantum", "verify", "--n", "7", "--json"});
  CHECK(verify.code == cli::kOk);
  CHECK(io::json::parse(verify.out).at("pass") == true);

  const fs::path dir = tmp_dir();
  const std::string gpath = (dir / "a7q.json").string();
  CHECK(run_cli({"quantum", "gram", "--n", "7", "--out", gpath}).code == cli::kOk);
  const Matrix G = io::load_matrix(gpath);
  CHECK((G - antidist_matrix(7).m).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("cli: factor-check-a7 and nmf") {
  CHECK(run_cli({"factor-check-a7", "--json"}).code == cli::kOk);

  const fs::path dir = tmp_dir();
  const std::string ambig = (dir / "ambig3.json").string();
  CHECK(run_cli({"gen", "gate", "--name", "AMBIG3", "--out", ambig}).code == cli::kOk);

  const std::string wh = (dir / "wh.json").string();
  const CliRun ok = run_cli({"nmf", "--in", ambig, "--r", "2", "--seed", "42", "--out", wh,
                             "--json"});
  CHECK(ok.code == cli::kOk);
  const io::json j = io::json::parse(ok.out);
  CHECK(j.at("success") == true);
  CHECK(j.at("seed") == 42);
  CHECK(fs::exists(wh));

  const CliRun fail = run_cli({"nmf", "--in", ambig, "--r", "1", "--json"});
  CHECK(fail.code == cli::kFail);
}

TEST_CASE("cli: majorize exit codes") {
  const fs::path dir = tmp_dir();
  const std::string not_path = (dir / "not.json").string();
  const std::string xor_path = (dir / "xorm.json").string();
  const std::string a7 = (dir / "a7m.json").string();
  const std::string i3 = (dir / "i3.json").string();
  run_cli({"gen", "gate", "--name", "NOT", "--out", not_path});
  run_cli({"gen", "gate", "--name", "XOR", "--out", xor_path});
  run_cli({"gen", "antidist", "--n", "7", "--out", a7});
  io::save_matrix(i3, Matrix::Identity(3, 3));

  CHECK(run_cli({"majorize", "--c", xor_path, "--d", not_path}).code == cli::kOk);
  CHECK(run_cli({"majorize", "--c", a7, "--identity", "5"}).code == cli::kFail);
  CHECK(run_cli({"majorize", "--c", i3, "--d", not_path, "--restarts", "2",
                 "--alternations", "30"})
            .code == cli::kUnknown);

  // the seed flag reaches the factorization search and is echoed back
  const std::string ambig = (dir / "ambig_m.json").string();
  run_cli({"gen", "gate", "--name", "AMBIG3", "--out", ambig});
  const CliRun seeded = run_cli({"majorize", "--c", ambig, "--identity", "2", "--seed", "7",
                                 "--json"});
  CHECK(seeded.code == cli::kOk);
  CHECK(io::json::parse(seeded.out).at("seed") == 7);
  const CliRun seeded2 = run_cli({"majorize", "--c", ambig, "--identity", "2", "--seed", "7",
                                  "--json"});
  CHECK(seeded2.out == seeded.out);
}

TEST_CASE("cli: sr subcommands") {
  const CliRun witness = run_cli({"sr", "witness", "--lb", "6", "--d", "2", "--json"});
  CHECK(witness.code == cli::kOk);
  CHECK(io::json::parse(witness.out).at("min_actions") == 3);

  const fs::path dir = tmp_dir();
  const std::string proto = (dir / "p.json").string();
  io::write_file(proto,
                 "{\"d\": 2, \"parts\": [{\"weight\": 0.5, "
                 "\"L\": {\"rows\": 2, \"cols\": 2, \"data\": [1, 0, 0, 1]}, "
                 "\"R\": {\"rows\": 2, \"cols\": 2, \"data\": [1, 0, 0, 1]}}, "
                 "{\"weight\": 0.5, "
                 "\"L\": {\"rows\": 2, \"cols\": 2, \"data\": [0, 1, 1, 0]}, "
                 "\"R\": {\"rows\": 2, \"cols\": 2, \"data\": [1, 0, 0, 1]}}]}");

  const CliRun mixed = run_cli({"sr", "mix", "--protocol", proto, "--json"});
  CHECK(mixed.code == cli::kOk);
  const Matrix M = io::matrix_from_json(io::json::parse(mixed.out));
  CHECK((M - Matrix{{0.5, 0.5}, {0.5, 0.5}}).cwiseAbs().maxCoeff() <= 1e-15);

  const CliRun bound = run_cli({"sr", "bound", "--protocol", proto, "--json"});
  CHECK(bound.code == cli::kOk);
  const io::json bj = io::json::parse(bound.out);
  CHECK(bj.at("inner_dim") == 4);
  CHECK(bj.at("residual").get<double>() <= 1e-12);
}

TEST_CASE("cli: table matches the reference values") {
  const CliRun t = run_cli({"table", "--rplus", "3..7", "--json"});
  CHECK(t.code == cli::kOk);
  const io::json rows = io::json::parse(t.out);
  REQUIRE(rows.size() == 5);
  const long long prime[] = {3, 4, 6, 9, 14};
  const long long phi3[] = {3, 6, 10, 18, 30};
  for (int i = 0; i < 5; ++i) {
    CHECK(rows[i].at("r_plus") == i + 3);
    CHECK(rows[i].at("phi_prime") == prime[i]);
    CHECK(rows[i].at("phi_3") == phi3[i]);
  }

  CHECK(run_cli({"bounds", "table", "--rplus", "3..3", "--json"}).code == cli::kOk);

  // one computed row past the tabulated range, at least the previous row
  const CliRun t8 = run_cli({"table", "--rplus", "8..8", "--json"});
  CHECK(t8.code == cli::kOk);
  const io::json row8 = io::json::parse(t8.out);
  REQUIRE(row8.size() == 1);
  CHECK(row8[0].at("phi_prime").get<long long>() >= 14);
  CHECK(row8[0].at("phi_3").get<long long>() >= 30);

  CHECK(run_cli({"table", "--rplus", "9..8"}).code == cli::kUsageError);
  CHECK(run_cli({"table", "--rplus", "2..4"}).code == cli::kUsageError);
}

TEST_CASE("cli: text mode output") {
  const CliRun t = run_cli({"table", "--rplus", "3..4"});
  CHECK(t.code == cli::kOk);
  CHECK(t.out.find("r_plus") != std::string::npos);
  CHECK(t.out.find("phi_prime") != std::string::npos);

  const fs::path dir = tmp_dir();
  const std::string a7 = (dir / "a7text.json").string();
  run_cli({"gen", "antidist", "--n", "7", "--out", a7});
  const CliRun b = run_cli({"bounds", "--in", a7});
  CHECK(b.code == cli::kOk);
  CHECK(b.out.find("lb 6") != std::string::npos);
  CHECK(b.out.find("ub 6") != std::string::npos);
}

TEST_CASE("cli: usage and data errors") {
  CHECK(run_cli({"frobnicate"}).code == cli::kUsageError);
  CHECK(run_cli({"gen", "antidist"}).code == cli::kUsageError);  // missing --n
  CHECK(run_cli({"rank", "--in", "/nonexistent/file.json"}).code == cli::kDataError);

  const fs::path dir = tmp_dir();
  const std::string bad = (dir / "bad.json").string();
  io::write_file(bad, "{\"rows\": 1, \"cols\": 2, \"data\": [0.6, 0.6]}");
  CHECK(run_cli({"rank", "--in", bad}).code == cli::kDataError);  // row sum violation

  CHECK(run_cli({"gen", "antidist", "--n", "1"}).code == cli::kDataError);  // InvalidSize
}
