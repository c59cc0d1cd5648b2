#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "mptk/bounds_eig.hpp"
#include "mptk/cli.hpp"
#include "mptk/complex_matrix.hpp"
#include "mptk/errors.hpp"
#include "mptk/gap_profile.hpp"
#include "mptk/matrix_market.hpp"
#include "mptk/path_tracking.hpp"
#include "mptk/rng.hpp"
#include "test_helpers.hpp"

using namespace mptk;
using namespace mptk::testing;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = 0;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliResult result;
  result.code = run_command(args, out, err);
  result.out = out.str();
  result.err = err.str();
  return result;
}

const fs::path& scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "mptk-test-cli";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string write_matrix(const std::string& stem, const ComplexMatrix& a) {
  const fs::path path = scratch_dir() / (stem + ".mtx");
  write_matrix_market_file(path.string(), a);
  return path.string();
}

std::string write_text(const std::string& stem, const std::string& body) {
  const fs::path path = scratch_dir() / stem;
  std::ofstream out(path);
  out << body;
  out.close();
  return path.string();
}

ComplexMatrix read_string(const std::string& body) {
  std::istringstream in(body);
  return read_matrix_market(in, "inline");
}

ErrorCode thrown_code(const std::string& body) {
  try {
    read_string(body);
  } catch (const Error& e) {
    return e.code();
  }
  throw std::logic_error("expected a parse failure");
}

const json* find_bound(const json& doc, const std::string& id) {
  for (const json& entry : doc.at("bounds")) {
    if (entry.at("id").get<std::string>() == id) return &entry;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("matrix market write/read round trip is bit identical") {
  Rng rng(31);
  ComplexMatrix a = rng.gaussian(5, 5);
  a(0, 0) = Complex(-0.0, 0.0);
  a(1, 2) = Complex(1e-300, -1.0 / 3.0);
  a(3, 4) = Complex(12345.678901234567, 9.87654321e-7);

  std::ostringstream out;
  write_matrix_market(out, a, "round trip");
  std::istringstream in(out.str());
  const ComplexMatrix back = read_matrix_market(in, "round-trip");
  CHECK(bit_identical(a, back));

  const ComplexMatrix tall = rng.gaussian(4, 2);
  std::ostringstream tall_out;
  write_matrix_market(tall_out, tall);
  std::istringstream tall_in(tall_out.str());
  CHECK(bit_identical(tall, read_matrix_market(tall_in, "tall")));
}

TEST_CASE("matrix market reads the documented formats") {
  const ComplexMatrix coord = read_string(
      "%%MatrixMarket matrix coordinate complex general\n"
      "% a comment\n"
      "2 2 1\n"
      "1 2 3 4\n");
  CHECK(coord.rows() == 2);
  CHECK(coord(0, 1) == Complex(3, 4));
  CHECK(coord(0, 0) == Complex(0, 0));

  const ComplexMatrix array = read_string(
      "%%MatrixMarket matrix array real general\n"
      "2 2\n"
      "1\n2\n3\n4\n");
  CHECK(array(0, 0) == Complex(1, 0));
  CHECK(array(1, 0) == Complex(2, 0));  // column-major order
  CHECK(array(0, 1) == Complex(3, 0));
  CHECK(array(1, 1) == Complex(4, 0));

  const ComplexMatrix symmetric = read_string(
      "%%MatrixMarket matrix coordinate real symmetric\n"
      "3 3 3\n"
      "1 1 5\n"
      "3 1 2\n"
      "3 3 1\n");
  CHECK(symmetric(0, 0) == Complex(5, 0));
  CHECK(symmetric(2, 0) == Complex(2, 0));
  CHECK(symmetric(0, 2) == Complex(2, 0));
  CHECK(symmetric(2, 2) == Complex(1, 0));

  const ComplexMatrix hermitian = read_string(
      "%%MatrixMarket matrix coordinate complex hermitian\n"
      "2 2 2\n"
      "1 1 5 0\n"
      "2 1 1 1\n");
  CHECK(hermitian(1, 0) == Complex(1, 1));
  CHECK(hermitian(0, 1) == Complex(1, -1));

  const ComplexMatrix integer = read_string(
      "%%MatrixMarket matrix coordinate integer general\n"
      "1 1 1\n"
      "1 1 7\n");
  CHECK(integer(0, 0) == Complex(7, 0));
}

TEST_CASE("matrix market rejects malformed input") {
  CHECK(thrown_code("%%MatrixMarket matrix coordinate pattern general\n2 2 1\n1 1\n") ==
        ErrorCode::ParseError);
  CHECK(thrown_code("%%MatrixMarket matrix coordinate real skew-symmetric\n"
                    "2 2 1\n2 1 1\n") == ErrorCode::ParseError);
  CHECK(thrown_code("%%NotMatrixMarket matrix array real general\n1 1\n1\n") ==
        ErrorCode::ParseError);
  CHECK(thrown_code("%%MatrixMarket matrix coordinate real general\n"
                    "2 2 2\n1 1 1\n") == ErrorCode::ParseError);  // entry count short
  CHECK(thrown_code("%%MatrixMarket matrix coordinate real symmetric\n"
                    "2 2 1\n1 2 3\n") == ErrorCode::ParseError);  // above the diagonal
  CHECK(thrown_code("%%MatrixMarket matrix coordinate real general\n"
                    "2 2 1\n3 1 1\n") == ErrorCode::ParseError);  // index out of range
  CHECK(thrown_code("%%MatrixMarket matrix coordinate real general\n"
                    "1 1 1\n1 1 nan\n") == ErrorCode::ParseError);  // non-finite
  CHECK(thrown_code("%%MatrixMarket matrix coordinate real general\n"
                    "2 2 2\n1 1 1\n1 1 2\n") == ErrorCode::ParseError);  // duplicate
  CHECK(thrown_code("%%MatrixMarket matrix coordinate real general\n"
                    "1 1 1\n1 1 1\nextra\n") == ErrorCode::ParseError);  // trailing data
  CHECK(thrown_code("%%MatrixMarket matrix coordinate complex hermitian\n"
                    "1 1 1\n1 1 2 1\n") == ErrorCode::SymmetryViolation);
}

TEST_CASE("eig-verify pipeline matches the library and exits cleanly") {
  const ComplexMatrix a = diagonal({0, 3});
  const ComplexMatrix da = real_matrix({{0, 0.1}, {0.1, 0}});
  const std::string a_path = write_matrix("verify_a", a);
  const std::string da_path = write_matrix("verify_da", da);

  const CliResult result =
      run_cli({"eig-verify", "--a", a_path, "--da", da_path, "--partition", "1,1"});
  REQUIRE(result.code == 0);
  const json doc = json::parse(result.out);
  CHECK(doc.at("schema").get<std::string>() == "mptk/1");
  CHECK(doc.at("summary").at("all_satisfied").get<bool>());
  CHECK(doc.at("grid").at("requested_points").get<std::size_t>() == 1025);

  // The reported slacks must match a direct library evaluation.
  const EigPath path = track_eig_path(a, da, BlockPartition{{1, 1}}, 1025);
  const GapProfile gaps = gap_profile_eig(path);
  const BoundReport combined = combined_all_blocks(path, gaps);
  const BoundReport total = total_bound(path);
  const BoundReport hw = hoffman_wielandt(a, a + da);

  const json* combined_doc = find_bound(doc, "combined_all");
  REQUIRE(combined_doc != nullptr);
  CHECK(std::abs(combined_doc->at("slack").get<double>() - combined.slack) <= 1e-12);
  const json* total_doc = find_bound(doc, "total_spectral");
  REQUIRE(total_doc != nullptr);
  CHECK(std::abs(total_doc->at("slack").get<double>() - total.slack) <= 1e-12);
  const json* hw_doc = find_bound(doc, "hoffman_wielandt");
  REQUIRE(hw_doc != nullptr);
  CHECK(std::abs(hw_doc->at("slack").get<double>() - hw.slack) <= 1e-12);
  CHECK(find_bound(doc, "mean_value") != nullptr);
  CHECK(find_bound(doc, "gap_lower") != nullptr);
}

TEST_CASE("eig-verify rejects a partition that does not sum to n") {
  const std::string a_path = write_matrix("bad_part_a", diagonal({0, 3}));
  const std::string da_path = write_matrix("bad_part_da", real_matrix({{0, 0.1}, {0.1, 0}}));
  const CliResult result =
      run_cli({"eig-verify", "--a", a_path, "--da", da_path, "--partition", "1,2"});
  CHECK(result.code == 2);
  CHECK(result.err.find("CountMismatch") != std::string::npos);
}

TEST_CASE("eig-verify with a zero perturbation is trivially satisfied") {
  const std::string a_path = write_matrix("zero_a", diagonal({0, 3}));
  const std::string da_path = write_matrix("zero_da", ComplexMatrix(2, 2));
  const CliResult result = run_cli(
      {"eig-verify", "--a", a_path, "--da", da_path, "--partition", "1,1", "--grid", "65"});
  REQUIRE(result.code == 0);
  const json doc = json::parse(result.out);
  const json* combined = find_bound(doc, "combined_all");
  REQUIRE(combined != nullptr);
  CHECK(combined->at("lhs").get<double>() <= 1e-20);
  CHECK(doc.at("summary").at("all_satisfied").get<bool>());
}

TEST_CASE("track emits grid samples and optional bases") {
  const std::string a_path = write_matrix("track_a", diagonal({0, 3}));
  const std::string da_path = write_matrix("track_da", real_matrix({{0, 0.1}, {0.1, 0}}));

  const CliResult plain = run_cli(
      {"track", "--a", a_path, "--da", da_path, "--partition", "1,1", "--grid", "33"});
  REQUIRE(plain.code == 0);
  const json doc = json::parse(plain.out);
  REQUIRE(doc.at("samples").size() == 33);
  CHECK(doc.at("samples").front().at("t").get<double>() == 0.0);
  CHECK(doc.at("samples").back().at("t").get<double>() == 1.0);
  CHECK(doc.at("samples").front().contains("block_eigenvalues"));
  CHECK_FALSE(doc.at("samples").front().contains("bases"));

  const CliResult with_bases =
      run_cli({"track", "--a", a_path, "--da", da_path, "--partition", "1,1", "--grid", "9",
               "--with-bases"});
  REQUIRE(with_bases.code == 0);
  const json based = json::parse(with_bases.out);
  CHECK(based.at("samples").front().contains("bases"));
  CHECK(based.at("samples").front().at("bases").size() == 2);

  // Exactly one input pair is allowed.
  const CliResult both = run_cli({"track", "--a", a_path, "--da", da_path, "--b", a_path,
                                  "--db", da_path, "--partition", "1,1"});
  CHECK(both.code == 2);
  const CliResult none = run_cli({"track", "--partition", "1,1"});
  CHECK(none.code == 2);
}

TEST_CASE("svd-verify smoke on square and tall inputs") {
  const std::string b_path = write_matrix("svd_b", diagonal({3, 1}));
  const std::string db_path = write_matrix("svd_db", real_matrix({{0, 0.1}, {0.1, 0}}));
  const CliResult square = run_cli(
      {"svd-verify", "--b", b_path, "--db", db_path, "--partition", "1,1", "--grid", "65"});
  REQUIRE(square.code == 0);
  const json doc = json::parse(square.out);
  CHECK(doc.at("summary").at("all_satisfied").get<bool>());
  CHECK(find_bound(doc, "mirsky") != nullptr);
  CHECK(find_bound(doc, "svd_combined_all") != nullptr);
  CHECK(find_bound(doc, "svd_gap_lower") != nullptr);

  const std::string tall_b = write_matrix("svd_tall_b", real_matrix({{3, 0}, {0, 1}, {0, 0}}));
  const std::string tall_db =
      write_matrix("svd_tall_db", real_matrix({{0, 0}, {0, 0}, {0.1, 0}}));
  const CliResult tall = run_cli(
      {"svd-verify", "--b", tall_b, "--db", tall_db, "--partition", "1,1", "--grid", "65"});
  CHECK(tall.code == 0);

  // Wide inputs are rejected up front.
  const std::string wide_b = write_matrix("svd_wide_b", real_matrix({{3, 0, 0}}));
  const std::string wide_db = write_matrix("svd_wide_db", real_matrix({{0, 0.1, 0}}));
  const CliResult wide = run_cli(
      {"svd-verify", "--b", wide_b, "--db", wide_db, "--partition", "1"});
  CHECK(wide.code == 2);
}

TEST_CASE("suite subcommand runs from a config file") {
  const std::string config_path = write_text("suite_config.json",
                                             "{\"kind\": \"hermitian\", \"trials\": 3, "
                                             "\"seed\": 9, \"n_min\": 2, \"n_max\": 4, "
                                             "\"grid_points\": 33}");
  const CliResult result = run_cli({"suite", "--config", config_path});
  REQUIRE(result.code == 0);
  const json doc = json::parse(result.out);
  CHECK(doc.at("trials_completed").get<std::size_t>() == 3);
  CHECK(doc.at("passed").get<bool>());
}

TEST_CASE("compare subcommand emits the CSV table") {
  const CliResult result = run_cli({"compare", "--kind", "hermitian", "--trials", "2",
                                    "--seed", "4", "--n-min", "2", "--n-max", "3",
                                    "--grid", "33"});
  REQUIRE(result.code == 0);
  std::istringstream lines(result.out);
  std::string header;
  REQUIRE(std::getline(lines, header));
  CHECK(header == "trial,kind,n,m,k,bound,lhs,rhs,slack,rel_slack,applicable");
  std::size_t rows = 0;
  for (std::string line; std::getline(lines, line);) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows > 0);
}

TEST_CASE("usage errors exit with code 2") {
  const std::string a_path = write_matrix("usage_a", diagonal({0, 3}));
  const std::string da_path = write_matrix("usage_da", real_matrix({{0, 0.1}, {0.1, 0}}));

  CHECK(run_cli({"eig-verify", "--bogus"}).code == 2);
  CHECK(run_cli({"eig-verify", "--a", a_path}).code == 2);  // missing required flags
  CHECK(run_cli({"eig-verify", "--a", a_path, "--da", da_path, "--partition", "1,1",
                 "--grid", "1"})
            .code == 2);
  CHECK(run_cli({"nonsense"}).code == 2);
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"eig-verify", "--a", "/nonexistent.mtx", "--da", da_path, "--partition",
                 "1,1"})
            .code == 2);
}

TEST_CASE("--out writes the report to a file") {
  const std::string a_path = write_matrix("out_a", diagonal({0, 3}));
  const std::string da_path = write_matrix("out_da", real_matrix({{0, 0.1}, {0.1, 0}}));
  const fs::path out_path = scratch_dir() / "report.json";
  std::error_code ignored;
  fs::remove(out_path, ignored);

  const CliResult result = run_cli({"eig-verify", "--a", a_path, "--da", da_path,
                                    "--partition", "1,1", "--grid", "65", "--out",
                                    out_path.string()});
  REQUIRE(result.code == 0);
  std::ifstream in(out_path);
  REQUIRE(in.good());
  const json doc = json::parse(in);
  CHECK(doc.at("summary").at("all_satisfied").get<bool>());
}

TEST_CASE("--version reports the tool version") {
  const CliResult result = run_cli({"--version"});
  CHECK(result.code == 0);
  CHECK(result.out.find("1.0.0") != std::string::npos);
}
