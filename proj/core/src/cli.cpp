#include "mptk/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <utility>

#include "CLI11.hpp"
#include "json.hpp"
#include "mptk/bounds_eig.hpp"
#include "mptk/bounds_svd.hpp"
#include "mptk/gap_profile.hpp"
#include "mptk/harness.hpp"
#include "mptk/matrix_market.hpp"
#include "mptk/path_tracking.hpp"
#include "mptk/report.hpp"
#include "mptk/subspace.hpp"

namespace mptk {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, path + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

ComplexMatrix load_matrix(const std::string& role, const std::string& path,
                          std::vector<InputDigest>& inputs) {
  const std::string bytes = slurp(path);
  inputs.push_back({role, path, fnv1a64_hex(bytes)});
  std::istringstream stream(bytes);
  return read_matrix_market(stream, path);
}

BlockPartition parse_partition(const std::string& text) {
  BlockPartition partition;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string token =
        text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::size_t consumed = 0;
    unsigned long value = 0;
    try {
      value = std::stoul(token, &consumed);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "invalid partition entry '" + token + "'");
    }
    if (consumed != token.size() || value == 0)
      throw Error(ErrorCode::ParseError, "invalid partition entry '" + token + "'");
    partition.sizes.push_back(value);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return partition;
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw Error(ErrorCode::ParseError, out_path + ": cannot open file for writing");
  file << text;
  if (!file) throw Error(ErrorCode::ParseError, out_path + ": write failed");
}

std::size_t checked_target(std::size_t target_block, const BlockPartition& partition) {
  if (target_block < 1 || target_block > partition.count())
    throw Error(ErrorCode::InvalidArgument, "--target-block out of range");
  return target_block - 1;
}

std::vector<double> front_values(const GapProfile& profile) {
  std::vector<double> out;
  out.reserve(profile.per_block.size());
  for (const auto& row : profile.per_block) out.push_back(row.front());
  return out;
}

struct VerifyFlags {
  std::string first_path;
  std::string second_path;
  std::string partition_text;
  std::size_t grid = 1025;
  std::size_t target_block = 1;
  std::string out_path;
};

int eig_verify(const VerifyFlags& flags, std::ostream& out) {
  std::vector<InputDigest> inputs;
  const ComplexMatrix a = load_matrix("a", flags.first_path, inputs);
  const ComplexMatrix da = load_matrix("da", flags.second_path, inputs);
  require_hermitian(a, "--a");
  require_hermitian(da, "--da");
  if (da.rows() != a.rows())
    throw Error(ErrorCode::ShapeError, "--a and --da have different sizes");
  const BlockPartition partition = parse_partition(flags.partition_text);
  partition.validate(a.rows());
  const std::size_t target = checked_target(flags.target_block, partition);

  const ComplexMatrix at = a + da;
  const EigPath path = track_eig_path(a, da, partition, flags.grid);
  const GapProfile gaps = gap_profile_eig(path);

  std::vector<BoundReport> bounds;
  bounds.push_back(hoffman_wielandt(a, at));
  const ComplexMatrix& u_start = path.samples.front().basis_blocks[target];
  const ComplexMatrix& u_end = path.samples.back().basis_blocks[target];
  bounds.push_back(davis_kahan(a, at, u_start, u_end));
  bounds.push_back(li_sun_combined(a, at, u_start, u_end));
  bounds.push_back(combined_all_blocks(path, gaps));
  CombinedSingleReports single = combined_single_block(path, gaps, target);
  bounds.push_back(std::move(single.main));
  bounds.push_back(std::move(single.sin_f));
  bounds.push_back(std::move(single.sin_only));
  bounds.push_back(total_bound(path));
  for (BoundReport& report : gap_lower_bound(gaps, path.delta))
    bounds.push_back(std::move(report));
  bounds.push_back(mvt_check(path, gaps, target));

  VerifyDocument doc;
  doc.command = "eig-verify";
  doc.inputs = std::move(inputs);
  doc.partition = partition.sizes;
  doc.target_block = flags.target_block;
  doc.grid_samples = path.samples.size();
  doc.metadata = path.metadata;
  doc.gaps.push_back({"delta", front_values(gaps), gaps.minima});

  DistanceSummary basis{"basis", {}};
  DistanceSummary sines{"sin_theta", {}};
  for (std::size_t j = 0; j < partition.count(); ++j) {
    const ComplexMatrix& start = path.samples.front().basis_blocks[j];
    const ComplexMatrix& end = path.samples.back().basis_blocks[j];
    basis.values.push_back(frobenius_norm(end - start));
    sines.values.push_back(sin_theta(start, end).fro);
  }
  doc.endpoint_distances.push_back(std::move(basis));
  doc.endpoint_distances.push_back(std::move(sines));
  doc.bounds = std::move(bounds);

  emit(render_verify_report(doc), flags.out_path, out);
  return summarize_bounds(doc.bounds).all_satisfied ? 0 : 1;
}

int svd_verify(const VerifyFlags& flags, std::ostream& out) {
  std::vector<InputDigest> inputs;
  const ComplexMatrix b = load_matrix("b", flags.first_path, inputs);
  const ComplexMatrix db = load_matrix("db", flags.second_path, inputs);
  if (b.rows() < b.cols())
    throw Error(ErrorCode::ShapeError, "--b must have rows >= cols");
  if (db.rows() != b.rows() || db.cols() != b.cols())
    throw Error(ErrorCode::ShapeError, "--b and --db have different shapes");
  const BlockPartition partition = parse_partition(flags.partition_text);
  partition.validate(b.cols());
  const std::size_t target = checked_target(flags.target_block, partition);

  const ComplexMatrix bt = b + db;
  const SvdPath path = track_svd_path(b, db, partition, flags.grid);
  const SvdGapProfile gaps = gap_profile_svd(path);

  std::vector<BoundReport> bounds;
  bounds.push_back(mirsky(b, bt));
  bounds.push_back(combined_all_svd(path, gaps));
  SvdCombinedReports single = combined_single_svd(path, gaps, target);
  bounds.push_back(std::move(single.main));
  bounds.push_back(std::move(single.sin_variant));
  for (BoundReport& report : svd_gap_lower_bound(gaps, path.delta))
    bounds.push_back(std::move(report));
  bounds.push_back(svd_mvt_check(path, gaps, target));

  VerifyDocument doc;
  doc.command = "svd-verify";
  doc.inputs = std::move(inputs);
  doc.partition = partition.sizes;
  doc.target_block = flags.target_block;
  doc.grid_samples = path.samples.size();
  doc.metadata = path.metadata;
  doc.gaps.push_back({"rho", front_values(gaps.rho), gaps.rho.minima});
  doc.gaps.push_back({"rho_hat", front_values(gaps.rho_hat), gaps.rho_hat.minima});
  doc.gaps.push_back({"sigma", front_values(gaps.sigma), gaps.sigma.minima});
  doc.has_sigma_min = true;
  doc.sigma_min = gaps.sigma_min;

  DistanceSummary left{"left", {}};
  DistanceSummary right{"right", {}};
  DistanceSummary sin_left{"sin_left", {}};
  DistanceSummary sin_right{"sin_right", {}};
  for (std::size_t j = 0; j < partition.count(); ++j) {
    const SvdPathSample& start = path.samples.front();
    const SvdPathSample& end = path.samples.back();
    left.values.push_back(frobenius_norm(end.left_blocks[j] - start.left_blocks[j]));
    right.values.push_back(frobenius_norm(end.right_blocks[j] - start.right_blocks[j]));
    sin_left.values.push_back(sin_theta(start.left_blocks[j], end.left_blocks[j]).fro);
    sin_right.values.push_back(sin_theta(start.right_blocks[j], end.right_blocks[j]).fro);
  }
  doc.endpoint_distances.push_back(std::move(left));
  doc.endpoint_distances.push_back(std::move(right));
  doc.endpoint_distances.push_back(std::move(sin_left));
  doc.endpoint_distances.push_back(std::move(sin_right));
  if (b.rows() > b.cols()) {
    const double null_distance = frobenius_norm(path.samples.back().null_block -
                                                path.samples.front().null_block);
    doc.endpoint_distances.push_back({"null", {null_distance}});
  }
  doc.bounds = std::move(bounds);

  emit(render_verify_report(doc), flags.out_path, out);
  return summarize_bounds(doc.bounds).all_satisfied ? 0 : 1;
}

struct TrackFlags {
  std::string a_path, da_path, b_path, db_path;
  std::string partition_text;
  std::size_t grid = 1025;
  std::string dump_path;
  bool with_bases = false;
};

int run_track(const TrackFlags& flags, std::ostream& out) {
  const bool eig_mode = !flags.a_path.empty();
  const bool svd_mode = !flags.b_path.empty();
  if (eig_mode == svd_mode)
    throw Error(ErrorCode::InvalidArgument, "track needs exactly one of --a/--da or --b/--db");
  std::vector<InputDigest> inputs;
  const BlockPartition partition = parse_partition(flags.partition_text);
  if (eig_mode) {
    if (flags.da_path.empty())
      throw Error(ErrorCode::InvalidArgument, "track --a also needs --da");
    const ComplexMatrix a = load_matrix("a", flags.a_path, inputs);
    const ComplexMatrix da = load_matrix("da", flags.da_path, inputs);
    require_hermitian(a, "--a");
    require_hermitian(da, "--da");
    partition.validate(a.rows());
    const EigPath path = track_eig_path(a, da, partition, flags.grid);
    emit(render_eig_track(path, inputs, flags.with_bases), flags.dump_path, out);
    return 0;
  }
  if (flags.db_path.empty())
    throw Error(ErrorCode::InvalidArgument, "track --b also needs --db");
  const ComplexMatrix b = load_matrix("b", flags.b_path, inputs);
  const ComplexMatrix db = load_matrix("db", flags.db_path, inputs);
  if (db.rows() != b.rows() || db.cols() != b.cols())
    throw Error(ErrorCode::ShapeError, "--b and --db have different shapes");
  partition.validate(b.cols());
  const SvdPath path = track_svd_path(b, db, partition, flags.grid);
  emit(render_svd_track(path, inputs, flags.with_bases), flags.dump_path, out);
  return 0;
}

ProblemKind parse_kind(const std::string& text) {
  if (text == "hermitian") return ProblemKind::Hermitian;
  if (text == "general") return ProblemKind::General;
  throw Error(ErrorCode::ParseError, "kind must be 'hermitian' or 'general', got '" + text + "'");
}

SuiteConfig parse_suite_config(const std::string& path) {
  const std::string bytes = slurp(path);
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
  SuiteConfig config;
  try {
    if (parsed.contains("kind")) config.kind = parse_kind(parsed["kind"].get<std::string>());
    config.trials = parsed.value("trials", config.trials);
    config.seed = parsed.value("seed", config.seed);
    config.n_min = parsed.value("n_min", config.n_min);
    config.n_max = parsed.value("n_max", config.n_max);
    config.m_extra_max = parsed.value("m_extra_max", config.m_extra_max);
    config.grid_points = parsed.value("grid_points", config.grid_points);
    config.enforce_conditions = parsed.value("enforce_conditions", config.enforce_conditions);
    config.margin = parsed.value("margin", config.margin);
    config.fixed_perturb_fro = parsed.value("fixed_perturb_fro", config.fixed_perturb_fro);
    config.threads = parsed.value("threads", config.threads);
    config.collect_rows = parsed.value("collect_rows", config.collect_rows);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
  return config;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"matrix perturbation toolkit: tracked homotopies and combined "
               "eigenvalue/singular-value perturbation bounds"};
  app.name("mptk");
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  VerifyFlags eig_flags;
  CLI::App* eig = app.add_subcommand("eig-verify",
                                     "verify all Hermitian eigenvalue/eigenspace bounds");
  eig->add_option("--a", eig_flags.first_path, "Hermitian matrix A (Matrix Market)")->required();
  eig->add_option("--da", eig_flags.second_path, "Hermitian perturbation dA")->required();
  eig->add_option("--partition", eig_flags.partition_text, "block sizes, e.g. 2,1,3")->required();
  eig->add_option("--grid", eig_flags.grid, "homotopy grid points (default 1025)");
  eig->add_option("--target-block", eig_flags.target_block,
                  "1-based block for single-block bounds (default 1)");
  eig->add_option("--out", eig_flags.out_path, "write the JSON report here instead of stdout");

  VerifyFlags svd_flags;
  CLI::App* svd = app.add_subcommand("svd-verify",
                                     "verify all singular value/subspace bounds");
  svd->add_option("--b", svd_flags.first_path, "matrix B with rows >= cols")->required();
  svd->add_option("--db", svd_flags.second_path, "perturbation dB")->required();
  svd->add_option("--partition", svd_flags.partition_text, "block sizes, e.g. 2,1,3")->required();
  svd->add_option("--grid", svd_flags.grid, "homotopy grid points (default 1025)");
  svd->add_option("--target-block", svd_flags.target_block,
                  "1-based block for single-block bounds (default 1)");
  svd->add_option("--out", svd_flags.out_path, "write the JSON report here instead of stdout");

  TrackFlags track_flags;
  CLI::App* track = app.add_subcommand("track", "dump tracked decomposition path samples");
  track->add_option("--a", track_flags.a_path, "Hermitian matrix A");
  track->add_option("--da", track_flags.da_path, "Hermitian perturbation dA");
  track->add_option("--b", track_flags.b_path, "matrix B with rows >= cols");
  track->add_option("--db", track_flags.db_path, "perturbation dB");
  track->add_option("--partition", track_flags.partition_text, "block sizes")->required();
  track->add_option("--grid", track_flags.grid, "homotopy grid points (default 1025)");
  track->add_option("--dump-path", track_flags.dump_path, "output file (default stdout)");
  track->add_flag("--with-bases", track_flags.with_bases, "include tracked bases per sample");

  std::string suite_config_path;
  std::string suite_out_path;
  CLI::App* suite = app.add_subcommand("suite", "run a randomized verification suite");
  suite->add_option("--config", suite_config_path, "suite configuration JSON")->required();
  suite->add_option("--out", suite_out_path, "write the JSON report here instead of stdout");

  SuiteConfig compare_config;
  std::string compare_kind = "hermitian";
  std::string compare_out_path;
  CLI::App* compare = app.add_subcommand(
      "compare", "tabulate slack of tracked bounds against classical comparators (CSV)");
  compare->add_option("--kind", compare_kind, "hermitian or general (default hermitian)");
  compare->add_option("--trials", compare_config.trials, "trial count (default 200)");
  compare->add_option("--seed", compare_config.seed, "base seed (default 1)");
  compare->add_option("--n-min", compare_config.n_min, "smallest dimension (default 2)");
  compare->add_option("--n-max", compare_config.n_max, "largest dimension (default 10)");
  compare->add_option("--m-extra", compare_config.m_extra_max,
                      "general kind: max extra rows (default 3)");
  compare->add_option("--grid", compare_config.grid_points, "grid points (default 257)");
  compare->add_option("--out", compare_out_path, "write the CSV here instead of stdout");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("mptk");
  for (const std::string& arg : args) argv.push_back(arg.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (eig->parsed()) return eig_verify(eig_flags, out);
    if (svd->parsed()) return svd_verify(svd_flags, out);
    if (track->parsed()) return run_track(track_flags, out);
    if (suite->parsed()) {
      const SuiteConfig config = parse_suite_config(suite_config_path);
      const SuiteReport report = run_suite(config);
      emit(render_suite_report(report, true), suite_out_path, out);
      return suite_passed(report) ? 0 : 1;
    }
    if (compare->parsed()) {
      compare_config.kind = parse_kind(compare_kind);
      compare_config.collect_rows = true;
      const SuiteReport report = run_suite(compare_config);
      emit(render_compare_csv(report.rows), compare_out_path, out);
      return suite_passed(report) ? 0 : 1;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no subcommand\n";
  return 2;
}

}  // namespace mptk
