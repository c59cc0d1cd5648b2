#include "mptk/report.hpp"

#include <charconv>
#include <cstdint>

#include "json.hpp"
#include "mptk/bounds_eig.hpp"

namespace mptk {

namespace {

using nlohmann::json;

json flags_to_json(const std::vector<PathFlag>& flags) {
  json out = json::array();
  for (const PathFlag& flag : flags)
    out.push_back({{"sample", flag.sample}, {"block", flag.block}, {"value", flag.value}});
  return out;
}

json metadata_to_json(const PathMetadata& metadata, std::size_t samples) {
  return {
      {"requested_points", metadata.requested_points},
      {"samples", samples},
      {"adaptive_insertions", metadata.adaptive_insertions},
      {"max_spacing", metadata.max_spacing},
      {"block_ambiguity", flags_to_json(metadata.block_ambiguity)},
      {"continuity_flags", flags_to_json(metadata.continuity_flags)},
      {"gauge",
       {{"max_hermiticity_residual", metadata.max_gauge_hermiticity},
        {"min_eigenvalue", metadata.min_gauge_eigenvalue}}},
  };
}

json inputs_to_json(const std::vector<InputDigest>& inputs) {
  json out = json::array();
  for (const InputDigest& input : inputs)
    out.push_back({{"role", input.role}, {"path", input.path}, {"fnv1a64", input.digest}});
  return out;
}

json bound_to_json(const BoundReport& report) {
  json components = json::object();
  for (const auto& [key, value] : report.components) components[key] = value;
  return {
      {"id", bound_id_name(report.id)},
      {"lhs", report.lhs},
      {"rhs", report.rhs},
      {"slack", report.slack},
      {"relative_slack", relative_slack(report)},
      {"applicable", report.applicable},
      {"satisfied", bound_satisfied(report)},
      {"condition_note", report.condition_note},
      {"components", components},
  };
}

json matrix_to_json(const ComplexMatrix& a) {
  json rows = json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < a.cols(); ++j)
      row.push_back(json::array({a(i, j).real(), a(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

json document_header(const std::string& command) {
  return {{"schema", kSchemaVersion}, {"tool_version", kToolVersion}, {"command", command}};
}

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

}  // namespace

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char byte : bytes) {
    hash ^= byte;
    hash *= 1099511628211ULL;
  }
  char buffer[17];
  for (int i = 15; i >= 0; --i) {
    buffer[i] = "0123456789abcdef"[hash & 0xF];
    hash >>= 4;
  }
  buffer[16] = '\0';
  return std::string(buffer, 16);
}

BoundSummary summarize_bounds(const std::vector<BoundReport>& bounds) {
  BoundSummary summary;
  summary.total = bounds.size();
  for (const BoundReport& report : bounds) {
    if (!report.applicable) continue;
    ++summary.applicable;
    if (bound_satisfied(report)) ++summary.satisfied;
  }
  summary.all_satisfied = summary.satisfied == summary.applicable;
  return summary;
}

std::string render_verify_report(const VerifyDocument& doc) {
  json out = document_header(doc.command);
  out["inputs"] = inputs_to_json(doc.inputs);
  out["partition"] = doc.partition;
  out["target_block"] = doc.target_block;
  out["grid"] = metadata_to_json(doc.metadata, doc.grid_samples);

  json gaps = json::array();
  for (const GapSummary& gap : doc.gaps)
    gaps.push_back({{"name", gap.name}, {"at_zero", gap.at_zero}, {"minima", gap.minima}});
  out["gaps"] = gaps;
  if (doc.has_sigma_min) out["sigma_min"] = doc.sigma_min;

  json distances = json::array();
  for (const DistanceSummary& distance : doc.endpoint_distances)
    distances.push_back({{"family", distance.family}, {"values", distance.values}});
  out["endpoint_distances"] = distances;

  json bounds = json::array();
  for (const BoundReport& report : doc.bounds) bounds.push_back(bound_to_json(report));
  out["bounds"] = bounds;

  const BoundSummary summary = summarize_bounds(doc.bounds);
  out["summary"] = {{"bounds", summary.total},
                    {"applicable", summary.applicable},
                    {"satisfied", summary.satisfied},
                    {"all_satisfied", summary.all_satisfied}};
  return out.dump(2) + "\n";
}

namespace {

template <typename Path>
json track_skeleton(const Path& path, const std::vector<InputDigest>& inputs) {
  json out = document_header("track");
  out["inputs"] = inputs_to_json(inputs);
  out["partition"] = path.partition.sizes;
  out["grid"] = metadata_to_json(path.metadata, path.samples.size());
  return out;
}

}  // namespace

std::string render_eig_track(const EigPath& path, const std::vector<InputDigest>& inputs,
                             bool with_bases) {
  json out = track_skeleton(path, inputs);
  json samples = json::array();
  for (const EigPathSample& sample : path.samples) {
    json entry = {{"t", sample.t}, {"block_eigenvalues", sample.block_eigs}};
    if (with_bases) {
      json bases = json::array();
      for (const ComplexMatrix& basis : sample.basis_blocks)
        bases.push_back(matrix_to_json(basis));
      entry["bases"] = bases;
    }
    samples.push_back(std::move(entry));
  }
  out["samples"] = samples;
  return out.dump(2) + "\n";
}

std::string render_svd_track(const SvdPath& path, const std::vector<InputDigest>& inputs,
                             bool with_bases) {
  json out = track_skeleton(path, inputs);
  json samples = json::array();
  for (const SvdPathSample& sample : path.samples) {
    json entry = {{"t", sample.t}, {"block_singular_values", sample.block_sings}};
    if (with_bases) {
      json left = json::array();
      json right = json::array();
      for (const ComplexMatrix& basis : sample.left_blocks) left.push_back(matrix_to_json(basis));
      for (const ComplexMatrix& basis : sample.right_blocks)
        right.push_back(matrix_to_json(basis));
      entry["left_bases"] = left;
      entry["right_bases"] = right;
      if (sample.null_block.cols() > 0) entry["null_basis"] = matrix_to_json(sample.null_block);
    }
    samples.push_back(std::move(entry));
  }
  out["samples"] = samples;
  return out.dump(2) + "\n";
}

std::string render_suite_report(const SuiteReport& report, bool include_wall_time) {
  json out = document_header("suite");
  out["config"] = {
      {"kind", problem_kind_name(report.config.kind)},
      {"trials", report.config.trials},
      {"seed", report.config.seed},
      {"n_min", report.config.n_min},
      {"n_max", report.config.n_max},
      {"m_extra_max", report.config.m_extra_max},
      {"grid_points", report.config.grid_points},
      {"enforce_conditions", report.config.enforce_conditions},
      {"margin", report.config.margin},
      {"fixed_perturb_fro", report.config.fixed_perturb_fro},
      {"threads", report.config.threads},
      {"collect_rows", report.config.collect_rows},
  };
  out["trials_completed"] = report.trials_completed;
  out["trial_failures"] = report.trial_failures;
  out["failure_messages"] = report.failure_messages;

  json tallies = json::object();
  for (const auto& [id, tally] : report.tallies) {
    tallies[bound_id_name(id)] = {
        {"evaluated", tally.evaluated},
        {"applicable", tally.applicable},
        {"satisfied", tally.satisfied},
        {"min_slack", tally.min_slack},
        {"min_relative_slack", tally.min_relative_slack},
    };
  }
  out["tallies"] = tallies;

  out["checks"] = {
      {"dominance_checks", report.dominance_checks},
      {"dominance_violations", report.dominance_violations},
      {"reduction_checks", report.reduction_checks},
      {"reduction_violations", report.reduction_violations},
      {"max_reduction_gap", report.max_reduction_gap},
      {"esin_checks", report.esin_checks},
      {"esin_violations", report.esin_violations},
      {"gap_prediction_violations", report.gap_prediction_violations},
      {"block_ambiguity_events", report.block_ambiguity_events},
      {"continuity_events", report.continuity_events},
      {"gauge",
       {{"max_hermiticity_residual", report.max_gauge_hermiticity},
        {"min_eigenvalue", report.min_gauge_eigenvalue}}},
  };
  out["passed"] = suite_passed(report);
  if (include_wall_time) out["wall_time_seconds"] = report.wall_time_seconds;
  return out.dump(2) + "\n";
}

std::string render_compare_csv(const std::vector<CompareRow>& rows) {
  std::string out = "trial,kind,n,m,k,bound,lhs,rhs,slack,rel_slack,applicable\n";
  for (const CompareRow& row : rows) {
    out += std::to_string(row.trial);
    out += ',';
    out += row.kind;
    out += ',';
    out += std::to_string(row.n);
    out += ',';
    out += std::to_string(row.m);
    out += ',';
    out += std::to_string(row.k);
    out += ',';
    out += row.bound;
    out += ',';
    out += format_double(row.lhs);
    out += ',';
    out += format_double(row.rhs);
    out += ',';
    out += format_double(row.slack);
    out += ',';
    out += format_double(row.relative_slack);
    out += ',';
    out += row.applicable ? '1' : '0';
    out += '\n';
  }
  return out;
}

}  // namespace mptk
