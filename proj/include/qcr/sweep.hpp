#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qcr/ensembles.hpp"
#include "qcr/io.hpp"

namespace qcr {

enum class MeasurementPolicy { Fixed, Random, Mub };

struct SweepConfig {
  RelationId relation_id = RelationId::EQ5;
  EnsembleConfig ensemble;
  MeasurementPolicy policy = MeasurementPolicy::Random;
  /// Fixed policy: the measurements used for every instance.
  std::vector<ProjectiveMeasurement> fixed;
  /// Random and Mub policies: how many measurements per instance.
  int n_measurements = 2;
  /// Mub policy: which members of the family, in order (default 0..n-1).
  std::vector<int> mub_indices;
  int measured = 0;
  std::vector<int> memory;
  RelationOptions options;
};

/// Parses a sweep config. Relative measurement file paths are resolved
/// against `base_dir`.
SweepConfig sweep_config_from_json(const io::json& j, const std::filesystem::path& base_dir);

struct SweepRow {
  std::uint64_t instance_index = 0;
  std::uint64_t seed = 0;
  RelationReport report;
};

struct SweepSummary {
  std::size_t instances = 0;
  double min_residual = 0.0;
  std::size_t violations = 0;
  std::size_t saturated = 0;
  /// Largest identity residual seen (EQ9), or 0.
  double max_identity_residual = 0.0;
  /// Violations under the other b-set choice (EQ11), or 0.
  std::size_t alternative_violations = 0;
  double min_alternative_residual = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  SweepSummary summary;
  /// First violating instance, in index order.
  std::optional<io::RelationInstance> counterexample;
  std::optional<RelationReport> counterexample_report;
};

/// Instance `index` of a sweep: state from hash64(instance seed, 0),
/// measurement k from hash64(instance seed, k + 1), where the instance seed
/// is hash64(config seed, index).
io::RelationInstance sweep_instance(const SweepConfig& config, std::uint64_t index);

/// Evaluates every instance, using up to `threads` workers. Rows come back in
/// index order whatever the scheduling.
SweepResult run_sweep(const SweepConfig& config, unsigned threads = 1);

inline constexpr const char* kSweepCsvHeader =
    "instance_index,seed,relation_id,n_measurements,lhs_bits,rhs_bits,residual_bits,b,saturated,holds";

std::string sweep_csv(const SweepResult& result);

}  // namespace qcr
