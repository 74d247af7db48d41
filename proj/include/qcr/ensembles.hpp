#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "qcr/measurement.hpp"

namespace qcr {

enum class SamplerKind {
  /// |psi><psi| with psi uniform on the unit sphere.
  HaarPure,
  /// G G^dagger / tr(G G^dagger), G a d x d complex Ginibre matrix.
  HilbertSchmidtMixed,
  /// Same with G of shape d x r.
  RankLimitedMixed,
};

std::string_view to_string(SamplerKind kind);
std::optional<SamplerKind> sampler_from_string(std::string_view name);

struct EnsembleConfig {
  SubsystemLayout layout;
  SamplerKind sampler = SamplerKind::HilbertSchmidtMixed;
  /// Only used by RankLimitedMixed.
  int rank = 1;
  int count = 1;
  std::uint64_t seed = 0;

  /// Throws BadInput when count < 1 or rank is outside [1, total dimension].
  void check() const;
};

/// Child seed for instance `index` of a sweep seeded with `master`:
/// splitmix64(master + (index + 1) * 0x9E3779B97F4A7C15). Instances never
/// share an RNG stream, so they can be generated in any order.
std::uint64_t hash64(std::uint64_t master, std::uint64_t index);

using Rng = std::mt19937_64;

/// Matrix of independent complex standard normals (unit variance per entry).
ComplexMatrix sample_ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng);

/// Haar unitary: QR of a Ginibre matrix with R's diagonal phased to be positive.
ComplexMatrix sample_haar_unitary(int d, std::uint64_t seed);

DensityMatrix sample_state(const SubsystemLayout& layout, SamplerKind sampler, int rank,
                           std::uint64_t seed);

/// State number `index` of the ensemble, drawn from hash64(config.seed, index).
DensityMatrix sample_mixed_state(const EnsembleConfig& config, std::uint64_t index = 0);

ProjectiveMeasurement sample_measurement(int d, std::uint64_t seed);

struct SampledDiscord {
  ProjectiveMeasurement measurement;
  double bits;
};

/// Smallest thermal discord over the standard basis and `trials` Haar bases
/// seeded by hash64(seed, t). This is an upper bound on the minimum over all
/// projective measurements, not the optimum itself. Larger `trials` with the
/// same seed search a superset of bases.
SampledDiscord min_discord_sampled(const DensityMatrix& rho, int measured, int trials,
                                   std::uint64_t seed);

}  // namespace qcr
