#include "qcr/ensembles.hpp"

#include "qcr/quantities.hpp"

namespace qcr {

std::string_view to_string(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::HaarPure: return "haar_pure";
    case SamplerKind::HilbertSchmidtMixed: return "hilbert_schmidt_mixed";
    case SamplerKind::RankLimitedMixed: return "rank_limited_mixed";
  }
  return "?";
}

std::optional<SamplerKind> sampler_from_string(std::string_view name) {
  for (SamplerKind k : {SamplerKind::HaarPure, SamplerKind::HilbertSchmidtMixed,
                        SamplerKind::RankLimitedMixed}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

void EnsembleConfig::check() const {
  if (count < 1) throw Error(ErrorKind::BadInput, "ensemble count must be at least 1");
  if (sampler == SamplerKind::RankLimitedMixed && (rank < 1 || rank > layout.total())) {
    throw Error(ErrorKind::BadInput, "rank " + std::to_string(rank) + " outside [1, " +
                                         std::to_string(layout.total()) + "]");
  }
}

std::uint64_t hash64(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

ComplexMatrix sample_ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(2.0));
  ComplexMatrix g(rows, cols);
  // Fill in row-major order so the draw sequence is independent of Eigen's
  // storage order.
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

ComplexMatrix sample_haar_unitary(int d, std::uint64_t seed) {
  if (d < 1) throw Error(ErrorKind::DimensionMismatch, "dimension must be positive");
  Rng rng(seed);
  const ComplexMatrix g = sample_ginibre(d, d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

DensityMatrix sample_state(const SubsystemLayout& layout, SamplerKind sampler, int rank,
                           std::uint64_t seed) {
  const int d = layout.total();
  Rng rng(seed);
  switch (sampler) {
    case SamplerKind::HaarPure: {
      ComplexVector psi = sample_ginibre(d, 1, rng).col(0);
      psi /= psi.norm();
      return DensityMatrix::validate(psi * psi.adjoint(), layout);
    }
    case SamplerKind::HilbertSchmidtMixed:
      rank = d;
      break;
    case SamplerKind::RankLimitedMixed:
      if (rank < 1 || rank > d) {
        throw Error(ErrorKind::BadInput, "rank " + std::to_string(rank) + " outside [1, " +
                                             std::to_string(d) + "]");
      }
      break;
  }
  const ComplexMatrix g = sample_ginibre(d, rank, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix::validate(rho, layout);
}

DensityMatrix sample_mixed_state(const EnsembleConfig& config, std::uint64_t index) {
  config.check();
  return sample_state(config.layout, config.sampler, config.rank, hash64(config.seed, index));
}

ProjectiveMeasurement sample_measurement(int d, std::uint64_t seed) {
  return basis_from_unitary(sample_haar_unitary(d, seed), "haar");
}

SampledDiscord min_discord_sampled(const DensityMatrix& rho, int measured, int trials,
                                   std::uint64_t seed) {
  if (trials < 1) throw Error(ErrorKind::BadInput, "trials must be at least 1");
  const int d = rho.layout().dim(measured);
  SampledDiscord best{standard_basis(d), thermal_discord(rho, standard_basis(d), measured).discord};
  for (int t = 0; t < trials; ++t) {
    ProjectiveMeasurement m = sample_measurement(d, hash64(seed, static_cast<std::uint64_t>(t)));
    const double bits = thermal_discord(rho, m, measured).discord;
    if (bits < best.bits) best = SampledDiscord{std::move(m), bits};
  }
  best.bits = detail::clamp_rounding(best.bits, "sampled thermal discord");
  return best;
}

}  // namespace qcr
