#include <doctest.h>

#include "fixtures.hpp"
#include "qcr/ensembles.hpp"
#include "qcr/quantities.hpp"

using namespace qcr;
using namespace fixtures;

TEST_CASE("Haar unitaries") {
  for (int d : {2, 3, 4}) {
    for (std::uint64_t s = 0; s < 100; ++s) {
      const ComplexMatrix u = sample_haar_unitary(d, s);
      CHECK(max_abs(u.adjoint() * u - ComplexMatrix::Identity(d, d)) < 1e-9);
      for (int j = 0; j < d; ++j) CHECK(std::abs(u.col(j).norm() - 1.0) < 1e-10);
    }
  }
  CHECK(max_abs(sample_haar_unitary(3, 42) - sample_haar_unitary(3, 42)) == 0.0);
  CHECK(max_abs(sample_haar_unitary(3, 42) - sample_haar_unitary(3, 43)) > 0.0);
}

TEST_CASE("Haar unitaries have the uniform first-moment of |U_ij|^2") {
  // E|U_ij|^2 = 1/d for Haar; the phase fix keeps this unbiased.
  const int d = 3;
  RealMatrix mean = RealMatrix::Zero(d, d);
  const int n = 4000;
  for (int s = 0; s < n; ++s) mean += sample_haar_unitary(d, static_cast<std::uint64_t>(s)).cwiseAbs2();
  mean /= n;
  CHECK((mean.array() - 1.0 / d).abs().maxCoeff() < 0.02);
}

TEST_CASE("mixed-state samplers") {
  EnsembleConfig config;
  config.layout = SubsystemLayout::single(3);
  config.sampler = SamplerKind::RankLimitedMixed;
  config.rank = 1;
  config.seed = 9;
  for (std::uint64_t i = 0; i < 20; ++i) {
    CHECK(std::abs(von_neumann_entropy(sample_mixed_state(config, i))) < 1e-9);
  }

  for (std::uint64_t s = 0; s < 200; ++s) {
    const double entropy =
        von_neumann_entropy(sample_state(SubsystemLayout::single(2), SamplerKind::HilbertSchmidtMixed, 2, s));
    CHECK(entropy > 0.0);
    CHECK(entropy <= 1.0 + 1e-12);
  }

  ComplexMatrix mean = ComplexMatrix::Zero(2, 2);
  for (std::uint64_t s = 0; s < 2000; ++s) {
    mean += sample_state(SubsystemLayout::single(2), SamplerKind::HilbertSchmidtMixed, 2, s).matrix();
  }
  mean /= 2000.0;
  CHECK(max_abs(mean - ComplexMatrix::Identity(2, 2) / 2.0) < 0.05);

  config.rank = 4;
  CHECK_THROWS_AS(config.check(), Error);
  config.rank = 2;
  config.count = 0;
  CHECK_THROWS_AS(config.check(), Error);
}

TEST_CASE("seed derivation is deterministic and spreads instances") {
  CHECK(hash64(1, 0) == hash64(1, 0));
  CHECK(hash64(1, 0) != hash64(1, 1));
  CHECK(hash64(1, 0) != hash64(2, 0));
  EnsembleConfig config;
  config.layout = SubsystemLayout({2, 2});
  config.seed = 77;
  CHECK(max_abs(sample_mixed_state(config, 5).matrix() - sample_mixed_state(config, 5).matrix()) == 0.0);
}

TEST_CASE("sampled measurements") {
  const ProjectiveMeasurement a = sample_measurement(3, 1);
  const ProjectiveMeasurement b = sample_measurement(3, 2);
  CHECK(max_abs(a.basis().adjoint() * a.basis() - ComplexMatrix::Identity(3, 3)) < 1e-10);
  CHECK((overlap_matrix(a, b) - RealMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() > 0.1);
  CHECK(max_abs(sample_measurement(3, 1).basis() - a.basis()) == 0.0);
}

TEST_CASE("sampled discord minimisation") {
  ComplexMatrix classical = ComplexMatrix::Zero(4, 4);
  classical(0, 0) = 0.4;
  classical(3, 3) = 0.6;
  const DensityMatrix cc = DensityMatrix::validate(classical, SubsystemLayout({2, 2}));
  const SampledDiscord zero = min_discord_sampled(cc, 0, 20, 3);
  CHECK(zero.bits == 0.0);
  CHECK(zero.measurement.label() == "Z");

  // Every rank-1 basis gives one bit on a maximally entangled state.
  const SampledDiscord b = min_discord_sampled(bell(), 0, 500, 4);
  CHECK(std::abs(b.bits - 1.0) < 1e-6);
  double spread = 0.0;
  for (std::uint64_t t = 0; t < 500; ++t) {
    spread = std::max(spread, std::abs(thermal_discord(bell(), sample_measurement(2, hash64(4, t)), 0).discord - 1.0));
  }
  CHECK(spread < 1e-6);

  const DensityMatrix rho = sample_state(SubsystemLayout({2, 2}), SamplerKind::HilbertSchmidtMixed, 4, 5);
  const double few = min_discord_sampled(rho, 0, 10, 6).bits;
  const double many = min_discord_sampled(rho, 0, 2000, 6).bits;
  CHECK(many <= few + 1e-12);
}
