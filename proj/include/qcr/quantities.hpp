#pragma once

#include <span>

#include "qcr/measurement.hpp"

namespace qcr {

/// Values in [-kRoundingSlack, 0) are rounding noise and get clamped to zero.
inline constexpr double kRoundingSlack = 1e-9;

/// Terms of the thermal discord (one-way deficit) of a measurement on one
/// party, all in bits.
struct DiscordBreakdown {
  /// sum_i p_i S(rho_B|i)
  double avg_conditional_entropy = 0.0;
  /// S of the measured party after the non-selective measurement.
  double post_meas_marginal_entropy = 0.0;
  double joint_entropy = 0.0;
  /// Exactly the sum of the three terms above (no clamping).
  double discord = 0.0;
};

/// S(dephase(rho)) - S(rho) without clamping.
double rel_entropy_coherence_raw(const DensityMatrix& rho, const ProjectiveMeasurement& m);

/// Relative entropy of coherence in the basis of `m`.
double rel_entropy_coherence(const DensityMatrix& rho, const ProjectiveMeasurement& m);

/// S(joint) - S(reduced state on `conditioning`). An empty conditioning set
/// yields S(joint). Negative values witness entanglement.
double conditional_entropy(const DensityMatrix& rho, std::span<const int> conditioning);
double conditional_entropy(const DensityMatrix& rho, std::initializer_list<int> conditioning);

bool witnesses_entanglement(double conditional_entropy_bits, double tol = kRoundingSlack);

/// S(M_A|memory): parties outside {measured} ∪ memory are traced out, the
/// measured party is dephased, and the memory marginal is subtracted.
double post_measurement_conditional_entropy(const DensityMatrix& rho, const ProjectiveMeasurement& m,
                                            int measured, std::span<const int> memory);
double post_measurement_conditional_entropy(const DensityMatrix& rho, const ProjectiveMeasurement& m,
                                            int measured, std::initializer_list<int> memory);

/// Thermal discord from its defining three-term form. All parties other than
/// `measured` form the conditioned system B.
DiscordBreakdown thermal_discord(const DensityMatrix& rho, const ProjectiveMeasurement& m, int measured);

/// Same quantity as S(M_A|B) - S(A|B).
double thermal_discord_identity(const DensityMatrix& rho, const ProjectiveMeasurement& m, int measured);

namespace detail {
/// Clamps rounding-level negatives to zero. Clamps are reported on stderr
/// when the QCR_LOG_CLAMPS environment variable is set.
double clamp_rounding(double raw, const char* what);
}  // namespace detail

}  // namespace qcr
