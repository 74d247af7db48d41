#include "qcr/quantities.hpp"

#include <cstdio>
#include <algorithm>
#include <cstdlib>
#include <vector>

namespace qcr {

namespace detail {

double clamp_rounding(double raw, const char* what) {
  if (raw < 0.0 && raw >= -kRoundingSlack) {
    if (std::getenv("QCR_LOG_CLAMPS") != nullptr) {
      std::fprintf(stderr, "qcr: clamped %s from %.3e to 0\n", what, raw);
    }
    return 0.0;
  }
  return raw;
}

}  // namespace detail

namespace {

std::vector<int> others(const SubsystemLayout& layout, int party) {
  std::vector<int> out;
  for (int p = 0; p < layout.parties(); ++p) {
    if (p != party) out.push_back(p);
  }
  return out;
}

}  // namespace

double rel_entropy_coherence_raw(const DensityMatrix& rho, const ProjectiveMeasurement& m) {
  return von_neumann_entropy(dephase(rho, m)) - von_neumann_entropy(rho);
}

double rel_entropy_coherence(const DensityMatrix& rho, const ProjectiveMeasurement& m) {
  return detail::clamp_rounding(rel_entropy_coherence_raw(rho, m), "relative entropy of coherence");
}

double conditional_entropy(const DensityMatrix& rho, std::span<const int> conditioning) {
  if (static_cast<int>(conditioning.size()) >= rho.layout().parties()) {
    throw Error(ErrorKind::BadSubsystemIndex, "conditioning set must be a proper subset of the parties");
  }
  const double joint = von_neumann_entropy(rho);
  if (conditioning.empty()) return joint;
  return joint - von_neumann_entropy(partial_trace(rho, conditioning));
}

double conditional_entropy(const DensityMatrix& rho, std::initializer_list<int> conditioning) {
  return conditional_entropy(rho, std::span<const int>(conditioning.begin(), conditioning.size()));
}

bool witnesses_entanglement(double conditional_entropy_bits, double tol) {
  return conditional_entropy_bits < -tol;
}

double post_measurement_conditional_entropy(const DensityMatrix& rho, const ProjectiveMeasurement& m,
                                            int measured, std::span<const int> memory) {
  const SubsystemLayout& layout = rho.layout();
  layout.dim(measured);
  std::vector<int> keep{measured};
  for (int p : memory) {
    if (p == measured) {
      throw Error(ErrorKind::BadSubsystemIndex, "measured party is also listed as memory");
    }
    layout.dim(p);
    keep.push_back(p);
  }
  std::sort(keep.begin(), keep.end());

  const DensityMatrix local =
      static_cast<int>(keep.size()) == layout.parties() ? rho : partial_trace(rho, keep);
  const int local_measured =
      static_cast<int>(std::lower_bound(keep.begin(), keep.end(), measured) - keep.begin());
  const MeasurementOutcome outcome = measure_subsystem(local, m, local_measured);
  const double post = von_neumann_entropy(outcome.post_joint);
  if (memory.empty()) return post;

  // The memory marginal is untouched by the measurement, so the original
  // reduced state is used.
  const std::vector<int> local_memory = others(local.layout(), local_measured);
  return post - von_neumann_entropy(partial_trace(local, local_memory));
}

double post_measurement_conditional_entropy(const DensityMatrix& rho, const ProjectiveMeasurement& m,
                                            int measured, std::initializer_list<int> memory) {
  return post_measurement_conditional_entropy(rho, m, measured,
                                              std::span<const int>(memory.begin(), memory.size()));
}

DiscordBreakdown thermal_discord(const DensityMatrix& rho, const ProjectiveMeasurement& m, int measured) {
  const MeasurementOutcome outcome = measure_subsystem(rho, m, measured);

  DiscordBreakdown out;
  for (std::size_t i = 0; i < outcome.probabilities.size(); ++i) {
    if (!outcome.conditional_states[i]) continue;
    out.avg_conditional_entropy +=
        outcome.probabilities[i] * von_neumann_entropy(*outcome.conditional_states[i]);
  }
  const std::vector<int> self{measured};
  out.post_meas_marginal_entropy = von_neumann_entropy(partial_trace(outcome.post_joint, self));
  out.joint_entropy = von_neumann_entropy(rho);
  out.discord = out.avg_conditional_entropy + out.post_meas_marginal_entropy - out.joint_entropy;
  return out;
}

double thermal_discord_identity(const DensityMatrix& rho, const ProjectiveMeasurement& m, int measured) {
  const std::vector<int> rest = others(rho.layout(), measured);
  return post_measurement_conditional_entropy(rho, m, measured, rest) - conditional_entropy(rho, rest);
}

}  // namespace qcr
