#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcr/state.hpp"

namespace qcr {

/// Complete family of rank-1 orthogonal projectors |v_i><v_i| on one party.
class ProjectiveMeasurement {
 public:
  /// `basis` holds the vectors as columns. Throws NotOrthonormal when the
  /// Gram matrix deviates from the identity by more than `tol`.
  ProjectiveMeasurement(ComplexMatrix basis, std::string label, double tol = 1e-10);

  int dim() const noexcept { return static_cast<int>(basis_.rows()); }
  const std::string& label() const noexcept { return label_; }
  const ComplexMatrix& basis() const noexcept { return basis_; }
  ComplexVector vector(int i) const { return basis_.col(i); }
  ComplexMatrix projector(int i) const { return basis_.col(i) * basis_.col(i).adjoint(); }

 private:
  ComplexMatrix basis_;
  std::string label_;
};

struct MeasurementOutcome {
  std::vector<double> probabilities;
  /// Post-measurement state of the unmeasured parties for each outcome;
  /// empty when the outcome has probability at most kEigenClip.
  std::vector<std::optional<DensityMatrix>> conditional_states;
  DensityMatrix post_joint;
};

ProjectiveMeasurement standard_basis(int d);

/// Columns of `u` as the basis. Throws NotUnitary when |U^dagger U - I| > 1e-9.
ProjectiveMeasurement basis_from_unitary(const ComplexMatrix& u, std::string label = "U");

/// d+1 mutually unbiased bases for prime d: the standard basis followed by
/// the quadratic-phase bases with components omega^(k j^2 + i j)/sqrt(d),
/// k = 0..d-1. For d = 2 the family is the Z, X and Y eigenbases.
std::vector<ProjectiveMeasurement> mub_family(int d);

/// The qubit Pauli eigenbases.
ProjectiveMeasurement pauli_z();
ProjectiveMeasurement pauli_x();
ProjectiveMeasurement pauli_y();

/// sum_i P_i rho P_i on a single-party state (or the whole space).
DensityMatrix dephase(const DensityMatrix& rho, const ProjectiveMeasurement& m);

/// Non-selective measurement of one party plus the outcome statistics.
MeasurementOutcome measure_subsystem(const DensityMatrix& rho, const ProjectiveMeasurement& m,
                                     int target);

/// c(i, j) = |<v_i|w_j>|^2, i.e. tr(P_i Q_j).
RealMatrix overlap_matrix(const ProjectiveMeasurement& m1, const ProjectiveMeasurement& m2);

}  // namespace qcr
