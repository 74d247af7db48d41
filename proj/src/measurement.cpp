#include "qcr/measurement.hpp"

#include <cmath>
#include <numbers>

namespace qcr {

ProjectiveMeasurement::ProjectiveMeasurement(ComplexMatrix basis, std::string label, double tol)
    : basis_(std::move(basis)), label_(std::move(label)) {
  if (basis_.rows() < 1 || basis_.rows() != basis_.cols()) {
    throw Error(ErrorKind::DimensionMismatch,
                "measurement needs exactly dim vectors of length dim, got " +
                    std::to_string(basis_.cols()) + " vectors of length " +
                    std::to_string(basis_.rows()));
  }
  if (!basis_.allFinite()) {
    throw Error(ErrorKind::NonFinite, "basis has non-finite entries");
  }
  const auto d = basis_.rows();
  // With d vectors in d dimensions orthonormality implies completeness.
  const double dev = max_abs(basis_.adjoint() * basis_ - ComplexMatrix::Identity(d, d));
  if (dev > tol) {
    throw Error(ErrorKind::NotOrthonormal,
                "basis '" + label_ + "' Gram matrix deviates from identity by " + std::to_string(dev));
  }
}

ProjectiveMeasurement standard_basis(int d) {
  if (d < 1) throw Error(ErrorKind::DimensionMismatch, "dimension must be positive");
  return ProjectiveMeasurement(ComplexMatrix::Identity(d, d), "Z");
}

ProjectiveMeasurement basis_from_unitary(const ComplexMatrix& u, std::string label) {
  if (u.rows() != u.cols() || u.rows() < 1) {
    throw Error(ErrorKind::DimensionMismatch, "unitary must be square and non-empty");
  }
  const double dev = max_abs(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols()));
  if (dev > 1e-9) {
    throw Error(ErrorKind::NotUnitary, "|U^dagger U - I| = " + std::to_string(dev));
  }
  return ProjectiveMeasurement(u, std::move(label));
}

ProjectiveMeasurement pauli_z() { return standard_basis(2); }

ProjectiveMeasurement pauli_x() {
  const double s = 1.0 / std::sqrt(2.0);
  ComplexMatrix b(2, 2);
  b << s, s, s, -s;
  return ProjectiveMeasurement(b, "X");
}

ProjectiveMeasurement pauli_y() {
  const double s = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  ComplexMatrix b(2, 2);
  b << s, s, i * s, -i * s;
  return ProjectiveMeasurement(b, "Y");
}

namespace {

bool is_prime(int d) {
  if (d < 2) return false;
  for (int f = 2; f * f <= d; ++f) {
    if (d % f == 0) return false;
  }
  return true;
}

}  // namespace

std::vector<ProjectiveMeasurement> mub_family(int d) {
  if (!is_prime(d)) {
    throw Error(ErrorKind::NotPrime, std::to_string(d) + " is not prime");
  }
  if (d == 2) return {pauli_z(), pauli_x(), pauli_y()};

  std::vector<ProjectiveMeasurement> out;
  out.reserve(d + 1);
  out.push_back(standard_basis(d));
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (int k = 0; k < d; ++k) {
    ComplexMatrix b(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        // Reduce the exponent mod d before forming the phase.
        const long e = (static_cast<long>(k) * j * j + static_cast<long>(i) * j) % d;
        b(j, i) = std::polar(norm, 2.0 * std::numbers::pi * static_cast<double>(e) / d);
      }
    }
    out.emplace_back(std::move(b), "F" + std::to_string(k));
  }
  return out;
}

DensityMatrix dephase(const DensityMatrix& rho, const ProjectiveMeasurement& m) {
  if (rho.dim() != m.dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                "state dimension " + std::to_string(rho.dim()) + " vs measurement dimension " +
                    std::to_string(m.dim()));
  }
  // In the measurement basis the map keeps only the diagonal.
  const ComplexMatrix& v = m.basis();
  const ComplexMatrix in_basis = v.adjoint() * rho.matrix() * v;
  ComplexMatrix diag = ComplexMatrix::Zero(m.dim(), m.dim());
  for (int i = 0; i < m.dim(); ++i) diag(i, i) = in_basis(i, i).real();
  return DensityMatrix::from_trusted(v * diag * v.adjoint(), rho.layout());
}

MeasurementOutcome measure_subsystem(const DensityMatrix& rho, const ProjectiveMeasurement& m,
                                     int target) {
  const SubsystemLayout& layout = rho.layout();
  if (m.dim() != layout.dim(target)) {
    throw Error(ErrorKind::DimensionMismatch,
                "measurement dimension " + std::to_string(m.dim()) + " on party " +
                    std::to_string(target) + " of dimension " + std::to_string(layout.dim(target)));
  }

  std::vector<int> rest;
  for (int p = 0; p < layout.parties(); ++p) {
    if (p != target) rest.push_back(p);
  }

  MeasurementOutcome out{{}, {}, rho};
  ComplexMatrix post = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (int i = 0; i < m.dim(); ++i) {
    const ComplexMatrix proj = embed_operator(m.projector(i), layout, target);
    const ComplexMatrix branch = proj * rho.matrix() * proj;
    const double p = std::max(branch.trace().real(), 0.0);
    post += branch;
    out.probabilities.push_back(p);
    if (p <= kEigenClip) {
      out.conditional_states.emplace_back(std::nullopt);
    } else if (rest.empty()) {
      out.conditional_states.emplace_back(
          DensityMatrix::from_trusted(ComplexMatrix::Identity(1, 1), SubsystemLayout()));
    } else {
      const ComplexMatrix reduced = partial_trace_matrix(branch, layout, rest) / p;
      out.conditional_states.emplace_back(
          DensityMatrix::from_trusted(reduced, layout.restricted(rest)));
    }
  }
  out.post_joint = DensityMatrix::from_trusted(post, layout);
  return out;
}

RealMatrix overlap_matrix(const ProjectiveMeasurement& m1, const ProjectiveMeasurement& m2) {
  if (m1.dim() != m2.dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                "bases of dimension " + std::to_string(m1.dim()) + " and " + std::to_string(m2.dim()));
  }
  return (m1.basis().adjoint() * m2.basis()).cwiseAbs2();
}

}  // namespace qcr
