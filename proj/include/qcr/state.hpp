#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "qcr/error.hpp"

namespace qcr {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Eigenvalues at or below this are treated as exact zeros in entropy sums.
inline constexpr double kEigenClip = 1e-12;

/// Local dimensions of the parties of a composite system, in tensor order.
class SubsystemLayout {
 public:
  SubsystemLayout() : dims_{1} {}
  explicit SubsystemLayout(std::vector<int> dims);

  static SubsystemLayout single(int dim) { return SubsystemLayout({dim}); }

  const std::vector<int>& dims() const noexcept { return dims_; }
  int parties() const noexcept { return static_cast<int>(dims_.size()); }
  int dim(int party) const;
  int total() const noexcept { return total_; }

  /// Layout of the listed parties, in ascending index order.
  SubsystemLayout restricted(std::span<const int> parties) const;
  SubsystemLayout concat(const SubsystemLayout& other) const;

  bool operator==(const SubsystemLayout&) const = default;

 private:
  std::vector<int> dims_;
  int total_ = 1;
};

struct Tolerances {
  double hermiticity = 1e-9;
  double psd = 1e-9;
  double trace = 1e-9;
};

/// Hermitian, positive semidefinite, unit-trace matrix annotated with its
/// party structure. Instances are immutable once built.
class DensityMatrix {
 public:
  /// Checks every invariant and throws qcr::Error naming the first one that
  /// fails. The stored matrix is the Hermitian part of `candidate`.
  static DensityMatrix validate(const ComplexMatrix& candidate, const SubsystemLayout& layout,
                                const Tolerances& tol = {});
  static DensityMatrix validate(const ComplexMatrix& candidate, const Tolerances& tol = {});

  /// For matrices produced by trace- and positivity-preserving maps inside the
  /// library. Only the shape is checked; the matrix is symmetrised.
  static DensityMatrix from_trusted(const ComplexMatrix& m, const SubsystemLayout& layout);

  static DensityMatrix pure(const ComplexVector& psi, const SubsystemLayout& layout);
  static DensityMatrix maximally_mixed(int dim);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const SubsystemLayout& layout() const noexcept { return layout_; }
  int dim() const noexcept { return static_cast<int>(matrix_.rows()); }

  /// Eigenvalues in ascending order.
  RealVector eigenvalues() const;

 private:
  DensityMatrix(ComplexMatrix m, SubsystemLayout layout)
      : matrix_(std::move(m)), layout_(std::move(layout)) {}

  ComplexMatrix matrix_;
  SubsystemLayout layout_;
};

/// Unit vector on a composite space.
class PureStateVector {
 public:
  PureStateVector(ComplexVector amplitudes, SubsystemLayout layout);

  const ComplexVector& amplitudes() const noexcept { return amps_; }
  const SubsystemLayout& layout() const noexcept { return layout_; }
  int dim() const noexcept { return static_cast<int>(amps_.size()); }

  DensityMatrix projector() const;

 private:
  ComplexVector amps_;
  SubsystemLayout layout_;
};

/// Von Neumann entropy in bits.
double von_neumann_entropy(const DensityMatrix& rho);

/// Entropy of an arbitrary Hermitian matrix, using its eigenvalues above
/// kEigenClip. Used where a density matrix wrapper would be overkill.
double entropy_of_hermitian(const ComplexMatrix& m);

/// Shannon entropy in bits of a probability vector.
double shannon_entropy(std::span<const double> p);

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

/// Reduced state on the parties in `keep` (any order, no duplicates). The
/// result keeps the parties in ascending layout order.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep);

/// Raw partial trace over a layout, without validation of the input matrix.
ComplexMatrix partial_trace_matrix(const ComplexMatrix& m, const SubsystemLayout& layout,
                                   std::span<const int> keep);

/// Purification on rho ⊗ ancilla with ancilla dimension equal to rho's.
/// Schmidt terms follow descending eigenvalues; each eigenvector is phased so
/// its first nonzero amplitude is real and non-negative.
PureStateVector purify(const DensityMatrix& rho);

/// Kronecker product of raw matrices.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Embeds an operator on one party as I ⊗ op ⊗ I on the whole layout.
ComplexMatrix embed_operator(const ComplexMatrix& op, const SubsystemLayout& layout, int party);

double max_abs(const ComplexMatrix& m);

}  // namespace qcr
