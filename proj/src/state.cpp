#include "qcr/state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qcr {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::TraceNotOne: return "TraceNotOne";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::BadSubsystemIndex: return "BadSubsystemIndex";
    case ErrorKind::EigenDecompositionFailure: return "EigenDecompositionFailure";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::NotOrthonormal: return "NotOrthonormal";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::TooFewMeasurements: return "TooFewMeasurements";
    case ErrorKind::TooManyMeasurements: return "TooManyMeasurements";
    case ErrorKind::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::BadInput: return "BadInput";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// SubsystemLayout

SubsystemLayout::SubsystemLayout(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) {
    throw Error(ErrorKind::DimensionMismatch, "layout must list at least one party");
  }
  total_ = 1;
  for (int d : dims_) {
    if (d < 1) {
      throw Error(ErrorKind::DimensionMismatch, "local dimension " + std::to_string(d) + " < 1");
    }
    total_ *= d;
  }
}

int SubsystemLayout::dim(int party) const {
  if (party < 0 || party >= parties()) {
    throw Error(ErrorKind::BadSubsystemIndex,
                "party " + std::to_string(party) + " not in layout of " +
                    std::to_string(parties()) + " parties");
  }
  return dims_[party];
}

SubsystemLayout SubsystemLayout::restricted(std::span<const int> parties) const {
  std::vector<int> sorted(parties.begin(), parties.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> out;
  out.reserve(sorted.size());
  for (int p : sorted) out.push_back(dim(p));
  return SubsystemLayout(std::move(out));
}

SubsystemLayout SubsystemLayout::concat(const SubsystemLayout& other) const {
  std::vector<int> out = dims_;
  out.insert(out.end(), other.dims_.begin(), other.dims_.end());
  return SubsystemLayout(std::move(out));
}

// ---------------------------------------------------------------------------
// helpers

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix embed_operator(const ComplexMatrix& op, const SubsystemLayout& layout, int party) {
  const int d = layout.dim(party);
  if (op.rows() != d || op.cols() != d) {
    throw Error(ErrorKind::DimensionMismatch,
                "operator of size " + std::to_string(op.rows()) + " on party of dimension " +
                    std::to_string(d));
  }
  int left = 1;
  int right = 1;
  for (int p = 0; p < party; ++p) left *= layout.dims()[p];
  for (int p = party + 1; p < layout.parties(); ++p) right *= layout.dims()[p];
  ComplexMatrix out = kron(ComplexMatrix::Identity(left, left), op);
  return kron(out, ComplexMatrix::Identity(right, right));
}

namespace {

Eigen::SelfAdjointEigenSolver<ComplexMatrix> solve_hermitian(const ComplexMatrix& m, bool vectors) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      m, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::EigenDecompositionFailure,
                "Hermitian eigensolver did not converge on a " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()) + " matrix");
  }
  return solver;
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(6);
  os << std::scientific << v;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix DensityMatrix::validate(const ComplexMatrix& candidate, const SubsystemLayout& layout,
                                      const Tolerances& tol) {
  if (candidate.rows() != candidate.cols()) {
    throw Error(ErrorKind::DimensionMismatch,
                "matrix is " + std::to_string(candidate.rows()) + "x" +
                    std::to_string(candidate.cols()) + ", not square");
  }
  if (candidate.rows() != layout.total()) {
    throw Error(ErrorKind::DimensionMismatch,
                "matrix side " + std::to_string(candidate.rows()) +
                    " does not equal product of layout dims " + std::to_string(layout.total()));
  }
  if (!candidate.allFinite()) {
    throw Error(ErrorKind::NonFinite, "matrix has non-finite entries");
  }
  const double asym = max_abs(candidate - candidate.adjoint());
  if (asym > tol.hermiticity) {
    throw Error(ErrorKind::NotHermitian,
                "max |M - M^dagger| = " + fmt_double(asym) + " exceeds " + fmt_double(tol.hermiticity));
  }
  ComplexMatrix herm = 0.5 * (candidate + candidate.adjoint());
  const double tr = herm.trace().real();
  const double min_eig = solve_hermitian(herm, false).eigenvalues().minCoeff();
  if (min_eig < -tol.psd) {
    throw Error(ErrorKind::NotPositive, "most negative eigenvalue " + fmt_double(min_eig));
  }
  if (std::abs(tr - 1.0) > tol.trace) {
    throw Error(ErrorKind::TraceNotOne, "trace = " + fmt_double(tr));
  }
  return DensityMatrix(std::move(herm), layout);
}

DensityMatrix DensityMatrix::validate(const ComplexMatrix& candidate, const Tolerances& tol) {
  if (candidate.rows() < 1) {
    throw Error(ErrorKind::DimensionMismatch, "empty matrix");
  }
  return validate(candidate, SubsystemLayout::single(static_cast<int>(candidate.rows())), tol);
}

DensityMatrix DensityMatrix::from_trusted(const ComplexMatrix& m, const SubsystemLayout& layout) {
  if (m.rows() != m.cols() || m.rows() != layout.total()) {
    throw Error(ErrorKind::DimensionMismatch, "matrix shape does not match layout");
  }
  return DensityMatrix(0.5 * (m + m.adjoint()), layout);
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi, const SubsystemLayout& layout) {
  return PureStateVector(psi, layout).projector();
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  SubsystemLayout layout = SubsystemLayout::single(dim);
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim), layout);
}

RealVector DensityMatrix::eigenvalues() const { return solve_hermitian(matrix_, false).eigenvalues(); }

// ---------------------------------------------------------------------------
// PureStateVector

PureStateVector::PureStateVector(ComplexVector amplitudes, SubsystemLayout layout)
    : amps_(std::move(amplitudes)), layout_(std::move(layout)) {
  if (amps_.size() != layout_.total()) {
    throw Error(ErrorKind::DimensionMismatch, "vector length does not match layout");
  }
  const double norm = amps_.norm();
  if (std::abs(norm - 1.0) > 1e-10) {
    throw Error(ErrorKind::BadInput, "state vector norm " + fmt_double(norm) + " is not 1");
  }
}

DensityMatrix PureStateVector::projector() const {
  return DensityMatrix::from_trusted(amps_ * amps_.adjoint(), layout_);
}

// ---------------------------------------------------------------------------
// entropy

double shannon_entropy(std::span<const double> p) {
  double s = 0.0;
  for (double x : p) {
    if (x > kEigenClip) s -= x * std::log2(x);
  }
  return s;
}

double entropy_of_hermitian(const ComplexMatrix& m) {
  if (m.rows() == 1) return 0.0;
  const RealVector ev = solve_hermitian(m, false).eigenvalues();
  return shannon_entropy(std::span<const double>(ev.data(), static_cast<std::size_t>(ev.size())));
}

double von_neumann_entropy(const DensityMatrix& rho) { return entropy_of_hermitian(rho.matrix()); }

// ---------------------------------------------------------------------------
// composite systems

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::from_trusted(kron(a.matrix(), b.matrix()), a.layout().concat(b.layout()));
}

ComplexMatrix partial_trace_matrix(const ComplexMatrix& m, const SubsystemLayout& layout,
                                   std::span<const int> keep) {
  const int n = layout.parties();
  if (keep.empty()) {
    throw Error(ErrorKind::BadSubsystemIndex, "keep set is empty");
  }
  std::vector<bool> kept(n, false);
  for (int p : keep) {
    if (p < 0 || p >= n) {
      throw Error(ErrorKind::BadSubsystemIndex, "party " + std::to_string(p) + " out of range");
    }
    if (kept[p]) {
      throw Error(ErrorKind::BadSubsystemIndex, "party " + std::to_string(p) + " listed twice");
    }
    kept[p] = true;
  }
  if (m.rows() != layout.total() || m.cols() != layout.total()) {
    throw Error(ErrorKind::DimensionMismatch, "matrix shape does not match layout");
  }

  const auto& dims = layout.dims();
  std::vector<long> stride(n, 1);
  for (int p = n - 2; p >= 0; --p) stride[p] = stride[p + 1] * dims[p + 1];

  // Offsets into the full index for every configuration of a party subset,
  // enumerated row-major over the subset in layout order.
  auto offsets = [&](bool want_kept) {
    std::vector<long> out{0};
    for (int p = 0; p < n; ++p) {
      if (kept[p] != want_kept) continue;
      std::vector<long> next;
      next.reserve(out.size() * dims[p]);
      for (long base : out) {
        for (int digit = 0; digit < dims[p]; ++digit) next.push_back(base + digit * stride[p]);
      }
      out.swap(next);
    }
    return out;
  };
  const std::vector<long> row = offsets(true);
  const std::vector<long> traced = offsets(false);

  const auto k = static_cast<Eigen::Index>(row.size());
  ComplexMatrix out = ComplexMatrix::Zero(k, k);
  for (Eigen::Index r = 0; r < k; ++r) {
    for (Eigen::Index c = 0; c < k; ++c) {
      Complex acc = 0.0;
      for (long t : traced) acc += m(row[r] + t, row[c] + t);
      out(r, c) = acc;
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  ComplexMatrix reduced = partial_trace_matrix(rho.matrix(), rho.layout(), keep);
  return DensityMatrix::from_trusted(reduced, rho.layout().restricted(keep));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep) {
  return partial_trace(rho, std::span<const int>(keep.begin(), keep.size()));
}

PureStateVector purify(const DensityMatrix& rho) {
  const int d = rho.dim();
  auto solver = solve_hermitian(rho.matrix(), true);
  const RealVector& ev = solver.eigenvalues();
  const ComplexMatrix& vecs = solver.eigenvectors();

  ComplexVector psi = ComplexVector::Zero(static_cast<Eigen::Index>(d) * d);
  // Eigen returns ascending eigenvalues; ancilla label a pairs with the a-th
  // largest one.
  for (int a = 0; a < d; ++a) {
    const int src = d - 1 - a;
    const double lambda = ev(src);
    if (lambda <= kEigenClip) continue;
    ComplexVector v = vecs.col(src);
    for (int i = 0; i < d; ++i) {
      if (std::abs(v(i)) > kEigenClip) {
        v *= std::conj(v(i)) / std::abs(v(i));
        break;
      }
    }
    for (int i = 0; i < d; ++i) psi(static_cast<Eigen::Index>(i) * d + a) = std::sqrt(lambda) * v(i);
  }
  psi /= psi.norm();
  return PureStateVector(std::move(psi), rho.layout().concat(SubsystemLayout::single(d)));
}

}  // namespace qcr
