#pragma once

#include <cmath>
#include <complex>

#include "qcr/state.hpp"

// Common states for the unit tests.
namespace fixtures {

using qcr::Complex;
using qcr::ComplexMatrix;
using qcr::ComplexVector;
using qcr::DensityMatrix;
using qcr::SubsystemLayout;

inline ComplexVector basis_vector(int dim, int index) {
  ComplexVector v = ComplexVector::Zero(dim);
  v(index) = 1.0;
  return v;
}

inline DensityMatrix ket(int dim, int index) {
  return DensityMatrix::pure(basis_vector(dim, index), SubsystemLayout::single(dim));
}

inline DensityMatrix plus_state() {
  ComplexVector v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return DensityMatrix::pure(v, SubsystemLayout::single(2));
}

inline DensityMatrix minus_state() {
  ComplexVector v(2);
  v << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  return DensityMatrix::pure(v, SubsystemLayout::single(2));
}

inline DensityMatrix diag_state(std::initializer_list<double> p) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<int>(p.size()), static_cast<int>(p.size()));
  int i = 0;
  for (double x : p) m(i, i) = x, ++i;
  return DensityMatrix::validate(m);
}

/// (|00> + |11>)/sqrt(2) on layout [2, 2].
inline DensityMatrix bell() {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return DensityMatrix::pure(v, SubsystemLayout({2, 2}));
}

/// (|0...0> + |1...1>)/sqrt(2) on n qubits.
inline DensityMatrix ghz(int n) {
  const int d = 1 << n;
  ComplexVector v = ComplexVector::Zero(d);
  v(0) = v(d - 1) = 1.0 / std::sqrt(2.0);
  return DensityMatrix::pure(v, SubsystemLayout(std::vector<int>(n, 2)));
}

/// |0...0> on n qubits.
inline DensityMatrix zeros(int n) {
  return DensityMatrix::pure(basis_vector(1 << n, 0), SubsystemLayout(std::vector<int>(n, 2)));
}

}  // namespace fixtures
