#include <doctest.h>

#include <unsupported/Eigen/KroneckerProduct>

#include "fixtures.hpp"
#include "qcr/ensembles.hpp"
#include "qcr/measurement.hpp"

using namespace qcr;
using namespace fixtures;

namespace {

// |<u|v>|^2 summed term by term.
double squared_overlap(const ComplexVector& u, const ComplexVector& v) {
  Complex acc = 0.0;
  for (Eigen::Index i = 0; i < u.size(); ++i) acc += std::conj(u(i)) * v(i);
  return std::norm(acc);
}

double max_cross_overlap_deviation(const ProjectiveMeasurement& a, const ProjectiveMeasurement& b) {
  double dev = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j)
      dev = std::max(dev, std::abs(squared_overlap(a.vector(i), b.vector(j)) - 1.0 / a.dim()));
  return dev;
}

}  // namespace

TEST_CASE("standard basis") {
  CHECK(max_abs(standard_basis(2).basis() - ComplexMatrix::Identity(2, 2)) == 0.0);
  CHECK(max_abs(standard_basis(3).basis() - ComplexMatrix::Identity(3, 3)) == 0.0);
  const ProjectiveMeasurement trivial = standard_basis(1);
  CHECK(trivial.dim() == 1);
  CHECK(max_abs(trivial.projector(0) - ComplexMatrix::Identity(1, 1)) == 0.0);
}

TEST_CASE("basis_from_unitary") {
  CHECK(max_abs(basis_from_unitary(ComplexMatrix::Identity(3, 3)).basis() - standard_basis(3).basis()) == 0.0);

  ComplexMatrix h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  const ProjectiveMeasurement x = basis_from_unitary(h, "X");
  CHECK(max_abs(x.projector(0) - plus_state().matrix()) < 1e-15);
  CHECK(max_abs(x.projector(1) - minus_state().matrix()) < 1e-15);

  for (std::uint64_t s = 0; s < 20; ++s) {
    const ProjectiveMeasurement m = basis_from_unitary(sample_haar_unitary(4, s));
    CHECK(max_abs(m.basis().adjoint() * m.basis() - ComplexMatrix::Identity(4, 4)) < 1e-10);
  }

  ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
  bad(0, 1) = 0.1;
  try {
    basis_from_unitary(bad);
    FAIL("expected NotUnitary");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotUnitary);
  }
}

TEST_CASE("non-orthonormal bases are rejected") {
  ComplexMatrix b(2, 2);
  b << 1, 1, 0, 1;
  try {
    ProjectiveMeasurement(b, "bad");
    FAIL("expected NotOrthonormal");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotOrthonormal);
  }
}

TEST_CASE("mutually unbiased bases") {
  for (int d : {2, 3, 5, 7}) {
    const auto family = mub_family(d);
    REQUIRE(family.size() == static_cast<std::size_t>(d + 1));
    for (std::size_t a = 0; a < family.size(); ++a) {
      for (std::size_t b = a + 1; b < family.size(); ++b) {
        CHECK(max_cross_overlap_deviation(family[a], family[b]) < 1e-9);
      }
    }
  }
  const auto qubit = mub_family(2);
  CHECK(qubit[0].label() == "Z");
  CHECK(qubit[1].label() == "X");
  CHECK(qubit[2].label() == "Y");
  for (int d : {4, 6, 9, 1, 0}) {
    try {
      mub_family(d);
      FAIL("expected NotPrime");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotPrime);
    }
  }
}

TEST_CASE("dephase") {
  SUBCASE("fixed points") {
    const DensityMatrix d = diag_state({0.2, 0.5, 0.3});
    CHECK(max_abs(dephase(d, standard_basis(3)).matrix() - d.matrix()) < 1e-15);
  }
  SUBCASE("|+> in Z") {
    CHECK(max_abs(dephase(plus_state(), pauli_z()).matrix() - ComplexMatrix::Identity(2, 2) / 2.0) < 1e-15);
  }
  SUBCASE("idempotent, trace preserving, entropy non-decreasing") {
    for (std::uint64_t s = 0; s < 50; ++s) {
      const DensityMatrix rho = sample_state(SubsystemLayout::single(3), SamplerKind::HilbertSchmidtMixed, 3, s);
      const ProjectiveMeasurement m = sample_measurement(3, s + 500);
      const DensityMatrix once = dephase(rho, m);
      const DensityMatrix twice = dephase(once, m);
      CHECK(max_abs(once.matrix() - twice.matrix()) < 1e-12);
      CHECK(std::abs(once.matrix().trace().real() - 1.0) < 1e-12);
      CHECK(once.eigenvalues().minCoeff() > -1e-12);
      CHECK(von_neumann_entropy(once) >= von_neumann_entropy(rho) - 1e-9);
    }
  }
  SUBCASE("dimension mismatch") { CHECK_THROWS_AS(dephase(bell(), pauli_z()), Error); }
}

TEST_CASE("measure_subsystem") {
  SUBCASE("Bell state, Z on A") {
    const MeasurementOutcome out = measure_subsystem(bell(), pauli_z(), 0);
    CHECK(std::abs(out.probabilities[0] - 0.5) < 1e-15);
    CHECK(std::abs(out.probabilities[1] - 0.5) < 1e-15);
    CHECK(max_abs(out.conditional_states[0]->matrix() - ket(2, 0).matrix()) < 1e-15);
    CHECK(max_abs(out.conditional_states[1]->matrix() - ket(2, 1).matrix()) < 1e-15);
    ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
    expected(0, 0) = expected(3, 3) = 0.5;
    CHECK(max_abs(out.post_joint.matrix() - expected) < 1e-15);
  }
  SUBCASE("|00>, X on A") {
    const MeasurementOutcome out = measure_subsystem(zeros(2), pauli_x(), 0);
    CHECK(std::abs(out.probabilities[0] - 0.5) < 1e-15);
    CHECK(std::abs(out.probabilities[1] - 0.5) < 1e-15);
    CHECK(max_abs(out.conditional_states[0]->matrix() - ket(2, 0).matrix()) < 1e-15);
    CHECK(max_abs(out.conditional_states[1]->matrix() - ket(2, 0).matrix()) < 1e-15);
  }
  SUBCASE("product state: every conditional state is rho_B") {
    const DensityMatrix a = sample_state(SubsystemLayout::single(3), SamplerKind::HilbertSchmidtMixed, 3, 11);
    const DensityMatrix b = sample_state(SubsystemLayout::single(2), SamplerKind::HilbertSchmidtMixed, 2, 12);
    const MeasurementOutcome out = measure_subsystem(tensor_product(a, b), sample_measurement(3, 13), 0);
    for (const auto& c : out.conditional_states) CHECK(max_abs(c->matrix() - b.matrix()) < 1e-12);
  }
  SUBCASE("zero-probability outcome is marked empty") {
    const MeasurementOutcome out = measure_subsystem(zeros(2), pauli_z(), 1);
    CHECK(out.probabilities[1] == 0.0);
    CHECK_FALSE(out.conditional_states[1].has_value());
  }
  SUBCASE("matches an explicit Kronecker-product oracle and leaves other parties alone") {
    for (std::uint64_t s = 0; s < 30; ++s) {
      const DensityMatrix rho = sample_state(SubsystemLayout({2, 3, 2}), SamplerKind::HilbertSchmidtMixed, 12, s);
      const ProjectiveMeasurement m = sample_measurement(3, s + 77);
      const MeasurementOutcome out = measure_subsystem(rho, m, 1);
      ComplexMatrix post = ComplexMatrix::Zero(12, 12);
      for (int i = 0; i < 3; ++i) {
        const ComplexMatrix p = Eigen::kroneckerProduct(
            Eigen::kroneckerProduct(ComplexMatrix::Identity(2, 2), m.projector(i)).eval(),
            ComplexMatrix::Identity(2, 2));
        post += p * rho.matrix() * p;
        CHECK(std::abs((p * rho.matrix()).trace().real() - out.probabilities[i]) < 1e-12);
      }
      CHECK(max_abs(out.post_joint.matrix() - post) < 1e-12);
      CHECK(max_abs(partial_trace(out.post_joint, {0, 2}).matrix() - partial_trace(rho, {0, 2}).matrix()) < 1e-10);
      double total = 0.0;
      for (double p : out.probabilities) total += p;
      CHECK(std::abs(total - 1.0) < 1e-9);
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(measure_subsystem(bell(), standard_basis(3), 0), Error);
    try {
      measure_subsystem(bell(), pauli_z(), 2);
      FAIL("expected BadSubsystemIndex");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::BadSubsystemIndex);
    }
  }
}

TEST_CASE("overlap_matrix") {
  const ProjectiveMeasurement z = pauli_z();
  CHECK((overlap_matrix(z, z) - RealMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((overlap_matrix(z, pauli_x()).array() - 0.5).abs().maxCoeff() < 1e-15);

  int pairs = 0;
  for (int d : {2, 3, 4}) {
    for (std::uint64_t s = 0; s < 34; ++s, ++pairs) {
      const ProjectiveMeasurement a = sample_measurement(d, 2 * s);
      const ProjectiveMeasurement b = sample_measurement(d, 2 * s + 1);
      const RealMatrix c = overlap_matrix(a, b);
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) CHECK(std::abs(c(i, j) - squared_overlap(a.vector(i), b.vector(j))) < 1e-14);
        CHECK(std::abs(c.row(i).sum() - 1.0) < 1e-9);
        CHECK(std::abs(c.col(i).sum() - 1.0) < 1e-9);
      }
    }
  }
  CHECK(pairs >= 100);
  CHECK_THROWS_AS(overlap_matrix(z, standard_basis(3)), Error);
}
