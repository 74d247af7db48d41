#include <doctest.h>

#include "fixtures.hpp"
#include "qcr/ensembles.hpp"

using namespace qcr;
using namespace fixtures;

namespace {

// Index-by-index contraction of a two-party matrix over its first factor.
ComplexMatrix trace_out_first(const ComplexMatrix& m, int da, int db) {
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (int b1 = 0; b1 < db; ++b1)
    for (int b2 = 0; b2 < db; ++b2)
      for (int a = 0; a < da; ++a) out(b1, b2) += m(a * db + b1, a * db + b2);
  return out;
}

}  // namespace

TEST_CASE("validate_density accepts the maximally mixed qubit") {
  const DensityMatrix rho = DensityMatrix::validate(ComplexMatrix::Identity(2, 2) / 2.0);
  CHECK(rho.dim() == 2);
  CHECK(rho.layout().dims() == std::vector<int>{2});
}

TEST_CASE("validate_density rejects each broken invariant") {
  SUBCASE("asymmetric off-diagonal") {
    ComplexMatrix m(2, 2);
    m << 0.5, 0.6, 0.1, 0.5;
    try {
      DensityMatrix::validate(m);
      FAIL("expected NotHermitian");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotHermitian);
    }
  }
  SUBCASE("negative eigenvalue") {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 0) = 1.2;
    m(1, 1) = -0.2;
    try {
      DensityMatrix::validate(m);
      FAIL("expected NotPositive");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotPositive);
      CHECK(std::string(e.what()).find("-2.0") != std::string::npos);
    }
  }
  SUBCASE("trace") {
    try {
      DensityMatrix::validate(ComplexMatrix::Identity(2, 2));
      FAIL("expected TraceNotOne");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::TraceNotOne);
    }
  }
  SUBCASE("layout") {
    try {
      DensityMatrix::validate(ComplexMatrix::Identity(4, 4) / 4.0, SubsystemLayout({2, 3}));
      FAIL("expected DimensionMismatch");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DimensionMismatch);
    }
  }
}

TEST_CASE("von Neumann entropy") {
  CHECK(std::abs(von_neumann_entropy(ket(3, 1))) < 1e-12);
  CHECK(std::abs(von_neumann_entropy(plus_state())) < 1e-12);
  CHECK(std::abs(von_neumann_entropy(DensityMatrix::maximally_mixed(2)) - 1.0) < 1e-12);
  // -(3/4) log2(3/4) - (1/4) log2(1/4), evaluated term by term.
  const double expected = -0.75 * std::log2(0.75) - 0.25 * std::log2(0.25);
  CHECK(std::abs(expected - (2.0 - 0.75 * std::log2(3.0))) < 1e-15);
  CHECK(std::abs(von_neumann_entropy(diag_state({0.75, 0.25})) - expected) < 1e-12);
  CHECK(std::abs(expected - 0.811278124459) < 1e-12);
}

TEST_CASE("entropy bounds and unitary invariance on random states") {
  for (int d : {2, 3, 4}) {
    for (std::uint64_t s = 0; s < 50; ++s) {
      const DensityMatrix rho = sample_state(SubsystemLayout::single(d), SamplerKind::HilbertSchmidtMixed, d, s);
      const double entropy = von_neumann_entropy(rho);
      CHECK(entropy >= 0.0);
      CHECK(entropy <= std::log2(d) + 1e-9);
      const ComplexMatrix u = sample_haar_unitary(d, s + 1000);
      const DensityMatrix rotated = DensityMatrix::validate(u * rho.matrix() * u.adjoint());
      CHECK(std::abs(von_neumann_entropy(rotated) - entropy) < 1e-9);
    }
  }
}

TEST_CASE("tensor_product") {
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(2);
  const DensityMatrix both = tensor_product(mixed, mixed);
  CHECK(both.layout().dims() == std::vector<int>{2, 2});
  CHECK(max_abs(both.matrix() - ComplexMatrix::Identity(4, 4) / 4.0) < 1e-15);

  const DensityMatrix ket01 = tensor_product(ket(2, 0), ket(2, 1));
  CHECK(max_abs(ket01.matrix() - DensityMatrix::pure(basis_vector(4, 1), SubsystemLayout({2, 2})).matrix()) ==
        0.0);

  const double p = 0.3;
  const DensityMatrix sigma = sample_state(SubsystemLayout::single(3), SamplerKind::HilbertSchmidtMixed, 3, 7);
  const DensityMatrix block = tensor_product(diag_state({p, 1 - p}), sigma);
  CHECK(max_abs(block.matrix().block(0, 0, 3, 3) - p * sigma.matrix()) < 1e-15);
  CHECK(max_abs(block.matrix().block(3, 3, 3, 3) - (1 - p) * sigma.matrix()) < 1e-15);
  CHECK(max_abs(block.matrix().block(0, 3, 3, 3)) == 0.0);
}

TEST_CASE("partial_trace") {
  SUBCASE("Bell state keeps B") {
    const DensityMatrix reduced = partial_trace(bell(), {1});
    CHECK(max_abs(reduced.matrix() - trace_out_first(bell().matrix(), 2, 2)) < 1e-15);
    CHECK(max_abs(reduced.matrix() - ComplexMatrix::Identity(2, 2) / 2.0) < 1e-15);
  }
  SUBCASE("product state") {
    const DensityMatrix a = sample_state(SubsystemLayout::single(2), SamplerKind::HilbertSchmidtMixed, 2, 1);
    const DensityMatrix b = sample_state(SubsystemLayout::single(3), SamplerKind::HilbertSchmidtMixed, 3, 2);
    const DensityMatrix ab = tensor_product(a, b);
    CHECK(max_abs(partial_trace(ab, {0}).matrix() - a.matrix()) < 1e-14);
    CHECK(max_abs(partial_trace(ab, {1}).matrix() - b.matrix()) < 1e-14);
    CHECK(max_abs(partial_trace(ab, {1}).matrix() - trace_out_first(ab.matrix(), 2, 3)) < 1e-15);
  }
  SUBCASE("all but one of |000>") {
    CHECK(max_abs(partial_trace(zeros(3), {2}).matrix() - ket(2, 0).matrix()) == 0.0);
  }
  SUBCASE("keep order does not matter, layout follows ascending order") {
    const DensityMatrix rho = sample_state(SubsystemLayout({2, 3, 2}), SamplerKind::HilbertSchmidtMixed, 12, 5);
    const DensityMatrix a = partial_trace(rho, {2, 0});
    const DensityMatrix b = partial_trace(rho, {0, 2});
    CHECK(a.layout().dims() == std::vector<int>{2, 2});
    CHECK(max_abs(a.matrix() - b.matrix()) == 0.0);
    CHECK(std::abs(a.matrix().trace().real() - 1.0) < 1e-10);
  }
  SUBCASE("bad indices") {
    CHECK_THROWS_AS(partial_trace(bell(), {2}), Error);
    CHECK_THROWS_AS(partial_trace(bell(), {0, 0}), Error);
    CHECK_THROWS_AS(partial_trace(bell(), std::span<const int>{}), Error);
  }
}

TEST_CASE("purify") {
  SUBCASE("maximally mixed qubit") {
    const PureStateVector psi = purify(DensityMatrix::maximally_mixed(2));
    const DensityMatrix proj = psi.projector();
    CHECK(max_abs(partial_trace(proj, {0}).matrix() - ComplexMatrix::Identity(2, 2) / 2.0) < 1e-12);
    CHECK(std::abs(von_neumann_entropy(partial_trace(proj, {1})) - 1.0) < 1e-12);
  }
  SUBCASE("pure input") {
    ComplexVector v(2);
    v << Complex(0.6, 0.0), Complex(0.0, 0.8);
    const DensityMatrix rho = DensityMatrix::pure(v, SubsystemLayout::single(2));
    const PureStateVector psi = purify(rho);
    // |psi> ⊗ |0>, with the first amplitude made real.
    CHECK(std::abs(psi.amplitudes()(0) - 0.6) < 1e-12);
    CHECK(std::abs(psi.amplitudes()(2) - Complex(0.0, 0.8)) < 1e-12);
    CHECK(std::abs(psi.amplitudes()(1)) < 1e-12);
    CHECK(std::abs(psi.amplitudes()(3)) < 1e-12);
  }
  SUBCASE("diag(3/4, 1/4)") {
    const PureStateVector psi = purify(diag_state({0.75, 0.25}));
    CHECK(std::abs(psi.amplitudes()(0) - std::sqrt(0.75)) < 1e-12);
    CHECK(std::abs(psi.amplitudes()(3) - std::sqrt(0.25)) < 1e-12);
    CHECK(max_abs(partial_trace(psi.projector(), {0}).matrix() - diag_state({0.75, 0.25}).matrix()) < 1e-10);
  }
  SUBCASE("round trip on random states") {
    int n = 0;
    for (int d : {2, 3, 4}) {
      for (std::uint64_t s = 0; s < 67; ++s, ++n) {
        const DensityMatrix rho = sample_state(SubsystemLayout::single(d), SamplerKind::HilbertSchmidtMixed, d, s);
        const PureStateVector psi = purify(rho);
        CHECK(psi.layout().dims() == std::vector<int>{d, d});
        CHECK(max_abs(partial_trace(psi.projector(), {0}).matrix() - rho.matrix()) < 1e-10);
      }
    }
    CHECK(n >= 200);
  }
}

TEST_CASE("subadditivity step on random tripartite states") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const DensityMatrix abc = sample_state(SubsystemLayout({2, 2, 2}), SamplerKind::HilbertSchmidtMixed, 8, s);
    const double lhs = von_neumann_entropy(abc) - von_neumann_entropy(partial_trace(abc, {1, 2}));
    const double rhs = von_neumann_entropy(partial_trace(abc, {0, 1})) - von_neumann_entropy(partial_trace(abc, {1}));
    CHECK(lhs <= rhs + 1e-9);
  }
}
