#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "entvae/qstate.hpp"
#include "entvae/rng.hpp"

using namespace entvae;
using qstate::Complex;
using qstate::ComplexMatrix;
using qstate::DensityMatrix;
using qstate::EntanglementLabel;

namespace {

ComplexMatrix diag4(double a, double b, double c, double d) {
  ComplexMatrix m(4, 4);
  m.at(0, 0) = a;
  m.at(1, 1) = b;
  m.at(2, 2) = c;
  m.at(3, 3) = d;
  return m;
}

DensityMatrix maximally_mixed() { return DensityMatrix::from_matrix(diag4(0.25, 0.25, 0.25, 0.25)); }

// rhoA (x) rhoB from two random single-qubit Ginibre states.
DensityMatrix random_product_state(rng::Stream& s) {
  const ComplexMatrix a = qstate::random_ginibre_state(s, 2);
  const ComplexMatrix b = qstate::random_ginibre_state(s, 2);
  return DensityMatrix::from_matrix(qstate::kron(a, b));
}

}  // namespace

TEST_CASE("eigvals: identity and diagonal") {
  const auto id = qstate::eigvals_hermitian(diag4(1, 1, 1, 1));
  for (double e : id) CHECK(e == doctest::Approx(1.0).epsilon(1e-12));

  const auto d = qstate::eigvals_hermitian(diag4(0.1, 0.2, 0.3, 0.4));
  CHECK(d[0] == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(d[1] == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(d[2] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(d[3] == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("eigvals: X (x) I has +-1 doubly degenerate") {
  const ComplexMatrix xi =
      qstate::kron(qstate::pauli_matrix(qstate::PauliIndex::X),
                   qstate::pauli_matrix(qstate::PauliIndex::Id));
  const auto e = qstate::eigvals_hermitian(xi);
  CHECK(e[0] == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(e[1] == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(e[2] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(e[3] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("eigvals: sum equals trace on random Hermitian matrices") {
  rng::Stream s(123, 1);
  for (int trial = 0; trial < 200; ++trial) {
    ComplexMatrix h(4, 4);
    for (std::size_t i = 0; i < 4; ++i) {
      h.at(i, i) = s.normal();
      for (std::size_t j = i + 1; j < 4; ++j) {
        h.at(i, j) = s.complex_normal();
        h.at(j, i) = std::conj(h.at(i, j));
      }
    }
    const auto e = qstate::eigvals_hermitian(h);
    const double sum = e[0] + e[1] + e[2] + e[3];
    CHECK(std::abs(sum - h.trace().real()) < 1e-9);
    CHECK(e[0] <= e[1]);
    CHECK(e[1] <= e[2]);
    CHECK(e[2] <= e[3]);
  }
}

TEST_CASE("eigvals: non-Hermitian input rejected") {
  ComplexMatrix m(4, 4);
  m.at(0, 1) = 1.0;  // m(1,0) stays 0
  CHECK_THROWS_AS(qstate::eigvals_hermitian(m), std::invalid_argument);
  CHECK_THROWS_AS(qstate::eigvals_hermitian(ComplexMatrix(3, 3)),
                  std::invalid_argument);
}

TEST_CASE("random density matrices satisfy the state invariants") {
  rng::Stream s(7, rng::kDataStream);
  for (int i = 0; i < 100; ++i) {
    const DensityMatrix rho = qstate::random_density_matrix(s);
    CHECK(qstate::hermiticity_defect(rho.matrix) <= 1e-12);
    const Complex tr = rho.matrix.trace();
    CHECK(std::abs(tr.real() - 1.0) < 1e-12);
    CHECK(std::abs(tr.imag()) < 1e-12);
    CHECK(qstate::eigvals_hermitian(rho.matrix)[0] >= -1e-10);
  }
}

TEST_CASE("ginibre separable fraction matches the Monte Carlo reference") {
  // Reference 0.24207 from tests/oracles/reference_values.py (1e5 states).
  rng::Stream s(2024, rng::kDataStream);
  int separable = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i)
    if (qstate::ppt_label(qstate::random_density_matrix(s)) ==
        EntanglementLabel::Separable)
      ++separable;
  const double frac = static_cast<double>(separable) / n;
  CHECK(frac > 0.24207 - 0.02);
  CHECK(frac < 0.24207 + 0.02);
}

TEST_CASE("partial transpose: fixed points and Bell state") {
  // I/4 is diagonal, hence invariant.
  const ComplexMatrix pt_mixed = qstate::partial_transpose(maximally_mixed());
  CHECK(pt_mixed.frobenius_distance(maximally_mixed().matrix) == 0.0);

  // |Phi+><Phi+|: reference eigenvalues [-1/2, 1/2, 1/2, 1/2].
  const ComplexMatrix pt_bell = qstate::partial_transpose(qstate::bell_phi_plus());
  const auto e = qstate::eigvals_hermitian(pt_bell);
  CHECK(e[0] == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(e[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(e[3] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("partial transpose: involution and trace preservation") {
  rng::Stream s(99, rng::kDataStream);
  for (int i = 0; i < 50; ++i) {
    const DensityMatrix rho = qstate::random_density_matrix(s);
    const ComplexMatrix pt = qstate::partial_transpose(rho);
    CHECK(std::abs(pt.trace().real() - 1.0) < 1e-12);
    CHECK(qstate::hermiticity_defect(pt) <= 1e-12);
    const ComplexMatrix back = qstate::partial_transpose(pt);
    CHECK(back.frobenius_distance(rho.matrix) < 1e-15);
  }
}

TEST_CASE("ppt label: Bell entangled, product states separable") {
  CHECK(qstate::ppt_label(qstate::bell_phi_plus()) == EntanglementLabel::Entangled);

  rng::Stream s(31337, rng::kDataStream);
  for (int i = 0; i < 1000; ++i)
    CHECK(qstate::ppt_label(random_product_state(s)) == EntanglementLabel::Separable);
}

TEST_CASE("ppt label: werner family flips exactly once, in (0.33, 0.34)") {
  CHECK(qstate::ppt_label(qstate::werner_state(0.25)) == EntanglementLabel::Separable);
  CHECK(qstate::ppt_label(qstate::werner_state(0.50)) == EntanglementLabel::Entangled);

  int flips = 0;
  int flip_step = -1;
  auto prev = qstate::ppt_label(qstate::werner_state(0.0));
  for (int k = 1; k <= 100; ++k) {
    const auto cur = qstate::ppt_label(qstate::werner_state(k / 100.0));
    if (cur != prev) {
      ++flips;
      flip_step = k;
    }
    prev = cur;
  }
  CHECK(flips == 1);
  CHECK(flip_step == 34);  // separable at 0.33, entangled at 0.34
}

TEST_CASE("ppt label is deterministic") {
  rng::Stream s(5, rng::kDataStream);
  const DensityMatrix rho = qstate::random_density_matrix(s);
  const auto first = qstate::ppt_label(rho);
  for (int i = 0; i < 10; ++i) CHECK(qstate::ppt_label(rho) == first);
}

TEST_CASE("pauli expectations: reference states") {
  // I/4: everything vanishes.
  for (double v : qstate::pauli_expectations(maximally_mixed()).values)
    CHECK(v == doctest::Approx(0.0).epsilon(1e-15));

  // |00><00|: m_0z = m_z0 = m_zz = 1, all else 0.
  ComplexMatrix k00(4, 4);
  k00.at(0, 0) = 1.0;
  const auto m00 = qstate::pauli_expectations(DensityMatrix::from_matrix(k00));
  for (std::size_t k = 0; k < qstate::kNumMeasurements; ++k) {
    const double expect = (k == 2 || k == 5 || k == 14) ? 1.0 : 0.0;
    CHECK(m00.values[k] == doctest::Approx(expect).epsilon(1e-12));
  }

  // Bell: m_xx = 1, m_yy = -1, m_zz = 1, all else 0 (oracle-verified).
  const auto mb = qstate::pauli_expectations(qstate::bell_phi_plus());
  for (std::size_t k = 0; k < qstate::kNumMeasurements; ++k) {
    double expect = 0.0;
    if (k == 6 || k == 14) expect = 1.0;
    if (k == 10) expect = -1.0;
    CHECK(mb.values[k] == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("pauli expectations stay in [-1, 1]") {
  rng::Stream s(404, rng::kDataStream);
  for (int i = 0; i < 200; ++i) {
    const auto m = qstate::pauli_expectations(qstate::random_density_matrix(s));
    for (double v : m.values) {
      CHECK(v >= -1.0 - 1e-9);
      CHECK(v <= 1.0 + 1e-9);
    }
  }
}

TEST_CASE("reconstruction: zero vector gives I/4, basis state round-trips") {
  const ComplexMatrix mixed = qstate::reconstruct_density(qstate::MeasurementVector{});
  CHECK(mixed.frobenius_distance(maximally_mixed().matrix) < 1e-15);

  ComplexMatrix k00(4, 4);
  k00.at(0, 0) = 1.0;
  const DensityMatrix rho = DensityMatrix::from_matrix(k00);
  const ComplexMatrix back = qstate::reconstruct_density(qstate::pauli_expectations(rho));
  CHECK(back.frobenius_distance(rho.matrix) < 1e-10);
}

TEST_CASE("reconstruction round-trip on 100 random states") {
  rng::Stream s(777, rng::kDataStream);
  for (int i = 0; i < 100; ++i) {
    const DensityMatrix rho = qstate::random_density_matrix(s);
    const ComplexMatrix back =
        qstate::reconstruct_density(qstate::pauli_expectations(rho));
    CHECK(back.frobenius_distance(rho.matrix) < 1e-10);
  }
}

TEST_CASE("density matrix validation rejects bad inputs") {
  CHECK_THROWS_AS(DensityMatrix::from_matrix(diag4(0.5, 0.5, 0.5, 0.5)),
                  std::invalid_argument);  // trace 2
  CHECK_THROWS_AS(DensityMatrix::from_matrix(diag4(1.5, -0.5, 0, 0)),
                  std::invalid_argument);  // negative eigenvalue
  ComplexMatrix nh(4, 4);
  nh.at(0, 0) = 1.0;
  nh.at(0, 1) = Complex{0.0, 1.0};
  nh.at(1, 0) = Complex{0.0, 1.0};  // conj would be -i
  CHECK_THROWS_AS(DensityMatrix::from_matrix(nh), std::invalid_argument);
}

TEST_CASE("werner rejects p outside [0,1]") {
  CHECK_THROWS_AS(qstate::werner_state(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(qstate::werner_state(1.1), std::invalid_argument);
}
