#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "entvae/rng.hpp"

// Complex linear algebra for two-qubit states: random density-matrix
// sampling, partial transpose, PPT labeling, Pauli expectations and
// tomographic reconstruction. Everything here is pure and reentrant.
namespace entvae::qstate {

using Complex = std::complex<double>;

struct ComplexMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Complex> entries;  // row-major

  ComplexMatrix() = default;
  ComplexMatrix(std::size_t r, std::size_t c)
      : rows(r), cols(c), entries(r * c, Complex{0.0, 0.0}) {}

  Complex& at(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
  const Complex& at(std::size_t i, std::size_t j) const {
    return entries[i * cols + j];
  }

  Complex trace() const;
  ComplexMatrix adjoint() const;
  bool all_finite() const;
  double frobenius_distance(const ComplexMatrix& other) const;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

// Kronecker product, (m x n) x (p x q) -> (mp x nq).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Max |a(i,j) - conj(a(j,i))| over all entries; 0 for exactly Hermitian a.
double hermiticity_defect(const ComplexMatrix& a);

enum class PauliIndex { Id = 0, X, Y, Z };

// The 2x2 Pauli matrix for an index (Id gives the identity).
const ComplexMatrix& pauli_matrix(PauliIndex p);

// Canonical measurement order: locals first (6), then correlated (9),
// row-major in (i,j). M_00 is excluded (identically 1).
inline constexpr std::size_t kNumMeasurements = 15;
extern const std::array<std::pair<PauliIndex, PauliIndex>, kNumMeasurements>
    kCanonicalOrder;

// Column names matching the canonical order: m_0x, ..., m_zz.
extern const std::array<const char*, kNumMeasurements> kMeasurementNames;

struct MeasurementVector {
  std::array<double, kNumMeasurements> values{};
};

enum class EntanglementLabel : int { Separable = 0, Entangled = 1 };

// A valid 4x4 two-qubit state: Hermitian within 1e-12, unit trace within
// 1e-12, eigenvalues >= -1e-10. from_matrix enforces all three.
struct DensityMatrix {
  ComplexMatrix matrix;  // always 4x4

  static DensityMatrix from_matrix(ComplexMatrix m);
};

// Eigenvalues of a 4x4 Hermitian matrix, ascending. Cyclic Jacobi
// rotations, off-diagonal tolerance 1e-12, max 100 sweeps.
// Throws std::invalid_argument if h is not 4x4 Hermitian within 1e-10,
// std::runtime_error if the sweep limit is exhausted.
std::array<double, 4> eigvals_hermitian(const ComplexMatrix& h);

// Ginibre / Hilbert-Schmidt sample of the given dimension: G G^dag
// normalized to unit trace, G a matrix of iid standard complex Gaussians.
ComplexMatrix random_ginibre_state(rng::Stream& stream, std::size_t dim);

// Random two-qubit state from the Ginibre ensemble.
DensityMatrix random_density_matrix(rng::Stream& stream);

// (I (x) T): transpose each 2x2 block of the 4x4 matrix in place.
// Result is Hermitian with unit trace but may be non-positive. The raw
// overload exists because the map is an involution on its own output.
ComplexMatrix partial_transpose(const ComplexMatrix& m);
inline ComplexMatrix partial_transpose(const DensityMatrix& rho) {
  return partial_transpose(rho.matrix);
}

// Entangled iff the minimum partial-transpose eigenvalue < -1e-10;
// boundary states within [-1e-10, 0] count as separable.
EntanglementLabel ppt_label(const DensityMatrix& rho);

// M_ij = Re Tr[rho (sigma_i (x) sigma_j)] in the canonical order.
MeasurementVector pauli_expectations(const DensityMatrix& rho);

// rho = 1/4 (I (x) I + sum_ij M_ij sigma_i (x) sigma_j). Hermitian and
// unit trace by construction; positivity is NOT guaranteed for
// unphysical inputs.
ComplexMatrix reconstruct_density(const MeasurementVector& m);

// |Phi+><Phi+|, the maximally entangled Bell state.
DensityMatrix bell_phi_plus();

// p |Phi+><Phi+| + (1-p) I/4; entangled exactly when p > 1/3.
DensityMatrix werner_state(double p);

}  // namespace entvae::qstate
