#include "entvae/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace entvae::qstate {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kDensityTol = 1e-12;
constexpr double kPositivityTol = -1e-10;
constexpr double kJacobiOffTol = 1e-12;
constexpr int kJacobiMaxSweeps = 100;

}  // namespace

Complex ComplexMatrix::trace() const {
  Complex t{0.0, 0.0};
  for (std::size_t i = 0; i < std::min(rows, cols); ++i) t += at(i, i);
  return t;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols, rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out.at(j, i) = std::conj(at(i, j));
  return out;
}

bool ComplexMatrix::all_finite() const {
  for (const Complex& z : entries)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

double ComplexMatrix::frobenius_distance(const ComplexMatrix& other) const {
  if (rows != other.rows || cols != other.cols)
    throw std::invalid_argument("frobenius_distance: shape mismatch");
  double sum = 0.0;
  for (std::size_t k = 0; k < entries.size(); ++k)
    sum += std::norm(entries[k] - other.entries[k]);
  return std::sqrt(sum);
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matmul: shape mismatch");
  ComplexMatrix out(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      const Complex aik = a.at(i, k);
      for (std::size_t j = 0; j < b.cols; ++j) out.at(i, j) += aik * b.at(k, j);
    }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows * b.rows, a.cols * b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j)
      for (std::size_t k = 0; k < b.rows; ++k)
        for (std::size_t l = 0; l < b.cols; ++l)
          out.at(i * b.rows + k, j * b.cols + l) = a.at(i, j) * b.at(k, l);
  return out;
}

double hermiticity_defect(const ComplexMatrix& a) {
  if (a.rows != a.cols) throw std::invalid_argument("hermiticity_defect: not square");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j)
      worst = std::max(worst, std::abs(a.at(i, j) - std::conj(a.at(j, i))));
  return worst;
}

const ComplexMatrix& pauli_matrix(PauliIndex p) {
  static const std::array<ComplexMatrix, 4> table = [] {
    std::array<ComplexMatrix, 4> t{ComplexMatrix(2, 2), ComplexMatrix(2, 2),
                                   ComplexMatrix(2, 2), ComplexMatrix(2, 2)};
    t[0].at(0, 0) = 1.0;
    t[0].at(1, 1) = 1.0;
    t[1].at(0, 1) = 1.0;
    t[1].at(1, 0) = 1.0;
    t[2].at(0, 1) = Complex{0.0, -1.0};
    t[2].at(1, 0) = Complex{0.0, 1.0};
    t[3].at(0, 0) = 1.0;
    t[3].at(1, 1) = -1.0;
    return t;
  }();
  return table[static_cast<std::size_t>(p)];
}

const std::array<std::pair<PauliIndex, PauliIndex>, kNumMeasurements>
    kCanonicalOrder = {{
        {PauliIndex::Id, PauliIndex::X},
        {PauliIndex::Id, PauliIndex::Y},
        {PauliIndex::Id, PauliIndex::Z},
        {PauliIndex::X, PauliIndex::Id},
        {PauliIndex::Y, PauliIndex::Id},
        {PauliIndex::Z, PauliIndex::Id},
        {PauliIndex::X, PauliIndex::X},
        {PauliIndex::X, PauliIndex::Y},
        {PauliIndex::X, PauliIndex::Z},
        {PauliIndex::Y, PauliIndex::X},
        {PauliIndex::Y, PauliIndex::Y},
        {PauliIndex::Y, PauliIndex::Z},
        {PauliIndex::Z, PauliIndex::X},
        {PauliIndex::Z, PauliIndex::Y},
        {PauliIndex::Z, PauliIndex::Z},
    }};

const std::array<const char*, kNumMeasurements> kMeasurementNames = {
    "m_0x", "m_0y", "m_0z", "m_x0", "m_y0", "m_z0", "m_xx", "m_xy",
    "m_xz", "m_yx", "m_yy", "m_yz", "m_zx", "m_zy", "m_zz"};

namespace {

// The 15 operator products sigma_i (x) sigma_j in canonical order.
const std::array<ComplexMatrix, kNumMeasurements>& measurement_operators() {
  static const std::array<ComplexMatrix, kNumMeasurements> ops = [] {
    std::array<ComplexMatrix, kNumMeasurements> t;
    for (std::size_t k = 0; k < kNumMeasurements; ++k)
      t[k] = kron(pauli_matrix(kCanonicalOrder[k].first),
                  pauli_matrix(kCanonicalOrder[k].second));
    return t;
  }();
  return ops;
}

}  // namespace

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m) {
  if (m.rows != 4 || m.cols != 4)
    throw std::invalid_argument("DensityMatrix: must be 4x4");
  if (!m.all_finite())
    throw std::invalid_argument("DensityMatrix: non-finite entries");
  if (hermiticity_defect(m) > kDensityTol)
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  const Complex tr = m.trace();
  if (std::abs(tr.real() - 1.0) > kDensityTol || std::abs(tr.imag()) > kDensityTol)
    throw std::invalid_argument("DensityMatrix: trace != 1");
  const auto eigs = eigvals_hermitian(m);
  if (eigs[0] < kPositivityTol)
    throw std::invalid_argument("DensityMatrix: negative eigenvalue");
  return DensityMatrix{std::move(m)};
}

std::array<double, 4> eigvals_hermitian(const ComplexMatrix& h) {
  if (h.rows != 4 || h.cols != 4)
    throw std::invalid_argument("eigvals_hermitian: must be 4x4");
  if (!h.all_finite())
    throw std::invalid_argument("eigvals_hermitian: non-finite entries");
  if (hermiticity_defect(h) > kHermitianTol)
    throw std::invalid_argument("eigvals_hermitian: not Hermitian");

  // Work on the exactly-Hermitian part so roundoff in the input cannot
  // drift the iteration.
  ComplexMatrix a(4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    a.at(i, i) = Complex{h.at(i, i).real(), 0.0};
    for (std::size_t j = i + 1; j < 4; ++j) {
      const Complex v = 0.5 * (h.at(i, j) + std::conj(h.at(j, i)));
      a.at(i, j) = v;
      a.at(j, i) = std::conj(v);
    }
  }

  const auto off_norm = [&a] {
    double s = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        if (i != j) s += std::norm(a.at(i, j));
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    if (off_norm() <= kJacobiOffTol) {
      std::array<double, 4> eigs{a.at(0, 0).real(), a.at(1, 1).real(),
                                 a.at(2, 2).real(), a.at(3, 3).real()};
      std::sort(eigs.begin(), eigs.end());
      return eigs;
    }
    for (std::size_t p = 0; p < 4; ++p) {
      for (std::size_t q = p + 1; q < 4; ++q) {
        const Complex apq = a.at(p, q);
        const double r = std::abs(apq);
        if (r < 1e-300) continue;
        const Complex phase = apq / r;  // e^{i phi}

        // Unitary rotation zeroing a(p,q): same angle formula as the real
        // symmetric case with |a_pq| in place of a_pq.
        const double tau = (a.at(q, q).real() - a.at(p, p).real()) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // A <- J^dag A J with J(p,p)=c, J(p,q)=s e^{i phi},
        // J(q,p)=-s e^{-i phi}, J(q,q)=c.
        for (std::size_t k = 0; k < 4; ++k) {
          const Complex akp = a.at(k, p);
          const Complex akq = a.at(k, q);
          a.at(k, p) = c * akp - s * std::conj(phase) * akq;
          a.at(k, q) = s * phase * akp + c * akq;
        }
        for (std::size_t k = 0; k < 4; ++k) {
          const Complex apk = a.at(p, k);
          const Complex aqk = a.at(q, k);
          a.at(p, k) = c * apk - s * phase * aqk;
          a.at(q, k) = s * std::conj(phase) * apk + c * aqk;
        }
        // keep the matrix exactly Hermitian against roundoff drift
        a.at(p, q) = Complex{0.0, 0.0};
        a.at(q, p) = Complex{0.0, 0.0};
        a.at(p, p) = Complex{a.at(p, p).real(), 0.0};
        a.at(q, q) = Complex{a.at(q, q).real(), 0.0};
      }
    }
  }
  throw std::runtime_error("eigvals_hermitian: no convergence after max sweeps");
}

ComplexMatrix random_ginibre_state(rng::Stream& stream, std::size_t dim) {
  ComplexMatrix g(dim, dim);
  for (Complex& z : g.entries) z = stream.complex_normal();

  // G G^dag, built on the upper triangle so Hermiticity is exact.
  ComplexMatrix rho(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    double diag = 0.0;
    for (std::size_t k = 0; k < dim; ++k) diag += std::norm(g.at(i, k));
    rho.at(i, i) = Complex{diag, 0.0};
    for (std::size_t j = i + 1; j < dim; ++j) {
      Complex v{0.0, 0.0};
      for (std::size_t k = 0; k < dim; ++k) v += g.at(i, k) * std::conj(g.at(j, k));
      rho.at(i, j) = v;
      rho.at(j, i) = std::conj(v);
    }
  }
  const double tr = rho.trace().real();
  for (Complex& z : rho.entries) z /= tr;
  return rho;
}

DensityMatrix random_density_matrix(rng::Stream& stream) {
  return DensityMatrix::from_matrix(random_ginibre_state(stream, 4));
}

ComplexMatrix partial_transpose(const ComplexMatrix& m) {
  if (m.rows != 4 || m.cols != 4)
    throw std::invalid_argument("partial_transpose: must be 4x4");
  ComplexMatrix out(4, 4);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t c = 0; c < 2; ++c)
        for (std::size_t d = 0; d < 2; ++d)
          out.at(2 * a + c, 2 * b + d) = m.at(2 * a + d, 2 * b + c);
  return out;
}

EntanglementLabel ppt_label(const DensityMatrix& rho) {
  const auto eigs = eigvals_hermitian(partial_transpose(rho));
  return eigs[0] < kPositivityTol ? EntanglementLabel::Entangled
                                  : EntanglementLabel::Separable;
}

MeasurementVector pauli_expectations(const DensityMatrix& rho) {
  const auto& ops = measurement_operators();
  MeasurementVector m;
  for (std::size_t k = 0; k < kNumMeasurements; ++k) {
    Complex tr{0.0, 0.0};
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        tr += rho.matrix.at(i, j) * ops[k].at(j, i);
    m.values[k] = tr.real();
  }
  return m;
}

ComplexMatrix reconstruct_density(const MeasurementVector& m) {
  for (double v : m.values)
    if (!std::isfinite(v))
      throw std::invalid_argument("reconstruct_density: non-finite value");
  const auto& ops = measurement_operators();
  ComplexMatrix rho(4, 4);
  for (std::size_t i = 0; i < 4; ++i) rho.at(i, i) = 1.0;
  for (std::size_t k = 0; k < kNumMeasurements; ++k)
    for (std::size_t e = 0; e < 16; ++e)
      rho.entries[e] += m.values[k] * ops[k].entries[e];
  for (Complex& z : rho.entries) z *= 0.25;
  return rho;
}

DensityMatrix bell_phi_plus() {
  ComplexMatrix m(4, 4);
  m.at(0, 0) = m.at(0, 3) = m.at(3, 0) = m.at(3, 3) = 0.5;
  return DensityMatrix{std::move(m)};
}

DensityMatrix werner_state(double p) {
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("werner_state: p must be in [0, 1]");
  ComplexMatrix m = bell_phi_plus().matrix;
  for (Complex& z : m.entries) z *= p;
  for (std::size_t i = 0; i < 4; ++i) m.at(i, i) += (1.0 - p) * 0.25;
  return DensityMatrix{std::move(m)};
}

}  // namespace entvae::qstate
