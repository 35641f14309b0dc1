#include "switchsim/gates.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace switchsim {
namespace {

constexpr cplx kI{0.0, 1.0};

std::size_t expected_params(GateKind k) {
  switch (k) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
      return 1;
    case GateKind::U3:
      return 3;
    default:
      return 0;
  }
}

std::size_t expected_targets(GateKind k) {
  switch (k) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::U3:
      return 1;
    case GateKind::CNOT:
    case GateKind::SWAP:
      return 2;
    case GateKind::CSWAP:
      return 3;
    case GateKind::Custom:
      return 0;  // any
  }
  return 0;
}

ComplexMatrix two_by_two(cplx m00, cplx m01, cplx m10, cplx m11) {
  ComplexMatrix m(2, 2);
  m(0, 0) = m00;
  m(0, 1) = m01;
  m(1, 0) = m10;
  m(1, 1) = m11;
  return m;
}

ComplexMatrix basis_permutation(std::size_t d,
                                const std::vector<std::size_t>& image) {
  ComplexMatrix m(d, d);
  for (std::size_t v = 0; v < d; ++v) m(image[v], v) = 1.0;
  return m;
}

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) e(r, c) = m(r, c);
  return e;
}

ComplexMatrix from_eigen(const Eigen::MatrixXcd& e) {
  ComplexMatrix m(e.rows(), e.cols());
  for (Eigen::Index r = 0; r < e.rows(); ++r)
    for (Eigen::Index c = 0; c < e.cols(); ++c) m(r, c) = e(r, c);
  return m;
}

}  // namespace

void validate_gate(const GateSpec& spec) {
  if (spec.params.size() != expected_params(spec.kind))
    throw std::invalid_argument("gate: wrong parameter count");
  if (spec.targets.empty())
    throw std::invalid_argument("gate: no target qubits");
  const std::size_t want = expected_targets(spec.kind);
  if (want != 0 && spec.targets.size() != want)
    throw std::invalid_argument("gate: wrong target count");
  for (std::size_t i = 0; i < spec.targets.size(); ++i)
    for (std::size_t j = i + 1; j < spec.targets.size(); ++j)
      if (spec.targets[i] == spec.targets[j])
        throw std::invalid_argument("gate: duplicate target");
  if (spec.kind == GateKind::Custom) {
    if (!spec.custom.square() ||
        spec.custom.rows() != dim_of(static_cast<unsigned>(spec.targets.size())))
      throw std::invalid_argument("gate: custom matrix dimension mismatch");
    if (!spec.custom.is_unitary())
      throw std::invalid_argument("gate: custom matrix is not unitary");
  }
}

ComplexMatrix gate_matrix(const GateSpec& spec) {
  validate_gate(spec);
  switch (spec.kind) {
    case GateKind::RX: {
      const double h = spec.params[0] / 2.0;
      return two_by_two(std::cos(h), -kI * std::sin(h), -kI * std::sin(h),
                        std::cos(h));
    }
    case GateKind::RY: {
      const double h = spec.params[0] / 2.0;
      return two_by_two(std::cos(h), -std::sin(h), std::sin(h), std::cos(h));
    }
    case GateKind::RZ: {
      const double h = spec.params[0] / 2.0;
      return two_by_two(std::exp(-kI * h), 0.0, 0.0, std::exp(kI * h));
    }
    case GateKind::U3: {
      const double t = spec.params[0] / 2.0;
      const double phi = spec.params[1];
      const double lam = spec.params[2];
      return two_by_two(std::cos(t), -std::exp(kI * lam) * std::sin(t),
                        std::exp(kI * phi) * std::sin(t),
                        std::exp(kI * (phi + lam)) * std::cos(t));
    }
    case GateKind::CNOT:
      // Local bit 0 = control, bit 1 = target.
      return basis_permutation(4, {0, 3, 2, 1});
    case GateKind::SWAP:
      return basis_permutation(4, {0, 2, 1, 3});
    case GateKind::CSWAP:
      // Local bit 0 = control; bits 1 and 2 swap when it is set.
      return basis_permutation(8, {0, 1, 2, 5, 4, 3, 6, 7});
    case GateKind::Custom:
      return spec.custom;
  }
  throw std::invalid_argument("gate: unknown kind");
}

void apply_gate(StateVector& state, const GateSpec& spec) {
  state.apply_matrix(gate_matrix(spec), spec.targets);
}

EncodingGenerator EncodingGenerator::from_hermitian(const ComplexMatrix& h) {
  if (!h.is_hermitian())
    throw std::invalid_argument("encoding generator is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(h));
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition failed");
  EncodingGenerator gen;
  gen.hermitian = h;
  gen.eigenvalues.assign(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + h.rows());
  // Columns of the solver's basis are eigenvectors: H = Q diag Q^dagger,
  // so V = Q^dagger.
  gen.diagonalizer = from_eigen(solver.eigenvectors().adjoint());
  return gen;
}

ComplexMatrix hermitian_evolution(const ComplexMatrix& h, double t) {
  const EncodingGenerator gen = EncodingGenerator::from_hermitian(h);
  const std::size_t d = h.rows();
  ComplexMatrix phase(d, d);
  for (std::size_t i = 0; i < d; ++i)
    phase(i, i) = std::exp(-kI * t * gen.eigenvalues[i]);
  return gen.diagonalizer.adjoint() * phase * gen.diagonalizer;
}

ComplexMatrix pauli_x() { return two_by_two(0, 1, 1, 0); }
ComplexMatrix pauli_y() { return two_by_two(0, -kI, kI, 0); }
ComplexMatrix pauli_z() { return two_by_two(1, 0, 0, -1); }

}  // namespace switchsim
