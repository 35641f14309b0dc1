#pragma once

#include <vector>

#include "switchsim/matrix.hpp"
#include "switchsim/state.hpp"

namespace switchsim {

enum class GateKind { RX, RY, RZ, U3, CNOT, SWAP, CSWAP, Custom };

// Conventions: RX(x) = exp(-i x sigma_x / 2), likewise RY/RZ;
// U3(theta, phi, lambda) = [[cos(t/2), -e^{i l} sin(t/2)],
//                           [e^{i p} sin(t/2), e^{i(p+l)} cos(t/2)]].
struct GateSpec {
  GateKind kind;
  std::vector<double> params;    // radians
  std::vector<unsigned> targets;  // CNOT: {control, target}; CSWAP: {control, a, b}
  ComplexMatrix custom;          // Custom only; dim 2^targets, unitary

  static GateSpec rx(double angle, unsigned q) { return {GateKind::RX, {angle}, {q}, {}}; }
  static GateSpec ry(double angle, unsigned q) { return {GateKind::RY, {angle}, {q}, {}}; }
  static GateSpec rz(double angle, unsigned q) { return {GateKind::RZ, {angle}, {q}, {}}; }
  static GateSpec u3(double theta, double phi, double lambda, unsigned q) {
    return {GateKind::U3, {theta, phi, lambda}, {q}, {}};
  }
  static GateSpec cnot(unsigned control, unsigned target) {
    return {GateKind::CNOT, {}, {control, target}, {}};
  }
  static GateSpec swap_gate(unsigned a, unsigned b) {
    return {GateKind::SWAP, {}, {a, b}, {}};
  }
  static GateSpec cswap(unsigned control, unsigned a, unsigned b) {
    return {GateKind::CSWAP, {}, {control, a, b}, {}};
  }
  static GateSpec custom_gate(ComplexMatrix m, std::vector<unsigned> targets) {
    return {GateKind::Custom, {}, std::move(targets), std::move(m)};
  }
};

// Throws std::invalid_argument on malformed specs (param count, duplicate
// targets, non-unitary custom matrix).
void validate_gate(const GateSpec& spec);

// Unitary on 2^|targets| dimensions; local qubit j corresponds to targets[j].
ComplexMatrix gate_matrix(const GateSpec& spec);

// Applies the gate to the state on spec.targets.
void apply_gate(StateVector& state, const GateSpec& spec);

// Hermitian generator of an encoding gate exp(-i x H), with its spectrum.
struct EncodingGenerator {
  ComplexMatrix hermitian;
  std::vector<double> eigenvalues;  // ascending
  // Unitary V with H = V^dagger diag(eigenvalues) V.
  ComplexMatrix diagonalizer;

  static EncodingGenerator from_hermitian(const ComplexMatrix& h);
};

// exp(-i t H) for Hermitian H, computed by eigendecomposition.
ComplexMatrix hermitian_evolution(const ComplexMatrix& h, double t);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

}  // namespace switchsim
