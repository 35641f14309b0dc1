#pragma once

#include <vector>

#include "switchsim/matrix.hpp"
#include "switchsim/types.hpp"

namespace switchsim {

class DensityMatrix;

// 2^n complex amplitudes; qubit 0 is the least significant bit of a basis
// index.
class StateVector {
 public:
  explicit StateVector(unsigned n_qubits);  // |0...0>
  static StateVector basis(unsigned n_qubits, std::size_t index);
  static StateVector from_amplitudes(unsigned n_qubits,
                                     std::vector<cplx> amplitudes);

  unsigned n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<cplx>& amplitudes() const { return amps_; }
  std::vector<cplx>& amplitudes() { return amps_; }
  const cplx& operator[](std::size_t i) const { return amps_[i]; }
  cplx& operator[](std::size_t i) { return amps_[i]; }

  double norm() const;
  cplx inner(const StateVector& rhs) const;  // <this|rhs>

  // Applies `m` on the listed qubits (local qubit j -> targets[j]), identity
  // elsewhere.
  void apply_matrix(const ComplexMatrix& m, const std::vector<unsigned>& targets);
  // Index-space permutation on the listed qubits: local value v -> perm[v].
  void apply_subsystem_permutation(const std::vector<std::size_t>& perm,
                                   const std::vector<unsigned>& targets);

  StateVector tensor(const StateVector& low_qubits) const;

 private:
  unsigned n_qubits_;
  std::vector<cplx> amps_;
};

class DensityMatrix {
 public:
  DensityMatrix(unsigned n_qubits, ComplexMatrix entries);
  static DensityMatrix from_state(const StateVector& psi);
  // Convex accumulation helper: starts from zero.
  static DensityMatrix zero(unsigned n_qubits);
  void accumulate(const StateVector& psi, double weight);

  unsigned n_qubits() const { return n_qubits_; }
  const ComplexMatrix& matrix() const { return m_; }

  // Hermiticity / unit trace / positivity (up to tolerance).
  void validate(double tol = kAlgebraTol) const;

 private:
  unsigned n_qubits_;
  ComplexMatrix m_;
};

// <psi|O|psi>; throws if O is not Hermitian or dimensions mismatch. The
// imaginary residue of the raw inner product must stay below 1e-9.
double expectation(const StateVector& psi, const ComplexMatrix& obs);
double expectation(const DensityMatrix& rho, const ComplexMatrix& obs);

// Partial trace over the complement of `keep`. The kept qubits are re-indexed
// in the order given (local qubit j of the result = keep[j]).
DensityMatrix reduced_density(const StateVector& psi,
                              const std::vector<unsigned>& keep);

}  // namespace switchsim
