#pragma once

#include <cstddef>
#include <vector>

#include "switchsim/types.hpp"

namespace switchsim {

// Dense complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) {
    return entries_[r * cols_ + c];
  }
  const cplx& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }
  cplx* data() { return entries_.data(); }
  const cplx* data() const { return entries_.data(); }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  // Kronecker product with `this` on the high-order index part.
  ComplexMatrix kron(const ComplexMatrix& low) const;

  ComplexMatrix operator*(const ComplexMatrix& rhs) const;
  ComplexMatrix operator+(const ComplexMatrix& rhs) const;
  ComplexMatrix operator-(const ComplexMatrix& rhs) const;
  ComplexMatrix operator*(cplx s) const;

  cplx trace() const;
  double max_abs() const;
  double max_abs_diff(const ComplexMatrix& rhs) const;

  bool is_unitary(double tol = kAlgebraTol) const;
  bool is_hermitian(double tol = kAlgebraTol) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> entries_;
};

// Right-to-left product: compose({A, B, C}) = A * B * C (C applied first).
ComplexMatrix compose(const std::vector<ComplexMatrix>& ops);

// Full-register operator acting as `m` on `targets` (local qubit j of the
// operator maps to register qubit targets[j]; qubit 0 is the least
// significant bit of a basis index) and as identity elsewhere.
ComplexMatrix embed(const ComplexMatrix& m, const std::vector<unsigned>& targets,
                    unsigned n_qubits);

}  // namespace switchsim
