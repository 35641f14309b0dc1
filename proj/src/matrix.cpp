#include "switchsim/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace switchsim {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      m(c, r) = std::conj((*this)(r, c));
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
  return m;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < entries_.size(); ++i)
    m.entries_[i] = std::conj(entries_[i]);
  return m;
}

ComplexMatrix ComplexMatrix::kron(const ComplexMatrix& low) const {
  ComplexMatrix m(rows_ * low.rows_, cols_ * low.cols_);
  for (std::size_t r1 = 0; r1 < rows_; ++r1)
    for (std::size_t c1 = 0; c1 < cols_; ++c1) {
      const cplx v = (*this)(r1, c1);
      if (v == cplx{}) continue;
      for (std::size_t r2 = 0; r2 < low.rows_; ++r2)
        for (std::size_t c2 = 0; c2 < low.cols_; ++c2)
          m(r1 * low.rows_ + r2, c1 * low.cols_ + c2) = v * low(r2, c2);
    }
  return m;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
  if (cols_ != rhs.rows_)
    throw std::invalid_argument("matrix product: dimension mismatch");
  ComplexMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    cplx* out_row = out.data() + i * rhs.cols_;
    const cplx* a_row = data() + i * cols_;
    for (std::size_t k = 0; k < cols_; ++k) {
      const cplx a = a_row[k];
      if (a == cplx{}) continue;
      const cplx* b_row = rhs.data() + k * rhs.cols_;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out_row[j] += a * b_row[j];
    }
  }
  return out;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw std::invalid_argument("matrix sum: dimension mismatch");
  ComplexMatrix out = *this;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    out.entries_[i] += rhs.entries_[i];
  return out;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw std::invalid_argument("matrix difference: dimension mismatch");
  ComplexMatrix out = *this;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    out.entries_[i] -= rhs.entries_[i];
  return out;
}

ComplexMatrix ComplexMatrix::operator*(cplx s) const {
  ComplexMatrix out = *this;
  for (auto& e : out.entries_) e *= s;
  return out;
}

cplx ComplexMatrix::trace() const {
  cplx t{};
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& e : entries_) m = std::max(m, std::abs(e));
  return m;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw std::invalid_argument("max_abs_diff: dimension mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    m = std::max(m, std::abs(entries_[i] - rhs.entries_[i]));
  return m;
}

bool ComplexMatrix::is_unitary(double tol) const {
  if (!square()) return false;
  return (adjoint() * *this).max_abs_diff(identity(rows_)) < tol;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  if (!square()) return false;
  return max_abs_diff(adjoint()) < tol;
}

ComplexMatrix compose(const std::vector<ComplexMatrix>& ops) {
  if (ops.empty()) throw std::invalid_argument("compose: empty operator list");
  for (const auto& op : ops) {
    if (!op.square() || op.rows() != ops.front().rows())
      throw std::invalid_argument("compose: dimension mismatch");
  }
  ComplexMatrix acc = ops.back();
  for (std::size_t i = ops.size() - 1; i-- > 0;) acc = ops[i] * acc;
  return acc;
}

ComplexMatrix embed(const ComplexMatrix& m, const std::vector<unsigned>& targets,
                    unsigned n_qubits) {
  if (n_qubits > kMaxQubits)
    throw std::invalid_argument("embed: register too large");
  if (!m.square() || m.rows() != dim_of(static_cast<unsigned>(targets.size())))
    throw std::invalid_argument("embed: matrix dimension does not match targets");
  std::size_t target_mask = 0;
  for (unsigned t : targets) {
    if (t >= n_qubits) throw std::invalid_argument("embed: target out of range");
    const std::size_t bit = std::size_t{1} << t;
    if (target_mask & bit)
      throw std::invalid_argument("embed: duplicate target");
    target_mask |= bit;
  }
  const std::size_t dim = dim_of(n_qubits);
  const std::size_t d = m.rows();
  ComplexMatrix out(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    // Local value encoded by the target bits of this basis column.
    std::size_t v = 0;
    for (std::size_t j = 0; j < targets.size(); ++j)
      v |= ((col >> targets[j]) & 1u) << j;
    const std::size_t rest = col & ~target_mask;
    for (std::size_t vp = 0; vp < d; ++vp) {
      const cplx e = m(vp, v);
      if (e == cplx{}) continue;
      std::size_t row = rest;
      for (std::size_t j = 0; j < targets.size(); ++j)
        row |= ((vp >> j) & 1u) << targets[j];
      out(row, col) = e;
    }
  }
  return out;
}

}  // namespace switchsim
