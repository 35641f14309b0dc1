#include "switchsim/state.hpp"

#include <cmath>
#include <stdexcept>

#include "switchsim/kernels.hpp"

namespace switchsim {
namespace {

void check_register(unsigned n_qubits) {
  if (n_qubits > kMaxQubits)
    throw std::invalid_argument("register exceeds the supported qubit count");
}

std::size_t target_mask_of(const std::vector<unsigned>& targets,
                           unsigned n_qubits) {
  std::size_t mask = 0;
  for (unsigned t : targets) {
    if (t >= n_qubits) throw std::out_of_range("qubit index out of range");
    const std::size_t bit = std::size_t{1} << t;
    if (mask & bit) throw std::invalid_argument("duplicate qubit index");
    mask |= bit;
  }
  return mask;
}

}  // namespace

StateVector::StateVector(unsigned n_qubits)
    : n_qubits_(n_qubits), amps_(dim_of(n_qubits)) {
  check_register(n_qubits);
  amps_[0] = 1.0;
}

StateVector StateVector::basis(unsigned n_qubits, std::size_t index) {
  StateVector s(n_qubits);
  if (index >= s.dim()) throw std::out_of_range("basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

StateVector StateVector::from_amplitudes(unsigned n_qubits,
                                         std::vector<cplx> amplitudes) {
  check_register(n_qubits);
  if (amplitudes.size() != dim_of(n_qubits))
    throw std::invalid_argument("amplitude count does not match register");
  StateVector s(n_qubits);
  s.amps_ = std::move(amplitudes);
  if (std::abs(s.norm() - 1.0) > kSpectralTol)
    throw std::invalid_argument("amplitudes are not normalized");
  return s;
}

double StateVector::norm() const {
  return std::sqrt(kernels::active().norm_sq(amps_.data(), amps_.size()));
}

cplx StateVector::inner(const StateVector& rhs) const {
  if (rhs.dim() != dim()) throw std::invalid_argument("inner: dimension mismatch");
  return kernels::active().dot_conj(amps_.data(), rhs.amps_.data(), dim());
}

void StateVector::apply_matrix(const ComplexMatrix& m,
                               const std::vector<unsigned>& targets) {
  const std::size_t mask = target_mask_of(targets, n_qubits_);
  const unsigned k = static_cast<unsigned>(targets.size());
  const std::size_t d = dim_of(k);
  if (!m.square() || m.rows() != d)
    throw std::invalid_argument("apply_matrix: dimension does not match targets");
  const auto& ops = kernels::active();
  if (k == 1) {
    ops.apply_single_qubit(amps_.data(), amps_.size(), targets[0], m.data());
    return;
  }
  // Gather each 2^k-amplitude group, multiply, scatter back.
  std::vector<std::size_t> offsets(d);
  for (std::size_t v = 0; v < d; ++v) {
    std::size_t off = 0;
    for (unsigned j = 0; j < k; ++j) off |= ((v >> j) & 1u) << targets[j];
    offsets[v] = off;
  }
  std::vector<cplx> x(d), y(d);
  for (std::size_t base = 0; base < amps_.size(); ++base) {
    if (base & mask) continue;
    for (std::size_t v = 0; v < d; ++v) x[v] = amps_[base | offsets[v]];
    ops.matvec(m.data(), x.data(), y.data(), d);
    for (std::size_t v = 0; v < d; ++v) amps_[base | offsets[v]] = y[v];
  }
}

void StateVector::apply_subsystem_permutation(
    const std::vector<std::size_t>& perm,
    const std::vector<unsigned>& targets) {
  const std::size_t mask = target_mask_of(targets, n_qubits_);
  const unsigned k = static_cast<unsigned>(targets.size());
  const std::size_t d = dim_of(k);
  if (perm.size() != d)
    throw std::invalid_argument("permutation size does not match targets");
  std::vector<std::size_t> offsets(d);
  for (std::size_t v = 0; v < d; ++v) {
    std::size_t off = 0;
    for (unsigned j = 0; j < k; ++j) off |= ((v >> j) & 1u) << targets[j];
    offsets[v] = off;
  }
  std::vector<cplx> scratch(d);
  for (std::size_t base = 0; base < amps_.size(); ++base) {
    if (base & mask) continue;
    for (std::size_t v = 0; v < d; ++v) scratch[v] = amps_[base | offsets[v]];
    for (std::size_t v = 0; v < d; ++v)
      amps_[base | offsets[perm[v]]] = scratch[v];
  }
}

StateVector StateVector::tensor(const StateVector& low) const {
  StateVector out(n_qubits_ + low.n_qubits_);
  out.amps_.assign(out.dim(), cplx{});
  for (std::size_t h = 0; h < dim(); ++h) {
    if (amps_[h] == cplx{}) continue;
    for (std::size_t l = 0; l < low.dim(); ++l)
      out.amps_[(h << low.n_qubits_) | l] = amps_[h] * low.amps_[l];
  }
  return out;
}

DensityMatrix::DensityMatrix(unsigned n_qubits, ComplexMatrix entries)
    : n_qubits_(n_qubits), m_(std::move(entries)) {
  check_register(n_qubits);
  if (!m_.square() || m_.rows() != dim_of(n_qubits))
    throw std::invalid_argument("density matrix dimension mismatch");
}

DensityMatrix DensityMatrix::from_state(const StateVector& psi) {
  ComplexMatrix m(psi.dim(), psi.dim());
  for (std::size_t r = 0; r < psi.dim(); ++r)
    for (std::size_t c = 0; c < psi.dim(); ++c)
      m(r, c) = psi[r] * std::conj(psi[c]);
  return DensityMatrix(psi.n_qubits(), std::move(m));
}

DensityMatrix DensityMatrix::zero(unsigned n_qubits) {
  return DensityMatrix(n_qubits,
                       ComplexMatrix(dim_of(n_qubits), dim_of(n_qubits)));
}

void DensityMatrix::accumulate(const StateVector& psi, double weight) {
  if (psi.dim() != m_.rows())
    throw std::invalid_argument("accumulate: dimension mismatch");
  for (std::size_t r = 0; r < psi.dim(); ++r)
    for (std::size_t c = 0; c < psi.dim(); ++c)
      m_(r, c) += weight * psi[r] * std::conj(psi[c]);
}

void DensityMatrix::validate(double tol) const {
  if (!m_.is_hermitian(tol))
    throw std::runtime_error("density matrix is not Hermitian");
  if (std::abs(m_.trace() - cplx{1.0, 0.0}) > tol)
    throw std::runtime_error("density matrix trace is not 1");
}

double expectation(const StateVector& psi, const ComplexMatrix& obs) {
  if (!obs.square() || obs.rows() != psi.dim())
    throw std::invalid_argument("expectation: dimension mismatch");
  if (!obs.is_hermitian())
    throw std::invalid_argument("expectation: observable is not Hermitian");
  const auto& ops = kernels::active();
  std::vector<cplx> tmp(psi.dim());
  ops.matvec(obs.data(), psi.amplitudes().data(), tmp.data(), psi.dim());
  const cplx raw =
      ops.dot_conj(psi.amplitudes().data(), tmp.data(), psi.dim());
  if (std::abs(raw.imag()) > kSpectralTol)
    throw std::runtime_error("expectation: imaginary residue above tolerance");
  return raw.real();
}

double expectation(const DensityMatrix& rho, const ComplexMatrix& obs) {
  if (!obs.square() || obs.rows() != rho.matrix().rows())
    throw std::invalid_argument("expectation: dimension mismatch");
  if (!obs.is_hermitian())
    throw std::invalid_argument("expectation: observable is not Hermitian");
  cplx raw{};
  const std::size_t n = rho.matrix().rows();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) raw += rho.matrix()(r, c) * obs(c, r);
  if (std::abs(raw.imag()) > kSpectralTol)
    throw std::runtime_error("expectation: imaginary residue above tolerance");
  return raw.real();
}

DensityMatrix reduced_density(const StateVector& psi,
                              const std::vector<unsigned>& keep) {
  if (keep.empty())
    throw std::invalid_argument("reduced_density: empty keep set");
  const std::size_t mask = target_mask_of(keep, psi.n_qubits());
  const unsigned k = static_cast<unsigned>(keep.size());
  const std::size_t d = dim_of(k);
  std::vector<std::size_t> offsets(d);
  for (std::size_t v = 0; v < d; ++v) {
    std::size_t off = 0;
    for (unsigned j = 0; j < k; ++j) off |= ((v >> j) & 1u) << keep[j];
    offsets[v] = off;
  }
  ComplexMatrix m(d, d);
  for (std::size_t rest = 0; rest < psi.dim(); ++rest) {
    if (rest & mask) continue;
    for (std::size_t a = 0; a < d; ++a) {
      const cplx va = psi[rest | offsets[a]];
      if (va == cplx{}) continue;
      for (std::size_t b = 0; b < d; ++b)
        m(a, b) += va * std::conj(psi[rest | offsets[b]]);
    }
  }
  return DensityMatrix(k, std::move(m));
}

}  // namespace switchsim
