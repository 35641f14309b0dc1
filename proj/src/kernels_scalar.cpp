#include "switchsim/kernels.hpp"

namespace switchsim::kernels {
namespace {

void matvec_scalar(const cplx* m, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t r = 0; r < n; ++r) {
    cplx acc{0.0, 0.0};
    const cplx* row = m + r * n;
    for (std::size_t c = 0; c < n; ++c) acc += row[c] * x[c];
    y[r] = acc;
  }
}

void apply_single_qubit_scalar(cplx* amps, std::size_t n_amps, unsigned target,
                               const cplx* m) {
  const std::size_t stride = std::size_t{1} << target;
  for (std::size_t base = 0; base < n_amps; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const cplx a0 = amps[i];
      const cplx a1 = amps[i + stride];
      amps[i] = m[0] * a0 + m[1] * a1;
      amps[i + stride] = m[2] * a0 + m[3] * a1;
    }
  }
}

double norm_sq_scalar(const cplx* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::norm(x[i]);
  return acc;
}

cplx dot_conj_scalar(const cplx* a, const cplx* b, std::size_t n) {
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{matvec_scalar, apply_single_qubit_scalar,
                       norm_sq_scalar, dot_conj_scalar};
  return ops;
}

}  // namespace switchsim::kernels
