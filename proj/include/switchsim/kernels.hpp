#pragma once

// Arithmetic inner loops shared by the state-vector and matrix code.
// A scalar reference implementation always exists; an AVX2+FMA variant is
// selected at runtime when the CPU supports it (override with the
// SWITCHSIM_KERNELS environment variable: "scalar" or "avx2").

#include <cstddef>

#include "switchsim/types.hpp"

namespace switchsim::kernels {

enum class Backend { Scalar, Avx2 };

struct Ops {
  // y = m * x with m row-major n x n.
  void (*matvec)(const cplx* m, const cplx* x, cplx* y, std::size_t n);
  // In-place 2x2 update on all amplitude pairs (i, i | 1<<target).
  // m is row-major {m00, m01, m10, m11}.
  void (*apply_single_qubit)(cplx* amps, std::size_t n_amps, unsigned target,
                             const cplx* m);
  double (*norm_sq)(const cplx* x, std::size_t n);
  // <a|b> = sum conj(a_i) b_i
  cplx (*dot_conj)(const cplx* a, const cplx* b, std::size_t n);
};

const Ops& scalar_ops();
const Ops& avx2_ops();  // equals scalar_ops() when AVX2 is unavailable
bool avx2_supported();

const Ops& active();
void set_backend(Backend b);
Backend current_backend();

}  // namespace switchsim::kernels
