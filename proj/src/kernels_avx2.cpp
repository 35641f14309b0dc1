// AVX2+FMA variants of the hot loops. Layout: one __m256d holds two
// complex doubles as [re0, im0, re1, im1].

#include <immintrin.h>

#include "switchsim/kernels.hpp"

namespace switchsim::kernels {
namespace {

// (a + bi)(c + di): with v = [a b], vr = [c c], vi = [d d]:
// fmaddsub(v, vr, swap(v) * vi) = [ac - bd, bc + ad].
inline __m256d cmul(__m256d v, __m256d re_dup, __m256d im_dup) {
  const __m256d swapped = _mm256_permute_pd(v, 0b0101);
  return _mm256_fmaddsub_pd(v, re_dup, _mm256_mul_pd(swapped, im_dup));
}

void matvec_avx2(const cplx* m, const cplx* x, cplx* y, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  for (std::size_t r = 0; r < n; ++r) {
    const double* row = reinterpret_cast<const double*>(m + r * n);
    __m256d acc = _mm256_setzero_pd();
    std::size_t c = 0;
    for (; c + 2 <= n; c += 2) {
      const __m256d vx = _mm256_loadu_pd(xd + 2 * c);
      const __m256d vm = _mm256_loadu_pd(row + 2 * c);
      const __m256d xr = _mm256_movedup_pd(vx);
      const __m256d xi = _mm256_permute_pd(vx, 0b1111);
      const __m256d mswap = _mm256_permute_pd(vm, 0b0101);
      acc = _mm256_add_pd(
          acc, _mm256_fmaddsub_pd(vm, xr, _mm256_mul_pd(mswap, xi)));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    cplx sum{lanes[0] + lanes[2], lanes[1] + lanes[3]};
    for (; c < n; ++c) sum += m[r * n + c] * x[c];
    y[r] = sum;
  }
}

void apply_single_qubit_avx2(cplx* amps, std::size_t n_amps, unsigned target,
                             const cplx* m) {
  const std::size_t stride = std::size_t{1} << target;
  if (target == 0) {
    // Pairs are interleaved; the scalar loop is adequate here.
    for (std::size_t i = 0; i < n_amps; i += 2) {
      const cplx a0 = amps[i];
      const cplx a1 = amps[i + 1];
      amps[i] = m[0] * a0 + m[1] * a1;
      amps[i + 1] = m[2] * a0 + m[3] * a1;
    }
    return;
  }
  const __m256d m00r = _mm256_set1_pd(m[0].real());
  const __m256d m00i = _mm256_set1_pd(m[0].imag());
  const __m256d m01r = _mm256_set1_pd(m[1].real());
  const __m256d m01i = _mm256_set1_pd(m[1].imag());
  const __m256d m10r = _mm256_set1_pd(m[2].real());
  const __m256d m10i = _mm256_set1_pd(m[2].imag());
  const __m256d m11r = _mm256_set1_pd(m[3].real());
  const __m256d m11i = _mm256_set1_pd(m[3].imag());
  double* d = reinterpret_cast<double*>(amps);
  for (std::size_t base = 0; base < n_amps; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; i += 2) {
      double* p0 = d + 2 * i;
      double* p1 = d + 2 * (i + stride);
      const __m256d a0 = _mm256_loadu_pd(p0);
      const __m256d a1 = _mm256_loadu_pd(p1);
      const __m256d r0 =
          _mm256_add_pd(cmul(a0, m00r, m00i), cmul(a1, m01r, m01i));
      const __m256d r1 =
          _mm256_add_pd(cmul(a0, m10r, m10i), cmul(a1, m11r, m11i));
      _mm256_storeu_pd(p0, r0);
      _mm256_storeu_pd(p1, r1);
    }
  }
}

double norm_sq_avx2(const cplx* x, std::size_t n) {
  const double* d = reinterpret_cast<const double*>(x);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(d + 2 * i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double sum = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) sum += std::norm(x[i]);
  return sum;
}

cplx dot_conj_avx2(const cplx* a, const cplx* b, std::size_t n) {
  const double* ad = reinterpret_cast<const double*>(a);
  const double* bd = reinterpret_cast<const double*>(b);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(ad + 2 * i);
    const __m256d vb = _mm256_loadu_pd(bd + 2 * i);
    const __m256d ar = _mm256_movedup_pd(va);
    const __m256d ai = _mm256_permute_pd(va, 0b1111);
    const __m256d bswap = _mm256_permute_pd(vb, 0b0101);
    // conj(a) * b = [ar*br + ai*bi, ar*bi - ai*br]
    acc = _mm256_add_pd(
        acc, _mm256_fmsubadd_pd(vb, ar, _mm256_mul_pd(bswap, ai)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  cplx sum{lanes[0] + lanes[2], lanes[1] + lanes[3]};
  for (; i < n; ++i) sum += std::conj(a[i]) * b[i];
  return sum;
}

}  // namespace

const Ops& avx2_ops() {
  static const Ops ops{matvec_avx2, apply_single_qubit_avx2, norm_sq_avx2,
                       dot_conj_avx2};
  return ops;
}

}  // namespace switchsim::kernels
