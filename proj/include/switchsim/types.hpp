#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>

namespace switchsim {

using cplx = std::complex<double>;

// Tolerance for exact algebraic identities (unitarity, norm preservation).
inline constexpr double kAlgebraTol = 1e-10;
// Tolerance for values routed through eigensolvers or DFT inversion.
inline constexpr double kSpectralTol = 1e-9;
// Registers beyond this are rejected; dense storage only.
inline constexpr unsigned kMaxQubits = 14;

inline constexpr std::size_t dim_of(unsigned n_qubits) {
  return std::size_t{1} << n_qubits;
}

}  // namespace switchsim
