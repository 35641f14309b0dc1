#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "switchsim/gates.hpp"
#include "switchsim/nswitch.hpp"

namespace switchsim {

// Raised when a sampled function has frequency content beyond the assumed
// band limit.
class SpectrumMismatchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Frequency -> complex coefficient map of a real-valued output function.
struct FourierSeries {
  std::map<double, cplx> terms;

  cplx coefficient(double freq, double tol = 1e-6) const;
  double evaluate(double x) const;  // real part of the reconstruction
  // c_{-w} must equal conj(c_w) for a real function.
  double max_reality_violation() const;
  // Frequencies whose coefficient magnitude exceeds the threshold.
  std::vector<double> support(double threshold = 1e-8) const;
};

using ModelFunction = std::function<double(double)>;

// Deduplicated eigenvalue differences, ascending; always contains 0.
std::vector<double> predicted_spectrum(const EncodingGenerator& gen);

// Samples f on 2K+1 equidistant points over [0, 2pi) and inverts the DFT.
// Throws SpectrumMismatchError if the reconstruction misses f by more than
// 1e-8 on a 10x finer grid.
FourierSeries dft_coefficients(const ModelFunction& f, unsigned max_freq);

// Coefficient selector: a fixed order pi, or a cross term between two orders.
struct OrderSelect {
  Permutation order;                    // pi
  std::optional<Permutation> bra_order;  // pi' for cross terms
};

// Coefficients of f(x) = <0| W'^dag g(x)^dag O g(x) W |0> grouped by
// eigenvalue difference, computed by direct matrix products in the
// generator's eigenbasis. W (and W' for cross terms) is the product of the
// variational gates in the selected order.
FourierSeries analytic_coefficients(const std::vector<GateSpec>& var_gates,
                                    const EncodingGenerator& gen,
                                    const ComplexMatrix& obs,
                                    const OrderSelect& select);

enum class ClosedFormKind {
  FixedRz,           // cos x
  Quantum2SwitchRz,  // [(3 + cos t) cos x + 1 - cos t] / 4
  FixedUFirst,       // cos t cos x - sin t sin l sin x
  FixedUSecond,      // cos t cos x + sin t sin p sin x (sign fixed by
                     // consistency with FixedUFirst and InterferenceU)
  InterferenceU,     // the two-order interference term of the general-U model
};

// Literal closed forms for regression tests. Parameters: FixedRz none;
// Quantum2SwitchRz {theta}; the general-U kinds {theta, phi, lambda}.
ModelFunction closed_form(ClosedFormKind kind,
                          const std::vector<double>& params = {});

}  // namespace switchsim
