#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace switchsim {

struct NelderMeadOptions {
  std::size_t max_evals = 2000;
  double initial_step = 0.9;
  double simplex_tol = 1e-9;  // stop when the simplex collapses
};

struct NelderMeadResult {
  std::vector<double> best_x;
  double best_f = 0.0;
  std::size_t evals = 0;
  std::vector<double> trace;  // best-so-far objective after each evaluation
};

// Deterministic derivative-free local minimizer (downhill simplex). Respects
// the evaluation budget exactly; identical inputs give identical traces.
NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& objective,
    const std::vector<double>& start, const NelderMeadOptions& options);

}  // namespace switchsim
