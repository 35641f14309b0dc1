#include "switchsim/neldermead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace switchsim {

NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& objective,
    const std::vector<double>& start, const NelderMeadOptions& options) {
  if (options.max_evals == 0)
    throw std::invalid_argument("nelder_mead: evaluation budget must be positive");
  if (start.empty())
    throw std::invalid_argument("nelder_mead: empty start point");
  const std::size_t dim = start.size();

  NelderMeadResult result;
  result.best_f = std::numeric_limits<double>::infinity();

  const auto eval = [&](const std::vector<double>& x) {
    const double f = objective(x);
    if (f < result.best_f) {
      result.best_f = f;
      result.best_x = x;
    }
    ++result.evals;
    result.trace.push_back(result.best_f);
    return f;
  };
  const auto budget_left = [&] { return result.evals < options.max_evals; };

  std::vector<std::vector<double>> simplex;
  std::vector<double> fvals;
  simplex.push_back(start);
  fvals.push_back(eval(start));
  for (std::size_t i = 0; i < dim && budget_left(); ++i) {
    std::vector<double> v = start;
    v[i] += options.initial_step;
    simplex.push_back(v);
    fvals.push_back(eval(v));
  }
  if (simplex.size() < dim + 1) return result;

  constexpr double kReflect = 1.0;
  constexpr double kExpand = 2.0;
  constexpr double kContract = 0.5;
  constexpr double kShrink = 0.5;

  std::vector<std::size_t> order(dim + 1);
  while (budget_left()) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return fvals[a] < fvals[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[dim - 1];

    double extent = 0.0;
    for (std::size_t i = 0; i < dim; ++i)
      extent = std::max(extent,
                        std::abs(simplex[worst][i] - simplex[best][i]));
    if (extent < options.simplex_tol &&
        std::abs(fvals[worst] - fvals[best]) < options.simplex_tol)
      break;

    std::vector<double> centroid(dim, 0.0);
    for (std::size_t v = 0; v <= dim; ++v) {
      if (v == worst) continue;
      for (std::size_t i = 0; i < dim; ++i) centroid[i] += simplex[v][i];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);

    const auto point_at = [&](double coeff) {
      std::vector<double> p(dim);
      for (std::size_t i = 0; i < dim; ++i)
        p[i] = centroid[i] + coeff * (centroid[i] - simplex[worst][i]);
      return p;
    };

    const std::vector<double> reflected = point_at(kReflect);
    const double f_reflected = eval(reflected);
    if (f_reflected < fvals[best]) {
      if (!budget_left()) {
        simplex[worst] = reflected;
        fvals[worst] = f_reflected;
        break;
      }
      const std::vector<double> expanded = point_at(kExpand);
      const double f_expanded = eval(expanded);
      if (f_expanded < f_reflected) {
        simplex[worst] = expanded;
        fvals[worst] = f_expanded;
      } else {
        simplex[worst] = reflected;
        fvals[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < fvals[second_worst]) {
      simplex[worst] = reflected;
      fvals[worst] = f_reflected;
      continue;
    }
    if (!budget_left()) break;
    const bool outside = f_reflected < fvals[worst];
    const std::vector<double> contracted =
        point_at(outside ? kContract : -kContract);
    const double f_contracted = eval(contracted);
    if (f_contracted < std::min(f_reflected, fvals[worst])) {
      simplex[worst] = contracted;
      fvals[worst] = f_contracted;
      continue;
    }
    // Shrink toward the best vertex.
    for (std::size_t v = 0; v <= dim && budget_left(); ++v) {
      if (v == best) continue;
      for (std::size_t i = 0; i < dim; ++i)
        simplex[v][i] =
            simplex[best][i] + kShrink * (simplex[v][i] - simplex[best][i]);
      fvals[v] = eval(simplex[v]);
    }
  }
  return result;
}

}  // namespace switchsim
