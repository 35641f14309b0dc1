#include "switchsim/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace switchsim {
namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kFreqBinTol = 1e-6;

}  // namespace

cplx FourierSeries::coefficient(double freq, double tol) const {
  for (const auto& [w, c] : terms)
    if (std::abs(w - freq) <= tol) return c;
  return cplx{};
}

double FourierSeries::evaluate(double x) const {
  cplx acc{};
  for (const auto& [w, c] : terms) acc += c * std::exp(kI * w * x);
  return acc.real();
}

double FourierSeries::max_reality_violation() const {
  double worst = 0.0;
  for (const auto& [w, c] : terms)
    worst = std::max(worst, std::abs(std::conj(c) - coefficient(-w)));
  return worst;
}

std::vector<double> FourierSeries::support(double threshold) const {
  std::vector<double> out;
  for (const auto& [w, c] : terms)
    if (std::abs(c) > threshold) out.push_back(w);
  return out;
}

std::vector<double> predicted_spectrum(const EncodingGenerator& gen) {
  std::vector<double> diffs;
  for (double a : gen.eigenvalues)
    for (double b : gen.eigenvalues) diffs.push_back(a - b);
  std::sort(diffs.begin(), diffs.end());
  std::vector<double> out;
  for (double d : diffs)
    if (out.empty() || d - out.back() > kFreqBinTol) out.push_back(d);
  return out;
}

FourierSeries dft_coefficients(const ModelFunction& f, unsigned max_freq) {
  const std::size_t m = 2 * static_cast<std::size_t>(max_freq) + 1;
  const double step = 2.0 * std::numbers::pi / static_cast<double>(m);
  std::vector<double> samples(m);
  for (std::size_t i = 0; i < m; ++i)
    samples[i] = f(static_cast<double>(i) * step);
  FourierSeries series;
  for (int w = -static_cast<int>(max_freq); w <= static_cast<int>(max_freq);
       ++w) {
    cplx acc{};
    for (std::size_t i = 0; i < m; ++i)
      acc += samples[i] * std::exp(-kI * static_cast<double>(w) *
                                   (static_cast<double>(i) * step));
    series.terms[static_cast<double>(w)] = acc / static_cast<double>(m);
  }
  // Band-limit check on a finer grid.
  const std::size_t fine = 10 * m;
  double worst = 0.0;
  for (std::size_t i = 0; i < fine; ++i) {
    const double x =
        2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(fine);
    worst = std::max(worst, std::abs(series.evaluate(x) - f(x)));
  }
  if (worst > 1e-8)
    throw SpectrumMismatchError(
        "function has frequency content beyond the requested band limit");
  return series;
}

FourierSeries analytic_coefficients(const std::vector<GateSpec>& var_gates,
                                    const EncodingGenerator& gen,
                                    const ComplexMatrix& obs,
                                    const OrderSelect& select) {
  const std::size_t d = gen.hermitian.rows();
  if (!obs.square() || obs.rows() != d)
    throw std::invalid_argument("analytic_coefficients: observable dimension");
  const unsigned n = static_cast<unsigned>(var_gates.size());
  const auto block = [&](const Permutation& order) {
    std::vector<ComplexMatrix> ops;
    for (unsigned slot = n; slot-- > 0;) {
      const ComplexMatrix g = gate_matrix(var_gates[order.gate_at_slot(slot)]);
      if (g.rows() != d)
        throw std::invalid_argument("analytic_coefficients: gate dimension");
      ops.push_back(g);
    }
    return compose(ops);
  };
  const Permutation& pi = select.order;
  const Permutation& pi_bra = select.bra_order ? *select.bra_order : pi;
  if (pi.size() != n || pi_bra.size() != n)
    throw std::invalid_argument("analytic_coefficients: order size mismatch");

  // Work in the eigenbasis of the generator.
  const ComplexMatrix& v = gen.diagonalizer;
  const ComplexMatrix obs_eig = v * obs * v.adjoint();
  const auto column = [&](const Permutation& order) {
    const ComplexMatrix w = v * block(order);
    std::vector<cplx> col(d);
    for (std::size_t k = 0; k < d; ++k) col[k] = w(k, 0);
    return col;
  };
  const std::vector<cplx> w_ket = column(pi);
  const std::vector<cplx> w_bra = column(pi_bra);

  FourierSeries series;
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t l = 0; l < d; ++l) {
      const cplx c = std::conj(w_bra[k]) * obs_eig(k, l) * w_ket[l];
      const double freq = gen.eigenvalues[k] - gen.eigenvalues[l];
      // Bin to an existing nearby frequency.
      bool placed = false;
      for (auto& [w, acc] : series.terms) {
        if (std::abs(w - freq) <= kFreqBinTol) {
          acc += c;
          placed = true;
          break;
        }
      }
      if (!placed) series.terms[freq] = c;
    }
  }
  return series;
}

ModelFunction closed_form(ClosedFormKind kind,
                          const std::vector<double>& params) {
  const auto need = [&](std::size_t n) {
    if (params.size() != n)
      throw std::invalid_argument("closed_form: wrong parameter count");
  };
  switch (kind) {
    case ClosedFormKind::FixedRz:
      need(0);
      return [](double x) { return std::cos(x); };
    case ClosedFormKind::Quantum2SwitchRz: {
      need(1);
      const double t = params[0];
      return [t](double x) {
        return ((3.0 + std::cos(t)) * std::cos(x) + 1.0 - std::cos(t)) / 4.0;
      };
    }
    case ClosedFormKind::FixedUFirst: {
      need(3);
      const double t = params[0], l = params[2];
      return [t, l](double x) {
        return std::cos(t) * std::cos(x) - std::sin(t) * std::sin(l) * std::sin(x);
      };
    }
    case ClosedFormKind::FixedUSecond: {
      // cos(t) cos(x) + sin(t) sin(p) sin(x). The plus sign is forced by
      // consistency with FixedUFirst and InterferenceU: no single-qubit gate
      // convention reproduces all three with a minus sign here.
      need(3);
      const double t = params[0], p = params[1];
      return [t, p](double x) {
        return std::cos(t) * std::cos(x) + std::sin(t) * std::sin(p) * std::sin(x);
      };
    }
    case ClosedFormKind::InterferenceU: {
      need(3);
      const double t = params[0], p = params[1], l = params[2];
      return [t, p, l](double x) {
        const double c0 = (1.0 + std::sin(p) * std::sin(l)) * std::cos(t) -
                          std::cos(p) * std::cos(l);
        const double cs = (std::sin(p) - std::sin(l)) * std::sin(t);
        const double cc = (1.0 - std::sin(p) * std::sin(l)) * std::cos(t) +
                          std::cos(p) * std::cos(l);
        return c0 + cs * std::sin(x) + cc * std::cos(x);
      };
    }
  }
  throw std::invalid_argument("closed_form: unknown kind");
}

}  // namespace switchsim
