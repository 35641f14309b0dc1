#include "switchsim/learn.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include "switchsim/neldermead.hpp"

namespace switchsim {
namespace {

constexpr double kRadiusSq = 2.0 / M_PI;

// psi = U3(theta, phi, lambda) * RY(y) * RZ(z) |psi>, 2-vector in place.
void apply_layer(cplx& a0, cplx& a1, double z, double y, double theta,
                 double phi, double lambda) {
  const cplx pz = std::polar(1.0, -z / 2.0);
  a0 *= pz;
  a1 *= std::conj(pz);
  const double cy = std::cos(y / 2.0), sy = std::sin(y / 2.0);
  const cplx b0 = cy * a0 - sy * a1;
  const cplx b1 = sy * a0 + cy * a1;
  const double ct = std::cos(theta / 2.0), st = std::sin(theta / 2.0);
  const cplx el = std::polar(1.0, lambda), ep = std::polar(1.0, phi);
  a0 = ct * b0 - el * st * b1;
  a1 = ep * st * b0 + ep * el * ct * b1;
}

double z_expectation(const cplx& a0, const cplx& a1) {
  return std::norm(a0) - std::norm(a1);
}

}  // namespace

std::vector<LabeledSample> generate_dataset(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<LabeledSample> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    LabeledSample s;
    s.x1 = dist(rng);
    s.x2 = dist(rng);
    s.label = (s.x1 * s.x1 + s.x2 * s.x2 - kRadiusSq > 0.0) ? 1 : -1;
    out.push_back(s);
  }
  return out;
}

int classify(double e) {
  if (!std::isfinite(e)) throw std::domain_error("non-finite model output");
  return e <= 0.0 ? -1 : 1;
}

std::vector<double> ModelParams::flatten() const {
  std::vector<double> v = gate_params;
  v.insert(v.end(), prep_params.begin(), prep_params.end());
  return v;
}

ModelParams ModelParams::unflatten(OrderMode mode,
                                   const std::vector<double>& v) {
  if (v.size() != param_count(mode))
    throw std::invalid_argument("wrong parameter count for mode");
  ModelParams p;
  p.gate_params.assign(v.begin(), v.begin() + 3);
  p.prep_params.assign(v.begin() + 3, v.end());
  return p;
}

ThreeSwitchModel::ThreeSwitchModel()
    : layout_(SwitchLayout::make(3, 1, false)), engine_(layout_) {}

Observable3Switch ThreeSwitchModel::build_observable(OrderMode mode) const {
  if (mode == OrderMode::FixedOrder) return {mode, pauli_z()};
  const std::size_t ad = layout_.ancilla_dim();
  ComplexMatrix anc(ad, ad);
  for (std::size_t a = 0; a < ad; ++a) {
    if (!layout_.in_effective(a)) continue;
    if (mode == OrderMode::Classical) {
      anc(a, a) = 1.0;
    } else {
      for (std::size_t b = 0; b < ad; ++b)
        if (layout_.in_effective(b)) anc(a, b) = 1.0;
    }
  }
  const unsigned n = layout_.total_qubits;
  ComplexMatrix m = embed(anc, layout_.ancilla_qubits(), n) *
                    embed(pauli_z(), {layout_.target_base()}, n);
  return {mode, std::move(m)};
}

std::vector<GateSpec> ThreeSwitchModel::model_gates(const ModelParams& params,
                                                    double x1,
                                                    double x2) const {
  if (params.gate_params.size() != 3)
    throw std::invalid_argument("expected 3 variational gate angles");
  return {GateSpec::rz(x1, 0), GateSpec::ry(x2, 0),
          GateSpec::u3(params.gate_params[0], params.gate_params[1],
                       params.gate_params[2], 0)};
}

std::vector<GateSpec> ThreeSwitchModel::prep_gates(
    const ModelParams& params) const {
  if (params.prep_params.size() != 9)
    throw std::invalid_argument("expected 9 preparation angles");
  const auto& p = params.prep_params;
  return {GateSpec::u3(p[0], p[1], p[2], 0), GateSpec::u3(p[3], p[4], p[5], 1),
          GateSpec::u3(p[6], p[7], p[8], 2), GateSpec::cnot(0, 1),
          GateSpec::cnot(1, 2),              GateSpec::cnot(0, 2)};
}

StateVector ThreeSwitchModel::final_state(const ModelParams& params, double x1,
                                          double x2) const {
  return engine_.run(model_gates(params, x1, x2),
                     PreparationBlock{prep_gates(params)}, StateVector(1));
}

double ThreeSwitchModel::forward(OrderMode mode, const ModelParams& params,
                                 double x1, double x2) const {
  if (mode == OrderMode::FixedOrder) {
    cplx a0 = 1.0, a1 = 0.0;
    apply_layer(a0, a1, x1, x2, params.gate_params.at(0),
                params.gate_params.at(1), params.gate_params.at(2));
    return z_expectation(a0, a1);
  }
  const StateVector psi = final_state(params, x1, x2);
  const auto& amps = psi.amplitudes();
  const unsigned anc_base = layout_.ancilla_base();  // 6
  const std::size_t rest_dim = dim_of(anc_base);
  const std::size_t n_orders = layout_.n_orders();
  double e = 0.0;
  for (std::size_t rest = 0; rest < rest_dim; ++rest) {
    const double sign = (rest & 1u) ? -1.0 : 1.0;
    if (mode == OrderMode::Classical) {
      double p = 0.0;
      for (std::size_t a = 0; a < n_orders; ++a)
        p += std::norm(amps[(a << anc_base) | rest]);
      e += sign * p;
    } else {
      cplx s = 0.0;
      for (std::size_t a = 0; a < n_orders; ++a)
        s += amps[(a << anc_base) | rest];
      e += sign * std::norm(s);
    }
  }
  return e;
}

double ThreeSwitchModel::accuracy(OrderMode mode, const ModelParams& params,
                                  const std::vector<LabeledSample>& dataset) const {
  if (dataset.empty()) throw std::invalid_argument("empty dataset");
  std::size_t hits = 0;
  for (const auto& s : dataset)
    if (classify(forward(mode, params, s.x1, s.x2)) == s.label) ++hits;
  return static_cast<double>(hits) / static_cast<double>(dataset.size());
}

std::array<double, 8> ancilla_probabilities(const StateVector& final_state) {
  if (final_state.n_qubits() != 9)
    throw std::invalid_argument("expected the 9-qubit register");
  std::array<double, 8> p{};
  const auto& amps = final_state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i)
    p[i >> 6] += std::norm(amps[i]);
  return p;
}

DensityMatrix ancilla_density(const StateVector& final_state) {
  if (final_state.n_qubits() != 9)
    throw std::invalid_argument("expected the 9-qubit register");
  return reduced_density(final_state, {6, 7, 8});
}

double re_uploading_forward(const std::vector<double>& params, double x1,
                            double x2) {
  if (params.size() != 6)
    throw std::invalid_argument("expected 6 re-uploading angles");
  cplx a0 = 1.0, a1 = 0.0;
  apply_layer(a0, a1, x1, x2, params[0], params[1], params[2]);
  apply_layer(a0, a1, x1, x2, params[3], params[4], params[5]);
  return z_expectation(a0, a1);
}

double re_uploading_accuracy(const std::vector<double>& params,
                             const std::vector<LabeledSample>& dataset) {
  if (dataset.empty()) throw std::invalid_argument("empty dataset");
  std::size_t hits = 0;
  for (const auto& s : dataset)
    if (classify(re_uploading_forward(params, s.x1, s.x2)) == s.label) ++hits;
  return static_cast<double>(hits) / static_cast<double>(dataset.size());
}

namespace {

TrainResult run_training(const TrainConfig& cfg, std::size_t dim,
                         const std::function<double(const std::vector<double>&,
                                                    const LabeledSample&)>& raw,
                         OrderMode mode_for_result) {
  if (cfg.budget == 0) throw std::invalid_argument("evaluation budget must be positive");
  if (cfg.initial_params.size() != dim)
    throw std::invalid_argument("initial parameter arity mismatch");
  const auto data = generate_dataset(cfg.n_train, cfg.seed);
  auto objective = [&](const std::vector<double>& x) {
    if (cfg.smoothed_objective) {
      double loss = 0.0;
      for (const auto& s : data) {
        const double margin = s.label * raw(x, s);
        loss += std::max(0.0, 0.25 - margin);
      }
      return loss / static_cast<double>(data.size());
    }
    std::size_t hits = 0;
    for (const auto& s : data)
      if (classify(raw(x, s)) == s.label) ++hits;
    return -static_cast<double>(hits) / static_cast<double>(data.size());
  };
  NelderMeadOptions opts;
  opts.max_evals = cfg.budget;
  const NelderMeadResult nm = nelder_mead(objective, cfg.initial_params, opts);
  TrainResult res;
  if (mode_for_result == OrderMode::FixedOrder && dim != 3) {
    res.params.gate_params = nm.best_x;  // re-uploading: 6 raw angles
  } else {
    res.params = ModelParams::unflatten(mode_for_result, nm.best_x);
  }
  res.evaluations = nm.evals;
  res.objective_trace = nm.trace;
  std::size_t hits = 0;
  for (const auto& s : data)
    if (classify(raw(nm.best_x, s)) == s.label) ++hits;
  res.train_accuracy = static_cast<double>(hits) / static_cast<double>(data.size());
  return res;
}

}  // namespace

TrainResult train(const TrainConfig& cfg, const ThreeSwitchModel& model) {
  const std::size_t dim = param_count(cfg.mode);
  return run_training(
      cfg, dim,
      [&](const std::vector<double>& x, const LabeledSample& s) {
        return model.forward(cfg.mode, ModelParams::unflatten(cfg.mode, x),
                             s.x1, s.x2);
      },
      cfg.mode);
}

TrainResult train_reuploading(const TrainConfig& cfg) {
  return run_training(
      cfg, 6,
      [](const std::vector<double>& x, const LabeledSample& s) {
        return re_uploading_forward(x, s.x1, s.x2);
      },
      OrderMode::FixedOrder);
}

std::vector<double> random_start(std::uint64_t seed, std::size_t dim) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-M_PI, M_PI);
  std::vector<double> v(dim);
  for (auto& x : v) x = dist(rng);
  return v;
}

}  // namespace switchsim
