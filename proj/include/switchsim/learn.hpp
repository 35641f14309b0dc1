#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "switchsim/nswitch.hpp"

namespace switchsim {

// Order-control mode of the classifier.
enum class OrderMode { FixedOrder, Classical, Quantum };

struct LabeledSample {
  double x1 = 0.0;  // in [-1, 1]
  double x2 = 0.0;  // in [-1, 1]
  int label = -1;   // sign of x1^2 + x2^2 - 2/pi, with sgn(0) = -1
};

// n i.i.d. uniform points on [-1,1]^2 with their labels; deterministic for a
// fixed seed.
std::vector<LabeledSample> generate_dataset(std::size_t n, std::uint64_t seed);

// -1 if e <= 0, +1 otherwise; throws on non-finite input.
int classify(double e);

struct ModelParams {
  std::vector<double> gate_params;  // 3: the variational gate (theta, phi, lambda)
  std::vector<double> prep_params;  // 9 ancilla-block angles; empty for FixedOrder

  std::vector<double> flatten() const;
  static ModelParams unflatten(OrderMode mode, const std::vector<double>& v);
};

struct Observable3Switch {
  OrderMode mode;
  ComplexMatrix matrix;  // full 9-qubit register, or 1 qubit for FixedOrder
};

// Single-qubit 3-switch classifier: gate 0 = RZ(x1), gate 1 = RY(x2),
// gate 2 = U3(theta, phi, lambda); 9-qubit register
// [target | 3 workings | 2 control | 3 ancilla], no history system.
class ThreeSwitchModel {
 public:
  ThreeSwitchModel();

  const SwitchLayout& layout() const { return layout_; }
  const SwitchEngine& engine() const { return engine_; }

  Observable3Switch build_observable(OrderMode mode) const;

  std::vector<GateSpec> model_gates(const ModelParams& params, double x1,
                                    double x2) const;
  // Three U3 gates on the ancilla followed by the entangling CNOT chain
  // (0->1, 1->2, 0->2), ancilla-local indices.
  std::vector<GateSpec> prep_gates(const ModelParams& params) const;

  // Full-register final state of the switch pipeline (switch modes only).
  StateVector final_state(const ModelParams& params, double x1,
                          double x2) const;

  // Raw expectation value e; the Quantum mode value is unnormalized (the
  // redundancy-space scaling is positive, so labels are unaffected).
  double forward(OrderMode mode, const ModelParams& params, double x1,
                 double x2) const;

  double accuracy(OrderMode mode, const ModelParams& params,
                  const std::vector<LabeledSample>& dataset) const;

 private:
  SwitchLayout layout_;
  SwitchEngine engine_;
};

// Diagnostics on the 9-qubit final state.
std::array<double, 8> ancilla_probabilities(const StateVector& final_state);
DensityMatrix ancilla_density(const StateVector& final_state);

// Two re-uploading layers of (RZ(x1), RY(x2), U3) with independent
// variational parameters (6 total); observable sigma_z.
double re_uploading_forward(const std::vector<double>& params, double x1,
                            double x2);
double re_uploading_accuracy(const std::vector<double>& params,
                             const std::vector<LabeledSample>& dataset);

struct TrainConfig {
  OrderMode mode = OrderMode::FixedOrder;
  std::uint64_t seed = 7;        // dataset seed
  std::size_t n_train = 200;
  std::size_t budget = 2000;     // objective evaluations
  std::vector<double> initial_params;  // flattened; arity per mode
  bool smoothed_objective = false;     // margin hinge instead of -accuracy
};

struct TrainResult {
  ModelParams params;
  double train_accuracy = 0.0;
  std::size_t evaluations = 0;
  std::vector<double> objective_trace;  // best-so-far, non-increasing
};

TrainResult train(const TrainConfig& cfg, const ThreeSwitchModel& model);
// Same protocol for the re-uploading baseline (6 parameters).
TrainResult train_reuploading(const TrainConfig& cfg);

// Uniform start point in [-pi, pi]^dim, deterministic per seed.
std::vector<double> random_start(std::uint64_t seed, std::size_t dim);

inline constexpr std::size_t param_count(OrderMode mode) {
  return mode == OrderMode::FixedOrder ? 3 : 12;
}

}  // namespace switchsim
